"""Exception hierarchy. Every error carries a machine-readable ``code`` used by the CLI."""

from __future__ import annotations


class FiltralError(Exception):
    code = "error"


class NonAdmissibleIdeal(FiltralError):
    code = "non_admissible_ideal"


class DegenerateRelation(FiltralError):
    code = "degenerate_relation"


class NonSplitAlgebra(FiltralError):
    """A local corner e A e whose residue field is larger than F_p."""

    code = "non_split_algebra"


class AlgebraMismatch(FiltralError):
    code = "algebra_mismatch"


class InvalidModule(FiltralError):
    code = "invalid_module"


class NotASubmodule(FiltralError):
    code = "not_a_submodule"


class CapExceeded(FiltralError):
    code = "cap_exceeded"

    def __init__(self, what: str, count: int, cap: int):
        super().__init__(f"{what}: more than {cap} items (reached {count})")
        self.count = count
        self.cap = cap


class SearchCapExceeded(FiltralError):
    code = "search_cap_exceeded"


class MemberUnknown(FiltralError):
    code = "member_unknown"


class NotAMember(FiltralError):
    code = "not_a_member"


class ClosureViolation(FiltralError):
    """A module that a declared closure property says must be in C is not."""

    code = "closure_violation"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidFiltration(FiltralError):
    code = "invalid_filtration"


class NotTilting(FiltralError):
    code = "not_tilting"


class SourceClassViolation(FiltralError):
    code = "source_class_violation"

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(FiltralError):
    code = "parse_error"

    def __init__(self, message: str, location: str | None = None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class ValidationFailure(FiltralError):
    code = "validation_failure"

    def __init__(self, report):
        super().__init__("; ".join(report.violations))
        self.report = report
