from __future__ import annotations

from dataclasses import dataclass

MAX_PRIME = 251


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p, 2 <= p <= 251. Elements are ints in ``range(p)``."""

    p: int

    def __post_init__(self):
        if not (2 <= self.p <= MAX_PRIME) or not is_prime(self.p):
            raise ValueError(f"p must be a prime in [2, {MAX_PRIME}], got {self.p}")

    def elements(self) -> range:
        return range(self.p)

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def __str__(self) -> str:
        return f"F_{self.p}"
