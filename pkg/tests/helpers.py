"""Generators shared by the test modules."""

import numpy as np

from filtral.filtration import Filtration
from filtral.module import all_submodules


def random_chain(M, rng):
    """A random strict chain ``0 < ... < M`` through the submodule lattice."""
    lattice = all_submodules(M)
    chain = [lattice[0]]
    while chain[-1].dim < M.dim:
        cur = chain[-1]
        above = [L for L in lattice if L.dim > cur.dim and L.contains(cur)]
        chain.append(above[rng.integers(len(above))])
    return chain


def random_filtrations(modules, count, seed=0):
    rng = np.random.default_rng(seed)
    mods = [M for M in modules if M.dim]
    out = []
    for k in range(count):
        M = mods[k % len(mods)]
        out.append(Filtration.from_chain(M, random_chain(M, rng)))
    return out
