"""Hypothesis strategies and a naive scan shared by the tests."""

import itertools

import numpy as np
from hypothesis import strategies as st

from kchaos.space import (
    BlockFamily,
    BlockLineDiff,
    EmptyDiff,
    FiniteDiff,
    PeriodicDiff,
    SymbolicConfig,
)

SCAN = 24


def naive_nearest(x, y, center, radius=SCAN):
    """Ring-by-ring scan of the max-norm ball; None if nothing is found."""
    d = x.d
    for rho in range(radius + 1):
        for z in itertools.product(range(-rho, rho + 1), repeat=d):
            if max((abs(c) for c in z), default=0) != rho:
                continue
            m = tuple(c + o for c, o in zip(center, z))
            if x[m] != y[m]:
                return rho
    return None


def in_diffset(D, m):
    if isinstance(D, EmptyDiff):
        return False
    if isinstance(D, FiniteDiff):
        return tuple(m) in D.cells
    if isinstance(D, PeriodicDiff):
        return tuple(c % p for c, p in zip(m, D.period)) in D.residues
    if isinstance(D, BlockLineDiff):
        return D.family.contains(m)
    raise AssertionError(D)


@st.composite
def configs(draw, d=2, with_block=True):
    shape = tuple(draw(st.integers(1, 3)) for _ in range(d))
    cells = draw(st.lists(st.integers(0, 1), min_size=int(np.prod(shape)),
                          max_size=int(np.prod(shape))))
    table = np.array(cells).reshape(shape)
    defects = draw(st.dictionaries(st.tuples(*[st.integers(-4, 4)] * d), st.integers(0, 1),
                                   max_size=3))
    block = None
    if with_block and draw(st.booleans()):
        direction = draw(st.tuples(*[st.integers(-2, 2)] * d).filter(any))
        block = BlockFamily(direction, draw(st.integers(2, 3)), draw(st.integers(0, 1)),
                            draw(st.tuples(*[st.integers(-2, 2)] * d)))
    return SymbolicConfig(2, table, defects, block)
