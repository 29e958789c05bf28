"""k-type limit and prolongation sets of finite systems."""

from __future__ import annotations

import itertools

from ..lattice import ConeIndex, as_cone
from ..systems import FiniteSystem, System


def _require_finite(sys: System) -> FiniteSystem:
    if not isinstance(sys, FiniteSystem):
        raise TypeError("limit sets are computed exactly only for finite systems")
    return sys


def _deep_box(sys: FiniteSystem, cone: ConeIndex):
    # cone vectors past depth o_i in every coordinate, one full residue box;
    # n -> act(n, x) is periodic mod the orders, so anything hit here is hit
    # at arbitrarily large cone depth
    ranges = [range(o + 1, 2 * o + 1) for o in sys.orders]
    for u in itertools.product(*ranges):
        yield cone.from_unsigned(u)


def limit_set_finite(sys: System, x: int, k: ConeIndex | int) -> frozenset[int]:
    sys = _require_finite(sys)
    cone = as_cone(k, sys.d)
    return frozenset(sys.act(n, x) for n in _deep_box(sys, cone))


def prolongation_set_finite(sys: System, x: int, k: ConeIndex | int) -> frozenset[int]:
    """J^k(x) straight from the neighbourhood form: y is in J^k(x) when the
    smallest balls around y and x are connected by a deep cone vector."""
    sys = _require_finite(sys)
    cone = as_cone(k, sys.d)
    res = sys.space.resolution
    V = sys.space.ball(x, res)
    out = set()
    for y in range(sys.space.size):
        U = set(sys.space.ball(y, res))
        if any(sys.act(n, z) in U for n in _deep_box(sys, cone) for z in V):
            out.add(y)
    return frozenset(out)
