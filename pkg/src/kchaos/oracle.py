"""Brute-force references for the analyzers.

Nothing here looks at difference sets or capability flags: profiles are
evaluated by applying the action and the metric directly, and
classifications come from exhaustive enumeration. The classical path
reasons about forward orbits of a single shift map from the raw
presentation, as a check on the d = 1 reduction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .lattice import ConeIndex, Vec, as_cone, cone_shell, r_eval
from .space import Dyadic, SymbolicConfig

DEFAULT_EPS = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))


@dataclass(frozen=True)
class OracleResult:
    """None marks a question the reference cannot settle."""

    proximal: bool | None
    asymptotic: bool | None
    asymptotic_at: dict = field(default_factory=dict)
    liminf: Any = None
    limsup: Any = None
    bound: Any = None
    method: str = ""

    @property
    def li_yorke(self) -> bool | None:
        if self.proximal is False or self.asymptotic is True:
            return False
        if self.proximal is None or self.asymptotic is None:
            return None
        return True


def _perm_order(g: Sequence[int]) -> int:
    ident = tuple(range(len(g)))
    p, e = tuple(g), 1
    while p != ident:
        p = tuple(g[i] for i in p)
        e += 1
    return e


def brute_pair_classify_finite(sys, x, y, k: ConeIndex | int,
                               eps_grid: Sequence = DEFAULT_EPS) -> OracleResult:
    gens = getattr(sys, "generators", None)
    if gens is None:
        raise TypeError("the finite oracle needs a permutation system")
    cone = as_cone(k, sys.d)
    orders = [_perm_order(g) for g in gens]
    values = []
    for u in itertools.product(*(range(1, o + 1) for o in orders)):
        n = cone.from_unsigned(u)
        values.append(sys.dist(sys.act(n, x), sys.act(n, y)))
    lo, hi = min(values), max(values)
    return OracleResult(
        proximal=lo == 0,
        asymptotic=hi == 0,
        asymptotic_at={Fraction(e): hi <= e for e in eps_grid},
        liminf=lo,
        limsup=hi,
        bound=tuple(orders),
        method="period-box",
    )


def brute_profile(sys, x, y, k: ConeIndex | int, W: int) -> dict[Vec, Any]:
    cone = as_cone(k, sys.d)
    return {n: sys.dist(sys.act(n, x), sys.act(n, y)) for n in cone_shell(cone, W)}


def brute_cone_unit(h: Sequence[int], k: ConeIndex | int, bound: int) -> Vec | None:
    h = tuple(h)
    cone = as_cone(k, len(h))
    found = []
    for n in itertools.product(range(-bound, bound + 1), repeat=len(h)):
        if not all(s * c > 0 for s, c in zip(cone.signs, n)):
            continue
        if r_eval(h, n) == 1:
            found.append(n)
    if not found:
        return None
    return min(found, key=lambda n: (max(abs(c) for c in n), n))


def _dist_to_progression(t: int, residues: Sequence[int], period: int) -> int:
    best = period
    for r in residues:
        a = (t - r) % period
        best = min(best, a, period - a)
    return best


def classical_pair_classify(x: SymbolicConfig, y: SymbolicConfig,
                            eps_grid: Sequence = DEFAULT_EPS) -> OracleResult:
    """Forward-orbit classification of a pair under the 1-D shift map.

    Beyond a cutoff T0 (past every defect and block offset) each
    configuration is its periodic background, overwritten along block
    families that point forward. The cases decided are those where the
    forward tail is a pure background difference or a single forward
    block family over equal backgrounds.
    """
    if x.d != 1 or y.d != 1:
        raise ValueError("the classical path handles one-dimensional configurations")
    undecided = OracleResult(None, None, {Fraction(e): None for e in eps_grid},
                             method="classical-undecided")
    L = math.lcm(x.period[0], y.period[0])
    residues = [t for t in range(L) if x.background_at((t,)) != y.background_at((t,))]
    fwd = [b for b in (x.block, y.block) if b is not None and b.direction[0] > 0]
    if x.block == y.block and x.block is not None and x.block.direction[0] > 0:
        fwd = []
        if residues:
            return undecided
    if len(fwd) > 1:
        return undecided
    zero = Dyadic.zero()

    def result(lo, hi, method):
        return OracleResult(lo == 0, hi == 0, {Fraction(e): hi <= e for e in eps_grid},
                            lo, hi, L, method)

    if not fwd:
        if not residues:
            return result(zero, zero, "classical-tail-equal")
        worst = max(_dist_to_progression(t, residues, L) for t in range(L))
        return result(Dyadic.from_radius(worst), Dyadic(0), "classical-periodic-tail")
    if residues:
        return undecided
    fam = fwd[0]
    owner = x if fam == x.block else y
    other = y if owner is x else x
    v = fam.direction[0]
    # does the family ever disagree with the shared background far out?
    hit = any(other.background_at((fam.offset[0] + t * v,)) != fam.symbol for t in range(L))
    if not hit:
        return result(zero, zero, "classical-tail-equal")
    return result(zero, Dyadic(0), "classical-forward-blocks")
