"""Pair classification: k-proximal, k-asymptotic(eps), k-Li-Yorke.

Exact rules fire whenever the structure of the pair pins the distance
profile n -> d(T^n x, T^n y) down in closed form; everything else falls
back to a windowed search that can confirm proximality or refute
asymptoticity at finite depth, but never the reverse.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from ..lattice import ConeIndex, Vec, as_cone, cone_shell, form_gcd, max_norm
from ..space import (
    BlockLineDiff,
    Dyadic,
    EmptyDiff,
    FiniteDiff,
    OpaqueDiff,
    PeriodicDiff,
    covering_radius,
    diffset_profile_value,
    difference_set,
    nearest_difference,
    periodic_distance,
)
from ..systems import (
    CIRCLE_VERDICT_TOL,
    FiniteSystem,
    InducedSystem,
    ProductSystem,
    System,
)
from .verdict import AnalysisConfig, PairClass, Verdict, combine_li_yorke

DEFAULT_CONFIG = AnalysisConfig()


# -- distance profiles -------------------------------------------------------

def profile_function(sys: System, x, y) -> Callable[[Vec], Any]:
    """n -> d(act(n, x), act(n, y)), using the difference-set closed forms
    when the system is shift-structured."""
    if sys.is_shift_structured:
        D = difference_set(x, y)
        if isinstance(D, OpaqueDiff):
            return lambda n: Dyadic.from_radius(nearest_difference(x, y, center=n))
        return lambda n: diffset_profile_value(D, n)
    if isinstance(sys, InducedSystem) and sys.shift_base:
        D = difference_set(x, y)
        if isinstance(D, OpaqueDiff):
            return lambda n: Dyadic.from_radius(nearest_difference(x, y, center=(sys.r(n),)))
        return lambda n: diffset_profile_value(D, (sys.r(n),))
    return lambda n: sys.dist(sys.act(n, x), sys.act(n, y))


def _evaluate(fn: Callable, points: Sequence[Vec], threads: int) -> list:
    if threads <= 1 or len(points) < 64:
        return [fn(n) for n in points]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, points, chunksize=64))


def distance_profile(sys: System, x, y, k: ConeIndex | int, W: int, *,
                     threads: int = 1) -> dict[Vec, Any]:
    sys.require(x, y)
    cone = as_cone(k, sys.d)
    pts = cone_shell(cone, W)
    return dict(zip(pts, _evaluate(profile_function(sys, x, y), pts, threads)))


# -- exact classifications ---------------------------------------------------

def _is_zero(value) -> bool:
    if isinstance(value, float):
        return value <= CIRCLE_VERDICT_TOL
    return value == 0


def _exact_class(rule: str, liminf, limsup, cfg: AnalysisConfig, *,
                 witness: Any = None, asym_witness: Any = None) -> PairClass:
    """Classification from an exactly known liminf/limsup along cone tails.

    Valid when the tail supremum is eventually attained (discrete value
    sets, constant profiles): then k-Asym_eps holds iff limsup <= eps.
    """
    prox_zero = _is_zero(liminf)
    sup_zero = _is_zero(limsup)
    info = {"liminf": liminf, "limsup": limsup}
    if witness:
        info.update(witness)
    proximal = Verdict.yes(rule, info) if prox_zero else Verdict.no(rule, info)
    asym_info = dict(info)
    if asym_witness:
        asym_info.update(asym_witness)
    asym_at = {}
    for eps in cfg.eps_grid:
        ok = sup_zero or limsup <= eps
        asym_at[eps] = Verdict.yes(rule, info) if ok else Verdict.no(rule, asym_info)
    asymptotic = Verdict.yes(rule, info) if sup_zero else Verdict.no(rule, asym_info)
    return PairClass(proximal, asym_at, asymptotic,
                     combine_li_yorke(proximal, asymptotic, rule), rule, liminf, limsup)


def _classify_finite(sys: FiniteSystem, x: int, y: int, cfg: AnalysisConfig) -> PairClass:
    if x == y:
        return _exact_class("finite-diagonal", Fraction(0), Fraction(0), cfg)
    # the cone meets every residue class mod the generator orders, so every
    # cone tail sees the whole orbit of the pair under the group
    seen = {(x, y)}
    frontier = [(x, y)]
    while frontier:
        nxt = []
        for a, b in frontier:
            for i in range(sys.d):
                p = (sys.power(i, 1, a), sys.power(i, 1, b))
                if p not in seen:
                    seen.add(p)
                    nxt.append(p)
        frontier = nxt
    values = [sys.dist(a, b) for a, b in seen]
    return _exact_class("injective-finite", min(values), max(values), cfg,
                        witness={"orbit_size": len(seen)})


def _shift_class(D, cone: ConeIndex, cfg: AnalysisConfig) -> PairClass | None:
    zero = Dyadic.zero()
    if isinstance(D, EmptyDiff):
        return _exact_class("diffset-empty", zero, zero, cfg)
    if isinstance(D, FiniteDiff):
        far = max(max_norm(p) for p in D.cells)
        return _exact_class("diffset-finite", zero, zero, cfg,
                            witness={"cells": sorted(D.cells), "tail_start": far})
    if isinstance(D, PeriodicDiff):
        cov = covering_radius(D)
        return _exact_class("diffset-periodic", Dyadic.from_radius(cov), Dyadic(0), cfg,
                            witness={"period": D.period, "covering_radius": cov})
    if isinstance(D, BlockLineDiff):
        if not cone.contains(D.direction):
            return _exact_class("diffset-blockline", zero, zero, cfg,
                                witness={"direction": D.direction, "in_cone": False})
        hits, gaps = _blockline_witnesses(D, cone)
        return _exact_class("diffset-blockline", zero, Dyadic(0), cfg,
                            witness={"direction": D.direction, "in_cone": True,
                                     "gap_points": gaps},
                            asym_witness={"block_points": hits})
    return None


def _blockline_witnesses(D: BlockLineDiff, cone: ConeIndex, count: int = 3):
    fam = D.family
    hits, gaps = [], []
    j = 1
    while (len(hits) < count or len(gaps) < count) and j < 64:
        start = D.base ** j
        n = fam.cell(start)
        if cone.contains(n) and len(hits) < count:
            hits.append((n, 0))
        mid = (start + j + D.base ** (j + 1)) // 2
        g = fam.cell(mid)
        if cone.contains(g) and len(gaps) < count:
            gaps.append((g, -diffset_profile_value(D, g).exp))
        j += 1
    return hits, gaps


def _induced_shift_class(sys: InducedSystem, x, y, cone: ConeIndex,
                         cfg: AnalysisConfig) -> PairClass | None:
    """Profile of T_f on a 1-D shift base is p(r(n)) with p the base
    profile; the cone's image under r decides which part of p matters."""
    a = [hi * si for hi, si in zip(sys.form, cone.signs)]
    D = difference_set(x, y)
    if isinstance(D, OpaqueDiff):
        return None
    zero = Dyadic.zero()
    if isinstance(D, EmptyDiff):
        return _exact_class("induced-empty", zero, zero, cfg)
    if all(v == 0 for v in a):
        d0 = diffset_profile_value(D, (0,))
        return _exact_class("induced-trivial", d0, d0, cfg)
    g = form_gcd(a)
    if all(v >= 0 for v in a):
        direction = 1
    elif all(v <= 0 for v in a):
        direction = -1
    else:
        direction = 0
    info = {"direction": {1: "forward", -1: "backward", 0: "both"}[direction], "g": g}

    def gap(c: int) -> int:
        r = c % g
        return min(r, g - r)

    if isinstance(D, FiniteDiff):
        if direction:
            return _exact_class("induced-finite", zero, zero, cfg, witness=info)
        near = min(gap(p[0]) for p in D.cells)
        return _exact_class("induced-finite", zero, Dyadic.from_radius(near), cfg, witness=info)
    if isinstance(D, PeriodicDiff):
        span = math.lcm(D.period[0], g) // g
        vals = [periodic_distance(D.period, D.residues, (g * j,)) for j in range(span)]
        return _exact_class("induced-periodic", Dyadic.from_radius(max(vals)),
                            Dyadic.from_radius(min(vals)), cfg, witness=info)
    if isinstance(D, BlockLineDiff):
        (v,), (o,) = D.direction, D.offset
        ray = 1 if v > 0 else -1
        if direction and ray != direction:
            return _exact_class("induced-blockline", zero, zero, cfg, witness=info)
        delta0 = min(gap(o + t * v) for t in range(g))
        info["delta0"] = delta0
        return _exact_class("induced-blockline", zero, Dyadic.from_radius(delta0), cfg,
                            witness=info)
    return None


def _isometric_class(sys: System, x, y, cfg: AnalysisConfig) -> PairClass:
    d0 = sys.dist(x, y)
    if isinstance(d0, float) and d0 <= CIRCLE_VERDICT_TOL:
        d0 = 0.0
    return _exact_class("isometry", d0, d0, cfg)


def _product_class(sys: ProductSystem, x, y, cone: ConeIndex,
                   cfg: AnalysisConfig) -> PairClass:
    ca = classify_pair(sys.A, x[0], y[0], cone, cfg)
    cb = classify_pair(sys.B, x[1], y[1], cone, cfg)
    rule = "product-sup"
    for this, other in ((ca, cb), (cb, ca)):
        if other.asymptotic.exact_yes:
            # the other factor's distances vanish along cone tails
            return PairClass(this.proximal, dict(this.asymptotic_at), this.asymptotic,
                             this.li_yorke, rule, this.liminf, this.limsup)
    window = cfg.window

    def both(va: Verdict, vb: Verdict) -> Verdict:
        if va.is_no or vb.is_no:
            src = va if va.is_no else vb
            return Verdict.no(rule, {"factor": src.rule}, exact=src.exact, window=src.window)
        if va.is_yes and vb.is_yes:
            return Verdict.yes(rule, {"factors": [va.rule, vb.rule]},
                               exact=va.exact and vb.exact)
        return Verdict.unknown(window, "a factor is undecided")

    if ca.proximal.is_no or cb.proximal.is_no:
        src = ca.proximal if ca.proximal.is_no else cb.proximal
        proximal = Verdict.no(rule, {"factor": src.rule}, exact=src.exact, window=src.window)
    else:
        # proximal factors need not be proximal along a common sequence
        proximal = Verdict.unknown(window, "factor proximality does not align in general")
    asym_at = {e: both(ca.asymptotic_at[e], cb.asymptotic_at[e]) for e in cfg.eps_grid}
    asymptotic = both(ca.asymptotic, cb.asymptotic)
    limsup = None
    if ca.limsup is not None and cb.limsup is not None:
        limsup = cb.limsup if cb.limsup > ca.limsup else ca.limsup
    return PairClass(proximal, asym_at, asymptotic,
                     combine_li_yorke(proximal, asymptotic, rule), rule, None, limsup)


# -- windowed fallback -------------------------------------------------------

def _box_sums(mask: np.ndarray) -> np.ndarray:
    S = mask.astype(np.int64)
    for ax in range(S.ndim):
        S = np.cumsum(S, axis=ax)
    return np.pad(S, [(1, 0)] * S.ndim)


def _box_any(S: np.ndarray, lo: Sequence[int], hi: Sequence[int]) -> bool:
    """Any True in mask[lo_0:hi_0, lo_1:hi_1, ...] via inclusion-exclusion."""
    total = 0
    for corner in itertools.product((0, 1), repeat=len(lo)):
        idx = tuple(h if c else l for c, l, h in zip(corner, lo, hi))
        sign = (-1) ** (len(lo) - sum(corner))
        total += sign * int(S[idx])
    return total > 0


def windowed_class(sys: System, x, y, cone: ConeIndex, cfg: AnalysisConfig,
                   fn: Callable | None = None) -> PairClass:
    """Finite-depth evidence on the unsigned box [1, W + W//2]^d.

    A recurrence No inspects tails starting at depth <= W//2 only, so a
    transient disagreement deeper than that is mistaken for a recurring
    one. Verdicts are therefore never exact.
    """
    W = cfg.window
    half = max(W // 2, 1)
    U = W + half
    fn = fn or profile_function(sys, x, y)
    d = cone.d
    units = list(itertools.product(range(1, U + 1), repeat=d))
    pts = [cone.from_unsigned(u) for u in units]
    raw = _evaluate(fn, pts, cfg.threads)
    vals = np.array([float(v) for v in raw], dtype=float).reshape((U,) * d)

    dyadic = sys.dyadic_metric
    proximal = Verdict.unknown(W, "no exact rule; window cannot refute proximality")
    if dyadic:
        thresh = Fraction(1, 2 ** (W // 2))
        for n in cone_shell(cone, W):
            u = cone.to_unsigned(n)
            v = raw[_flat(u, U)]
            if v <= thresh:
                proximal = Verdict.yes("window-threshold", {"n": n, "value": v},
                                       exact=False, window=W)
                break

    asym_at = {}
    for eps in cfg.eps_grid:
        S = _box_sums(vals > float(eps))
        refuted = True
        for u in itertools.product(range(1, half + 1), repeat=d):
            # m ranges over [1, W]^d, so n + m covers [u+1, u+W]
            if not _box_any(S, tuple(ui for ui in u), tuple(ui + W for ui in u)):
                refuted = False
                break
        if refuted:
            m = next(m for m in itertools.product(range(1, W + 1), repeat=d)
                     if vals[tuple(mi for mi in m)] > float(eps))
            witness = {"n": cone.from_unsigned((1,) * d),
                       "m": cone.from_unsigned(m),
                       "value": raw[_flat(tuple(mi + 1 for mi in m), U)]}
            asym_at[eps] = Verdict.no("window-recurrence", witness, exact=False, window=W)
        else:
            asym_at[eps] = Verdict.unknown(W, "some tail stayed within eps in the window")
    refuted = [v for v in asym_at.values() if v.is_no]
    asymptotic = (Verdict.no("window-recurrence", refuted[-1].witness, exact=False, window=W)
                  if refuted else Verdict.unknown(W, "window cannot confirm asymptoticity"))
    return PairClass(proximal, asym_at, asymptotic,
                     combine_li_yorke(proximal, asymptotic, "window"), "window")


def _flat(u: Sequence[int], U: int) -> int:
    idx = 0
    for ui in u:
        idx = idx * U + (ui - 1)
    return idx


# -- dispatcher --------------------------------------------------------------

def classify_pair(sys: System, x, y, k: ConeIndex | int,
                  cfg: AnalysisConfig | None = None) -> PairClass:
    cfg = cfg or DEFAULT_CONFIG
    sys.require(x, y)
    cone = as_cone(k, sys.d)
    result: PairClass | None = None
    if isinstance(sys, FiniteSystem):
        result = _classify_finite(sys, x, y, cfg)
    elif sys.is_shift_structured:
        result = _shift_class(difference_set(x, y), cone, cfg)
    elif isinstance(sys, InducedSystem) and sys.shift_base:
        result = _induced_shift_class(sys, x, y, cone, cfg)
    elif sys.is_isometric:
        result = _isometric_class(sys, x, y, cfg)
    elif isinstance(sys, ProductSystem):
        result = _product_class(sys, x, y, cone, cfg)
    if result is None:
        result = windowed_class(sys, x, y, cone, cfg)
    errs = result.consistency_errors()
    if errs:
        from .verdict import InvariantViolation

        raise InvariantViolation("; ".join(errs))
    return result


def scrambled_set_check(sys: System, points: Sequence, k: ConeIndex | int,
                        cfg: AnalysisConfig | None = None) -> Verdict:
    cfg = cfg or DEFAULT_CONFIG
    pts = list(points)
    if len(pts) < 2:
        raise ValueError("a scrambled set check needs at least two points")
    for i, p in enumerate(pts):
        if any(p == q for q in pts[:i]):
            raise ValueError(f"duplicate point at index {i}")
    unknown = None
    for i, j in itertools.combinations(range(len(pts)), 2):
        ly = classify_pair(sys, pts[i], pts[j], k, cfg).li_yorke
        if ly.is_no:
            return Verdict.no("pair-not-li-yorke", {"pair": (i, j), "rule": ly.rule},
                              exact=ly.exact, window=ly.window)
        if ly.is_unknown and unknown is None:
            unknown = (i, j)
    if unknown is not None:
        return Verdict.unknown(cfg.window, f"pair {unknown} undecided", witness={"pair": unknown})
    return Verdict.yes("all-pairs-li-yorke", {"pairs": len(pts) * (len(pts) - 1) // 2})
