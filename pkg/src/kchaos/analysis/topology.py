"""System-level properties: sensitivity, equicontinuity points, the G_l
sets, Li-Yorke sensitivity, transitivity and periodic points.

Positive answers on infinite systems come from explicit constructions
(flip a symbol far out, overlay a block family, splice two cylinders) that
are verified by evaluating the action before a verdict is emitted.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Any

import numpy as np

from ..lattice import (
    ConeIndex,
    Vec,
    as_cone,
    cone_shell,
    form_gcd,
    max_norm,
    scale,
    solve_cone_unit,
    solve_form,
)
from ..space import BlockFamily, SymbolicConfig
from ..systems import (
    CircleRotation,
    FiniteSystem,
    InducedSystem,
    ProductSystem,
    System,
)
from .pairs import DEFAULT_CONFIG, classify_pair
from .verdict import AnalysisConfig, InvariantViolation, Verdict


# -- shared constructions ----------------------------------------------------

def flip_radius(eps) -> int:
    """Smallest R >= 0 with 2^-R <= eps."""
    eps = Fraction(eps)
    R = 0
    while Fraction(1, 2**R) > eps:
        R += 1
    return R


def flip_at(x: SymbolicConfig, p: Vec, step: Vec) -> tuple[Vec, SymbolicConfig]:
    """x with the symbol at p changed; slides along ``step`` off block cells."""
    for _ in range(256):
        if x.block is None or not x.block.contains(p):
            return p, x.with_symbol(p, (x[p] + 1) % x.q)
        p = tuple(a + b for a, b in zip(p, step))
    raise InvariantViolation("no free cell found for a symbol flip")


def _is_identity_induced(sys: System) -> bool:
    return isinstance(sys, InducedSystem) and all(h == 0 for h in sys.form)


def _induced_step(sys: InducedSystem, cone: ConeIndex, target: int,
                  cfg: AnalysisConfig) -> tuple[Vec, int] | None:
    """A cone vector n with |r(n)| >= target, preferring n = target * m
    for a cone solution m of r(m) = 1. Returns (n, r(n))."""
    unit = solve_cone_unit(sys.form, cone, cfg.unit_bound)
    if unit.found:
        n = scale(target, unit.m)
        return n, target
    for n0 in cone_shell(cone, cfg.unit_bound):
        r0 = sys.r(n0)
        if r0:
            c = -(-target // abs(r0))
            return scale(c, n0), c * r0
    return None


def _samples(sys: System, cfg: AnalysisConfig) -> list:
    return sys.sample_points(random.Random(cfg.seed), cfg.sample_count)


def _witness_row(x_index: int, eps, n: Vec, d0, sep, **extra: Any) -> dict:
    row = {"sample": x_index, "eps": eps, "n": n, "initial": d0, "separation": sep}
    row.update(extra)
    return row


# -- sensitivity ---------------------------------------------------------------

def sensitivity_witness(sys: System, x, eps, cone: ConeIndex,
                        cfg: AnalysisConfig) -> tuple[Any, Vec, str, dict] | None:
    """A companion y with d(x, y) < eps and a cone n separating them by
    more than cfg.delta (not yet verified)."""
    R = flip_radius(eps)
    if sys.is_shift_structured:
        p0 = tuple(s * (R + 1) for s in cone.signs)
        p, y = flip_at(x, p0, cone.signs)
        return y, p, "shift-flip", {"flip": p}
    if isinstance(sys, InducedSystem) and sys.shift_base:
        step = _induced_step(sys, cone, R + 1, cfg)
        if step is None:
            return None
        n, r = step
        pos, y = flip_at(x, (r,), (1 if r > 0 else -1,))
        if pos != (r,):
            return None
        return y, n, "induced-shift-flip", {"flip": pos}
    if isinstance(sys, ProductSystem):
        for side, factor in ((0, sys.A), (1, sys.B)):
            w = sensitivity_witness(factor, x[side], eps, cone, cfg)
            if w is not None:
                y, n, rule, info = w
                z = (y, x[1]) if side == 0 else (x[0], y)
                return z, n, "product-transport", dict(info, factor=side, factor_rule=rule)
    return None


def sensitivity_check(sys: System, k: ConeIndex | int,
                      cfg: AnalysisConfig | None = None) -> Verdict:
    cfg = cfg or DEFAULT_CONFIG
    cone = as_cone(k, sys.d)
    if sys.is_isometric:
        return Verdict.no("isometry", {"reason": "d(T^n x, T^n y) = d(x, y) < eps <= delta"})
    if _is_identity_induced(sys):
        return Verdict.no("identity-action", {"form": sys.form})
    if isinstance(sys, FiniteSystem):
        res = sys.space.resolution
        balls = {p: sys.space.ball(p, res) for p in range(sys.space.size)}
        if any(b != [p] for p, b in balls.items()):
            raise InvariantViolation("ball of radius resolution is not a singleton")
        return Verdict.no("finite-exhaustive", {"eps": res, "balls": "singletons"})
    rows = []
    rule = None
    for i, x in enumerate(_samples(sys, cfg)):
        for eps in cfg.eps_grid:
            w = sensitivity_witness(sys, x, eps, cone, cfg)
            if w is None:
                return Verdict.unknown(cfg.window, "no companion construction for this system")
            y, n, rule, info = w
            d0 = sys.dist(x, y)
            sep = sys.dist(sys.act(n, x), sys.act(n, y))
            if not (d0 < eps and sep > cfg.delta and cone.contains(n)):
                raise InvariantViolation(f"sensitivity witness failed at sample {i}, eps {eps}")
            rows.append(_witness_row(i, eps, n, d0, sep, **info))
    return Verdict.yes(rule, {"delta": cfg.delta, "witnesses": rows})


# -- equicontinuity and G_l ----------------------------------------------------

def _full_flip(sys: System, x, R: int, cfg: AnalysisConfig):
    """A companion within 2^-R and some n in Z^d moving the flip to the
    origin (equicontinuity quantifies over the whole group)."""
    if sys.is_shift_structured:
        p, y = flip_at(x, (R + 1,) * sys.d, (1,) * sys.d)
        return y, p, "shift-flip"
    if isinstance(sys, InducedSystem) and sys.shift_base and not _is_identity_induced(sys):
        g = form_gcd(sys.form)
        target = g * (-(-(R + 1) // g))
        pos, y = flip_at(x, (target,), (g,))
        n = solve_form(sys.form, pos[0])
        if n is None:
            return None
        return y, n, "induced-shift-flip"
    return None


def equicontinuity_point_check(sys: System, x, cfg: AnalysisConfig | None = None) -> Verdict:
    cfg = cfg or DEFAULT_CONFIG
    sys.require(x)
    if sys.is_isometric:
        return Verdict.yes("isometry", {"delta_for_eps": "delta = eps"})
    if _is_identity_induced(sys):
        return Verdict.yes("identity-action", {"form": sys.form})
    if isinstance(sys, FiniteSystem):
        res = sys.space.resolution
        return Verdict.yes("finite-exhaustive", {"delta": res, "ball": sys.space.ball(x, res)})
    if isinstance(sys, ProductSystem):
        va = equicontinuity_point_check(sys.A, x[0], cfg)
        vb = equicontinuity_point_check(sys.B, x[1], cfg)
        if va.is_no or vb.is_no:
            src = va if va.is_no else vb
            return Verdict.no("product-sup", {"factor": 0 if va.is_no else 1, "rule": src.rule},
                              exact=src.exact, window=src.window)
        if va.is_yes and vb.is_yes:
            return Verdict.yes("product-sup", {"rules": [va.rule, vb.rule]},
                               exact=va.exact and vb.exact)
        return Verdict.unknown(cfg.window, "a factor is undecided")
    eps = cfg.delta
    rows = []
    rule = None
    for delta in cfg.eps_grid:
        w = _full_flip(sys, x, flip_radius(delta), cfg)
        if w is None:
            return Verdict.unknown(cfg.window, "no separating construction for this system")
        y, n, rule = w
        d0 = sys.dist(x, y)
        sep = sys.dist(sys.act(n, x), sys.act(n, y))
        if not (d0 < delta and sep > eps):
            raise InvariantViolation("equicontinuity witness failed")
        rows.append({"delta": delta, "n": n, "initial": d0, "separation": sep})
    return Verdict.no(rule, {"eps": eps, "sequence": rows})


def _finite_gl_radius(sys: FiniteSystem, x: int, l: int) -> Fraction:
    """Largest ball radius (among metric values) whose points stay within
    1/l of each other under the whole group."""
    bound = Fraction(1, l)
    orders = sys.orders
    group = list(itertools.product(*(range(o) for o in orders)))
    radii = sorted({v for row in sys.space.metric for v in row if v > 0})
    best = radii[0]
    for r in radii:
        ball = sys.space.ball(x, r)
        ok = all(sys.dist(sys.act(n, a), sys.act(n, b)) <= bound
                 for a, b in itertools.combinations(ball, 2) for n in group)
        if ok:
            best = r
        else:
            break
    return best


def gl_membership(sys: System, x, l: int, cfg: AnalysisConfig | None = None, *,
                  _evidence: bool = True) -> Verdict:
    cfg = cfg or DEFAULT_CONFIG
    if l < 1:
        raise ValueError("l must be a positive integer")
    sys.require(x)
    verdict: Verdict
    if isinstance(sys, FiniteSystem):
        verdict = Verdict.yes("finite-exhaustive", {"radius": _finite_gl_radius(sys, x, l)})
    elif sys.is_isometric:
        verdict = Verdict.yes("isometry", {"radius": Fraction(1, 2 * l)})
    elif _is_identity_induced(sys):
        verdict = Verdict.yes("identity-action", {"radius": Fraction(1, 2 * l)})
    elif isinstance(sys, ProductSystem):
        va = gl_membership(sys.A, x[0], l, cfg, _evidence=False)
        vb = gl_membership(sys.B, x[1], l, cfg, _evidence=False)
        if va.is_no or vb.is_no:
            src = va if va.is_no else vb
            verdict = Verdict.no("product-sup", {"rule": src.rule}, exact=src.exact,
                                 window=src.window)
        elif va.is_yes and vb.is_yes:
            verdict = Verdict.yes("product-sup", {"rules": [va.rule, vb.rule]},
                                  exact=va.exact and vb.exact)
        else:
            verdict = Verdict.unknown(cfg.window, "a factor is undecided")
    elif l == 1 and sys.dyadic_metric:
        verdict = Verdict.yes("diameter", {"reason": "shift distances never exceed 1"})
    else:
        rows = []
        verdict = None
        for delta in cfg.eps_grid:
            w = _full_flip(sys, x, flip_radius(delta), cfg)
            if w is None:
                verdict = Verdict.unknown(cfg.window, "no separating construction")
                break
            y, n, rule = w
            sep = sys.dist(sys.act(n, x), sys.act(n, y))
            if not (sys.dist(x, y) < delta and sep > Fraction(1, l)):
                raise InvariantViolation("G_l witness failed")
            rows.append({"delta": delta, "n": n, "separation": sep})
        if verdict is None:
            verdict = Verdict.no(rule, {"bound": Fraction(1, l), "pairs": rows})
    if _evidence and not verdict.is_unknown:
        # G_l is invariant under the whole action: translates must agree
        evidence = []
        for c in (1, 2):
            n = (-c,) * sys.d
            v = gl_membership(sys, sys.act(n, x), l, cfg, _evidence=False)
            evidence.append({"n": n, "outcome": v.outcome.value})
            if not v.is_unknown and v.outcome is not verdict.outcome:
                raise InvariantViolation("G_l membership not invariant under the action")
        w = dict(verdict.witness or {})
        w["invariance"] = evidence
        verdict = Verdict(verdict.outcome, verdict.rule, verdict.exact, w, verdict.window)
    return verdict


# -- Li-Yorke sensitivity ------------------------------------------------------

def lys_companion(sys: System, x, eps, cone: ConeIndex, cfg: AnalysisConfig):
    """A point within eps of x whose difference with x is a single block
    family reaching deep into the cone (proximal, never asymptotic)."""
    R = flip_radius(eps)
    if sys.is_shift_structured:
        if x.block is not None:
            return None
        v = tuple(s * p for s, p in zip(cone.signs, x.period))
        symbol = (x.background_at((0,) * x.d) + 1) % x.q
        far = max([R] + [max_norm(p) for p in x.defect_positions()])
        B = max(2, far // max_norm(v) + 1)
        return x.with_block(BlockFamily(v, B, symbol))
    if isinstance(sys, InducedSystem) and sys.shift_base:
        if x.block is not None or _is_identity_induced(sys):
            return None
        a = [h * s for h, s in zip(sys.form, cone.signs)]
        ray = -1 if all(v <= 0 for v in a) else 1
        g = form_gcd(a)
        v = (ray * math.lcm(x.period[0], g),)
        symbol = (x.background_at((0,)) + 1) % x.q
        far = max([R] + [max_norm(p) for p in x.defect_positions()])
        B = max(2, far // abs(v[0]) + 1)
        return x.with_block(BlockFamily(v, B, symbol))
    if isinstance(sys, ProductSystem):
        for side, factor in ((0, sys.A), (1, sys.B)):
            y = lys_companion(factor, x[side], eps, cone, cfg)
            if y is not None:
                return (y, x[1]) if side == 0 else (x[0], y)
    return None


def li_yorke_sensitivity_check(sys: System, k: ConeIndex | int,
                               cfg: AnalysisConfig | None = None) -> Verdict:
    cfg = cfg or DEFAULT_CONFIG
    cone = as_cone(k, sys.d)
    if sys.is_isometric:
        return Verdict.no("isometry", {"reason": "proximal cells are singletons"})
    if _is_identity_induced(sys):
        return Verdict.no("identity-action", {"form": sys.form})
    if isinstance(sys, FiniteSystem):
        return Verdict.no("injective-finite", {"reason": "proximal cells are singletons"})
    ly_eps = cfg.delta
    ccfg = cfg.with_eps(ly_eps)
    rows = []
    for i, x in enumerate(_samples(sys, cfg)):
        for eps in cfg.eps_grid:
            y = lys_companion(sys, x, eps, cone, cfg)
            if y is None:
                return Verdict.unknown(cfg.window, "no companion construction for this system")
            d0 = sys.dist(x, y)
            if not d0 < eps:
                raise InvariantViolation("Li-Yorke companion is not within eps")
            pc = classify_pair(sys, x, y, cone, ccfg)
            prox, asym = pc.proximal, pc.asymptotic_at[ly_eps]
            if not (prox.exact_yes and asym.exact_no):
                return Verdict.unknown(cfg.window, f"companion of sample {i} not resolved",
                                       witness={"sample": i, "eps": eps})
            rows.append({"sample": i, "eps": eps, "initial": d0, "rule": pc.rule})
    rule = "product-transport" if isinstance(sys, ProductSystem) else "blockline-companion"
    return Verdict.yes(rule, {"eps": ly_eps, "witnesses": rows})


# -- transitivity --------------------------------------------------------------

def _finite_orbits(sys: FiniteSystem) -> list[set[int]]:
    orbits, seen = [], set()
    for p in range(sys.space.size):
        if p in seen:
            continue
        orb, frontier = {p}, [p]
        while frontier:
            nxt = []
            for a in frontier:
                for i in range(sys.d):
                    q = sys.power(i, 1, a)
                    if q not in orb:
                        orb.add(q)
                        nxt.append(q)
            frontier = nxt
        seen |= orb
        orbits.append(orb)
    return orbits


def _random_pattern(rng: random.Random, q: int, d: int, rho: int) -> dict[Vec, int]:
    return {m: rng.randrange(q) for m in itertools.product(range(-rho, rho + 1), repeat=d)}


def _splice_shift(sys: System, cone: ConeIndex, cfg: AnalysisConfig) -> Verdict:
    rho = cfg.cylinder_radius
    n = tuple(s * (2 * rho + 1) for s in cone.signs)
    rng = random.Random(cfg.seed)
    example = None
    for _ in range(cfg.sample_count):
        u = _random_pattern(rng, sys.q, sys.d, rho)
        v = _random_pattern(rng, sys.q, sys.d, rho)
        defects = dict(u)
        defects.update({tuple(a + b for a, b in zip(m, n)): s for m, s in v.items()})
        z = SymbolicConfig(sys.q, 0, defects, d=sys.d)
        moved = sys.act(n, z)
        if any(z[m] != s for m, s in u.items()) or any(moved[m] != s for m, s in v.items()):
            raise InvariantViolation("cylinder splice failed")
        example = example or {"u": sorted(u.items()), "v": sorted(v.items()),
                              "z_defects": sorted(z.defects.items())}
    return Verdict.yes("cylinder-splice", {"n": n, "radius": rho, "pairs": cfg.sample_count,
                                           "example": example})


def _splice_induced(sys: InducedSystem, cone: ConeIndex, cfg: AnalysisConfig) -> Verdict:
    rho = cfg.cylinder_radius
    step = _induced_step(sys, cone, 2 * rho + 1, cfg)
    if step is None:
        return Verdict.unknown(cfg.window, "no cone vector with nonzero r in bound")
    n, r = step
    q = sys.base.q
    rng = random.Random(cfg.seed)
    for _ in range(cfg.sample_count):
        u = _random_pattern(rng, q, 1, rho)
        v = _random_pattern(rng, q, 1, rho)
        defects = dict(u)
        defects.update({(m[0] + r,): s for m, s in v.items()})
        z = SymbolicConfig(q, 0, defects, d=1)
        moved = sys.act(n, z)
        if any(z[m] != s for m, s in u.items()) or any(moved[m] != s for m, s in v.items()):
            raise InvariantViolation("cylinder splice failed")
    return Verdict.yes("cylinder-splice", {"n": n, "r": r, "radius": rho,
                                           "pairs": cfg.sample_count})


def _rotation_density(sys: InducedSystem, cone: ConeIndex, cfg: AnalysisConfig) -> Verdict:
    alpha = sys.base.alpha
    rs = np.array([sys.r(n) for n in cone_shell(cone, cfg.window)], dtype=np.int64)
    pts = np.sort(np.mod(rs.astype(float) * alpha, 1.0))
    gaps = np.diff(np.concatenate([pts, [pts[0] + 1.0]]))
    max_gap = float(gaps.max())
    # every circle point lies within max_gap / 2 of the sampled orbit
    if all(max_gap / 2 < float(e) for e in cfg.eps_grid):
        return Verdict.yes("window-dense", {"max_gap": f"{max_gap:.12g}"}, exact=False,
                           window=cfg.window)
    return Verdict.unknown(cfg.window, f"largest orbit gap {max_gap:.12g}")


def transitivity_check(sys: System, k: ConeIndex | int,
                       cfg: AnalysisConfig | None = None) -> Verdict:
    cfg = cfg or DEFAULT_CONFIG
    cone = as_cone(k, sys.d)
    if isinstance(sys, FiniteSystem):
        # the cone meets every residue class mod the orders: cone orbits are
        # group orbits
        orbits = _finite_orbits(sys)
        for orb in orbits:
            if len(orb) == sys.space.size:
                return Verdict.yes("finite-exhaustive", {"point": min(orb)})
        return Verdict.no("finite-exhaustive", {"orbit_sizes": sorted(len(o) for o in orbits)})
    if _is_identity_induced(sys):
        return Verdict.no("identity-action", {"reason": "orbits are single points"})
    if sys.is_shift_structured:
        return _splice_shift(sys, cone, cfg)
    if isinstance(sys, InducedSystem) and sys.shift_base:
        return _splice_induced(sys, cone, cfg)
    if isinstance(sys, InducedSystem) and isinstance(sys.base, CircleRotation):
        return _rotation_density(sys, cone, cfg)
    return Verdict.unknown(cfg.window, "no transitivity rule for this system")


# -- periodic points -----------------------------------------------------------

def periodic_point_check(sys: System, x, k: ConeIndex | int,
                         cfg: AnalysisConfig | None = None) -> Verdict:
    """Is there n >^k 0 with act(n, x) = x?"""
    cfg = cfg or DEFAULT_CONFIG
    cone = as_cone(k, sys.d)
    sys.require(x)
    n = None
    rule = None
    if isinstance(sys, FiniteSystem):
        n, rule = tuple(s * o for s, o in zip(cone.signs, sys.orders)), "generator-orders"
    elif sys.is_shift_structured:
        if x.defects or x.block is not None:
            return Verdict.no("aperiodic-overrides", {"reason": "finitely many or sparse overrides"})
        n, rule = tuple(s * p for s, p in zip(cone.signs, x.period)), "background-period"
    elif isinstance(sys, InducedSystem) and sys.shift_base:
        plain = not x.defects and x.block is None
        p = x.period[0] if plain else 0
        unit = solve_cone_unit(sys.form, cone, cfg.unit_bound)
        if plain and unit.found:
            n, rule = scale(p, unit.m), "cone-unit-multiple"
        else:
            for cand in cone_shell(cone, cfg.unit_bound):
                r = sys.r(cand)
                if (r == 0) or (plain and r % p == 0):
                    n, rule = cand, "cone-search"
                    break
            if n is None and not plain:
                a = [h * s for h, s in zip(sys.form, cone.signs)]
                if all(v >= 0 for v in a) or all(v <= 0 for v in a):
                    if any(a):
                        return Verdict.no("aperiodic-overrides",
                                          {"reason": "r never vanishes on the cone"})
    else:
        for cand in cone_shell(cone, cfg.window):
            if sys.act(cand, x) == x:
                n, rule = cand, "window-search"
                break
    if n is None:
        return Verdict.unknown(cfg.unit_bound if isinstance(sys, InducedSystem) else cfg.window,
                               "no period found in bound")
    if not (cone.contains(n) and sys.act(n, x) == x):
        raise InvariantViolation(f"periodic witness {n} failed")
    return Verdict.yes(rule, {"n": n})


def periodic_density_check(sys: System, k: ConeIndex | int,
                           cfg: AnalysisConfig | None = None) -> Verdict:
    """Every sampled cylinder contains a k-type periodic point."""
    cfg = cfg or DEFAULT_CONFIG
    cone = as_cone(k, sys.d)
    if isinstance(sys, FiniteSystem):
        return Verdict.yes("generator-orders", {"reason": "every point is periodic"})
    shiftlike = sys.is_shift_structured or (isinstance(sys, InducedSystem) and sys.shift_base)
    if not shiftlike:
        return Verdict.unknown(cfg.window, "no periodic-point construction for this system")
    d = 1 if isinstance(sys, InducedSystem) else sys.d
    q = sys.base.q if isinstance(sys, InducedSystem) else sys.q
    rho = cfg.cylinder_radius
    P = 2 * rho + 1
    rng = random.Random(cfg.seed)
    rows = []
    for _ in range(cfg.sample_count):
        u = _random_pattern(rng, q, d, rho)
        table = np.zeros((P,) * d, dtype=np.int64)
        for m, s in u.items():
            table[tuple(mi % P for mi in m)] = s
        z = SymbolicConfig(q, table)
        if any(z[m] != s for m, s in u.items()):
            raise InvariantViolation("periodic splice left the cylinder")
        v = periodic_point_check(sys, z, cone, cfg)
        if not v.is_yes:
            return Verdict.unknown(cfg.window, "a spliced point had no period in bound")
        rows.append(v.witness["n"])
    return Verdict.yes("periodic-splice", {"radius": rho, "periods": rows[:5]})
