"""Theorem suites: concrete instances of the conjugacy, product,
induced-action and dichotomy results, each reported as a TheoremCase.

A case is confirmed when every hypothesis and conclusion holds exactly,
vacuous when some hypothesis is exactly false, refuted when exact
hypotheses hold but a conclusion exactly fails (always a bug, since the
results are theorems), and inconclusive otherwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .analysis import (
    AnalysisConfig,
    classify_pair,
    dichotomy_report,
    equicontinuity_point_check,
    gl_membership,
    li_yorke_sensitivity_check,
    limit_set_finite,
    periodic_density_check,
    periodic_point_check,
    prolongation_set_finite,
    sensitivity_check,
    transitivity_check,
)
from .analysis.pairs import DEFAULT_CONFIG
from .analysis.verdict import PairClass, Verdict
from .batteries import (
    GOLDEN,
    pair_battery_2d,
    pairs_1d,
    period_two_config,
    standard_battery,
    swap_identity_system,
    three_cycle_system,
)
from .lattice import ConeIndex, as_cone, solve_cone_unit
from .oracle import classical_pair_classify
from .systems import (
    FiniteSystem,
    System,
    make_induced_shift,
    make_rotation_induced,
    make_shift,
)

CONFIRMED = "confirmed"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"
VACUOUS = "vacuous"


class ConjugacyError(ValueError):
    pass


@dataclass(frozen=True)
class TheoremCase:
    theorem: str
    statement: str
    instance: str
    hypotheses: dict
    conclusions: dict
    status: str
    note: str | None = None
    details: Any = None

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED


def decide(hypotheses: dict, conclusions: dict) -> str:
    hyps = list(hypotheses.values())
    if any(v.exact_no for v in hyps):
        return VACUOUS
    if not all(v.exact_yes for v in hyps):
        return INCONCLUSIVE
    concl = list(conclusions.values())
    if any(v.exact_no for v in concl):
        return REFUTED
    if concl and all(v.exact_yes for v in concl):
        return CONFIRMED
    return INCONCLUSIVE


def make_case(theorem: str, statement: str, instance: str, hypotheses: dict,
              conclusions: dict, note: str | None = None, details: Any = None) -> TheoremCase:
    return TheoremCase(theorem, statement, instance, dict(hypotheses), dict(conclusions),
                       decide(hypotheses, conclusions), note, details)


def _truth(flag: bool | None, rule: str, window: int = 0, witness: Any = None) -> Verdict:
    if flag is None:
        return Verdict.unknown(window, f"{rule}: undecided", witness)
    return Verdict.yes(rule, witness) if flag else Verdict.no(rule, witness)


def _agreement(same: bool, witness: Any = None) -> Verdict:
    return Verdict.yes("verdicts-agree", witness) if same else Verdict.no("verdicts-differ", witness)


def _pair_summary(pc: PairClass) -> dict:
    return {"proximal": pc.proximal.outcome.value, "asymptotic": pc.asymptotic.outcome.value,
            "li_yorke": pc.li_yorke.outcome.value, "rule": pc.rule}


# -- conjugacy -----------------------------------------------------------------

def generator_identity(A: System, B: System, h_fwd: Callable, cfg: AnalysisConfig) -> dict:
    pts = A.sample_points(random.Random(cfg.seed), cfg.conjugacy_samples)
    checks = 0
    for x in pts:
        for i in range(A.d):
            e = tuple(1 if j == i else 0 for j in range(A.d))
            lhs = h_fwd(A.act(e, x))
            if lhs != B.act(e, h_fwd(x)):
                raise ConjugacyError(f"h(T^e{i} x) != S^e{i} h(x) at a sampled point")
            if B.is_shift_structured and lhs != h_fwd(x).shifted(e):
                raise ConjugacyError("relabeling does not commute with translation")
            checks += 1
    return {"samples": len(pts), "checks": checks}


def conjugacy_suite(A: System, B: System, h_fwd: Callable, h_inv: Callable,
                    k: ConeIndex | int, cfg: AnalysisConfig | None = None,
                    pairs: Sequence | None = None) -> list[TheoremCase]:
    cfg = cfg or DEFAULT_CONFIG
    cone = as_cone(k, A.d)
    ident = generator_identity(A, B, h_fwd, cfg)
    hyp = {"conjugacy": Verdict.yes("generator-identity", ident)}
    cases = [make_case("conjugacy.identity",
                       "the bijection intertwines the two actions on each generator",
                       f"{ident['samples']} sampled points", {}, hyp)]
    if pairs is None:
        if A.is_shift_structured and A.d == 2:
            pairs = pair_battery_2d()
        else:
            pts = A.sample_points(random.Random(cfg.seed), 6)
            pairs = [(f"sample-{i}-{j}", pts[i], pts[j])
                     for i in range(len(pts)) for j in range(i + 1, len(pts))][:10]
    for name, x, y in pairs:
        ca = classify_pair(A, x, y, cone, cfg)
        cb = classify_pair(B, h_fwd(x), h_fwd(y), cone, cfg)
        cases.append(make_case(
            "conjugacy.pair-classes",
            "a conjugacy carries k-proximal, k-asymptotic and k-Li-Yorke pairs to pairs of the same kind",
            name, hyp,
            {"same-verdicts": _agreement(ca.same_exact_verdicts(cb),
                                         {"A": _pair_summary(ca), "B": _pair_summary(cb)})}))
    for label, check in (("sensitivity", sensitivity_check),
                         ("li-yorke-sensitivity", li_yorke_sensitivity_check)):
        va, vb = check(A, cone, cfg), check(B, cone, cfg)
        cases.append(make_case(
            f"conjugacy.{label}", f"{label} is invariant under conjugacy", "system level", hyp,
            {"same-verdict": _agreement(va.agrees_with(vb), {"A": va.outcome.value,
                                                             "B": vb.outcome.value})}))
    pts = A.sample_points(random.Random(cfg.seed), min(cfg.sample_count, 5))
    same = []
    for x in pts:
        va = equicontinuity_point_check(A, x, cfg)
        vb = equicontinuity_point_check(B, h_fwd(x), cfg)
        same.append(va.agrees_with(vb))
    cases.append(make_case("conjugacy.equicontinuity",
                           "equicontinuity points correspond under a uniform conjugacy",
                           f"{len(pts)} sampled points", hyp,
                           {"same-verdicts": _agreement(all(same))}))
    return cases


# -- products ------------------------------------------------------------------

def _same_pairclass(a: PairClass, b: PairClass) -> bool:
    def key(pc: PairClass):
        return ([(v.outcome, v.exact) for v in pc.verdicts()], pc.liminf, pc.limsup)
    return key(a) == key(b)


def product_suite(A: System, B: System, k: ConeIndex | int,
                  cfg: AnalysisConfig | None = None) -> list[TheoremCase]:
    from .systems import make_product

    cfg = cfg or DEFAULT_CONFIG
    cone = as_cone(k, A.d)
    P = make_product(A, B)
    inst = f"{A.kind} x {B.kind}"
    cases = []
    sa = sensitivity_check(A, cone, cfg)
    sp = sensitivity_check(P, cone, cfg)
    cases.append(make_case("product.sensitivity",
                           "a product with a k-sensitive factor is k-sensitive (sup metric)",
                           inst, {"factor-sensitive": sa}, {"product-sensitive": sp},
                           details={"delta": cfg.delta, "rule": sp.rule}))
    la = li_yorke_sensitivity_check(A, cone, cfg)
    lp = li_yorke_sensitivity_check(P, cone, cfg)
    cases.append(make_case("product.li-yorke-sensitivity",
                           "a product with a k-Li-Yorke sensitive factor is k-Li-Yorke sensitive",
                           inst, {"factor-lys": la}, {"product-lys": lp}))
    iso = Verdict.yes("isometry") if (A.is_isometric and B.is_isometric) else Verdict.no(
        "not-both-isometric", {"A": A.is_isometric, "B": B.is_isometric})
    cases.append(make_case("product.isometry",
                           "a product of isometric actions is isometric, hence never k-sensitive",
                           inst, {"both-isometric": iso},
                           {"product-not-sensitive": _negate(sp)}))
    fixed = B.sample_points(random.Random(cfg.seed), 1)[0]
    if A.is_shift_structured and A.d == 2:
        pairs = pair_battery_2d()
    else:
        pts = A.sample_points(random.Random(cfg.seed), 4)
        pairs = [(f"sample-{i}-{j}", pts[i], pts[j]) for i in range(4) for j in range(i + 1, 4)]
    for name, x1, x2 in pairs:
        ca = classify_pair(A, x1, x2, cone, cfg)
        cp = classify_pair(P, (x1, fixed), (x2, fixed), cone, cfg)
        cases.append(make_case("product.embedding",
                               "pairs sharing the second coordinate classify as in the first factor",
                               name, {}, {"identical": _agreement(_same_pairclass(ca, cp),
                                                                  {"A": _pair_summary(ca),
                                                                   "P": _pair_summary(cp)})}))
    return cases


# -- induced actions -----------------------------------------------------------

def _cone_unit_hypothesis(h, cone: ConeIndex, bound: int) -> Verdict:
    unit = solve_cone_unit(h, cone, bound)
    if unit.found:
        return Verdict.yes("cone-unit-search", {"m": unit.m, "bound": bound})
    return Verdict.unknown(bound, f"no m with r(m)=1 in bound {bound}")


def _aggregate(theorem: str, statement: str, instance: str, hyp: dict,
               rows: list[tuple[str, dict, dict]]) -> TheoremCase:
    sub = [(name, decide(dict(hyp, **h), c)) for name, h, c in rows]
    statuses = [s for _, s in sub]
    if REFUTED in statuses:
        status = REFUTED
    elif INCONCLUSIVE in statuses or not statuses:
        status = INCONCLUSIVE
    elif CONFIRMED in statuses:
        # vacuous rows are instances the theorem says nothing about
        status = CONFIRMED
    else:
        status = VACUOUS
    return TheoremCase(theorem, statement, instance, hyp, {}, status,
                       details=[{"pair": n, "status": s} for n, s in sub])


def induced_suite(base: str, h: Sequence[int], k: ConeIndex | int,
                  cfg: AnalysisConfig | None = None, *, alpha: float = GOLDEN) -> list[TheoremCase]:
    cfg = cfg or DEFAULT_CONFIG
    h = tuple(h)
    cone = as_cone(k, len(h))
    inst = f"base={base}, h={h}, k={cone.k}"
    unit = _cone_unit_hypothesis(h, cone, cfg.unit_bound)
    hyp = {"cone-unit": unit}
    cases = [make_case("induced.cone-unit", "search for m in the cone with r(m) = 1", inst,
                       {}, {"found": unit},
                       note=None if unit.is_yes else unit.note)]
    if base == "rotation":
        T = make_rotation_induced(alpha, h)
        f = T.base
        pts = f.sample_points(random.Random(cfg.seed), cfg.sample_count)
        base_eq = all(equicontinuity_point_check(f, x, cfg).exact_yes for x in pts)
        ind_eq = [equicontinuity_point_check(T, x, cfg) for x in pts]
        cases.append(make_case(
            "induced.equicontinuity",
            "an equicontinuous base map induces an equicontinuous Z^d action", inst,
            {"base-equicontinuous": _truth(base_eq, "isometry")},
            {"induced-equicontinuous": _truth(all(v.exact_yes for v in ind_eq), "isometry")}))
        return cases
    if base != "shift":
        raise ValueError(f"unknown induced base {base!r}")

    T = make_induced_shift(h)
    f = make_shift(1, 2)
    f_cone = ConeIndex(1, 1)
    f_sens = sensitivity_check(f, f_cone, cfg)
    f_trans = transitivity_check(f, f_cone, cfg)
    f_lys = li_yorke_sensitivity_check(f, f_cone, cfg)
    f_dense = periodic_density_check(f, f_cone, cfg)

    cases.append(make_case("induced.sensitivity",
                           "a sensitive base map induces a k-sensitive action", inst,
                           dict(hyp, **{"base-sensitive": f_sens}),
                           {"induced-sensitive": sensitivity_check(T, cone, cfg)}))
    x = period_two_config()
    base_periodic = f.act((2,), x) == x
    pp = periodic_point_check(T, x, cone, cfg)
    cases.append(make_case("induced.periodic-point",
                           "a periodic point of the base map is k-periodic for the induced action",
                           f"{inst}, period-2 configuration",
                           dict(hyp, **{"base-periodic": _truth(base_periodic, "f^2 x = x")}),
                           {"k-periodic": pp}, details={"witness": pp.witness}))
    cases.append(make_case("induced.transitivity",
                           "a transitive base map induces a k-transitive action", inst,
                           dict(hyp, **{"base-transitive": f_trans}),
                           {"induced-transitive": transitivity_check(T, cone, cfg)}))
    cases.append(make_case("induced.li-yorke-sensitivity",
                           "Li-Yorke sensitivity of the base map transfers to the induced action",
                           inst, dict(hyp, **{"base-lys": f_lys}),
                           {"induced-lys": li_yorke_sensitivity_check(T, cone, cfg)}))
    cases.append(make_case("induced.devaney",
                           "Devaney chaos of the base map transfers to k-type Devaney chaos",
                           inst, dict(hyp, **{"base-sensitive": f_sens, "base-transitive": f_trans,
                                              "base-periodic-dense": f_dense}),
                           {"sensitive": sensitivity_check(T, cone, cfg),
                            "transitive": transitivity_check(T, cone, cfg),
                            "periodic-dense": periodic_density_check(T, cone, cfg)}))

    delta = cfg.delta
    ccfg = cfg.with_eps(delta)
    prox_rows, nonasym_rows, ly_rows, asym_rows = [], [], [], []
    for name, a, b in pairs_1d():
        ref = classical_pair_classify(a, b, ccfg.eps_grid)
        pc = classify_pair(T, a, b, cone, ccfg)
        prox_rows.append((name, {"base-proximal": _truth(ref.proximal, "classical-reference")},
                          {"k-proximal": pc.proximal}))
        not_asym = None if ref.asymptotic_at[delta] is None else not ref.asymptotic_at[delta]
        na = pc.asymptotic_at[delta]
        nonasym_rows.append((name, {"base-not-asym-delta": _truth(not_asym, "classical-reference")},
                             {"not-k-asym-delta": _negate(na)}))
        ly_rows.append((name, {"base-li-yorke": _truth(ref.li_yorke, "classical-reference")},
                        {"k-li-yorke": pc.li_yorke}))
        asym_rows.append((name, {"k-asymptotic": pc.asymptotic},
                          {"base-asymptotic": _truth(ref.asymptotic, "classical-reference")}))
    cases.append(_aggregate("induced.proximal-pairs",
                            "proximal pairs of the base map are k-proximal for the induced action",
                            inst, hyp, prox_rows))
    cases.append(_aggregate("induced.non-asymptotic-pairs",
                            "a pair that is not delta-asymptotic for the base map is not k-delta-asymptotic",
                            inst, hyp, nonasym_rows))
    cases.append(_aggregate("induced.li-yorke-pairs",
                            "Li-Yorke pairs of the base map are k-Li-Yorke for the induced action",
                            inst, hyp, ly_rows))
    cases.append(_aggregate("induced.asymptotic-pairs",
                            "k-asymptotic pairs of the induced action are asymptotic for the base map",
                            inst, hyp, asym_rows))
    return cases


def _negate(v: Verdict) -> Verdict:
    if v.is_unknown:
        return v
    flipped = Verdict.no if v.is_yes else Verdict.yes
    return flipped(v.rule or "negation", v.witness, exact=v.exact, window=v.window)


# -- dichotomy -----------------------------------------------------------------

def _finite_eq_vs_gl(sys: FiniteSystem, name: str, cfg: AnalysisConfig) -> TheoremCase:
    res = sys.space.resolution
    top = int(-(-1 // res)) + 1
    eq = {x for x in range(sys.space.size) if equicontinuity_point_check(sys, x, cfg).exact_yes}
    gl = {x for x in range(sys.space.size)
          if all(gl_membership(sys, x, l, cfg).exact_yes for l in range(1, top + 1))}
    return make_case("dichotomy.gl-intersection",
                     "equicontinuity points are exactly the points lying in every G_l",
                     name, {}, {"equal": _agreement(eq == gl, {"eq": sorted(eq), "gl": sorted(gl),
                                                               "l_max": top})})


def _limit_sets(sys: FiniteSystem, name: str) -> TheoremCase:
    mismatches = []
    for k in ConeIndex.all(sys.d):
        for x in range(sys.space.size):
            if limit_set_finite(sys, x, k) != prolongation_set_finite(sys, x, k):
                mismatches.append((k.k, x))
    return make_case("dichotomy.limit-sets",
                     "at equicontinuity points the k-limit set equals the k-prolongation set",
                     name, {}, {"equal": _agreement(not mismatches, {"mismatches": mismatches})})


def dichotomy_suite(cfg: AnalysisConfig | None = None, k: int = 1) -> list[TheoremCase]:
    cfg = cfg or DEFAULT_CONFIG
    cases = []
    for name, sys in standard_battery():
        rep = dichotomy_report(sys, k, cfg)
        if rep.violations:
            concl = Verdict.no("dichotomy-exclusion", {"violations": list(rep.violations)})
        elif rep.classification == "undetermined":
            concl = Verdict.unknown(cfg.window, "neither side decided")
        else:
            concl = Verdict.yes("dichotomy-exclusion", {"classification": rep.classification})
        cases.append(make_case("dichotomy.exclusion",
                               "a system cannot be k-sensitive and have an equicontinuity point",
                               name, {}, {"one-side-only": concl},
                               details={"classification": rep.classification,
                                        "transitive": rep.transitivity.outcome.value,
                                        "equicontinuity_points": rep.equicontinuity_points}))
    for name, sys in (("three-cycle", three_cycle_system()),
                      ("swap-identity", swap_identity_system())):
        cases.append(_finite_eq_vs_gl(sys, name, cfg))
        cases.append(_limit_sets(sys, name))
    return cases


def untestable_cases() -> list[TheoremCase]:
    return [TheoremCase(
        "prox-cell.unique-minimal-fixed-point",
        "with a fixed point forming the unique minimal set, proximal cells are dense",
        "no finite instance", {}, {}, INCONCLUSIVE,
        note="hypothesis not constructible at desk scale; kept visible for coverage")]


def all_suites(cfg: AnalysisConfig | None = None) -> list[TheoremCase]:
    from .systems import SymbolRelabel, make_conjugate

    cfg = cfg or DEFAULT_CONFIG
    S = make_shift(2, 2)
    swap = SymbolRelabel((1, 0))
    C = make_conjugate(S, swap, swap.inverse(), samples=cfg.conjugacy_samples, seed=cfg.seed)
    R = make_rotation_induced(GOLDEN, (1, 0))
    cases = []
    cases += conjugacy_suite(S, C, swap, swap.inverse(), 1, cfg)
    cases += product_suite(S, R, 1, cfg)
    cases += product_suite(R, make_rotation_induced(GOLDEN / 2, (0, 1)), 1, cfg)
    cases += induced_suite("shift", (2, -1), 1, cfg)
    cases += induced_suite("shift", (1, 1), 1, cfg)
    cases += induced_suite("rotation", (1, 0), 1, cfg)
    cases += dichotomy_suite(cfg)
    cases += untestable_cases()
    return cases
