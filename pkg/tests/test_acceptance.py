"""Acceptance criteria 1-9. Each test prints one PASS/FAIL line."""

import itertools
import random
from fractions import Fraction
from pathlib import Path

import pytest

from kchaos import harness
from kchaos.analysis import (
    AnalysisConfig,
    classify_pair,
    dichotomy_report,
    distance_profile,
    equicontinuity_point_check,
    periodic_point_check,
    sensitivity_check,
)
from kchaos.batteries import (
    GOLDEN,
    canonical_shift_pairs,
    pair_battery_2d,
    pairs_1d,
    period_two_config,
    random_finite_system,
    standard_battery,
)
from kchaos.cli import main
from kchaos.lattice import ConeIndex, cone_greater, solve_cone_unit
from kchaos.oracle import brute_pair_classify_finite, brute_profile, classical_pair_classify
from kchaos.space import Dyadic
from kchaos.systems import (
    SymbolRelabel,
    make_conjugate,
    make_induced_shift,
    make_product,
    make_rotation_induced,
    make_shift,
)

BATTERY = Path(__file__).resolve().parents[1] / "configs" / "battery.json"
CFG = AnalysisConfig()


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def test_criterion_1_cone_order(report):
    mismatches = checked = 0
    for d in (1, 2, 3):
        for k in range(1, 2**d + 1):
            bits = format(k - 1, "b").zfill(d)[::-1]
            signs = [-1 if b == "1" else 1 for b in bits]
            cone = ConeIndex(k, d)
            for a in itertools.product(range(-3, 4), repeat=d):
                for b in itertools.product(range(-3, 4), repeat=d):
                    expect = all((x - y) * s > 0 for x, y, s in zip(a, b, signs))
                    mismatches += cone_greater(cone, a, b) != expect
                    checked += 1
    report(1, mismatches == 0, f"{checked} comparisons, {mismatches} mismatches")


def test_criterion_2_finite_oracle(report):
    rng = random.Random(20240601)
    mismatches = pairs = 0
    diagonal_ok = True
    for _ in range(100):
        sys = random_finite_system(rng)
        for k in range(1, 5):
            for x, y in itertools.product(range(sys.space.size), repeat=2):
                pc = classify_pair(sys, x, y, k)
                ref = brute_pair_classify_finite(sys, x, y, k)
                got = (pc.proximal.is_yes, pc.asymptotic.is_yes, pc.li_yorke.is_yes,
                       tuple(pc.asymptotic_at[e].is_yes for e in CFG.eps_grid),
                       pc.liminf, pc.limsup, pc.exact)
                want = (ref.proximal, ref.asymptotic, ref.li_yorke,
                        tuple(ref.asymptotic_at[e] for e in CFG.eps_grid),
                        ref.liminf, ref.limsup, True)
                mismatches += got != want
                diagonal_ok &= pc.proximal.is_yes == (x == y)
                pairs += 1
    report(2, mismatches == 0 and diagonal_ok,
           f"100 systems, {pairs} classifications, {mismatches} mismatches, "
           f"prox = diagonal: {diagonal_ok}")


def test_criterion_3_difference_sets(report):
    S = make_shift(2)
    pairs = canonical_shift_pairs()
    bad = []
    for name, (x, y) in pairs.items():
        for k in range(1, 5):
            if distance_profile(S, x, y, k, 12) != brute_profile(S, x, y, k, 12):
                bad.append((name, k))
    fin = classify_pair(S, *pairs["finite"], 1)
    per = classify_pair(S, *pairs["periodic"], 1)
    bl = classify_pair(S, *pairs["blockline"], 1)
    classes = (fin.asymptotic.exact_yes,
               per.proximal.exact_no and per.liminf == Dyadic(-1),
               bl.li_yorke.exact_yes)
    report(3, not bad and all(classes),
           f"profile mismatches {bad}; asymptotic/distal(2^-1)/Li-Yorke = {classes}")


def test_criterion_4_dichotomy(report):
    S = make_shift(2)
    sens = sensitivity_check(S, 1, CFG)
    witnessed = {row["sample"] for row in sens.witness["witnesses"]}
    shift_ok = (sens.exact_yes and sens.witness["delta"] == Fraction(1, 2)
                and witnessed == set(range(20)))
    R = make_rotation_induced(GOLDEN, (1, 0))
    samples = R.sample_points(random.Random(CFG.seed), 20)
    eq = [equicontinuity_point_check(R, x, CFG) for x in samples]
    rot_ok = (all(v.exact_yes and v.rule == "isometry" for v in eq)
              and sensitivity_check(R, 1, CFG).exact_no)
    violations = 0
    for _, sys in standard_battery():
        rep = dichotomy_report(sys, 1, CFG)
        both = rep.sensitivity.exact_yes and any(v.exact_yes for v in rep.equicontinuity)
        violations += len(rep.violations) + both
    report(4, shift_ok and rot_ok and violations == 0,
           f"shift witnesses at {len(witnessed)}/20 samples; rotation equicontinuous "
           f"{sum(v.exact_yes for v in eq)}/20 and not sensitive: {rot_ok}; "
           f"dichotomy violations {violations}")


def test_criterion_5_conjugacy(report):
    S = make_shift(2)
    swap = SymbolRelabel((1, 0))
    C = make_conjugate(S, swap, swap.inverse(), samples=50)
    ident = harness.generator_identity(S, C, swap, CFG.replace(conjugacy_samples=50))
    differ = []
    for name, x, y in pair_battery_2d():
        a = classify_pair(S, x, y, 1)
        b = classify_pair(C, swap(x), swap(y), 1)
        key = lambda pc: [(v.outcome, v.exact) for v in pc.verdicts()]
        if key(a) != key(b) or not a.exact:
            differ.append(name)
    ok = ident["samples"] == 50 and ident["checks"] == 100 and not differ
    report(5, ok, f"generator identity on {ident['samples']} configs; "
                  f"{len(pair_battery_2d())} pairs, differing: {differ}")


def test_criterion_6_product(report):
    S = make_shift(2)
    R = make_rotation_induced(GOLDEN, (1, 0))
    P = make_product(S, R)
    sens = sensitivity_check(P, 1, CFG)
    sens_ok = (sens.exact_yes and sens.rule == "product-transport"
               and sens.witness["delta"] == Fraction(1, 2))
    differ = []
    for name, x, y in pair_battery_2d():
        a = classify_pair(S, x, y, 1)
        b = classify_pair(P, (x, 0.375), (y, 0.375), 1)
        if ([(v.outcome, v.exact) for v in a.verdicts()] !=
                [(v.outcome, v.exact) for v in b.verdicts()]):
            differ.append(name)
    report(6, sens_ok and not differ,
           f"product sensitivity {sens.outcome.value} via {sens.rule}; embedded pairs differing: {differ}")


def test_criterion_7_induced(report):
    unit = solve_cone_unit((2, -1), ConeIndex(1, 2), 10)
    cases = {c.theorem: c for c in harness.induced_suite("shift", (2, -1), 1, CFG)}
    needed = ["induced.sensitivity", "induced.periodic-point", "induced.asymptotic-pairs",
              "induced.li-yorke-pairs", "induced.transitivity"]
    confirmed = [t for t in needed if cases[t].status == harness.CONFIRMED]
    per = periodic_point_check(make_induced_shift((2, -1)), period_two_config(), 1, CFG)
    absent = harness.induced_suite("shift", (1, 1), 1, CFG)
    no_unit = not solve_cone_unit((1, 1), ConeIndex(1, 2), 10).found
    dependents = [c.status for c in absent[1:]]
    ok = (unit.m == (1, 1) and len(confirmed) == len(needed) and per.witness["n"] == (2, 2)
          and no_unit and absent[0].status == harness.INCONCLUSIVE
          and set(dependents) == {harness.INCONCLUSIVE})
    report(7, ok, f"unit {unit.m}; confirmed {len(confirmed)}/{len(needed)}; "
                  f"period witness {per.witness['n']}; h=(1,1) statuses {sorted(set(dependents))}")


def test_criterion_8_d1_reduction(report):
    T = make_induced_shift((1,))
    differ = []
    for name, x, y in pairs_1d():
        pc = classify_pair(T, x, y, 1)
        ref = classical_pair_classify(x, y, CFG.eps_grid)
        got = (pc.proximal.is_yes, pc.asymptotic.is_yes, pc.li_yorke.is_yes, pc.exact,
               tuple(pc.asymptotic_at[e].is_yes for e in CFG.eps_grid))
        want = (ref.proximal, ref.asymptotic, ref.li_yorke, True,
                tuple(ref.asymptotic_at[e] for e in CFG.eps_grid))
        if got != want:
            differ.append(name)
    report(8, not differ, f"{len(pairs_1d())} canonical pairs, differing: {differ}")


def test_criterion_9_determinism(report, tmp_path):
    a, b = tmp_path / "t1.json", tmp_path / "t4.json"
    codes = (main(["run", str(BATTERY), "--threads", "1", "--out", str(a)]),
             main(["run", str(BATTERY), "--threads", "4", "--out", str(b)]))
    same = a.read_bytes() == b.read_bytes()
    report(9, codes == (0, 0) and same,
           f"exit codes {codes}; reports byte-identical: {same} ({len(a.read_bytes())} bytes)")
