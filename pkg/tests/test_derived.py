"""Worked values checked by hand, and outputs of the brute-force oracle
frozen in data/frozen.json (regenerate with data/make_frozen.py)."""

import json
from pathlib import Path

import numpy as np
import pytest

from kchaos.analysis import (
    classify_pair,
    distance_profile,
    equicontinuity_point_check,
    gl_membership,
    limit_set_finite,
    prolongation_set_finite,
    scrambled_set_check,
)
from kchaos.batteries import (
    GOLDEN,
    block_config,
    canonical_shift_pairs,
    defect,
    pairs_1d,
    swap_identity_system,
    three_cycle_system,
    zeros,
)
from kchaos.lattice import ConeIndex, cone_greater, cone_shell, r_eval, scale_cone_unit, solve_cone_unit
from kchaos.space import (
    BlockFamily,
    BlockLineDiff,
    Dyadic,
    FiniteDiff,
    FiniteSpace,
    PeriodicDiff,
    SymbolicConfig,
    config_get,
    diffset_profile_value,
    difference_set,
    symbolic_distance,
)
from kchaos.systems import make_finite, make_induced_shift, make_rotation_induced, make_shift

FROZEN = json.loads((Path(__file__).parent / "data" / "frozen.json").read_text())


# -- hand-worked values --------------------------------------------------------

def test_lattice_values():
    assert cone_greater(ConeIndex(2, 2), (-2, 3), (0, 0))
    assert cone_shell(ConeIndex(1, 2), 1) == [(1, 1)]
    assert cone_shell(ConeIndex(1, 2), 2) == [(1, 1), (1, 2), (2, 1), (2, 2)]
    assert cone_shell(ConeIndex(2, 2), 1) == [(-1, 1)]
    assert r_eval((2, -1), (1, 1)) == 1
    assert scale_cone_unit((-1, 2), 4, (1, 1)) == (-4, 8)


def test_space_values():
    x = zeros(2)
    assert config_get(x.with_block(BlockFamily((1, 1), 4, 1)), (4, 4)) == 1
    assert symbolic_distance(x, defect(2, (3, 2))) == Dyadic(-3)
    assert difference_set(x, defect(2)) == FiniteDiff(frozenset({(0, 0)}))
    per = SymbolicConfig(2, np.array([[1, 0], [0, 0]]))
    assert difference_set(x, per) == PeriodicDiff((2, 2), frozenset({(0, 0)}))
    assert difference_set(x, block_config((1, 1), 4)) == BlockLineDiff((1, 1), 4, (0, 0))
    assert diffset_profile_value(FiniteDiff(frozenset({(0, 0)})), (3, 2)) == Dyadic(-3)
    assert diffset_profile_value(difference_set(x, per), (1, 1)) == Dyadic(-1)


def test_system_values():
    sys = three_cycle_system()
    assert sys.act((1, 1), 0) == 2
    with pytest.raises(ValueError):
        make_finite(FiniteSpace.discrete(3), [(1, 0, 2), (0, 2, 1)])
    S = make_shift(2)
    assert S.act((1, 0), defect(2)) == defect(2, (-1, 0))
    R = make_rotation_induced(GOLDEN, (1, 0))
    assert R.act((3, 5), 0.0) == pytest.approx((3 * GOLDEN) % 1.0)
    T = make_induced_shift((2, -1))
    x = defect(1, (4,))
    assert T.act((1, 1), x) == x.shifted((1,))
    assert T.act((1, 0), x) == x.shifted((2,))


def test_profile_values():
    prof = distance_profile(make_shift(2), zeros(2), defect(2), 1, 2)
    assert prof == {(1, 1): Dyadic(-1), (1, 2): Dyadic(-2), (2, 1): Dyadic(-2),
                    (2, 2): Dyadic(-2)}
    sys = three_cycle_system()
    assert all(v > 0 for v in distance_profile(sys, 0, 1, 1, 4).values())


def test_pair_values():
    S = make_shift(2)
    pairs = canonical_shift_pairs()
    fin = classify_pair(S, *pairs["finite"], 1)
    assert (fin.proximal.is_yes, fin.asymptotic.is_yes, fin.li_yorke.is_yes) == (True, True, False)
    per = classify_pair(S, *pairs["periodic"], 1)
    assert per.proximal.is_no and per.liminf == Dyadic(-1)
    assert classify_pair(S, *pairs["blockline"], 1).li_yorke.is_yes
    assert scrambled_set_check(S, [zeros(2), block_config((1, 1), 4)], 1).is_yes
    assert scrambled_set_check(S, [zeros(2), block_config((1, 1), 5)], 1).is_yes
    assert scrambled_set_check(S, [zeros(2), defect(2)], 1).is_no
    # two block lines with different bases: no exact rule for the union
    both = scrambled_set_check(S, [zeros(2), block_config((1, 1), 4), block_config((1, 1), 5)], 1)
    assert not both.exact_no


def test_topology_values():
    S = make_shift(2)
    assert equicontinuity_point_check(S, zeros(2)).exact_no
    assert equicontinuity_point_check(three_cycle_system(), 0).exact_yes
    assert gl_membership(S, zeros(2), 2).exact_no
    assert gl_membership(three_cycle_system(), 0, 2).exact_yes


def test_limit_set_values():
    assert limit_set_finite(three_cycle_system(), 0, 1) == frozenset({0, 1, 2})
    assert limit_set_finite(swap_identity_system(), 0, 1) == frozenset({0, 1})
    assert prolongation_set_finite(three_cycle_system(), 0, 1) == frozenset({0, 1, 2})


# -- frozen oracle outputs -----------------------------------------------------

@pytest.mark.parametrize("case", FROZEN["cone_unit"], ids=lambda c: f"{c['h']}-k{c['k']}")
def test_frozen_cone_units(case):
    unit = solve_cone_unit(case["h"], ConeIndex(case["k"], len(case["h"])), case["bound"])
    assert (list(unit.m) if unit.found else None) == case["m"]


@pytest.mark.parametrize("key", sorted(FROZEN["profiles"]))
def test_frozen_profiles(key):
    name, k = key.split("/")
    x, y = canonical_shift_pairs()[name]
    prof = distance_profile(make_shift(2), x, y, int(k), 6)
    assert [[list(n), v.exp] for n, v in prof.items()] == FROZEN["profiles"][key]


@pytest.mark.parametrize("name,x,y", pairs_1d(), ids=[p[0] for p in pairs_1d()])
def test_frozen_classical(name, x, y):
    want = FROZEN["classical"][name]
    pc = classify_pair(make_induced_shift((1,)), x, y, 1)
    assert pc.proximal.is_yes == want["proximal"]
    assert pc.asymptotic.is_yes == want["asymptotic"]
    assert pc.liminf.exp == want["liminf"] and pc.limsup.exp == want["limsup"]


def test_frozen_limit_sets():
    systems = {"three-cycle": three_cycle_system(), "swap-identity": swap_identity_system()}
    for case in FROZEN["limit_sets"]:
        sys = systems[case["system"]]
        assert sorted(limit_set_finite(sys, case["x"], case["k"])) == case["L"]
