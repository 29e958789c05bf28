import pytest
from hypothesis import given, strategies as st

from kchaos.lattice import (
    ConeIndex,
    as_cone,
    cone_greater,
    cone_shell,
    form_gcd,
    r_eval,
    scale_cone_unit,
    solve_cone_unit,
    solve_form,
)
from kchaos.oracle import brute_cone_unit

dims = st.integers(1, 3)


@st.composite
def cone_and_vectors(draw):
    d = draw(dims)
    k = draw(st.integers(1, 2**d))
    vecs = st.tuples(*[st.integers(-6, 6)] * d)
    return ConeIndex(k, d), draw(vecs), draw(vecs), draw(vecs)


def test_k1_is_positive_orthant():
    assert ConeIndex(1, 2).signs == (1, 1)
    assert ConeIndex(2, 2).signs == (-1, 1)
    assert ConeIndex(5, 3).signs == (1, 1, -1)


@pytest.mark.parametrize("k,d", [(0, 2), (5, 2), (3, 1), (1, 0)])
def test_cone_index_range(k, d):
    with pytest.raises(ValueError):
        ConeIndex(k, d)


def test_cone_of_roundtrip():
    for d in (1, 2, 3):
        for cone in ConeIndex.all(d):
            v = tuple(s * 2 for s in cone.signs)
            assert ConeIndex.of(v) == cone
    with pytest.raises(ValueError):
        ConeIndex.of((1, 0))


def test_as_cone_dimension_check():
    assert as_cone(3, 2) == ConeIndex(3, 2)
    with pytest.raises(ValueError):
        as_cone(ConeIndex(1, 3), 2)


@given(cone_and_vectors())
def test_order_is_strict_and_transitive(data):
    k, a, b, c = data
    assert not cone_greater(k, a, a)
    if cone_greater(k, a, b):
        assert not cone_greater(k, b, a)
        if cone_greater(k, b, c):
            assert cone_greater(k, a, c)


@given(cone_and_vectors())
def test_order_is_translation_invariant(data):
    k, a, b, c = data
    shift = lambda v: tuple(x + y for x, y in zip(v, c))
    assert cone_greater(k, a, b) == cone_greater(k, shift(a), shift(b))
    assert cone_greater(k, a, b) == k.contains(tuple(x - y for x, y in zip(a, b)))


def test_cone_shell_example():
    assert cone_shell(ConeIndex(2, 2), 2) == [(-1, 1), (-2, 1), (-2, 2), (-1, 2)]


@given(dims.flatmap(lambda d: st.tuples(st.just(d), st.integers(1, 2**d), st.integers(1, 5))))
def test_cone_shell_contents(args):
    d, k, N = args
    cone = ConeIndex(k, d)
    shell = cone_shell(cone, N)
    assert len(shell) == N**d
    assert len(set(shell)) == len(shell)
    assert all(cone.contains(n) and max(map(abs, n)) <= N for n in shell)
    keys = [(max(map(abs, n)), n) for n in shell]
    assert keys == sorted(keys)


def test_unsigned_involution():
    cone = ConeIndex(3, 2)
    assert cone.to_unsigned((4, -5)) == (4, 5)
    assert cone.from_unsigned(cone.to_unsigned((7, -2))) == (7, -2)


def test_solve_cone_unit_examples():
    assert solve_cone_unit((2, -1), ConeIndex(1, 2), 10).m == (1, 1)
    assert not solve_cone_unit((1, 1), ConeIndex(1, 2), 10)
    assert solve_cone_unit((1, 1), ConeIndex(2, 2), 10).m == (-1, 2)
    assert solve_cone_unit((3,), ConeIndex(1, 1), 10).m is None
    assert solve_cone_unit((1,), ConeIndex(1, 1), 10).m == (1,)


@given(st.integers(1, 3).flatmap(
    lambda d: st.tuples(st.tuples(*[st.integers(-4, 4)] * d), st.integers(1, 2**d), st.integers(1, 4))))
def test_solve_cone_unit_matches_nested_loops(args):
    h, k, bound = args
    cone = ConeIndex(k, len(h))
    got = solve_cone_unit(h, cone, bound)
    assert got.m == brute_cone_unit(h, cone, bound)
    if got:
        assert r_eval(h, got.m) == 1 and cone.contains(got.m)


def test_scale_cone_unit():
    assert scale_cone_unit((1, 1), 3, (2, -1)) == (3, 3)
    with pytest.raises(ValueError):
        scale_cone_unit((1, 2), 2, (2, -1))
    with pytest.raises(ValueError):
        scale_cone_unit((1, 1), 0, (2, -1))


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4), st.integers(-20, 20))
def test_solve_form(h, target):
    n = solve_form(h, target)
    g = form_gcd(h)
    if (g == 0 and target == 0) or (g and target % g == 0):
        assert n is not None and r_eval(h, n) == target
    else:
        assert n is None


def test_r_eval_dimension_check():
    with pytest.raises(ValueError):
        r_eval((1, 2), (1,))
