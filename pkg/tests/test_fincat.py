import itertools

import pytest
from hypothesis import given, strategies as st

from f1forge.fincat import (DimensionMismatch, PartialBijection, all_partial_bijections,
                            as_boolean_matrix, compose, direct_sum, kernel_cokernel_commute,
                            transpose)
from f1forge.fring import mat_compose


def pb(source, target, pairs):
    return PartialBijection(source, target, tuple(pairs))


@st.composite
def partial_bijections(draw, source=None, target=None):
    source = draw(st.integers(0, 4)) if source is None else source
    target = draw(st.integers(0, 4)) if target is None else target
    k = draw(st.integers(0, min(source, target)))
    dom = draw(st.permutations(range(source)))[:k]
    img = draw(st.permutations(range(target)))[:k]
    return pb(source, target, zip(dom, img))


def small(n_max=3):
    return [phi for s in range(n_max + 1) for t in range(n_max + 1) for phi in all_partial_bijections(s, t)]


def test_compose_examples():
    phi = pb(2, 2, [(0, 1)])
    assert compose(pb(2, 2, [(1, 0)]), phi) == pb(2, 2, [(0, 0)])
    assert compose(pb(2, 2, [(0, 0)]), phi) == pb(2, 2, [])


def test_compose_rejects_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(PartialBijection.identity(2), PartialBijection.identity(3))


def test_invalid_maps_rejected():
    with pytest.raises(ValueError):
        pb(2, 2, [(0, 1), (1, 1)])
    with pytest.raises(ValueError):
        pb(1, 1, [(0, 3)])


def test_transpose_examples():
    assert transpose(pb(2, 2, [(0, 1)])) == pb(2, 2, [(1, 0)])
    assert transpose(PartialBijection.identity(3)) == PartialBijection.identity(3)


def test_direct_sum_examples():
    one = pb(1, 1, [(0, 0)])
    assert direct_sum(one, one) == PartialBijection.identity(2)
    phi = pb(2, 3, [(0, 2)])
    assert direct_sum(phi, PartialBijection.empty(0, 0)) == phi


def test_boolean_matrix_examples():
    assert as_boolean_matrix(PartialBijection.identity(2)).data == ((1, 0), (0, 1))
    assert as_boolean_matrix(pb(2, 2, [(0, 1)])).data == ((0, 0), (1, 0))


def test_exhaustive_category_laws():
    maps = {}
    for s, t in itertools.product(range(4), repeat=2):
        maps[(s, t)] = list(all_partial_bijections(s, t))
    for (x, y), fs in maps.items():
        for f in fs:
            assert compose(PartialBijection.identity(y), f) == f == compose(f, PartialBijection.identity(x))
            assert transpose(transpose(f)) == f
    for x, y, z in itertools.product(range(3), repeat=3):
        for f in maps[(x, y)]:
            for g in maps[(y, z)]:
                assert transpose(compose(g, f)) == compose(transpose(f), transpose(g))
                assert as_boolean_matrix(compose(g, f)) == mat_compose(as_boolean_matrix(g), as_boolean_matrix(f))


def test_associativity_exhaustive_small():
    for x, y, z, w in itertools.product(range(3), repeat=4):
        for f in all_partial_bijections(x, y):
            for g in all_partial_bijections(y, z):
                for h in all_partial_bijections(z, w):
                    assert compose(h, compose(g, f)) == compose(compose(h, g), f)


def test_boolean_matrix_is_faithful():
    seen = {}
    for phi in small(3):
        key = as_boolean_matrix(phi)
        assert seen.setdefault(key, phi) == phi


@given(partial_bijections(), partial_bijections())
def test_direct_sum_commutes_with_transpose(a, b):
    assert transpose(direct_sum(a, b)) == direct_sum(transpose(a), transpose(b))


@given(partial_bijections(), partial_bijections(), partial_bijections())
def test_direct_sum_associative(a, b, c):
    assert direct_sum(direct_sum(a, b), c) == direct_sum(a, direct_sum(b, c))


@given(partial_bijections())
def test_kernel_cokernel(phi):
    assert kernel_cokernel_commute(phi)


@given(partial_bijections())
def test_json_round_trip(phi):
    assert PartialBijection.from_dict(phi.to_dict()) == phi
