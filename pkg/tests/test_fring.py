import random

import pytest
from hypothesis import given, strategies as st

from f1forge.fincat import PartialBijection, compose, direct_sum, transpose
from f1forge.fring import (RigMatrix, ShapeMismatch, check_fring_commutative, check_total_commutative,
                           delta, from_partial_bijection, identity, mat_compose, mat_direct_sum,
                           mat_transpose, matrix, random_matrix, scalar_add_via_delta, underlying_genring)
from f1forge.genring import FiberVec, GRing
from f1forge.rigs import BOOL_MAX, NAT, get_rig, zmod


def test_compose_examples():
    d = delta(NAT)
    assert mat_compose(d, mat_transpose(d)).data == ((2,),)
    a = matrix(BOOL_MAX, [[1, 1], [0, 1]])
    assert mat_compose(a, matrix(BOOL_MAX, [[1], [1]])).data == ((1,), (1,))
    assert mat_compose(a, identity(BOOL_MAX, 2)) == a


def test_shape_checked():
    with pytest.raises(ShapeMismatch):
        mat_compose(identity(NAT, 2), identity(NAT, 3))


def test_direct_sum_examples():
    one = matrix(NAT, [[1]])
    assert mat_direct_sum(one, one) == identity(NAT, 2)
    d = delta(NAT)
    assert mat_direct_sum(d, d).data == ((1, 1, 0, 0), (0, 0, 1, 1))


def test_delta_transpose_square():
    d = delta(NAT)
    assert mat_transpose(d).data == ((1,), (1,))
    dd = mat_direct_sum(d, d)
    # columns of (d + d) regrouped as (0, 2, 1, 3)
    perm = from_partial_bijection(NAT, PartialBijection(4, 4, ((0, 0), (1, 2), (2, 1), (3, 3))))
    assert mat_compose(mat_transpose(d), d).data == ((1, 1), (1, 1))
    assert mat_compose(mat_compose(dd, perm), mat_transpose(dd)) == matrix(NAT, [[1, 1], [1, 1]])


@pytest.mark.parametrize("name", ["nat", "bool-max", "zmod:6", "int"])
def test_commutativity_suites(name):
    r = get_rig(name)
    assert check_fring_commutative(r, 500, 1).passed
    assert check_total_commutative(r, 500, 1).passed


def test_scalar_add_via_delta():
    assert scalar_add_via_delta(NAT, 2, 3) == 5
    assert scalar_add_via_delta(BOOL_MAX, 1, 1) == 1
    assert scalar_add_via_delta(zmod(6), 4, 0) == 4


def test_underlying_genring_examples():
    U = underlying_genring(NAT)
    fv = FiberVec((0, 0, 1), 2, (U._row((1, 4)), U._row((5,))))
    assert U.mul(U._row((2, 3)), fv).data == ((2, 8, 15),)
    assert U.contract(U._row((1, 2, 3)), fv).data == ((9, 15),)
    a = U._row((7, 1))
    assert U.mul(U.one(), FiberVec((0, 0), 1, (a,))) == a


@given(st.integers(0, 2**32), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_transpose_reverses_composition(seed, p, q, r):
    rng = random.Random(seed)
    a, b = random_matrix(NAT, rng, p, q), random_matrix(NAT, rng, q, r)
    assert mat_transpose(mat_compose(a, b)) == mat_compose(mat_transpose(b), mat_transpose(a))
    assert mat_transpose(mat_direct_sum(a, b)) == mat_direct_sum(mat_transpose(a), mat_transpose(b))


@given(st.integers(0, 2**32))
def test_embedding_of_partial_bijections_is_functorial(seed):
    rng = random.Random(seed)
    from f1forge.fincat import random_partial_bijection
    x, y, z = (rng.randint(0, 3) for _ in range(3))
    f, g = random_partial_bijection(rng, x, y), random_partial_bijection(rng, y, z)
    emb = lambda p: from_partial_bijection(NAT, p)  # noqa: E731
    assert emb(compose(g, f)) == mat_compose(emb(g), emb(f))
    assert emb(transpose(f)) == mat_transpose(emb(f))
    assert emb(direct_sum(f, g)) == mat_direct_sum(emb(f), emb(g))


def test_json_round_trip():
    m = random_matrix(get_rig("int"), random.Random(5), 2, 3)
    assert RigMatrix.from_dict(m.to_dict()) == m


@given(st.integers(0, 2**32))
def test_underlying_matches_G(seed):
    rng = random.Random(seed)
    G, U = GRing(NAT), underlying_genring(NAT)
    nx, ny = rng.randint(1, 4), rng.randint(1, 4)
    f = tuple(rng.randrange(ny) for _ in range(nx))
    fv = G.sample_fiber(rng, f, ny)
    fu = FiberVec(f, ny, tuple(U._row(p) for p in fv.parts))
    a, b = G.sample(rng, ny), G.sample(rng, nx)
    assert U.mul(U._row(a), fu).data[0] == G.mul(a, fv)
    assert U.contract(U._row(b), fu).data[0] == G.contract(b, fv)
