import itertools

import pytest
from hypothesis import given, settings, strategies as st

from f1forge import spectra
from f1forge.genring import (FIELD_WITH_ONE_ELEMENT, GRing, ProductGenRing, check_homomorphism,
                             cyclic_monoid, make_FM, rig_hom_G, swap_involution)
from f1forge.rigs import INT, poly_quotient, product_rig, zmod

Z6 = GRing(zmod(6))


def scal(ideal):
    return sorted(a[0] for a in ideal)


def test_generate_examples():
    assert scal(spectra.ideal_generate(Z6, [(2,)])) == [0, 2, 4]
    assert scal(spectra.ideal_generate(Z6, [])) == [0]
    assert spectra.ideal_generate(FIELD_WITH_ONE_ELEMENT, []) == frozenset({None})
    assert spectra.ideal_generate(FIELD_WITH_ONE_ELEMENT, [(1, 0)]) == frozenset({None, (1, 0)})


def test_uncountable_carrier_rejected():
    with pytest.raises(spectra.CarrierTooLarge):
        spectra.ideal_generate(GRing(INT), [(2,)])
    with pytest.raises(spectra.CarrierTooLarge):
        spectra.spec_enumerate(GRing(zmod(12)), cap=5)


def test_prime_examples():
    assert spectra.is_prime_ideal(Z6, frozenset({(0,), (2,), (4,)}))
    assert not spectra.is_prime_ideal(Z6, frozenset({(0,)}))
    assert not spectra.is_prime_ideal(Z6, frozenset((a,) for a in range(6)))
    assert spectra.is_prime_ideal(FIELD_WITH_ONE_ELEMENT, frozenset({None}))


def test_spec_examples():
    res = spectra.spec_enumerate(Z6)
    assert sorted(scal(p) for p in res.primes) == [[0, 2, 4], [0, 3]]
    assert spectra.spec_enumerate(FIELD_WITH_ONE_ELEMENT).primes == [frozenset({None})]
    C2 = make_FM(cyclic_monoid(2))
    assert spectra.spec_enumerate(C2).primes == [frozenset({None})]


@pytest.mark.parametrize("r", spectra.finite_test_rings(12), ids=lambda r: r.name)
def test_ideals_and_primes_match_brute_force(r):
    res = spectra.spec_enumerate(GRing(r))
    assert sorted(scal(i) for i in res.ideals) == sorted(sorted(i) for i in spectra.ordinary_ideals(r))
    assert sorted(scal(p) for p in res.primes) == sorted(sorted(p) for p in spectra.ordinary_primes(r))
    assert all(res.checks.values()), res.checks


@pytest.mark.parametrize("r", [zmod(2), zmod(3), zmod(4), zmod(6), poly_quotient(2, (0, 0))],
                         ids=lambda r: r.name)
def test_closure_stable_beyond_bound(r):
    A = GRing(r)
    for ideal in spectra.enumerate_ideals(A):
        assert spectra.closure_is_stable(A, ideal, 3)
        if len(r.elements) <= 3:
            assert spectra.closure_is_stable(A, ideal, 4)


def test_localization_examples():
    loc = spectra.localize(Z6, [(1,), (3,)])
    assert len(list(loc.ring.elements(1))) == 2 and loc.units_ok
    assert check_homomorphism(loc.phi, Z6, loc.ring, 200).passed
    same = spectra.localize(Z6, [(1,)])
    assert len(list(same.ring.elements(1))) == 6
    half = spectra.localize(GRing(INT), invert=[2])
    assert half.ring.name == "G(int[1/2])" and half.units_ok
    assert check_homomorphism(half.phi, GRing(INT), half.ring, 200).passed


def test_localization_needs_multiplicative_set():
    with pytest.raises(spectra.NotMultiplicative):
        spectra.localize(Z6, [(1,), (2,), (3,)])


@pytest.mark.parametrize("r", [zmod(6), zmod(12), zmod(8), product_rig(zmod(2), zmod(3))],
                         ids=lambda r: r.name)
def test_stalks_are_local(r):
    A = GRing(r)
    for p in spectra.spec_enumerate(A).symmetric_primes:
        assert spectra.stalk_is_local(A, p)


def test_kernel_of_reduction():
    Z3 = GRing(zmod(3))
    kq = spectra.ker_and_quotient(rig_hom_G(lambda v: v % 3, Z6, Z3), Z6, Z3)
    assert all((a[0] - b[0]) % 6 in (0, 3) for a, b in kq.pairs)
    assert len(kq.pairs) == 12
    assert len(list(kq.quotient.elements(1))) == 3
    assert all(kq.checks.values()), kq.checks


def test_kernel_of_identity():
    kq = spectra.ker_and_quotient(lambda a: a, Z6, Z6)
    assert kq.pairs == frozenset((a, a) for a in spectra.scalars(Z6))
    assert len(list(kq.quotient.elements(1))) == 6


@pytest.mark.parametrize("r", [zmod(6), zmod(4), zmod(8)], ids=lambda r: r.name)
def test_galois_round_trip(r):
    A = GRing(r)
    for ideal in spectra.enumerate_ideals(A):
        assert spectra.galois_round_trip(A, ideal) == ideal
    gens = [(2 % len(r.elements),)]
    assert spectra.galois_round_trip(A, gens) == spectra.ideal_generate(A, gens)


def test_pi_trivial_involution_is_identity():
    res = spectra.spec_enumerate(Z6)
    mapping, continuous = spectra.pi_projection(Z6, res)
    assert continuous and all(p == q for p, q in mapping.items())
    C2 = make_FM(cyclic_monoid(2))
    mapping, continuous = spectra.pi_projection(C2)
    assert continuous and list(mapping.items()) == [(frozenset({None}), frozenset({None}))]


def test_swap_product():
    Z2 = GRing(zmod(2))
    P = ProductGenRing(Z2, Z2, swap_involution)
    res = spectra.spec_enumerate(P)
    stable = [i for i in res.ideals if frozenset(P.scalar_transpose(a) for a in i) == i]
    assert set(res.symmetric_primes) <= set(stable)
    assert res.symmetric_primes == [frozenset({((0,), (0,))})]
    assert len(res.primes) == 2
    mapping, continuous = spectra.pi_projection(P, res)
    assert continuous and set(mapping.values()) == set(res.symmetric_primes)


@settings(max_examples=25)
@given(st.integers(2, 12), st.lists(st.integers(0, 11), max_size=3))
def test_generated_ideal_is_ordinary_ideal(m, gens):
    r = zmod(m)
    got = spectra.ideal_generate(GRing(r), [(g % m,) for g in gens])
    want = {0}
    while True:
        nxt = want | {(a + b) % m for a in want for b in want} | \
            {(x * g) % m for x in range(m) for g in [*want, *(g % m for g in gens)]}
        if nxt == want:
            break
        want = nxt
    assert scal(got) == sorted(want)


def test_lines_render():
    res = spectra.spec_enumerate(Z6)
    text = "\n".join(res.lines())
    assert "prime {0, 3}" in text and "V({0}) = [0, 1]" in text
