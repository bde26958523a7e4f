import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from f1forge.norms import (ZeroVector, abs_p, check_fullness, contraction_closure, fullness_witness,
                           in_unit_ball, norm, norm_padic, norm_real, scalar_abs, scale,
                           tameness_check, valuation)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)
vectors = st.lists(rationals, min_size=1, max_size=6).filter(lambda v: any(v))
primes = st.sampled_from([2, 3, 5, 7])


def test_padic_norm_examples():
    assert norm_padic([Fraction(1, 2), 3], 2) == 2
    assert norm_padic([0, 0], 3) == 0
    assert norm_padic([1, 1, 1], 5) == 1
    assert norm_padic([], 2) == 0


def test_real_norm_examples():
    assert norm_real([3, 4]) == 5
    assert math.isclose(norm_real([0.6, 0.8]), 1.0)
    assert norm_real([]) == 0


def test_place_validated():
    with pytest.raises(ValueError):
        norm(4, [1])


def test_fullness_examples():
    v = [Fraction(3, 2), Fraction(1, 2)]
    d = fullness_witness(2, v)
    assert norm(2, scale(v, d)) <= 1
    assert 1 / scalar_abs(2, d) == norm(2, v) == 2
    assert fullness_witness("real", [3.0, 4.0]) == pytest.approx(0.2)
    assert fullness_witness(3, [1, 2]) == 1
    with pytest.raises(ZeroVector):
        fullness_witness(2, [0, 0])


def test_tameness_examples():
    assert tameness_check("real", [0.6, 0.8])
    assert not tameness_check("real", [1.1, 0.0])
    assert tameness_check(3, [Fraction(1, 3), 1]) is False
    assert tameness_check(3, [Fraction(3), 1])


@given(rationals, primes)
def test_valuation_matches_factorisation(x, p):
    if x == 0:
        assert valuation(x, p) is None
        return
    v = valuation(x, p)
    rest = x / Fraction(p) ** v
    assert rest.numerator % p and rest.denominator % p
    assert abs_p(x, p) == Fraction(p) ** -v


@given(vectors, primes)
def test_padic_fullness(v, p):
    assert check_fullness(p, v, trials=30)
    d = fullness_witness(p, v)
    assert 1 / abs_p(d, p) == norm(p, v)


@given(vectors)
def test_real_fullness(v):
    v = [float(x) for x in v]
    assert check_fullness("real", v, trials=30)


@given(vectors, st.sampled_from([2, 3, 5, "real"]))
def test_tameness_is_ball_membership(v, place):
    if place == "real":
        v = [float(x) for x in v]
    assert tameness_check(place, v, trials=30) == in_unit_ball(place, v)


@pytest.mark.parametrize("place", [2, 3, "real"])
def test_contraction_closure(place):
    ok, witness = contraction_closure(place, 2000, seed=1)
    assert ok, witness


def test_real_pairing_example():
    b, v = [0.8, 0.6], [0.6, 0.8]
    assert math.isclose(sum(x * y for x, y in zip(b, v)), 0.96)
