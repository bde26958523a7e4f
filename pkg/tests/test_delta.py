import json
import random

import pytest
from hypothesis import given, strategies as st

from f1forge.delta import (RuleSet, Term, TermError, canonicalize, durov_check, generator,
                           identity_term, random_term, rewrites, term_add_i, term_direct_sum,
                           term_dumps, term_equal, term_eval_collapse, term_from_integer,
                           term_from_json, term_loads, term_multiply, term_normalize, term_relabel,
                           term_to_json, term_transpose, zero_term)
from f1forge.delta.rules import random_rewrite
from f1forge.delta.term import matmul

seeds = st.integers(0, 2**32)


def ev(t):
    return term_eval_collapse(t)


def test_integer_terms():
    assert term_from_integer(1).F == (0,) and term_from_integer(1).eps == (1,)
    t3 = term_from_integer(3)
    assert t3.F == ((1, 0, 1, 2),) and ev(t3) == [[3]]
    assert term_from_integer(0).zero


def test_multiply_examples():
    assert ev(term_multiply(term_from_integer(2), term_from_integer(3))) == [[6]]
    for k in (-3, 2, 4):
        t = term_from_integer(k)
        assert term_normalize(term_multiply(t, term_from_integer(1))) == term_normalize(t)
    signed = term_from_integer(1)
    mixed = term_add_i(1, signed, term_from_integer(-1))
    assert term_normalize(term_multiply(mixed, term_from_integer(1))).zero


def test_transpose_examples():
    for k in (-2, 1, 5):
        t = term_from_integer(k)
        assert term_normalize(term_transpose(t)) == term_normalize(t)
    d = generator(1, 2)
    assert d.shape == (1, 2) and term_transpose(d).shape == (2, 1)
    rng = random.Random(4)
    for _ in range(50):
        t = random_term(rng, 2, 2, 1)
        assert term_transpose(term_transpose(t)) == t


def test_addition_examples():
    assert ev(term_add_i(1, term_from_integer(2), term_from_integer(3))) == [[5]]
    t = term_from_integer(4)
    assert term_normalize(term_add_i(1, t, zero_term(1, 1, 1))) == term_normalize(t)
    assert term_normalize(term_add_i(1, term_from_integer(2), term_from_integer(-2))).zero


def test_add_index_checked():
    with pytest.raises(TermError):
        term_add_i(2, term_from_integer(1), term_from_integer(1))


def test_relabel_examples():
    d1, d2 = generator(1, 2), generator(2, 2)
    assert term_relabel([1, 2], d1) == d1
    assert term_relabel([2, 1], d1) == d2
    with pytest.raises(TermError):
        term_relabel([1, 1], d1)


def test_normalize_examples():
    unary = term_from_json({"n": 1, "Y": 1, "X": 1,
                            "F": [{"label": 1, "children": [{"label": 1, "children": ["leaf"]}]}],
                            "G": ["leaf"], "sigma": [[0, 0]], "eps": [1], "zero": False},
                           do_prune=False)
    assert term_normalize(unary) == term_normalize(term_from_integer(1))
    one = term_from_integer(1)
    left = term_add_i(1, one, term_add_i(1, one, one))
    right = term_add_i(1, term_add_i(1, one, one), one)
    assert term_normalize(left) == term_normalize(right) == term_normalize(term_from_integer(3))


def test_eval_examples():
    assert ev(term_from_integer(3)) == [[3]]
    assert ev(generator(1, 1)) == [[1, 1]]
    assert ev(identity_term(2, 3)) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_term_equal_examples():
    five = term_from_integer(5)
    assert term_equal(five, term_add_i(1, term_from_integer(2), term_from_integer(3))).equal
    d1, d2 = generator(1, 2), generator(2, 2)
    assert term_equal(d1, d1).equal
    assert term_equal(d1, d2, RuleSet.base(), budget=10_000).verdict == "not-identified"
    assert not term_equal(term_from_integer(2), term_from_integer(3)).equal


def test_durov():
    res = durov_check(10_000)
    assert res.equal
    assert len(res.search.trace) <= 10
    assert res.base_verdict == "not-identified"
    assert all(step["ok"] for step in res.steps)
    assert durov_check(10_000, n=1).equal


def test_json_format_round_trip():
    t = term_multiply(generator(1, 2), term_direct_sum(generator(2, 2), generator(2, 2)))
    d = term_to_json(t)
    assert set(d) == {"n", "Y", "X", "F", "G", "sigma", "eps", "zero"}
    assert term_from_json(json.loads(json.dumps(d))) == t
    assert term_loads(term_dumps(t)) == t
    z = zero_term(1, 1, 1)
    assert term_from_json(term_to_json(z)).zero


def test_invalid_json():
    with pytest.raises((TermError, KeyError, ValueError)):
        term_from_json({"n": 1, "Y": 1, "X": 1, "F": ["leaf"], "G": ["leaf"], "sigma": [[0, 1]],
                        "eps": [1], "zero": False})


@given(seeds)
def test_every_rewrite_preserves_eval(seed):
    rng = random.Random(seed)
    t = random_term(rng, rng.randint(1, 3), rng.randint(1, 2), rng.randint(1, 2))
    before = ev(t)
    for _, s in rewrites(t, RuleSet.with_total()):
        assert ev(s) == before


@given(seeds)
def test_random_rewrite_chains(seed):
    rng = random.Random(seed)
    t = random_term(rng, 2, 1, 2)
    before = ev(t)
    for _ in range(8):
        step = random_rewrite(rng, t, RuleSet.with_total())
        if step is None:
            break
        t = step[1]
        assert ev(t) == before


@given(seeds)
def test_normalize_idempotent_and_sound(seed):
    rng = random.Random(seed)
    t = random_term(rng, rng.randint(1, 2), rng.randint(1, 2), rng.randint(1, 2))
    nf = term_normalize(t)
    assert ev(nf) == ev(t)
    assert term_normalize(nf) == nf


@given(seeds)
def test_eval_is_multiplicative(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    a, b, c = (rng.randint(1, 2) for _ in range(3))
    t1, t2 = random_term(rng, n, a, b), random_term(rng, n, b, c)
    assert ev(term_multiply(t1, t2)) == matmul(ev(t1), ev(t2))


@given(seeds)
def test_transpose_reverses_products(seed):
    rng = random.Random(seed)
    t1, t2 = random_term(rng, 1, 1, 2), random_term(rng, 1, 2, 1)
    lhs = term_transpose(term_multiply(t1, t2))
    rhs = term_multiply(term_transpose(t2), term_transpose(t1))
    assert term_equal(lhs, rhs).equal


@given(seeds, st.sampled_from([[1, 2, 3], [2, 1, 3], [3, 1, 2], [2, 3, 1]]))
def test_relabel_equivariance(seed, g):
    rng = random.Random(seed)
    t1, t2 = random_term(rng, 3, 1, 2), random_term(rng, 3, 1, 2)
    i = rng.randint(1, 3)
    assert term_relabel(g, term_add_i(i, t1, t2)) == term_add_i(g[i - 1], term_relabel(g, t1),
                                                                term_relabel(g, t2))
    t3 = random_term(rng, 3, 2, 1)
    assert canonicalize(term_relabel(g, term_multiply(t1, t3))) == \
        canonicalize(term_multiply(term_relabel(g, t1), term_relabel(g, t3)))


@given(seeds)
def test_relabel_is_an_action(seed):
    rng = random.Random(seed)
    t = random_term(rng, 3, 1, 2)
    g, h = rng.sample([1, 2, 3], 3), rng.sample([1, 2, 3], 3)
    gh = [g[h[i] - 1] for i in range(3)]
    assert term_relabel(gh, t) == term_relabel(g, term_relabel(h, t))


@pytest.mark.parametrize("k", range(-20, 21, 5))
def test_integer_model(k):
    tk = term_from_integer(k)
    for m in range(-20, 21, 3):
        tm = term_from_integer(m)
        assert ev(term_add_i(1, tk, tm)) == [[k + m]]
        assert ev(term_multiply(tk, tm)) == [[k * m]]


def test_terms_are_hashable_values():
    t = generator(1, 2)
    assert t == Term(2, ((1, 0, 1),), (0, 1), (1, 1))
    assert len({t, generator(1, 2)}) == 1
