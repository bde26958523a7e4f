"""Norms at a prime and at the real place, with the fullness and tameness tests.

A place is either a prime ``p`` (vectors of exact rationals, max of ``|x|_p``) or
the string ``"real"`` (float vectors, Euclidean norm).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence, Union

from .differentials import is_prime

Place = Union[int, str]


class ZeroVector(ValueError):
    pass


def valuation(x, p: int) -> int | None:
    """``v_p(x)`` for a nonzero rational; ``None`` for zero."""
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def abs_p(x, p: int) -> Fraction:
    v = valuation(x, p)
    return Fraction(0) if v is None else Fraction(p) ** (-v)


def _check_place(place: Place):
    if place == "real":
        return
    if not isinstance(place, int) or not is_prime(place):
        raise ValueError(f"place must be a prime or 'real', got {place!r}")


def norm_padic(v: Sequence, p: int) -> Fraction:
    _check_place(p)
    return max((abs_p(x, p) for x in v), default=Fraction(0))


def norm_real(v: Sequence[float]) -> float:
    return math.sqrt(math.fsum(float(x) ** 2 for x in v))


def norm(place: Place, v: Sequence):
    _check_place(place)
    return norm_real(v) if place == "real" else norm_padic(v, place)


def in_unit_ball(place: Place, v: Sequence) -> bool:
    """Membership of ``v`` in the ball ``B_X`` of the place (``Z_p^X`` or the real L2 ball)."""
    return norm(place, v) <= 1


def fullness_witness(place: Place, v: Sequence):
    """A scalar ``d != 0`` with ``||d v|| <= 1`` and ``|d|^-1 = ||v||``.

    At a prime, ``||v|| = p^m`` and ``d = p^m`` (so ``|d|_p = p^-m``); at the real
    place ``d = 1/||v||``. Both are the optimal witnesses.
    """
    nv = norm(place, v)
    if nv == 0:
        raise ZeroVector("a zero vector has no normalising scalar")
    if place == "real":
        return 1.0 / nv
    m = -min(valuation(x, place) for x in v if Fraction(x) != 0)
    return Fraction(place) ** m


def scalar_abs(place: Place, d):
    return abs(float(d)) if place == "real" else abs_p(d, place)


def scale(v: Sequence, d):
    return [d * x for x in v]


def check_fullness(place: Place, v: Sequence, trials: int = 200, seed: int = 0) -> bool:
    """Witness lands in the ball, realises the norm, and no sampled scalar does better."""
    d = fullness_witness(place, v)
    nv = norm(place, v)
    if norm(place, scale(v, d)) > 1 + (1e-12 if place == "real" else 0):
        return False
    inv = 1 / scalar_abs(place, d)
    if place == "real":
        if abs(inv - nv) > 1e-9 * max(1.0, nv):
            return False
    elif inv != nv:
        return False
    rng = random.Random(seed)
    for _ in range(trials):
        if place == "real":
            e = rng.uniform(0.01, 10.0) * rng.choice((1, -1))
        else:
            e = Fraction(rng.choice((1, -1)) * rng.randint(1, 50), rng.randint(1, 50)) \
                * Fraction(place) ** rng.randint(-4, 4)
        if norm(place, scale(v, e)) <= 1 and 1 / scalar_abs(place, e) < nv * (1 - 1e-12):
            return False
    return True


def inner(v: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(v, b))


def sample_unit_ball(place: Place, n: int, rng: random.Random):
    if place == "real":
        g = [rng.gauss(0.0, 1.0) for _ in range(n)]
        r = norm_real(g) or 1.0
        radius = rng.random() ** (1.0 / max(n, 1))
        return [radius * x / r for x in g]
    p = place
    return [Fraction(rng.randint(-50, 50)) * Fraction(p) ** rng.randint(0, 3) /
            rng.choice([1, 1 + p, 1 + 2 * p]) for _ in range(n)]


def sup_pairing(place: Place, v: Sequence):
    """``sup { |<b, v>| : b in the unit ball }``, attained at an explicit ``b``."""
    nv = norm(place, v)
    if nv == 0:
        return nv
    if place == "real":
        b = [x / nv for x in v]
        return abs(inner(v, b))
    best = max(range(len(v)), key=lambda i: abs_p(v[i], place))
    b = [Fraction(int(i == best)) for i in range(len(v))]
    return abs_p(inner(v, b), place)


def tameness_check(place: Place, v: Sequence, trials: int = 200, seed: int = 0) -> bool:
    """``||v|| <= 1``, cross-checked against pairings with the unit ball."""
    nv = norm(place, v)
    tame = nv <= 1
    sup = sup_pairing(place, v)
    tol = 1e-9 * max(1.0, float(nv)) if place == "real" else 0
    if abs(sup - nv) > tol:
        raise AssertionError(f"sup of pairings {sup} differs from norm {nv}")
    rng = random.Random(seed)
    for _ in range(trials):
        b = sample_unit_ball(place, len(v), rng)
        pair = abs(inner(v, b)) if place == "real" else abs_p(inner(v, b), place)
        if pair > nv + tol:
            raise AssertionError(f"pairing {pair} exceeds norm {nv}")
    return tame


def contraction_closure(place: Place, trials: int = 10_000, seed: int = 0, max_dim: int = 6) -> tuple[bool, tuple | None]:
    """``<b, v>`` stays in the unit ball for ``b, v`` in the ball; returns a counterexample on failure."""
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, max_dim)
        b, v = sample_unit_ball(place, n, rng), sample_unit_ball(place, n, rng)
        if place == "real":
            ok = abs(inner(b, v)) <= 1 + 1e-12
        else:
            ok = abs_p(inner(b, v), place) <= 1
        if not ok:
            return False, (b, v)
    return True, None
