"""Commutative rigs used as coefficient structures.

Each rig is an immutable descriptor bundling ``add``/``mul``, the units, a carrier
check and a sampler. Max-rigs over the reals use floats; samplers draw dyadic
values with small denominators so products of a handful of samples stay exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence


class CarrierError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Rig:
    name: str
    add: Callable[[Any, Any], Any]
    mul: Callable[[Any, Any], Any]
    zero: Any
    one: Any
    contains: Callable[[Any], bool]
    sample: Callable[[random.Random], Any]
    neg: Callable[[Any], Any] | None = None
    elements: tuple | None = None  # finite carriers only
    idempotent_add: bool = False

    @property
    def is_ring(self) -> bool:
        return self.neg is not None

    @property
    def is_finite(self) -> bool:
        return self.elements is not None

    def check(self, a):
        if not self.contains(a):
            raise CarrierError(f"{a!r} is not in the carrier of {self.name}")
        return a

    def sum(self, values) -> Any:
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def sub(self, a, b):
        if self.neg is None:
            raise TypeError(f"{self.name} has no negatives")
        return self.add(a, self.neg(b))

    def __repr__(self):
        return f"Rig({self.name})"


def rig_add(r: Rig, a, b):
    return r.add(r.check(a), r.check(b))


def rig_mul(r: Rig, a, b):
    return r.mul(r.check(a), r.check(b))


def _is_int(a) -> bool:
    return isinstance(a, int) and not isinstance(a, bool)


def _dyadic(rng: random.Random, hi: int) -> float:
    return rng.randint(0, hi * 16) / 16.0


NAT = Rig("nat", lambda a, b: a + b, lambda a, b: a * b, 0, 1,
          lambda a: _is_int(a) and a >= 0, lambda rng: rng.randint(0, 9))

INT = Rig("int", lambda a, b: a + b, lambda a, b: a * b, 0, 1,
          _is_int, lambda rng: rng.randint(-9, 9), neg=lambda a: -a)

RAT = Rig("rat", lambda a, b: a + b, lambda a, b: a * b, Fraction(0), Fraction(1),
          lambda a: isinstance(a, (Fraction, int)) and not isinstance(a, bool),
          lambda rng: Fraction(rng.randint(-9, 9), rng.randint(1, 6)), neg=lambda a: -a)

BOOL_MAX = Rig("bool-max", max, lambda a, b: a * b, 0, 1,
               lambda a: a in (0, 1) and not isinstance(a, bool),
               lambda rng: rng.randint(0, 1), elements=(0, 1), idempotent_add=True)

UNIT_MAX = Rig("unit-max", max, lambda a, b: a * b, 0.0, 1.0,
               lambda a: isinstance(a, (int, float)) and 0 <= a <= 1,
               lambda rng: _dyadic(rng, 1), idempotent_add=True)

TROP_MAX = Rig("trop-max", max, lambda a, b: a * b, 0.0, 1.0,
               lambda a: isinstance(a, (int, float)) and 0 <= a < float("inf"),
               lambda rng: _dyadic(rng, 4), idempotent_add=True)


def zmod(m: int) -> Rig:
    if m < 1:
        raise ValueError("modulus must be positive")
    return Rig(f"zmod:{m}", lambda a, b: (a + b) % m, lambda a, b: (a * b) % m, 0, 1 % m,
               lambda a: _is_int(a) and 0 <= a < m, lambda rng: rng.randrange(m),
               neg=lambda a: (-a) % m, elements=tuple(range(m)))


def poly_quotient(m: int, modulus: Sequence[int], name: str | None = None) -> Rig:
    """``Z/m[x] / (f)`` for a monic ``f``, given by its low-order coefficients.

    ``modulus=(c0, ..., c_{d-1})`` means ``x^d = -(c0 + c1 x + ...)``. Elements are
    coefficient tuples of length ``d``.
    """
    d = len(modulus)

    def add(a, b):
        return tuple((x + y) % m for x, y in zip(a, b))

    def mul(a, b):
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, ci in enumerate(modulus):
                    prod[k - d + i] -= c * ci
        return tuple(v % m for v in prod[:d])

    elements = tuple(itertools.product(range(m), repeat=d))
    zero = (0,) * d
    one = (1 % m,) + (0,) * (d - 1)
    return Rig(name or f"poly:{m}:{','.join(map(str, modulus))}", add, mul, zero, one,
               lambda a: a in elements, lambda rng: rng.choice(elements),
               neg=lambda a: tuple((-x) % m for x in a), elements=elements)


def product_rig(*rigs: Rig) -> Rig:
    """Direct product of finite rings/rigs, componentwise."""
    elements = tuple(itertools.product(*(r.elements for r in rigs)))
    neg = None
    if all(r.is_ring for r in rigs):
        neg = lambda a: tuple(r.neg(x) for r, x in zip(rigs, a))  # noqa: E731
    return Rig("x".join(r.name for r in rigs),
               lambda a, b: tuple(r.add(x, y) for r, x, y in zip(rigs, a, b)),
               lambda a, b: tuple(r.mul(x, y) for r, x, y in zip(rigs, a, b)),
               tuple(r.zero for r in rigs), tuple(r.one for r in rigs),
               lambda a: a in elements, lambda rng: rng.choice(elements),
               neg=neg, elements=elements)


def localized_integers(generators: Sequence[int]) -> Rig:
    """``Z[1/g : g in generators]`` as exact fractions."""
    primes = sorted({p for g in generators for p in _prime_factors(abs(g))})

    def contains(a):
        if _is_int(a):
            return True
        if not isinstance(a, Fraction):
            return False
        den = a.denominator
        for p in primes:
            while den % p == 0:
                den //= p
        return den == 1

    def sample(rng):
        den = 1
        for p in primes:
            den *= p ** rng.randint(0, 2)
        return Fraction(rng.randint(-9, 9), den)

    label = ",".join(map(str, primes))
    return Rig(f"int[1/{label}]", lambda a, b: Fraction(a) + b, lambda a, b: Fraction(a) * b,
               Fraction(0), Fraction(1), contains, sample, neg=lambda a: -Fraction(a))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def get_rig(name: str) -> Rig:
    """Resolve a CLI rig name: nat, int, zmod:<m>, rat, bool-max, unit-max, trop-max."""
    fixed = {"nat": NAT, "int": INT, "rat": RAT, "bool-max": BOOL_MAX,
             "unit-max": UNIT_MAX, "trop-max": TROP_MAX}
    if name in fixed:
        return fixed[name]
    if name.startswith("zmod:"):
        return zmod(int(name.split(":", 1)[1]))
    raise KeyError(f"unknown rig {name!r}")


REGISTERED = ("nat", "int", "zmod:6", "rat", "bool-max", "unit-max", "trop-max")


@dataclass
class AxiomReport:
    subject: str
    trials: int
    failures: dict[str, tuple] = field(default_factory=dict)
    checked: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = []
        for law in self.checked:
            if law in self.failures:
                out.append(f"FAIL {self.subject} {law} counterexample={self.failures[law]!r}")
            else:
                out.append(f"PASS {self.subject} {law} trials={self.trials}")
        return out


def check_rig_axioms(r: Rig, trials: int = 1000, seed: int = 0) -> AxiomReport:
    """Randomized check of the commutative-rig laws; records the first counterexample per law."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    laws = {
        "add-commutative": lambda a, b, c: r.add(a, b) == r.add(b, a),
        "mul-commutative": lambda a, b, c: r.mul(a, b) == r.mul(b, a),
        "add-associative": lambda a, b, c: r.add(r.add(a, b), c) == r.add(a, r.add(b, c)),
        "mul-associative": lambda a, b, c: r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)),
        "distributive": lambda a, b, c: r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)),
        "add-unit": lambda a, b, c: r.add(a, r.zero) == a,
        "mul-unit": lambda a, b, c: r.mul(a, r.one) == a,
        "zero-absorbing": lambda a, b, c: r.mul(a, r.zero) == r.zero,
    }
    if r.is_ring:
        laws["additive-inverse"] = lambda a, b, c: r.add(a, r.neg(a)) == r.zero
    if r.idempotent_add:
        laws["add-idempotent"] = lambda a, b, c: r.add(a, a) == a
    report = AxiomReport(r.name, trials, checked=list(laws))
    for _ in range(trials):
        a, b, c = r.sample(rng), r.sample(rng), r.sample(rng)
        for law, pred in laws.items():
            if law not in report.failures and not pred(a, b, c):
                report.failures[law] = (a, b, c)
    return report
