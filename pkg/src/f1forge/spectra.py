"""Ideals, primes and the Zariski topology of small generalized rings.

Everything here enumerates carriers, so rings must have finite ``A_[1]`` and
finite ``A_X`` for the degrees used by the closure (``|X| <= bound``).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .genring import (FiberVec, GenRing, GRing, ProductGenRing, check_homomorphism, const_map,
                      identity_map)
from .rigs import Rig, localized_integers, product_rig, zmod


class CarrierTooLarge(ValueError):
    pass


class NotAnIdeal(ValueError):
    pass


class NotMultiplicative(ValueError):
    pass


def scalars(A: GenRing, cap: int = 256) -> list:
    els = A.elements(1)
    if els is None:
        raise CarrierTooLarge(f"{A.name} has no enumerable scalars")
    els = list(els)
    if len(els) > cap:
        raise CarrierTooLarge(f"{A.name} has {len(els)} scalars, cap is {cap}")
    return els


def _degree(A: GenRing, n: int) -> list:
    els = A.elements(n)
    if els is None:
        raise CarrierTooLarge(f"{A.name} has no enumerable degree {n}")
    return list(els)


def _closure_step(A: GenRing, ideal: frozenset, n: int, degree: list) -> set:
    """``{(b |> (a_x)) // d}`` for ``b, d`` in ``A_[n]`` and ``a`` in ``ideal^n``."""
    ident = identity_map(n)
    stage = set()
    for a in itertools.product(sorted(ideal, key=repr), repeat=n):
        fam = FiberVec(ident, n, a)
        for b in degree:
            stage.add(A.mul(b, fam))
    out = set()
    cmap = const_map(n)
    for u in stage:
        for d in degree:
            out.add(A.contract(u, FiberVec(cmap, 1, (d,))))
    return out


def ideal_generate(A: GenRing, gens: Iterable, bound: int = 2, known: set | None = None) -> frozenset:
    """Least subset of ``A_[1]`` containing ``gens`` and closed under the rule for ``|X| <= bound``.

    Cheap degrees are run to a fixpoint before dearer ones. ``known`` holds sets
    already verified closed; reaching one of them (or the whole carrier) stops early.
    """
    degrees = {n: _degree(A, n) for n in range(bound + 1)}
    size = len(degrees[1])
    known = known if known is not None else set()
    cur = frozenset(gens)
    n = 0
    while n <= bound:
        if len(cur) == size or cur in known:
            return cur
        new = _closure_step(A, cur, n, degrees[n])
        if new <= cur:
            n += 1
        else:
            cur = cur | new
            n = 0
    known.add(cur)
    return cur


def is_ideal(A: GenRing, subset: Iterable, bound: int = 2) -> bool:
    s = frozenset(subset)
    return ideal_generate(A, s, bound) == s


def closure_is_stable(A: GenRing, ideal: frozenset, bound: int) -> bool:
    """No new elements appear using ``|X| = bound``."""
    return _closure_step(A, ideal, bound, _degree(A, bound)) <= ideal


def _mul(A: GenRing, a, b):
    return A.scalar_mul(a, b)


def is_multiplicative(A: GenRing, S: Iterable) -> bool:
    S = set(S)
    return A.one() in S and all(_mul(A, a, b) in S for a in S for b in S)


def symmetric_part(A: GenRing, subset: Iterable) -> frozenset:
    return frozenset(a for a in subset if A.scalar_transpose(a) == a)


def is_prime_ideal(A: GenRing, p: frozenset, carrier: Sequence | None = None) -> bool:
    carrier = carrier if carrier is not None else scalars(A)
    return is_multiplicative(A, [a for a in carrier if a not in p])


def is_symmetric_ideal(A: GenRing, ideal: frozenset, bound: int = 2) -> bool:
    return ideal_generate(A, symmetric_part(A, ideal), bound) == ideal


def is_symmetric_prime(A: GenRing, p: frozenset, carrier: Sequence | None = None, bound: int = 2) -> bool:
    carrier = carrier if carrier is not None else scalars(A)
    if not is_symmetric_ideal(A, p, bound):
        return False
    return is_multiplicative(A, [a for a in symmetric_part(A, carrier) if a not in p])


def enumerate_ideals(A: GenRing, bound: int = 2, cap: int = 256) -> list[frozenset]:
    """All ideals, as joins of principal ideals, starting from the zero ideal."""
    carrier = scalars(A, cap)
    known: set = set()
    principal = {a: ideal_generate(A, {a}, bound, known) for a in carrier}
    distinct = sorted(set(principal.values()), key=lambda s: (len(s), sorted(map(repr, s))))
    zero = ideal_generate(A, (), bound, known)
    found = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for ideal in frontier:
            for p in distinct:
                if p <= ideal:
                    continue
                j = ideal_generate(A, ideal | p, bound, known)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(map(repr, s))))


@dataclass
class SpecResult:
    ring: str
    carrier: list
    ideals: list[frozenset]
    primes: list[frozenset]
    symmetric_ideals: list[frozenset]
    symmetric_primes: list[frozenset]
    closed_sets: dict = field(default_factory=dict)
    basic_opens: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    present: Callable = repr

    def show(self, ideal: frozenset) -> str:
        return "{" + ", ".join(sorted(self.present(a) for a in ideal)) + "}"

    def lines(self) -> list[str]:
        out = [f"ring {self.ring}: {len(self.carrier)} scalars, {len(self.ideals)} ideals"]
        out += [f"prime {self.show(p)}" for p in self.primes]
        out += [f"symmetric-prime {self.show(p)}" for p in self.symmetric_primes]
        for ideal in self.ideals:
            pts = sorted(self.closed_sets[ideal])
            out.append(f"V({self.show(ideal)}) = {pts}")
        for f, pts in self.basic_opens.items():
            out.append(f"D({f}) = {sorted(pts)}")
        out += [f"check {k}: {'ok' if v else 'FAILED'}" for k, v in self.checks.items()]
        return out


def _present(A: GenRing) -> Callable:
    def show(a):
        v = A.scalar_value(a)
        if v is None:
            return "0"
        return repr(v) if not isinstance(v, str) else v
    return show


def spec_enumerate(A: GenRing, bound: int = 2, cap: int = 256) -> SpecResult:
    carrier = scalars(A, cap)
    ideals = enumerate_ideals(A, bound, cap)
    full = frozenset(carrier)
    primes = [p for p in ideals if p != full and is_prime_ideal(A, p, carrier)]
    sym_ideals = [i for i in ideals if is_symmetric_ideal(A, i, bound)]
    sym_primes = [p for p in sym_ideals if p != full and
                  is_multiplicative(A, [a for a in symmetric_part(A, carrier) if a not in p])]
    res = SpecResult(A.name, carrier, ideals, primes, sym_ideals, sym_primes, present=_present(A))
    index = {p: k for k, p in enumerate(primes)}
    for ideal in ideals:
        res.closed_sets[ideal] = frozenset(index[p] for p in primes if ideal <= p)
    show = _present(A)
    for f in carrier:
        res.basic_opens[show(f)] = frozenset(index[p] for p in primes if f not in p)
    res.checks = topology_checks(A, res, bound)
    return res


def topology_checks(A: GenRing, res: SpecResult, bound: int = 2) -> dict[str, bool]:
    closed = set(res.closed_sets.values())
    everything = frozenset(range(len(res.primes)))
    opens = list(res.basic_opens.values())
    checks = {}
    checks["nonempty"] = bool(res.primes) or len(res.carrier) <= 1 or A.one() == _zero_scalar(A)
    checks["closed-under-intersection"] = all(a & b in closed for a in closed for b in closed)
    checks["closed-under-union"] = all(a | b in closed for a in closed for b in closed)
    # every open set is a union of basic opens it contains
    checks["basic-opens-form-basis"] = all(
        frozenset().union(*[o for o in opens if o <= everything - c]) == everything - c
        for c in closed)
    full = frozenset(res.carrier)
    maximal = [m for m in res.ideals if m != full and not any(m < j != full for j in res.ideals)]
    checks["maximal-ideals-prime"] = all(m in res.primes for m in maximal)
    return checks


def _zero_scalar(A: GenRing):
    return A.contract(A.zero(0), FiberVec((), 1, (A.zero(0),)))


# --- finite-ring oracle -------------------------------------------------------


def ordinary_ideals(r: Rig) -> list[frozenset]:
    """Brute force over subsets: contain 0, closed under + and under multiplication by r."""
    els = list(r.elements)
    others = [e for e in els if e != r.zero]
    out = []
    for k in range(len(others) + 1):
        for sub in itertools.combinations(others, k):
            s = frozenset((r.zero, *sub))
            if all(r.add(a, b) in s for a in s for b in s) and all(r.mul(x, a) in s for x in els for a in s):
                out.append(s)
    return out


def ordinary_primes(r: Rig) -> list[frozenset]:
    els = list(r.elements)
    full = frozenset(els)
    return [p for p in ordinary_ideals(r) if p != full and
            all(r.mul(a, b) not in p for a in els if a not in p for b in els if b not in p)]


def finite_test_rings(max_size: int = 12) -> list[Rig]:
    """Every ``Z/n``, products, and small polynomial quotients with at most ``max_size`` elements."""
    from .rigs import poly_quotient

    rings = [zmod(n) for n in range(2, max_size + 1)]
    small = [zmod(n) for n in range(2, max_size // 2 + 1)]
    for a, b in itertools.combinations_with_replacement(small, 2):
        if len(a.elements) * len(b.elements) <= max_size:
            rings.append(product_rig(a, b))
    if 8 <= max_size:
        rings.append(product_rig(zmod(2), zmod(2), zmod(2)))
    if 12 <= max_size:
        rings.append(product_rig(zmod(2), zmod(2), zmod(3)))
    quotients = [
        (2, (1, 1), "GF4"), (2, (1, 1, 0), "GF8"), (3, (1, 0), "GF9"),
        (2, (0, 0), "F2[x]/x^2"), (2, (0, 0, 0), "F2[x]/x^3"), (3, (0, 0), "F3[x]/x^2"),
        (2, (1, 0), "F2[x]/(x^2+1)"),
    ]
    for m, mod, name in quotients:
        if m ** len(mod) <= max_size:
            rings.append(poly_quotient(m, mod, name))
    return rings


# --- localization -------------------------------------------------------------


def _multiplicative_closure(r: Rig, gens: Iterable) -> frozenset:
    s = {r.one, *gens}
    while True:
        nxt = s | {r.mul(a, b) for a in s for b in s}
        if nxt == s:
            return frozenset(s)
        s = nxt


def localize_rig(r: Rig, S: Iterable) -> tuple[Rig, Callable]:
    """``S^-1 r`` for a finite rig: classes of pairs ``(b, s)`` with
    ``(b, s) ~ (b', s')`` iff ``u b s' = u b' s`` for some ``u`` in ``S``."""
    S = frozenset(S)
    if not S:
        raise NotMultiplicative("empty set")
    if r.one not in S or any(r.mul(a, b) not in S for a in S for b in S):
        raise NotMultiplicative("S must contain 1 and be closed under products")
    pairs = [(b, s) for b in r.elements for s in sorted(S, key=repr)]

    def same(x, y):
        return any(r.mul(u, r.mul(x[0], y[1])) == r.mul(u, r.mul(y[0], x[1])) for u in S)

    rep: dict = {}
    classes: list = []
    for x in pairs:
        for k, c in enumerate(classes):
            if same(x, c):
                rep[x] = k
                break
        else:
            rep[x] = len(classes)
            classes.append(x)

    def cls(b, s):
        return rep[(b, s)]

    def add(i, j):
        (b, s), (c, t) = classes[i], classes[j]
        return cls(r.add(r.mul(b, t), r.mul(c, s)), r.mul(s, t))

    def mul(i, j):
        (b, s), (c, t) = classes[i], classes[j]
        return cls(r.mul(b, c), r.mul(s, t))

    neg = None
    if r.is_ring:
        neg = lambda i: cls(r.neg(classes[i][0]), classes[i][1])  # noqa: E731
    elements = tuple(range(len(classes)))
    loc = Rig(f"{r.name}[S^-1]", add, mul, cls(r.zero, r.one), cls(r.one, r.one),
              lambda a: a in elements, lambda rng: rng.choice(elements), neg=neg, elements=elements)
    return loc, lambda b: cls(b, r.one)


@dataclass
class Localization:
    ring: GenRing
    phi: Callable
    units_ok: bool


def localize(A: GRing, S: Iterable | None = None, invert: Sequence[int] | None = None) -> Localization:
    """Localize ``G(B)`` at a multiplicative set of scalars.

    For finite ``B`` pass ``S`` (scalars of ``A``); for the integers pass
    ``invert`` (integers to invert), giving ``G(Z[1/...])``.
    """
    if not isinstance(A, GRing):
        raise TypeError("localization is implemented for G(B)")
    if invert is not None:
        if A.rig.name not in ("int", "nat"):
            raise TypeError("invert= needs the integers")
        loc_rig = localized_integers(invert)
        L = GRing(loc_rig)

        def phi(a):
            return tuple(Fraction(v) for v in a)

        units = all(loc_rig.contains(Fraction(1, g)) and
                    L.scalar_mul((Fraction(g),), (Fraction(1, g),)) == L.one() for g in invert)
        return Localization(L, phi, units)
    S = [a[0] if isinstance(a, tuple) else a for a in S]
    loc_rig, emb = localize_rig(A.rig, S)
    L = GRing(loc_rig)

    def phi(a):
        return tuple(emb(v) for v in a)

    units = all(any(loc_rig.mul(emb(s), t) == loc_rig.one for t in loc_rig.elements) for s in S)
    return Localization(L, phi, units)


def stalk_is_local(A: GRing, prime: frozenset, bound: int = 2) -> bool:
    """Localizing at the symmetric complement leaves a unique maximal symmetric ideal."""
    S = [a for a in symmetric_part(A, scalars(A)) if a not in prime]
    loc = localize(A, S).ring
    res = spec_enumerate(loc, bound)
    full = frozenset(res.carrier)
    maximal = [m for m in res.symmetric_ideals if m != full and
               not any(m < j != full for j in res.symmetric_ideals)]
    return len(maximal) == 1


# --- kernels, quotients, Galois correspondence -------------------------------


@dataclass
class KernelQuotient:
    pairs: frozenset
    quotient: GRing
    projection: Callable
    checks: dict


def ker_and_quotient(phi: Callable, A: GRing, B: GenRing, degree: int = 2) -> KernelQuotient:
    """KER of a componentwise homomorphism of G-rings, and the quotient ``A / KER``.

    ``phi`` acts on vectors. Checks: homomorphism, equivalence relation, closure
    of KER under the product operations, and that ``A/KER -> phi(A)`` is a
    bijection in each degree up to ``degree``.
    """
    checks = {"homomorphism": check_homomorphism(phi, A, B, trials=200).passed}
    carrier = scalars(A)
    pairs = frozenset((a, b) for a in carrier for b in carrier if phi(a) == phi(b))
    checks["equivalence"] = (all((a, a) in pairs for a in carrier)
                             and all((b, a) in pairs for a, b in pairs)
                             and all((a, c) in pairs for a, b in pairs for b2, c in pairs if b == b2))
    P = ProductGenRing(A, A)
    rng = random.Random(0)
    related = sorted(pairs, key=repr)

    def related_vectors(n):
        picks = [rng.choice(related) for _ in range(n)]
        return (tuple(u[0] for u, _ in picks), tuple(v[0] for _, v in picks))

    closed = True
    for _ in range(200):
        nx, ny = rng.randint(1, degree), rng.randint(1, degree)
        f = tuple(rng.randrange(ny) for _ in range(nx))
        sizes = [f.count(y) for y in range(ny)]
        fv = FiberVec(f, ny, tuple(related_vectors(k) for k in sizes))
        left, right = P.mul(related_vectors(ny), fv)
        cl, cr = P.contract(related_vectors(nx), fv)
        if phi(left) != phi(right) or phi(cl) != phi(cr):
            closed = False
            break
    checks["sub-ring-of-product"] = closed
    classes: dict = {}
    for a in carrier:
        key = phi(a)
        classes.setdefault(key, a[0])
    reps = list(classes.values())
    index = {phi((v,)): k for k, v in enumerate(reps)}
    r = A.rig

    def q_of(v):
        return index[phi((v,))]

    q_rig = Rig(f"{r.name}/KER", lambda i, j: q_of(r.add(reps[i], reps[j])),
                lambda i, j: q_of(r.mul(reps[i], reps[j])), q_of(r.zero), q_of(r.one),
                lambda a: a in range(len(reps)), lambda rng: rng.randrange(len(reps)),
                neg=(lambda i: q_of(r.neg(reps[i]))) if r.is_ring else None,
                elements=tuple(range(len(reps))))
    Q = GRing(q_rig)

    def projection(a):
        return tuple(q_of(v) for v in a)

    checks["projection-homomorphism"] = check_homomorphism(projection, A, Q, trials=200).passed
    ok = True
    for n in range(1, degree + 1):
        els = _degree(A, n)
        images = {phi(a) for a in els}
        qs = {projection(a) for a in els}
        induced = {}
        for a in els:
            induced.setdefault(projection(a), set()).add(phi(a))
        if len(images) != len(qs) or any(len(v) != 1 for v in induced.values()):
            ok = False
    checks["image-isomorphism"] = ok
    return KernelQuotient(pairs, Q, projection, checks)


def _transitive_symmetric(rel: set) -> set:
    out = set(rel) | {(b, a) for a, b in rel}
    while True:
        succ: dict = {}
        for a, b in out:
            succ.setdefault(a, set()).add(b)
        nxt = {(a, c) for a, bs in succ.items() for b in bs for c in succ[b]}
        if nxt <= out:
            return out
        out |= nxt


def equivalence_ideal_from(A: GenRing, ideal: Iterable, bound: int = 2) -> frozenset:
    """Degree-1 part of the equivalence ideal generated by the pairs ``(a, 0)``.

    Degrees are run cheapest first; families already seen at a degree are skipped.
    """
    carrier = scalars(A)
    full = len(carrier) ** 2
    zero = _zero_scalar(A)
    rel = _transitive_symmetric({(a, a) for a in carrier} | {(a, zero) for a in ideal})
    degrees = {n: _degree(A, n) for n in range(1, bound + 1)}
    seen: dict[int, set] = {n: set() for n in degrees}
    n = 1
    while n <= bound and len(rel) < full:
        ident, cmap = identity_map(n), const_map(n)
        stage = set()
        for fam in itertools.product(sorted(rel, key=repr), repeat=n):
            if fam in seen[n]:
                continue
            seen[n].add(fam)
            left = FiberVec(ident, n, tuple(p[0] for p in fam))
            right = FiberVec(ident, n, tuple(p[1] for p in fam))
            for b in degrees[n]:
                stage.add((A.mul(b, left), A.mul(b, right)))
        new = set()
        for u, v in stage:
            for d in degrees[n]:
                dd = FiberVec(cmap, 1, (d,))
                new.add((A.contract(u, dd), A.contract(v, dd)))
        if new <= rel:
            n += 1
        else:
            rel = _transitive_symmetric(rel | new)
            n = 1
    return frozenset(rel)


def ideal_from_equivalence(A: GenRing, rel: Iterable) -> frozenset:
    zero = _zero_scalar(A)
    return frozenset(a for a, b in rel if b == zero)


def galois_round_trip(A: GenRing, ideal: Iterable, bound: int = 2) -> frozenset:
    return ideal_from_equivalence(A, equivalence_ideal_from(A, ideal, bound))


# --- projection to symmetric primes -----------------------------------------


def pi_projection(A: GenRing, res: SpecResult | None = None, bound: int = 2):
    """``p -> ideal generated by p^+``; returns the map and a continuity verdict."""
    res = res or spec_enumerate(A, bound)
    mapping = {}
    for p in res.primes:
        mapping[p] = ideal_generate(A, symmetric_part(A, p), bound)
    sym_index = {p: k for k, p in enumerate(res.symmetric_primes)}
    lands = all(q in sym_index for q in mapping.values())
    closed = set(res.closed_sets.values())
    prime_index = {p: k for k, p in enumerate(res.primes)}
    continuous = True
    for ideal in res.symmetric_ideals:
        target = {q for q in res.symmetric_primes if ideal <= q}
        pre = frozenset(prime_index[p] for p, q in mapping.items() if q in target)
        if pre not in closed:
            continuous = False
    return mapping, lands and continuous
