"""Differentials of the naturals over the base: the derivation on the prime basis.

Elements of the differential module are finite integer combinations of ``d(p)``
for primes ``p``; the symbol ``{a, b}`` is ``d(a+b) - d(a) - d(b)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable


class PresentationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OmegaElem:
    """Integer combination of ``d(p)``; zero coefficients are never stored."""

    coeffs: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "OmegaElem":
        for p in d:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        return cls(tuple(sorted((p, c) for p, c in d.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __add__(self, other: "OmegaElem") -> "OmegaElem":
        d = self.as_dict()
        for p, c in other.coeffs:
            d[p] = d.get(p, 0) + c
        return OmegaElem(tuple(sorted((p, c) for p, c in d.items() if c)))

    def __neg__(self) -> "OmegaElem":
        return OmegaElem(tuple((p, -c) for p, c in self.coeffs))

    def __sub__(self, other: "OmegaElem") -> "OmegaElem":
        return self + (-other)

    def scale(self, k: int) -> "OmegaElem":
        if k == 0:
            return OmegaElem()
        return OmegaElem(tuple((p, k * c) for p, c in self.coeffs))

    __rmul__ = lambda self, k: self.scale(k)  # noqa: E731

    def __bool__(self):
        return bool(self.coeffs)

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*d({p})" for p, c in self.coeffs).replace("+ -", "- ")


ZERO = OmegaElem()


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            e = 0
            while n % k == 0:
                n //= k
                e += 1
            out.append((k, e))
        k += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=200_000)
def partial_n(n: int) -> OmegaElem:
    """``d(n) = sum_p v_p(n) (n/p) d(p)``; ``d(0) = d(1) = 0``."""
    if n < 0:
        raise ValueError("n must be a natural number")
    if n < 2:
        return ZERO
    return OmegaElem(tuple((p, e * (n // p)) for p, e in factorize(n)))


def bracket(a: int, b: int) -> OmegaElem:
    if a < 0 or b < 0:
        raise ValueError("brackets take natural numbers")
    return partial_n(a + b) - partial_n(a) - partial_n(b)


def partial_by_leibniz(n: int) -> OmegaElem:
    """Independent route: split off one prime at a time with ``d(ab) = a d(b) + b d(a)``."""
    if n < 2:
        return ZERO
    p = factorize(n)[0][0]
    if p == n:
        return OmegaElem(((p, 1),))
    m = n // p
    return partial_by_leibniz(m).scale(p) + OmegaElem(((p, 1),)).scale(m)


def partial_by_sum(n: int) -> OmegaElem:
    """``sum_{k<n} {1, k}``."""
    acc = ZERO
    for k in range(1, n):
        acc = acc + bracket(1, k)
    return acc


@dataclass
class IdentityReport:
    bound: int
    trials: int
    failures: dict[str, tuple] = field(default_factory=dict)
    checked: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def lines(self) -> list[str]:
        out = []
        for name in self.checked:
            if name in self.failures:
                out.append(f"FAIL {name} operands={self.failures[name]!r}")
            else:
                out.append(f"PASS {name}")
        return out + [f"NOTE {n}" for n in self.notes]


def check_identities(bound: int = 200, seed: int = 0, trials: int = 1000,
                     leibniz_bound: int | None = None, sum_bound: int | None = None) -> IdentityReport:
    """Cocycle and homogeneity on random operands; Leibniz, almost-additivity and the
    telescoping sum exhaustively up to their bounds (default ``bound``)."""
    if bound < 3:
        raise ValueError("bound must be at least 3")
    leibniz_bound = leibniz_bound or bound
    sum_bound = sum_bound or bound
    rep = IdentityReport(bound, trials, checked=["cocycle", "homogeneity", "leibniz",
                                                 "almost-additivity", "symmetry", "telescoping"])
    rep.notes.append("the commutativity relation is represented through homogeneity only")
    rng = random.Random(seed)

    def fail(name, ops):
        rep.failures.setdefault(name, ops)

    for _ in range(trials):
        a, b, c = (rng.randint(1, bound) for _ in range(3))
        if bracket(a, b + c) + bracket(b, c) != bracket(a + b, c) + bracket(a, b):
            fail("cocycle", (a, b, c))
        k = rng.randint(1, bound)
        if bracket(k * a, k * b) != bracket(a, b).scale(k):
            fail("homogeneity", (k, a, b))
    for n in range(leibniz_bound + 1):
        for m in range(leibniz_bound + 1):
            if partial_n(n * m) != partial_n(m).scale(n) + partial_n(n).scale(m):
                fail("leibniz", (n, m))
            if m <= n:
                s = bracket(n, m)
                if s != bracket(m, n):
                    fail("symmetry", (n, m))
                if m == 0 and s:
                    fail("almost-additivity", (n, m))
                if partial_n(n + m) != partial_n(n) + partial_n(m) + s:
                    fail("almost-additivity", (n, m))
    acc = ZERO
    for n in range(2, sum_bound + 1):
        acc = acc + bracket(1, n - 1)
        if acc != partial_n(n):
            fail("telescoping", (n,))
    return rep


# --- truncated presentation ---------------------------------------------------


def presentation_matrix(bound: int, include_homogeneity: bool = False, max_generators: int = 5000):
    """Generators ``{a, b}`` with ``1 <= a <= b``, ``a + b <= bound``; one row per relation."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    gens = [(a, b) for s in range(2, bound + 1) for a in range(1, s // 2 + 1) for b in [s - a]]
    if len(gens) > max_generators:
        raise PresentationTooLarge(f"{len(gens)} generators exceed the limit {max_generators}")
    index = {g: i for i, g in enumerate(gens)}

    def gid(a, b):
        return index[(min(a, b), max(a, b))]

    rows = []
    for a in range(1, bound):
        for b in range(1, bound - a):
            for c in range(1, bound - a - b + 1):
                row = [0] * len(gens)
                row[gid(a, b + c)] += 1
                row[gid(b, c)] += 1
                row[gid(a + b, c)] -= 1
                row[gid(a, b)] -= 1
                if any(row):
                    rows.append(row)
    if include_homogeneity:
        for c in range(2, bound + 1):
            for a in range(1, bound):
                for b in range(a, bound):
                    if c * (a + b) > bound:
                        break
                    row = [0] * len(gens)
                    row[gid(c * a, c * b)] += 1
                    row[gid(a, b)] -= c
                    rows.append(row)
    return gens, rows


def smith_diagonal(rows: list[list[int]], ncols: int) -> list[int]:
    """Nonzero diagonal of the Smith normal form (each entry divides the next)."""
    m = [list(r) for r in rows if any(r)]
    diag = []
    t = 0
    nrows = len(m)
    while t < min(nrows, ncols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = m[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        m[t], m[i] = m[i], m[t]
        for r in m:
            r[t], r[j] = r[j], r[t]
        while True:
            p = m[t][t]
            done = True
            for i in range(t + 1, nrows):
                q = m[i][t] // p
                if q:
                    ri, rt = m[i], m[t]
                    for j in range(t, ncols):
                        ri[j] -= q * rt[j]
                if m[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = m[t][j] // p
                if q:
                    for r in m:
                        r[j] -= q * r[t]
                if m[t][j]:
                    done = False
            if done:
                # enforce divisibility against the rest of the block
                bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                            if m[i][j] % p), None)
                if bad is None:
                    break
                i = bad[0]
                for j in range(t, ncols):
                    m[t][j] += m[i][j]
                continue
            # move the smallest remainder into the pivot position
            cands = [(abs(m[i][t]), i, t) for i in range(t + 1, nrows) if m[i][t]]
            cands += [(abs(m[t][j]), t, j) for j in range(t + 1, ncols) if m[t][j]]
            _, i, j = min(cands)
            if j == t:
                m[t], m[i] = m[i], m[t]
            else:
                for r in m:
                    r[t], r[j] = r[j], r[t]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def invariant_factors(rows: list[list[int]], ncols: int) -> list[int]:
    """Cyclic decomposition of ``Z^ncols / rowspace``: factors > 1, then a 0 per free summand."""
    diag = smith_diagonal(rows, ncols)
    torsion = [d for d in diag if d > 1]
    return torsion + [0] * (ncols - len(diag))


def evaluation_row(a: int, b: int) -> OmegaElem:
    return bracket(a, b)


@dataclass
class Presentation:
    bound: int
    include_homogeneity: bool
    generators: list[tuple[int, int]]
    relations: int
    factors: list[int]
    evaluation_kills_relations: bool
    evaluation_rank: int
    primes_below_bound: int

    def lines(self) -> list[str]:
        return [f"bound={self.bound} generators={len(self.generators)} relations={self.relations}",
                f"invariant factors: {self.factors}",
                f"evaluation kills relations: {self.evaluation_kills_relations}",
                f"evaluation rank {self.evaluation_rank} <= primes {self.primes_below_bound}"]


def truncated_presentation(bound: int, include_homogeneity: bool = False,
                           max_generators: int = 5000) -> Presentation:
    gens, rows = presentation_matrix(bound, include_homogeneity, max_generators)
    values = [bracket(a, b) for a, b in gens]
    kills = True
    for row in rows:
        acc = ZERO
        for c, v in zip(row, values):
            if c:
                acc = acc + v.scale(c)
        if acc:
            kills = False
            break
    primes = sorted({p for v in values for p, _ in v.coeffs})
    ev = [[dict(v.coeffs).get(p, 0) for p in primes] for v in values]
    rank = len(smith_diagonal(ev, len(primes))) if primes else 0
    return Presentation(bound, include_homogeneity, gens, len(rows),
                        invariant_factors(rows, len(gens)), kills, rank,
                        sum(1 for p in range(2, bound + 1) if is_prime(p)))


def dlog(n: int) -> str:
    return partial_n(n).format()


def primes_in(values: Iterable[OmegaElem]) -> set[int]:
    return {p for v in values for p, _ in v.coeffs}
