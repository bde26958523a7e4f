"""Finite sets with partial bijections.

A finite set is the index range ``0..n-1``; a morphism ``X -> Y`` is a partial
injective map stored as a sorted tuple of ``(x, y)`` pairs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PartialBijection:
    source: int
    target: int
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.source < 0 or self.target < 0:
            raise ValueError("finite set sizes must be non-negative")
        pairs = tuple(sorted((int(x), int(y)) for x, y in self.pairs))
        xs = [x for x, _ in pairs]
        ys = [y for _, y in pairs]
        if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
            raise ValueError(f"not injective: {pairs}")
        for x, y in pairs:
            if not (0 <= x < self.source and 0 <= y < self.target):
                raise ValueError(f"pair {(x, y)} out of range for [{self.source}]->[{self.target}]")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def identity(cls, n: int) -> "PartialBijection":
        return cls(n, n, tuple((i, i) for i in range(n)))

    @classmethod
    def empty(cls, source: int, target: int) -> "PartialBijection":
        return cls(source, target, ())

    @classmethod
    def from_dict(cls, d: dict) -> "PartialBijection":
        return cls(d["source"], d["target"], tuple(tuple(p) for p in d["pairs"]))

    def to_dict(self) -> dict:
        return {"source": self.source, "target": self.target,
                "pairs": [list(p) for p in self.pairs]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(x for x, _ in self.pairs)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(y for _, y in self.pairs)

    def __call__(self, x: int) -> int | None:
        for a, b in self.pairs:
            if a == x:
                return b
        return None

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


def compose(psi: PartialBijection, phi: PartialBijection) -> PartialBijection:
    """``psi o phi``: first ``phi: X -> Y``, then ``psi: Y -> Z``."""
    if phi.target != psi.source:
        raise DimensionMismatch(f"cannot compose [{psi.source}]->[{psi.target}] after "
                                f"[{phi.source}]->[{phi.target}]")
    m = psi.as_dict()
    return PartialBijection(phi.source, psi.target,
                            tuple((x, m[y]) for x, y in phi.pairs if y in m))


def transpose(phi: PartialBijection) -> PartialBijection:
    return PartialBijection(phi.target, phi.source, tuple((y, x) for x, y in phi.pairs))


def direct_sum(phi0: PartialBijection, phi1: PartialBijection) -> PartialBijection:
    # left block first: indices of the second summand are shifted by the first's size
    pairs = list(phi0.pairs)
    pairs += [(x + phi0.source, y + phi0.target) for x, y in phi1.pairs]
    return PartialBijection(phi0.source + phi1.source, phi0.target + phi1.target, tuple(pairs))


def as_boolean_matrix(phi: PartialBijection):
    """The ``target x source`` 0/1 matrix of ``phi`` over the boolean rig."""
    from .fring import RigMatrix
    from .rigs import BOOL_MAX

    data = [[0] * phi.source for _ in range(phi.target)]
    for x, y in phi.pairs:
        data[y][x] = 1
    return RigMatrix(BOOL_MAX, phi.target, phi.source, tuple(tuple(r) for r in data))


def kernel_cokernel_commute(phi: PartialBijection) -> bool:
    """Pointed-set check: coker(ker phi0) is carried isomorphically onto ker(coker phi0).

    With ``phi0`` the pointed extension sending the complement of the domain to the
    basepoint, coker ker is the domain and ker coker is the image.
    """
    image = {phi(x) for x in phi.domain}
    return image == set(phi.image) and len(image) == len(phi.domain)


def all_partial_bijections(source: int, target: int):
    """Every partial bijection ``[source] -> [target]`` (small sizes only)."""
    for k in range(min(source, target) + 1):
        for dom in itertools.combinations(range(source), k):
            for img in itertools.permutations(range(target), k):
                yield PartialBijection(source, target, tuple(zip(dom, img)))


def random_partial_bijection(rng, source: int, target: int) -> PartialBijection:
    k = rng.randint(0, min(source, target))
    dom = rng.sample(range(source), k)
    img = rng.sample(range(target), k)
    return PartialBijection(source, target, tuple(zip(dom, img)))
