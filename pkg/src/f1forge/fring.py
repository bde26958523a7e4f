"""Matrices over a rig: the F-ring with involution F(B).

Products of index sets are ordered lexicographically with the first factor major,
so ``a (x) b`` is the usual Kronecker product.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Any

from .fincat import PartialBijection
from .rigs import AxiomReport, Rig, get_rig


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RigMatrix:
    rig: Rig
    rows: int
    cols: int
    data: tuple[tuple[Any, ...], ...]

    def __post_init__(self):
        data = tuple(tuple(r) for r in self.data)
        if len(data) != self.rows or any(len(r) != self.cols for r in data):
            raise ShapeMismatch(f"data does not have shape {self.rows}x{self.cols}")
        for row in data:
            for v in row:
                self.rig.check(v)
        object.__setattr__(self, "data", data)

    def __eq__(self, other):
        return (isinstance(other, RigMatrix) and self.rig is other.rig
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    def __hash__(self):
        return hash((self.rig.name, self.rows, self.cols, self.data))

    def __getitem__(self, idx):
        y, x = idx
        return self.data[y][x]

    def __matmul__(self, other):
        return mat_compose(self, other)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def to_dict(self) -> dict:
        return {"rig": self.rig.name, "rows": self.rows, "cols": self.cols,
                "data": [list(r) for r in self.data]}

    @classmethod
    def from_dict(cls, d: dict) -> "RigMatrix":
        rig = get_rig(d["rig"])
        return cls(rig, d["rows"], d["cols"], tuple(tuple(r) for r in d["data"]))

    def dumps(self) -> str:
        return json.dumps(self.to_dict())


def matrix(rig: Rig, rows) -> RigMatrix:
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    return RigMatrix(rig, len(rows), ncols, tuple(tuple(r) for r in rows))


def zeros(rig: Rig, rows: int, cols: int) -> RigMatrix:
    return RigMatrix(rig, rows, cols, tuple((rig.zero,) * cols for _ in range(rows)))


def identity(rig: Rig, n: int) -> RigMatrix:
    return RigMatrix(rig, n, n, tuple(tuple(rig.one if i == j else rig.zero for j in range(n))
                                      for i in range(n)))


def from_partial_bijection(rig: Rig, phi: PartialBijection) -> RigMatrix:
    data = [[rig.zero] * phi.source for _ in range(phi.target)]
    for x, y in phi.pairs:
        data[y][x] = rig.one
    return RigMatrix(rig, phi.target, phi.source, tuple(tuple(r) for r in data))


def delta(rig: Rig) -> RigMatrix:
    """The row vector (1, 1) in F(B)_{[1],[2]}."""
    return RigMatrix(rig, 1, 2, ((rig.one, rig.one),))


def mat_compose(a: RigMatrix, b: RigMatrix) -> RigMatrix:
    if a.rig is not b.rig:
        raise ShapeMismatch(f"rig mismatch: {a.rig.name} vs {b.rig.name}")
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot compose {a.shape} with {b.shape}")
    r = a.rig
    cols_b = list(zip(*b.data)) if b.rows else [()] * b.cols
    data = tuple(tuple(r.sum(r.mul(u, v) for u, v in zip(row, col)) for col in cols_b)
                 for row in a.data)
    return RigMatrix(r, a.rows, b.cols, data)


def mat_direct_sum(a: RigMatrix, b: RigMatrix) -> RigMatrix:
    if a.rig is not b.rig:
        raise ShapeMismatch(f"rig mismatch: {a.rig.name} vs {b.rig.name}")
    z = a.rig.zero
    top = tuple(row + (z,) * b.cols for row in a.data)
    bottom = tuple((z,) * a.cols + row for row in b.data)
    return RigMatrix(a.rig, a.rows + b.rows, a.cols + b.cols, top + bottom)


def mat_transpose(a: RigMatrix) -> RigMatrix:
    data = tuple(zip(*a.data)) if a.rows else tuple(() for _ in range(a.cols))
    return RigMatrix(a.rig, a.cols, a.rows, data)


def direct_power(a: RigMatrix, copies: int) -> RigMatrix:
    """``(+)_Z a``: block diagonal with ``copies`` blocks, block index major."""
    out = zeros(a.rig, 0, 0)
    for _ in range(copies):
        out = mat_direct_sum(out, a)
    return out


def kron(a: RigMatrix, b: RigMatrix) -> RigMatrix:
    if a.rig is not b.rig:
        raise ShapeMismatch("rig mismatch")
    r = a.rig
    data = tuple(tuple(r.mul(a.data[i][j], b.data[k][l]) for j in range(a.cols) for l in range(b.cols))
                 for i in range(a.rows) for k in range(b.rows))
    return RigMatrix(r, a.rows * b.rows, a.cols * b.cols, data)


def shuffle(rig: Rig, n: int, m: int) -> RigMatrix:
    """Permutation matrix taking index (i, j) of [n]x[m] to (j, i) of [m]x[n]."""
    pairs = tuple((i * m + j, j * n + i) for i in range(n) for j in range(m))
    return from_partial_bijection(rig, PartialBijection(n * m, n * m, pairs))


def scalar(rig: Rig, v) -> RigMatrix:
    return RigMatrix(rig, 1, 1, ((v,),))


def scalar_add_via_delta(rig: Rig, a1, a2):
    """``delta o (a1 (+) a2) o delta^t``, i.e. addition recovered from delta."""
    d = delta(rig)
    m = mat_compose(mat_compose(d, mat_direct_sum(scalar(rig, a1), scalar(rig, a2))), mat_transpose(d))
    return m[0, 0]


def random_matrix(rig: Rig, rng: random.Random, rows: int, cols: int) -> RigMatrix:
    return RigMatrix(rig, rows, cols, tuple(tuple(rig.sample(rng) for _ in range(cols))
                                            for _ in range(rows)))


def commutativity_sides(a: RigMatrix, b: RigMatrix, d: RigMatrix):
    """The three expressions whose equality defines commutativity of F(B).

    ``a`` is Y x X, ``b`` is 1 x Z and ``d`` is Z x 1. The last expression needs the
    shuffles identifying Y x Z with Z x Y and X x Z with Z x X.
    """
    rig = a.rig
    ny, nx = a.shape
    nz = b.cols
    bd = mat_compose(b, d)
    lhs = mat_compose(a, direct_power(bd, nx))
    mid = mat_compose(direct_power(bd, ny), a)
    # (+)_Y b : Y <- YxZ ; (+)_Z a : ZxY <- ZxX ; (+)_X d : XxZ <- X
    rhs = mat_compose(
        mat_compose(mat_compose(direct_power(b, ny), shuffle(rig, nz, ny)),
                    mat_compose(direct_power(a, nz), shuffle(rig, nx, nz))),
        direct_power(d, nx))
    return lhs, mid, rhs


def total_commutativity_sides(a: RigMatrix, b: RigMatrix):
    """``(a (x) id_W) o (id_X (x) b)`` and ``(id_Y (x) b) o (a (x) id_Z)``."""
    rig = a.rig
    ny, nx = a.shape
    nw, nz = b.shape
    lhs = mat_compose(kron(a, identity(rig, nw)), kron(identity(rig, nx), b))
    rhs = mat_compose(kron(identity(rig, ny), b), kron(a, identity(rig, nz)))
    return lhs, rhs


def check_fring_commutative(rig: Rig, trials: int = 500, seed: int = 0, max_dim: int = 4) -> AxiomReport:
    rng = random.Random(seed)
    report = AxiomReport(f"F({rig.name})", trials, checked=["commutativity"])
    for _ in range(trials):
        ny, nx, nz = (rng.randint(1, max_dim) for _ in range(3))
        a = random_matrix(rig, rng, ny, nx)
        b = random_matrix(rig, rng, 1, nz)
        d = random_matrix(rig, rng, nz, 1)
        lhs, mid, rhs = commutativity_sides(a, b, d)
        if not (lhs == mid == rhs):
            report.failures["commutativity"] = (a, b, d)
            break
    return report


def check_total_commutative(rig: Rig, trials: int = 500, seed: int = 0, max_dim: int = 3) -> AxiomReport:
    rng = random.Random(seed)
    report = AxiomReport(f"F({rig.name})", trials, checked=["total-commutativity"])
    for _ in range(trials):
        a = random_matrix(rig, rng, rng.randint(1, max_dim), rng.randint(1, max_dim))
        b = random_matrix(rig, rng, rng.randint(1, max_dim), rng.randint(1, max_dim))
        lhs, rhs = total_commutativity_sides(a, b)
        if lhs != rhs:
            report.failures["total-commutativity"] = (a, b)
            break
    return report


def underlying_genring(rig: Rig):
    """U(F(B)): vectors are 1 x X matrices, operations via composition and direct sums."""
    from .genring import UnderlyingGenRing

    return UnderlyingGenRing(rig)
