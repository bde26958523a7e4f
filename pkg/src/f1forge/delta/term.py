"""Tree-pair terms for the tensor powers of the integers.

A term over ``Y x X`` is a forest ``F`` indexed by ``Y``, a forest ``G`` indexed by
``X``, a sign per leaf, and a bijection between the leaves of the two forests. Here
the bijection is implicit: a leaf is an integer *wire* id that occurs exactly once
in ``F`` and once in ``G``. Internal vertices are tuples ``(label, *children)``;
an empty tree is ``None``. Wires are always renumbered ``0..w-1`` in DFS order of
``F``, so ``eps[w]`` is the sign of wire ``w``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence


class TermError(ValueError):
    pass


def is_leaf(t) -> bool:
    return isinstance(t, int)


def leaves(t) -> list[int]:
    if t is None:
        return []
    if is_leaf(t):
        return [t]
    out = []
    for c in t[1:]:
        out.extend(leaves(c))
    return out


def vertex_count(t) -> int:
    if t is None:
        return 0
    if is_leaf(t):
        return 1
    return 1 + sum(vertex_count(c) for c in t[1:])


def node(label: int, *children):
    return (label, *children)


def prune(t):
    """Drop empty children, delete childless vertices and elide unary ones."""
    if t is None or is_leaf(t):
        return t
    kids = [k for k in (prune(c) for c in t[1:]) if k is not None]
    if not kids:
        return None
    if len(kids) == 1:
        return kids[0]
    return (t[0], *kids)


def substitute(t, fn: Callable[[int], object]):
    """Replace every leaf ``w`` by ``fn(w)`` (not pruned)."""
    if t is None:
        return None
    if is_leaf(t):
        return fn(t)
    return (t[0], *(substitute(c, fn) for c in t[1:]))


def relabel_tree(t, fn: Callable[[int], int]):
    if t is None or is_leaf(t):
        return t
    return (fn(t[0]), *(relabel_tree(c, fn) for c in t[1:]))


def labels(t) -> Iterator[int]:
    if t is None or is_leaf(t):
        return
    yield t[0]
    for c in t[1:]:
        yield from labels(c)


@dataclass(frozen=True)
class Term:
    n: int
    F: tuple
    G: tuple
    eps: tuple

    def __post_init__(self):
        fl = [w for t in self.F for w in leaves(t)]
        gl = [w for t in self.G for w in leaves(t)]
        nw = len(self.eps)
        if sorted(fl) != list(range(nw)) or sorted(gl) != list(range(nw)):
            raise TermError("leaves of F and G must each be the wires 0..w-1 exactly once")
        for t in (*self.F, *self.G):
            self._check_tree(t)
        if any(e not in (1, -1) for e in self.eps):
            raise TermError("signs must be +1 or -1")

    def _check_tree(self, t):
        if t is None or is_leaf(t):
            return
        if len(t) < 2:
            raise TermError("internal vertex without children")
        if not 1 <= t[0] <= self.n:
            raise TermError(f"label {t[0]} outside 1..{self.n}")
        for c in t[1:]:
            if c is None:
                raise TermError("empty subtree below a vertex")
            self._check_tree(c)

    @property
    def ny(self) -> int:
        return len(self.F)

    @property
    def nx(self) -> int:
        return len(self.G)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def zero(self) -> bool:
        return not self.eps

    @property
    def wires(self) -> int:
        return len(self.eps)

    def size(self) -> int:
        return sum(vertex_count(t) for t in (*self.F, *self.G))

    def f_root(self) -> list[int]:
        out = [0] * self.wires
        for y, t in enumerate(self.F):
            for w in leaves(t):
                out[w] = y
        return out

    def g_root(self) -> list[int]:
        out = [0] * self.wires
        for x, t in enumerate(self.G):
            for w in leaves(t):
                out[w] = x
        return out

    def encoding(self):
        return (tuple(encode_tree(t) for t in self.F), tuple(encode_tree(t) for t in self.G),
                self.eps)

    def measure(self):
        """Well-founded order used to direct rewrites."""
        return (self.size(), self.encoding())


def encode_tree(t):
    if t is None:
        return (-1,)
    if is_leaf(t):
        return (0, t)
    return (1, t[0], tuple(encode_tree(c) for c in t[1:]))


def make_term(n: int, F: Sequence, G: Sequence, signs: dict[int, int] | Sequence[int],
              do_prune: bool = True) -> Term:
    """Build a term from arbitrary hashable wire ids; wires are renumbered in F order."""
    if do_prune:
        F = [prune_any(t) for t in F]
        G = [prune_any(t) for t in G]
    order = [w for t in F for w in leaves_any(t)]
    ren = {w: i for i, w in enumerate(order)}
    g_wires = [w for t in G for w in leaves_any(t)]
    if len(ren) != len(order) or len(set(g_wires)) != len(g_wires) or set(g_wires) != set(ren):
        raise TermError("F and G leaves do not match")
    if not isinstance(signs, dict):
        signs = dict(enumerate(signs))
    F2 = tuple(substitute_any(t, lambda w: ren[w]) for t in F)
    G2 = tuple(substitute_any(t, lambda w: ren[w]) for t in G)
    eps = tuple(signs[w] for w in order)
    return Term(n, F2, G2, eps)


# composite wire ids must not be tuples, since tuples are vertices
class W:
    """Wrapper for a composite wire id."""

    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, W) and self.key == other.key

    def __repr__(self):
        return f"W{self.key!r}"


def leaves_any(t) -> list:
    if t is None:
        return []
    if not isinstance(t, tuple):
        return [t]
    out = []
    for c in t[1:]:
        out.extend(leaves_any(c))
    return out


def substitute_any(t, fn):
    if t is None:
        return None
    if not isinstance(t, tuple):
        return fn(t)
    return (t[0], *(substitute_any(c, fn) for c in t[1:]))


def prune_any(t):
    if t is None or not isinstance(t, tuple):
        return t
    kids = [k for k in (prune_any(c) for c in t[1:]) if k is not None]
    if not kids:
        return None
    if len(kids) == 1:
        return kids[0]
    return (t[0], *kids)


def zero_term(n: int, ny: int, nx: int) -> Term:
    return Term(n, (None,) * ny, (None,) * nx, ())


def comb(label: int, wires: Sequence):
    wires = list(wires)
    if not wires:
        return None
    if len(wires) == 1:
        return wires[0]
    return (label, *wires)


def term_from_integer(k: int, n: int = 1, label: int = 1) -> Term:
    """``k`` as a |k|-leaf comb against a |k|-leaf comb, all signs ``sign(k)``."""
    if k == 0:
        return zero_term(n, 1, 1)
    m = abs(k)
    s = 1 if k > 0 else -1
    return Term(n, (comb(label, range(m)),), (comb(label, range(m)),), (s,) * m)


def generator(i: int, n: int) -> Term:
    """``delta_i`` in degree ``[1] <- [2]``."""
    return Term(n, ((i, 0, 1),), (0, 1), (1, 1))


def identity_term(n: int, size: int) -> Term:
    return Term(n, tuple(range(size)), tuple(range(size)), (1,) * size)


def partial_bijection_term(n: int, pairs: Sequence[tuple[int, int]], source: int, target: int) -> Term:
    """The matrix of a partial bijection ``[source] -> [target]`` (rows ``target``)."""
    F: list = [None] * target
    G: list = [None] * source
    for w, (x, y) in enumerate(sorted(pairs, key=lambda p: p[1])):
        F[y] = w
        G[x] = w
    return make_term(n, F, G, {w: 1 for w in range(len(pairs))})


def term_transpose(t: Term) -> Term:
    return make_term(t.n, t.G, t.F, t.eps, do_prune=False)


def term_relabel(g: Sequence[int], t: Term) -> Term:
    """Apply the permutation ``i -> g[i-1]`` of ``1..n`` to every label."""
    if sorted(g) != list(range(1, t.n + 1)):
        raise TermError(f"{list(g)} is not a permutation of 1..{t.n}")
    fn = lambda i: g[i - 1]  # noqa: E731
    return Term(t.n, tuple(relabel_tree(x, fn) for x in t.F),
                tuple(relabel_tree(x, fn) for x in t.G), t.eps)


def _shift(t, k: int):
    return substitute(t, lambda w: w + k)


def term_add_i(i: int, t1: Term, t2: Term) -> Term:
    """Join both forests index-wise under new label-``i`` vertices."""
    if t1.shape != t2.shape or t1.n != t2.n:
        raise TermError(f"shape mismatch {t1.shape} vs {t2.shape}")
    if not 1 <= i <= t1.n:
        raise TermError(f"factor index {i} outside 1..{t1.n}")
    k = t1.wires
    F = [prune((i, a, _shift(b, k))) if a is not None and b is not None else
         (a if b is None else _shift(b, k)) for a, b in zip(t1.F, t2.F)]
    G = [prune((i, a, _shift(b, k))) if a is not None and b is not None else
         (a if b is None else _shift(b, k)) for a, b in zip(t1.G, t2.G)]
    return make_term(t1.n, F, G, t1.eps + t2.eps, do_prune=False)


def term_direct_sum(t1: Term, t2: Term) -> Term:
    if t1.n != t2.n:
        raise TermError("different numbers of tensor factors")
    k = t1.wires
    F = list(t1.F) + [_shift(b, k) for b in t2.F]
    G = list(t1.G) + [_shift(b, k) for b in t2.G]
    return make_term(t1.n, F, G, t1.eps + t2.eps, do_prune=False)


def term_multiply(t1: Term, t2: Term) -> Term:
    """Grafting product: ``t1`` over ``Y x X`` times ``t2`` over ``X x Z``.

    Each F-leaf ``w`` of ``t1`` is replaced by a copy of ``t2.F`` at the G-root of
    ``w``; each G-leaf ``m`` of ``t2`` by a copy of ``t1.G`` at the F-root of ``m``.
    The new wire ``(w, m)`` has sign ``eps(w) * eps'(m)``.
    """
    if t1.n != t2.n:
        raise TermError("different numbers of tensor factors")
    if t1.nx != t2.ny:
        raise TermError(f"cannot multiply {t1.shape} by {t2.shape}")
    groot1 = t1.g_root()
    froot2 = t2.f_root()
    F = [prune_any(substitute_any(
        t, lambda w: substitute_any(t2.F[groot1[w]], lambda m, w=w: W((w, m))))) for t in t1.F]
    G = [prune_any(substitute_any(
        t, lambda m: substitute_any(t1.G[froot2[m]], lambda w, m=m: W((w, m))))) for t in t2.G]
    signs = {W((w, m)): t1.eps[w] * t2.eps[m]
             for w in range(t1.wires) for m in range(t2.wires) if groot1[w] == froot2[m]}
    return make_term(t1.n, F, G, signs, do_prune=False)


def term_eval_collapse(t: Term) -> list[list[int]]:
    """Integer ``Y x X`` matrix: signed count of wires from ``F_y`` to ``G_x``."""
    out = [[0] * t.nx for _ in range(t.ny)]
    fr, gr = t.f_root(), t.g_root()
    for w, e in enumerate(t.eps):
        out[fr[w]][gr[w]] += e
    return out


def matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    nz = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(nz)]
            for i in range(len(a))]


# --- random terms -------------------------------------------------------------


def random_term(rng: random.Random, n: int, ny: int, nx: int, depth: int = 2) -> Term:
    """Random term built from generators, integers, sums, products and transposes."""
    if depth <= 0 or rng.random() < 0.3:
        return _random_base(rng, n, ny, nx)
    kind = rng.choice(("add", "mul", "transpose", "base"))
    if kind == "add":
        i = rng.randint(1, n)
        return term_add_i(i, random_term(rng, n, ny, nx, depth - 1),
                          random_term(rng, n, ny, nx, depth - 1))
    if kind == "mul":
        mid = rng.randint(1, 3)
        return term_multiply(random_term(rng, n, ny, mid, depth - 1),
                             random_term(rng, n, mid, nx, depth - 1))
    if kind == "transpose":
        return term_transpose(random_term(rng, n, nx, ny, depth - 1))
    return _random_base(rng, n, ny, nx)


def _random_base(rng, n, ny, nx) -> Term:
    F: list = [None] * ny
    G: list = [None] * nx
    signs = {}
    w = 0
    groups_f: list[list[int]] = [[] for _ in range(ny)]
    groups_g: list[list[int]] = [[] for _ in range(nx)]
    for y in range(ny):
        for x in range(nx):
            for _ in range(rng.randint(0, 2)):
                groups_f[y].append(w)
                groups_g[x].append(w)
                signs[w] = rng.choice((1, -1))
                w += 1
    for y in range(ny):
        F[y] = _random_tree(rng, n, groups_f[y])
    for x in range(nx):
        G[x] = _random_tree(rng, n, groups_g[x])
    return make_term(n, F, G, signs)


def _random_tree(rng, n, wires):
    wires = list(wires)
    rng.shuffle(wires)
    if not wires:
        return None
    if len(wires) == 1:
        return wires[0]
    if len(wires) == 2 or rng.random() < 0.4:
        return (rng.randint(1, n), *wires)
    cut = rng.randint(1, len(wires) - 1)
    return (rng.randint(1, n), _random_tree(rng, n, wires[:cut]), _random_tree(rng, n, wires[cut:]))


# --- file format --------------------------------------------------------------


def _tree_to_json(t):
    if t is None:
        return None
    if is_leaf(t):
        return "leaf"
    return {"label": t[0], "children": [_tree_to_json(c) for c in t[1:]]}


def term_to_json(t: Term) -> dict:
    g_order = [w for x in t.G for w in leaves(x)]
    g_pos = {w: j for j, w in enumerate(g_order)}
    return {
        "n": t.n, "Y": t.ny, "X": t.nx,
        "F": [_tree_to_json(x) for x in t.F],
        "G": [_tree_to_json(x) for x in t.G],
        "sigma": [[w, g_pos[w]] for w in range(t.wires)],
        "eps": list(t.eps),
        "zero": t.zero,
    }


def _tree_from_json(obj, counter: list[int]):
    if obj is None:
        return None
    if obj == "leaf":
        counter[0] += 1
        return counter[0] - 1
    if not isinstance(obj, dict) or "children" not in obj:
        raise TermError(f"malformed tree {obj!r}")
    kids = [_tree_from_json(c, counter) for c in obj["children"]]
    if any(k is None for k in kids):
        raise TermError("null subtree below a vertex")
    return (int(obj["label"]), *kids)


def term_from_json(d: dict, do_prune: bool = True) -> Term:
    """Parse the file format; unary vertices are accepted and elided when ``do_prune``."""
    try:
        n, ny, nx = int(d["n"]), int(d["Y"]), int(d["X"])
        fc, gc = [0], [0]
        F = [_tree_from_json(x, fc) for x in d["F"]]
        G = [_tree_from_json(x, gc) for x in d["G"]]
        if len(F) != ny or len(G) != nx:
            raise TermError("forest sizes disagree with Y and X")
        sigma = {int(a): int(b) for a, b in d.get("sigma", [])}
        eps = [int(e) for e in d.get("eps", [])]
    except (KeyError, TypeError) as exc:
        raise TermError(f"malformed term: {exc}") from exc
    if fc[0] != gc[0] or len(sigma) != fc[0] or sorted(sigma.values()) != list(range(gc[0])):
        raise TermError("sigma is not a bijection between the leaves of F and G")
    if len(eps) != fc[0]:
        raise TermError("one sign per leaf of F required")
    if d.get("zero") and fc[0]:
        raise TermError("zero flag set on a term with leaves")
    inv = {g: f for f, g in sigma.items()}
    G = [substitute(x, lambda j: inv[j]) for x in G]
    if do_prune:
        return make_term(n, F, G, dict(enumerate(eps)))
    return Term(n, tuple(F), tuple(G), tuple(eps))


def term_dumps(t: Term) -> str:
    return json.dumps(term_to_json(t))


def term_loads(s: str) -> Term:
    return term_from_json(json.loads(s))
