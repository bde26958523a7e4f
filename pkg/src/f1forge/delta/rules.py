"""Rewrite rules on tree-pair terms and a terminating normalizer.

Every rule keeps each surviving wire attached to the same pair of roots, except
cancellation, which removes two wires of opposite sign joining the same roots.
So the collapse to integer matrices is invariant under all of them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, fields
from typing import Iterator

from .term import (W, Term, encode_tree, is_leaf, leaves, make_term, prune, prune_any,
                   substitute_any)


class BudgetExhausted(RuntimeError):
    def __init__(self, partial: Term, steps: int):
        super().__init__(f"rule budget exhausted after {steps} steps")
        self.partial = partial
        self.steps = steps


@dataclass(frozen=True)
class RuleSet:
    delta_unit: bool = True
    iso_canonical: bool = True
    delta_assoc: bool = True
    cancellation: bool = True
    commutativity_move: bool = True
    total_commutativity: bool = False

    @classmethod
    def base(cls) -> "RuleSet":
        return cls()

    @classmethod
    def with_total(cls) -> "RuleSet":
        return cls(total_commutativity=True)

    def enabled(self) -> list[str]:
        return [f.name for f in fields(self) if getattr(self, f.name)]


# --- tree positions -----------------------------------------------------------


def iter_vertices(t, path=()):
    """``(path, subtree)`` for every internal vertex, preorder."""
    if t is None or is_leaf(t):
        return
    yield path, t
    for k, c in enumerate(t[1:]):
        yield from iter_vertices(c, path + (k,))


def replace_at(t, path, new):
    if not path:
        return new
    k = path[0]
    kids = list(t[1:])
    kids[k] = replace_at(kids[k], path[1:], new)
    return (t[0], *kids)


def _with_side(t: Term, side: str, idx: int, tree) -> Term:
    F, G = list(t.F), list(t.G)
    (F if side == "F" else G)[idx] = tree
    return make_term(t.n, F, G, t.eps)


def _forests(t: Term):
    for y, tree in enumerate(t.F):
        yield "F", y, tree
    for x, tree in enumerate(t.G):
        yield "G", x, tree


# --- individual rules ---------------------------------------------------------


def has_unary(t) -> bool:
    if t is None or is_leaf(t):
        return False
    return len(t) == 2 or any(has_unary(c) for c in t[1:])


def delta_unit(t: Term) -> list[Term]:
    if not any(has_unary(x) for x in (*t.F, *t.G)):
        return []
    return [make_term(t.n, t.F, t.G, t.eps)]


def assoc_sites(t: Term) -> list[Term]:
    out = []
    for side, idx, tree in _forests(t):
        for path, v in iter_vertices(tree):
            for k, c in enumerate(v[1:]):
                if not is_leaf(c) and c[0] == v[0]:
                    kids = list(v[1:k + 1]) + list(c[1:]) + list(v[k + 2:])
                    out.append(_with_side(t, side, idx, replace_at(tree, path, (v[0], *kids))))
    return out


def flatten(tree):
    if tree is None or is_leaf(tree):
        return tree
    kids = []
    for c in tree[1:]:
        c = flatten(c)
        if not is_leaf(c) and c[0] == tree[0]:
            kids.extend(c[1:])
        else:
            kids.append(c)
    return (tree[0], *kids)


def leaf_parents(tree) -> dict[int, tuple]:
    """Wire -> (path of parent vertex, label) for leaves below a vertex."""
    out = {}
    for path, v in iter_vertices(tree):
        for c in v[1:]:
            if is_leaf(c):
                out[c] = (path, v[0])
    return out


def cancellation_sites(t: Term) -> list[Term]:
    g_parent = {}
    for x, tree in enumerate(t.G):
        for w, (path, lab) in leaf_parents(tree).items():
            g_parent[w] = (x, path, lab)
    out = []
    seen = set()
    for tree in t.F:
        for _, v in iter_vertices(tree):
            kids = [c for c in v[1:] if is_leaf(c)]
            for a in range(len(kids)):
                for b in range(a + 1, len(kids)):
                    w1, w2 = kids[a], kids[b]
                    if t.eps[w1] == t.eps[w2] or w1 not in g_parent or w2 not in g_parent:
                        continue
                    p1, p2 = g_parent[w1], g_parent[w2]
                    if p1[:2] != p2[:2] or p1[2] != v[0]:
                        continue
                    key = (min(w1, w2), max(w1, w2))
                    if key not in seen:
                        seen.add(key)
                        out.append(remove_wires(t, {w1, w2}))
    return out


def remove_wires(t: Term, dead: set[int]) -> Term:
    def kill(w):
        return None if w in dead else w

    F = [prune_any(substitute_any(x, kill)) for x in t.F]
    G = [prune_any(substitute_any(x, kill)) for x in t.G]
    signs = {w: e for w, e in enumerate(t.eps) if w not in dead}
    return make_term(t.n, F, G, signs)


# --- canonical form -----------------------------------------------------------


def _rank(values: list) -> list[int]:
    table = {v: i for i, v in enumerate(sorted(set(values)))}
    return [table[v] for v in values]


def _enc(tree, colour):
    if tree is None:
        return (-1,)
    if is_leaf(tree):
        return (0, colour[tree])
    return (1, tree[0], tuple(sorted(_enc(c, colour) for c in tree[1:])))


def _contexts(forest, colour, nw):
    ctx = [None] * nw

    def walk(tree, root, above):
        if is_leaf(tree):
            ctx[tree] = (root, above)
            return
        here = above + ((tree[0], _enc(tree, colour)),)
        for c in tree[1:]:
            walk(c, root, here)

    for r, tree in enumerate(forest):
        if tree is not None:
            walk(tree, r, ())
    return ctx


def _sorted_tree(tree, colour, tiebreak=None):
    if tree is None or is_leaf(tree):
        return tree
    kids = [_sorted_tree(c, colour, tiebreak) for c in tree[1:]]
    keyed = [(_enc(c, colour), tiebreak(c) if tiebreak else 0, k, c) for k, c in enumerate(kids)]
    keyed.sort(key=lambda e: e[:3])
    return (tree[0], *(e[3] for e in keyed))


def canonicalize(t: Term) -> Term:
    """Order children by a colour-refined encoding and renumber wires.

    Colours start from the signs and are refined by each wire's root and ancestor
    chain in both forests until the partition is stable. Remaining ties keep the
    current order, so the result is a reordering of ``t``, not a full invariant.
    """
    nw = t.wires
    if nw == 0:
        return t
    colour = _rank(list(t.eps))
    for _ in range(nw + 1):
        cf = _contexts(t.F, colour, nw)
        cg = _contexts(t.G, colour, nw)
        new = _rank([(colour[w], cf[w], cg[w]) for w in range(nw)])
        stable = len(set(new)) == len(set(colour))
        colour = new
        if stable:
            break
    F = [_sorted_tree(x, colour) for x in t.F]
    order = [w for x in F for w in leaves(x)]
    pos = {w: i for i, w in enumerate(order)}
    G = [_sorted_tree(x, colour, lambda c: min(pos[w] for w in leaves(c))) for x in t.G]
    return make_term(t.n, F, G, t.eps, do_prune=False)


# --- commutativity move -------------------------------------------------------


def _shape(tree):
    if is_leaf(tree):
        return "*"
    return (tree[0], *(_shape(c) for c in tree[1:]))


def commutativity_forward(t: Term) -> Term | None:
    """Move a uniform bottom layer of F to the top of G (direction "F-bottom to F-top").

    Pattern: every F-leaf sits in a block, i.e. a label-``i`` vertex whose ``m``
    children are all leaves, and every nonempty ``G_x`` is ``(i, T_1, ..., T_m)``
    with identical shapes ``T_c``, the ``m`` wires of each block occupying one
    common leaf position across the copies. The result carries the copies on the
    F side instead: ``F_y`` becomes ``(i, copy_1, ..., copy_m)`` of the collapsed
    tree and each collapsed G-leaf becomes an ``m``-leaf label-``i`` block.
    """
    blocks: list[tuple[int, tuple, tuple[int, ...]]] = []
    block_of: dict[int, int] = {}
    for y, tree in enumerate(t.F):
        if tree is None:
            continue
        if is_leaf(tree):
            return None
        for path, v in iter_vertices(tree):
            kids = v[1:]
            if all(is_leaf(c) for c in kids):
                for c in kids:
                    block_of[c] = len(blocks)
                blocks.append((y, path, tuple(kids)))
    if not blocks or len(block_of) != t.wires:
        return None
    labs = {t_label(t.F[y], path) for y, path, _ in blocks}
    arities = {len(k) for _, _, k in blocks}
    if len(labs) != 1 or len(arities) != 1:
        return None
    (i,), (m,) = labs, arities
    if m < 2:
        return None
    # G side: copy index and leaf position of every wire
    copy_of: dict[int, tuple[int, int, int]] = {}
    collapsed_g: dict[int, object] = {}
    for x, tree in enumerate(t.G):
        if tree is None:
            continue
        if is_leaf(tree) or tree[0] != i or len(tree) - 1 != m:
            return None
        copies = tree[1:]
        shapes = {_shape(c) for c in copies}
        if len(shapes) != 1:
            return None
        for c, sub in enumerate(copies):
            for p, w in enumerate(leaves(sub)):
                copy_of[w] = (x, c, p)
        first = copies[0]
        collapsed_g[x] = substitute_any(first, lambda w: W(("b", block_of[w])))
    wire_at: dict[tuple[int, int], int] = {}
    for b, (_, _, kids) in enumerate(blocks):
        places = [copy_of[w] for w in kids]
        if len({(x, p) for x, _, p in places}) != 1 or sorted(c for _, c, _ in places) != list(range(m)):
            return None
        for w, (_, c, _) in zip(kids, places):
            wire_at[(b, c)] = w
    # leaf positions must line up block-wise across copies
    for x, tree in enumerate(t.G):
        if tree is None:
            continue
        base = [block_of[w] for w in leaves(tree[1])]
        for sub in tree[2:]:
            if [block_of[w] for w in leaves(sub)] != base:
                return None
    # signs must factor as (block sign) x (copy sign)
    s0 = [t.eps[wire_at[(0, c)]] * t.eps[wire_at[(0, 0)]] for c in range(m)]
    for b in range(len(blocks)):
        if [t.eps[wire_at[(b, c)]] * t.eps[wire_at[(b, 0)]] for c in range(m)] != s0:
            return None
    collapsed_f = []
    for y, tree in enumerate(t.F):
        for b, (yy, path, _) in enumerate(blocks):
            if yy == y:
                tree = replace_at(tree, path, W(("b", b)))
        collapsed_f.append(tree)
    F = [None if tree is None else
         (i, *(substitute_any(tree, lambda bw, c=c: W((bw.key[1], c))) for c in range(m)))
         for tree in collapsed_f]
    G = [None] * t.nx
    for x, tree in collapsed_g.items():
        G[x] = substitute_any(tree, lambda bw: (i, *(W((bw.key[1], c)) for c in range(m))))
    signs = {W((b, c)): t.eps[w] for (b, c), w in wire_at.items()}
    return make_term(t.n, F, G, signs)


def t_label(tree, path):
    for k in path:
        tree = tree[1 + k]
    return tree[0]


def commutativity_backward(t: Term) -> Term | None:
    from .term import term_transpose

    moved = commutativity_forward(term_transpose(t))
    return None if moved is None else term_transpose(moved)


# --- total commutativity: padded grid interchange -----------------------------


def interchange_tree(v, j: int, diagonal: bool):
    """Rewrite ``(i, rows...)`` as ``(j, columns...)``.

    A child labelled ``j`` is a row of its children; any other child is a row
    with one entry, in column 0 or, when ``diagonal``, in its own column. Short
    rows are padded with empty entries, which pruning removes.
    """
    i = v[0]
    if i == j:
        return None
    rows = []
    free = 0
    for c in v[1:]:
        if not is_leaf(c) and c[0] == j:
            rows.append(list(c[1:]))
        else:
            col = free if diagonal else 0
            free += 1
            rows.append([None] * col + [c])
    if not diagonal and all(len(r) == 1 for r in rows):
        return None
    if diagonal and free < 2:
        return None
    k = max(len(r) for r in rows)
    cols = [(i, *(r[q] if q < len(r) else None for r in rows)) for q in range(k)]
    return prune_any((j, *cols))


def interchange_sites(t: Term) -> Iterator[tuple[str, Term]]:
    for side, idx, tree in _forests(t):
        for path, v in iter_vertices(tree):
            for j in range(1, t.n + 1):
                for diagonal in (False, True):
                    new = interchange_tree(v, j, diagonal)
                    if new is not None:
                        yield ("total-commutativity", _with_side(t, side, idx, replace_at(tree, path, new)))


# --- driving ------------------------------------------------------------------


def _families(t: Term, rules: RuleSet) -> list:
    """One lazy generator per enabled rule family."""
    out = []
    if rules.delta_unit:
        out.append(lambda: (("delta-unit", s) for s in delta_unit(t)))
    if rules.delta_assoc:
        out.append(lambda: (("delta-assoc", s) for s in assoc_sites(t)))
    if rules.cancellation:
        out.append(lambda: (("cancellation", s) for s in cancellation_sites(t)))
    if rules.iso_canonical:
        def iso():
            c = canonicalize(t)
            if c != t:
                yield ("iso-canonical", c)
        out.append(iso)
    if rules.commutativity_move:
        def moves():
            for name, fn in (("commutativity", commutativity_forward),
                             ("commutativity-reverse", commutativity_backward)):
                s = fn(t)
                if s is not None:
                    yield (name, s)
        out.append(moves)
    if rules.total_commutativity:
        out.append(lambda: interchange_sites(t))
    return out


def rewrites(t: Term, rules: RuleSet) -> Iterator[tuple[str, Term]]:
    """Every single-rule application enabled by ``rules``."""
    for family in _families(t, rules):
        yield from family()


def random_rewrite(rng: random.Random, t: Term, rules: RuleSet) -> tuple[str, Term] | None:
    """A uniformly chosen site within a randomly chosen applicable rule family."""
    families = _families(t, rules)
    rng.shuffle(families)
    for family in families:
        options = list(family())
        if options:
            return rng.choice(options)
    return None


def normalize_trace(t: Term, rules: RuleSet | None = None, budget: int = 10_000):
    """Deterministic normalization; returns ``(normal form, [(rule, term), ...])``.

    Structural rules run eagerly; the two commutativity rules fire only when they
    strictly decrease the measure (vertex count, then encoding).
    """
    rules = rules or RuleSet.base()
    steps: list[tuple[str, Term]] = []
    cur = t

    def record(name, new):
        nonlocal cur
        steps.append((name, new))
        cur = new
        if len(steps) > budget:
            raise BudgetExhausted(cur, len(steps))

    while True:
        if rules.delta_unit and any(has_unary(x) for x in (*cur.F, *cur.G)):
            record("delta-unit", make_term(cur.n, cur.F, cur.G, cur.eps))
        if rules.delta_assoc:
            F = [flatten(x) for x in cur.F]
            G = [flatten(x) for x in cur.G]
            if tuple(F) != cur.F or tuple(G) != cur.G:
                record("delta-assoc", make_term(cur.n, F, G, cur.eps, do_prune=False))
        if rules.cancellation:
            sites = cancellation_sites(cur)
            if sites:
                record("cancellation", sites[0])
                continue
        if rules.iso_canonical:
            c = canonicalize(cur)
            if c != cur:
                record("iso-canonical", c)
        moved = _best_directed(cur, rules)
        if moved is None:
            return cur, steps
        record(*moved)


def _best_directed(t: Term, rules: RuleSet):
    cands = []
    if rules.commutativity_move:
        for name, fn in (("commutativity", commutativity_forward),
                         ("commutativity-reverse", commutativity_backward)):
            s = fn(t)
            if s is not None:
                cands.append((name, s))
    if rules.total_commutativity:
        cands.extend(interchange_sites(t))
    best = None
    here = t.measure()
    for name, s in cands:
        s = _tidy(s, rules)
        m = s.measure()
        if m < here and (best is None or m < best[1].measure()):
            best = (name, s)
    return best


def _tidy(t: Term, rules: RuleSet) -> Term:
    if rules.delta_assoc:
        t = make_term(t.n, [flatten(x) for x in t.F], [flatten(x) for x in t.G], t.eps,
                      do_prune=False)
    if rules.iso_canonical:
        t = canonicalize(t)
    return t


def term_normalize(t: Term, rules: RuleSet | None = None, budget: int = 10_000) -> Term:
    return normalize_trace(t, rules, budget)[0]


__all__ = [
    "BudgetExhausted", "RuleSet", "canonicalize", "commutativity_forward",
    "commutativity_backward", "interchange_tree", "interchange_sites", "rewrites", "random_rewrite",
    "normalize_trace", "term_normalize", "encode_tree", "prune",
]
