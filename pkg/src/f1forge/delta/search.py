"""Equality search between terms and the collapse of the two tensor factors."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .rules import BudgetExhausted, RuleSet, canonicalize, interchange_tree, normalize_trace, rewrites
from .term import (Term, TermError, generator, partial_bijection_term, term_direct_sum,
                   term_eval_collapse, term_multiply, term_to_json)


@dataclass
class EqualityResult:
    equal: bool
    reason: str
    trace: list[tuple[str, Term]] = field(default_factory=list)
    explored: int = 0

    @property
    def verdict(self) -> str:
        return "equal" if self.equal else "not-identified"


def _normal(t: Term, rules: RuleSet, budget: int):
    try:
        return normalize_trace(t, rules, budget)
    except BudgetExhausted as exc:
        return exc.partial, []


def term_equal(t1: Term, t2: Term, rules: RuleSet | None = None, budget: int = 10_000) -> EqualityResult:
    """Sound but incomplete: ``equal`` only when a chain of rule applications joins the terms."""
    rules = rules or RuleSet.base()
    if t1.n != t2.n or t1.shape != t2.shape:
        raise TermError(f"cannot compare terms of shapes {t1.shape} and {t2.shape}")
    if term_eval_collapse(t1) != term_eval_collapse(t2):
        return EqualityResult(False, "collapsed matrices differ")
    n1, tr1 = _normal(t1, rules, budget)
    n2, tr2 = _normal(t2, rules, budget)
    if n1 == n2:
        return EqualityResult(True, "normal forms coincide", [("start", t1)] + tr1 + _reverse(tr2, t2))
    path = _bidirectional(n1, n2, rules, budget)
    if path is None:
        return EqualityResult(False, f"no join within {budget} states", explored=budget)
    steps, explored = path
    return EqualityResult(True, "joined by search", [("start", t1)] + tr1 + steps + _reverse(tr2, t2),
                          explored)


def _reverse(steps: list[tuple[str, Term]], origin: Term) -> list[tuple[str, Term]]:
    """Steps ``origin -> ... -> nf`` read backwards from ``nf``."""
    terms = [origin] + [s for _, s in steps]
    out = []
    for k in range(len(steps) - 1, -1, -1):
        out.append((steps[k][0] + " (reversed)", terms[k]))
    return out


def _bidirectional(a: Term, b: Term, rules: RuleSet, budget: int):
    parents = ({a: None}, {b: None})
    queues = (deque([a]), deque([b]))
    explored = 2
    side = 0
    while queues[0] or queues[1]:
        if not queues[side]:
            side = 1 - side
        cur = queues[side].popleft()
        for name, nxt in rewrites(cur, rules):
            nxt = canonicalize(nxt) if rules.iso_canonical else nxt
            if nxt in parents[side]:
                continue
            parents[side][nxt] = (cur, name)
            if nxt in parents[1 - side]:
                return _join(nxt, parents), explored
            explored += 1
            if explored >= budget:
                return None
            queues[side].append(nxt)
        side = 1 - side
    return None


def _chain(meet, par):
    out = []
    node = meet
    while par[node] is not None:
        prev, name = par[node]
        out.append((name, node))
        node = prev
    out.reverse()
    return out


def _join(meet, parents):
    forward = _chain(meet, parents[0])
    tail = [(name + " (reversed)", parents[1][node][0])
            for name, node in reversed(_chain(meet, parents[1]))]
    return forward + tail


@dataclass
class DurovResult:
    equal: bool
    base_verdict: str
    steps: list[dict]
    search: EqualityResult

    def lines(self) -> list[str]:
        return [f"{i + 1}. {s['rule']}: {s['claim']} [{'ok' if s['ok'] else 'FAILED'}]"
                for i, s in enumerate(self.steps)]


def _pow(t: Term, k: int) -> Term:
    out = t
    for _ in range(k - 1):
        out = term_direct_sum(out, t)
    return out


def durov_check(budget: int = 10_000, n: int = 2) -> DurovResult:
    """Show ``delta_1 = delta_2`` once total commutativity is allowed.

    Replays the argument: interchange ``delta_1 |> (delta_2, delta_2)`` into
    ``delta_2 |> (delta_1, delta_1)`` (up to the reindexing of the four leaves),
    restrict both to the middle two leaves, and tidy up with the unit rule.
    """
    total = RuleSet.with_total()
    base = RuleSet.base()
    d1, d2 = generator(1, n), generator(min(2, n), n)
    steps = []
    if n == 1:
        res = term_equal(d1, d2, base, budget)
        steps.append({"rule": "iso-canonical", "claim": "delta_1 = delta_1", "ok": res.equal})
        return DurovResult(res.equal, res.verdict, steps, res)

    left = term_multiply(d1, _pow(d2, 2))
    right = term_multiply(d2, _pow(d1, 2))
    # leaf (a, b) of the left product is leaf (b, a) of the right one
    swap = partial_bijection_term(n, [(0, 0), (1, 2), (2, 1), (3, 3)], 4, 4)
    right_re = term_multiply(right, swap)
    root = left.F[0]
    moved = interchange_tree(root, 2, diagonal=False)
    interchanged = canonicalize(Term(n, (moved,), left.G, left.eps))
    ok1 = interchanged == canonicalize(right_re)
    steps.append({"rule": "total-commutativity",
                  "claim": "delta_1 |> (delta_2 (+) delta_2) = (delta_2 |> (delta_1 (+) delta_1)) o swap",
                  "ok": ok1})

    middle = partial_bijection_term(n, [(0, 1), (1, 2)], 2, 4)
    r_left = term_multiply(left, middle)
    r_right = term_multiply(right_re, middle)
    steps.append({"rule": "restriction",
                  "claim": "restrict both sides to leaves x2, x3",
                  "ok": term_eval_collapse(r_left) == term_eval_collapse(r_right) == [[1, 1]]})

    nl = _normal(r_left, base, budget)[0]
    nr = _normal(r_right, base, budget)[0]
    ok3 = nl == canonicalize(d1) and nr == canonicalize(d2)
    steps.append({"rule": "delta-unit + iso-canonical",
                  "claim": "left restriction is delta_1, right restriction is delta_2",
                  "ok": ok3})

    search = term_equal(d1, d2, total, budget)
    steps.append({"rule": "search", "claim": f"term_equal(delta_1, delta_2) with total commutativity: "
                  f"{search.verdict} in {len(search.trace)} steps", "ok": search.equal})
    base_res = term_equal(d1, d2, base, budget)
    equal = ok1 and steps[1]["ok"] and ok3 and search.equal
    return DurovResult(equal, base_res.verdict, steps, search)


def trace_to_json(trace: list[tuple[str, Term]]) -> list[dict]:
    return [{"rule": name, "term": term_to_json(t)} for name, t in trace]
