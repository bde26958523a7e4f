"""Command-line front end.

Every subcommand prints one JSON record per line unless ``--human`` is given.
Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
``F1FORGE_SEED`` overrides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("F1FORGE_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"F1FORGE_SEED must be an integer, got {raw!r}") from None


def _clean(obj, precision: int):
    if isinstance(obj, float):
        return float(f"{obj:.{precision}g}")
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _clean(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v, precision) for v in obj]
    return obj


class Out:
    def __init__(self, args):
        self.human = args.human
        self.precision = args.precision

    def record(self, rec: dict, text: str | None = None):
        if self.human:
            print(text if text is not None else
                  "  ".join(f"{k}={v}" for k, v in _clean(rec, self.precision).items()))
        else:
            print(json.dumps(_clean(rec, self.precision), sort_keys=True))

    def lines(self, kind: str, lines: list[str]):
        for ln in lines:
            self.record({"kind": kind, "line": ln}, ln)


# --- zeta ---------------------------------------------------------------------


def cmd_zeta(args, out: Out) -> int:
    from .zeta import DivergentIntegral, zeta_padic, zeta_real

    try:
        if args.place == "padic":
            lf = zeta_padic(args.p, args.s, args.n, args.mode, args.samples, args.seed)
        else:
            lf = zeta_real(args.s, args.n, args.mode, args.samples, args.seed)
    except (DivergentIntegral, ValueError) as exc:
        raise UsageError(str(exc)) from None
    rec = lf.record()
    text = (f"{lf.place} s={lf.s:g} n={lf.n}: value {float(lf.value):.{out.precision}g} "
            f"limit {float(lf.limit):.{out.precision}g}")
    out.record(rec, text)
    return 0


# --- terms --------------------------------------------------------------------


def _load_term(path: str):
    from .delta import term_from_json

    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read term from {path}: {exc}") from None
    try:
        return term_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a valid term: {exc}") from None


def _rules(args):
    from .delta import RuleSet

    return RuleSet.with_total() if getattr(args, "total_comm", False) else RuleSet.base()


def cmd_term(args, out: Out) -> int:
    from .delta import durov_check, term_equal, term_eval_collapse, term_to_json
    from .delta.rules import normalize_trace

    if args.action == "durov":
        res = durov_check(args.budget)
        for i, step in enumerate(res.steps):
            out.record({"step": i + 1, **step}, res.lines()[i])
        trace = [name for name, _ in res.search.trace]
        out.record({"equal": res.equal, "trace": trace, "base_rules": res.base_verdict},
                   f"delta_1 = delta_2: {res.equal}; trace {' -> '.join(trace)}; "
                   f"base rules: {res.base_verdict}")
        return 0 if res.equal else 1
    if args.action == "eval":
        t = _load_term(args.input)
        m = term_eval_collapse(t)
        out.record({"matrix": m}, "\n".join(" ".join(f"{v:>3}" for v in row) for row in m))
        return 0
    if args.action == "reduce":
        t = _load_term(args.input)
        nf, steps = normalize_trace(t, _rules(args), args.budget)
        out.record({"normal_form": term_to_json(nf), "steps": [name for name, _ in steps]},
                   f"{len(steps)} steps: {' -> '.join(n for n, _ in steps) or '(already normal)'}\n"
                   f"{json.dumps(term_to_json(nf))}")
        return 0
    a, b = _load_term(args.left), _load_term(args.right)
    try:
        res = term_equal(a, b, _rules(args), args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.record({"verdict": res.verdict, "reason": res.reason, "trace": [n for n, _ in res.trace]},
               f"{res.verdict} ({res.reason})")
    return 0 if res.equal else 1


# --- differentials ------------------------------------------------------------


def cmd_dlog(args, out: Out) -> int:
    from .differentials import partial_n

    if args.n < 0:
        raise UsageError("n must be a natural number")
    v = partial_n(args.n)
    out.record({"n": args.n, "d": v.format(), "coeffs": {str(p): c for p, c in v.coeffs}}, v.format())
    return 0


def cmd_omega(args, out: Out) -> int:
    from .differentials import PresentationTooLarge, check_identities, truncated_presentation

    if args.action == "present":
        try:
            pres = truncated_presentation(args.bound, args.with_homogeneity)
        except (PresentationTooLarge, ValueError) as exc:
            raise UsageError(str(exc)) from None
        out.record({"bound": pres.bound, "generators": len(pres.generators), "relations": pres.relations,
                    "invariant_factors": pres.factors, "evaluation_kills_relations":
                    pres.evaluation_kills_relations, "evaluation_rank": pres.evaluation_rank},
                   "\n".join(pres.lines()))
        return 0 if pres.evaluation_kills_relations else 1
    try:
        rep = check_identities(args.bound, args.seed, args.trials)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.lines("identity", rep.lines())
    return 0 if rep.passed else 1


# --- axioms -------------------------------------------------------------------


def _ring(name: str):
    from .genring import parse_ring

    try:
        return parse_ring(name)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def cmd_axioms(args, out: Out) -> int:
    from .genring import LAWS, axiom_suite

    A = _ring(args.ring)
    laws = args.laws.split(",") if args.laws else None
    if laws:
        unknown = [x for x in laws if x not in LAWS]
        if unknown:
            raise UsageError(f"unknown laws {unknown}; choose from {sorted(LAWS)}")
    elif not A.totally_commutative:
        laws = [x for x in LAWS if x != "total-commutativity"]
    rep = axiom_suite(A, args.trials, args.seed, laws, args.max_dim)
    for name in rep.checked:
        ok = name not in rep.failures
        rec = {"ring": A.name, "law": name, "passed": ok, "trials": args.trials}
        if not ok:
            rec["witness"] = repr(rep.failures[name])
        out.record(rec, f"{'PASS' if ok else 'FAIL'} {name}")
    return 0 if rep.passed else 1


# --- spectra ------------------------------------------------------------------


def cmd_spec(args, out: Out) -> int:
    from . import spectra

    A = _ring(args.ring)
    try:
        res = spectra.spec_enumerate(A, args.bound, args.cap)
    except spectra.CarrierTooLarge as exc:
        raise UsageError(str(exc)) from None
    index = {p: k for k, p in enumerate(res.primes)}
    out.record({"ring": res.ring, "scalars": len(res.carrier), "ideals": len(res.ideals)},
               f"ring {res.ring}: {len(res.carrier)} scalars, {len(res.ideals)} ideals")
    for p in res.primes:
        out.record({"kind": "prime", "index": index[p], "ideal": sorted(map(res.present, p))},
                   f"prime #{index[p]} {res.show(p)}")
    for p in res.symmetric_primes:
        out.record({"kind": "symmetric-prime", "ideal": sorted(map(res.present, p))},
                   f"symmetric prime {res.show(p)}")
    for ideal in res.ideals:
        pts = sorted(res.closed_sets[ideal])
        out.record({"kind": "closed", "ideal": sorted(map(res.present, ideal)), "points": pts},
                   f"V({res.show(ideal)}) = {pts}")
    for f, pts in res.basic_opens.items():
        out.record({"kind": "basic-open", "f": f, "points": sorted(pts)}, f"D({f}) = {sorted(pts)}")
    mapping, continuous = spectra.pi_projection(A, res, args.bound)
    for p, q in mapping.items():
        out.record({"kind": "pi", "prime": index[p], "image": sorted(map(res.present, q))},
                   f"pi(#{index[p]}) = {res.show(q)}")
    checks = dict(res.checks, **{"pi-continuous": continuous})
    for k, v in checks.items():
        out.record({"kind": "check", "name": k, "passed": v}, f"check {k}: {'ok' if v else 'FAILED'}")
    return 0 if all(checks.values()) else 1


# --- suites -------------------------------------------------------------------


def cmd_suite(args, out: Out) -> int:
    from .acceptance import CRITERIA, run

    names = list(CRITERIA) if args.name == "all" else [args.name]
    results = run(names, args.seed)
    for c in results:
        out.record({"criterion": c.number, "name": c.name, "passed": c.passed,
                    "seconds": round(c.seconds, 3), "details": c.details}, c.line())
    return 0 if all(c.passed for c in results) else 1


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .acceptance import CRITERIA

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="plain text instead of JSON lines")
    common.add_argument("--precision", type=int, default=15, help="significant digits for floats")
    common.add_argument("--seed", type=int, default=None)

    parser = argparse.ArgumentParser(prog="f1forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeta", help="local factors")
    zsub = z.add_subparsers(dest="place", required=True)
    zp = zsub.add_parser("padic", parents=[common])
    zp.add_argument("--p", type=int, required=True)
    zp.add_argument("--s", type=float, required=True)
    zp.add_argument("--n", type=int, required=True)
    zp.add_argument("--mode", choices=["exact", "mc"], default="exact")
    zp.add_argument("--samples", type=int, default=100_000)
    zr = zsub.add_parser("real", parents=[common])
    zr.add_argument("--s", type=float, required=True)
    zr.add_argument("--n", type=int, required=True)
    zr.add_argument("--mode", choices=["closed", "quad", "mc"], default="closed")
    zr.add_argument("--samples", type=int, default=100_000)

    t = sub.add_parser("term", help="term calculus")
    tsub = t.add_subparsers(dest="action", required=True)
    tr = tsub.add_parser("reduce", parents=[common])
    tr.add_argument("--input", required=True)
    tr.add_argument("--total-comm", action="store_true")
    tr.add_argument("--budget", type=int, default=10_000)
    te = tsub.add_parser("eq", parents=[common])
    te.add_argument("left")
    te.add_argument("right")
    te.add_argument("--total-comm", action="store_true")
    te.add_argument("--budget", type=int, default=10_000)
    tv = tsub.add_parser("eval", parents=[common])
    tv.add_argument("input")
    td = tsub.add_parser("durov", parents=[common])
    td.add_argument("--budget", type=int, default=10_000)

    d = sub.add_parser("dlog", parents=[common], help="derivative of a natural number")
    d.add_argument("n", type=int)

    o = sub.add_parser("omega", help="differential module")
    osub = o.add_subparsers(dest="action", required=True)
    op = osub.add_parser("present", parents=[common])
    op.add_argument("--bound", type=int, required=True)
    op.add_argument("--with-homogeneity", "--with-7-12", dest="with_homogeneity", action="store_true")
    oi = osub.add_parser("identities", parents=[common])
    oi.add_argument("--bound", type=int, default=200)
    oi.add_argument("--trials", type=int, default=1000)

    a = sub.add_parser("axioms", help="axiom suite")
    asub = a.add_subparsers(dest="action", required=True)
    ac = asub.add_parser("check", parents=[common])
    ac.add_argument("--ring", required=True)
    ac.add_argument("--trials", type=int, default=1000)
    ac.add_argument("--laws", default=None, help="comma-separated subset")
    ac.add_argument("--max-dim", type=int, default=4)

    s = sub.add_parser("spec", help="ideals and primes")
    ssub = s.add_subparsers(dest="action", required=True)
    se = ssub.add_parser("enumerate", parents=[common])
    se.add_argument("--ring", required=True)
    se.add_argument("--bound", type=int, default=2)
    se.add_argument("--cap", type=int, default=256)

    u = sub.add_parser("suite", parents=[common], help="acceptance criteria")
    u.add_argument("name", choices=["all", *CRITERIA])
    return parser


COMMANDS = {"zeta": cmd_zeta, "term": cmd_term, "dlog": cmd_dlog, "omega": cmd_omega,
            "axioms": cmd_axioms, "spec": cmd_spec, "suite": cmd_suite}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        return COMMANDS[args.command](args, Out(args))
    except UsageError as exc:
        print(f"f1forge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
