"""Acceptance criteria as runnable checks; each returns a ``Criterion``."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import differentials as dif
from . import norms
from . import spectra
from .delta import (RuleSet, durov_check, random_term, term_add_i, term_eval_collapse,
                    term_from_integer, term_multiply, term_normalize, term_transpose)
from .delta.rules import random_rewrite
from .genring import (FIELD_WITH_ONE_ELEMENT, GRing, UnderlyingGenRing, axiom_suite,
                      check_homomorphism, cyclic_monoid, make_FM)
from .rigs import INT, get_rig
from .zeta import zeta_padic_exact, zeta_padic_mc, zeta_real_closed, zeta_real_quadrature


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    seconds: float = 0.0
    limit: float = 0.0
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.number}. {self.name} ({self.seconds:.2f}s, limit {self.limit:.0f}s)"


def _timed(number: int, name: str, limit: float, body: Callable[[list[str]], bool]) -> Criterion:
    details: list[str] = []
    t0 = time.perf_counter()
    ok = body(details)
    dt = time.perf_counter() - t0
    if dt > limit:
        details.append(f"runtime {dt:.2f}s exceeds {limit}s")
        ok = False
    return Criterion(number, name, bool(ok), dt, limit, details)


def padic_limit_check(seed: int = 0) -> Criterion:
    def body(out):
        ok = True
        for p in (2, 3, 5):
            for s in (2, 3, 4):
                lim = (1 - Fraction(1, p)) / (1 - Fraction(p) ** -s)
                errs = [abs(zeta_padic_exact(p, s, n) - lim) for n in range(1, 13)]
                mono = all(b < a for a, b in zip(errs, errs[1:]))
                close = errs[-1] < Fraction(1, 100)
                out.append(f"p={p} s={s}: |L12 - limit| = {float(errs[-1]):.3e}, monotone={mono}")
                ok &= mono and close
        return ok
    return _timed(1, "p-adic local factor tends to its limit", 5, body)


def padic_mc_check(seed: int = 0, samples: int = 1_000_000) -> Criterion:
    def body(out):
        exact = float(zeta_padic_exact(2, 2, 8))
        mean, se = zeta_padic_mc(2, 2, 8, samples, seed)
        z = abs(mean - exact) / se
        out.append(f"exact={exact:.6f} mc={mean:.6f} se={se:.2e} z={z:.2f}")
        return z < 4
    return _timed(2, "p-adic exact value matches Monte Carlo", 60, body)


def real_zeta_check(seed: int = 0) -> Criterion:
    def body(out):
        ok = True
        for n in (2, 10, 100, 1000):
            v = zeta_real_closed(3, n)
            ok &= abs(v - 1) < 1e-9
            out.append(f"s=3 n={n}: {v:.12f}")
        v = zeta_real_closed(2, 10_000)
        target = math.sqrt(2 / math.pi)
        ok &= abs(v - target) < 1e-3
        out.append(f"s=2 n=10000: {v:.6f} vs {target:.6f}")
        worst = 0.0
        for s in (1.5, 2, 3, 4):
            for n in (2, 10, 100):
                c, q = zeta_real_closed(s, n), zeta_real_quadrature(s, n)
                worst = max(worst, abs(c - q) / abs(c))
        out.append(f"closed vs quadrature worst relative gap {worst:.2e}")
        return ok and worst < 1e-9
    return _timed(3, "real local factor closed form", 10, body)


def axioms_check(seed: int = 0, trials: int = 1000) -> Criterion:
    laws = ["associativity", "unit", "duality-mul", "duality-contract", "commutativity",
            "pullback-commutativity", "total-commutativity"]

    def body(out):
        ok = True
        for name in ("nat", "int", "zmod:6", "bool-max", "trop-max"):
            rep = axiom_suite(GRing(get_rig(name)), trials, seed, laws, max_dim=4)
            out.append(f"G({name}): {'pass' if rep.passed else rep.failures}")
            ok &= rep.passed
            r = get_rig(name)
            G, U = GRing(r), UnderlyingGenRing(r)
            there = check_homomorphism(lambda a: U._row(a), G, U, trials, seed, max_dim=4)
            back = check_homomorphism(lambda m: m.data[0], U, G, trials, seed,
                                      max_dim=4)
            out.append(f"U(F({name})) ~ G({name}): {there.passed and back.passed}")
            ok &= there.passed and back.passed
        return ok
    return _timed(4, "generalized-ring axioms", 30, body)


def delta_soundness_check(seed: int = 0, rewrites: int = 10_000) -> Criterion:
    def body(out):
        rng = random.Random(seed)
        rules = RuleSet.with_total()
        done = 0
        bad = 0
        while done < rewrites:
            n = rng.randint(1, 3)
            t = random_term(rng, n, rng.randint(1, 2), rng.randint(1, 2), depth=2)
            for _ in range(5):
                step = random_rewrite(rng, t, rules)
                if step is None:
                    break
                nxt = step[1]
                if term_eval_collapse(nxt) != term_eval_collapse(t):
                    bad += 1
                t = nxt
                done += 1
        out.append(f"{done} random rewrites, {bad} changed the collapsed matrix")
        model_ok = True
        for k in range(-20, 21):
            tk = term_from_integer(k)
            if term_eval_collapse(term_transpose(tk)) != [[k]]:
                model_ok = False
            for m in range(-20, 21):
                tm = term_from_integer(m)
                if term_eval_collapse(term_add_i(1, tk, tm)) != [[k + m]]:
                    model_ok = False
                if term_eval_collapse(term_multiply(tk, tm)) != [[k * m]]:
                    model_ok = False
            if k and not term_normalize(term_add_i(1, tk, term_from_integer(-k))).zero:
                model_ok = False
        out.append(f"integer model for |k| <= 20: {model_ok}")
        return bad == 0 and model_ok
    return _timed(5, "term calculus soundness", 30, body)


def durov_collapse_check(seed: int = 0, budget: int = 10_000) -> Criterion:
    def body(out):
        res = durov_check(budget)
        out.extend(res.lines())
        out.append(f"trace length {len(res.search.trace)}; base rules: {res.base_verdict}")
        return res.equal and len(res.search.trace) <= 10 and res.base_verdict == "not-identified"
    return _timed(6, "collapse of the two tensor factors", 10, body)


def differentials_check(seed: int = 0) -> Criterion:
    def body(out):
        rep = dif.check_identities(bound=500, seed=seed, trials=1000, leibniz_bound=500, sum_bound=10_000)
        out.extend(rep.lines())
        pres = dif.truncated_presentation(12)
        out.extend(pres.lines())
        return rep.passed and pres.evaluation_kills_relations
    return _timed(7, "differentials of the naturals", 20, body)


def spectra_check(seed: int = 0, max_size: int = 12) -> Criterion:
    def body(out):
        ok = True
        for r in spectra.finite_test_rings(max_size):
            res = spectra.spec_enumerate(GRing(r))
            got = sorted(sorted(a[0] for a in p) for p in res.primes)
            want = sorted(sorted(p) for p in spectra.ordinary_primes(r))
            same = got == want and all(res.checks.values())
            ok &= same
            if not same:
                out.append(f"{r.name}: mismatch")
        out.append(f"finite rings up to {max_size} elements: {ok}")
        for A in (FIELD_WITH_ONE_ELEMENT, make_FM(cyclic_monoid(2))):
            res = spectra.spec_enumerate(A)
            zero = spectra.ideal_generate(A, ())
            single = res.primes == [zero]
            out.append(f"spec({A.name}) = {{(0)}}: {single}")
            ok &= single
        loc = spectra.localize(GRing(INT), invert=[2])
        hom = check_homomorphism(loc.phi, GRing(INT), loc.ring, 200, seed).passed
        out.append(f"{loc.ring.name}: 2 inverted={loc.units_ok}, homomorphism={hom}")
        return ok and loc.units_ok and hom and loc.ring.name == "G(int[1/2])"
    return _timed(8, "spectra agree with brute force", 20, body)


def _random_rational_vector(rng: random.Random, n: int):
    return [Fraction(rng.randint(-10**4, 10**4), rng.randint(1, 10**4)) for _ in range(n)]


def norms_check(seed: int = 0, vectors: int = 1000) -> Criterion:
    def body(out):
        rng = random.Random(seed)
        ok = True
        for place in (2, 3, 5, "real"):
            fails = 0
            for _ in range(vectors):
                v = _random_rational_vector(rng, rng.randint(1, 5))
                if all(x == 0 for x in v):
                    continue
                if place == "real":
                    v = [float(x) for x in v]
                nv = norms.norm(place, v)
                full = norms.check_fullness(place, v, trials=5, seed=rng.randrange(2**32))
                tame = norms.tameness_check(place, v, trials=5, seed=rng.randrange(2**32))
                if not full or tame != (nv <= 1):
                    fails += 1
            out.append(f"place {place}: {fails} disagreements")
            ok &= fails == 0
            closed, _ = norms.contraction_closure(place, 10_000, seed)
            out.append(f"place {place}: pairings of unit-ball vectors stay in the ball: {closed}")
            ok &= closed
        return ok
    return _timed(9, "valuation norms", 10, body)


CRITERIA: dict[str, Callable[..., Criterion]] = {
    "zeta-convergence": padic_limit_check,
    "zeta-mc": padic_mc_check,
    "zeta-real": real_zeta_check,
    "axioms": axioms_check,
    "delta-soundness": delta_soundness_check,
    "durov": durov_collapse_check,
    "differentials": differentials_check,
    "spectra": spectra_check,
    "norms": norms_check,
}


def run(names: list[str] | None = None, seed: int = 0) -> list[Criterion]:
    names = names or list(CRITERIA)
    return [CRITERIA[n](seed=seed) for n in names]
