"""Local factors ``E |a_1 + ... + a_n|^(s-1)`` over the unit sphere of a place.

At a prime the sphere is ``Z_p^n`` minus ``(p Z_p)^n`` with normalised Haar
measure; at the real place it is the Euclidean unit sphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate, special

from . import kernels
from .differentials import is_prime


class DivergentIntegral(ValueError):
    pass


@dataclass(frozen=True)
class LocalFactor:
    place: str
    s: float
    n: int
    value: float | Fraction
    limit: float | Fraction
    mode: str
    stderr: float | None = None
    samples: int | None = None

    @property
    def abs_err_vs_limit(self) -> float:
        return abs(float(self.value) - float(self.limit))

    def record(self) -> dict:
        out = {"place": self.place, "s": self.s, "n": self.n, "value": float(self.value),
               "limit": float(self.limit), "abs_err_vs_limit": self.abs_err_vs_limit,
               "mode": self.mode}
        if isinstance(self.value, Fraction):
            out["exact"] = str(self.value)
        if self.stderr is not None:
            out["stderr"] = self.stderr
            out["samples"] = self.samples
        return out


def _exact_s(s):
    """Integral ``s`` as a Fraction so the result stays rational; otherwise a float."""
    if isinstance(s, Fraction):
        return s if s.denominator == 1 else float(s)
    if float(s).is_integer():
        return Fraction(int(s))
    return float(s)


def _ppow(p: int, e):
    """``p ** e`` exactly for integral ``e``."""
    if isinstance(e, Fraction):
        return Fraction(p) ** int(e)
    return float(p) ** e


def sphere_divisibility_ratio(p: int, n: int) -> Fraction:
    """``q`` with ``P(v_p(sum) >= k | sphere) = q p^-k`` for ``k >= 1``."""
    return (1 - Fraction(p) ** (1 - n)) / (1 - Fraction(p) ** (-n))


def padic_limit(p: int, s):
    e = _exact_s(s)
    return (1 - Fraction(1, p)) / (1 - _ppow(p, -e))


def zeta_padic_exact(p: int, s, n: int):
    """Sum over the valuation of the coordinate sum.

    ``P(v = 0) = 1 - q/p`` and ``P(v = k) = q (1 - 1/p) p^-k`` for ``k >= 1``, so the
    expectation of ``p^-(s-1)v`` is ``1 - q/p + q (1 - 1/p) p^-s / (1 - p^-s)``.
    """
    e = _exact_s(s)
    q = sphere_divisibility_ratio(p, n)
    ps = _ppow(p, -e)
    return 1 - q / p + q * (1 - Fraction(1, p)) * ps / (1 - ps)


def padic_digits(p: int) -> int:
    """Truncation precision: about 40/ln p digits, kept below 2^62 in int64."""
    k = math.ceil(40 / math.log(p))
    while p ** k >= 2 ** 62:
        k -= 1
    return k


def _draw_sphere(rng: np.random.Generator, p: int, modulus: int, n: int, rows: int) -> np.ndarray:
    out = []
    have = 0
    while have < rows:
        block = rng.integers(0, modulus, size=(max(rows - have, 64), n), dtype=np.int64)
        keep = (block % p != 0).any(axis=1)
        block = block[keep]
        out.append(block)
        have += block.shape[0]
    return np.ascontiguousarray(np.concatenate(out)[:rows])


CHUNK = 1 << 16


def _chunks(samples: int):
    k = 0
    while k * CHUNK < samples:
        yield k, min(CHUNK, samples - k * CHUNK)
        k += 1


def zeta_padic_mc(p: int, s: float, n: int, samples: int = 100_000, seed: int = 0):
    """Monte Carlo over truncated digit expansions; returns ``(mean, standard error)``.

    Chunk ``k`` uses the ``k``-th child of ``SeedSequence(seed)``, so results do not
    depend on how chunks are scheduled.
    """
    digits = min(padic_digits(p), int(math.log(2 ** 62 / max(n, 1)) / math.log(p)))
    modulus = p ** digits
    children = np.random.SeedSequence(seed).spawn(math.ceil(samples / CHUNK))
    total = total2 = 0.0
    for k, size in _chunks(samples):
        rng = np.random.default_rng(children[k])
        block = _draw_sphere(rng, p, modulus, n, size)
        a, b = kernels.padic_abs_pow(block, p, digits, float(s) - 1.0)
        total += a
        total2 += b
    mean = total / samples
    var = max(total2 / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / samples)


def zeta_padic(p: int, s, n: int, mode: str = "exact", samples: int = 100_000, seed: int = 0) -> LocalFactor:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if float(s) <= 1:
        raise DivergentIntegral("s must exceed 1")
    if n < 1:
        raise ValueError("n must be at least 1")
    limit = padic_limit(p, s)
    if mode == "exact":
        return LocalFactor(f"p={p}", float(s), n, zeta_padic_exact(p, s, n), limit, mode)
    if mode == "mc":
        mean, se = zeta_padic_mc(p, s, n, samples, seed)
        return LocalFactor(f"p={p}", float(s), n, mean, limit, mode, se, samples)
    raise ValueError(f"unknown mode {mode!r}")


# --- real place ---------------------------------------------------------------


def real_limit(s: float) -> float:
    """``2^((s-1)/2) Gamma(s/2) / Gamma(1/2)``: the absolute moment of a standard normal."""
    return math.exp((s - 1) / 2 * math.log(2) + special.gammaln(s / 2) - special.gammaln(0.5))


def _check_real(s: float, n: int):
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1 and s <= 1:
        raise DivergentIntegral("s must exceed 1 for n = 1")
    if s <= 0:
        raise DivergentIntegral("s must be positive")


def zeta_real_closed(s: float, n: int) -> float:
    """The coordinate sum is ``sqrt(n) t`` with ``t`` a single sphere coordinate, whose
    density is proportional to ``(1 - t^2)^((n-3)/2)``; its moments are Beta ratios."""
    if n == 1:
        return 1.0
    a = (n - 1) / 2
    logv = ((s - 1) / 2 * math.log(n) + special.betaln(s / 2, a) - special.betaln(0.5, a))
    return math.exp(logv)


def zeta_real_quadrature(s: float, n: int) -> float:
    """Integrate the coordinate density numerically on [0, 1] (endpoint weights via QAWS).

    For large ``n`` the density is read on the scale ``u = sqrt(n) t``, where it is
    close to Gaussian; the tail past ``u = 40`` is below double precision.
    """
    if n == 1:
        return 1.0
    beta = (n - 3) / 2
    opts = dict(weight="alg", limit=500, epsabs=0.0, epsrel=1e-13)
    if n > 1600:
        def g(u):
            return math.exp(beta * math.log1p(-u * u / n))

        num, _ = integrate.quad(g, 0.0, 40.0, wvar=(s - 1, 0.0), **opts)
        den, _ = integrate.quad(g, 0.0, 40.0, wvar=(0.0, 0.0), **opts)
        return num / den

    def f(t):
        return ((1 + t) / 2) ** beta

    num, _ = integrate.quad(f, 0.0, 1.0, wvar=(s - 1, beta), **opts)
    den, _ = integrate.quad(f, 0.0, 1.0, wvar=(0.0, beta), **opts)
    return n ** ((s - 1) / 2) * num / den


def zeta_real_mc(s: float, n: int, samples: int = 100_000, seed: int = 0):
    if n == 1:
        return 1.0, 0.0
    children = np.random.SeedSequence(seed).spawn(math.ceil(samples / CHUNK))
    total = total2 = 0.0
    rows = max(1, min(CHUNK, (1 << 22) // n))
    for k, size in _chunks(samples):
        rng = np.random.default_rng(children[k])
        done = 0
        while done < size:
            m = min(rows, size - done)
            g = np.ascontiguousarray(rng.standard_normal((m, n)))
            a, b = kernels.sphere_sum_pow(g, s - 1.0)
            total += a
            total2 += b
            done += m
    mean = total / samples
    var = max(total2 / samples - mean * mean, 0.0)
    return mean, math.sqrt(var / samples)


def zeta_real(s: float, n: int, mode: str = "closed", samples: int = 100_000, seed: int = 0) -> LocalFactor:
    s = float(s)
    _check_real(s, n)
    limit = real_limit(s)
    if mode == "closed":
        return LocalFactor("real", s, n, zeta_real_closed(s, n), limit, mode)
    if mode in ("quad", "quadrature"):
        return LocalFactor("real", s, n, zeta_real_quadrature(s, n), limit, "quad")
    if mode == "mc":
        mean, se = zeta_real_mc(s, n, samples, seed)
        return LocalFactor("real", s, n, mean, limit, mode, se, samples)
    raise ValueError(f"unknown mode {mode!r}")


__all__ = ["LocalFactor", "DivergentIntegral", "zeta_padic", "zeta_real", "padic_limit",
           "real_limit", "zeta_padic_exact", "zeta_padic_mc", "zeta_real_closed",
           "zeta_real_quadrature", "zeta_real_mc", "sphere_divisibility_ratio"]
