"""NumPy implementations of the Monte Carlo reductions."""

from __future__ import annotations

import numpy as np


def padic_abs_pow(samples: np.ndarray, p: int, digits: int, sm1: float) -> tuple[float, float]:
    modulus = p ** digits
    acc = np.zeros(samples.shape[0], dtype=np.int64)
    for col in samples.T:
        acc = (acc + col) % modulus
    v = np.zeros(acc.shape, dtype=np.int64)
    zero = acc == 0
    v[zero] = digits
    live = ~zero
    while live.any():
        div = live & (acc % p == 0)
        if not div.any():
            break
        acc[div] //= p
        v[div] += 1
        live = div
    x = float(p) ** (-sm1 * v.astype(np.float64))
    return float(x.sum()), float((x * x).sum())


def sphere_sum_pow(gauss: np.ndarray, sm1: float) -> tuple[float, float]:
    s = gauss.sum(axis=1)
    q = np.sqrt((gauss * gauss).sum(axis=1))
    x = np.abs(s / q) ** sm1
    return float(x.sum()), float((x * x).sum())
