# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo reductions; same contract as ``_pykernels``."""

from libc.math cimport fabs, pow, sqrt


def padic_abs_pow(const long long[:, ::1] samples, long long p, int digits, double sm1):
    """Sum and sum of squares of ``|a_1 + ... + a_n|_p^(s-1)`` over rows mod ``p**digits``.

    A row summing to 0 mod ``p**digits`` is assigned valuation ``digits``.
    """
    cdef Py_ssize_t N = samples.shape[0], n = samples.shape[1], i, j
    cdef long long modulus = 1, acc
    cdef int v, k
    cdef double x, total = 0.0, total2 = 0.0
    for k in range(digits):
        modulus *= p
    cdef double base = pow(<double>p, -sm1)
    for i in range(N):
        acc = 0
        for j in range(n):
            acc = (acc + samples[i, j]) % modulus
        v = 0
        if acc == 0:
            v = digits
        else:
            while acc % p == 0:
                acc //= p
                v += 1
        x = pow(base, v)
        total += x
        total2 += x * x
    return total, total2


def sphere_sum_pow(const double[:, ::1] gauss, double sm1):
    """Sum and sum of squares of ``|sum(g)| / ||g||`` raised to ``s-1``, row by row."""
    cdef Py_ssize_t N = gauss.shape[0], n = gauss.shape[1], i, j
    cdef double s, q, g, x, total = 0.0, total2 = 0.0
    for i in range(N):
        s = 0.0
        q = 0.0
        for j in range(n):
            g = gauss[i, j]
            s += g
            q += g * g
        x = pow(fabs(s) / sqrt(q), sm1)
        total += x
        total2 += x * x
    return total, total2
