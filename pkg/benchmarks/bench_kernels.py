"""Compare the compiled kernels with the NumPy fallback.

    python benchmarks/bench_kernels.py [--rows N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from f1forge import _pykernels

try:
    from f1forge import _kernels
except ImportError:
    _kernels = None


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rows", type=int, default=1 << 16)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    p, digits, n = 3, 25, 4
    padic = np.ascontiguousarray(rng.integers(1, p ** digits, size=(args.rows, n), dtype=np.int64))
    gauss = np.ascontiguousarray(rng.standard_normal((args.rows, 8)))
    cases = {
        "padic_abs_pow": lambda m: m.padic_abs_pow(padic, p, digits, 1.5),
        "sphere_sum_pow": lambda m: m.sphere_sum_pow(gauss, 1.5),
    }
    backends = {"python": _pykernels}
    if _kernels is not None:
        backends["compiled"] = _kernels
    else:
        print("compiled extension not built; timing the fallback only")
    for name, call in cases.items():
        ref = None
        for label, mod in backends.items():
            best = min(timeit.repeat(lambda: call(mod), number=1, repeat=args.repeat))
            val = call(mod)
            ref = ref or val
            agree = np.allclose(val, ref, rtol=1e-10)
            print(f"{name:15s} {label:9s} {best * 1e3:9.2f} ms  rows={args.rows}  agree={agree}")


if __name__ == "__main__":
    main()
