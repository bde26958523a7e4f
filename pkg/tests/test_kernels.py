import importlib
import os
import subprocess
import sys

import numpy as np
import pytest

from f1forge import _pykernels, kernels


def _compiled():
    try:
        return importlib.import_module("f1forge._kernels")
    except ImportError:
        return None


def test_backend_reported():
    assert kernels.BACKEND in ("compiled", "python")


def test_pure_switch_forces_fallback():
    out = subprocess.run([sys.executable, "-c", "from f1forge import kernels; print(kernels.BACKEND)"],
                         env={**os.environ, "F1FORGE_PURE": "1"}, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(_compiled() is None, reason="extension not built")
def test_backends_agree():
    ck = _compiled()
    rng = np.random.default_rng(0)
    samples = np.ascontiguousarray(rng.integers(0, 3**20, size=(5000, 6), dtype=np.int64))
    a = ck.padic_abs_pow(samples, 3, 20, 1.0)
    b = _pykernels.padic_abs_pow(samples, 3, 20, 1.0)
    assert a == pytest.approx(b, rel=1e-12)
    g = np.ascontiguousarray(rng.standard_normal((5000, 7)))
    assert ck.sphere_sum_pow(g, 0.5) == pytest.approx(_pykernels.sphere_sum_pow(g, 0.5), rel=1e-10)


def test_python_kernel_small_case():
    samples = np.array([[1, 1], [2, 2], [1, 3]], dtype=np.int64)
    # sums 2, 4, 4 -> valuations 1, 2, 2 at p = 2; |.|^(s-1) with s - 1 = 1
    total, total2 = _pykernels.padic_abs_pow(samples, 2, 10, 1.0)
    assert total == pytest.approx(0.5 + 0.25 + 0.25)
    assert total2 == pytest.approx(0.25 + 0.0625 + 0.0625)
