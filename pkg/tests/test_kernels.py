"""The dispatched (JIT) kernels and the numpy fallbacks must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from susycdr import _kernels


class TestLaguerreKernel:
    @pytest.mark.parametrize("n", [0, 1, 5, 10])
    def test_paths_agree(self, n):
        y = np.linspace(0.0, 40.0, 777)
        fast = _kernels.laguerre_values(n, 1.5, y)
        plain = _kernels.laguerre_values_py(n, 1.5, y)
        np.testing.assert_allclose(fast, plain, rtol=1e-13, atol=1e-13)


class TestThomasKernel:
    def test_matches_dense_solve(self):
        rng = np.random.default_rng(99)
        n = 64
        lower = rng.standard_normal(n)
        upper = rng.standard_normal(n)
        diag = 4.0 + rng.random(n)  # diagonally dominant
        rhs = rng.standard_normal(n)
        mat = np.diag(diag) + np.diag(lower[1:], -1) + np.diag(upper[:-1], 1)
        expected = np.linalg.solve(mat, rhs)
        np.testing.assert_allclose(
            _kernels.thomas_solve(lower, diag, upper, rhs), expected,
            rtol=1e-11,
        )
        np.testing.assert_allclose(
            _kernels.thomas_solve_py(lower, diag, upper, rhs), expected,
            rtol=1e-11,
        )


class TestCnKernel:
    def test_paths_agree(self):
        rng = np.random.default_rng(5)
        nx, nt = 40, 12
        p0 = rng.random(nx)
        d = 0.5 + 0.1 * rng.random((nt + 1, nx))
        c = 0.2 * rng.standard_normal((nt + 1, nx))
        r = 0.05 * rng.standard_normal((nt, nx))
        bcl = rng.random(nt + 1)
        bcr = rng.random(nt + 1)
        args = (p0, d, c, r, bcl, bcr, 1e-2, 0.1)
        np.testing.assert_allclose(
            _kernels.cn_evolve(*args), _kernels.cn_evolve_py(*args),
            rtol=1e-12, atol=1e-14,
        )


class TestEnvFlag:
    def test_disable_flag_selects_fallback(self):
        code = (
            "from susycdr import _kernels; "
            "print(_kernels.NUMBA_ENABLED, "
            "_kernels.laguerre_values is _kernels.laguerre_values_py)"
        )
        env = dict(os.environ, SUSYCDR_DISABLE_NUMBA="1")
        out = subprocess.run(
            [sys.executable, "-c", code], env=env,
            capture_output=True, text=True, check=True,
        )
        assert out.stdout.split() == ["False", "True"]
