import os
import subprocess
import sys

import numpy as np
import pytest

from cptlab import _backend, _dopri
from cptlab.generator import build_noiseless, dephasing_pattern
from cptlab.model import SystemParams, basis_state, vectorize


def _args():
    A0 = build_noiseless(SystemParams(gamma=7.0, omega1=46.0, omega2=46.0))
    return A0, dephasing_pattern(1.0), 1, 0.0, 1.0, 0.5, vectorize(basis_state(1))


def test_python_kernel_always_available():
    assert "python" in _backend.KERNELS
    assert _backend.get_kernel("python") is _dopri.integrate
    with pytest.raises(ValueError):
        _backend.get_kernel("fortran")


def test_env_var_forces_pure_python():
    code = "from cptlab import _backend; print(_backend.BACKEND)"
    env = dict(os.environ, CPTLAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("name", sorted(_backend.KERNELS))
def test_kernel_status_codes(name):
    kernel = _backend.get_kernel(name)
    *terms, y0 = _args()
    grid = np.array([0.0, 1.0])
    ys, status, t_stop, nsteps, nfev = kernel(*terms, y0, grid, 1e-9, 1e-12)
    assert status == 0 and t_stop == 1.0 and nsteps > 0 and nfev >= 6 * nsteps
    ys, status, t_stop, *_ = kernel(*terms, y0, grid, 1e-9, 1e-12, np.inf, 5)
    assert status == 2 and 0 < t_stop < 1.0


@pytest.mark.parametrize("name", sorted(_backend.KERNELS))
def test_dense_output_matches_stepping_to_each_point(name):
    kernel = _backend.get_kernel(name)
    *terms, y0 = _args()
    grid = np.linspace(0.0, 1.0, 9)
    dense = kernel(*terms, y0, grid, 1e-10, 1e-13)[0]
    for k in range(1, grid.size):
        direct = kernel(*terms, y0, grid[[0, k]], 1e-10, 1e-13)[0][-1]
        assert np.max(np.abs(dense[k] - direct)) < 1e-9
