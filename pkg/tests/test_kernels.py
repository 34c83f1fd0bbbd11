import os
import subprocess
import sys

import numpy as np
import pytest

from prepatlas import kernels
from prepatlas.mandelset import _initial_guesses, aberth_inputs

compiled = pytest.mark.skipif("cython" not in kernels.available(), reason="compiled kernels not built")


def test_backend_lookup():
    assert kernels.backend("python").__name__.endswith("_pykernels")
    with pytest.raises(ValueError):
        kernels.backend("fortran")
    assert kernels.BACKEND in kernels.available()


def test_env_forces_python_fallback():
    env = dict(os.environ, PREP_ATLAS_KERNELS="python")
    out = subprocess.run([sys.executable, "-c", "from prepatlas import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "python"


@compiled
def test_default_is_compiled_when_built():
    env = {k: v for k, v in os.environ.items() if k != "PREP_ATLAS_KERNELS"}
    out = subprocess.run([sys.executable, "-c", "from prepatlas import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True).stdout
    assert out.strip() == "cython"


def run_escape(name, alpha, re, im, max_iter, bailout):
    out = np.zeros((len(im), len(re)), dtype=np.int32)
    kernels.backend(name).escape_rows(alpha, re, im, max_iter, bailout, out)
    return out


@compiled
@pytest.mark.parametrize("alpha", [0.0, 1.0, -0.5, 2.0])
def test_escape_backends_agree(alpha):
    re = np.linspace(-4, 1.5, 83)
    im = np.linspace(-2, 2, 61)
    a = run_escape("cython", alpha, re, im, 150, 4.0)
    b = run_escape("python", alpha, re, im, 150, 4.0)
    assert np.array_equal(a, b)


@compiled
@pytest.mark.parametrize("alpha,m,n", [(0, 0, 4), (1, 1, 5), (1, 0, 6)])
def test_aberth_backends_agree(alpha, m, n):
    _, _, g, s = aberth_inputs(alpha, m, n)
    gc = np.array([complex(c) for c in g.coeffs])
    results = {}
    for name in ("cython", "python"):
        z = _initial_guesses(s, 0, 0).copy()
        it, ok = kernels.backend(name).aberth_orbit(float(alpha), m, n, gc, z, 2000, 1e-14)
        assert ok
        results[name] = z
    a, b = results["cython"], results["python"]
    assert max(min(abs(x - b)) for x in a) < 1e-12
