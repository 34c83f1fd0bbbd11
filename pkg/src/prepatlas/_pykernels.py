"""Pure numpy versions of the hot loops; used when the compiled module is absent."""
from __future__ import annotations

import numpy as np


def escape_rows(alpha: float, re: np.ndarray, im: np.ndarray, max_iter: int,
                bailout: float, out: np.ndarray) -> None:
    """Fill out[j, i] with the first n in 1..max_iter with |f_c^n(alpha)| > bailout.

    c = re[i] + 1j*im[j]; cells that never exceed the bailout get max_iter + 1.
    """
    c = re[None, :] + 1j * im[:, None]
    z = np.full(c.shape, complex(alpha))
    counts = np.full(c.shape, max_iter + 1, dtype=np.int32)
    active = np.ones(c.shape, dtype=bool)
    b2 = bailout * bailout
    for n in range(1, max_iter + 1):
        z[active] = z[active] * z[active] + c[active]
        mod2 = z.real * z.real + z.imag * z.imag
        hit = active & (mod2 > b2)
        counts[hit] = n
        active &= ~hit
        if not active.any():
            break
    out[...] = counts


def _orbit_ratio(alpha: float, m: int, n: int, g: np.ndarray, z: np.ndarray):
    """s'(z)/s(z) for s = F_{m,n}/g, with F evaluated along the orbit."""
    x = np.full(z.shape, complex(alpha))
    dx = np.zeros(z.shape, dtype=complex)
    xm, dxm = x.copy(), dx.copy()
    for k in range(1, n + 1):
        dx = 2 * x * dx + 1
        x = x * x + z
        if k == m:
            xm, dxm = x.copy(), dx.copy()
    F = x - xm
    dF = dx - dxm
    gv = np.zeros(z.shape, dtype=complex)
    dg = np.zeros(z.shape, dtype=complex)
    for c in g[::-1]:
        dg = dg * z + gv
        gv = gv * z + c
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = dF / F - dg / gv
    return ratio, F == 0


def aberth_orbit(alpha: float, m: int, n: int, g: np.ndarray, z: np.ndarray,
                 max_iter: int, tol: float) -> tuple[int, bool]:
    """Aberth iteration in place on z for the distinct roots of F_{m,n}.

    g holds the (low-first, complex) coefficients of gcd(F, F'), so the
    iteration runs on the square-free part s = F / g.
    """
    d = len(z)
    done = np.zeros(d, dtype=bool)
    for it in range(1, max_iter + 1):
        ratio, exact = _orbit_ratio(alpha, m, n, g, z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        sigma = np.sum(1.0 / diff, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = 1.0 / (ratio - sigma)
        w[exact | done] = 0
        w[~np.isfinite(w)] = 0
        z -= w
        small = np.abs(w) <= tol * np.maximum(1.0, np.abs(z))
        done |= small
        if done.all():
            return it, True
    return max_iter, False
