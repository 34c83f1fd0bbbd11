"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--res 256] [--n 9]

Prints wall time per backend and checks that both produce the same answers.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from prepatlas import kernels
from prepatlas.mandelset import _initial_guesses, aberth_inputs, escape_grid


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--res", type=int, default=256)
    ap.add_argument("--max-iter", type=int, default=200)
    ap.add_argument("--n", type=int, default=8, help="prep-roots degree index (roots of F_{0,n})")
    args = ap.parse_args()

    backends = kernels.available()
    print(f"backends: {', '.join(backends)} (active: {kernels.BACKEND})")
    window = (-2.5, 1.5, -1.5, 1.5)
    res = (args.res, args.res)

    _, _, g, s = aberth_inputs(1, 0, args.n)
    gc = np.array([complex(float(c)) for c in g.coeffs], dtype=complex)
    z0 = _initial_guesses(s, 0, 0)

    def aberth(b):
        z = z0.copy()
        kernels.backend(b).aberth_orbit(1.0, 0, args.n, gc, z, 2000, 1e-14)
        return z

    grids, roots, rows = {}, {}, []
    for b in backends:
        t_grid = best_of(lambda: grids.__setitem__(b, escape_grid(0, window, res, args.max_iter, backend=b)),
                         args.repeat)
        t_root = best_of(lambda: roots.__setitem__(b, aberth(b)), args.repeat)
        rows.append((b, t_grid, t_root))

    print(f"{args.res}x{args.res} grid, max_iter {args.max_iter}; Aberth on F_(0,{args.n}) at alpha = 1 "
          f"({s.degree} roots)")
    print(f"{'backend':<8} {'escape grid':>14} {'aberth':>12}")
    for b, tg, tr in rows:
        print(f"{b:<8} {tg:>13.3f}s {tr:>11.3f}s")
    if len(rows) == 2:
        (_, g0, r0), (_, g1, r1) = rows
        print(f"speed-up: grid x{g1 / g0:.1f}, roots x{r1 / r0:.1f}")
        same_grid = np.array_equal(grids[backends[0]].cells, grids[backends[1]].cells)
        za, zb = roots[backends[0]], roots[backends[1]]
        gap = float(np.max(np.min(np.abs(za[:, None] - zb[None, :]), axis=1)))
        print(f"identical grids: {same_grid}; max distance to nearest root of the other backend: {gap:.2e}")


if __name__ == "__main__":
    main()
