"""Brute-force ground-truth sums, kept deliberately naive.

These implementations spell out the defining double sums with their own
weight evaluation and fixed loop order. They share no kernel or transform
code with the production paths, so the two can be compared as genuinely
independent computations (the CLI ``verify`` subcommand does exactly that).
"""

from __future__ import annotations

import numpy as np

from .grids import DoGKernel, FieldGrid


def brute_force_lateral(grid: FieldGrid, kernel: DoGKernel) -> FieldGrid:
    """out(x) = sum over all x' of w(x - x') u(x'), zero-padded.

    Literal evaluation: for each output cell the full weight matrix over the
    lattice is formed from the DoG formula and summed against the grid.
    """
    n = grid.shape[0]
    idx = np.arange(n, dtype=np.float64)
    out = np.empty((n, n), dtype=np.float64)
    a2 = kernel.a * kernel.a
    b2 = kernel.b * kernel.b
    for i in range(n):
        di2 = (i - idx) ** 2
        for j in range(n):
            r2 = di2[:, None] + ((j - idx) ** 2)[None, :]
            w = kernel.A * np.exp(-r2 / a2) - kernel.B * np.exp(-r2 / b2)
            out[i, j] = np.sum(w * grid)
    return out


def brute_force_anticipation(
    wm: FieldGrid, focus: FieldGrid, beta: float
) -> FieldGrid:
    """out(x) = beta * sum over y of wm(y) * focus(center + y - x).

    The focus index is taken relative to the grid center; terms whose index
    falls outside the lattice are dropped.
    """
    n = wm.shape[0]
    if focus.shape != wm.shape:
        raise ValueError(f"grid shapes differ: {wm.shape} vs {focus.shape}")
    c = n // 2
    out = np.zeros((n, n), dtype=np.float64)
    for xi in range(n):
        yi_lo, yi_hi = max(0, xi - c), min(n, xi - c + n)
        for xj in range(n):
            yj_lo, yj_hi = max(0, xj - c), min(n, xj - c + n)
            wm_win = wm[yi_lo:yi_hi, yj_lo:yj_hi]
            f_win = focus[
                c + yi_lo - xi : c + yi_hi - xi, c + yj_lo - xj : c + yj_hi - xj
            ]
            out[xi, xj] = beta * np.sum(wm_win * f_win)
    return out
