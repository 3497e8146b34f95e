"""Predictive remapping: correlate working memory with the focus bump.

The anticipation map receives, at every cell x,

    I(x) = beta * sum_y wm(y) * focus(center + y - x)

i.e. the working-memory pattern translated backwards by the displacement the
focus bump encodes. For Gaussian bumps this puts an input peak at m - s for
every memory peak m and focus peak s (both center-relative): exactly where
each memorized stimulus will sit on the retina once the saccade centers s.
Terms whose focus index leaves the lattice are dropped.

The map itself has no lateral connections and integrates its input with a
long time constant, which is what lets the prediction outlive the saccade
while every other map decays.
"""

from __future__ import annotations

import numpy as np
from scipy import fft as sp_fft

from .grids import U_MAX, ConfigurationError, FieldGrid, StepParams, euler_step


def anticipation_input(
    wm: FieldGrid, focus: FieldGrid, beta: float, method: str = "fft"
) -> FieldGrid:
    """Correlation field beta * sum_y wm(y) focus(center + y - x).

    ``method="fft"`` evaluates it as a zero-padded convolution with the
    flipped focus grid; ``method="direct"`` evaluates the windowed sum
    literally. Both implement the same drop-out-of-range convention.
    """
    if wm.shape != focus.shape:
        raise ConfigurationError(f"grid shapes differ: {wm.shape} vs {focus.shape}")
    if not beta >= 0:
        raise ConfigurationError(f"beta must be >= 0, got {beta}")
    if method == "fft":
        return _correlate_fft(wm, focus, beta)
    if method == "direct":
        return _correlate_direct(wm, focus, beta)
    raise ConfigurationError(f"unknown method {method!r}")


def _correlate_fft(wm: FieldGrid, focus: FieldGrid, beta: float) -> FieldGrid:
    n = wm.shape[0]
    shape = [sp_fft.next_fast_len(2 * n - 1, real=True)] * 2
    fw = sp_fft.rfft2(wm, shape)
    ff = sp_fft.rfft2(focus[::-1, ::-1], shape)
    full = sp_fft.irfft2(fw * ff, shape)
    c = n // 2
    # full[k] = sum_u wm(u) focus(n-1 - (k-u)); the block starting at c gives
    # full[x + c] = sum_u wm(u) focus(c + u - x)  (n odd: n-1-c == c)
    return beta * full[c : c + n, c : c + n]


def _correlate_direct(wm: FieldGrid, focus: FieldGrid, beta: float) -> FieldGrid:
    n = wm.shape[0]
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


def step_anticipation(
    u: FieldGrid, total_input: FieldGrid, p: StepParams
) -> FieldGrid:
    """Clamped Euler step of tau * du/dt = -u + input (no lateral term)."""
    return euler_step(u, total_input, p)


def settled_anticipation(total_input: FieldGrid) -> FieldGrid:
    """Fixed point of the anticipation dynamics under a constant input."""
    return np.clip(total_input, 0.0, U_MAX)
