"""Lattice primitives: square activity grids, weight kernels, and Euler steps.

Every map in the model is an n x n array of unit activities. The update rule
for a single map is the explicitly discretized first-order dynamics

    u' = clamp(u + (dt/tau) * (-u + lateral + input + baseline), 0, u_max)

where ``lateral`` is the within-map interaction (a difference-of-Gaussians
correlation over the grid) and ``input`` is whatever afferent drive the map
receives. Sigma units receive a weighted sum of other maps' activities;
sigma-pi units receive a weighted sum of products. Both share the same step
arithmetic, only the input construction differs.

Grids use a center-origin convention: the cell (c, c) with c = n // 2 is the
fovea, and a cell index is read as a displacement from that center. Sums over
the lattice are zero-padded outside it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as sp_fft

U_MAX = 1.0

# A FieldGrid is a plain float64 (n, n) ndarray; n odd so the center cell is
# unique. Helpers below construct and validate them.
FieldGrid = np.ndarray


class ConfigurationError(ValueError):
    """A kernel, step parameter, or grid failed validation."""


def zero_grid(n: int) -> FieldGrid:
    if n <= 0:
        raise ConfigurationError(f"grid side must be positive, got {n}")
    return np.zeros((n, n), dtype=np.float64)


def grid_center(n: int) -> int:
    return n // 2


def as_grid(values, n: int | None = None) -> FieldGrid:
    """Coerce to a square float64 grid, checking shape and finiteness."""
    g = np.asarray(values, dtype=np.float64)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ConfigurationError(f"grid must be square 2D, got shape {g.shape}")
    if n is not None and g.shape[0] != n:
        raise ConfigurationError(f"expected side {n}, got {g.shape[0]}")
    if not np.all(np.isfinite(g)):
        raise ConfigurationError("grid contains non-finite values")
    return g


@dataclass(frozen=True)
class GaussianKernel:
    """Isotropic Gaussian weight profile w(d) = C * exp(-|d|^2 / c^2)."""

    C: float
    c: float

    def __post_init__(self):
        if not (self.C > 0 and np.isfinite(self.C)):
            raise ConfigurationError(f"Gaussian amplitude C must be > 0, got {self.C}")
        if not (self.c > 0 and np.isfinite(self.c)):
            raise ConfigurationError(f"Gaussian width c must be > 0, got {self.c}")


@dataclass(frozen=True)
class DoGKernel:
    """Difference of Gaussians w(d) = A*exp(-|d|^2/a^2) - B*exp(-|d|^2/b^2)."""

    A: float
    a: float
    B: float
    b: float

    def __post_init__(self):
        for name in ("A", "a", "B", "b"):
            v = getattr(self, name)
            if not (v > 0 and np.isfinite(v)):
                raise ConfigurationError(f"DoG parameter {name} must be > 0, got {v}")

    def require_competitive(self) -> None:
        """Locally excitatory / widely inhibitory profiles need a < b."""
        if not self.a < self.b:
            raise ConfigurationError(
                f"competition kernel needs excitatory width a < inhibitory width b "
                f"(got a={self.a}, b={self.b})"
            )


@dataclass(frozen=True)
class StepParams:
    """Euler integration parameters for one map."""

    tau: float
    dt: float
    baseline: float = 0.0

    def __post_init__(self):
        if not (self.tau > 0 and np.isfinite(self.tau)):
            raise ConfigurationError(f"tau must be positive, got {self.tau}")
        if not (0 < self.dt <= self.tau):
            raise ConfigurationError(
                f"need 0 < dt <= tau for stability, got dt={self.dt}, tau={self.tau}"
            )
        if not np.isfinite(self.baseline):
            raise ConfigurationError("baseline must be finite")


def evaluate_gaussian(kernel: GaussianKernel, d) -> float:
    """Kernel value at a displacement vector d = (dx, dy)."""
    dx, dy = float(d[0]), float(d[1])
    return kernel.C * float(np.exp(-(dx * dx + dy * dy) / (kernel.c * kernel.c)))


def evaluate_dog(kernel: DoGKernel, d) -> float:
    dx, dy = float(d[0]), float(d[1])
    r2 = dx * dx + dy * dy
    return kernel.A * float(np.exp(-r2 / (kernel.a * kernel.a))) - kernel.B * float(
        np.exp(-r2 / (kernel.b * kernel.b))
    )


def gaussian_image(kernel: GaussianKernel, n: int) -> np.ndarray:
    """Kernel sampled on the full displacement range of an n-grid.

    Returns a (2n-1, 2n-1) array whose center entry is the zero displacement.
    """
    d = np.arange(-(n - 1), n, dtype=np.float64)
    r2 = d[:, None] ** 2 + d[None, :] ** 2
    return kernel.C * np.exp(-r2 / (kernel.c * kernel.c))


def dog_image(kernel: DoGKernel, n: int) -> np.ndarray:
    d = np.arange(-(n - 1), n, dtype=np.float64)
    r2 = d[:, None] ** 2 + d[None, :] ** 2
    return kernel.A * np.exp(-r2 / (kernel.a * kernel.a)) - kernel.B * np.exp(
        -r2 / (kernel.b * kernel.b)
    )


def correlate_full(grid: FieldGrid, kernel_img: np.ndarray) -> FieldGrid:
    """out(x) = sum_x' k(x - x') u(x'), zero-padded, via FFT.

    ``kernel_img`` is a (2n-1, 2n-1) displacement image as produced by
    :func:`gaussian_image` / :func:`dog_image`. All kernels here are even in
    the displacement, so correlation and convolution coincide; the kernel is
    kept untruncated so the result matches the brute-force sum to rounding
    error (~1e-13), well inside the 1e-9 contract.
    """
    n = grid.shape[0]
    if kernel_img.shape != (2 * n - 1, 2 * n - 1):
        raise ConfigurationError(
            f"kernel image shape {kernel_img.shape} does not match grid side {n}"
        )
    shape = [sp_fft.next_fast_len(n + kernel_img.shape[0] - 1, real=True)] * 2
    fg = sp_fft.rfft2(grid, shape)
    fk = sp_fft.rfft2(kernel_img, shape)
    full = sp_fft.irfft2(fg * fk, shape)
    # central n x n block of the full (3n-2) correlation
    off = n - 1
    return np.ascontiguousarray(full[off : off + n, off : off + n])


def _correlate_direct(grid: FieldGrid, kernel_img: np.ndarray) -> FieldGrid:
    """Same sum as :func:`correlate_full`, evaluated by sliced summation."""
    n = grid.shape[0]
    out = np.empty_like(grid)
    c0 = n - 1
    flipped = kernel_img[::-1, ::-1]
    for i in range(n):
        for j in range(n):
            # flipped[c0 - i + k, c0 - j + l] == kernel_img[c0 + (i-k), c0 + (j-l)]
            win = flipped[c0 - i : c0 - i + n, c0 - j : c0 - j + n]
            out[i, j] = np.sum(win * grid)
    return out


def lateral_input(grid: FieldGrid, kernel: DoGKernel, method: str = "fft") -> FieldGrid:
    """Within-map interaction field sum_x' w(x - x') u(x').

    ``method="fft"`` is the production path; ``method="direct"`` evaluates the
    literal sum and exists so the fast path can be checked in place.
    """
    n = grid.shape[0]
    img = dog_image(kernel, n)
    if method == "fft":
        return correlate_full(grid, img)
    if method == "direct":
        return _correlate_direct(grid, img)
    raise ConfigurationError(f"unknown method {method!r}")


def euler_step(u: FieldGrid, total_input: FieldGrid, p: StepParams) -> FieldGrid:
    """One clamped Euler step of tau * du/dt = -u + total_input + baseline."""
    if u.shape != total_input.shape:
        raise ConfigurationError(
            f"grid shapes differ: {u.shape} vs {total_input.shape}"
        )
    out = u + (p.dt / p.tau) * (-u + total_input + p.baseline)
    return np.clip(out, 0.0, U_MAX)


def sigma_step(
    u: FieldGrid, lateral: FieldGrid, afferent: FieldGrid, p: StepParams
) -> FieldGrid:
    """Step a sigma map: input is the lateral field plus a summed afferent."""
    if not (u.shape == lateral.shape == afferent.shape):
        raise ConfigurationError("sigma_step requires equal grid shapes")
    return euler_step(u, lateral + afferent, p)


def sigmapi_step(
    u: FieldGrid, lateral: FieldGrid, product_input: FieldGrid, p: StepParams
) -> FieldGrid:
    """Step a sigma-pi map.

    Identical arithmetic to :func:`sigma_step`; the caller supplies the
    summed-products field instead of a summed one.
    """
    return sigma_step(u, lateral, product_input, p)


def gaussian_bump(n: int, center, amplitude: float, width: float) -> FieldGrid:
    """A single Gaussian activity bump; ``center`` may be fractional cells."""
    ci, cj = float(center[0]), float(center[1])
    idx = np.arange(n, dtype=np.float64)
    r2 = (idx[:, None] - ci) ** 2 + (idx[None, :] - cj) ** 2
    return amplitude * np.exp(-r2 / (width * width))
