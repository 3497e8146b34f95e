"""Synthetic world and retina.

A scene is a set of identical point stimuli in world coordinates (degrees of
visual angle). The retina is the model's n x n lattice: gaze sits at the
grid center and one cell spans ``cell_size_deg`` degrees. Rendering paints a
Gaussian activity bump at each stimulus's retinal position; stimuli outside
the field of view contribute whatever tail still falls on the lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .grids import U_MAX, ConfigurationError, FieldGrid, grid_center, zero_grid


@dataclass(frozen=True)
class Scene:
    """Identical stimuli at distinct world positions."""

    stimuli: tuple[tuple[float, float], ...]
    amplitude: float = 1.0
    width_deg: float = 1.0

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.stimuli)
        object.__setattr__(self, "stimuli", pts)
        for x, y in pts:
            if not (np.isfinite(x) and np.isfinite(y)):
                raise ConfigurationError(f"non-finite stimulus position ({x}, {y})")
        if len(set(pts)) != len(pts):
            raise ConfigurationError("stimulus positions must be pairwise distinct")
        if not self.amplitude > 0:
            raise ConfigurationError("stimulus amplitude must be positive")
        if not self.width_deg > 0:
            raise ConfigurationError("stimulus width must be positive")


@dataclass(frozen=True)
class GazeState:
    """Current gaze position and the grid-to-degrees scale."""

    gaze: tuple[float, float] = (0.0, 0.0)
    cell_size_deg: float = 0.5

    def __post_init__(self):
        gx, gy = float(self.gaze[0]), float(self.gaze[1])
        object.__setattr__(self, "gaze", (gx, gy))
        if not (np.isfinite(gx) and np.isfinite(gy)):
            raise ConfigurationError("gaze must be finite")
        if not self.cell_size_deg > 0:
            raise ConfigurationError("cell_size_deg must be positive")

    def shifted(self, dx: float, dy: float) -> "GazeState":
        return GazeState((self.gaze[0] + dx, self.gaze[1] + dy), self.cell_size_deg)


def retinal_position(p, g: GazeState, n: int) -> tuple[float, float]:
    """Continuous grid coordinates of world point p (center = fovea)."""
    c = grid_center(n)
    return (
        c + (float(p[0]) - g.gaze[0]) / g.cell_size_deg,
        c + (float(p[1]) - g.gaze[1]) / g.cell_size_deg,
    )


def world_to_retina(p, g: GazeState, n: int) -> tuple[int, int] | None:
    """Nearest grid cell for world point p, or None if off the field."""
    ri, rj = retinal_position(p, g, n)
    i = int(np.floor(ri + 0.5))
    j = int(np.floor(rj + 0.5))
    if 0 <= i < n and 0 <= j < n:
        return (i, j)
    return None


def render_saliency(scene: Scene, g: GazeState, n: int) -> FieldGrid:
    """Sum of Gaussian bumps at the stimuli's retinal positions, clamped."""
    out = zero_grid(n)
    if not scene.stimuli:
        return out
    width_cells = scene.width_deg / g.cell_size_deg
    idx = np.arange(n, dtype=np.float64)
    for p in scene.stimuli:
        ri, rj = retinal_position(p, g, n)
        r2 = (idx[:, None] - ri) ** 2 + (idx[None, :] - rj) ** 2
        out += scene.amplitude * np.exp(-r2 / (width_cells * width_cells))
    return np.clip(out, 0.0, U_MAX)


def blank_saliency(n: int) -> FieldGrid:
    """The zero input used while a saccade is in flight."""
    return zero_grid(n)


def load_scene(
    path, amplitude: float = 1.0, width_deg: float = 1.0
) -> Scene:
    """Read a scene file: one "x_deg y_deg" pair per line, '#' comments."""
    stimuli: list[tuple[float, float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ConfigurationError(
                    f"{path}:{lineno}: expected 'x_deg y_deg', got {raw.strip()!r}"
                )
            try:
                stimuli.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ConfigurationError(
                    f"{path}:{lineno}: non-numeric coordinate in {raw.strip()!r}"
                ) from None
    return Scene(tuple(stimuli), amplitude=amplitude, width_deg=width_deg)
