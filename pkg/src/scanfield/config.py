"""Simulation configuration: dataclasses plus the flat text file format.

The config file is INI-style with one section per concern. ``[grid]``,
``[dynamics]``, ``[scene]`` and ``[scan]`` hold scalar parameters;
``[map.<name>]`` holds per-map integration parameters (and, for the focus
map, its lateral kernel); ``[projection.<label>]``, ``[gated.<label>]`` and
``[convolution.<label>]`` declare the wiring. Keys match the dataclass field
names below, and unknown sections or keys are hard errors so tuning typos
surface immediately. Loading starts from the built-in defaults and applies
the file as overrides; a wiring section with a new label adds a projection.
"""

from __future__ import annotations

import configparser
import dataclasses
from dataclasses import dataclass, field, fields, replace

from .grids import ConfigurationError

MAP_IDS = (
    "saliency",
    "focus",
    "wm",
    "thal_wm",
    "anticipation",
    "switch_inhibition",
)


@dataclass
class GridConfig:
    n: int = 41
    cell_size_deg: float = 0.5


@dataclass
class DynamicsConfig:
    dt: float = 0.1
    beta: float = 0.18
    noise_amplitude: float = 0.005
    rng_seed: int = 0
    theta_bump: float = 0.3
    theta_off: float = 0.05


@dataclass
class MapConfig:
    tau: float = 1.0
    baseline: float = 0.0
    # lateral difference-of-Gaussians; zero amplitudes mean no lateral term
    lateral_A: float = 0.0
    lateral_a: float = 1.0
    lateral_B: float = 0.0
    lateral_b: float = 1.0

    def has_lateral(self) -> bool:
        return self.lateral_A != 0.0 or self.lateral_B != 0.0


@dataclass
class ProjectionConfig:
    source: str = ""
    target: str = ""
    amplitude: float = 1.0
    width: float = 1.0
    sign: int = 1


@dataclass
class GatedConfig:
    source_a: str = ""
    source_b: str = ""
    target: str = ""
    weight: float = 1.0
    spread_amplitude: float = 1.0
    spread_width: float = 1.5


@dataclass
class ConvolutionConfig:
    memory: str = "wm"
    shift: str = "focus"
    target: str = "anticipation"


@dataclass
class SceneDefaults:
    amplitude: float = 1.0
    width_deg: float = 1.0


@dataclass
class ScanConfig:
    blank_ticks: int = 40
    switch_ticks: int = 50
    switch_amplitude: float = 1.0
    start_gaze_x: float = 0.0
    start_gaze_y: float = 0.0
    settle_delta: float = 1e-3
    pre_saccade_delta: float = 5e-4
    settle_max_ticks: int = 2000
    pre_saccade_max_ticks: int = 500
    post_saccade_max_ticks: int = 400
    switch_max_ticks: int = 300
    max_total_ticks: int = 30000
    fixation_tolerance_cells: float = 2.0
    motor_noise_deg: float = 0.0


@dataclass
class SimConfig:
    grid: GridConfig = field(default_factory=GridConfig)
    dynamics: DynamicsConfig = field(default_factory=DynamicsConfig)
    maps: dict = field(default_factory=dict)
    projections: dict = field(default_factory=dict)
    gated: dict = field(default_factory=dict)
    convolutions: dict = field(default_factory=dict)
    scene: SceneDefaults = field(default_factory=SceneDefaults)
    scan: ScanConfig = field(default_factory=ScanConfig)


def default_config() -> SimConfig:
    """The shipped parameter set: tuned once, frozen here and in default.cfg."""
    cfg = SimConfig()
    cfg.maps = {
        "saliency": MapConfig(tau=1.0),
        "focus": MapConfig(
            tau=1.0, lateral_A=1.25, lateral_a=2.0, lateral_B=0.7, lateral_b=10.0
        ),
        "wm": MapConfig(tau=1.0),
        "thal_wm": MapConfig(tau=1.0),
        "anticipation": MapConfig(tau=20.0),
        "switch_inhibition": MapConfig(tau=1.0),
    }
    cfg.projections = {
        "saliency_to_focus": ProjectionConfig(
            source="saliency", target="focus", amplitude=0.12, width=2.0, sign=1
        ),
        "wm_to_focus": ProjectionConfig(
            source="wm", target="focus", amplitude=0.30, width=2.0, sign=-1
        ),
        "switch_to_focus": ProjectionConfig(
            source="switch_inhibition", target="focus", amplitude=0.06, width=3.0,
            sign=-1,
        ),
        "wm_to_thal_wm": ProjectionConfig(
            source="wm", target="thal_wm", amplitude=0.16, width=1.5, sign=1
        ),
    }
    cfg.gated = {
        "wm_emergence": GatedConfig(
            source_a="saliency", source_b="focus", target="wm",
            weight=0.20, spread_amplitude=1.0, spread_width=1.5,
        ),
        "wm_reconstruction": GatedConfig(
            source_a="saliency", source_b="anticipation", target="wm",
            weight=0.25, spread_amplitude=1.0, spread_width=1.5,
        ),
        "wm_maintenance": GatedConfig(
            source_a="saliency", source_b="thal_wm", target="wm",
            weight=1.0, spread_amplitude=1.0, spread_width=1.5,
        ),
    }
    cfg.convolutions = {"prediction": ConvolutionConfig()}
    return cfg


_SCALAR_SECTIONS = {
    "grid": ("grid", GridConfig),
    "dynamics": ("dynamics", DynamicsConfig),
    "scene": ("scene", SceneDefaults),
    "scan": ("scan", ScanConfig),
}

_WIRING_SECTIONS = {
    "projection": ("projections", ProjectionConfig),
    "gated": ("gated", GatedConfig),
    "convolution": ("convolutions", ConvolutionConfig),
}


def _convert(raw: str, ftype, where: str):
    try:
        if ftype is int:
            return int(raw)
        if ftype is float:
            return float(raw)
        if ftype is str:
            return raw
    except ValueError:
        raise ConfigurationError(f"{where}: cannot parse {raw!r} as {ftype.__name__}")
    raise ConfigurationError(f"{where}: unsupported field type {ftype}")


def _key_line(path, section: str, key: str) -> str:
    """Best-effort line number of ``key`` inside ``section`` for error text."""
    try:
        in_section = False
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                stripped = line.strip()
                if stripped.startswith("["):
                    in_section = stripped == f"[{section}]"
                elif in_section and stripped.split("=")[0].split(":")[0].strip() == key:
                    return f"{path}:{lineno}"
    except OSError:
        pass
    return f"{path}:[{section}]"


def _apply_section(obj, section: str, items, path) -> None:
    by_name = {f.name: f for f in fields(obj)}
    for key, raw in items:
        if key not in by_name:
            raise ConfigurationError(
                f"{_key_line(path, section, key)}: unknown key {key!r} in "
                f"[{section}] (valid: {', '.join(sorted(by_name))})"
            )
        setattr(obj, key, _convert(raw, by_name[key].type_resolved, f"[{section}] {key}"))


# configparser stores raw strings; resolve field types once per dataclass
def _resolve_types(dc) -> None:
    hints = {"int": int, "float": float, "str": str}
    for f in fields(dc):
        f.type_resolved = hints.get(f.type, f.type) if isinstance(f.type, str) else f.type


for _dc in (
    GridConfig, DynamicsConfig, MapConfig, ProjectionConfig, GatedConfig,
    ConvolutionConfig, SceneDefaults, ScanConfig,
):
    _resolve_types(_dc)


def load_config(path) -> SimConfig:
    """Parse a config file, applying it over the built-in defaults."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh, source=str(path))
    except configparser.Error as exc:
        raise ConfigurationError(f"config parse error: {exc}") from exc

    cfg = default_config()
    for section in parser.sections():
        items = parser.items(section)
        if section in _SCALAR_SECTIONS:
            attr, _ = _SCALAR_SECTIONS[section]
            _apply_section(getattr(cfg, attr), section, items, path)
            continue
        if "." in section:
            prefix, label = section.split(".", 1)
            if prefix == "map":
                if label not in MAP_IDS:
                    raise ConfigurationError(
                        f"{path}: unknown map {label!r} in [{section}] "
                        f"(valid: {', '.join(MAP_IDS)})"
                    )
                obj = cfg.maps.setdefault(label, MapConfig())
                _apply_section(obj, section, items, path)
                continue
            if prefix in _WIRING_SECTIONS:
                attr, dc = _WIRING_SECTIONS[prefix]
                table = getattr(cfg, attr)
                obj = table.setdefault(label, dc())
                _apply_section(obj, section, items, path)
                continue
        raise ConfigurationError(f"{path}: unknown section [{section}]")
    return cfg


def apply_overrides(cfg: SimConfig, overrides: list[str]) -> SimConfig:
    """Apply ``section.key=value`` strings (the CLI ``--set`` option)."""
    for text in overrides:
        if "=" not in text:
            raise ConfigurationError(f"--set needs section.key=value, got {text!r}")
        where, raw = text.split("=", 1)
        parts = where.strip().split(".")
        if len(parts) == 2:
            section, key = parts
            if section not in _SCALAR_SECTIONS:
                raise ConfigurationError(f"--set: unknown section {section!r}")
            obj = getattr(cfg, _SCALAR_SECTIONS[section][0])
        elif len(parts) == 3:
            prefix, label, key = parts
            if prefix == "map":
                if label not in cfg.maps:
                    raise ConfigurationError(f"--set: unknown map {label!r}")
                obj = cfg.maps[label]
            elif prefix in _WIRING_SECTIONS:
                table = getattr(cfg, _WIRING_SECTIONS[prefix][0])
                if label not in table:
                    raise ConfigurationError(f"--set: unknown {prefix} {label!r}")
                obj = table[label]
            else:
                raise ConfigurationError(f"--set: unknown section {prefix!r}")
        else:
            raise ConfigurationError(f"--set needs section.key=value, got {text!r}")
        by_name = {f.name: f for f in fields(obj)}
        if key not in by_name:
            raise ConfigurationError(f"--set: unknown key {key!r} in {where!r}")
        setattr(obj, key, _convert(raw.strip(), by_name[key].type_resolved, where))
    return cfg


def save_config(cfg: SimConfig, path) -> None:
    """Write the full configuration in the file format ``load_config`` reads."""
    parser = configparser.ConfigParser(interpolation=None)

    def put(section: str, obj) -> None:
        parser[section] = {
            f.name: repr(getattr(obj, f.name)) for f in fields(obj)
        }

    put("grid", cfg.grid)
    put("dynamics", cfg.dynamics)
    for name in MAP_IDS:
        if name in cfg.maps:
            put(f"map.{name}", cfg.maps[name])
    for label, obj in cfg.projections.items():
        put(f"projection.{label}", obj)
    for label, obj in cfg.gated.items():
        put(f"gated.{label}", obj)
    for label, obj in cfg.convolutions.items():
        put(f"convolution.{label}", obj)
    put("scene", cfg.scene)
    put("scan", cfg.scan)
    with open(path, "w", encoding="utf-8") as fh:
        parser.write(fh)


def copy_config(cfg: SimConfig) -> SimConfig:
    """Deep copy so callers can tweak one trial's parameters safely."""
    return SimConfig(
        grid=replace(cfg.grid),
        dynamics=replace(cfg.dynamics),
        maps={k: replace(v) for k, v in cfg.maps.items()},
        projections={k: replace(v) for k, v in cfg.projections.items()},
        gated={k: replace(v) for k, v in cfg.gated.items()},
        convolutions={k: replace(v) for k, v in cfg.convolutions.items()},
        scene=replace(cfg.scene),
        scan=replace(cfg.scan),
    )
