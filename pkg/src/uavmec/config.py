"""Configuration: defaults, YAML file loading, overrides, and describe.

The config file is YAML with one section per subsystem. Values are SI
except carrier frequency (GHz), CPU clock (GHz), and bandwidth (MHz).
Unset fields take the documented defaults; picking a band fills in its
usual carrier, bandwidth, and array size unless overridden. Sources are
tracked per field (default | file | flag) and shown by describe(), whose
output is itself a loadable config.
"""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass
from typing import Any

import yaml

from .antenna import ArrayConfig
from .channel import Atmosphere, Band, BandKind, UrbanProfile
from .errors import ParseError, ValidationError
from .link import Environment, RadioConfig
from .power import ComputeParams, MassBudget, PropulsionParams, validate_propulsion
from .scenario import Deployment, R0Mode, ScenarioSpec, Strategy

# section -> key -> (default, unit, note)
DEFAULTS: dict[str, dict[str, tuple]] = {
    "scenario": {
        "strategy": ("hover_offload", "-", "hover_onboard|hover_offload|hover_parallel|mr_offload|mr_parallel"),
        "q_bits": (2.0e9, "bit", "workload size"),
        "v_mps": (10.0, "m/s", "cruise speed for move-and-return"),
    },
    "geometry": {
        "h_u_m": (30.0, "m", "UAV altitude"),
        "h_bs_m": (25.0, "m", "BS height"),
    },
    "environment": {
        "building_height_m": (10.0, "m", "average building height (5-50)"),
        "street_width_m": (15.0, "m", "average street width (5-50)"),
        "temperature_k": (300.0, "K", "ambient and noise temperature"),
        "pressure_pa": (101325.0, "Pa", "ambient pressure"),
        "humidity_pct": (50.0, "%", "relative humidity"),
        "use_2d_distance": (False, "-", "use ground distance where the distance symbol is ambiguous"),
        "nlos_height_term_uses_uav": (False, "-", "mmWave NLoS height term from UAV instead of BS"),
    },
    "band": {
        "kind": ("mmwave", "-", "sub6|mmwave|thz"),
        "f_c_ghz": (None, "GHz", "carrier; per-band default if unset"),
        "bw_mhz": (None, "MHz", "bandwidth; per-band default if unset"),
    },
    "antenna": {
        "m_elems": (None, "-", "array columns; per-band default if unset"),
        "n_elems": (None, "-", "array rows; per-band default if unset"),
        "d_h_wl": (0.5, "wavelengths", "element spacing, horizontal"),
        "d_v_wl": (0.5, "wavelengths", "element spacing, vertical"),
        "g_e_max_dbi": (8.0, "dBi", "peak element gain"),
        "sigma_mismatch_deg": (None, "deg", "pointing error std; per-band default if unset"),
        "uav_gain_dbi": (0.0, "dBi", "isotropic UAV antenna gain"),
    },
    "radio": {
        "p_tx_w": (0.2, "W", "UAV transmit power (~23 dBm)"),
        "p_cm_w": (0.0, "W", "payload communication power; negligible, for sensitivity only"),
        "mc_samples": (256, "-", "mismatch Monte Carlo draws"),
        "rng_seed": (0, "-", "base RNG seed"),
    },
    "compute": {
        "f_cp_ghz": (4.0, "GHz", "CPU clock"),
        "eta_w_per_cps3": (1.0e-28, "W/(cycle/s)^3", "effective capacitance"),
        "c_cp_cycles_per_bit": (500.0, "cycles/bit", "processing complexity"),
        "p_io_w": (0.0, "W", "constant I/O power"),
    },
    "mass": {
        "m_0_kg": (3.0, "kg", "airframe mass without computer"),
        "m_cp_kg": (0.5, "kg", "onboard computer mass"),
    },
    "propulsion": {
        # Representative constants for a ~3.5 kg quadrotor; platform-specific,
        # externally sourced, not fitted to any particular airframe.
        "c0_w": (3.0, "W", "motor polynomial, constant"),
        "c1": (3.0e-3, "W/(rad/s)", "motor polynomial, linear"),
        "c2": (1.0e-5, "W/(rad/s)^2", "motor polynomial, quadratic"),
        "c3": (1.3e-7, "W/(rad/s)^3", "motor polynomial, cubic"),
        "c4": (1.0e-11, "W/(rad/s)^4", "motor polynomial, quartic"),
        "c_t": (1.0e-5, "N/(rad/s)^2", "thrust coefficient"),
        "c_d": (0.03, "N/(m/s)^2", "lumped drag coefficient"),
        "g_mps2": (9.81, "m/s^2", "gravitational acceleration"),
        "v_max_mps": (30.0, "m/s", "velocity range validated at load"),
    },
    "deployment": {
        "lambda_c_per_m2": (2.0e-7, "1/m^2", "BS density"),
        "p_a": (1.0, "-", "probability a BS offers MEC"),
        "r0_mode": ("analytic_mean", "-", "analytic_mean|sampled_nearest"),
        "r_min_m": (10.0, "m", "minimum standoff distance"),
        "n_drops": (32, "-", "draws in sampled_nearest mode"),
    },
}

# Filled in for unset band-dependent fields once the band kind is known.
BAND_PRESETS = {
    "sub6": {"f_c_ghz": 2.0, "bw_mhz": 1.0, "m_elems": 1, "n_elems": 1, "sigma_mismatch_deg": 0.0},
    "mmwave": {"f_c_ghz": 30.0, "bw_mhz": 100.0, "m_elems": 8, "n_elems": 8, "sigma_mismatch_deg": 0.0},
    "thz": {"f_c_ghz": 350.0, "bw_mhz": 1000.0, "m_elems": 16, "n_elems": 16, "sigma_mismatch_deg": 3.0},
}

_BAND_FIELD_SECTION = {
    "f_c_ghz": "band",
    "bw_mhz": "band",
    "m_elems": "antenna",
    "n_elems": "antenna",
    "sigma_mismatch_deg": "antenna",
}

STRATEGY_ALIASES = {
    "a": "hover_onboard",
    "b": "hover_offload",
    "c": "hover_parallel",
    "mr_b": "mr_offload",
    "mr-b": "mr_offload",
    "mr_c": "mr_parallel",
    "mr-c": "mr_parallel",
}

# Sweep-axis shorthand -> config path.
AXIS_ALIASES = {
    "deployment.lambda_c": "deployment.lambda_c_per_m2",
    "lambda_c": "deployment.lambda_c_per_m2",
    "q_bits": "scenario.q_bits",
    "v": "scenario.v_mps",
    "mass.m_cp": "mass.m_cp_kg",
    "m_cp": "mass.m_cp_kg",
    "compute.c_cp": "compute.c_cp_cycles_per_bit",
    "c_cp": "compute.c_cp_cycles_per_bit",
    "compute.f_cp": "compute.f_cp_ghz",
    "p_a": "deployment.p_a",
    "sigma": "antenna.sigma_mismatch_deg",
}


def parse_strategy(name: str) -> Strategy:
    key = str(name).strip().lower()
    key = STRATEGY_ALIASES.get(key, key)
    try:
        return Strategy(key)
    except ValueError:
        raise ValidationError(
            f"unknown strategy {name!r}; expected one of "
            f"{[s.value for s in Strategy]} or aliases {sorted(STRATEGY_ALIASES)}"
        ) from None


@dataclass
class ResolvedConfig:
    """A fully-resolved parameter set plus the source of every value."""

    data: dict[str, dict[str, Any]]
    sources: dict[str, str]

    def copy(self) -> "ResolvedConfig":
        return ResolvedConfig(copy.deepcopy(self.data), dict(self.sources))

    def get(self, path: str):
        section, key = _split_path(path)
        return self.data[section][key]

    def set(self, path: str, value, source: str = "flag") -> None:
        section, key = _split_path(path)
        if section not in self.data or key not in self.data[section]:
            raise ValidationError(f"unknown config field {section}.{key}")
        self.data[section][key] = _coerce(value, DEFAULTS[section][key][0])
        self.sources[f"{section}.{key}"] = source

    def config_hash(self) -> str:
        blob = json.dumps(self.data, sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()[:12]

    def to_spec(self) -> ScenarioSpec:
        return build_spec(self)

    def describe(self) -> str:
        return describe(self)


def _split_path(path: str) -> tuple[str, str]:
    path = AXIS_ALIASES.get(path, path)
    if "." not in path:
        raise ValidationError(f"config path {path!r} must look like section.key")
    section, key = path.split(".", 1)
    return section, key


def _coerce(value, template):
    """Parse a string override into the type of the default it replaces."""
    if hasattr(value, "item") and not isinstance(value, str):
        value = value.item()  # numpy scalar -> python scalar
    if isinstance(value, str):
        text = value.strip()
        if isinstance(template, bool):
            if text.lower() in ("true", "1", "yes", "on"):
                return True
            if text.lower() in ("false", "0", "no", "off"):
                return False
            raise ValidationError(f"cannot parse {value!r} as a boolean")
        if isinstance(template, int) and not isinstance(template, bool):
            return int(float(text))
        if isinstance(template, float) or template is None:
            try:
                return float(text)
            except ValueError:
                return text
        return text
    return value


def axis_template(path: str):
    """Default value behind an axis path; raises if the path is unknown."""
    section, key = _split_path(path)
    if section not in DEFAULTS or key not in DEFAULTS[section]:
        raise ValidationError(f"unknown config field {section}.{key}")
    return DEFAULTS[section][key][0]


def default_config() -> ResolvedConfig:
    data = {sec: {k: spec[0] for k, spec in keys.items()} for sec, keys in DEFAULTS.items()}
    sources = {f"{sec}.{k}": "default" for sec, keys in DEFAULTS.items() for k in keys}
    return ResolvedConfig(data, sources)


def load_config(path: str | None, overrides: dict[str, Any] | None = None) -> ResolvedConfig:
    """Build a resolved config from defaults, a YAML file, and overrides.

    path may be None (defaults only). overrides map config paths or axis
    aliases to values and are recorded with source "flag".
    """
    cfg = default_config()
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
            raise ParseError(f"cannot parse {path}{where}: {exc}") from exc
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from exc
        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ParseError(f"{path}: top level must be a mapping of sections")
        for section, keys in raw.items():
            if section not in DEFAULTS:
                raise ParseError(f"{path}: unknown section {section!r}")
            if keys is None:
                continue
            if not isinstance(keys, dict):
                raise ParseError(f"{path}: section {section!r} must be a mapping")
            for key, value in keys.items():
                if key not in DEFAULTS[section]:
                    raise ParseError(f"{path}: unknown field {section}.{key}")
                cfg.data[section][key] = _coerce(value, DEFAULTS[section][key][0])
                cfg.sources[f"{section}.{key}"] = "file"
    for p, v in (overrides or {}).items():
        cfg.set(p, v, source="flag")
    _fill_band_defaults(cfg)
    return cfg


def _fill_band_defaults(cfg: ResolvedConfig) -> None:
    kind = str(cfg.data["band"]["kind"]).lower()
    if kind not in BAND_PRESETS:
        raise ValidationError(f"band.kind must be one of {sorted(BAND_PRESETS)}, got {kind!r}")
    cfg.data["band"]["kind"] = kind
    for field_name, preset_value in BAND_PRESETS[kind].items():
        section = _BAND_FIELD_SECTION[field_name]
        if cfg.data[section][field_name] is None:
            cfg.data[section][field_name] = preset_value
            cfg.sources[f"{section}.{field_name}"] = "default"


def build_spec(cfg: ResolvedConfig) -> ScenarioSpec:
    """Construct and validate the scenario from a resolved config."""
    d = cfg.data
    band = Band(
        f_c=float(d["band"]["f_c_ghz"]) * 1e9,
        bw=float(d["band"]["bw_mhz"]) * 1e6,
        kind=BandKind(d["band"]["kind"]),
    )
    array = ArrayConfig(
        m_elems=int(d["antenna"]["m_elems"]),
        n_elems=int(d["antenna"]["n_elems"]),
        d_h=float(d["antenna"]["d_h_wl"]),
        d_v=float(d["antenna"]["d_v_wl"]),
        g_e_max=float(d["antenna"]["g_e_max_dbi"]),
        sigma_mismatch=float(d["antenna"]["sigma_mismatch_deg"]),
    )
    radio = RadioConfig(
        p_tx=float(d["radio"]["p_tx_w"]),
        band=band,
        array=array,
        uav_gain=float(d["antenna"]["uav_gain_dbi"]),
        mc_samples=int(d["radio"]["mc_samples"]),
        rng_seed=int(d["radio"]["rng_seed"]),
    )
    env = Environment(
        urban=UrbanProfile(
            h_building=float(d["environment"]["building_height_m"]),
            street_width=float(d["environment"]["street_width_m"]),
        ),
        atmosphere=Atmosphere(
            t_kelvin=float(d["environment"]["temperature_k"]),
            p_pascal=float(d["environment"]["pressure_pa"]),
            phi_humidity=float(d["environment"]["humidity_pct"]),
        ),
        use_2d_distance=bool(d["environment"]["use_2d_distance"]),
        nlos_height_term_uses_uav=bool(d["environment"]["nlos_height_term_uses_uav"]),
    )
    mass = MassBudget(m_0=float(d["mass"]["m_0_kg"]), m_cp=float(d["mass"]["m_cp_kg"]))
    propulsion = PropulsionParams(
        c0=float(d["propulsion"]["c0_w"]),
        c1=float(d["propulsion"]["c1"]),
        c2=float(d["propulsion"]["c2"]),
        c3=float(d["propulsion"]["c3"]),
        c4=float(d["propulsion"]["c4"]),
        c_t=float(d["propulsion"]["c_t"]),
        c_d=float(d["propulsion"]["c_d"]),
        g=float(d["propulsion"]["g_mps2"]),
        v_max_validated=float(d["propulsion"]["v_max_mps"]),
    )
    compute = ComputeParams(
        f_cp=float(d["compute"]["f_cp_ghz"]) * 1e9,
        eta=float(d["compute"]["eta_w_per_cps3"]),
        p_io=float(d["compute"]["p_io_w"]),
        c_cp=float(d["compute"]["c_cp_cycles_per_bit"]),
    )
    deployment = Deployment(
        lambda_c=float(d["deployment"]["lambda_c_per_m2"]),
        p_a=float(d["deployment"]["p_a"]),
        r0_mode=R0Mode(str(d["deployment"]["r0_mode"]).lower()),
        r_min=float(d["deployment"]["r_min_m"]),
        n_drops=int(d["deployment"]["n_drops"]),
    )
    spec = ScenarioSpec(
        strategy=parse_strategy(d["scenario"]["strategy"]),
        q_bits=float(d["scenario"]["q_bits"]),
        v=float(d["scenario"]["v_mps"]),
        h_u=float(d["geometry"]["h_u_m"]),
        h_bs=float(d["geometry"]["h_bs_m"]),
        mass=mass,
        propulsion=propulsion,
        compute=compute,
        radio=radio,
        env=env,
        deployment=deployment,
        p_cm_w=float(d["radio"]["p_cm_w"]),
    )
    validate_propulsion(propulsion, mass)
    return spec


def _render_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        return repr(value)
    return str(value)


def describe(cfg: ResolvedConfig) -> str:
    """Dump every resolved value with its unit and source, as loadable YAML."""
    lines = []
    for section, keys in DEFAULTS.items():
        lines.append(f"{section}:")
        for key in keys:
            value = cfg.data[section][key]
            unit = keys[key][1]
            source = cfg.sources.get(f"{section}.{key}", "default")
            lines.append(f"  {key}: {_render_scalar(value)}  # {unit} | {source}")
    return "\n".join(lines) + "\n"
