"""Run configuration: strict TOML parsing and canonical serialization.

A configuration is a flat TOML document with one level of tables::

    command = "rates"
    signal = "weierstrass(0.9, 12)"
    method = {p = "cesaro(1)", q = "ones", mode = "almost", r = 0}
    n_values = [16, 32, 64, 128, 256]

    [lip]
    alpha = 0.9
    r = 2

``method`` may also be a classic name: ``"cesaro(1)"``, ``"harmonic"``,
``"norlund(<weights>)"`` or ``"riesz(<weights>)"``. Unknown keys are errors.
``serialize`` emits every field, so ``parse(serialize(c)) == c``.
"""
from __future__ import annotations

import math
import re
from dataclasses import asdict, dataclass, field, fields, replace

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import signals
from .errors import AlmostNorlundError, ConfigError
from .fourier import PrincipalValueSpec, Signal
from .lipnorms import INF, LipClassSpec
from .means import MODES, MethodSpec
from .weights import WeightSequence

COMMANDS = ("classify", "conjugate", "means", "rates", "corollaries")


@dataclass(frozen=True)
class MethodConfig:
    p: str = "cesaro(1)"
    q: str = "ones"
    mode: str = "almost"
    r: int = 0


@dataclass(frozen=True)
class LipConfig:
    alpha: float = 0.9
    r: float = 2.0


@dataclass(frozen=True)
class QuadratureConfig:
    grid_points: int = 16384
    coefficient_grid: int = 16384
    gl_order: int = 8
    pv_h: float = 1e-6
    pv_panels: int = 2048
    pv_levels: int = 5


@dataclass(frozen=True)
class VerifyConfig:
    slope_tolerance: float = 0.15
    delta: float = 0.25
    x_points: int = 64
    pv_tolerance: float = 1e-5


@dataclass(frozen=True)
class ClassifyConfig:
    variation_class: str = "RBVS"
    N: int = 64
    tail_horizon: int | None = None
    K: float | None = None


@dataclass(frozen=True)
class RunConfig:
    command: str
    signal: str = "weierstrass(0.9, 12)"
    method: MethodConfig = field(default_factory=MethodConfig)
    sequence: str = "geometric(0.5)"
    n_values: tuple = (16, 32, 64, 128, 256)
    output: str = "out/run"
    seed: int = 0
    lip: LipConfig = field(default_factory=LipConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    classify: ClassifyConfig = field(default_factory=ClassifyConfig)

    # builders -------------------------------------------------------------

    def build_signal(self) -> Signal:
        m = re.fullmatch(r"\s*randtrig\(\s*(\d+)\s*\)\s*", self.signal)
        if m:
            rng = np.random.default_rng(self.seed)
            return signals.random_trig_polynomial(rng, int(m.group(1)))
        return signals.from_spec(self.signal)

    def build_method(self) -> MethodSpec:
        mc = self.method
        return MethodSpec(WeightSequence.parse(mc.p), WeightSequence.parse(mc.q), mc.mode, mc.r)

    def build_sequence(self) -> WeightSequence:
        return WeightSequence.parse(self.sequence)

    def build_lip(self) -> LipClassSpec:
        return LipClassSpec(self.lip.alpha, self.lip.r)

    def build_pv(self) -> PrincipalValueSpec:
        qc = self.quadrature
        return PrincipalValueSpec(qc.pv_h, qc.pv_panels, "geometric", qc.pv_levels, qc.gl_order)


# parsing ------------------------------------------------------------------------

_SECTIONS = {
    "lip": LipConfig,
    "quadrature": QuadratureConfig,
    "verify": VerifyConfig,
    "classify": ClassifyConfig,
}
_TOP = ("command", "signal", "method", "sequence", "n_values", "output", "seed")
_CLASSIC = re.compile(r"^\s*(cesaro|harmonic|norlund|riesz)\s*(?:\((.*)\))?\s*$")


def _typed(section: str, key: str, value, kind):
    where = f"{section}.{key}" if section else key
    if kind in ("int", "int | None"):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where}: expected integer, got {value!r}")
        return value
    if kind in ("float", "float | None"):
        if isinstance(value, str) and value.strip().lower() in ("inf", "infinity"):
            return INF
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{where}: expected number, got {value!r}")
        return float(value)
    if kind == "str":
        if not isinstance(value, str):
            raise ConfigError(f"{where}: expected string, got {value!r}")
        return value
    raise AssertionError(kind)


def _section(name: str, cls, table) -> object:
    if not isinstance(table, dict):
        raise ConfigError(f"[{name}] must be a table")
    known = {f.name: f for f in fields(cls)}
    unknown = set(table) - set(known)
    if unknown:
        raise ConfigError(f"unknown key(s) in [{name}]: {sorted(unknown)}")
    kwargs = {k: _typed(name, k, v, known[k].type) for k, v in table.items()}
    return cls(**kwargs)


def _method(value) -> MethodConfig:
    if isinstance(value, str):
        m = _CLASSIC.match(value)
        if m is None:
            raise ConfigError(f"unknown method {value!r}")
        name, arg = m.group(1), (m.group(2) or "").strip()
        if name == "cesaro":
            return MethodConfig(p=f"cesaro({arg})", q="ones")
        if name == "harmonic":
            if arg:
                raise ConfigError("harmonic takes no argument")
            return MethodConfig(p="harmonic", q="ones")
        if not arg:
            raise ConfigError(f"{name} needs a weight sequence argument")
        return MethodConfig(p=arg, q="ones") if name == "norlund" else MethodConfig(p="ones", q=arg)
    if isinstance(value, dict):
        return _section("method", MethodConfig, value)
    raise ConfigError(f"method must be a string or inline table, got {value!r}")


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a configuration document.

    Raises
    ------
    ConfigError
        On malformed TOML, unknown keys or names, wrong types, or
        non-increasing ``n_values``.
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed configuration: {exc}") from None
    unknown = set(doc) - set(_TOP) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown key(s): {sorted(unknown)}")
    if "command" not in doc:
        raise ConfigError("missing required key 'command'")
    kwargs = {}
    for key in ("command", "signal", "sequence", "output"):
        if key in doc:
            kwargs[key] = _typed("", key, doc[key], "str")
    if "seed" in doc:
        kwargs["seed"] = _typed("", "seed", doc["seed"], "int")
    if "n_values" in doc:
        nv = doc["n_values"]
        if not isinstance(nv, list) or not nv:
            raise ConfigError("n_values must be a non-empty list of integers")
        kwargs["n_values"] = tuple(_typed("", "n_values", v, "int") for v in nv)
    if "method" in doc:
        kwargs["method"] = _method(doc["method"])
    for name, cls in _SECTIONS.items():
        if name in doc:
            kwargs[name] = _section(name, cls, doc[name])
    cfg = RunConfig(**kwargs)
    return normalize(cfg)


def normalize(cfg: RunConfig) -> RunConfig:
    """Validate ``cfg`` and rewrite names into canonical form."""
    if cfg.command not in COMMANDS:
        raise ConfigError(f"unknown command {cfg.command!r}; expected one of {COMMANDS}")
    nv = cfg.n_values
    if any(n < 0 for n in nv) or any(b <= a for a, b in zip(nv, nv[1:])):
        raise ConfigError(f"n_values must be nonnegative and strictly increasing, got {nv}")
    mc = cfg.method
    if mc.mode not in MODES:
        raise ConfigError(f"method.mode must be one of {MODES}, got {mc.mode!r}")
    cls = cfg.classify.variation_class.upper()
    if cls not in ("HBVS", "RBVS"):
        raise ConfigError(f"classify.variation_class must be HBVS or RBVS, got {cls!r}")
    try:
        signal = cfg.signal
        if not re.fullmatch(r"\s*randtrig\(\s*\d+\s*\)\s*", signal):
            signal = signals.from_spec(signal).description
        else:
            signal = re.sub(r"\s+", "", signal)
        method = MethodConfig(WeightSequence.parse(mc.p).spec, WeightSequence.parse(mc.q).spec,
                              mc.mode, mc.r)
        sequence = WeightSequence.parse(cfg.sequence).spec
        cfg = replace(cfg, signal=signal, method=method, sequence=sequence,
                      classify=replace(cfg.classify, variation_class=cls))
        cfg.build_method()
        cfg.build_lip()
        cfg.build_pv()
    except ConfigError:
        raise
    except AlmostNorlundError as exc:
        raise ConfigError(str(exc)) from None
    q = cfg.quadrature
    if q.grid_points < 64 or q.coefficient_grid < 64:
        raise ConfigError("quadrature grids need at least 64 points")
    if cfg.verify.x_points < 1:
        raise ConfigError("verify.x_points must be positive")
    return cfg


# serialization --------------------------------------------------------------------


def _value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, (tuple, list)):
        return "[" + ", ".join(_value(x) for x in v) + "]"
    raise TypeError(v)


def serialize(cfg: RunConfig) -> str:
    """Canonical TOML text for ``cfg``; ``None`` fields are omitted."""
    lines = [
        f"command = {_value(cfg.command)}",
        f"signal = {_value(cfg.signal)}",
        "method = {" + ", ".join(f"{k} = {_value(v)}" for k, v in asdict(cfg.method).items())
        + "}",
        f"sequence = {_value(cfg.sequence)}",
        f"n_values = {_value(list(cfg.n_values))}",
        f"output = {_value(cfg.output)}",
        f"seed = {_value(cfg.seed)}",
    ]
    for name in _SECTIONS:
        lines.append("")
        lines.append(f"[{name}]")
        for k, v in asdict(getattr(cfg, name)).items():
            if v is not None:
                lines.append(f"{k} = {_value(v)}")
    return "\n".join(lines) + "\n"
