"""Scenario configuration: YAML documents validated into typed objects.

Example::

    schema_version: 1
    mode: nash_search
    game: welfare
    initial_state: [0, 1]
    correlation: {kind: dephased}
    space_a: su2_two
    space_b: su2_two
    search: {grid_resolution: 33}

Angles may be numbers, rational multiples of pi ("1/2 pi", "-3/4 pi", "pi")
or arc-cosines of rationals ("acos(-3/5)").  Unknown keys are errors.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Any, Mapping

import yaml

from .equilibrium import SearchConfig
from .errors import BadParameter, BadProbability, ConfigError
from .game import PayoffMatrix2x2, welfare
from .protocol import CorrelationKind, CorrelationState, build_correlation
from .strategies import FLIP, PHASE, SIGMA0, StrategyParams, StrategySpace

SCHEMA_VERSION = 1
MODES = ("payoff_eval", "nash_search", "corrupted_sweep", "extended_matrix", "classical_analysis")

_TOP_KEYS = {
    "schema_version", "mode", "name", "game", "initial_state", "correlation",
    "space_a", "space_b", "strategy_a", "strategy_b", "search", "p_values",
    "extra_a", "extra_b", "reproduce",
}
_REQUIRED = {
    "payoff_eval": ("strategy_a", "strategy_b"),
    "nash_search": ("space_a", "space_b"),
    "corrupted_sweep": ("space_a", "space_b", "p_values"),
    "extended_matrix": (),
    "classical_analysis": (),
}
_SEARCH_KEYS = {f.name for f in fields(SearchConfig)}
_SEARCH_INTS = {"grid_resolution", "refine_iters", "max_profiles", "max_candidates", "inner_resolution"}
_NAMED_OPS = {"sigma0": SIGMA0, "i*sigma_y": FLIP, "i*sigma_z": PHASE}

_RATIONAL = r"[+-]?\d+(?:\.\d*)?(?:/\d+)?"
_PI_RE = re.compile(rf"^\s*(?P<c>{_RATIONAL})?\s*\*?\s*pi\s*(?:/\s*(?P<d>\d+))?\s*$")
_ACOS_RE = re.compile(rf"^\s*acos\(\s*(?P<x>{_RATIONAL})\s*\)\s*$")


def _rational(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


def parse_angle(value: Any) -> float:
    """Angle in radians from a number or one of the symbolic forms."""
    if isinstance(value, bool):
        raise ConfigError(f"angle cannot be a boolean: {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(f"unsupported angle value {value!r}")
    m = _PI_RE.match(value)
    if m:
        coef = _rational(m["c"]) if m["c"] else 1.0
        if m["d"]:
            coef /= int(m["d"])
        return coef * math.pi
    m = _ACOS_RE.match(value)
    if m:
        x = _rational(m["x"])
        if not -1.0 <= x <= 1.0:
            raise ConfigError(f"acos argument {x} outside [-1, 1]")
        return math.acos(x)
    return _rational(value.strip())


def parse_probability(value: Any) -> float:
    if isinstance(value, bool):
        raise ConfigError(f"probability cannot be a boolean: {value!r}")
    p = float(value) if isinstance(value, (int, float)) else _rational(str(value).strip())
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"probability {p} outside [0, 1]")
    return p


def _mapping(value: Any, where: str) -> Mapping:
    if not isinstance(value, Mapping):
        raise ConfigError(f"{where} must be a mapping")
    return value


def _check_keys(d: Mapping, allowed: set, where: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(sorted(map(str, unknown)))}")


def _space(value: Any, where: str) -> StrategySpace:
    try:
        return StrategySpace(value)
    except ValueError:
        names = ", ".join(s.value for s in StrategySpace)
        raise ConfigError(f"{where}: unknown strategy space {value!r} (expected one of {names})") from None


def _game(value: Any) -> PayoffMatrix2x2:
    if value == "welfare":
        return welfare()
    d = _mapping(value, "game")
    _check_keys(d, {"alice", "bob", "row_labels", "col_labels"}, "game")
    if "alice" not in d or "bob" not in d:
        raise ConfigError("game needs 'alice' and 'bob' payoff lists (or the keyword welfare)")
    kw = {k: tuple(d[k]) for k in ("row_labels", "col_labels") if k in d}
    try:
        return PayoffMatrix2x2(tuple(d["alice"]), tuple(d["bob"]), **kw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"game: {exc}") from exc


def _initial(value: Any) -> tuple[int, int]:
    if not isinstance(value, (list, tuple)) or len(value) != 2 or any(v not in (0, 1) for v in value):
        raise ConfigError(f"initial_state must be a pair of bits, got {value!r}")
    return int(value[0]), int(value[1])


def _correlation(value: Any, initial: tuple[int, int]) -> CorrelationState:
    d = _mapping(value, "correlation")
    _check_keys(d, {"kind", "p"}, "correlation")
    try:
        kind = CorrelationKind(d.get("kind"))
    except ValueError:
        raise ConfigError(f"correlation: unknown kind {d.get('kind')!r}") from None
    if kind is CorrelationKind.CORRUPTED:
        if "p" not in d:
            raise ConfigError("correlation: corrupted source needs p")
        return build_correlation(kind, p=parse_probability(d["p"]))
    if "p" in d:
        raise ConfigError(f"correlation: p is only meaningful for the corrupted kind, not {kind.value}")
    return build_correlation(kind, *initial)


def _strategy(value: Any, default_space: StrategySpace | None, where: str) -> StrategyParams:
    d = _mapping(value, where)
    _check_keys(d, {"space", "theta", "phi", "varphi", "p", "move"}, where)
    space = _space(d["space"], where) if "space" in d else default_space
    if space is None:
        raise ConfigError(f"{where}: no strategy space given")
    kw: dict[str, Any] = {}
    for name in ("theta", "phi", "varphi"):
        if name in d:
            kw[name] = parse_angle(d[name])
    if "p" in d:
        kw["p"] = parse_probability(d["p"])
    if "move" in d:
        kw["move"] = d["move"]
    try:
        return StrategyParams(space, **kw)
    except (BadParameter, BadProbability) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _extras(value: Any, where: str) -> list[tuple[str, Any]]:
    if value is None:
        return []
    d = _mapping(value, where)
    out = []
    for name, spec in d.items():
        if isinstance(spec, str):
            if spec not in _NAMED_OPS:
                raise ConfigError(f"{where}.{name}: unknown operator {spec!r}")
            out.append((str(name), _NAMED_OPS[spec]))
        else:
            out.append((str(name), _strategy(spec, StrategySpace.SU2_THREE, f"{where}.{name}")))
    return out


def _search(value: Any) -> SearchConfig:
    if value is None:
        return SearchConfig()
    d = _mapping(value, "search")
    _check_keys(d, _SEARCH_KEYS, "search")
    kw = {}
    try:
        for key, v in d.items():
            if isinstance(v, bool):
                raise ValueError(f"{key} cannot be a boolean")
            if key in _SEARCH_INTS:
                if float(v) != int(float(v)):
                    raise ValueError(f"{key} must be an integer")
                kw[key] = int(float(v))
            else:
                # YAML 1.1 reads "1e-6" as a string.
                kw[key] = None if v is None else float(v)
        return SearchConfig(**kw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"search: {exc}") from exc


@dataclass(frozen=True)
class ScenarioConfig:
    mode: str
    game: PayoffMatrix2x2
    initial_state: tuple[int, int]
    correlation: CorrelationState
    search: SearchConfig
    space_a: StrategySpace | None = None
    space_b: StrategySpace | None = None
    strategy_a: StrategyParams | None = None
    strategy_b: StrategyParams | None = None
    p_values: tuple[float, ...] = ()
    extra_a: list = field(default_factory=list)
    extra_b: list = field(default_factory=list)
    reproduce: str | None = None
    raw: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_dict(cls, data: Any) -> "ScenarioConfig":
        d = _mapping(data, "config")
        _check_keys(d, _TOP_KEYS, "config")
        if "schema_version" not in d:
            raise ConfigError("schema_version is required")
        if d["schema_version"] != SCHEMA_VERSION:
            raise ConfigError(f"unsupported schema_version {d['schema_version']!r}")
        mode = d.get("mode")
        if mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}, got {mode!r}")
        missing = [k for k in _REQUIRED[mode] if k not in d]
        if missing:
            raise ConfigError(f"mode {mode} requires: {', '.join(missing)}")

        initial = _initial(d.get("initial_state", [0, 0]))
        space_a = _space(d["space_a"], "space_a") if "space_a" in d else None
        space_b = _space(d["space_b"], "space_b") if "space_b" in d else None
        p_values = ()
        if "p_values" in d:
            if not isinstance(d["p_values"], list) or not d["p_values"]:
                raise ConfigError("p_values must be a non-empty list")
            p_values = tuple(parse_probability(p) for p in d["p_values"])
        cfg = cls(
            mode=mode,
            game=_game(d.get("game", "welfare")),
            initial_state=initial,
            correlation=_correlation(d.get("correlation", {"kind": "mes"}), initial),
            search=_search(d.get("search")),
            space_a=space_a,
            space_b=space_b,
            strategy_a=_strategy(d["strategy_a"], space_a, "strategy_a") if "strategy_a" in d else None,
            strategy_b=_strategy(d["strategy_b"], space_b, "strategy_b") if "strategy_b" in d else None,
            p_values=p_values,
            extra_a=_extras(d.get("extra_a"), "extra_a"),
            extra_b=_extras(d.get("extra_b"), "extra_b"),
            reproduce=str(d["reproduce"]) if "reproduce" in d else None,
            raw=_canonical(d),
        )
        return cfg

    def to_dict(self) -> dict:
        return dict(self.raw)


def _canonical(d: Mapping) -> dict:
    """Plain-data copy of the config, preserving the user's spellings."""
    return yaml.safe_load(yaml.safe_dump(dict(d), sort_keys=True))


def load_config(text: str) -> ScenarioConfig:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config is not valid YAML: {exc}") from exc
    return ScenarioConfig.from_dict(data)


def load_config_file(path) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return load_config(text)
