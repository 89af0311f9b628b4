"""Scenario configuration: a YAML key tree with defaults and validation."""

from __future__ import annotations

import copy
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import yaml

from .cavity import CavityConfig, ModeSpec, UnitSystem, mode_bank
from .classical import SpatialProfile, TimeAmplitude

__all__ = ["CHECK_NAMES", "DEFAULTS", "ConfigIssue", "ConfigError", "ScenarioConfig",
           "validate_config", "load_config", "parse_overrides", "default_config_text"]

CHECK_NAMES = (
    "maxwell", "energy", "hamiltonian", "duality", "ccr", "vacuum",
    "classical-limit", "g-operator", "f-alpha", "local-commutator", "density",
)

DEFAULTS: dict = {
    "cavity": {"L": 1.0, "V": 1.0, "units": "GaussianNatural", "T": None},
    "modes": {"count": 1, "overrides": []},
    "grid": {"n_z": 65, "n_t": 65, "t_span": None, "refinements": 3},
    "quantization": {
        "hbar": 1.0, "lambda0": 1.0, "cutoff": 24, "d_z": 12, "d_t": 12,
        "coherent_alpha": [2.0, 0.0], "classical_cutoff": 64,
    },
    "checks": {
        "names": list(CHECK_NAMES),
        "seed": 20181102,
        "limit_grid": 33,
        "multi_modes": 3,
        "random_sets": 5,
        "samples": 100,
        "thetas": [0.0, math.pi / 6, math.pi / 4, math.pi / 2, 1.0],
        "tolerances": {
            "maxwell": 1.9, "energy": 1e-10, "hamiltonian": 1e-10, "duality": 1e-12,
            "ccr": 1e-12, "ccr-space": 1e-12, "vacuum": 1e-12, "classical-limit": 1e-8,
            "g-operator": 1e-10, "f-alpha": 1e-12, "local-commutator": 1e-12,
            "density": 1e-9, "density-cross": 1e-12,
        },
    },
    "output": {"directory": "dualcav-out", "formats": ["columns", "json", "csv"]},
}

_MODE_KEYS = {"alpha", "C1", "C2", "m", "A_general", "profile"}


class _Loader(yaml.SafeLoader):
    """Safe loader that also reads exponent floats without a dot, such as ``1e-12``."""


_Loader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(r"""^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
                  |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
                  |\.[0-9_]+(?:[eE][-+][0-9]+)?
                  |[-+]?\.(?:inf|Inf|INF)
                  |\.(?:nan|NaN|NAN))$""", re.X),
    list("-+0123456789."))


@dataclass(frozen=True)
class ConfigIssue:
    field: str
    message: str

    def __str__(self):
        return f"{self.field}: {self.message}"


class ConfigError(ValueError):
    def __init__(self, issues: Iterable[ConfigIssue]):
        self.issues = list(issues)
        super().__init__("; ".join(str(i) for i in self.issues))


def _merge(base: dict, extra: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in extra.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


def _complex(value) -> complex:
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError("complex values are [re, im]")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict):
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    return complex(value)


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def _positive(tree, path, issues, integer=False, minimum=None):
    node = tree
    for part in path.split("."):
        node = node.get(part) if isinstance(node, dict) else None
    bad = not _is_number(node) or (integer and int(node) != node)
    if minimum is None:
        bad = bad or node <= 0
        rule = "must be a positive " + ("integer" if integer else "number")
    else:
        bad = bad or node < minimum
        rule = f"must be {'an integer' if integer else 'a number'} >= {minimum}"
    if bad:
        issues.append(ConfigIssue(path, f"{rule}, got {node!r}"))


def _validate_tree(tree: dict) -> list[ConfigIssue]:
    issues: list[ConfigIssue] = []
    for section in tree:
        if section not in DEFAULTS:
            issues.append(ConfigIssue(section, "unknown section"))
        elif not isinstance(tree[section], dict):
            issues.append(ConfigIssue(section, "must be a mapping"))
    if issues:
        return issues
    for path in ("cavity.L", "cavity.V", "quantization.hbar", "quantization.lambda0"):
        _positive(tree, path, issues)
    _positive(tree, "modes.count", issues, integer=True, minimum=1)
    _positive(tree, "grid.n_z", issues, integer=True, minimum=3)
    _positive(tree, "grid.n_t", issues, integer=True, minimum=3)
    _positive(tree, "grid.refinements", issues, integer=True, minimum=2)
    for path in ("quantization.cutoff", "quantization.d_z", "quantization.d_t",
                 "quantization.classical_cutoff"):
        _positive(tree, path, issues, integer=True, minimum=2)
    for path in ("checks.multi_modes", "checks.random_sets", "checks.samples",
                 "checks.limit_grid"):
        _positive(tree, path, issues, integer=True, minimum=1)
    if not isinstance(tree["checks"].get("seed"), int):
        issues.append(ConfigIssue("checks.seed", "must be an integer"))
    units = tree["cavity"].get("units")
    if units not in {u.value for u in UnitSystem}:
        issues.append(ConfigIssue("cavity.units", f"must be SI or GaussianNatural, got {units!r}"))
    T = tree["cavity"].get("T")
    if T is not None and not (_is_number(T) and T > 0):
        issues.append(ConfigIssue("cavity.T", f"must be positive or null, got {T!r}"))
    span = tree["grid"].get("t_span")
    if span is not None and not (isinstance(span, list) and len(span) == 2
                                 and all(_is_number(x) for x in span) and span[1] > span[0]):
        issues.append(ConfigIssue("grid.t_span", "must be null or [t_start, t_stop] with t_stop > t_start"))
    try:
        _complex(tree["quantization"].get("coherent_alpha"))
    except (TypeError, ValueError):
        issues.append(ConfigIssue("quantization.coherent_alpha", "must be a number or [re, im]"))
    names = tree["checks"].get("names")
    if not isinstance(names, list) or not names:
        issues.append(ConfigIssue("checks.names", "must be a non-empty list"))
    else:
        for name in names:
            if name not in CHECK_NAMES:
                issues.append(ConfigIssue("checks.names", f"unknown check {name!r}"))
    thetas = tree["checks"].get("thetas")
    if not (isinstance(thetas, list) and thetas and all(_is_number(x) for x in thetas)):
        issues.append(ConfigIssue("checks.thetas", "must be a non-empty list of angles"))
    tols = tree["checks"].get("tolerances")
    if not isinstance(tols, dict):
        issues.append(ConfigIssue("checks.tolerances", "must be a mapping"))
    else:
        for name, tol in tols.items():
            if not (_is_number(tol) and tol > 0):
                issues.append(ConfigIssue(f"checks.tolerances.{name}", f"must be > 0, got {tol!r}"))
    overrides = tree["modes"].get("overrides") or []
    if not isinstance(overrides, list):
        issues.append(ConfigIssue("modes.overrides", "must be a list"))
        overrides = []
    count = tree["modes"].get("count")
    for i, entry in enumerate(overrides):
        where = f"modes.overrides[{i}]"
        if not isinstance(entry, dict):
            issues.append(ConfigIssue(where, "must be a mapping"))
            continue
        for key in sorted(set(entry) - _MODE_KEYS):
            issues.append(ConfigIssue(f"{where}.{key}", "unknown key"))
        alpha = entry.get("alpha")
        if not (isinstance(alpha, int) and _is_number(count) and 1 <= alpha <= count):
            issues.append(ConfigIssue(f"{where}.alpha", f"must be in 1..modes.count, got {alpha!r}"))
        for key in ("m", "A_general"):
            if key in entry and not (_is_number(entry[key]) and entry[key] > 0):
                issues.append(ConfigIssue(f"{where}.{key}", f"must be positive, got {entry[key]!r}"))
        for key in ("C1", "C2"):
            if key in entry:
                try:
                    _complex(entry[key])
                except (TypeError, ValueError):
                    issues.append(ConfigIssue(f"{where}.{key}", "must be a number or [re, im]"))
        if entry.get("profile", "cosine") not in ("sine", "cosine"):
            issues.append(ConfigIssue(f"{where}.profile", "must be sine or cosine"))
    if not issues:
        try:
            ScenarioConfig(tree).cavity
        except ValueError as exc:
            issues.append(ConfigIssue("cavity", str(exc)))
    return issues


class ScenarioConfig:
    """Validated scenario; ``tree`` holds the merged key tree."""

    def __init__(self, tree: Optional[dict] = None):
        self.tree = _merge(DEFAULTS, tree or {})

    @classmethod
    def from_mapping(cls, data: Optional[dict]) -> "ScenarioConfig":
        cfg = cls(data)
        issues = _validate_tree(cfg.tree)
        if issues:
            raise ConfigError(issues)
        return cfg

    def section(self, name: str) -> dict:
        return self.tree[name]

    @property
    def cavity(self) -> CavityConfig:
        c = self.tree["cavity"]
        if c["units"] == UnitSystem.SI.value:
            return CavityConfig.si(c["L"], c["V"], T=c["T"])
        return CavityConfig.natural(c["L"], c["V"], T=c["T"])

    @property
    def natural_cavity(self) -> CavityConfig:
        """Same geometry in units with ``eps0 = mu0 = c = 1``."""
        c = self.tree["cavity"]
        return CavityConfig.natural(c["L"], c["V"], T=c["T"])

    def _mode_entries(self) -> list[dict]:
        entries = [{} for _ in range(self.tree["modes"]["count"])]
        for entry in self.tree["modes"].get("overrides") or []:
            entries[entry["alpha"] - 1].update(entry)
        return entries

    def modes(self, cavity: Optional[CavityConfig] = None) -> list[ModeSpec]:
        entries = self._mode_entries()
        return mode_bank(len(entries), cavity or self.cavity,
                         masses=[e.get("m", 1.0) for e in entries],
                         A_general=[e.get("A_general", 1.0) for e in entries])

    def amplitudes(self, modes: list[ModeSpec]) -> list[TimeAmplitude]:
        """Per-mode amplitudes; default ``q(t) = cos(w t)``."""
        return [TimeAmplitude(_complex(e.get("C1", 0.5)), _complex(e.get("C2", 0.5)), m.omega)
                for e, m in zip(self._mode_entries(), modes)]

    def profiles(self, modes: list[ModeSpec]) -> list[SpatialProfile]:
        return [SpatialProfile.named(e.get("profile", "cosine"), m.k)
                for e, m in zip(self._mode_entries(), modes)]

    def t_span(self, cavity: Optional[CavityConfig] = None) -> tuple[float, float]:
        span = self.tree["grid"]["t_span"]
        if span is None:
            cav = cavity or self.cavity
            return 0.0, 2.0 * cav.L / cav.c
        return float(span[0]), float(span[1])

    def tolerance(self, name: str) -> float:
        return float(self.tree["checks"]["tolerances"][name])

    @property
    def check_names(self) -> list[str]:
        return list(self.tree["checks"]["names"])

    @property
    def coherent_alpha(self) -> complex:
        return _complex(self.tree["quantization"]["coherent_alpha"])

    def dump(self) -> str:
        return yaml.safe_dump(self.tree, sort_keys=True)


def parse_overrides(pairs: Iterable[str]) -> dict:
    """``["grid.n_z=129", ...]`` to a nested mapping; values are YAML scalars."""
    out: dict = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError([ConfigIssue(pair, "override must look like key=value")])
        key, raw = pair.split("=", 1)
        node = out
        parts = key.strip().split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
        node[parts[-1]] = yaml.load(raw, Loader=_Loader)
    return out


def _read_tree(path) -> tuple[Optional[dict], list[ConfigIssue]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        return None, [ConfigIssue(str(path), f"cannot read config: {exc.strerror or exc}")]
    try:
        data = yaml.load(text, Loader=_Loader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark is not None else "config"
        return None, [ConfigIssue(where, f"malformed YAML: {getattr(exc, 'problem', exc)}")]
    if data is None:
        data = {}
    if not isinstance(data, dict):
        return None, [ConfigIssue("config", "top level must be a mapping")]
    return data, []


def validate_config(path, overrides: Iterable[str] = ()) -> list[ConfigIssue]:
    """Every problem found in the file; an empty list means the config is valid."""
    data, issues = ({}, []) if path is None else _read_tree(path)
    if issues:
        return issues
    try:
        data = _merge(data, parse_overrides(overrides))
    except ConfigError as exc:
        return exc.issues
    return _validate_tree(ScenarioConfig(data).tree)


def load_config(path=None, overrides: Iterable[str] = ()) -> ScenarioConfig:
    data: dict = {}
    if path is not None:
        data, issues = _read_tree(path)
        if issues:
            raise ConfigError(issues)
    return ScenarioConfig.from_mapping(_merge(data, parse_overrides(overrides)))


def default_config_text() -> str:
    return yaml.safe_dump(DEFAULTS, sort_keys=False)
