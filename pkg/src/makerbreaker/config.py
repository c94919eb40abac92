"""Experiment configuration: a single JSON file, schema-validated.

Unknown keys are rejected outright so a typo never silently changes an
experiment. Every default is echoed into transcript headers by the
runner so no recorded run is ambiguous.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

KINDS = (
    "tree-embed",
    "matching",
    "hamcon",
    "hampath",
    "box",
    "triangle",
    "custom-hypergraph",
)

OUT_DIR_ENV = "MAKERBREAKER_OUT"


class ConfigError(ValueError):
    """Bad experiment configuration; CLI exit code 2."""


def _check_keys(d: dict, allowed, where: str):
    unknown = set(d) - set(allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")


def _require(d: dict, key: str, where: str):
    if key not in d:
        raise ConfigError(f"{where}: missing required key {key!r}")
    return d[key]


@dataclass
class ExperimentConfig:
    kind: str
    seeds: list
    bias_p: int = 1
    bias_q: int = 1
    first: str = "breaker"
    out_dir: Path = field(default_factory=lambda: Path(os.environ.get(OUT_DIR_ENV, "out")))
    figures: bool = True
    move_cap: int | None = None
    options: dict = field(default_factory=dict)
    raw: dict = field(default_factory=dict)

    @property
    def bias(self):
        from .core import Bias

        return Bias(self.bias_p, self.bias_q)


TOP_KEYS = {
    "kind",
    "seeds",
    "bias",
    "first",
    "out_dir",
    "figures",
    "move_cap",
    "tree",
    "breaker",
    "maker",
    "thresholds",
    "r",
    "k",
    "m",
    "q",
    "rounds",
    "adversary",
    "mode",
    "n",
    "gamma",
    "beta",
    "stage2",
    "hypergraph",
    "a",
    "b",
}

KIND_KEYS = {
    "tree-embed": {"tree", "breaker", "thresholds"},
    "matching": {"r", "mode", "breaker"},
    "hamcon": {"k", "mode", "breaker"},
    "hampath": {"k", "gamma", "beta", "stage2", "breaker", "a", "b"},
    "box": {"m", "q", "rounds", "adversary"},
    "triangle": {"n", "maker"},
    "custom-hypergraph": {"hypergraph", "maker", "breaker"},
}

COMMON_KEYS = {"kind", "seeds", "bias", "first", "out_dir", "figures", "move_cap"}


def parse_seeds(spec, where="seeds") -> list:
    if isinstance(spec, list):
        if not spec or not all(isinstance(s, int) for s in spec):
            raise ConfigError(f"{where}: seed list must be non-empty integers")
        return list(spec)
    if isinstance(spec, dict):
        _check_keys(spec, {"count", "base"}, where)
        count = _require(spec, "count", where)
        base = spec.get("base", 0)
        if not isinstance(count, int) or count < 1:
            raise ConfigError(f"{where}: count must be a positive integer")
        return list(range(base, base + count))
    raise ConfigError(f"{where}: expected a list or {{count, base}}")


def parse_bias(spec, where="bias"):
    if spec is None:
        return 1, 1
    _check_keys(spec, {"p", "q"}, where)
    p, q = spec.get("p", 1), spec.get("q", 1)
    if not (isinstance(p, int) and isinstance(q, int) and p >= 1 and q >= 1):
        raise ConfigError(f"{where}: p and q must be positive integers")
    return p, q


def load_config(path) -> ExperimentConfig:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})")
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    kind = _require(raw, "kind", path)
    if kind not in KINDS:
        raise ConfigError(f"{path}: kind must be one of {KINDS}, got {kind!r}")
    allowed = COMMON_KEYS | KIND_KEYS[kind]
    _check_keys(raw, allowed, f"{path} (kind {kind})")
    seeds = parse_seeds(_require(raw, "seeds", path))
    p, q = parse_bias(raw.get("bias"))
    first = raw.get("first", "breaker")
    if first not in ("maker", "breaker"):
        raise ConfigError(f"{path}: first must be 'maker' or 'breaker'")
    move_cap = raw.get("move_cap")
    if move_cap is not None and (not isinstance(move_cap, int) or move_cap < 1):
        raise ConfigError(f"{path}: move_cap must be a positive integer")
    out_dir = Path(raw.get("out_dir", os.environ.get(OUT_DIR_ENV, "out")))
    figures = raw.get("figures", True)
    if not isinstance(figures, bool):
        raise ConfigError(f"{path}: figures must be a boolean")
    options = {k: raw[k] for k in KIND_KEYS[kind] if k in raw}
    _validate_options(kind, options, path)
    return ExperimentConfig(
        kind=kind,
        seeds=seeds,
        bias_p=p,
        bias_q=q,
        first=first,
        out_dir=out_dir,
        figures=figures,
        move_cap=move_cap,
        options=options,
        raw=raw,
    )


def _validate_options(kind: str, options: dict, where: str) -> None:
    def positive_int(key, default=None):
        v = options.get(key, default)
        if v is None:
            raise ConfigError(f"{where}: {kind} requires {key!r}")
        if not isinstance(v, int) or v < 1:
            raise ConfigError(f"{where}: {key} must be a positive integer")
        return v

    if kind == "tree-embed":
        tree = options.get("tree")
        if not isinstance(tree, dict):
            raise ConfigError(f"{where}: tree-embed requires a tree object")
        _check_keys(
            tree,
            {"family", "n", "legs", "leg_length", "spine", "bar", "bridge",
             "handle", "leaves_each", "edge_list", "prufer", "max_degree"},
            f"{where}.tree",
        )
        _validate_strategy(options.get("breaker"), f"{where}.breaker")
        thresholds = options.get("thresholds", {})
        if not isinstance(thresholds, dict):
            raise ConfigError(f"{where}: thresholds must be an object")
    elif kind == "matching":
        positive_int("r")
        _validate_mode(options.get("mode", "exact"), where)
        _validate_strategy(options.get("breaker"), f"{where}.breaker")
    elif kind == "hamcon":
        positive_int("k")
        _validate_mode(options.get("mode", "heuristic"), where)
        _validate_strategy(options.get("breaker"), f"{where}.breaker")
    elif kind == "hampath":
        positive_int("k")
        _validate_strategy(options.get("breaker"), f"{where}.breaker")
        if options.get("stage2", "direct") not in ("direct", "hamcon"):
            raise ConfigError(f"{where}: stage2 must be 'direct' or 'hamcon'")
    elif kind == "box":
        positive_int("m")
        positive_int("rounds")
        if "q" in options and (not isinstance(options["q"], int) or options["q"] < 1):
            raise ConfigError(f"{where}: box q must be a positive integer")
        adversary = options.get("adversary", "random")
        from .boxgame import BOX_ADVERSARIES

        if adversary not in BOX_ADVERSARIES:
            raise ConfigError(
                f"{where}: adversary must be one of {sorted(BOX_ADVERSARIES)}"
            )
    elif kind == "triangle":
        n = positive_int("n")
        if n < 3:
            raise ConfigError(f"{where}: triangle games need n >= 3")
        _validate_strategy(options.get("maker"), f"{where}.maker")
    elif kind == "custom-hypergraph":
        if not isinstance(options.get("hypergraph"), str):
            raise ConfigError(f"{where}: custom-hypergraph requires a hypergraph path")
        _validate_strategy(options.get("maker"), f"{where}.maker")
        _validate_strategy(options.get("breaker"), f"{where}.breaker")


def _validate_mode(mode, where):
    if mode not in ("exact", "heuristic"):
        raise ConfigError(f"{where}: mode must be 'exact' or 'heuristic'")


def _validate_strategy(spec, where):
    if spec is None:
        return
    if isinstance(spec, str):
        return
    if isinstance(spec, dict):
        _check_keys(spec, {"name", "params"}, where)
        if "name" not in spec:
            raise ConfigError(f"{where}: strategy object needs a name")
        return
    raise ConfigError(f"{where}: strategy must be a name or {{name, params}}")
