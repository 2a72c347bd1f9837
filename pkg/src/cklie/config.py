"""Experiment configuration files.

A config is a YAML mapping.  Every key is optional except where a
subcommand needs it (``initial_points`` for ``integrate`` and
``superpose``).  Example::

    space: sphere               # or  kappa: [1.0, 0.5]
    coefficients:
      b1: {kind: sinusoid, a: 1.0, omega: 2.0, phi: 0.3}
      b2: {kind: constant, c: 0.5}
      b3: {kind: polynomial, coeffs: [0.0, 1.0]}
    initial_points: [[0.1, 0.2], [-0.3, 0.1], [0.25, -0.3]]
    time: {t0: 0.0, t1: 1.0, step: 1.0e-3}
    samples: 100
    spaces: [sphere, de_sitter]  # verify / tables / contract
    seed: 20240607
    tolerances: {superposition: 1.0e-5}

Unknown keys are rejected, and errors carry the line number of the
offending entry.
"""

from dataclasses import dataclass, field, replace

import yaml

from .ck_space import CANONICAL_SPACES, KappaPair, ParallelPoint, space
from .lie_hamilton import CoefficientSpec, TimeFunction, sinusoid

DEFAULT_SEED = 20240607

#: documented default tolerances, overridable per run
DEFAULT_TOLERANCES = {
    "trig_identity": 1e-12,
    "trig_derivative": 1e-6,
    "chart_round_trip": 1e-10,
    "ambient_constraint": 1e-12,
    "isometry": 1e-10,
    "subgroup_exp": 1e-10,
    "distance_invariance": 1e-9,
    "lie_bracket": 1e-6,
    "hamiltonian_residual": 1e-10,
    "poisson_table": 1e-8,
    "casimir_realization": 1e-12,
    "coproduct_closed_form": 1e-10,
    "drift": 1e-6,
    "drift_ratio_low": 12.0,
    "drift_ratio_high": 20.0,
    "superposition": 1e-5,
    "angle_identity": 1e-8,
    "newtonian_rule": 1e-10,
    "contraction": 1e-5,
    "tables": 1e-12,
}

TOP_KEYS = {
    "space", "kappa", "coefficients", "initial_points", "time", "samples",
    "spaces", "seed", "tolerances",
}
TIME_KEYS = {"t0", "t1", "step"}


class ConfigError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def default_coefficients():
    return CoefficientSpec(sinusoid(1.0, 2.0, 0.3), sinusoid(0.8, 3.0, 1.0), sinusoid(0.6, 1.5, -0.4))


@dataclass
class ExperimentConfig:
    kp: KappaPair = CANONICAL_SPACES["euclidean"]
    coefficients: CoefficientSpec = field(default_factory=default_coefficients)
    initial_points: list = field(default_factory=list)
    t0: float = 0.0
    t1: float = 1.0
    step: float = 1e-3
    samples: int = 100
    spaces: list = field(default_factory=lambda: list(CANONICAL_SPACES))
    seed: int = DEFAULT_SEED
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))

    def with_overrides(self, seed=None, tolerances=None):
        tol = dict(self.tolerances)
        for k, v in (tolerances or {}).items():
            if k not in DEFAULT_TOLERANCES:
                raise ConfigError(f"unknown tolerance {k!r}; known: {sorted(DEFAULT_TOLERANCES)}")
            tol[k] = float(v)
        return replace(self, seed=self.seed if seed is None else seed, tolerances=tol)


def _line(node):
    return node.start_mark.line + 1


def _children(node):
    """{key: (key node, value node)} of a mapping node."""
    if not isinstance(node, yaml.MappingNode):
        raise ConfigError("expected a mapping", _line(node))
    return {k.value: (k, v) for k, v in node.value}


def _check_keys(node, allowed, where):
    for name, (knode, _) in _children(node).items():
        if name not in allowed:
            raise ConfigError(f"unknown key {name!r} in {where}; allowed: {sorted(allowed)}", _line(knode))


def _number(value, node, what):
    if isinstance(value, bool):
        raise ConfigError(f"{what} must be a number, got {value!r}", _line(node))
    try:
        return float(value)  # also accepts strings like "1e-5"
    except (TypeError, ValueError):
        raise ConfigError(f"{what} must be a number, got {value!r}", _line(node)) from None


def _point(value, node, what):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"{what} must be a pair [x, y], got {value!r}", _line(node))
    return ParallelPoint(_number(value[0], node, what), _number(value[1], node, what))


def parse_config(text, source="<config>"):
    try:
        root = yaml.compose(text)
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"{source}: invalid YAML: {exc}", mark.line + 1 if mark else None) from None
    cfg = ExperimentConfig()
    if root is None:
        return cfg
    _check_keys(root, TOP_KEYS, "config")
    nodes = _children(root)

    def node_of(key):
        return nodes[key][1]

    if "space" in data and "kappa" in data:
        raise ConfigError("give either 'space' or 'kappa', not both", _line(node_of("kappa")))
    if "space" in data:
        try:
            cfg.kp = space(str(data["space"]))
        except ValueError as exc:
            raise ConfigError(str(exc), _line(node_of("space"))) from None
    if "kappa" in data:
        k = data["kappa"]
        if not isinstance(k, list) or len(k) != 2:
            raise ConfigError("kappa must be [kappa1, kappa2]", _line(node_of("kappa")))
        cfg.kp = KappaPair(_number(k[0], node_of("kappa"), "kappa1"), _number(k[1], node_of("kappa"), "kappa2"))

    if "coefficients" in data:
        cnode = node_of("coefficients")
        _check_keys(cnode, {"b1", "b2", "b3"}, "coefficients")
        cn = _children(cnode)
        funcs = []
        for key in ("b1", "b2", "b3"):
            if key not in cn:
                raise ConfigError(f"coefficients needs {key}", _line(cnode))
            raw = data["coefficients"][key]
            vnode = cn[key][1]
            if not isinstance(raw, dict) or "kind" not in raw:
                raise ConfigError(f"{key} must be a mapping with a 'kind'", _line(vnode))
            params = {}
            for name, val in raw.items():
                if name == "kind":
                    continue
                if isinstance(val, list):
                    params[name] = [_number(v, vnode, f"{key}.{name}") for v in val]
                else:
                    params[name] = _number(val, vnode, f"{key}.{name}")
            try:
                funcs.append(TimeFunction(str(raw["kind"]), params))
            except ValueError as exc:
                raise ConfigError(f"{key}: {exc}", _line(vnode)) from None
        cfg.coefficients = CoefficientSpec(*funcs)

    if "initial_points" in data:
        pnode = node_of("initial_points")
        pts = data["initial_points"] or []
        if not isinstance(pts, list):
            raise ConfigError("initial_points must be a list of [x, y] pairs", _line(pnode))
        items = pnode.value if isinstance(pnode, yaml.SequenceNode) else []
        cfg.initial_points = [_point(p, n, "initial point") for p, n in zip(pts, items)]

    if "time" in data:
        tnode = node_of("time")
        _check_keys(tnode, TIME_KEYS, "time")
        tn = _children(tnode)
        for key in TIME_KEYS & set(tn):
            setattr(cfg, key, _number(data["time"][key], tn[key][1], f"time.{key}"))
        if not cfg.step > 0:
            raise ConfigError("time.step must be positive", _line(tnode))
        if not cfg.t1 > cfg.t0:
            raise ConfigError("time.t1 must exceed time.t0", _line(tnode))

    if "samples" in data:
        n = data["samples"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ConfigError("samples must be a positive integer", _line(node_of("samples")))
        cfg.samples = n

    if "spaces" in data:
        snode = node_of("spaces")
        names = data["spaces"]
        if names == "all":
            names = list(CANONICAL_SPACES)
        if not isinstance(names, list) or not names:
            raise ConfigError("spaces must be a non-empty list of space names or 'all'", _line(snode))
        for name in names:
            if name not in CANONICAL_SPACES:
                raise ConfigError(f"unknown space {name!r}; expected one of {sorted(CANONICAL_SPACES)}", _line(snode))
        cfg.spaces = list(names)

    if "seed" in data:
        s = data["seed"]
        if isinstance(s, bool) or not isinstance(s, int) or s < 0:
            raise ConfigError("seed must be a nonnegative integer", _line(node_of("seed")))
        cfg.seed = s

    if "tolerances" in data:
        tnode = node_of("tolerances")
        _check_keys(tnode, set(DEFAULT_TOLERANCES), "tolerances")
        tn = _children(tnode)
        for key, (_, vnode) in tn.items():
            cfg.tolerances[key] = _number(data["tolerances"][key], vnode, f"tolerances.{key}")
    return cfg


def load_config(path):
    with open(path) as fh:
        return parse_config(fh.read(), source=str(path))
