"""Typed physics options: solver parameter blocks, script parsing, canonical JSON.

The canonical JSON schema puts the physics section first with a fixed key
order; unknown top-level sections pass through opaquely in first-seen order,
so parse -> serialize round-trips them byte for byte (modulo whitespace).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Callable

from .errors import OptionsValidationError
from .script import Positioned, parse_script, strip_positions

SOLVERS = ("barnesHut", "forceAtlas2Based", "repulsion", "hierarchicalRepulsion")

WIDGET_SECTIONS = (
    "nodes",
    "edges",
    "layout",
    "interaction",
    "manipulation",
    "physics",
    "selection",
    "renderer",
)


def _require_number(value, name: str, pos: Positioned | None = None):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise OptionsValidationError(
            f"{name} must be a number, got {value!r}",
            pos.line if pos else None,
            pos.column if pos else None,
        )
    return value


def _check_range(value, name: str, low=None, high=None, high_open=False, low_open=False,
                 pos: Positioned | None = None):
    line = pos.line if pos else None
    column = pos.column if pos else None
    if low is not None and (value < low or (low_open and value == low)):
        bound = f"> {low}" if low_open else f">= {low}"
        raise OptionsValidationError(f"{name} must be {bound}, got {value}", line, column)
    if high is not None and (value > high or (high_open and value == high)):
        bound = f"< {high}" if high_open else f"<= {high}"
        raise OptionsValidationError(f"{name} must be {bound}, got {value}", line, column)
    return value


@dataclass
class BarnesHutParams:
    gravity: float = -80000
    central_gravity: float = 0.3
    spring_length: float = 250
    spring_strength: float = 0.001
    damping: float = 0.09
    overlap: float = 0

    def validate(self) -> None:
        _require_number(self.gravity, "gravity")
        _check_range(_require_number(self.central_gravity, "central_gravity"),
                     "central_gravity", low=0)
        _check_range(_require_number(self.spring_length, "spring_length"),
                     "spring_length", low=0)
        _check_range(_require_number(self.spring_strength, "spring_strength"),
                     "spring_strength", low=0)
        _check_range(_require_number(self.damping, "damping"), "damping",
                     low=0, high=1, high_open=True)
        _check_range(_require_number(self.overlap, "overlap"), "overlap", low=0, high=1)


@dataclass
class RepulsionParams:
    centralGravity: float = 0.2
    springConstant: float = 0.05
    nodeDistance: float = 100
    damping: float = 0.09
    springLength: float = 200

    def validate(self) -> None:
        _check_range(_require_number(self.centralGravity, "centralGravity"),
                     "centralGravity", low=0)
        _check_range(_require_number(self.springConstant, "springConstant"),
                     "springConstant", low=0)
        _check_range(_require_number(self.nodeDistance, "nodeDistance"),
                     "nodeDistance", low=0, low_open=True)
        _check_range(_require_number(self.damping, "damping"), "damping",
                     low=0, high=1, high_open=True)
        _check_range(_require_number(self.springLength, "springLength"),
                     "springLength", low=0)


@dataclass
class ForceAtlas2Params:
    gravitationalConstant: float = -50
    centralGravity: float = 0.01
    springLength: float = 100
    springConstant: float = 0.08
    damping: float = 0.4

    def validate(self) -> None:
        _require_number(self.gravitationalConstant, "gravitationalConstant")
        _check_range(_require_number(self.centralGravity, "centralGravity"),
                     "centralGravity", low=0)
        _check_range(_require_number(self.springLength, "springLength"),
                     "springLength", low=0)
        _check_range(_require_number(self.springConstant, "springConstant"),
                     "springConstant", low=0)
        _check_range(_require_number(self.damping, "damping"), "damping",
                     low=0, high=1, high_open=True)


@dataclass
class HierarchicalRepulsionParams:
    centralGravity: float = 0.0
    springConstant: float = 0.01
    nodeDistance: float = 120
    damping: float = 0.09
    springLength: float = 100

    validate = RepulsionParams.validate


_PARAM_TYPES = {
    "barnesHut": BarnesHutParams,
    "forceAtlas2Based": ForceAtlas2Params,
    "repulsion": RepulsionParams,
    "hierarchicalRepulsion": HierarchicalRepulsionParams,
}

# JSON key -> dataclass field, per solver block.
_BLOCK_FIELDS = {
    "barnesHut": {
        "gravity": "gravity",
        "centralGravity": "central_gravity",
        "springLength": "spring_length",
        "springStrength": "spring_strength",
        "damping": "damping",
        "overlap": "overlap",
    },
    "forceAtlas2Based": {
        "gravitationalConstant": "gravitationalConstant",
        "centralGravity": "centralGravity",
        "springLength": "springLength",
        "springConstant": "springConstant",
        "damping": "damping",
    },
    "repulsion": {
        "centralGravity": "centralGravity",
        "springConstant": "springConstant",
        "nodeDistance": "nodeDistance",
        "damping": "damping",
        "springLength": "springLength",
    },
}
_BLOCK_FIELDS["hierarchicalRepulsion"] = _BLOCK_FIELDS["repulsion"]


@dataclass
class Stabilization:
    enabled: bool = True
    max_iterations: int = 1000

    def validate(self) -> None:
        if not isinstance(self.enabled, bool):
            raise OptionsValidationError("stabilization.enabled must be a boolean")
        if isinstance(self.max_iterations, bool) or not isinstance(self.max_iterations, int) \
                or self.max_iterations < 1:
            raise OptionsValidationError(
                f"stabilization iterations must be a positive integer, got {self.max_iterations!r}")


@dataclass
class PhysicsOptions:
    enabled: bool = True
    solver: str = "barnesHut"
    params: Any = field(default_factory=BarnesHutParams)
    maxVelocity: float = 50
    minVelocity: float = 0.1
    timestep: float = 0.5
    stabilization: Stabilization = field(default_factory=Stabilization)

    def validate(self) -> None:
        if self.solver not in SOLVERS:
            raise OptionsValidationError(f"unknown solver {self.solver!r}")
        if not isinstance(self.params, _PARAM_TYPES[self.solver]):
            raise OptionsValidationError(
                f"params block does not match solver {self.solver!r}")
        self.params.validate()
        _check_range(_require_number(self.maxVelocity, "maxVelocity"),
                     "maxVelocity", low=0, low_open=True)
        _check_range(_require_number(self.minVelocity, "minVelocity"),
                     "minVelocity", low=0, low_open=True)
        if not self.minVelocity < self.maxVelocity:
            raise OptionsValidationError(
                f"minVelocity ({self.minVelocity}) must be less than "
                f"maxVelocity ({self.maxVelocity})")
        _check_range(_require_number(self.timestep, "timestep"),
                     "timestep", low=0, low_open=True)
        self.stabilization.validate()

    # Solver-independent accessors used by the layout engine.

    def spring_constant(self) -> float:
        if self.solver == "barnesHut":
            return self.params.spring_strength
        return self.params.springConstant

    def spring_length(self) -> float:
        if self.solver == "barnesHut":
            return self.params.spring_length
        return self.params.springLength

    def central_gravity(self) -> float:
        if self.solver == "barnesHut":
            return self.params.central_gravity
        return self.params.centralGravity

    def damping(self) -> float:
        return self.params.damping


@dataclass
class Options:
    physics: PhysicsOptions = field(default_factory=PhysicsOptions)
    extras: dict[str, Any] = field(default_factory=dict)

    def validate(self) -> None:
        self.physics.validate()


def default_options() -> Options:
    return Options()


def solver_defaults(solver: str):
    """Fresh default parameter block for a solver name."""
    if solver not in SOLVERS:
        raise OptionsValidationError(f"unknown solver {solver!r}")
    return _PARAM_TYPES[solver]()


def _value_error(name: str, pos: Positioned) -> OptionsValidationError:
    return OptionsValidationError(
        f"{name} must be a number, got {pos.value!r}", pos.line, pos.column)


_RANGE_CHECKS: dict[str, Callable[[Any, str, Positioned], Any]] = {
    "gravity": lambda v, n, p: v,
    "gravitationalConstant": lambda v, n, p: v,
    "centralGravity": lambda v, n, p: _check_range(v, n, low=0, pos=p),
    "central_gravity": lambda v, n, p: _check_range(v, n, low=0, pos=p),
    "spring_length": lambda v, n, p: _check_range(v, n, low=0, pos=p),
    "springLength": lambda v, n, p: _check_range(v, n, low=0, pos=p),
    "spring_strength": lambda v, n, p: _check_range(v, n, low=0, pos=p),
    "springConstant": lambda v, n, p: _check_range(v, n, low=0, pos=p),
    "nodeDistance": lambda v, n, p: _check_range(v, n, low=0, low_open=True, pos=p),
    "damping": lambda v, n, p: _check_range(v, n, low=0, high=1, high_open=True, pos=p),
    "overlap": lambda v, n, p: _check_range(v, n, low=0, high=1, pos=p),
}


def _parse_block(solver: str, node: Positioned):
    if not isinstance(node.value, dict):
        raise OptionsValidationError(
            f"{solver} block must be an object", node.line, node.column)
    params = _PARAM_TYPES[solver]()
    fields = _BLOCK_FIELDS[solver]
    for key, child in node.value.items():
        if key not in fields:
            raise OptionsValidationError(
                f"unknown {solver} parameter {key!r}", child.line, child.column)
        field_name = fields[key]
        value = child.value
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise _value_error(f"{solver}.{key}", child)
        _RANGE_CHECKS[field_name](value, f"{solver}.{key}", child)
        setattr(params, field_name, value)
    return params


def _parse_stabilization(node: Positioned) -> Stabilization:
    if not isinstance(node.value, dict):
        raise OptionsValidationError(
            "stabilization must be an object", node.line, node.column)
    stab = Stabilization()
    for key, child in node.value.items():
        if key == "enabled":
            if not isinstance(child.value, bool):
                raise OptionsValidationError(
                    f"stabilization.enabled must be a boolean, got {child.value!r}",
                    child.line, child.column)
            stab.enabled = child.value
        elif key == "iterations":
            v = child.value
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise OptionsValidationError(
                    f"stabilization.iterations must be a positive integer, got {v!r}",
                    child.line, child.column)
            stab.max_iterations = v
        else:
            raise OptionsValidationError(
                f"unknown stabilization key {key!r}", child.line, child.column)
    return stab


def _parse_physics(node: Positioned) -> PhysicsOptions:
    if not isinstance(node.value, dict):
        raise OptionsValidationError(
            "physics section must be an object", node.line, node.column)
    physics = PhysicsOptions()
    blocks: dict[str, Any] = {}
    explicit_solver: str | None = None

    for key, child in node.value.items():
        if key == "enabled":
            if not isinstance(child.value, bool):
                raise OptionsValidationError(
                    f"physics.enabled must be a boolean, got {child.value!r}",
                    child.line, child.column)
            physics.enabled = child.value
        elif key == "solver":
            if child.value not in SOLVERS:
                raise OptionsValidationError(
                    f"unknown solver {child.value!r}", child.line, child.column)
            explicit_solver = child.value
        elif key in SOLVERS:
            blocks[key] = _parse_block(key, child)
        elif key in ("maxVelocity", "minVelocity", "timestep"):
            v = child.value
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise _value_error(f"physics.{key}", child)
            _check_range(v, f"physics.{key}", low=0, low_open=True, pos=child)
            setattr(physics, key, v)
        elif key == "stabilization":
            physics.stabilization = _parse_stabilization(child)
        else:
            raise OptionsValidationError(
                f"unknown physics key {key!r}", child.line, child.column)

    if explicit_solver is not None:
        physics.solver = explicit_solver
    elif len(blocks) == 1:
        physics.solver = next(iter(blocks))
    physics.params = blocks.get(physics.solver, solver_defaults(physics.solver))
    physics.validate()
    return physics


def parse_options_script(text: str) -> Options:
    """Parse an options script (or bare JSON object) into typed Options.

    Raises OptionsParseError for syntax problems and OptionsValidationError
    for semantic ones; both carry 1-based line/column.
    """
    root = parse_script(text)
    options = Options()
    for key, child in root.value.items():
        if key == "physics":
            options.physics = _parse_physics(child)
        else:
            options.extras[key] = strip_positions(child)
    return options


def apply_script(options: Options, text: str) -> Options:
    """Overlay a script onto existing Options.

    Only sections present in the script are touched; a present physics
    section replaces the previous one wholesale (last write wins).
    """
    root = parse_script(text)
    merged = Options(physics=options.physics, extras=dict(options.extras))
    for key, child in root.value.items():
        if key == "physics":
            merged.physics = _parse_physics(child)
        else:
            merged.extras[key] = strip_positions(child)
    return merged


def _block_dict(solver: str, params) -> dict[str, Any]:
    fields = _BLOCK_FIELDS[solver]
    return {json_key: getattr(params, field_name) for json_key, field_name in fields.items()}


def options_to_dict(opts: Options) -> dict[str, Any]:
    """Plain-dict form of Options in canonical key order."""
    physics = opts.physics
    physics_dict: dict[str, Any] = {
        "enabled": physics.enabled,
        physics.solver: _block_dict(physics.solver, physics.params),
        "maxVelocity": physics.maxVelocity,
        "minVelocity": physics.minVelocity,
        "solver": physics.solver,
        "timestep": physics.timestep,
        "stabilization": {
            "enabled": physics.stabilization.enabled,
            "iterations": physics.stabilization.max_iterations,
        },
    }
    out: dict[str, Any] = {"physics": physics_dict}
    out.update(opts.extras)
    return out


def serialize_options(opts: Options, pretty: bool = False) -> str:
    """Canonical JSON text; minified unless pretty is set."""
    data = options_to_dict(opts)
    if pretty:
        return json.dumps(data, indent=2)
    return json.dumps(data, separators=(",", ":"))


@dataclass(frozen=True)
class WidgetSpec:
    """Configurator sections the emitted document exposes."""

    sections: tuple[str, ...]


def select_configurator_widgets(filter_: list[str] | None = None) -> WidgetSpec:
    """Resolve a section filter; no filter (or an empty one) means all sections."""
    if not filter_:
        return WidgetSpec(sections=WIDGET_SECTIONS)
    for name in filter_:
        if name not in WIDGET_SECTIONS:
            raise OptionsValidationError(
                f"unknown configurator section {name!r}; "
                f"expected one of {', '.join(WIDGET_SECTIONS)}")
    # Keep caller order, drop duplicates.
    seen: dict[str, None] = {}
    for name in filter_:
        seen.setdefault(name)
    return WidgetSpec(sections=tuple(seen))


def switch_solver(opts: Options, solver: str) -> Options:
    """Copy of opts with the given solver active (fresh defaults for its block)."""
    if solver not in SOLVERS:
        raise OptionsValidationError(f"unknown solver {solver!r}")
    physics = replace(opts.physics, solver=solver, params=solver_defaults(solver))
    return Options(physics=physics, extras=dict(opts.extras))
