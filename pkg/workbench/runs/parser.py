"""``key = value`` run configuration files.

One setting per line, ``#`` starts a comment. Dotted keys address nested
sections (``grid.n``, ``flow.max_iters``); the bare key ``initializer``
selects the initializer kind. Sequence values are comma or space separated.
"""

import logging
import re

from pydantic import ValidationError

from geometry.models import TargetSpace
from lattice.models import BoundaryMode

from .exceptions import (
    ConfigError,
    IncompatibleInitializer,
    InvalidValue,
    TypeMismatch,
    UnknownKey,
)
from .schemas import InitializerKind, RunConfig, incompatibility

logger = logging.getLogger(__name__)

KEYS = {
    "grid.n": ("grid", "n"),
    "grid.box_length": ("grid", "box_length"),
    "grid.boundary_mode": ("grid", "boundary_mode"),
    "target": ("target",),
    "initializer": ("initializer", "kind"),
    "initializer.k": ("initializer", "k"),
    "initializer.radius": ("initializer", "radius"),
    "initializer.center": ("initializer", "center"),
    "initializer.axes": ("initializer", "axes"),
    "initializer.winding": ("initializer", "winding"),
    "initializer.correlation_length": ("initializer", "correlation_length"),
    "initializer.amplitude": ("initializer", "amplitude"),
    "initializer.base": ("initializer", "base"),
    "flow.step_init": ("flow", "step_init"),
    "flow.backtrack_factor": ("flow", "backtrack_factor"),
    "flow.armijo_c": ("flow", "armijo_c"),
    "flow.grad_tol": ("flow", "grad_tol"),
    "flow.max_iters": ("flow", "max_iters"),
    "flow.invariant_check_every": ("flow", "invariant_check_every"),
    "flow.skyrme_weight": ("flow", "skyrme_weight"),
    "flow.max_step_growth": ("flow", "max_step_growth"),
    "outputs.dir": ("outputs", "dir"),
    "outputs.log_every": ("outputs", "log_every"),
    "outputs.snapshot_every": ("outputs", "snapshot_every"),
    "outputs.emit_vtk": ("outputs", "emit_vtk"),
    "identities.sizes": ("identities", "sizes"),
    "identities.samples": ("identities", "samples"),
    "convergence.sizes": ("convergence", "sizes"),
    "seed": ("seed",),
    "hopf_method": ("hopf_method",),
}

SEQUENCE_KEYS = {
    "initializer.center",
    "initializer.axes",
    "initializer.base",
    "identities.sizes",
    "convergence.sizes",
}

LINE_RE = re.compile(r"^\s*([A-Za-z_][\w.]*)\s*=\s*(.*?)\s*$")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _read_pairs(text: str) -> dict[str, tuple[str, int]]:
    pairs: dict[str, tuple[str, int]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        match = LINE_RE.match(line)
        if match is None:
            raise ConfigError(f"Expected 'key = value', got {raw.strip()!r}", number)
        key, value = match.group(1), match.group(2)
        if key not in KEYS:
            raise UnknownKey(f"Unknown key {key!r}", number, key)
        if key in pairs:
            raise ConfigError(
                f"Duplicate key {key!r} (first set on line {pairs[key][1]})",
                number,
                key,
            )
        if not value:
            raise TypeMismatch(f"Empty value for {key!r}", number, key)
        pairs[key] = (value, number)
    return pairs


def _nest(pairs: dict[str, tuple[str, int]]) -> dict:
    data: dict = {}
    for key, (value, _) in pairs.items():
        path = KEYS[key]
        parsed: str | list[str] = value
        if key in SEQUENCE_KEYS:
            parsed = [item for item in re.split(r"[,\s]+", value) if item]
        node = data
        for part in path[:-1]:
            node = node.setdefault(part, {})
        node[path[-1]] = parsed
    return data


def _line_for(
    loc: tuple, pairs: dict[str, tuple[str, int]]
) -> tuple[str | None, int | None]:
    """Config key and line behind a pydantic error location."""
    names = tuple(part for part in loc if isinstance(part, str))
    for key, path in KEYS.items():
        if names[: len(path)] == path and key in pairs:
            return key, pairs[key][1]
    return None, None


def _check_compatibility(pairs: dict[str, tuple[str, int]]) -> None:
    """Reject initializer/target/boundary combinations with the initializer's line."""
    try:
        kind = InitializerKind(pairs.get("initializer", ("constant", 0))[0])
        target = TargetSpace(pairs["target"][0]) if "target" in pairs else None
        mode = BoundaryMode(pairs.get("grid.boundary_mode", ("periodic", 0))[0])
    except ValueError:
        # malformed enum values are reported by validation
        return
    if target is None:
        return
    reason = incompatibility(kind, target, mode)
    if reason is not None:
        line = pairs["initializer"][1] if "initializer" in pairs else None
        raise IncompatibleInitializer(reason, line, "initializer")


def parse_config(text: str) -> RunConfig:
    pairs = _read_pairs(text)
    _check_compatibility(pairs)
    try:
        config = RunConfig.model_validate(_nest(pairs))
    except ValidationError as exc:
        error = exc.errors()[0]
        key, line = _line_for(error["loc"], pairs)
        where = key or ".".join(str(part) for part in error["loc"])
        message = f"{where}: {error['msg']}"
        if error["type"] == "missing":
            raise InvalidValue(f"Missing required key {where}", None, key) from exc
        if error["type"].endswith(("_parsing", "_type")) or error["type"] == "enum":
            raise TypeMismatch(message, line, key) from exc
        raise InvalidValue(message, line, key) from exc
    logger.debug("Parsed run configuration: %s", config.model_dump())
    return config


def load_config(path) -> RunConfig:
    with open(path, encoding="utf-8") as handle:
        return parse_config(handle.read())
