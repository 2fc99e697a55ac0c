"""
Build systems and their open sets from config descriptors.

System descriptors:
    {"kind": "symbolic", "alphabet_size": 2, "weights": ["1/2", "1/2"], "axes": ["identity", "shift"]}
    {"kind": "rotation", "angles": ["1/4"]}

Open-set descriptors (interpreted relative to a system):
    {"full": true}
    {"cylinders": [{"at": [[0, 0]], "letters": [1]}, ...]}      symbolic
    {"arcs": [["0", "1/10"], [0.5, 0.6]]}                        rotation, [start, end] pairs
    {"complement": <open-set descriptor>}
"""
import logging
from typing import Any, Callable, Dict

from core.errors import ConfigError, MalformedInputError
from group.lattice import as_element
from systems.base import DynamicalSystem, SystemKind
from systems.circle import Arc, ArcSet
from systems.rotation import RotationSystem
from systems.symbolic import CylinderPattern, CylinderUnion, SymbolicSystem

logger = logging.getLogger(__name__)


def _symbolic(data: Dict[str, Any]) -> SymbolicSystem:
    axes = data.get("axes")
    d = data.get("d", len(axes) if axes else None)
    if d is None:
        raise ConfigError("symbolic system needs 'd' or 'axes'")
    return SymbolicSystem(
        alphabet_size=int(data.get("alphabet_size", 2)),
        d=int(d),
        letter_weights=tuple(data.get("weights", ())),
        axes=tuple(axes or ()),
    )


def _rotation(data: Dict[str, Any]) -> RotationSystem:
    angles = data.get("angles")
    if not angles:
        raise ConfigError("rotation system needs a nonempty 'angles' list")
    return RotationSystem(d=int(data.get("d", len(angles))), angles=tuple(angles))


SYSTEM_BUILDERS: Dict[str, Callable[[Dict[str, Any]], DynamicalSystem]] = {
    SystemKind.SYMBOLIC.value: _symbolic,
    SystemKind.ROTATION.value: _rotation,
}


def system_from_dict(data: Dict[str, Any]) -> DynamicalSystem:
    """
    Construct a system from its descriptor.

    Raises:
        ConfigError: Unknown kind or missing fields
        MalformedInputError: Invalid parameters (weights, angles, axes)
    """
    if not isinstance(data, dict):
        raise ConfigError(f"system descriptor must be an object, got {type(data).__name__}")
    kind = data.get("kind")
    builder = SYSTEM_BUILDERS.get(kind)
    if builder is None:
        valid = ", ".join(SYSTEM_BUILDERS)
        raise ConfigError(f"unknown system kind {kind!r}", f"Use one of: {valid}")
    try:
        system = builder(data)
    except (ValueError, TypeError) as e:
        if isinstance(e, MalformedInputError):
            raise
        raise ConfigError(f"bad {kind} system parameters: {e}")
    logger.debug(f"Built {kind} system: {system.to_dict()}")
    return system


def open_set_from_dict(sys: DynamicalSystem, data: Dict[str, Any]):
    """Interpret an open-set descriptor for the given system."""
    if not isinstance(data, dict):
        raise ConfigError(f"open set descriptor must be an object, got {data!r}")
    if data.get("full"):
        return sys.full_set()
    if "complement" in data:
        return sys.complement(open_set_from_dict(sys, data["complement"]))

    if isinstance(sys, SymbolicSystem):
        if "cylinders" not in data:
            raise ConfigError("symbolic open sets need 'cylinders', 'full' or 'complement'")
        patterns = []
        for item in data["cylinders"]:
            at, letters = item.get("at", []), item.get("letters", [])
            if len(at) != len(letters):
                raise ConfigError(f"cylinder {item} has {len(at)} coordinates but {len(letters)} letters")
            pattern = CylinderPattern(tuple((as_element(c, sys.d), int(a)) for c, a in zip(at, letters)))
            sys.check_pattern(pattern)
            patterns.append(pattern)
        return CylinderUnion(tuple(patterns))

    if "arcs" not in data:
        raise ConfigError("rotation open sets need 'arcs', 'full' or 'complement'")
    try:
        return ArcSet.from_arcs([Arc.between(start, end) for start, end in data["arcs"]])
    except (ValueError, TypeError) as e:
        if isinstance(e, MalformedInputError):
            raise
        raise ConfigError(f"bad arc list {data['arcs']!r}: {e}")


def open_set_to_dict(A) -> Dict[str, Any]:
    if isinstance(A, CylinderUnion):
        return A.to_dict()
    return {"arcs": A.to_list()}
