"""
Shared test fixtures for seqentropy tests.

This module provides reusable systems, sets and config builders.
"""
from pathlib import Path
from fractions import Fraction
import json
import math
import sys

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from systems.circle import Arc, ArcSet
from systems.rotation import RotationSystem
from systems.symbolic import CylinderUnion, SymbolicSystem, cylinder_set

GOLDEN_ANGLE = 0.6180339887498949

EXAMPLE61_DESCRIPTOR = {
    "kind": "symbolic",
    "alphabet_size": 2,
    "weights": ["1/2", "1/2"],
    "axes": ["identity", "shift"],
}


def bernoulli(p=Fraction(1, 2), d: int = 1) -> SymbolicSystem:
    """Full 2-shift on Z^d with letter weights (p, 1 - p)."""
    return SymbolicSystem(alphabet_size=2, d=d, letter_weights=(p, 1 - p))


def example61_system() -> SymbolicSystem:
    """Z^2 acting on {0,1}^Z: first generator trivial, second the shift."""
    return SymbolicSystem(
        alphabet_size=2, d=2,
        letter_weights=(Fraction(1, 2), Fraction(1, 2)),
        axes=("identity", "shift"),
    )


def golden_rotation() -> RotationSystem:
    return RotationSystem(d=1, angles=(GOLDEN_ANGLE,))


def rational_rotation(angle: str) -> RotationSystem:
    return RotationSystem(d=1, angles=(Fraction(angle),))


def cyl(coord, letter: int) -> CylinderUnion:
    """Cylinder fixing one coordinate (int for d=1, list otherwise)."""
    coord = [coord] if isinstance(coord, int) else coord
    return cylinder_set((coord, letter))


def arcs(*pairs) -> ArcSet:
    """Union of the open arcs between each (start, end) pair."""
    return ArcSet.from_arcs([Arc.between(start, end) for start, end in pairs])


def arc_count_bound(count: int, cells: int = 2) -> float:
    """log(cells · count) / count: entropy bound for a join of `count` arc partitions."""
    return math.log(cells * count) / count


def write_config(directory: Path, data: dict, name: str = "run.json") -> Path:
    """Write a run config dict as JSON and return its path."""
    path = Path(directory) / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def fullshift_config(**sections) -> dict:
    """Minimal valid config on the binary full shift over Z."""
    data = {
        "schema_version": 1,
        "system": {"kind": "symbolic", "d": 1, "alphabet_size": 2, "weights": ["1/2", "1/2"]},
    }
    data.update(sections)
    return data
