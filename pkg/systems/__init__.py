"""
Concrete Z^d systems: symbolic full shifts with product measure and circle rotations.
"""
from .base import DynamicalSystem, SystemKind
from .circle import Arc, ArcSet, elementary_arcs
from .symbolic import (
    AxisBehavior, CylinderPattern, CylinderUnion, SymbolicSystem,
    act_on_configuration, act_on_pattern, cylinder_measure, cylinder_set,
)
from .rotation import RotationSystem, rotate_arc
from .registry import system_from_dict, open_set_from_dict, open_set_to_dict

__all__ = [
    'DynamicalSystem', 'SystemKind',
    'Arc', 'ArcSet', 'elementary_arcs',
    'AxisBehavior', 'CylinderPattern', 'CylinderUnion', 'SymbolicSystem',
    'act_on_configuration', 'act_on_pattern', 'cylinder_measure', 'cylinder_set',
    'RotationSystem', 'rotate_arc',
    'system_from_dict', 'open_set_from_dict', 'open_set_to_dict',
]
