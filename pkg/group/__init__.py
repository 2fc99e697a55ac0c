"""
The acting group Z^d: lattice elements, Følner boxes and infinite subsets.
"""
from .lattice import (
    GroupElement, FiniteGroupSet, FolnerSequence, FolnerKind, folner_set,
    as_element, canonical_order,
)
from .subsets import (
    SubsetGenerator, SubsetKind, DensityReport, density, ip_initial_segment, subset_from_dict,
)

__all__ = [
    'GroupElement', 'FiniteGroupSet', 'FolnerSequence', 'FolnerKind', 'folner_set',
    'as_element', 'canonical_order',
    'SubsetGenerator', 'SubsetKind', 'DensityReport', 'density', 'ip_initial_segment',
    'subset_from_dict',
]
