"""
Open covers, exact minimal subcovers and topological sequence entropy.
"""
from .cover import (
    AtomIncidence, Cover, CoverFlags, complement_cover, cover_atoms, cover_flags,
    cover_from_dict, origin_cylinder_cover, validate_cover,
)
from .set_cover import greedy_cover, min_subcover
from .topological import (
    hitting_times, join_size, non_weak_mixing_ceiling, strong_mixing_evidence,
    top_seq_entropy_profile,
)

__all__ = [
    'AtomIncidence', 'Cover', 'CoverFlags', 'complement_cover', 'cover_atoms', 'cover_flags',
    'cover_from_dict', 'origin_cylinder_cover', 'validate_cover',
    'greedy_cover', 'min_subcover',
    'hitting_times', 'join_size', 'non_weak_mixing_ceiling', 'strong_mixing_evidence',
    'top_seq_entropy_profile',
]
