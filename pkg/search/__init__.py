"""
Constructive finite-scale searches: independence witnesses, entropy-maximising
sequences, correlation averages and sequence entropy pair localisation.
"""
from .entropy_sequence import greedy_entropy_sequence
from .independence import greedy_independence, ip_restricted_independence, resolve_pool, witness_cover_profile
from .mixing import correlation_profile, density_one_witness
from .se_pairs import se_pair_localize

__all__ = [
    'greedy_entropy_sequence',
    'greedy_independence', 'ip_restricted_independence', 'resolve_pool', 'witness_cover_profile',
    'correlation_profile', 'density_one_witness',
    'se_pair_localize',
]
