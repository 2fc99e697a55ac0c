"""
Partitions, exact joins and measure-theoretic sequence entropy.
"""
from .partitions import (
    ArcPartition, CellDistribution, Partition, SymbolicPartition,
    join_cells, join_partitions, partition_from_dict,
)
from .measure import (
    conditional_entropy, joint_entropy, partition_entropy, seq_entropy_profile, shannon_entropy,
)

__all__ = [
    'ArcPartition', 'CellDistribution', 'Partition', 'SymbolicPartition',
    'join_cells', 'join_partitions', 'partition_from_dict',
    'conditional_entropy', 'joint_entropy', 'partition_entropy', 'seq_entropy_profile',
    'shannon_entropy',
]
