"""
Shannon and conditional entropy of partitions and measure-theoretic
sequence entropy profiles.
"""
import logging
from typing import Optional, Sequence, Tuple

import numpy as np

import config
from core.errors import MalformedInputError
from core.models import EntropyProfile, ProfileKind
from entropy.partitions import CellDistribution, Partition, join_cells, join_partitions
from entropy.profile import compute_profile
from group.lattice import FiniteGroupSet, FolnerSequence, GroupElement
from group.subsets import SubsetGenerator
from systems.base import DynamicalSystem

logger = logging.getLogger(__name__)


def shannon_entropy(weights: Sequence) -> float:
    """
    Σ -w log w in nats, with 0 log 0 = 0.

    Raises:
        MalformedInputError: Negative weights or a sum away from 1
    """
    w = np.asarray([float(x) for x in weights], dtype=float)
    if w.size == 0:
        raise MalformedInputError("entropy weights", "empty weight vector")
    if np.any(w < 0):
        raise MalformedInputError("entropy weights", f"negative weight in {w.tolist()}")
    if abs(w.sum() - 1.0) > config.DISTRIBUTION_TOLERANCE:
        raise MalformedInputError("entropy weights", f"weights sum to {w.sum()}, not 1")
    w = w[w > 0]
    h = float(-np.sum(w * np.log(w)))
    return h if h > 0 else 0.0


def distribution_entropy(dist: CellDistribution) -> float:
    return shannon_entropy(dist.weights())


def partition_entropy(sys: DynamicalSystem, alpha: Partition) -> float:
    """H(α)."""
    return distribution_entropy(join_cells(sys, alpha, [GroupElement.zero(sys.d)]))


def joint_entropy(sys: DynamicalSystem, alpha: Partition, gens: Sequence[GroupElement]) -> float:
    """H(⋁_{g ∈ gens} g^{-1}α)."""
    return distribution_entropy(join_cells(sys, alpha, gens))


def conditional_entropy(sys: DynamicalSystem, alpha: Partition, beta: Partition) -> float:
    """H(α | β) = H(α ∨ β) - H(β), clipped at 0."""
    e = GroupElement.zero(sys.d)
    h_joint = distribution_entropy(join_partitions(sys, [(e, alpha), (e, beta)]))
    h_beta = partition_entropy(sys, beta)
    return max(h_joint - h_beta, 0.0)


def seq_entropy_profile(
    sys: DynamicalSystem,
    alpha: Partition,
    S: SubsetGenerator,
    F: FolnerSequence,
    n_range: Sequence[int],
    jobs: Optional[int] = None
) -> EntropyProfile:
    """
    Rows (n, |S ∩ F_n|, H(⋁ g^{-1}α), H / |S ∩ F_n|) for n in n_range.

    Rows whose join exceeds the enumeration budget end the profile, which is
    returned with truncated = True and the rows computed before it.
    """
    if S.d != sys.d or F.d != sys.d:
        raise MalformedInputError("profile input", f"system is Z^{sys.d}, subset Z^{S.d}, boxes Z^{F.d}")

    def evaluate(gens: FiniteGroupSet) -> Tuple[float, dict]:
        return joint_entropy(sys, alpha, gens), {}

    profile = compute_profile(ProfileKind.MEASURE, S, F, n_range, evaluate, jobs)
    if profile.rows:
        logger.info(
            f"Measure profile: {len(profile.rows)} rows, final normalized "
            f"{profile.final.normalized:.6g}, tail max {profile.tail_max:.6g}"
        )
    return profile
