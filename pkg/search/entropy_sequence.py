"""
Greedy sequences maximising the conditional entropy gain of a partition.
"""
import logging
from typing import List, Optional

import config
from core.errors import MalformedInputError
from core.models import EntropySequence
from entropy.measure import joint_entropy, partition_entropy
from entropy.partitions import Partition
from group.lattice import GroupElement
from search.independence import Pool, resolve_pool
from systems.base import DynamicalSystem
from utils.parallel import ordered_map

logger = logging.getLogger(__name__)

# gains closer than this count as ties (smallest pool index wins)
_GAIN_TIE = 1e-12


def greedy_entropy_sequence(
    sys: DynamicalSystem,
    alpha: Partition,
    k: int,
    pool: Pool,
    window: Optional[int] = None,
    pool_size: Optional[int] = None,
    jobs: Optional[int] = None
) -> EntropySequence:
    """
    Pick s_1..s_k from the pool, each maximising H(s_i^{-1}α | ⋁_{j<i} s_j^{-1}α).

    Only the first `window` unused pool elements compete at each step. The
    gains telescope: their sum is H(⋁_i s_i^{-1}α).

    Raises:
        MalformedInputError: k < 1 or window < 1
    """
    if not isinstance(k, int) or k < 1:
        raise MalformedInputError("sequence length", f"k must be >= 1, got {k!r}")
    window = window or config.DEFAULT_CANDIDATE_WINDOW
    if window < 1:
        raise MalformedInputError("candidate window", f"window must be >= 1, got {window}")

    candidates = resolve_pool(pool, pool_size, sys.d)
    used = set()
    chosen: List[GroupElement] = []
    gains: List[float] = []
    previous = 0.0

    for step in range(1, k + 1):
        competing = [(i, g) for i, g in enumerate(candidates) if i not in used and g not in chosen][:window]
        if not competing:
            logger.warning(f"Pool exhausted after {len(chosen)} of {k} steps")
            break

        results = ordered_map(lambda item: joint_entropy(sys, alpha, chosen + [item[1]]), competing, jobs)
        best = None
        for (i, g), (h, error) in zip(competing, results):
            if error is not None:
                raise error
            if best is None or h > best[2] + _GAIN_TIE:
                best = (i, g, h)

        i, g, h = best
        used.add(i)
        chosen.append(g)
        gains.append(h - previous)
        logger.debug(f"Step {step}: {g} (pool index {i}) gain {h - previous:.6g}")
        previous = h

    return EntropySequence(S=chosen, gains=gains, window=window, partition_entropy=partition_entropy(sys, alpha))
