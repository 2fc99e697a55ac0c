"""
Greedy construction of independence sequences.

S = (g_1, ..., g_m) is independent for disjoint sets W_1..W_l when every
intersection ⋂_i g_i^{-1} W_{s(i)}, s ∈ {1..l}^m, is nonempty. The search
keeps all l^m intersections and accepts the next pool element whose
translates split every one of them.
"""
import logging
import math
from typing import List, Optional, Sequence, Union

import config
from core.errors import MalformedInputError
from core.models import EntropyProfile, IndependenceWitness, IPIndependenceReport, ProfileKind, ProfileRow
from covers.cover import complement_cover, validate_cover
from covers.topological import join_size
from group.lattice import GroupElement, as_element
from group.subsets import SubsetGenerator, ip_initial_segment
from systems.base import DynamicalSystem

logger = logging.getLogger(__name__)

Pool = Union[SubsetGenerator, Sequence]


def resolve_pool(pool: Pool, pool_size: Optional[int] = None, d: Optional[int] = None) -> List[GroupElement]:
    """First pool_size elements of a generator, or an explicit candidate list as given."""
    if isinstance(pool, SubsetGenerator):
        return list(pool.take(pool_size or config.DEFAULT_POOL_SIZE))
    candidates = [as_element(g, d) for g in pool]
    return candidates[:pool_size] if pool_size else candidates


def greedy_independence(
    sys: DynamicalSystem,
    W: Sequence,
    k: int,
    pool: Pool,
    pool_size: Optional[int] = None
) -> IndependenceWitness:
    """
    Extend S by the first pool element keeping all l^{|S|+1} intersections nonempty.

    Returns a witness flagged incomplete when the pool runs out before k;
    that only suggests, never proves, a lack of weak mixing.

    Raises:
        MalformedInputError: Fewer than two sets, overlapping sets or k < 1
    """
    if len(W) < 2:
        raise MalformedInputError("independence sets", f"need at least two sets, got {len(W)}")
    if not isinstance(k, int) or k < 1:
        raise MalformedInputError("independence length", f"k must be >= 1, got {k!r}")
    if not sys.pairwise_disjoint(list(W)):
        raise MalformedInputError("independence sets", "the sets W_j must be pairwise disjoint")

    candidates = resolve_pool(pool, pool_size, sys.d)
    state = {(): sys.full_set()}
    S: List[GroupElement] = []
    indices: List[int] = []

    for idx, g in enumerate(candidates):
        if len(S) >= k:
            break
        if g in S:
            continue
        moved = [sys.translate_set(g, Wj) for Wj in W]
        extended = {}
        for labels, A in state.items():
            for j, B in enumerate(moved):
                C = sys.intersect(A, B)
                if sys.is_empty(C):
                    break
                extended[labels + (j,)] = C
            else:
                continue
            break
        else:
            state = extended
            S.append(g)
            indices.append(idx)
            logger.debug(f"Accepted {g} (pool index {idx}); |S| = {len(S)}")

    witness = IndependenceWitness(
        S=S, depth=len(W), target=k, verified=True, pool_size=len(candidates), pool_indices=indices
    )
    if witness.complete:
        logger.info(f"Independence witness of length {k} found within {indices[-1] + 1} pool elements")
    else:
        logger.warning(
            f"Pool of {len(candidates)} exhausted at length {len(S)} < {k}; witness incomplete"
        )
    return witness


def ip_restricted_independence(
    sys: DynamicalSystem,
    W: Sequence,
    k: int,
    generators: Sequence,
    levels: Optional[int] = None
) -> IPIndependenceReport:
    """
    Independence witnesses drawn from FP(p_1..p_m) for m = 1..levels.

    Each level is searched from scratch inside its own initial segment.
    """
    gens = [as_element(p, sys.d) for p in generators]
    levels = levels or len(gens)
    witnesses = []
    for m in range(1, levels + 1):
        pool = ip_initial_segment(gens, m)
        witnesses.append(greedy_independence(sys, W, k, list(pool)))
    return IPIndependenceReport(generators=gens, levels=witnesses)


def witness_cover_profile(
    sys: DynamicalSystem,
    witness: IndependenceWitness,
    W: Sequence
) -> EntropyProfile:
    """Topological profile of {X ∖ W_j} along the prefixes of the witness sequence."""
    cover = validate_cover(sys, complement_cover(sys, W))
    profile = EntropyProfile(kind=ProfileKind.TOPOLOGICAL)
    for m in range(1, len(witness.S) + 1):
        n_join = join_size(sys, cover, witness.S[:m])
        joint = math.log(n_join)
        profile.rows.append(ProfileRow(n=m, count=m, joint=joint, normalized=joint / m, n_join=n_join, solver="exact"))
    return profile
