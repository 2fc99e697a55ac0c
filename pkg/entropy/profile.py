"""
Row loop shared by the measure-theoretic and topological profiles.
"""
import logging
from typing import Callable, Dict, Optional, Sequence, Tuple

import config
from core.errors import CapacityError, MalformedInputError
from core.models import EntropyProfile, ProfileKind, ProfileRow
from group.lattice import FiniteGroupSet, FolnerSequence
from group.subsets import SubsetGenerator
from utils.parallel import ordered_map

logger = logging.getLogger(__name__)

RowEvaluator = Callable[[FiniteGroupSet], Tuple[float, Dict]]


def compute_profile(
    kind: ProfileKind,
    S: SubsetGenerator,
    F: FolnerSequence,
    n_range: Sequence[int],
    evaluate: RowEvaluator,
    jobs: Optional[int] = None
) -> EntropyProfile:
    """
    Evaluate the joint value on S ∩ F_n for every n, in order.

    Args:
        kind: Profile kind recorded on the result
        S: Subset generator
        F: Følner boxes
        n_range: Increasing box indices
        evaluate: gens -> (joint value in nats, extra ProfileRow fields)
        jobs: Worker threads (config.DEFAULT_JOBS when None)

    Returns:
        EntropyProfile; rows with an empty S ∩ F_n are skipped and the first
        CapacityError truncates the profile.
    """
    n_values = list(n_range)
    if not n_values:
        raise MalformedInputError("n_range", "no box indices to evaluate")
    if S.d != F.d:
        raise MalformedInputError("profile input", f"subset lives in Z^{S.d} but boxes in Z^{F.d}")
    if any(n < 1 for n in n_values) or n_values != sorted(set(n_values)):
        raise MalformedInputError("n_range", f"indices must be increasing and >= 1: {n_values}")
    if F.size(n_values[-1]) > config.MAX_FOLNER_SET_SIZE and not S.is_finite:
        raise CapacityError("|F_n|", F.size(n_values[-1]), config.MAX_FOLNER_SET_SIZE)

    tasks = []
    for n in n_values:
        gens = S.members(n)
        if not gens:
            logger.debug(f"n={n}: S ∩ F_n is empty, row skipped")
            continue
        tasks.append((n, gens))

    results = ordered_map(lambda task: evaluate(task[1]), tasks, jobs)

    profile = EntropyProfile(kind=kind)
    for (n, gens), (result, error) in zip(tasks, results):
        if error is not None:
            if isinstance(error, CapacityError):
                profile.truncated = True
                profile.truncation_reason = str(error).splitlines()[0]
                logger.warning(f"Profile truncated at n={n}: {profile.truncation_reason}")
                break
            raise error
        joint, extra = result
        profile.rows.append(
            ProfileRow(n=n, count=len(gens), joint=joint, normalized=joint / len(gens), **extra)
        )
        logger.debug(f"n={n}: count={len(gens)} joint={joint:.6g}")
    return profile
