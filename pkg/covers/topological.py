"""
Topological sequence entropy profiles, hitting-time sets N(U, V) and the
finite-scale mixing checks built on them.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

from core.errors import MalformedInputError
from core.models import CeilingRow, EntropyProfile, ProfileKind, SolverMode, StrongMixingRow
from covers.cover import Cover, cover_atoms, validate_cover
from covers.set_cover import min_subcover
from entropy.profile import compute_profile
from group.lattice import FiniteGroupSet, FolnerSequence, GroupElement, folner_set
from group.subsets import SubsetGenerator
from systems.base import DynamicalSystem

logger = logging.getLogger(__name__)


def join_size(
    sys: DynamicalSystem,
    U: Cover,
    gens: Sequence[GroupElement],
    solver: SolverMode = SolverMode.EXACT
) -> int:
    """N(⋁_{g ∈ gens} g^{-1}U)."""
    return min_subcover(cover_atoms(sys, [(g, U) for g in gens]), solver)


def top_seq_entropy_profile(
    sys: DynamicalSystem,
    U: Cover,
    S: SubsetGenerator,
    F: FolnerSequence,
    n_range: Sequence[int],
    solver: SolverMode = SolverMode.EXACT,
    jobs: Optional[int] = None
) -> EntropyProfile:
    """
    Rows (n, |S ∩ F_n|, log N, log N / |S ∩ F_n|) with N the minimal subcover
    of the joined cover.

    An exact-solver budget failure is a capacity failure and truncates the
    profile like an enumeration overflow.
    """
    if S.d != sys.d or F.d != sys.d:
        raise MalformedInputError("profile input", f"system is Z^{sys.d}, subset Z^{S.d}, boxes Z^{F.d}")
    solver = SolverMode(solver)

    def evaluate(gens: FiniteGroupSet) -> Tuple[float, dict]:
        n_join = join_size(sys, U, gens, solver)
        return math.log(n_join), {"n_join": n_join, "solver": solver.value}

    profile = compute_profile(ProfileKind.TOPOLOGICAL, S, F, n_range, evaluate, jobs)
    if profile.rows:
        logger.info(
            f"Topological profile ({solver.value}): {len(profile.rows)} rows, "
            f"final N = {profile.final.n_join}, tail max {profile.tail_max:.6g}"
        )
    return profile


def hitting_times(sys: DynamicalSystem, U, V, n: int) -> FiniteGroupSet:
    """N(U, V) ∩ F_n = {g ∈ F_n : U ∩ g^{-1}V ≠ ∅}."""
    return tuple(g for g in folner_set(FolnerSequence(sys.d), n) if sys.meets(U, g, V))


def strong_mixing_evidence(sys: DynamicalSystem, U, V, n_values: Sequence[int]) -> List[StrongMixingRow]:
    """
    F_n ∖ N(U, V) for each n.

    For a strongly mixing system the misses stay inside one finite set as n grows.
    """
    rows = []
    for n in n_values:
        hits = set(hitting_times(sys, U, V, n))
        misses = [g for g in folner_set(FolnerSequence(sys.d), n) if g not in hits]
        rows.append(StrongMixingRow(n=n, misses=misses))
        logger.debug(f"n={n}: {len(misses)} misses")
    return rows


def non_weak_mixing_ceiling(
    sys: DynamicalSystem,
    U1, U2, V1, V2,
    S: SubsetGenerator,
    F: FolnerSequence,
    n_range: Sequence[int],
    solver: SolverMode = SolverMode.EXACT
) -> List[CeilingRow]:
    """
    Check N(join of {X∖V1, X∖V2} over S ∩ F_n) ≤ |S ∩ F_n| + 1.

    Each row also records whether N(U1, U1) ∩ N(U1, U2) = ∅ holds on F_n;
    the ceiling is only guaranteed on rows where it does.
    """
    cover = validate_cover(sys, Cover((sys.complement(V1), sys.complement(V2))))
    rows = []
    for n in n_range:
        gens = S.members(n)
        if not gens:
            continue
        returns = set(hitting_times(sys, U1, U1, n))
        crossings = set(hitting_times(sys, U1, U2, n))
        row = CeilingRow(
            n=n,
            count=len(gens),
            n_join=join_size(sys, cover, gens, solver),
            disjoint=not (returns & crossings),
        )
        if row.disjoint and not row.holds:
            logger.warning(f"n={n}: N = {row.n_join} exceeds |S ∩ F_n| + 1 = {row.bound}")
        rows.append(row)
    return rows
