"""
Localising a sequence entropy pair from a standard cover.

Start from the complements K_1 = X ∖ U_1, K_2 = X ∖ U_2 of a standard cover
and repeatedly replace each K_i by a ball of at most half its diameter that
keeps positive evidence for the cover {X ∖ K_1, X ∖ K_2}. Evidence is
finite-scale: a complete independence witness for (K_1, K_2) along which the
topological profile of that cover stays above a threshold.

Symbolic balls are cylinders fixing the sup-norm ball B_r around the origin
(diameter 2^{-(r+1)}); rotation balls are arcs (diameter = arc span).
"""
import itertools
import logging
from typing import Any, Dict, Iterator, List, Optional, Tuple

import config
from core.errors import MalformedInputError
from core.models import SELevel, SEPairCandidate
from covers.cover import Cover
from group.lattice import GroupElement
from group.subsets import SubsetGenerator
from search.independence import Pool, greedy_independence, resolve_pool, witness_cover_profile
from systems.base import DynamicalSystem
from systems.circle import Arc, ArcSet
from systems.registry import open_set_to_dict
from systems.symbolic import CylinderPattern, CylinderUnion, SymbolicSystem, check_enumeration_budget
from utils.numbers import format_number

logger = logging.getLogger(__name__)

Ball = Tuple[Any, float]  # (open set, diameter)


def _sup_ball(d: int, r: int) -> List[GroupElement]:
    return [GroupElement(c) for c in itertools.product(range(-r, r + 1), repeat=d)]


def _radius(domain) -> int:
    """Smallest r with the domain inside B_r."""
    return max((g.norm() for g in domain), default=0)


class _SymbolicBalls:
    """Cylinders on B_{r0 + level}; r0 is fixed by the starting sets."""

    def __init__(self, sys: SymbolicSystem, K0: CylinderUnion, K1: CylinderUnion):
        self.sys = sys
        self.r0 = _radius(K0.domain() + K1.domain())

    def diameter(self, K: CylinderUnion) -> float:
        if len(K.patterns) != 1:
            return 1.0
        fixed = set(K.patterns[0].domain)
        s = -1
        while all(g in fixed for g in _sup_ball(self.sys.d, s + 1)):
            s += 1
        return 2.0 ** -(s + 1)

    def children(self, K: CylinderUnion, level: int) -> Iterator[Ball]:
        r = self.r0 + level
        ball = _sup_ball(self.sys.d, r)
        seen = set()
        for p in K.patterns:
            fixed = p.as_dict()
            free = [g for g in ball if g not in fixed]
            check_enumeration_budget(self.sys.alphabet_size, len(free))
            for letters in itertools.product(range(self.sys.alphabet_size), repeat=len(free)):
                child = CylinderPattern.of({**fixed, **dict(zip(free, letters))})
                if child in seen:
                    continue
                seen.add(child)
                yield CylinderUnion.of(child), 2.0 ** -(r + 1)

    @staticmethod
    def point(K: CylinderUnion) -> Dict[str, Any]:
        return K.patterns[0].to_dict()


class _ArcBalls:
    """Halves of the arcs of the current set."""

    def diameter(self, K: ArcSet) -> float:
        gaps = [float(arc.length) for arc in K.complement().arcs()]
        return 1.0 - max(gaps, default=0.0)

    def children(self, K: ArcSet, level: int) -> Iterator[Ball]:
        for arc in K.arcs():
            half = arc.length / 2
            for start in (arc.start, arc.start + half):
                piece = ArcSet.from_arcs([Arc(start, half)])
                yield piece, float(half)

    @staticmethod
    def point(K: ArcSet) -> Dict[str, Any]:
        return {"point": format_number(K.arcs()[0].midpoint())}


def _evidence(
    sys: DynamicalSystem,
    K0, K1,
    candidates: List[GroupElement],
    length: int,
    threshold: float
) -> Tuple[bool, int, Optional[float]]:
    """(positive, witness length, minimum normalized profile value)."""
    witness = greedy_independence(sys, [K0, K1], length, candidates)
    if not witness.complete:
        return False, witness.length, None
    profile = witness_cover_profile(sys, witness, [K0, K1])
    low = min(profile.normalized_values())
    return low >= threshold, witness.length, low


def se_pair_localize(
    sys: DynamicalSystem,
    U: Cover,
    depth: int,
    pool: Optional[Pool] = None,
    evidence_length: Optional[int] = None,
    threshold: Optional[float] = None
) -> SEPairCandidate:
    """
    Nested certificate of balls with halving diameters, or the level where it stops.

    Level 0 records the cover's complement sets and whether they already
    carry positive evidence (precondition_met); it never fails. At each
    later level side 0 is refined against the current side 1, then side 1
    against the new side 0, taking the first child in enumeration order
    with positive evidence. A level records the weaker of its two sides'
    evidence (shorter witness, lower profile minimum).

    Raises:
        MalformedInputError: The cover is not standard or depth < 0
    """
    if not U.is_standard:
        raise MalformedInputError("cover", f"pair localisation needs a standard cover, got {len(U)} elements")
    if not isinstance(depth, int) or depth < 0:
        raise MalformedInputError("depth", f"must be a nonnegative integer, got {depth!r}")
    length = evidence_length or config.SE_EVIDENCE_LENGTH
    threshold = config.SE_PROFILE_THRESHOLD if threshold is None else threshold
    candidates = resolve_pool(pool if pool is not None else SubsetGenerator.full(sys.d), d=sys.d)

    current = [sys.complement(U.elements[0]), sys.complement(U.elements[1])]
    if not sys.pairwise_disjoint(current):
        raise MalformedInputError("cover", "U_1 ∪ U_2 must be X")
    balls = _SymbolicBalls(sys, *current) if isinstance(sys, SymbolicSystem) else _ArcBalls()

    positive, witness_length, low = _evidence(sys, current[0], current[1], candidates, length, threshold)
    certificate = [SELevel(
        level=0,
        balls=[open_set_to_dict(K) for K in current],
        diameters=[balls.diameter(K) for K in current],
        positive=positive, witness_length=witness_length, profile_min=low,
    )]
    logger.info(f"Level 0: evidence {'positive' if positive else 'absent'} (witness length {witness_length})")

    for level in range(1, depth + 1):
        diameters = [0.0, 0.0]
        lengths: List[int] = []
        lows: List[float] = []
        for side in (0, 1):
            other = current[1 - side]
            for child, diameter in balls.children(current[side], level):
                pair = (child, other) if side == 0 else (other, child)
                positive, witness_length, low = _evidence(sys, *pair, candidates, length, threshold)
                if positive:
                    current[side] = child
                    diameters[side] = diameter
                    lengths.append(witness_length)
                    lows.append(low)
                    break
            else:
                logger.warning(f"Level {level}: no ball on side {side} keeps positive evidence")
                return SEPairCandidate(
                    status="inconclusive", precondition_met=certificate[0].positive,
                    certificate=certificate, failed_level=level,
                )
        certificate.append(SELevel(
            level=level,
            balls=[open_set_to_dict(K) for K in current],
            diameters=diameters,
            positive=True, witness_length=min(lengths), profile_min=min(lows),
        ))
        logger.info(f"Level {level}: diameters {diameters[0]:.4g}, {diameters[1]:.4g}")

    found = certificate[-1].positive
    return SEPairCandidate(
        status="candidate" if found else "inconclusive",
        precondition_met=certificate[0].positive,
        certificate=certificate,
        pair=[balls.point(K) for K in current] if found else None,
    )
