"""
Correlation averages and density-one witnesses of weak mixing.

For a weakly mixing system (1/|F_n|) Σ_{g ∈ F_n} |μ(A ∩ g^{-1}B) - μ(A)μ(B)|
tends to 0, equivalently the deviations are small off a density-zero set.
"""
import logging
import math
from typing import Dict, List, Sequence

from core.errors import MalformedInputError
from core.models import CorrelationRow, DensityWitness
from group.lattice import FolnerSequence, GroupElement, folner_set
from group.subsets import SubsetGenerator, density
from systems.base import DynamicalSystem

logger = logging.getLogger(__name__)


class _Deviations:
    """Memoised |μ(A ∩ g^{-1}B) - μ(A)μ(B)| as floats."""

    def __init__(self, sys: DynamicalSystem, A, B):
        self.sys = sys
        self.A = A
        self.B = B
        self.product = sys.measure(A) * sys.measure(B)
        self._cache: Dict[GroupElement, float] = {}

    def __call__(self, g: GroupElement) -> float:
        if g not in self._cache:
            joint = self.sys.measure(self.sys.intersect(self.A, self.sys.translate_set(g, self.B)))
            self._cache[g] = float(abs(joint - self.product))
        return self._cache[g]


def correlation_profile(sys: DynamicalSystem, A, B, n_range: Sequence[int]) -> List[CorrelationRow]:
    """Average correlation deviation over F_n for each n."""
    n_values = list(n_range)
    if not n_values or any(n < 1 for n in n_values):
        raise MalformedInputError("n_range", f"indices must be >= 1: {n_values}")
    deviation = _Deviations(sys, A, B)
    F = FolnerSequence(sys.d)
    rows = []
    for n in n_values:
        box = folner_set(F, n)
        rows.append(CorrelationRow(n=n, average=math.fsum(deviation(g) for g in box) / len(box)))
    if rows:
        logger.info(f"Correlation average at n={rows[-1].n}: {rows[-1].average:.6g}")
    return rows


def density_one_witness(sys: DynamicalSystem, A, B, eps: float, n: int) -> DensityWitness:
    """
    Elements of F_n with deviation >= eps, and the subset avoiding them.

    The returned subset is a density-one-complement generator; along it the
    correlations stay within eps of μ(A)μ(B) on F_n.
    """
    if eps <= 0:
        raise MalformedInputError("eps", f"must be positive, got {eps}")
    deviation = _Deviations(sys, A, B)
    F = FolnerSequence(sys.d)
    exceptional = [g for g in folner_set(F, n) if deviation(g) >= eps]
    S = SubsetGenerator.density_one_complement(sys.d, exceptional)
    complement_density = density(S, F, n).ratio(n)
    logger.info(f"{len(exceptional)} exceptional elements in F_{n}; complement density {complement_density:.6g}")
    return DensityWitness(
        eps=eps, n=n, exceptional=list(S.elements), subset=S.to_dict(), complement_density=complement_density
    )
