"""
d-parameter circle rotations g·x = x + Σ g_i·angle_i (mod 1) with Lebesgue measure.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Tuple

from core.errors import MalformedInputError
from group.lattice import GroupElement
from systems.base import DynamicalSystem, SystemKind
from systems.circle import Arc, ArcSet
from utils.numbers import Number, is_exact, mod1, parse_number

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RotationSystem(DynamicalSystem):
    """
    Rotation of the circle R/Z by one angle per generator.

    Rational angles (Fractions) keep every interval computation exact;
    float angles fall back to tolerance snapping.
    """
    d: int
    angles: Tuple[Number, ...]

    kind = SystemKind.ROTATION

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise MalformedInputError("rotation system", f"d must be >= 1, got {self.d!r}")
        angles = tuple(parse_number(a) for a in self.angles)
        if len(angles) != self.d:
            raise MalformedInputError("rotation system", f"expected {self.d} angles, got {len(angles)}")
        if any(a < 0 or a >= 1 for a in angles):
            raise MalformedInputError("rotation system", f"angles must lie in [0, 1): {angles}")
        object.__setattr__(self, "angles", angles)

    @property
    def exact(self) -> bool:
        return is_exact(*self.angles)

    def theta(self, g: GroupElement) -> Number:
        """Total rotation Σ g_i·angle_i reduced mod 1."""
        if g.d != self.d:
            raise MalformedInputError("group element", f"{g} does not act on a Z^{self.d} system")
        if self.exact:
            return mod1(sum((c * a for c, a in zip(g.coords, self.angles)), Fraction(0)))
        return mod1(math.fsum(c * float(a) for c, a in zip(g.coords, self.angles)))

    def rotate_arc(self, g: GroupElement, arc: Arc) -> Arc:
        """g^{-1}(arc): the arc moved by -theta(g), same length."""
        return arc.rotate(-self.theta(g))

    # ------------------------------------------------------------------
    # Open-set algebra
    # ------------------------------------------------------------------

    def full_set(self) -> ArcSet:
        return ArcSet.full()

    def empty_set(self) -> ArcSet:
        return ArcSet.empty()

    def translate_set(self, g: GroupElement, A: ArcSet) -> ArcSet:
        return A.rotate(-self.theta(g))

    def intersect(self, A: ArcSet, B: ArcSet) -> ArcSet:
        return A.intersect(B)

    def union(self, A: ArcSet, B: ArcSet) -> ArcSet:
        return A.union(B)

    def complement(self, A: ArcSet) -> ArcSet:
        return A.complement()

    def is_empty(self, A: ArcSet) -> bool:
        return A.is_empty()

    def measure(self, A: ArcSet) -> Number:
        return A.measure()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "d": self.d,
            "angles": [str(a) if isinstance(a, Fraction) else a for a in self.angles],
        }


def rotate_arc(sys: RotationSystem, g: GroupElement, arc: Arc) -> Arc:
    """g^{-1}(arc) for a rotation system."""
    return sys.rotate_arc(g, arc)
