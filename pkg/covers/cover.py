"""
Open covers and the finite atom carrier of their translated joins.

Atoms are the configurations on the union domain of all translated cover
elements (symbolic) or the open arcs between all translated endpoints
(rotation). Atoms that lie in exactly the same translated elements are
merged (rotation atoms only with their circular neighbours, so elements that
are arcs stay runs of consecutive atoms).
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, Set, Tuple

import numpy as np

import config
from core.errors import CapacityError, ConfigError, MalformedInputError
from group.lattice import GroupElement
from systems.base import DynamicalSystem
from systems.circle import elementary_arcs
from systems.registry import open_set_from_dict, open_set_to_dict
from systems.symbolic import (
    CylinderPattern, CylinderUnion, SymbolicSystem, configuration_blocks, match_mask
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverFlags:
    """Cover properties evaluated on the atom carrier."""
    standard: bool        # exactly two elements
    admissible: bool      # every U_i ∖ ∪_{j≠i} U_j is nonempty
    non_trivial: bool     # no element is dense

    def to_dict(self) -> Dict[str, bool]:
        return {"standard": self.standard, "admissible": self.admissible, "non_trivial": self.non_trivial}


@dataclass(frozen=True)
class Cover:
    """A finite list of open sets of one system."""
    elements: Tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise MalformedInputError("cover", "a cover needs at least one element")

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_standard(self) -> bool:
        return len(self.elements) == 2

    def to_dict(self) -> Dict[str, Any]:
        return {"elements": [open_set_to_dict(U) for U in self.elements]}


@dataclass
class AtomIncidence:
    """
    Set-cover instance over the atom carrier.

    elements[i] is a bitmask over atoms; when built by cover_atoms the
    elements are the nonempty members of the joined cover, labelled by the
    element index chosen in each translate. Circular instances number their
    atoms in order around the circle.
    """
    n_atoms: int
    elements: List[int]
    element_labels: List[Tuple[int, ...]] = field(default_factory=list)
    translate_masks: Dict[Tuple[int, int], int] = field(default_factory=dict)
    n_translates: int = 0
    circular: bool = False

    @classmethod
    def from_sets(cls, n_atoms: int, sets: Sequence[Iterable[int]]) -> "AtomIncidence":
        """Instance from explicit atom-index sets (one per element)."""
        masks = []
        for members in sets:
            mask = 0
            for atom in members:
                if not 0 <= atom < n_atoms:
                    raise MalformedInputError("atom incidence", f"atom {atom} outside 0..{n_atoms - 1}")
                mask |= 1 << atom
            masks.append(mask)
        return cls(n_atoms=n_atoms, elements=masks, element_labels=[(i,) for i in range(len(masks))])

    @property
    def universe(self) -> int:
        return (1 << self.n_atoms) - 1

    @property
    def n_elements(self) -> int:
        return len(self.elements)

    def is_cover(self) -> bool:
        union = 0
        for mask in self.elements:
            union |= mask
        return union == self.universe


def _symbolic_signatures(sys: SymbolicSystem, flat: Sequence[CylinderUnion]) -> List[Tuple[bool, ...]]:
    domain = sorted({c for A in flat for c in A.domain()})
    columns = {c: j for j, c in enumerate(domain)}
    signatures: Set[Tuple[bool, ...]] = set()
    for block in configuration_blocks(sys.alphabet_size, len(domain)):
        member = np.stack([match_mask(A, block, columns) for A in flat], axis=1)
        for row in np.unique(member, axis=0).tolist():
            signatures.add(tuple(bool(x) for x in row))
    logger.debug(f"Symbolic atom carrier: |D| = {len(domain)}, {len(signatures)} distinct atoms")
    return sorted(signatures)


def _rotation_signatures(flat: Sequence) -> List[Tuple[bool, ...]]:
    """Elementary arcs in circular order; neighbours with equal membership merge."""
    points = [p for A in flat for p in A.endpoints()]
    ordered: List[Tuple[bool, ...]] = []
    for arc in elementary_arcs(points):
        x = arc.midpoint()
        signature = tuple(A.contains(x) for A in flat)
        if not ordered or ordered[-1] != signature:
            ordered.append(signature)
    if len(ordered) > 1 and ordered[0] == ordered[-1]:
        ordered.pop()
    return ordered


def cover_atoms(
    sys: DynamicalSystem,
    translates: Sequence[Tuple[GroupElement, Cover]]
) -> AtomIncidence:
    """
    Atom carrier of ⋁ g^{-1}U over the (g, U) pairs.

    Raises:
        MalformedInputError: Some translate does not cover X
        CapacityError: Enumeration budget or join incidence budget exceeded
    """
    if not translates:
        raise MalformedInputError("cover join", "at least one translate is required")
    moved = [[sys.translate_set(g, U) for U in cover.elements] for g, cover in translates]
    flat = [A for row in moved for A in row]
    circular = not isinstance(sys, SymbolicSystem)
    atoms = _rotation_signatures(flat) if circular else _symbolic_signatures(sys, flat)

    offsets = list(itertools.accumulate([0] + [len(row) for row in moved]))
    options: List[List[List[int]]] = []
    translate_masks: Dict[Tuple[int, int], int] = {}
    for i, signature in enumerate(atoms):
        per_translate = []
        for t, row in enumerate(moved):
            chosen = [j for j in range(len(row)) if signature[offsets[t] + j]]
            if not chosen:
                g = translates[t][0]
                raise MalformedInputError("cover", f"translate by {g} leaves part of X uncovered")
            for j in chosen:
                translate_masks[(t, j)] = translate_masks.get((t, j), 0) | (1 << i)
            per_translate.append(chosen)
        options.append(per_translate)

    incidences = sum(math.prod(len(o) for o in per_translate) for per_translate in options)
    if incidences > config.JOIN_ELEMENT_BUDGET:
        raise CapacityError(
            "joined cover incidences", incidences, config.JOIN_ELEMENT_BUDGET,
            fix="Shrink n_range or raise SEQENT_JOIN_ELEMENT_BUDGET",
        )

    join: Dict[Tuple[int, ...], int] = {}
    for i, per_translate in enumerate(options):
        bit = 1 << i
        for choice in itertools.product(*per_translate):
            join[choice] = join.get(choice, 0) | bit

    labels = sorted(join)
    logger.debug(f"Cover join of {len(translates)} translates: {len(atoms)} atoms, {len(labels)} elements")
    return AtomIncidence(
        n_atoms=len(atoms),
        elements=[join[label] for label in labels],
        element_labels=labels,
        translate_masks=translate_masks,
        n_translates=len(translates),
        circular=circular,
    )


def cover_flags(sys: DynamicalSystem, cover: Cover) -> CoverFlags:
    """Standard / admissible / non-trivial flags, decided on the atom carrier."""
    inc = cover_atoms(sys, [(GroupElement.zero(sys.d), cover)])
    masks = [inc.translate_masks.get((0, j), 0) for j in range(len(cover))]
    admissible = True
    for i, mask in enumerate(masks):
        others = 0
        for j, other in enumerate(masks):
            if j != i:
                others |= other
        if mask & ~others == 0:
            admissible = False
    non_trivial = all(mask != inc.universe for mask in masks)
    return CoverFlags(standard=cover.is_standard, admissible=admissible, non_trivial=non_trivial)


def validate_cover(sys: DynamicalSystem, cover: Cover) -> Cover:
    if not sys.is_cover(list(cover.elements)):
        raise MalformedInputError("cover", "the elements do not cover X")
    return cover


def origin_cylinder_cover(sys: SymbolicSystem) -> Cover:
    """{[a at the origin] : a in the alphabet}."""
    origin = GroupElement.zero(sys.d)
    return Cover(tuple(
        CylinderUnion.of(CylinderPattern.single(origin, a)) for a in range(sys.alphabet_size)
    ))


def complement_cover(sys: DynamicalSystem, W: Sequence) -> Cover:
    """{X ∖ W_i}; a cover whenever the W_i are pairwise disjoint."""
    return Cover(tuple(sys.complement(A) for A in W))


def cover_from_dict(sys: DynamicalSystem, data: Dict[str, Any]) -> Cover:
    """
    Cover descriptor:
        {"kind": "origin-cylinders"}
        {"kind": "complements", "sets": [<open set>, ...]}
        {"elements": [<open set>, ...]}
    """
    kind = data.get("kind", "elements")
    if kind == "origin-cylinders":
        if not isinstance(sys, SymbolicSystem):
            raise ConfigError("origin-cylinders covers need a symbolic system")
        return origin_cylinder_cover(sys)
    if kind == "complements":
        return validate_cover(sys, complement_cover(sys, [open_set_from_dict(sys, s) for s in data["sets"]]))
    if kind == "elements":
        return validate_cover(sys, Cover(tuple(open_set_from_dict(sys, s) for s in data["elements"])))
    raise ConfigError(f"unknown cover kind {kind!r}", "Use one of: origin-cylinders, complements, elements")
