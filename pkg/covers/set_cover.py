"""
Minimal subcover N(·) on an AtomIncidence.

Greedy: repeatedly take the element covering the most uncovered atoms
(smallest index on ties). Exact: reductions (empty/duplicate/dominated
elements, forced elements, dominated atoms), a disjoint-atom packing lower
bound, then branch and bound on the reduced core with bitmask sets.
Circle instances cover their arc elements with the polynomial circular-arc
cover and branch only on elements that split into several arcs.
"""
import logging
import math
from typing import Dict, List, Optional, Set, Tuple

import config
from core.errors import MalformedInputError, SolverBudgetError
from core.models import SolverMode
from covers.cover import AtomIncidence

logger = logging.getLogger(__name__)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def greedy_cover(universe: int, masks: List[int]) -> List[int]:
    """Indices chosen by the greedy rule; assumes the masks cover the universe."""
    covered = 0
    chosen: List[int] = []
    while covered != universe:
        best_idx, best_gain = -1, 0
        for i, mask in enumerate(masks):
            gain = (mask & ~covered & universe).bit_count()
            if gain > best_gain:
                best_idx, best_gain = i, gain
        if best_idx < 0:
            raise MalformedInputError("set cover instance", "elements do not cover every atom")
        chosen.append(best_idx)
        covered |= masks[best_idx]
    return chosen


def _atom_columns(universe: int, masks: List[int]) -> Dict[int, int]:
    """atom -> bitmask of the elements containing it."""
    columns = {atom: 0 for atom in _bits(universe)}
    for i, mask in enumerate(masks):
        for atom in _bits(mask & universe):
            columns[atom] |= 1 << i
    return columns


def _reduce(universe: int, masks: List[int]) -> Tuple[int, List[int], int]:
    """
    Shrink an instance without changing its optimum minus the forced count.

    Returns:
        (remaining universe, remaining element masks, number of forced elements)
    """
    forced = 0
    changed = True
    while changed and universe:
        changed = False

        # empty and duplicate elements, then elements contained in another
        unique = sorted({m & universe for m in masks if m & universe}, key=lambda m: (-m.bit_count(), m))
        kept: List[int] = []
        for m in unique:
            if not any(m | k == k for k in kept):
                kept.append(m)
        if len(kept) != len(masks):
            changed = True
        masks = kept

        columns = _atom_columns(universe, masks)

        # an atom with a single covering element forces that element
        for atom, column in columns.items():
            if column.bit_count() == 1 and universe >> atom & 1:
                element = masks[column.bit_length() - 1]
                forced += 1
                universe &= ~element
                changed = True
        if changed:
            masks = [m & universe for m in masks]
            continue

        # atom a is dominated when some other atom b has column(b) ⊆ column(a)
        distinct: Dict[int, int] = {}
        for atom, column in columns.items():
            distinct.setdefault(column, atom)
        keep_atoms = 0
        ordered = sorted(distinct.items(), key=lambda item: item[0].bit_count())
        survivors: List[int] = []
        for column, atom in ordered:
            if not any(other | column == column for other in survivors):
                survivors.append(column)
                keep_atoms |= 1 << atom
        if keep_atoms != universe:
            universe = keep_atoms
            masks = [m & universe for m in masks]
            changed = True

    return universe, [m for m in masks if m], forced


def _packing_bound(universe: int, masks: List[int]) -> int:
    """Atoms pairwise sharing no element each need their own element."""
    columns = _atom_columns(universe, masks)
    used = 0
    packed = 0
    for atom, column in sorted(columns.items(), key=lambda item: (item[1].bit_count(), item[0])):
        if column & used == 0:
            used |= column
            packed += 1
    return packed


def _branch_and_bound(universe: int, masks: List[int], upper: int) -> int:
    best = upper
    columns = _atom_columns(universe, masks)
    order = sorted(range(len(masks)), key=lambda i: (-masks[i].bit_count(), i))

    def search(covered: int, size: int):
        nonlocal best
        remaining = universe & ~covered
        if not remaining:
            best = min(best, size)
            return
        if size + 1 >= best:
            return
        max_gain = max((m & remaining).bit_count() for m in masks)
        if size + math.ceil(remaining.bit_count() / max_gain) >= best:
            return
        # branch on the uncovered atom with the fewest covering elements
        atom = min(_bits(remaining), key=lambda a: (columns[a].bit_count(), a))
        candidates = [i for i in order if columns[atom] >> i & 1]
        candidates.sort(key=lambda i: -(masks[i] & remaining).bit_count())
        for i in candidates:
            search(covered | masks[i], size + 1)

    search(0, 0)
    return best


def _cyclic_runs(positions: List[int], m: int) -> List[Tuple[int, int]]:
    """Maximal runs (start, length) of sorted positions on a cycle of m points."""
    k = len(positions)
    if k == m:
        return [(0, m)]
    breaks = [i for i in range(k) if positions[(i + 1) % k] != (positions[i] + 1) % m]
    runs = []
    for j, b in enumerate(breaks):
        length = (breaks[(j + 1) % len(breaks)] - b) % k or k
        runs.append((positions[(b + 1) % k], length))
    return runs


def _hull(runs: List[Tuple[int, int]], m: int) -> Tuple[int, int]:
    """Smallest arc containing every run: everything but the widest gap."""
    runs = sorted(runs)
    widest, start = -1, runs[0][0]
    for j, (s, length) in enumerate(runs):
        following = runs[(j + 1) % len(runs)][0]
        gap = (following - s - length) % m
        if gap > widest:
            widest, start = gap, following
    return start, m - widest


def _arc_cover(m: int, arcs: Set[Tuple[int, int]]) -> Optional[int]:
    """
    Fewest arcs covering a cycle of m points, None when they do not cover it.

    Some arc of an optimal cover contains point 0; from each such arc the
    greedy walk (always take the arc reaching furthest clockwise) is optimal.
    """
    if any(length >= m for _, length in arcs):
        return 1
    reach = [0] * m
    for start, length in arcs:
        for k in range(length):
            p = (start + k) % m
            reach[p] = max(reach[p], length - k)
    if min(reach) == 0:
        return None
    best = None
    for start, length in arcs:
        if (-start) % m >= length:
            continue
        covered, count = length, 1
        while covered < m:
            covered += reach[(start + covered) % m]
            count += 1
        if best is None or count < best:
            best = count
    return best


def _classify(remaining: int, pending: List[int]):
    """Split elements into arcs of the remaining cyclic order and the rest."""
    points = list(_bits(remaining))
    index = {atom: i for i, atom in enumerate(points)}
    arcs: Set[Tuple[int, int]] = set()
    scattered: List[Tuple[int, List[Tuple[int, int]]]] = []
    for mask in pending:
        positions = [index[atom] for atom in _bits(mask & remaining)]
        if not positions:
            continue
        runs = _cyclic_runs(positions, len(points))
        if len(runs) == 1:
            arcs.add(runs[0])
        else:
            scattered.append((mask, runs))
    return len(points), arcs, scattered


def _circular_cover_size(universe: int, masks: List[int], upper: int) -> int:
    """
    Exact cover for atoms numbered around a circle.

    Arcs go to the circular-arc cover; only elements made of several runs are
    branched on. Replacing those by their runs bounds a node from above,
    replacing them by their hulls bounds it from below.
    """
    best = upper

    def search(remaining: int, pending: List[int], size: int):
        nonlocal best
        if not remaining:
            best = min(best, size)
            return
        union = 0
        for mask in pending:
            union |= mask
        if union & remaining != remaining:
            return
        m, arcs, scattered = _classify(remaining, pending)
        pieces = arcs | {run for _, runs in scattered for run in runs}
        best = min(best, size + _arc_cover(m, pieces))
        hulls = arcs | {_hull(runs, m) for _, runs in scattered}
        if not scattered or size + _arc_cover(m, hulls) >= best:
            return
        if len(scattered) > config.EXACT_COVER_MAX_ELEMENTS:
            raise SolverBudgetError(len(scattered), config.EXACT_COVER_MAX_ELEMENTS)
        chosen = max(scattered, key=lambda item: (item[0] & remaining).bit_count())[0]
        rest = [mask for mask in pending if mask != chosen]
        search(remaining & ~chosen, rest, size + 1)
        search(remaining, rest, size)

    search(universe, masks, 0)
    return best


def exact_cover_size(universe: int, masks: List[int], circular: bool = False) -> int:
    """
    Optimal set cover size (masks must cover the universe).

    With circular=True the atoms are numbered around a circle and elements
    that are arcs of it are covered without branching.
    """
    universe, core, forced = _reduce(universe, masks)
    if not universe:
        return forced
    upper = len(greedy_cover(universe, core))
    lower = _packing_bound(universe, core)
    if lower >= upper:
        return forced + upper
    if circular:
        return forced + _circular_cover_size(universe, core, upper)
    if len(core) > config.EXACT_COVER_MAX_ELEMENTS:
        raise SolverBudgetError(len(core), config.EXACT_COVER_MAX_ELEMENTS)
    logger.debug(f"Branch and bound on a core of {len(core)} elements, bounds [{lower}, {upper}]")
    return forced + _branch_and_bound(universe, core, upper)


def min_subcover(inc: AtomIncidence, mode: SolverMode = SolverMode.EXACT) -> int:
    """
    Smallest number of elements covering every atom.

    Raises:
        MalformedInputError: The elements do not cover the atoms
        SolverBudgetError: Exact mode with a reduced core above the budget
    """
    mode = SolverMode(mode)
    if inc.n_atoms == 0:
        return 0
    if not inc.is_cover():
        raise MalformedInputError("set cover instance", "elements do not cover every atom")
    if mode == SolverMode.GREEDY:
        return len(greedy_cover(inc.universe, inc.elements))
    return exact_cover_size(inc.universe, inc.elements, circular=inc.circular)
