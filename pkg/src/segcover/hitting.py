"""Minimum covers via hitting sets, with a kernel for the rectangular mode.

Each rectangular cell contributes its 4-element defining set, turning the
rectangular-cell covering problem into hitting a family of 4-sets.  Two
collapse rules shrink the family without changing minimum covers of size at
most k:

* any pair of segments contained together in more than 2k sets replaces all
  those sets by the pair itself;
* afterwards, any single segment contained in more than 2k^2 sets replaces
  all those sets by a singleton.

If more than 2k^3 sets survive, no cover of size at most k exists.  The
surviving family is solved exactly with a depth-<=k search tree that forces
singletons and branches over at most four elements of a smallest unhit set.

``brute_force_cover`` is the independent ground-truth oracle used by the
tests; it never routes through the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import BadInput, BudgetRequired, SizeGuardExceeded
from .geometry import MODE_ALL, MODE_RECT, Arrangement, is_cover

DEFAULT_SIZE_GUARD = 24

OUTCOME_KERNEL = "kernel"
OUTCOME_INFEASIBLE = "infeasible"


@dataclass(frozen=True, slots=True)
class HittingInstance:
    universe: frozenset[int]
    family: tuple[frozenset[int], ...]
    k: int


@dataclass(frozen=True, slots=True)
class ReductionEvent:
    kind: str  # "pair-collapse" | "singleton-collapse"
    members: tuple[int, ...]
    count: int


@dataclass(frozen=True, slots=True)
class KernelResult:
    outcome: str
    instance: HittingInstance
    trace: tuple[ReductionEvent, ...]


def extract_rect_instance(arr: Arrangement, k: int) -> HittingInstance:
    """One 4-set per rectangular cell, in cell-id order."""
    if k < 0:
        raise BadInput("k must be non-negative")
    family = tuple(c.defining for c in arr.cells if c.rectangular)
    universe = frozenset(s.id for s in arr.segments)
    return HittingInstance(universe=universe, family=family, k=k)


def _reduce_pairs(inst: HittingInstance) -> tuple[HittingInstance, list[ReductionEvent]]:
    counts: dict[tuple[int, int], int] = {}
    for group in inst.family:
        for pair in combinations(sorted(group), 2):
            counts[pair] = counts.get(pair, 0) + 1
    heavy = sorted(pair for pair, c in counts.items() if c > 2 * inst.k)
    if not heavy:
        return inst, []
    kept = [
        group
        for group in inst.family
        if not any(a in group and b in group for a, b in heavy)
    ]
    family = tuple(kept) + tuple(frozenset(pair) for pair in heavy)
    events = [ReductionEvent("pair-collapse", pair, counts[pair]) for pair in heavy]
    return HittingInstance(inst.universe, family, inst.k), events


def reduce_pairs(inst: HittingInstance) -> HittingInstance:
    """Collapse every pair shared by more than 2k sets, counted once upfront."""
    return _reduce_pairs(inst)[0]


def _reduce_singletons(inst: HittingInstance) -> tuple[HittingInstance, list[ReductionEvent]]:
    counts: dict[int, int] = {}
    for group in inst.family:
        for element in group:
            counts[element] = counts.get(element, 0) + 1
    heavy = sorted(e for e, c in counts.items() if c > 2 * inst.k**2)
    if not heavy:
        return inst, []
    heavy_set = set(heavy)
    kept = [group for group in inst.family if not (group & heavy_set)]
    family = tuple(kept) + tuple(frozenset((e,)) for e in heavy)
    events = [ReductionEvent("singleton-collapse", (e,), counts[e]) for e in heavy]
    return HittingInstance(inst.universe, family, inst.k), events


def reduce_singletons(inst: HittingInstance) -> HittingInstance:
    """Collapse every segment contained in more than 2k^2 sets."""
    return _reduce_singletons(inst)[0]


def kernelize(inst: HittingInstance) -> KernelResult:
    """Pair collapse, then singleton collapse, then the 2k^3 feasibility test."""
    reduced, pair_events = _reduce_pairs(inst)
    reduced, single_events = _reduce_singletons(reduced)
    trace = tuple(pair_events + single_events)
    if len(reduced.family) > 2 * inst.k**3:
        return KernelResult(OUTCOME_INFEASIBLE, reduced, trace)
    return KernelResult(OUTCOME_KERNEL, reduced, trace)


def solve_hitting(kr: KernelResult) -> frozenset[int] | None:
    """Smallest hitting set of size <= k, or None.

    Ties between equal-size solutions break toward the lexicographically
    smallest sorted id tuple; branching explores elements in ascending order.
    """
    if kr.outcome != OUTCOME_KERNEL:
        return None
    family = kr.instance.family
    k = kr.instance.k
    if not family:
        return frozenset()
    # static branching order: smallest sets first, then family order
    order = sorted(range(len(family)), key=lambda i: (len(family[i]), i))
    hits: dict[int, int] = {}
    for idx, group in enumerate(family):
        for element in group:
            hits[element] = hits.get(element, 0) | (1 << idx)
    full = (1 << len(family)) - 1

    best: list = [None]

    def search(covered: int, chosen: tuple[int, ...]) -> None:
        if covered == full:
            cand = (len(chosen), tuple(sorted(chosen)))
            if best[0] is None or cand < best[0]:
                best[0] = cand
            return
        if len(chosen) >= k:
            return
        if best[0] is not None and len(chosen) + 1 > best[0][0]:
            return
        branch = next(i for i in order if not (covered >> i) & 1)
        for element in sorted(family[branch]):
            search(covered | hits[element], chosen + (element,))

    search(0, ())
    if best[0] is None:
        return None
    return frozenset(best[0][1])


def brute_force_cover(
    arr: Arrangement, mode: str, guard: int = DEFAULT_SIZE_GUARD
) -> frozenset[int]:
    """First cover found enumerating subsets by size, then lexicographically."""
    ids = sorted(s.id for s in arr.segments)
    if len(ids) > guard:
        raise SizeGuardExceeded(len(ids), guard)
    if mode not in (MODE_ALL, MODE_RECT):
        raise BadInput(f"unknown mode {mode!r}")
    required = [
        cell.defining
        for cell in arr.cells
        if mode == MODE_ALL or cell.rectangular
    ]
    if not required:
        return frozenset()
    for size in range(len(ids) + 1):
        for combo in combinations(ids, size):
            chosen = set(combo)
            if all(group & chosen for group in required):
                return frozenset(combo)
    raise AssertionError("the full segment set always covers")


def min_cover(
    arr: Arrangement,
    mode: str,
    k: int | None = None,
    guard: int = DEFAULT_SIZE_GUARD,
) -> frozenset[int] | None:
    """Minimum cover for the mode, or None when a given k is too small.

    Mode ``rect`` goes through extract -> kernelize -> search (iterating k
    upward when none is given); mode ``all`` is exhaustive and guarded.
    """
    if mode == MODE_ALL:
        if len(arr.segments) > guard:
            raise BudgetRequired(len(arr.segments), guard)
        cover = brute_force_cover(arr, MODE_ALL, guard)
        if k is not None and len(cover) > k:
            return None
        return cover
    if mode != MODE_RECT:
        raise BadInput(f"unknown mode {mode!r}")
    if k is not None:
        kr = kernelize(extract_rect_instance(arr, k))
        return solve_hitting(kr)
    for budget in range(len(arr.segments) + 1):
        cover = solve_hitting(kernelize(extract_rect_instance(arr, budget)))
        if cover is not None:
            return cover
    raise AssertionError("the full segment set always covers")


def verify_cover(arr: Arrangement, cover: Iterable[int], mode: str) -> bool:
    return is_cover(arr, cover, mode)
