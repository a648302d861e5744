"""Minimum covers of recursively split rectangles in linear time.

The input is the split tree of a rectangle: every internal node carries a
horizontal or vertical segment spanning its rectangle, and its two children
are the resulting halves.  The induced arrangement's bounded cells are
exactly the leaf rectangles, the outer face is covered iff some bounding
edge is chosen, and a segment touching a cell only at an endpoint never
covers it, so a sibling subtree's splits are invisible across the split.

Each node is solved for all sixteen subsets of its four side-carrying
segments: the table entry for subset S holds the minimum number of segments
strictly interior to the node's rectangle that, together with S, cover every
cell inside.  A parent's side choice pins three sides of each child; only
the split segment is free, so each entry combines two child lookups for the
two split choices.  Interior segments are counted where they split; the four
root sides are paid once at the root, which avoids double counting across
siblings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import BadInput, DegenerateRectangle, SplitOutOfRange
from .geometry import HORIZONTAL, VERTICAL, Segment, horizontal, vertical

# side bit layout, matching the outer-edge id order
BOTTOM, RIGHT, TOP, LEFT = 1, 2, 4, 8
_SIDES = (BOTTOM, RIGHT, TOP, LEFT)


@dataclass(frozen=True, slots=True)
class Leaf:
    pass


@dataclass(frozen=True, slots=True)
class Split:
    axis: str  # "h" | "v"
    coord: int
    low: "Node"
    high: "Node"


Node = Union[Leaf, Split]


@dataclass(frozen=True, slots=True)
class SubdivTree:
    rect: tuple[int, int, int, int]  # x0, y0, x1, y1
    root: Node


@dataclass(frozen=True, slots=True)
class DpStats:
    nodes: int
    evaluations: int


def validate_tree(tree: SubdivTree) -> None:
    x0, y0, x1, y1 = tree.rect
    if x0 >= x1 or y0 >= y1:
        raise DegenerateRectangle(tree.rect)

    def walk(node: Node, rect: tuple[int, int, int, int]) -> None:
        if isinstance(node, Leaf):
            return
        if not isinstance(node, Split):
            raise BadInput(f"unexpected tree node {node!r}")
        rx0, ry0, rx1, ry1 = rect
        if node.axis == VERTICAL:
            if not rx0 < node.coord < rx1:
                raise SplitOutOfRange("x", node.coord, rect)
            walk(node.low, (rx0, ry0, node.coord, ry1))
            walk(node.high, (node.coord, ry0, rx1, ry1))
        elif node.axis == HORIZONTAL:
            if not ry0 < node.coord < ry1:
                raise SplitOutOfRange("y", node.coord, rect)
            walk(node.low, (rx0, ry0, rx1, node.coord))
            walk(node.high, (rx0, node.coord, rx1, ry1))
        else:
            raise BadInput(f"unknown split axis {node.axis!r}")

    walk(tree.root, tree.rect)


def tree_to_segments(tree: SubdivTree) -> list[Segment]:
    """Bounding edges (ids 0-3: bottom, right, top, left) plus one spanning
    segment per split node in preorder from id 4."""
    validate_tree(tree)
    x0, y0, x1, y1 = tree.rect
    segments = [
        horizontal(0, y0, x0, x1),
        vertical(1, x1, y0, y1),
        horizontal(2, y1, x0, x1),
        vertical(3, x0, y0, y1),
    ]

    def walk(node: Node, rect: tuple[int, int, int, int]) -> None:
        if isinstance(node, Leaf):
            return
        rx0, ry0, rx1, ry1 = rect
        seg_id = len(segments)
        if node.axis == VERTICAL:
            segments.append(vertical(seg_id, node.coord, ry0, ry1))
            walk(node.low, (rx0, ry0, node.coord, ry1))
            walk(node.high, (node.coord, ry0, rx1, ry1))
        else:
            segments.append(horizontal(seg_id, node.coord, rx0, rx1))
            walk(node.low, (rx0, ry0, rx1, node.coord))
            walk(node.high, (rx0, node.coord, rx1, ry1))

    walk(tree.root, tree.rect)
    return segments


# table entry: (cost, ids) with cost None meaning infeasible
_Entry = tuple[int | None, tuple[int, ...]]


def _combine(parts: list[_Entry], extra: int | None) -> _Entry:
    cost = 0
    ids: list[int] = []
    for part_cost, part_ids in parts:
        if part_cost is None:
            return (None, ())
        cost += part_cost
        ids.extend(part_ids)
    if extra is not None:
        cost += 1
        ids.append(extra)
    return (cost, tuple(sorted(ids)))


def _better(a: _Entry, b: _Entry) -> _Entry:
    if a[0] is None:
        return b
    if b[0] is None:
        return a
    return a if (a[0], a[1]) <= (b[0], b[1]) else b


def _tables(node: Node, sides: dict[int, int], next_id: list[int], stats: list[int]) -> list[_Entry]:
    """The 16-entry table for one node; ``sides`` maps side bit -> segment id."""
    stats[0] += 1
    stats[1] += 16
    if isinstance(node, Leaf):
        return [(None, ()) if s == 0 else (0, ()) for s in range(16)]
    seg_id = next_id[0]
    next_id[0] += 1
    if node.axis == VERTICAL:
        low_sides = {BOTTOM: sides[BOTTOM], TOP: sides[TOP], LEFT: sides[LEFT], RIGHT: seg_id}
        high_sides = {BOTTOM: sides[BOTTOM], TOP: sides[TOP], LEFT: seg_id, RIGHT: sides[RIGHT]}
        low_split_bit, high_split_bit = RIGHT, LEFT
        shared = (BOTTOM, TOP)
    else:
        low_sides = {BOTTOM: sides[BOTTOM], LEFT: sides[LEFT], RIGHT: sides[RIGHT], TOP: seg_id}
        high_sides = {TOP: sides[TOP], LEFT: sides[LEFT], RIGHT: sides[RIGHT], BOTTOM: seg_id}
        low_split_bit, high_split_bit = TOP, BOTTOM
        shared = (LEFT, RIGHT)
    low = _tables(node.low, low_sides, next_id, stats)
    high = _tables(node.high, high_sides, next_id, stats)

    own_bits = {BOTTOM, RIGHT, TOP, LEFT}
    low_inherited = own_bits - {low_split_bit}
    high_inherited = own_bits - {high_split_bit}

    table: list[_Entry] = []
    for s in range(16):
        low_base = sum(bit for bit in low_inherited if s & bit)
        high_base = sum(bit for bit in high_inherited if s & bit)
        without = _combine([low[low_base], high[high_base]], None)
        with_split = _combine(
            [low[low_base | low_split_bit], high[high_base | high_split_bit]], seg_id
        )
        table.append(_better(without, with_split))
    return table


def _dp(tree: SubdivTree) -> tuple[frozenset[int], DpStats]:
    validate_tree(tree)
    root_sides = {BOTTOM: 0, RIGHT: 1, TOP: 2, LEFT: 3}
    stats = [0, 0]
    table = _tables(tree.root, root_sides, [4], stats)
    best: _Entry = (None, ())
    for s in range(1, 16):  # the outer face needs at least one bounding edge
        cost, ids = table[s]
        if cost is None:
            continue
        side_ids = tuple(root_sides[bit] for bit in _SIDES if s & bit)
        cand = (cost + len(side_ids), tuple(sorted(side_ids + ids)))
        best = _better(best, cand)
    assert best[0] is not None
    return frozenset(best[1]), DpStats(nodes=stats[0], evaluations=stats[1])


def dp_cover(tree: SubdivTree) -> frozenset[int]:
    """Minimum cover of all cells including the outer face.

    Ties break toward the lexicographically smallest sorted id tuple, which
    composes across subtrees because sibling id sets are disjoint.
    """
    return _dp(tree)[0]


def dp_cover_with_stats(tree: SubdivTree) -> tuple[frozenset[int], DpStats]:
    return _dp(tree)


def count_nodes(node: Node) -> int:
    if isinstance(node, Leaf):
        return 1
    return 1 + count_nodes(node.low) + count_nodes(node.high)
