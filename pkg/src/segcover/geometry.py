"""Axis-aligned segment arrangements and cover checking.

A *cell* is a maximal connected region of the plane not meeting any segment.
A segment *defines* a cell when its intersection with the cell's boundary has
positive total length; touching at a single point never counts.  A cell is
*rectangular* when it is bounded, its closure is an axis-aligned rectangle,
and exactly four segments define it (one per side).

``build_arrangement`` computes cells with a slab sweep: the plane is cut into
open vertical slabs between consecutive distinct x coordinates, each slab is
cut into fragments by the horizontal segments crossing it, and fragments are
merged across slab boundaries wherever the separating vertical line is not
fully blocked by vertical segments.  All predicates are exact integer (or
rational) arithmetic; no floating point is used anywhere.

An independently coded oracle lives in :mod:`segcover.gridfill`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    BadInput,
    BadSegment,
    DuplicateId,
    EmptyInput,
    OverlappingCollinear,
    UnknownSegmentId,
)

HORIZONTAL = "h"
VERTICAL = "v"

MODE_ALL = "all"
MODE_RECT = "rect"

_INF = float("inf")


@dataclass(frozen=True, slots=True)
class Segment:
    """Closed axis-aligned segment with integer coordinates.

    ``fixed`` is the y coordinate for horizontal segments and the x
    coordinate for vertical ones; ``lo < hi`` spans the other axis.
    """

    id: int
    axis: str
    fixed: int
    lo: int
    hi: int

    def __post_init__(self):
        if self.axis not in (HORIZONTAL, VERTICAL):
            raise BadSegment(f"segment {self.id}: axis must be 'h' or 'v'")
        for name in ("id", "fixed", "lo", "hi"):
            if not isinstance(getattr(self, name), int):
                raise BadSegment(f"segment {self.id}: field {name} must be an integer")
        if self.id < 0:
            raise BadSegment(f"segment {self.id}: id must be non-negative")
        if self.lo >= self.hi:
            raise BadSegment(
                f"segment {self.id}: lo must be strictly below hi "
                f"(got lo={self.lo}, hi={self.hi})"
            )

    @property
    def endpoints(self) -> tuple[tuple[int, int], tuple[int, int]]:
        if self.axis == HORIZONTAL:
            return (self.lo, self.fixed), (self.hi, self.fixed)
        return (self.fixed, self.lo), (self.fixed, self.hi)


def horizontal(seg_id: int, y: int, x1: int, x2: int) -> Segment:
    return Segment(seg_id, HORIZONTAL, y, min(x1, x2), max(x1, x2))


def vertical(seg_id: int, x: int, y1: int, y2: int) -> Segment:
    return Segment(seg_id, VERTICAL, x, min(y1, y2), max(y1, y2))


def segment_from_endpoints(seg_id: int, x1: int, y1: int, x2: int, y2: int) -> Segment:
    if x1 == x2 and y1 != y2:
        return vertical(seg_id, x1, y1, y2)
    if y1 == y2 and x1 != x2:
        return horizontal(seg_id, y1, x1, x2)
    raise BadSegment(
        f"segment {seg_id}: endpoints ({x1},{y1})-({x2},{y2}) are not a "
        "non-degenerate axis-aligned segment"
    )


@dataclass(frozen=True, slots=True)
class Cell:
    id: int
    bounded: bool
    rectangular: bool
    defining: frozenset[int]
    witness: tuple[Fraction, Fraction]


@dataclass(frozen=True, slots=True)
class Arrangement:
    segments: tuple[Segment, ...]
    cells: tuple[Cell, ...]

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    def segment_by_id(self, seg_id: int) -> Segment:
        for seg in self.segments:
            if seg.id == seg_id:
                return seg
        raise UnknownSegmentId(seg_id)

    def rectangular_cells(self) -> tuple[Cell, ...]:
        return tuple(c for c in self.cells if c.rectangular)


def validate_segments(segments: Iterable[Segment]) -> tuple[Segment, ...]:
    """Reject duplicate ids, empty input and collinear positive overlaps."""
    segs = tuple(segments)
    if not segs:
        raise EmptyInput()
    seen: set[int] = set()
    for s in segs:
        if s.id in seen:
            raise DuplicateId(s.id)
        seen.add(s.id)
    lines: dict[tuple[str, int], list[Segment]] = {}
    for s in segs:
        lines.setdefault((s.axis, s.fixed), []).append(s)
    for group in lines.values():
        group.sort(key=lambda s: (s.lo, s.hi))
        for a, b in zip(group, group[1:]):
            if b.lo < a.hi:  # touching at one point (b.lo == a.hi) is fine
                raise OverlappingCollinear(a.id, b.id)
    return segs


# --------------------------------------------------------------------------
# slab sweep construction


class _DSU:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _merged_intervals(spans: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Merge closed integer intervals; touching endpoints are joined."""
    if not spans:
        return []
    spans = sorted(spans)
    merged = [spans[0]]
    for lo, hi in spans[1:]:
        mlo, mhi = merged[-1]
        if lo <= mhi:
            merged[-1] = (mlo, max(mhi, hi))
        else:
            merged.append((lo, hi))
    return merged


def _wall_blocks(walls: list[tuple[int, int]], p, q) -> bool:
    """True when the open interval (p, q) lies inside one merged wall span."""
    if p == -_INF or q == _INF:
        return False
    for lo, hi in walls:
        if lo <= p and hi >= q:
            return True
    return False


def build_arrangement(segments: Iterable[Segment]) -> Arrangement:
    """Slab-sweep construction of the arrangement.

    Cells receive deterministic ids: bounded cells sorted by their witness
    point (x, then y), the unbounded cell last.  The witness is the midpoint
    of the lexicographically smallest elementary grid box inside the cell.
    """
    segs = validate_segments(segments)
    hs = sorted((s for s in segs if s.axis == HORIZONTAL), key=lambda s: s.fixed)
    vs = sorted((s for s in segs if s.axis == VERTICAL), key=lambda s: s.fixed)

    xs = sorted({v.fixed for v in vs} | {x for h in hs for x in (h.lo, h.hi)})
    ys = sorted({h.fixed for h in hs} | {y for v in vs for y in (v.lo, v.hi)})
    u = len(xs)
    y_index = {y: i for i, y in enumerate(ys)}

    # fragments[t] = list of (ylo, yhi, crossing-below, crossing-above) per slab
    fragments: list[list[tuple]] = []
    crossing: list[list[Segment]] = []
    for t in range(u + 1):
        if t == 0 or t == u:
            cross: list[Segment] = []
        else:
            a, b = xs[t - 1], xs[t]
            cross = [h for h in hs if h.lo <= a and h.hi >= b]
        crossing.append(cross)
        bounds = [-_INF] + [h.fixed for h in cross] + [_INF]
        fragments.append(
            [(bounds[i], bounds[i + 1]) for i in range(len(cross) + 1)]
        )

    dsu = _DSU()
    for t, frags in enumerate(fragments):
        for i in range(len(frags)):
            dsu.add((t, i))

    walls_at: dict[int, list[tuple[int, int]]] = {
        x: [] for x in xs
    }
    verticals_at: dict[int, list[Segment]] = {x: [] for x in xs}
    for v in vs:
        verticals_at[v.fixed].append(v)
        walls_at[v.fixed].append((v.lo, v.hi))
    for x in xs:
        walls_at[x] = _merged_intervals(walls_at[x])

    # merge fragments across each slab boundary unless fully walled off
    for t in range(u):
        left, right = fragments[t], fragments[t + 1]
        walls = walls_at[xs[t]]
        i = j = 0
        while i < len(left) and j < len(right):
            p = max(left[i][0], right[j][0])
            q = min(left[i][1], right[j][1])
            if p < q and not _wall_blocks(walls, p, q):
                dsu.union((t, i), (t + 1, j))
            if left[i][1] <= right[j][1]:
                i += 1
            else:
                j += 1

    defining: dict = {}
    # horizontals define the fragments directly above and below them
    for t in range(u + 1):
        for i, h in enumerate(crossing[t]):
            for frag in ((t, i), (t, i + 1)):
                defining.setdefault(dsu.find(frag), set()).add(h.id)
    # verticals define fragments they overlap on either side of their line
    for t, x in enumerate(xs):
        for v in verticals_at[x]:
            for slab in (t, t + 1):
                for i, (flo, fhi) in enumerate(fragments[slab]):
                    if max(v.lo, flo) < min(v.hi, fhi):
                        defining.setdefault(dsu.find((slab, i)), set()).add(v.id)

    members: dict = {}
    for t, frags in enumerate(fragments):
        for i in range(len(frags)):
            members.setdefault(dsu.find((t, i)), []).append((t, i))

    cells = _assemble_cells(
        faces=[
            _face_geometry(frag_keys, fragments, xs, ys, y_index)
            for frag_keys in members.values()
        ],
        defining={root: defining.get(root, set()) for root in members},
        roots=list(members),
        xs=xs,
        ys=ys,
    )
    return Arrangement(segments=segs, cells=cells)


def _face_geometry(frag_keys, fragments, xs, ys, y_index):
    """Boundedness, area, bbox and witness candidate for one face."""
    u = len(xs)
    bounded = True
    area = 0
    bbox = None
    witness = None
    for t, i in frag_keys:
        ylo, yhi = fragments[t][i]
        if t == 0 or t == u or ylo == -_INF or yhi == _INF:
            bounded = False
            continue
        x0, x1 = xs[t - 1], xs[t]
        area += (x1 - x0) * (yhi - ylo)
        if bbox is None:
            bbox = [x0, ylo, x1, yhi]
        else:
            bbox[0] = min(bbox[0], x0)
            bbox[1] = min(bbox[1], ylo)
            bbox[2] = max(bbox[2], x1)
            bbox[3] = max(bbox[3], yhi)
        # smallest elementary box of this fragment starts at its lower bound
        y_next = ys[y_index[ylo] + 1]
        cand = (Fraction(x0 + x1, 2), Fraction(ylo + y_next, 2))
        if witness is None or cand < witness:
            witness = cand
    return bounded, area, bbox, witness


def _assemble_cells(faces, defining, roots, xs, ys) -> tuple[Cell, ...]:
    records = []
    unbounded_witness = (Fraction(xs[0] - 1), Fraction(ys[0] - 1))
    for root, (bounded, area, bbox, witness) in zip(roots, faces):
        defs = frozenset(defining[root])
        if bounded:
            rect = len(defs) == 4 and area == (bbox[2] - bbox[0]) * (bbox[3] - bbox[1])
            records.append((witness, True, rect, defs))
        else:
            records.append((unbounded_witness, False, False, defs))
    bounded_recs = sorted(r for r in records if r[1])
    unbounded_recs = [r for r in records if not r[1]]
    if len(unbounded_recs) != 1:
        raise AssertionError("exactly one unbounded cell expected")
    cells = []
    for idx, (witness, bounded, rect, defs) in enumerate(
        bounded_recs + unbounded_recs
    ):
        cells.append(
            Cell(
                id=idx,
                bounded=bounded,
                rectangular=rect,
                defining=defs,
                witness=witness,
            )
        )
    return tuple(cells)


# --------------------------------------------------------------------------
# cover semantics


def is_cover(arr: Arrangement, chosen: Iterable[int], mode: str) -> bool:
    """True when every required cell has a defining segment in ``chosen``.

    Mode ``all`` requires every cell (including the unbounded one), mode
    ``rect`` only the rectangular cells.
    """
    if mode not in (MODE_ALL, MODE_RECT):
        raise BadInput(f"unknown mode {mode!r}")
    chosen_set = set(chosen)
    known = {s.id for s in arr.segments}
    for seg_id in chosen_set:
        if seg_id not in known:
            raise UnknownSegmentId(seg_id)
    for cell in arr.cells:
        if mode == MODE_RECT and not cell.rectangular:
            continue
        if not (cell.defining & chosen_set):
            return False
    return True


# --------------------------------------------------------------------------
# planar graph statistics (for consistency checks)


def planar_graph_stats(segments: Iterable[Segment]) -> tuple[int, int, int]:
    """(vertices, edges, components) of the planar graph the segments induce.

    Vertices are segment endpoints plus all contact points between segments;
    edges are the maximal pieces between consecutive vertices along each
    segment.  For F = cell count, V - E + F = 1 + components.
    """
    segs = validate_segments(segments)
    points_on: dict[int, set[tuple[int, int]]] = {
        s.id: set(map(tuple, s.endpoints)) for s in segs
    }
    dsu = _DSU()
    for s in segs:
        dsu.add(s.id)
    for a, b in combinations(segs, 2):
        p = _contact_point(a, b)
        if p is not None:
            points_on[a.id].add(p)
            points_on[b.id].add(p)
            dsu.union(a.id, b.id)
    vertices = set()
    edges = 0
    for s in segs:
        pts = sorted(points_on[s.id])
        vertices.update(pts)
        edges += len(pts) - 1
    components = len({dsu.find(s.id) for s in segs})
    return len(vertices), edges, components


def _contact_point(a: Segment, b: Segment) -> tuple[int, int] | None:
    """Single contact point of two valid segments, or None.

    Collinear overlaps were rejected up front, so same-line segments touch in
    at most one point; a perpendicular pair meets in at most one point.
    """
    if a.axis == b.axis:
        if a.fixed != b.fixed:
            return None
        if a.hi == b.lo:
            pt_main = a.hi
        elif b.hi == a.lo:
            pt_main = b.hi
        else:
            return None
        if a.axis == HORIZONTAL:
            return (pt_main, a.fixed)
        return (a.fixed, pt_main)
    h, v = (a, b) if a.axis == HORIZONTAL else (b, a)
    if h.lo <= v.fixed <= h.hi and v.lo <= h.fixed <= v.hi:
        return (v.fixed, h.fixed)
    return None


def triple_cell_counts(arr: Arrangement) -> dict[tuple[int, int, int], int]:
    """How many rectangular cells contain each id triple in their defining set."""
    counts: dict[tuple[int, int, int], int] = {}
    for cell in arr.cells:
        if not cell.rectangular:
            continue
        for triple in combinations(sorted(cell.defining), 3):
            counts[triple] = counts.get(triple, 0) + 1
    return counts


def rectangle_bounds(arr: Arrangement, cell: Cell) -> tuple[int, int, int, int]:
    """(x0, y0, x1, y1) of a rectangular cell, read off its defining segments."""
    if not cell.rectangular:
        raise BadInput(f"cell {cell.id} is not rectangular")
    hs = sorted(
        (arr.segment_by_id(i) for i in cell.defining if arr.segment_by_id(i).axis == HORIZONTAL),
        key=lambda s: s.fixed,
    )
    vs = sorted(
        (arr.segment_by_id(i) for i in cell.defining if arr.segment_by_id(i).axis == VERTICAL),
        key=lambda s: s.fixed,
    )
    return vs[0].fixed, hs[0].fixed, vs[1].fixed, hs[1].fixed
