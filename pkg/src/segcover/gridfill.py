"""Reference arrangement construction on a compressed unit grid.

Independent of the slab sweep in :mod:`segcover.geometry`: coordinates are
compressed to a (2u+1) x (2v+1) grid whose odd indices are the distinct
coordinates themselves and whose even indices are the open gaps between them
(the outermost gaps are unbounded).  Grid elements are therefore points
(odd, odd), open edge pieces (one odd index) and open boxes (even, even).
Segments cover the points and edge pieces they contain; boxes are never
covered.  Flood-filling the uncovered elements yields the cells, and a
cell's defining segments are read off the covered edge pieces bordering it.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable

from .geometry import (
    HORIZONTAL,
    Arrangement,
    Cell,
    Segment,
    validate_segments,
)


def gridfill_oracle(segments: Iterable[Segment]) -> Arrangement:
    segs = validate_segments(segments)
    hs = [s for s in segs if s.axis == HORIZONTAL]
    vs = [s for s in segs if s.axis != HORIZONTAL]
    xs = sorted({v.fixed for v in vs} | {x for h in hs for x in (h.lo, h.hi)})
    ys = sorted({h.fixed for h in hs} | {y for v in vs for y in (v.lo, v.hi)})
    xi = {x: 2 * i + 1 for i, x in enumerate(xs)}
    yi = {y: 2 * i + 1 for i, y in enumerate(ys)}
    width, height = 2 * len(xs) + 1, 2 * len(ys) + 1

    edge_owner: dict[tuple[int, int], int] = {}
    point_covered: set[tuple[int, int]] = set()
    for s in segs:
        if s.axis == HORIZONTAL:
            j = yi[s.fixed]
            span = range(xi[s.lo], xi[s.hi] + 1)
            elems = [(i, j) for i in span]
        else:
            i = xi[s.fixed]
            elems = [(i, j) for j in range(yi[s.lo], yi[s.hi] + 1)]
        for i, j in elems:
            if i % 2 == 1 and j % 2 == 1:
                point_covered.add((i, j))
            else:
                assert (i, j) not in edge_owner, "edge covered twice"
                edge_owner[(i, j)] = s.id

    def covered(i: int, j: int) -> bool:
        if i % 2 == 1 and j % 2 == 1:
            return (i, j) in point_covered
        return (i, j) in edge_owner

    # flood fill the uncovered elements with 4-adjacency
    region = [[-1] * height for _ in range(width)]
    n_regions = 0
    for si in range(width):
        for sj in range(height):
            if covered(si, sj) or region[si][sj] != -1:
                continue
            queue = deque([(si, sj)])
            region[si][sj] = n_regions
            while queue:
                ci, cj = queue.popleft()
                for ni, nj in ((ci - 1, cj), (ci + 1, cj), (ci, cj - 1), (ci, cj + 1)):
                    if 0 <= ni < width and 0 <= nj < height:
                        if region[ni][nj] == -1 and not covered(ni, nj):
                            region[ni][nj] = n_regions
                            queue.append((ni, nj))
            n_regions += 1

    defining: list[set[int]] = [set() for _ in range(n_regions)]
    for (i, j), owner in edge_owner.items():
        if j % 2 == 0:  # vertical edge piece: boxes sit left and right
            neighbours = ((i - 1, j), (i + 1, j))
        else:  # horizontal edge piece: boxes sit below and above
            neighbours = ((i, j - 1), (i, j + 1))
        for ni, nj in neighbours:
            if 0 <= ni < width and 0 <= nj < height and region[ni][nj] != -1:
                defining[region[ni][nj]].add(owner)

    unbounded = {
        region[i][j]
        for i in range(width)
        for j in (0, height - 1)
        if region[i][j] != -1
    } | {
        region[i][j]
        for j in range(height)
        for i in (0, width - 1)
        if region[i][j] != -1
    }
    assert len(unbounded) == 1, "outer ring must form a single region"

    # per-region geometry from the contained boxes
    area = [0] * n_regions
    bbox: list[list[int] | None] = [None] * n_regions
    witness: list[tuple[Fraction, Fraction] | None] = [None] * n_regions
    for i in range(2, width - 1, 2):
        x0, x1 = xs[i // 2 - 1], xs[i // 2]
        for j in range(2, height - 1, 2):
            r = region[i][j]
            if r == -1 or r in unbounded:
                continue
            y0, y1 = ys[j // 2 - 1], ys[j // 2]
            area[r] += (x1 - x0) * (y1 - y0)
            if bbox[r] is None:
                bbox[r] = [x0, y0, x1, y1]
            else:
                b = bbox[r]
                b[0] = min(b[0], x0)
                b[1] = min(b[1], y0)
                b[2] = max(b[2], x1)
                b[3] = max(b[3], y1)
            cand = (Fraction(x0 + x1, 2), Fraction(y0 + y1, 2))
            if witness[r] is None or cand < witness[r]:
                witness[r] = cand

    records = []
    for r in range(n_regions):
        defs = frozenset(defining[r])
        if r in unbounded:
            records.append(
                ((Fraction(xs[0] - 1), Fraction(ys[0] - 1)), False, False, defs)
            )
        else:
            b = bbox[r]
            rect = len(defs) == 4 and area[r] == (b[2] - b[0]) * (b[3] - b[1])
            records.append((witness[r], True, rect, defs))
    bounded_recs = sorted(rec for rec in records if rec[1])
    unbounded_recs = [rec for rec in records if not rec[1]]
    cells = tuple(
        Cell(id=idx, bounded=rec[1], rectangular=rec[2], defining=rec[3], witness=rec[0])
        for idx, rec in enumerate(bounded_recs + unbounded_recs)
    )
    return Arrangement(segments=segs, cells=cells)
