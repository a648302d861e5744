"""Seeded random instances for testing.

Both generators take a ``random.Random`` so runs are reproducible; nothing
here touches the global RNG state.
"""

from __future__ import annotations

import random

from .errors import OverlappingCollinear
from .geometry import HORIZONTAL, VERTICAL, Segment
from .subdivision import Leaf, Split, SubdivTree


def random_instance(
    rng: random.Random,
    max_segments: int = 14,
    coord_max: int = 16,
) -> list[Segment]:
    """Random valid segment set: axis-aligned, integer coords in [0, coord_max].

    Collinear overlaps are avoided by rejection; endpoint touches and
    crossings are allowed.
    """
    n = rng.randint(1, max_segments)
    segs: list[Segment] = []
    spans: dict[tuple[str, int], list[tuple[int, int]]] = {}
    while len(segs) < n:
        axis = rng.choice((HORIZONTAL, VERTICAL))
        fixed = rng.randint(0, coord_max)
        lo = rng.randint(0, coord_max - 1)
        hi = rng.randint(lo + 1, coord_max)
        line = spans.setdefault((axis, fixed), [])
        if any(max(lo, a) < min(hi, b) for a, b in line):
            continue
        line.append((lo, hi))
        segs.append(Segment(len(segs), axis, fixed, lo, hi))
    return segs


def random_tree(
    rng: random.Random,
    max_internal: int = 12,
    size: int = 64,
) -> SubdivTree:
    """Random subdivision tree with at most ``max_internal`` split nodes."""
    budget = rng.randint(0, max_internal)
    counter = [0]

    def grow(x0: int, y0: int, x1: int, y1: int, depth: int):
        can_v = x1 - x0 >= 2
        can_h = y1 - y0 >= 2
        if counter[0] >= budget or not (can_v or can_h):
            return Leaf()
        if rng.random() > 0.85 ** depth and depth > 0:
            return Leaf()
        counter[0] += 1
        axis = rng.choice([a for a, ok in ((VERTICAL, can_v), (HORIZONTAL, can_h)) if ok])
        if axis == VERTICAL:
            coord = rng.randint(x0 + 1, x1 - 1)
            return Split(axis, coord, grow(x0, y0, coord, y1, depth + 1), grow(coord, y0, x1, y1, depth + 1))
        coord = rng.randint(y0 + 1, y1 - 1)
        return Split(axis, coord, grow(x0, y0, x1, coord, depth + 1), grow(x0, coord, x1, y1, depth + 1))

    return SubdivTree((0, 0, size, size), grow(0, 0, size, size, 0))


__all__ = ["random_instance", "random_tree", "OverlappingCollinear"]
