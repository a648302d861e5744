"""Compile planar 3SAT instances into segment-covering instances.

Variable gadgets sit on a common baseline.  The gadget for one variable (with
m the total clause count) is a ladder of 4m+8 horizontal rows, half above and
half below the baseline, crossed by two tall verticals (leftmost/rightmost)
and 2m short verticals per side.  Shorts overshoot their outermost row by one
unit and meet the baseline, talls overshoot both outer rows; the overshoots
guarantee that every cell of connective tissue between gadgets has two
consecutive gadget verticals on its boundary, so the parity covers below work
regardless of how clauses are routed.

A truth assignment maps to a cover of 2m+1 segments per variable: the
rightmost tall plus the odd-position shorts on both sides when true, the
leftmost tall plus the even-position shorts when false.  A clause attaches by
stretching one short vertical per literal up (clauses above the baseline) or
down (below); positive literals use odd-position shorts, negative ones
even-position shorts, so an attachment is in the cover exactly when its
literal is satisfied.

Clause gadgets come in two variants:

* ``all``: two horizontals close a box over the three attachments, the outer
  two reaching one unit higher than the middle one.  The enclosed cell is
  bounded by all three attachments (the middle one pokes into it as a slit)
  and is covered iff some literal holds.  Budget n(2m+1).
* ``rect``: six added segments form a staircase of three rectangular cells
  L, M, R.  The left and middle attachments bound L, the right one bounds R,
  and M is bounded by added segments only, so one extra segment per clause
  is always needed; a single added segment completes the cover iff some
  literal holds.  Budget n(2m+1)+m.

Feasibility of the drawing is verified on the generated segments: the column
intervals of same-side clauses must nest or be disjoint, and no two segments
of unrelated gadgets may touch at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import AmbiguousAssignment, BadInput, EmbeddingInfeasible
from .geometry import HORIZONTAL, Segment, horizontal, vertical

SIDE_ABOVE = "above"
SIDE_BELOW = "below"

VARIANT_ALL = "all"
VARIANT_RECT = "rect"

# clause-cell labels used for the rect variant's cover bookkeeping
_L, _M, _R = "L", "M", "R"

# coverage of the six added segments, in creation order
_RECT_ADDED_COVERAGE = (
    frozenset({_L}),        # hB: bottom of L
    frozenset({_L, _M}),    # hA: top of L, bottom of M
    frozenset({_M}),        # w1: left wall of M
    frozenset({_M, _R}),    # w2: right wall of M, left wall of R
    frozenset({_M, _R}),    # hC: top of M, bottom of R
    frozenset({_R}),        # hRt: top of R
)


@dataclass(frozen=True, slots=True)
class Clause:
    literals: tuple[int, int, int]
    side: str


@dataclass(frozen=True, slots=True)
class CnfEmbedding:
    variables: int
    clauses: tuple[Clause, ...]


@dataclass(frozen=True, slots=True)
class VariableGadget:
    horizontals: tuple[int, ...]
    leftmost: int
    rightmost: int
    top_shorts: tuple[int, ...]
    bottom_shorts: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class ClauseGadget:
    side: str
    level: int
    columns: tuple[int, int, int]  # x of the left/mid/right attachment columns
    extensions: tuple[int, int, int]  # segment ids, ordered left/mid/right
    added: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class GadgetLayout:
    variant: str
    variables: tuple[VariableGadget, ...]
    clauses: tuple[ClauseGadget, ...]


def validate_embedding(phi: CnfEmbedding) -> None:
    if not isinstance(phi.variables, int) or phi.variables < 1:
        raise BadInput("variables must be a positive integer")
    for idx, clause in enumerate(phi.clauses):
        if clause.side not in (SIDE_ABOVE, SIDE_BELOW):
            raise BadInput(f"clause {idx}: side must be 'above' or 'below'")
        if len(clause.literals) != 3:
            raise BadInput(f"clause {idx}: exactly three literals required")
        vars_seen = set()
        for lit in clause.literals:
            if not isinstance(lit, int) or lit == 0:
                raise BadInput(f"clause {idx}: literal {lit!r} is not a signed index")
            var = abs(lit)
            if not 1 <= var <= phi.variables:
                raise BadInput(f"clause {idx}: variable {var} out of range")
            if var in vars_seen:
                raise BadInput(f"clause {idx}: variable {var} repeated")
            vars_seen.add(var)


# --------------------------------------------------------------------------
# attachment columns


def _sorted_roles(clause: Clause) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
    """(variable, literal) for the left/mid/right attachment of a clause."""
    by_var = sorted(((abs(lit), lit) for lit in clause.literals))
    return by_var[0], by_var[1], by_var[2]


def _assign_columns(phi: CnfEmbedding, m: int) -> dict[tuple[int, int], int]:
    """Column index (1..2m) for every (clause index, variable) attachment.

    Per variable and side, clauses are ordered so that legs never cross the
    bar of a sibling clause: left-extending clauses innermost-first, then the
    (at most one feasible) middle attachment, then right-extending clauses
    outermost-first.  Columns are consumed left to right, skipping to the
    parity the literal's sign requires (positive = odd position).
    """
    per_slot: dict[tuple[int, str], list[tuple]] = {}
    for ci, clause in enumerate(phi.clauses):
        roles = _sorted_roles(clause)
        vlo, vhi = roles[0][0], roles[2][0]
        for var, lit in roles:
            if var == vlo:
                rank = (2, -vhi, ci)  # extends right; outer (larger far end) first
            elif var == vhi:
                rank = (0, -vlo, ci)  # extends left; inner (larger near end) first
            else:
                rank = (1, 0, ci)
            per_slot.setdefault((var, clause.side), []).append((rank, ci, lit))
    columns: dict[tuple[int, int], int] = {}
    for (var, _side), attachments in per_slot.items():
        col = 0
        for _rank, ci, lit in sorted(attachments):
            want_odd = lit > 0
            col += 1
            if (col % 2 == 1) != want_odd:
                col += 1
            if col > 2 * m:
                raise EmbeddingInfeasible(
                    f"variable {var} has no free column of the required parity"
                )
            columns[(ci, var)] = col
    return columns


def _levels(intervals: Mapping[int, tuple[int, int]]) -> dict[int, int]:
    """Nesting depth of column intervals; interleaving intervals are rejected."""
    levels: dict[int, int] = {}
    for ci in sorted(intervals, key=lambda c: (intervals[c][1] - intervals[c][0], intervals[c][0], c)):
        lo, hi = intervals[ci]
        level = 0
        for cj, (jlo, jhi) in intervals.items():
            if cj == ci or cj not in levels:
                continue
            if lo < jlo and jhi < hi:
                level = max(level, levels[cj])
            elif (lo < jlo <= hi < jhi) or (jlo < lo <= jhi < hi):
                raise EmbeddingInfeasible(
                    f"clauses {ci} and {cj} interleave and cannot be drawn"
                )
        levels[ci] = level + 1
    return levels


# --------------------------------------------------------------------------
# compilation


def compile_cnf(
    phi: CnfEmbedding, variant: str
) -> tuple[list[Segment], GadgetLayout, int]:
    """Segments, id layout and target budget for one formula.

    Raises EmbeddingInfeasible when the generated drawing would self-
    intersect across gadget boundaries.
    """
    if variant not in (VARIANT_ALL, VARIANT_RECT):
        raise BadInput(f"unknown variant {variant!r}")
    validate_embedding(phi)
    n, m = phi.variables, len(phi.clauses)
    rows_per_side = 2 * m + 4
    short_top = rows_per_side + 1
    tall_top = rows_per_side + 1
    pitch = 2 * m + 4  # gadget width 2m+1 plus a 3-unit gap

    def col_x(var: int, col: int) -> int:
        return (var - 1) * pitch + col

    columns = _assign_columns(phi, m) if m else {}

    # per-side nesting levels from attachment x-intervals
    levels: dict[int, int] = {}
    for side in (SIDE_ABOVE, SIDE_BELOW):
        intervals = {}
        for ci, clause in enumerate(phi.clauses):
            if clause.side != side:
                continue
            xs = [col_x(var, columns[(ci, var)]) for var, _ in _sorted_roles(clause)]
            intervals[ci] = (min(xs), max(xs))
        levels.update(_levels(intervals))

    def clause_base(ci: int) -> int:
        return 2 * m + 6 + 5 * (levels[ci] - 1)

    # extension tip (absolute distance from the baseline) per attachment
    tips: dict[tuple[int, int], int] = {}
    for ci, clause in enumerate(phi.clauses):
        base = clause_base(ci)
        (vlo, _), (vmid, _), (vhi, _) = _sorted_roles(clause)
        if variant == VARIANT_ALL:
            tips[(ci, vlo)] = base + 2
            tips[(ci, vmid)] = base + 1
            tips[(ci, vhi)] = base + 2
        else:
            tips[(ci, vlo)] = base + 1
            tips[(ci, vmid)] = base + 1
            tips[(ci, vhi)] = base + 3

    attachment_at: dict[tuple[int, str, int], int] = {}
    for (ci, var), col in columns.items():
        attachment_at[(var, phi.clauses[ci].side, col)] = ci

    segments: list[Segment] = []
    owners: list[frozenset] = []

    def emit(seg: Segment, owner_keys: frozenset) -> int:
        segments.append(seg)
        owners.append(owner_keys)
        return seg.id

    variables: list[VariableGadget] = []
    for var in range(1, n + 1):
        owner = frozenset({("var", var)})
        x_left, x_right = col_x(var, 0), col_x(var, 2 * m + 1)
        horizontals = []
        for r in range(1, rows_per_side + 1):
            horizontals.append(emit(horizontal(len(segments), r, x_left, x_right), owner))
        for r in range(1, rows_per_side + 1):
            horizontals.append(emit(horizontal(len(segments), -r, x_left, x_right), owner))
        leftmost = emit(vertical(len(segments), x_left, -tall_top, tall_top), owner)
        rightmost = emit(vertical(len(segments), x_right, -tall_top, tall_top), owner)
        top_shorts = []
        for col in range(1, 2 * m + 1):
            ci = attachment_at.get((var, SIDE_ABOVE, col))
            top = tips[(ci, var)] if ci is not None else short_top
            keys = owner if ci is None else owner | {("clause", ci)}
            top_shorts.append(emit(vertical(len(segments), col_x(var, col), 0, top), keys))
        bottom_shorts = []
        for col in range(1, 2 * m + 1):
            ci = attachment_at.get((var, SIDE_BELOW, col))
            bottom = tips[(ci, var)] if ci is not None else short_top
            keys = owner if ci is None else owner | {("clause", ci)}
            bottom_shorts.append(emit(vertical(len(segments), col_x(var, col), -bottom, 0), keys))
        variables.append(
            VariableGadget(
                horizontals=tuple(horizontals),
                leftmost=leftmost,
                rightmost=rightmost,
                top_shorts=tuple(top_shorts),
                bottom_shorts=tuple(bottom_shorts),
            )
        )

    clause_gadgets: list[ClauseGadget] = []
    for ci, clause in enumerate(phi.clauses):
        owner = frozenset({("clause", ci)})
        sign = 1 if clause.side == SIDE_ABOVE else -1
        base = clause_base(ci)
        roles = _sorted_roles(clause)
        a, b, c = (col_x(var, columns[(ci, var)]) for var, _ in roles)
        extension_ids = []
        for var, _lit in roles:
            gadget = variables[var - 1]
            shorts = gadget.top_shorts if clause.side == SIDE_ABOVE else gadget.bottom_shorts
            extension_ids.append(shorts[columns[(ci, var)] - 1])
        added: list[int] = []
        if variant == VARIANT_ALL:
            added.append(emit(horizontal(len(segments), sign * base, a, c), owner))
            added.append(emit(horizontal(len(segments), sign * (base + 2), a, c), owner))
        else:
            p1, p2, p3, p4 = base, base + 1, base + 2, base + 3
            added.append(emit(horizontal(len(segments), sign * p1, a, b), owner))
            added.append(emit(horizontal(len(segments), sign * p2, a, b + 1), owner))
            added.append(emit(vertical(len(segments), b, sign * p2, sign * p3), owner))
            added.append(emit(vertical(len(segments), b + 1, sign * p2, sign * p4), owner))
            added.append(emit(horizontal(len(segments), sign * p3, b, c), owner))
            added.append(emit(horizontal(len(segments), sign * p4, b + 1, c), owner))
        clause_gadgets.append(
            ClauseGadget(
                side=clause.side,
                level=levels[ci],
                columns=(a, b, c),
                extensions=tuple(extension_ids),
                added=tuple(added),
            )
        )

    _check_cross_gadget_contacts(segments, owners)

    budget = n * (2 * m + 1) + (m if variant == VARIANT_RECT else 0)
    layout = GadgetLayout(
        variant=variant,
        variables=tuple(variables),
        clauses=tuple(clause_gadgets),
    )
    return segments, layout, budget


def _segments_touch(a: Segment, b: Segment) -> bool:
    if a.axis == b.axis:
        return a.fixed == b.fixed and max(a.lo, b.lo) <= min(a.hi, b.hi)
    h, v = (a, b) if a.axis == HORIZONTAL else (b, a)
    return h.lo <= v.fixed <= h.hi and v.lo <= h.fixed <= v.hi


def _check_cross_gadget_contacts(segments: list[Segment], owners: list[frozenset]) -> None:
    """Any contact between segments of unrelated gadgets breaks the drawing."""
    for i, j in combinations(range(len(segments)), 2):
        if owners[i] & owners[j]:
            continue
        if _segments_touch(segments[i], segments[j]):
            raise EmbeddingInfeasible(
                f"segments {segments[i].id} and {segments[j].id} of unrelated "
                "gadgets touch; the embedding cannot be drawn"
            )


# --------------------------------------------------------------------------
# witnesses


def _literal_true(lit: int, assignment: Mapping[int, bool]) -> bool:
    return assignment[abs(lit)] == (lit > 0)


def assignment_to_cover(
    phi: CnfEmbedding,
    layout: GadgetLayout,
    assignment: Mapping[int, bool],
    variant: str,
) -> frozenset[int]:
    """The parity cover of an assignment: 2m+1 segments per variable, plus
    (rect variant) one added segment per clause."""
    if variant not in (VARIANT_ALL, VARIANT_RECT):
        raise BadInput(f"unknown variant {variant!r}")
    for var in range(1, phi.variables + 1):
        if var not in assignment:
            raise BadInput(f"assignment misses variable {var}")
    cover: set[int] = set()
    for var, gadget in enumerate(layout.variables, start=1):
        value = assignment[var]
        cover.add(gadget.rightmost if value else gadget.leftmost)
        start = 0 if value else 1  # odd positions when true, even when false
        cover.update(gadget.top_shorts[start::2])
        cover.update(gadget.bottom_shorts[start::2])
    if variant == VARIANT_RECT:
        for ci, clause in enumerate(phi.clauses):
            gadget = layout.clauses[ci]
            (_, lit_lo), (_, lit_mid), (_, lit_hi) = _sorted_roles(clause)
            left_covered = _literal_true(lit_lo, assignment) or _literal_true(
                lit_mid, assignment
            )
            right_covered = _literal_true(lit_hi, assignment)
            needed = {_M}
            if not left_covered:
                needed.add(_L)
            if not right_covered:
                needed.add(_R)
            candidates = [
                seg_id
                for seg_id, coverage in zip(gadget.added, _RECT_ADDED_COVERAGE)
                if needed <= coverage
            ]
            if not candidates:  # falsified clause: still spend the one segment
                candidates = [
                    seg_id
                    for seg_id, coverage in zip(gadget.added, _RECT_ADDED_COVERAGE)
                    if _M in coverage
                ]
            cover.add(min(candidates))
    return frozenset(cover)


def cover_to_assignment(
    layout: GadgetLayout, cover: Iterable[int]
) -> dict[int, bool]:
    """Variable is true iff its rightmost tall vertical was selected."""
    chosen = set(cover)
    assignment: dict[int, bool] = {}
    for var, gadget in enumerate(layout.variables, start=1):
        left = gadget.leftmost in chosen
        right = gadget.rightmost in chosen
        if left and right:
            raise AmbiguousAssignment(var, "both tall verticals selected")
        if not left and not right:
            raise AmbiguousAssignment(var, "neither tall vertical selected")
        assignment[var] = right
    return assignment


def clause_gadget_cells(layout: GadgetLayout, arr_cells) -> dict[int, list]:
    """Cells whose defining set uses a clause's added segments, per clause."""
    result: dict[int, list] = {ci: [] for ci in range(len(layout.clauses))}
    for ci, gadget in enumerate(layout.clauses):
        added = set(gadget.added)
        for cell in arr_cells:
            if cell.defining & added:
                result[ci].append(cell)
    return result
