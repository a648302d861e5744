"""Exception types shared across the package.

Every error carries a stable ``code`` string so the CLI can map failures to
diagnostics without parsing messages.
"""


class SegcoverError(Exception):
    code = "error"


class BadInput(SegcoverError):
    """Malformed document or value; the message names the offending field."""

    code = "bad-input"


class BadSegment(SegcoverError):
    code = "bad-segment"


class DuplicateId(SegcoverError):
    code = "duplicate-id"

    def __init__(self, seg_id: int):
        super().__init__(f"duplicate segment id {seg_id}")
        self.seg_id = seg_id


class OverlappingCollinear(SegcoverError):
    """Two collinear segments share a piece of positive length."""

    code = "overlapping-collinear"

    def __init__(self, id_a: int, id_b: int):
        super().__init__(f"segments {id_a} and {id_b} overlap collinearly")
        self.ids = (id_a, id_b)


class EmptyInput(SegcoverError):
    code = "empty-input"

    def __init__(self):
        super().__init__("at least one segment is required")


class UnknownSegmentId(SegcoverError):
    code = "unknown-segment-id"

    def __init__(self, seg_id: int):
        super().__init__(f"unknown segment id {seg_id}")
        self.seg_id = seg_id


class BudgetRequired(SegcoverError):
    code = "budget-required"

    def __init__(self, n_segments: int, guard: int):
        super().__init__(
            f"{n_segments} segments exceed the brute-force guard of {guard};"
            " raise --guard to force exhaustive search"
        )


class SizeGuardExceeded(SegcoverError):
    code = "size-guard-exceeded"

    def __init__(self, n_segments: int, guard: int):
        super().__init__(f"{n_segments} segments exceed the size guard of {guard}")


class SplitOutOfRange(SegcoverError):
    code = "split-out-of-range"

    def __init__(self, axis: str, coord: int, rect):
        super().__init__(f"split {axis}={coord} not strictly inside rectangle {rect}")


class DegenerateRectangle(SegcoverError):
    code = "degenerate-rectangle"

    def __init__(self, rect):
        super().__init__(f"rectangle {rect} has empty interior")


class AmbiguousAssignment(SegcoverError):
    code = "ambiguous-assignment"

    def __init__(self, variable: int, detail: str):
        super().__init__(f"variable {variable}: {detail}")
        self.variable = variable


class EmbeddingInfeasible(SegcoverError):
    code = "embedding-infeasible"
