"""Exception types shared across the package."""


class ResqError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ResqError):
    """Malformed input text; carries a 1-based line/column when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)


class ResidualMismatchError(ParseError):
    """An explicit residual block disagrees with the residuals forced by the
    order and composition; carries the structure with the tables as given."""

    def __init__(self, message: str, algebra):
        self.algebra = algebra
        super().__init__(message)


class NoResidualError(ResqError):
    """A residual does not exist: the candidate set is empty or has no maximum."""

    def __init__(self, left: int, right: int, side: str, candidates: frozenset[int]):
        self.left = left
        self.right = right
        self.side = side
        self.candidates = frozenset(candidates)
        super().__init__(
            f"no {side} residual for pair ({left}, {right}); "
            f"candidate set {sorted(self.candidates)} has no maximum"
        )


class ClosureSizeError(ResqError):
    """A closure computation exceeded its configured size cap."""


class QuantaleLawError(ResqError):
    """A constructed quantale violates one of its defining laws (a bug surface)."""


class EmbeddingViolation(ResqError):
    """The lower-cone embedding failed a preservation clause."""

    def __init__(self, operation: str, pair: tuple[int, ...]):
        self.operation = operation
        self.pair = pair
        super().__init__(f"embedding does not preserve {operation} at {pair}")


class ResourceLimitError(ResqError):
    """A configured node budget was exhausted before reaching a verdict."""

    def __init__(self, limit: int, message: str = "node budget exhausted"):
        self.limit = limit
        super().__init__(f"{message} (limit {limit})")


class DimensionMismatch(ResqError):
    """Relation operands live over bases of different sizes."""


class MissingAtomError(ResqError):
    """A model valuation does not cover some atom of the sequent."""
