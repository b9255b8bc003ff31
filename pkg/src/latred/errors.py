"""Exception hierarchy. The CLI maps each branch to a stable exit code."""


class LatredError(Exception):
    exit_code = 4


class ParseError(LatredError):
    """Malformed automaton or report document."""

    exit_code = 1


class ValidationError(LatredError, ValueError):
    exit_code = 2


class DimensionMismatch(ValidationError):
    pass


class LatticeMismatch(ValidationError):
    pass


class InvalidValue(ValidationError):
    pass


class NotReflexive(ValidationError):
    def __init__(self, i: int, j: int, value: float):
        super().__init__(f"not reflexive: entry ({i}, {j}) = {value!r} < 1")
        self.pair = (i, j)


class NotTransitive(ValidationError):
    def __init__(self, i: int, j: int, value: float, bound: float):
        super().__init__(f"not transitive: (Q.Q)({i}, {j}) = {value!r} exceeds Q({i}, {j}) = {bound!r}")
        self.pair = (i, j)


class UnknownSymbol(ValidationError):
    pass


class AlphabetMismatch(ValidationError):
    pass


class WordCapExceeded(LatredError):
    exit_code = 3


class PathCapExceeded(WordCapExceeded):
    pass


class InternalInvariantError(LatredError):
    """A guarantee of the theory failed to hold: always an implementation bug."""

    exit_code = 4


class EquivalenceCheckFailed(InternalInvariantError):
    pass


class FactorizationError(InternalInvariantError):
    pass
