"""Exception hierarchy shared by all sqkit modules."""


class SqkitError(Exception):
    """Base class for every error raised by sqkit."""


# indexing
class InvalidIndex(SqkitError):
    """Base class for malformed or misused indices."""


class EmptyIndex(InvalidIndex):
    pass


class NegativeSubindex(InvalidIndex):
    pass


class PatternNotComparable(InvalidIndex):
    pass


# model
class ModelError(SqkitError):
    """Base class for errors raised while building or querying a model."""


class IndexCollision(ModelError):
    """Two stored indices where one is a strict prefix of the other.

    Indices with different structures may coexist only when they differ in a
    subindex to the left of where their structures start to differ.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ModelAlreadyConstructed(ModelError):
    pass


class NotConstructed(ModelError):
    pass


class EmptyModel(ModelError):
    pass


class DanglingToIndex(ModelError):
    def __init__(self, index):
        super().__init__(f"to-index {index} does not correspond to any basis state")
        self.index = index


class IndexNotFound(ModelError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class OutOfRange(ModelError, IndexError):
    pass


class NegativeTemperature(ModelError, ValueError):
    pass


# assembly / solvers
class BasisTooLarge(SqkitError):
    pass


class NonHermitian(SqkitError):
    def __init__(self, max_deviation):
        super().__init__(
            f"Hamiltonian is not Hermitian: max |H_ij - conj(H_ji)| = {max_deviation:.3e}"
        )
        self.max_deviation = max_deviation


class DimensionMismatch(SqkitError, ValueError):
    pass


class NonPositiveDt(SqkitError, ValueError):
    pass


# property extraction
class PropertyError(SqkitError):
    pass


class NoMatch(PropertyError):
    pass


class BadSpinRange(PropertyError):
    pass


class SpecifierNotAllowed(PropertyError):
    pass


class MissingSpinSpecifier(PropertyError):
    pass


class BoseBelowChemicalPotential(PropertyError, ValueError):
    pass


class WindowNotSet(PropertyError):
    pass


class StateOutOfRange(PropertyError, IndexError):
    pass


class NonPositiveEta(PropertyError, ValueError):
    pass


class NotSupportedBySolver(PropertyError, NotImplementedError):
    pass


# files
class ParseError(SqkitError, ValueError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
