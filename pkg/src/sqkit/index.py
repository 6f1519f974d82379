"""Physical indices and wildcard patterns.

A physical index is an ordered, non-empty sequence of non-negative integer
subindices such as ``[x, y, spin]``. A pattern index may additionally hold
the specifiers :data:`ALL`, :data:`SUM_ALL` and :data:`SPIN`, which are used
when extracting properties.
"""
from __future__ import annotations

import enum
import operator
import re
from typing import Iterable, Union

from .errors import EmptyIndex, NegativeSubindex, PatternNotComparable


class Specifier(enum.Enum):
    """Wildcard subindex kinds.

    ALL fans out into one output entry per matching value, SUM_ALL contracts
    over the matching values and SPIN marks the two-valued spin axis.
    """

    ALL = "ALL"
    SUM_ALL = "SUM_ALL"
    SPIN = "SPIN"

    def __repr__(self):
        return self.value

    __str__ = __repr__


ALL = Specifier.ALL
SUM_ALL = Specifier.SUM_ALL
SPIN = Specifier.SPIN

SubIndex = Union[int, Specifier]


class Index(tuple):
    """Immutable physical index.

    Behaves like a tuple of subindices, so hashing, equality and (for
    concrete indices) ordering come for free.

    Examples
    --------
    >>> Index([0, 1, 0])
    [0, 1, 0]
    >>> Index([ALL, 2, SUM_ALL]).is_pattern
    True
    """

    __slots__ = ()

    def __new__(cls, subindices: Iterable[SubIndex] = ()):
        if type(subindices) is cls:
            return subindices
        self = tuple.__new__(cls, subindices)
        if not self:
            raise EmptyIndex("an index needs at least one subindex")
        for s in self:
            if type(s) is int:
                if s < 0:
                    raise NegativeSubindex(
                        f"negative subindex {s} in {list(self)}; "
                        "negative values are reserved"
                    )
            elif not isinstance(s, Specifier):
                # numpy integers and the like; normalize once and re-validate
                return cls([s if isinstance(s, Specifier) else _as_int(s) for s in self])
        return self

    @property
    def is_concrete(self) -> bool:
        return all(type(s) is int for s in self)

    @property
    def is_pattern(self) -> bool:
        return not self.is_concrete

    @property
    def subindices(self) -> list:
        return list(self)

    def __repr__(self):
        return "[" + ", ".join(str(s) for s in self) + "]"

    __str__ = __repr__

    @classmethod
    def parse(cls, text: str) -> "Index":
        """Parse the textual form ``[s0, s1, ...]``.

        Brackets are optional; subindices may be separated by commas and/or
        whitespace. Specifiers are given by name.
        """
        body = text.strip()
        if body.startswith("[") and body.endswith("]"):
            body = body[1:-1]
        tokens = [t for t in re.split(r"[,\s]+", body) if t]
        subs = []
        for tok in tokens:
            if tok in Specifier.__members__:
                subs.append(Specifier[tok])
            else:
                try:
                    subs.append(int(tok))
                except ValueError:
                    raise ValueError(f"invalid subindex {tok!r} in {text!r}") from None
        return cls(subs)


def _as_int(s) -> int:
    if isinstance(s, bool):
        raise TypeError(f"boolean subindex {s!r} is not allowed")
    try:
        return operator.index(s)
    except TypeError:
        raise TypeError(f"subindex must be an integer or a Specifier, got {s!r}") from None


def make_index(subindices: Iterable[SubIndex]) -> Index:
    """Build an :class:`Index` from a sequence of integers and specifiers."""
    return Index(subindices)


def compare(a: Index, b: Index) -> int:
    """Three-way lexicographic comparison of two concrete indices.

    Returns -1, 0 or 1. A strict prefix orders before the longer index.
    """
    a, b = Index(a), Index(b)
    if a.is_pattern or b.is_pattern:
        raise PatternNotComparable(f"cannot order pattern indices {a} and {b}")
    return (a > b) - (a < b)


def matches(pattern: Index, candidate: Index) -> bool:
    """True if every subindex of ``pattern`` equals the candidate's or is a specifier.

    Indices of different length never match.
    """
    if len(pattern) != len(candidate):
        return False
    for p, c in zip(pattern, candidate):
        if type(p) is int and p != c:
            return False
    return True
