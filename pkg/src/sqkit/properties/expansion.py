"""Energy windows and wildcard-pattern expansion against a model's basis."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from ..errors import BadSpinRange, MissingSpinSpecifier, NoMatch, SpecifierNotAllowed
from ..index import ALL, SPIN, SUM_ALL, Index, Specifier

# eigenvalues this close to a bin edge (in bin widths) are treated as lying on it
BIN_EDGE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class EnergyWindow:
    """Energy range ``[lower, upper]`` split into ``resolution`` equal bins."""

    lower: float
    upper: float
    resolution: int

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"need lower < upper, got [{self.lower}, {self.upper}]")
        if int(self.resolution) != self.resolution or self.resolution < 1:
            raise ValueError(f"resolution must be a positive integer, got {self.resolution}")
        object.__setattr__(self, "resolution", int(self.resolution))

    @property
    def spacing(self) -> float:
        return (self.upper - self.lower) / self.resolution

    @property
    def energies(self) -> np.ndarray:
        """Bin centers."""
        return self.lower + (np.arange(self.resolution) + 0.5) * self.spacing

    def bin_of(self, energies) -> np.ndarray:
        """Bin index of each energy, or -1 outside the window.

        ``floor((E - lower) / spacing)`` with ``E == upper`` clamped into the
        last bin.
        """
        t = (np.asarray(energies, dtype=float) - self.lower) / self.spacing
        nearest = np.round(t)
        t = np.where(np.abs(t - nearest) <= BIN_EDGE_TOLERANCE, nearest, t)
        bins = np.floor(t).astype(np.int64)
        bins[bins == self.resolution] = self.resolution - 1
        bins[(t < 0) | (t > self.resolution)] = -1
        return bins


@dataclass(frozen=True)
class Expansion:
    """One output entry of a pattern expansion.

    ``key`` keeps SUM_ALL and SPIN at their positions and the concrete value
    everywhere else. ``members`` lists the matched ``(index, basis_index)``
    pairs that contribute to the key.
    """

    key: Index
    members: tuple
    spin_position: Optional[int] = None

    @property
    def basis_indices(self) -> list:
        return [b for _, b in self.members]

    def spin_pairs(self) -> list:
        """Group members by site: ``[(basis of spin 0 or -1, basis of spin 1 or -1), ...]``."""
        pos = self.spin_position
        sites: dict = {}
        for index, basis in self.members:
            rest = index[:pos] + index[pos + 1:]
            sites.setdefault(rest, [-1, -1])[index[pos]] = basis
        return [tuple(v) for v in sites.values()]


def as_pattern_list(patterns) -> list:
    """Accept one pattern or a list of patterns."""
    if isinstance(patterns, (Index, str)):
        patterns = [patterns]
    else:
        patterns = list(patterns)
        if patterns and isinstance(patterns[0], (int, Specifier)):
            patterns = [patterns]
    return [Index.parse(p) if isinstance(p, str) else Index(p) for p in patterns]


def expand_patterns(
    model,
    patterns: Iterable,
    allowed: Iterable[Specifier] = (ALL, SUM_ALL),
    require_spin: bool = False,
) -> list:
    """Match patterns against the basis and group the matches into output keys.

    ALL positions fan out into separate keys, SUM_ALL positions are
    contracted into one key and a SPIN position (allowed only when
    ``require_spin``) must match the values 0 and 1.
    """
    tree = model.tree if hasattr(model, "tree") else model
    allowed = set(allowed)
    if require_spin:
        allowed.add(SPIN)
    out = []
    for pattern in as_pattern_list(patterns):
        for s in pattern:
            if isinstance(s, Specifier) and s not in allowed:
                raise SpecifierNotAllowed(f"{s} is not allowed here (pattern {pattern})")
        spin_positions = [k for k, s in enumerate(pattern) if s is SPIN]
        spin_position = None
        if require_spin:
            if not spin_positions:
                raise MissingSpinSpecifier(f"pattern {pattern} needs one SPIN subindex")
            if len(spin_positions) > 1:
                raise SpecifierNotAllowed(f"pattern {pattern} has more than one SPIN")
            spin_position = spin_positions[0]

        groups: dict = {}
        for index, basis in tree.match(pattern):
            if spin_position is not None and index[spin_position] not in (0, 1):
                raise BadSpinRange(
                    f"spin subindex of {index} is {index[spin_position]}, expected 0 or 1"
                )
            key = tuple(
                p if p is SUM_ALL or p is SPIN else v for p, v in zip(pattern, index)
            )
            groups.setdefault(key, []).append((index, basis))
        if not groups:
            raise NoMatch(f"pattern {pattern} matches no basis state")
        out.extend(
            Expansion(Index(key), tuple(members), spin_position)
            for key, members in groups.items()
        )
    return out

