"""Property containers returned by property extractors.

Every container can be written as CSV: key columns first, then value
columns, with complex numbers split into ``re`` and ``im`` columns. Floats
are written with ``repr`` so output is exact and byte-stable.
"""
from __future__ import annotations

import csv
import enum
from dataclasses import dataclass

import numpy as np

from ..index import Index
from .expansion import EnergyWindow


def _key_columns(prefix, keys):
    width = max((len(k) for k in keys), default=0)
    return [f"{prefix}s{i}" for i in range(width)], width


def _key_cells(key, width):
    return [str(s) for s in key] + [""] * (width - len(key))


def _f(x) -> str:
    return repr(float(x) + 0.0)


class _Container:
    def _rows(self):
        raise NotImplementedError

    def to_csv(self, fh) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        header, rows = self._rows()
        writer.writerow(header)
        writer.writerows(rows)


class _Keyed(_Container):
    """Lookup of values by output key, e.g. ``density[[0, SUM_ALL]]``."""

    def __getitem__(self, key):
        lookup = self.__dict__.get("_lookup")
        if lookup is None:
            lookup = {k: i for i, k in enumerate(self.keys)}
            object.__setattr__(self, "_lookup", lookup)
        return self.values[lookup[Index(key)]]

    def __len__(self):
        return len(self.keys)


@dataclass(frozen=True, eq=False)
class EigenValues(_Container):
    values: np.ndarray

    def __len__(self):
        return len(self.values)

    def _rows(self):
        return ["state", "energy"], [[n, _f(e)] for n, e in enumerate(self.values)]


@dataclass(frozen=True, eq=False)
class DOS(_Container):
    """Histogram density of states: eigenvalue counts per bin over the bin width."""

    window: EnergyWindow
    values: np.ndarray

    @property
    def energies(self):
        return self.window.energies

    def _rows(self):
        rows = [[b, _f(e), _f(v)] for b, (e, v) in enumerate(zip(self.energies, self.values))]
        return ["bin", "energy", "dos"], rows


@dataclass(frozen=True, eq=False)
class Density(_Keyed):
    keys: list
    values: np.ndarray

    def _rows(self):
        cols, w = _key_columns("", self.keys)
        return cols + ["density"], [
            _key_cells(k, w) + [_f(v)] for k, v in zip(self.keys, self.values)
        ]


@dataclass(frozen=True, eq=False)
class LDOS(_Keyed):
    """Local density of states, shape ``(len(keys), resolution)``."""

    keys: list
    window: EnergyWindow
    values: np.ndarray

    def _rows(self):
        cols, w = _key_columns("", self.keys)
        energies = self.window.energies
        rows = []
        for k, row in zip(self.keys, self.values):
            cells = _key_cells(k, w)
            rows.extend(cells + [b, _f(e), _f(v)] for b, (e, v) in enumerate(zip(energies, row)))
        return cols + ["bin", "energy", "ldos"], rows


@dataclass(frozen=True, eq=False)
class Magnetization(_Keyed):
    """Spin density matrix per key, shape ``(len(keys), 2, 2)``."""

    keys: list
    values: np.ndarray

    def _rows(self):
        cols, w = _key_columns("", self.keys)
        rows = []
        for k, m in zip(self.keys, self.values):
            cells = _key_cells(k, w)
            for s in range(2):
                for t in range(2):
                    rows.append(cells + [s, t, _f(m[s, t].real), _f(m[s, t].imag)])
        return cols + ["spin_row", "spin_col", "re", "im"], rows


@dataclass(frozen=True, eq=False)
class SpinPolarizedLDOS(_Keyed):
    """Spin-resolved LDOS, shape ``(len(keys), resolution, 2, 2)``."""

    keys: list
    window: EnergyWindow
    values: np.ndarray

    def _rows(self):
        cols, w = _key_columns("", self.keys)
        energies = self.window.energies
        rows = []
        for k, block in zip(self.keys, self.values):
            cells = _key_cells(k, w)
            for b, (e, m) in enumerate(zip(energies, block)):
                for s in range(2):
                    for t in range(2):
                        rows.append(
                            cells + [b, _f(e), s, t, _f(m[s, t].real), _f(m[s, t].imag)]
                        )
        return cols + ["bin", "energy", "spin_row", "spin_col", "re", "im"], rows


@dataclass(frozen=True, eq=False)
class WaveFunctions(_Keyed):
    """Amplitudes ``psi_n(i)``, shape ``(len(keys), len(states))``."""

    keys: list
    states: list
    values: np.ndarray

    def _rows(self):
        cols, w = _key_columns("", self.keys)
        rows = []
        for k, row in zip(self.keys, self.values):
            cells = _key_cells(k, w)
            rows.extend(cells + [n, _f(v.real), _f(v.imag)] for n, v in zip(self.states, row))
        return cols + ["state", "re", "im"], rows


class GreensFunctionType(enum.Enum):
    RETARDED = "retarded"
    ADVANCED = "advanced"


@dataclass(frozen=True, eq=False)
class GreensFunction(_Keyed):
    """Green's function ``G_ij(E)`` sampled at the window's bin centers.

    ``keys`` holds ``(i, j)`` pairs: ``i`` carries the annihilation operator
    and ``j`` the creation operator. ``values`` has shape
    ``(len(keys), resolution)``.
    """

    keys: list
    window: EnergyWindow
    values: np.ndarray
    type: GreensFunctionType
    eta: float

    def __getitem__(self, pair):
        lookup = self.__dict__.get("_lookup")
        if lookup is None:
            lookup = {k: i for i, k in enumerate(self.keys)}
            object.__setattr__(self, "_lookup", lookup)
        i, j = pair
        return self.values[lookup[(Index(i), Index(j))]]

    def _rows(self):
        to_cols, wi = _key_columns("i_", [k[0] for k in self.keys])
        from_cols, wj = _key_columns("j_", [k[1] for k in self.keys])
        energies = self.window.energies
        rows = []
        for (i, j), row in zip(self.keys, self.values):
            cells = _key_cells(i, wi) + _key_cells(j, wj)
            rows.extend(
                cells + [b, _f(e), _f(g.real), _f(g.imag)]
                for b, (e, g) in enumerate(zip(energies, row))
            )
        return to_cols + from_cols + ["bin", "energy", "re", "im"], rows
