"""Assemble the Hamiltonian of a constructed model in sparse and dense form.

Triplets are kept in canonical column-major order, which is the natural
order of the index tree (one leaf per column). Duplicate ``(row, col)``
entries are summed at assembly time; merged entries that happen to be exactly
zero are kept.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasisTooLarge, NotConstructed, ParseError

DEFAULT_MAX_DENSE = 10_000


@dataclass(frozen=True, eq=False)
class SparseTriplets:
    """Coordinate (COO) representation with merged entries sorted by (col, row)."""

    rows: np.ndarray
    cols: np.ndarray
    values: np.ndarray
    dimension: int

    @property
    def nnz(self) -> int:
        return len(self.values)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.dimension, self.dimension), dtype=complex)
        dense[self.rows, self.cols] = self.values
        return dense

    def __eq__(self, other):
        if not isinstance(other, SparseTriplets):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.values, other.values)
        )

    def __iter__(self):
        """Yield ``(row, col, value)`` entries in canonical order."""
        return zip(self.rows.tolist(), self.cols.tolist(), self.values.tolist())


@dataclass(frozen=True, eq=False)
class CompressedColumns:
    """Compressed sparse column (CSC) arrays."""

    col_pointers: np.ndarray
    row_indices: np.ndarray
    values: np.ndarray
    dimension: int

    def to_triplets(self) -> SparseTriplets:
        counts = np.diff(self.col_pointers)
        cols = np.repeat(np.arange(self.dimension, dtype=np.int64), counts)
        return SparseTriplets(
            self.row_indices.copy(), cols, self.values.copy(), self.dimension
        )

    def __eq__(self, other):
        if not isinstance(other, CompressedColumns):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and np.array_equal(self.col_pointers, other.col_pointers)
            and np.array_equal(self.row_indices, other.row_indices)
            and np.array_equal(self.values, other.values)
        )


def canonicalize(rows, cols, values, dimension) -> SparseTriplets:
    """Sort entries by (col, row) and sum duplicates.

    The sort is stable, so duplicates are summed in the order given.
    """
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    values = np.asarray(values, dtype=complex)
    if len(values) == 0:
        return SparseTriplets(rows, cols, values, dimension)
    order = np.lexsort((rows, cols))
    rows, cols, values = rows[order], cols[order], values[order]
    new = np.empty(len(rows), dtype=bool)
    new[0] = True
    np.not_equal(rows[1:], rows[:-1], out=new[1:])
    new[1:] |= cols[1:] != cols[:-1]
    if new.all():
        return SparseTriplets(rows, cols, values, dimension)
    starts = np.flatnonzero(new)
    return SparseTriplets(
        rows[starts], cols[starts], _segment_sum(values, starts), dimension
    )


def _segment_sum(values, starts):
    # left-to-right accumulation inside each segment (np.add.reduceat may
    # reorder additions)
    out = values[starts].copy()
    ends = np.append(starts[1:], len(values))
    extra = np.flatnonzero(ends - starts > 1)
    for k in extra:
        acc = out[k]
        for v in values[starts[k] + 1:ends[k]]:
            acc = acc + v
        out[k] = acc
    return out


def assemble_triplets(model) -> SparseTriplets:
    """Collect every amplitude as ``H[basis(to), basis(from)]``.

    Evaluator-backed amplitudes are evaluated exactly once per call.
    """
    tree = model.tree if hasattr(model, "tree") else model
    if not tree.constructed:
        raise NotConstructed("call construct() before assembling")
    rows: list = []
    cols: list = []
    values: list = []
    for leaf, leaf_rows, leaf_values in tree._columns():
        rows.extend(leaf_rows)
        values.extend(leaf_values)
        cols.extend([leaf.basis_index] * len(leaf_rows))
    return canonicalize(rows, cols, values, tree.basis_size)


def to_compressed_columns(t: SparseTriplets) -> CompressedColumns:
    counts = np.bincount(t.cols, minlength=t.dimension)
    pointers = np.zeros(t.dimension + 1, dtype=np.int64)
    np.cumsum(counts, out=pointers[1:])
    # canonical triplets are already column-major with ascending rows
    return CompressedColumns(pointers, t.rows.copy(), t.values.copy(), t.dimension)


def assemble_dense(model, max_dimension: int = DEFAULT_MAX_DENSE) -> np.ndarray:
    """Dense ``N x N`` complex Hamiltonian; refuses bases above ``max_dimension``."""
    tree = model.tree if hasattr(model, "tree") else model
    if not tree.constructed:
        raise NotConstructed("call construct() before assembling")
    if tree.basis_size > max_dimension:
        raise BasisTooLarge(
            f"basis size {tree.basis_size} exceeds dense limit {max_dimension}"
        )
    return assemble_triplets(tree).to_dense()


# -- Matrix Market ---------------------------------------------------------

_MM_HEADER = "%%MatrixMarket matrix coordinate complex general"


def write_matrix_market(t: SparseTriplets, fh) -> None:
    """Write triplets as Matrix Market coordinate complex general (1-based).

    Signed zeros are written as ``0.0``.
    """
    fh.write(_MM_HEADER + "\n")
    fh.write(f"{t.dimension} {t.dimension} {t.nnz}\n")
    for r, c, v in t:
        fh.write(f"{r + 1} {c + 1} {v.real + 0.0!r} {v.imag + 0.0!r}\n")


def read_matrix_market(fh) -> SparseTriplets:
    """Read a coordinate Matrix Market file back into canonical triplets.

    Supports the ``real``, ``integer`` and ``complex`` fields. Symmetric,
    skew-symmetric and Hermitian files are expanded to the full matrix.
    """
    lines = iter(enumerate(fh, start=1))
    lineno, header = next(lines, (1, ""))
    parts = header.split()
    if len(parts) != 5 or parts[0] != "%%MatrixMarket" or parts[2] != "coordinate":
        raise ParseError(lineno, "not a coordinate Matrix Market file")
    field, symmetry = parts[3].lower(), parts[4].lower()
    mirror = {"general": None, "symmetric": 1, "skew-symmetric": -1, "hermitian": "conj"}
    if field not in ("real", "integer", "complex") or symmetry not in mirror:
        raise ParseError(lineno, f"unsupported field/symmetry {field}/{symmetry}")
    size = None
    n_read = 0
    rows, cols, values = [], [], []
    for lineno, line in lines:
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        tok = line.split()
        if size is None:
            if len(tok) != 3:
                raise ParseError(lineno, "expected 'rows cols entries'")
            size = tuple(int(x) for x in tok)
            if size[0] != size[1]:
                raise ParseError(lineno, "matrix is not square")
            continue
        want = 4 if field == "complex" else 3
        if len(tok) != want:
            raise ParseError(lineno, f"expected {want} columns, got {len(tok)}")
        n_read += 1
        rows.append(int(tok[0]) - 1)
        cols.append(int(tok[1]) - 1)
        im = float(tok[3]) if field == "complex" else 0.0
        values.append(complex(float(tok[2]), im))
        mode = mirror[symmetry]
        if mode is not None and rows[-1] != cols[-1]:
            rows.append(cols[-1])
            cols.append(rows[-2])
            values.append(values[-1].conjugate() if mode == "conj" else mode * values[-1])
    if size is None:
        raise ParseError(lineno, "missing size line")
    if n_read != size[2]:
        raise ParseError(lineno, f"expected {size[2]} entries, found {n_read}")
    return canonicalize(rows, cols, values, size[0])


def write_triplets_csv(t: SparseTriplets, fh) -> None:
    fh.write("row,col,re,im\n")
    for r, c, v in t:
        fh.write(f"{r},{c},{v.real + 0.0!r},{v.imag + 0.0!r}\n")
