"""sqkit: bilinear second-quantized Hamiltonians on hierarchical physical indices.

Amplitudes are added with physical indices such as ``[x, y, spin]``; the
model maps them onto a minimal linear basis through an index tree, from
which sparse and dense matrices, eigensolutions and physical properties are
obtained.
"""
from .errors import SqkitError
from .index import ALL, SPIN, SUM_ALL, Index, Specifier, compare, make_index, matches
from .model import HC, HoppingAmplitude, IndexTree, Model, Statistics
from .properties import DiagonalizerPropertyExtractor, EnergyWindow, GreensFunctionType
from .solver import Diagonalizer, EigenSolution, diagonalize, evolve_step
from .sparse import (
    CompressedColumns,
    SparseTriplets,
    assemble_dense,
    assemble_triplets,
    to_compressed_columns,
)

__version__ = "0.1.0"

__all__ = [
    "SqkitError", "ALL", "SPIN", "SUM_ALL", "Index", "Specifier", "compare", "make_index",
    "matches", "HC", "HoppingAmplitude", "IndexTree", "Model", "Statistics",
    "DiagonalizerPropertyExtractor", "EnergyWindow", "GreensFunctionType", "Diagonalizer",
    "EigenSolution", "diagonalize", "evolve_step", "CompressedColumns", "SparseTriplets",
    "assemble_dense", "assemble_triplets", "to_compressed_columns",
]
