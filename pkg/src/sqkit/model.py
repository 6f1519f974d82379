"""Hopping amplitudes, the index tree and the model container.

The index tree is a trie keyed on the subindices of each amplitude's
from-index. Every leaf is one basis state: it stores the amplitudes of one
column of the Hamiltonian and, after :meth:`IndexTree.construct`, the linear
basis index of that state.
"""
from __future__ import annotations

import enum
import threading
from array import array
from typing import Callable, Iterator, Optional

from .errors import (
    DanglingToIndex,
    EmptyModel,
    IndexCollision,
    IndexNotFound,
    ModelAlreadyConstructed,
    NegativeTemperature,
    NotConstructed,
    OutOfRange,
)
from .index import Index

Evaluator = Callable[[Index, Index], complex]


class Statistics(enum.Enum):
    FERMI_DIRAC = "fermi_dirac"
    BOSE_EINSTEIN = "bose_einstein"


class HoppingAmplitude:
    """Amplitude ``a_ij`` of the term ``c_i^dagger c_j``.

    Parameters
    ----------
    value : complex or callable
        The amplitude. A callable is treated as an evaluator and called as
        ``value(to_index, from_index)`` whenever the value is read.
    to_index, from_index : Index or sequence of int
        The state ``i`` the particle hops to and the state ``j`` it hops from.
    """

    __slots__ = ("_value", "to_index", "from_index", "evaluator")

    def __init__(self, value, to_index, from_index, evaluator: Optional[Evaluator] = None):
        if evaluator is None and callable(value):
            value, evaluator = 0.0, value
        self._value = value
        self.to_index = _concrete(to_index)
        self.from_index = _concrete(from_index)
        self.evaluator = evaluator

    @property
    def value(self) -> complex:
        if self.evaluator is not None:
            return self.evaluator(self.to_index, self.from_index)
        return self._value

    def get_value(self) -> complex:
        return self.value

    def hermitian_conjugate(self) -> "HoppingAmplitude":
        if self.evaluator is None:
            return HoppingAmplitude(_conj(self._value), self.from_index, self.to_index)
        return HoppingAmplitude(
            _conj(self._value), self.from_index, self.to_index,
            evaluator=_conjugate_evaluator(self.evaluator),
        )

    def __add__(self, other):
        if other is HC:
            return _WithHC(self)
        return NotImplemented

    def __repr__(self):
        v = "<evaluator>" if self.evaluator is not None else repr(self._value)
        return f"HoppingAmplitude({v}, {self.to_index}, {self.from_index})"


class _HermitianConjugateMarker:
    def __repr__(self):
        return "HC"


#: ``model << HoppingAmplitude(...) + HC`` adds an amplitude and its conjugate.
HC = _HermitianConjugateMarker()


class _WithHC:
    __slots__ = ("amplitude",)

    def __init__(self, amplitude):
        self.amplitude = amplitude


def _conj(value):
    return value.conjugate() if hasattr(value, "conjugate") else complex(value).conjugate()


def _conjugate_evaluator(evaluator: Evaluator) -> Evaluator:
    def conjugated(to_index, from_index):
        return _conj(evaluator(from_index, to_index))

    return conjugated


def _concrete(index) -> Index:
    index = Index(index)
    if index.is_pattern:
        raise ValueError(f"amplitudes need concrete indices, got pattern {index}")
    return index


class _Leaf:
    """One basis state: a column of the Hamiltonian."""

    __slots__ = ("index", "basis_index", "to_indices", "values", "evaluators")

    def __init__(self, index):
        self.index = index
        self.basis_index = -1
        self.to_indices = []
        self.values = []
        self.evaluators = None

    def append(self, value, to_index, evaluator):
        if evaluator is not None and self.evaluators is None:
            self.evaluators = [None] * len(self.values)
        self.to_indices.append(to_index)
        self.values.append(value)
        if self.evaluators is not None:
            self.evaluators.append(evaluator)


def _collision(new, existing_prefix):
    return IndexCollision(
        f"index {new} collides with stored index structure at {existing_prefix}: "
        "indices with different structures must differ in a subindex to the left "
        "of where their structures start to differ"
    )


def _freeze(node):
    """Compact read-only copy of a trie node holding basis indices.

    Nodes whose keys densely cover ``0..k-1`` become tuples, or int64 arrays
    when every child is a leaf; holes are None or -1. Sparse nodes stay dicts.
    Random lookups in large bases then touch far less memory than the
    dict-of-dicts used while building.
    """
    top = max(node) + 1
    if top > 2 * len(node) + 8:
        return {k: _freeze(v) if type(v) is dict else v.basis_index for k, v in node.items()}
    if not any(type(v) is dict for v in node.values()):
        out = array("q", [-1]) * top
        for k, v in node.items():
            out[k] = v.basis_index
        return out
    out = [None] * top
    for k, v in node.items():
        out[k] = _freeze(v) if type(v) is dict else v.basis_index
    return tuple(out)


def _walk(node, index) -> int:
    # index must hold non-negative subindices; -1 means not found
    try:
        for s in index:
            node = node[s]
    except (KeyError, IndexError, TypeError):
        # TypeError: walked past a leaf, or a specifier on a sequence node
        return -1
    return node if type(node) is int else -1


class IndexTree:
    """Trie of hopping amplitudes keyed on from-index subindices.

    Internal nodes are plain dicts mapping a subindex value to a child; leaves
    are :class:`_Leaf` objects. Children are visited in ascending subindex
    order when the basis is enumerated, so the basis does not depend on the
    order in which amplitudes were added.

    :meth:`construct` also freezes a compact copy of the trie for
    :meth:`basis_index_of` (see :func:`_freeze`).
    """

    def __init__(self):
        self._root: dict = {}
        self._lookup = None
        self._leaves: list = []
        self._constructed = False
        self._num_amplitudes = 0
        self._reverse: Optional[list] = None
        self._reverse_lock = threading.Lock()

    # -- building -------------------------------------------------------
    def _probe(self, index):
        """Raise IndexCollision if ``index`` cannot be stored; create nothing."""
        node = self._root
        last = len(index) - 1
        for depth, s in enumerate(index):
            child = node.get(s)
            if child is None:
                return
            if depth == last:
                if type(child) is dict:
                    raise _collision(index, index)
                return
            if type(child) is not dict:
                raise _collision(index, child.index)
            node = child

    def _leaf_for(self, index) -> _Leaf:
        # A collision can only be found along an existing path, so this raises
        # before creating any node.
        node = self._root
        for s in index[:-1]:
            child = node.get(s)
            if child is None:
                child = node[s] = {}
            elif type(child) is not dict:
                raise _collision(index, child.index)
            node = child
        s = index[-1]
        leaf = node.get(s)
        if leaf is None:
            leaf = node[s] = _Leaf(index)
        elif type(leaf) is dict:
            raise _collision(index, index)
        return leaf

    def add(self, amplitude: HoppingAmplitude, with_hermitian_conjugate: bool = False):
        if self._constructed:
            raise ModelAlreadyConstructed("cannot add amplitudes after construct()")
        to_index, from_index = amplitude.to_index, amplitude.from_index
        if with_hermitian_conjugate:
            n = min(len(to_index), len(from_index))
            if len(to_index) != len(from_index) and to_index[:n] == from_index[:n]:
                raise _collision(from_index, to_index)
            self._probe(to_index)
        self._leaf_for(from_index).append(amplitude._value, to_index, amplitude.evaluator)
        self._num_amplitudes += 1
        if with_hermitian_conjugate:
            if amplitude.evaluator is None:
                value, evaluator = _conj(amplitude._value), None
            else:
                value, evaluator = amplitude._value, _conjugate_evaluator(amplitude.evaluator)
            self._leaf_for(to_index).append(value, from_index, evaluator)
            self._num_amplitudes += 1

    def construct(self):
        """Enumerate leaves depth-first in ascending subindex order and freeze."""
        if self._constructed:
            raise ModelAlreadyConstructed("construct() was already called")
        if not self._root:
            raise EmptyModel("the model holds no hopping amplitudes")
        leaves = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            if type(node) is dict:
                # reversed so the smallest subindex is popped first
                for key in sorted(node, reverse=True):
                    stack.append(node[key])
            else:
                node.basis_index = len(leaves)
                leaves.append(node)
        lookup = _freeze(self._root)
        for leaf in leaves:
            for to_index in leaf.to_indices:
                if _walk(lookup, to_index) < 0:
                    raise DanglingToIndex(to_index)
        self._lookup = lookup
        self._leaves = leaves
        self._constructed = True

    # -- queries ----------------------------------------------------------
    @property
    def constructed(self) -> bool:
        return self._constructed

    @property
    def basis_size(self) -> int:
        self._require_constructed()
        return len(self._leaves)

    @property
    def num_amplitudes(self) -> int:
        return self._num_amplitudes

    def _require_constructed(self):
        if not self._constructed:
            raise NotConstructed("call construct() first")

    def _find(self, index) -> Optional[_Leaf]:
        node = self._root
        try:
            for s in index:
                node = node[s]
        except (KeyError, TypeError):
            # TypeError: walked past a leaf
            return None
        return None if type(node) is dict else node

    def basis_index_of(self, index) -> int:
        """Linear basis index of a physical index; cost grows with depth only."""
        self._require_constructed()
        if type(index) is not Index:
            index = Index(index)
        basis_index = _walk(self._lookup, index)
        if basis_index < 0:
            raise IndexNotFound(f"index {index} is not part of the basis")
        return basis_index

    def physical_index_of(self, basis_index: int) -> Index:
        self._require_constructed()
        if not 0 <= basis_index < len(self._leaves):
            raise OutOfRange(
                f"basis index {basis_index} outside [0, {len(self._leaves)})"
            )
        table = self._reverse
        if table is None:
            with self._reverse_lock:
                if self._reverse is None:
                    self._reverse = self._build_reverse_table()
                table = self._reverse
        return table[basis_index]

    def _build_reverse_table(self) -> list:
        table = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            if type(node) is dict:
                for key in sorted(node, reverse=True):
                    stack.append(node[key])
            else:
                table.append(node.index)
        return table

    def leaves(self) -> Iterator[tuple]:
        """Yield ``(index, basis_index)`` for every basis state in basis order."""
        self._require_constructed()
        for leaf in self._leaves:
            yield leaf.index, leaf.basis_index

    def match(self, pattern) -> Iterator[tuple]:
        """Yield ``(index, basis_index)`` of leaves matched by ``pattern``.

        Only branches compatible with the pattern's concrete subindices are
        visited. Results come out in basis order.
        """
        self._require_constructed()
        pattern = Index(pattern)
        depth = len(pattern)

        def walk(node, level):
            p = pattern[level]
            if type(p) is int:
                keys = (p,) if p in node else ()
            else:
                keys = sorted(node)
            for key in keys:
                child = node[key]
                if type(child) is dict:
                    if level + 1 < depth:
                        yield from walk(child, level + 1)
                elif level + 1 == depth:
                    yield child.index, child.basis_index

        yield from walk(self._root, 0)

    def __iter__(self) -> Iterator[HoppingAmplitude]:
        """Iterate over all amplitudes: leaves in basis order, then insertion order."""
        self._require_constructed()
        for leaf in self._leaves:
            evaluators = leaf.evaluators
            from_index = leaf.index
            for k, (to_index, value) in enumerate(zip(leaf.to_indices, leaf.values)):
                yield HoppingAmplitude(
                    value, to_index, from_index,
                    evaluator=None if evaluators is None else evaluators[k],
                )

    def _columns(self):
        """Yield ``(leaf, rows, values)`` with evaluators resolved; for assembly."""
        find = self._find
        for leaf in self._leaves:
            rows = [find(t).basis_index for t in leaf.to_indices]
            if leaf.evaluators is None:
                values = leaf.values
            else:
                values = [
                    v if ev is None else ev(t, leaf.index)
                    for v, t, ev in zip(leaf.values, leaf.to_indices, leaf.evaluators)
                ]
            yield leaf, rows, values


class Model:
    """Container for a bilinear Hamiltonian and its thermodynamic parameters.

    Temperatures are given in energy units; the Boltzmann constant
    ``k_boltzmann`` (default 1) converts them when occupations are computed.

    Examples
    --------
    >>> model = Model()
    >>> model.add_amplitude(HoppingAmplitude(1.0, [1, 0], [0, 0]), True)
    >>> model.construct()
    >>> model.basis_size
    2
    """

    def __init__(
        self,
        temperature: float = 0.0,
        chemical_potential: float = 0.0,
        statistics: Statistics = Statistics.FERMI_DIRAC,
        k_boltzmann: float = 1.0,
    ):
        self.tree = IndexTree()
        self.k_boltzmann = k_boltzmann
        self.configure(temperature, chemical_potential, statistics)

    # parameters
    def configure(self, temperature, chemical_potential, statistics):
        self.temperature = temperature
        self.chemical_potential = chemical_potential
        self.statistics = statistics

    @property
    def temperature(self) -> float:
        return self._temperature

    @temperature.setter
    def temperature(self, value):
        if value < 0:
            raise NegativeTemperature(f"temperature must be >= 0, got {value}")
        self._temperature = float(value)

    @property
    def chemical_potential(self) -> float:
        return self._chemical_potential

    @chemical_potential.setter
    def chemical_potential(self, value):
        self._chemical_potential = float(value)

    @property
    def statistics(self) -> Statistics:
        return self._statistics

    @statistics.setter
    def statistics(self, value):
        self._statistics = Statistics(value)

    # amplitudes
    def add_amplitude(self, amplitude: HoppingAmplitude, with_hermitian_conjugate: bool = False):
        self.tree.add(amplitude, with_hermitian_conjugate)

    def __lshift__(self, item):
        if isinstance(item, _WithHC):
            self.tree.add(item.amplitude, True)
        else:
            self.tree.add(item, False)
        return self

    def construct(self):
        self.tree.construct()

    @property
    def constructed(self) -> bool:
        return self.tree.constructed

    @property
    def basis_size(self) -> int:
        return self.tree.basis_size

    def basis_index_of(self, index) -> int:
        return self.tree.basis_index_of(index)

    def physical_index_of(self, basis_index: int) -> Index:
        return self.tree.physical_index_of(basis_index)

    def iterate_amplitudes(self) -> Iterator[HoppingAmplitude]:
        return iter(self.tree)
