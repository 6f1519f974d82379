"""Property extractors: physical-index access to solver results."""
from __future__ import annotations

from typing import Optional

import numpy as np

from ..errors import NonPositiveEta, NotSupportedBySolver, StateOutOfRange, WindowNotSet
from ..index import ALL, SUM_ALL
from .containers import (
    DOS,
    LDOS,
    Density,
    EigenValues,
    GreensFunction,
    GreensFunctionType,
    Magnetization,
    SpinPolarizedLDOS,
    WaveFunctions,
)
from .expansion import EnergyWindow, expand_patterns
from .occupation import occupation


class PropertyExtractor:
    """Common interface for all solvers.

    Solvers override what they can compute; everything else raises
    :class:`NotSupportedBySolver`.
    """

    def __init__(self):
        self.window: Optional[EnergyWindow] = None

    def set_energy_window(self, lower: float, upper: float, resolution: int):
        self.window = EnergyWindow(lower, upper, resolution)

    def _require_window(self) -> EnergyWindow:
        if self.window is None:
            raise WindowNotSet("call set_energy_window() first")
        return self.window

    def _unsupported(self, name):
        raise NotSupportedBySolver(f"{type(self).__name__} cannot calculate {name}")

    def get_eigen_values(self) -> EigenValues:
        self._unsupported("eigenvalues")

    def calculate_dos(self) -> DOS:
        self._unsupported("the DOS")

    def calculate_density(self, patterns) -> Density:
        self._unsupported("the density")

    def calculate_ldos(self, patterns) -> LDOS:
        self._unsupported("the LDOS")

    def calculate_magnetization(self, patterns) -> Magnetization:
        self._unsupported("the magnetization")

    def calculate_spin_polarized_ldos(self, patterns) -> SpinPolarizedLDOS:
        self._unsupported("the spin-polarized LDOS")

    def calculate_wave_functions(self, patterns, states=ALL) -> WaveFunctions:
        self._unsupported("wave functions")

    def calculate_greens_function(self, pairs, type=GreensFunctionType.RETARDED, eta=None):
        self._unsupported("the Green's function")


class DiagonalizerPropertyExtractor(PropertyExtractor):
    """Properties from a full eigendecomposition.

    Parameters
    ----------
    solution : EigenSolution or Diagonalizer
        A diagonalized model. A :class:`~sqkit.solver.Diagonalizer` that has
        not been run yet is run on first use.

    Notes
    -----
    DOS, LDOS and the spin-polarized LDOS are histograms: every eigenstate
    contributes its weight divided by the bin width to the bin that contains
    its energy. The Green's function is broadened by ``eta`` instead and is
    sampled at bin centers.
    """

    def __init__(self, solution):
        super().__init__()
        if hasattr(solution, "run"):
            solution = solution.solution if solution.solution is not None else solution.run()
        self.solution = solution
        self.model = solution.model

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.solution.eigenvalues

    @property
    def eigenvectors(self) -> np.ndarray:
        return self.solution.eigenvectors

    def _occupations(self) -> np.ndarray:
        m = self.model
        return np.asarray(
            occupation(
                m.statistics, self.eigenvalues, m.chemical_potential,
                m.k_boltzmann * m.temperature,
            ),
            dtype=float,
        )

    def _binned(self, weights) -> np.ndarray:
        """Histogram ``weights[..., n]`` over eigenvalue bins, divided by the bin width."""
        window = self._require_window()
        bins = window.bin_of(self.eigenvalues)
        inside = np.flatnonzero(bins >= 0)
        out = np.zeros(weights.shape[:-1] + (window.resolution,), dtype=weights.dtype)
        # loop in eigenvalue order keeps the summation order fixed
        for n in inside:
            out[..., bins[n]] += weights[..., n]
        return out / window.spacing

    def get_eigen_values(self) -> EigenValues:
        return EigenValues(self.eigenvalues.copy())

    def calculate_dos(self) -> DOS:
        return DOS(self._require_window(), self._binned(np.ones(len(self.eigenvalues))))

    def _site_weights(self, expansions) -> np.ndarray:
        """``sum_{i in key} |psi_n(i)|^2`` for every key, shape ``(keys, N)``."""
        vectors = self.eigenvectors
        out = np.zeros((len(expansions), vectors.shape[1]))
        for k, e in enumerate(expansions):
            for b in e.basis_indices:
                out[k] += vectors[b].real ** 2 + vectors[b].imag ** 2
        return out

    def calculate_density(self, patterns) -> Density:
        expansions = expand_patterns(self.model, patterns)
        values = self._site_weights(expansions) @ self._occupations()
        return Density([e.key for e in expansions], values)

    def calculate_ldos(self, patterns) -> LDOS:
        window = self._require_window()
        expansions = expand_patterns(self.model, patterns)
        values = self._binned(self._site_weights(expansions))
        return LDOS([e.key for e in expansions], window, values)

    def _spin_matrices(self, expansions) -> np.ndarray:
        """``sum_site psi_n(site, s) conj(psi_n(site, t))``, shape ``(keys, 2, 2, N)``."""
        vectors = self.eigenvectors
        n_states = vectors.shape[1]
        out = np.zeros((len(expansions), 2, 2, n_states), dtype=complex)
        for k, e in enumerate(expansions):
            pairs = np.array(e.spin_pairs(), dtype=np.int64)
            psi = np.zeros((2, len(pairs), n_states), dtype=complex)
            for s in range(2):
                present = pairs[:, s] >= 0
                psi[s, present] = vectors[pairs[present, s]]
            for s in range(2):
                out[k, s, s] = (psi[s].real ** 2 + psi[s].imag ** 2).sum(axis=0)
            out[k, 0, 1] = (psi[0] * psi[1].conj()).sum(axis=0)
            out[k, 1, 0] = out[k, 0, 1].conj()
        return out

    def calculate_magnetization(self, patterns) -> Magnetization:
        expansions = expand_patterns(self.model, patterns, require_spin=True)
        values = self._spin_matrices(expansions) @ self._occupations()
        return Magnetization([e.key for e in expansions], values)

    def calculate_spin_polarized_ldos(self, patterns) -> SpinPolarizedLDOS:
        window = self._require_window()
        expansions = expand_patterns(self.model, patterns, require_spin=True)
        binned = self._binned(self._spin_matrices(expansions))
        # (keys, 2, 2, bins) -> (keys, bins, 2, 2)
        values = np.ascontiguousarray(binned.transpose(0, 3, 1, 2))
        return SpinPolarizedLDOS([e.key for e in expansions], window, values)

    def calculate_wave_functions(self, patterns, states=ALL) -> WaveFunctions:
        n_states = len(self.eigenvalues)
        if states is ALL:
            states = list(range(n_states))
        else:
            states = [int(s) for s in states]
            for s in states:
                if not 0 <= s < n_states:
                    raise StateOutOfRange(f"state {s} outside [0, {n_states})")
        expansions = expand_patterns(self.model, patterns, allowed=(ALL,))
        rows = [e.basis_indices[0] for e in expansions]
        values = self.eigenvectors[np.ix_(rows, states)]
        return WaveFunctions([e.key for e in expansions], states, values)

    def calculate_greens_function(self, pairs, type=GreensFunctionType.RETARDED, eta=None):
        """Green's function from the Lehmann sum over eigenstates.

        ``G_ij(E) = sum_n psi_n(i) conj(psi_n(j)) / (E - E_n + i eta)`` for the
        retarded function; the advanced one uses ``-i eta``. ``eta`` defaults
        to the bin width. Each pair of patterns expands into the product of
        its two key lists; SUM_ALL sums the contributing amplitudes.
        """
        window = self._require_window()
        type = GreensFunctionType(type)
        eta = window.spacing if eta is None else float(eta)
        if not eta > 0:
            raise NonPositiveEta(f"eta must be positive, got {eta}")
        if type is GreensFunctionType.ADVANCED:
            eta = -eta
        vectors = self.eigenvectors

        def amplitude_sums(pattern):
            expansions = expand_patterns(self.model, [pattern], allowed=(ALL, SUM_ALL))
            return [(e.key, vectors[e.basis_indices].sum(axis=0)) for e in expansions]

        keys, weights = [], []
        for to_pattern, from_pattern in pairs:
            to_side = amplitude_sums(to_pattern)
            from_side = amplitude_sums(from_pattern)
            for ki, ui in to_side:
                for kj, uj in from_side:
                    keys.append((ki, kj))
                    weights.append(ui * uj.conj())
        weights = np.array(weights).reshape(len(keys), len(self.eigenvalues))
        resolvent = 1.0 / (
            window.energies[None, :] - self.eigenvalues[:, None] + 1j * eta
        )
        return GreensFunction(keys, window, weights @ resolvent, type, abs(eta))
