"""Dense diagonalization and forward-Euler time stepping."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionMismatch, NonHermitian, NonPositiveDt, NotConstructed
from .sparse import DEFAULT_MAX_DENSE, assemble_dense, assemble_triplets

HERMITICITY_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class EigenSolution:
    """Full spectrum of a model.

    Attributes
    ----------
    eigenvalues : (N,) ndarray
        Ascending real eigenvalues.
    eigenvectors : (N, N) ndarray
        Column ``n`` holds the amplitudes of eigenstate ``n`` over the basis.
    model : Model
        The model that was solved; used to translate physical indices.
    hbar : float
        Reduced Planck constant in the units of the model.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    model: object = None
    hbar: float = 1.0

    @property
    def basis_size(self) -> int:
        return len(self.eigenvalues)

    def with_phases(self, phases) -> "EigenSolution":
        """Copy with every eigenvector multiplied by the matching unit phase."""
        phases = np.asarray(phases)
        return EigenSolution(
            self.eigenvalues.copy(), self.eigenvectors * phases[None, :],
            self.model, self.hbar,
        )


def check_hermitian(h: np.ndarray, rtol: float = HERMITICITY_RTOL) -> None:
    deviation = np.abs(h - h.conj().T).max() if h.size else 0.0
    scale = np.linalg.norm(h)
    if deviation > rtol * scale:
        raise NonHermitian(float(deviation))


def diagonalize(model, hbar: float = 1.0, max_dimension: int = DEFAULT_MAX_DENSE) -> EigenSolution:
    """Diagonalize the Hamiltonian of a constructed model.

    The matrix must be Hermitian to within ``1e-12 * ||H||_F``. The
    eigensolver is LAPACK's Hermitian divide-and-conquer driver, so results
    are deterministic for a fixed BLAS configuration.
    """
    h = assemble_dense(model, max_dimension)
    check_hermitian(h)
    # average out round-off asymmetry so LAPACK sees an exactly Hermitian input
    h = 0.5 * (h + h.conj().T)
    energies, vectors = np.linalg.eigh(h)
    return EigenSolution(energies, vectors, model, float(hbar))


class Diagonalizer:
    """Solver object wrapping :func:`diagonalize`.

    >>> solver = Diagonalizer()            # doctest: +SKIP
    >>> solver.set_model(model)            # doctest: +SKIP
    >>> solution = solver.run()            # doctest: +SKIP
    """

    def __init__(self, model=None, hbar: float = 1.0, max_dimension: int = DEFAULT_MAX_DENSE):
        self.model = model
        self.hbar = hbar
        self.max_dimension = max_dimension
        self.solution: Optional[EigenSolution] = None

    def set_model(self, model):
        self.model = model
        self.solution = None

    def run(self) -> EigenSolution:
        if self.model is None:
            raise NotConstructed("no model set")
        self.solution = diagonalize(self.model, self.hbar, self.max_dimension)
        return self.solution


def apply_hamiltonian(model, state: np.ndarray) -> np.ndarray:
    """``H @ state`` from freshly assembled triplets (no dense matrix)."""
    t = assemble_triplets(model)
    state = np.asarray(state, dtype=complex)
    if state.shape != (t.dimension,):
        raise DimensionMismatch(
            f"state has shape {state.shape}, basis size is {t.dimension}"
        )
    contrib = t.values * state[t.cols]
    out = np.zeros(t.dimension, dtype=complex)
    np.add.at(out, t.rows, contrib)
    return out


def evolve_step(model, state, dt: float, hbar: float = 1.0, renormalize: bool = False) -> np.ndarray:
    """One forward-Euler step ``(1 - i dt H / hbar) |psi>``.

    This is the plain finite-difference update: it is not unitary and the
    norm drifts by O(dt^2) per step unless ``renormalize`` is set.
    Evaluator-backed amplitudes are re-evaluated on every call, so a
    time-dependent Hamiltonian can be stepped by updating its parameters
    between calls.
    """
    if not dt > 0:
        raise NonPositiveDt(f"dt must be positive, got {dt}")
    state = np.asarray(state, dtype=complex)
    out = state - (1j * dt / hbar) * apply_hamiltonian(model, state)
    if renormalize:
        out /= np.linalg.norm(out)
    return out
