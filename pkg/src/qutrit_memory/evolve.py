"""Time-sliced unitary propagation and instantaneous spectra.

The anneal is discretized into N = total_time/dt slices. N+1 propagator
factors are applied, one per schedule position s = l/N for l = 0..N, the
earliest time acting on the state first. Each factor is the exact
exponential of the frozen Hamiltonian of its slice, computed by Hermitian
eigendecomposition, so every step is unitary to rounding and the state
norm is monitored rather than renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra, hamiltonian
from .errors import NumericalError, ValidationError

NORM_ABORT = 1e-6
UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class EvolutionResult:
    final_state: np.ndarray
    checkpoints: tuple[tuple[float, np.ndarray], ...]
    norm_drift: float


@dataclass(frozen=True)
class SpectrumTrace:
    """Eigenvalues of the instantaneous Hamiltonian on a time grid.

    levels[i] holds all 3**n eigenvalues at times[i], sorted ascending.
    """

    times: np.ndarray
    levels: np.ndarray


def step_propagator(h_matrix: np.ndarray, dt: float) -> np.ndarray:
    """Unitary exp(-i dt H) of a Hermitian H via eigendecomposition."""
    if not algebra.is_hermitian(h_matrix):
        raise ValidationError("step_propagator requires a Hermitian matrix")
    evals, evecs = np.linalg.eigh(h_matrix)
    return (evecs * np.exp(-1j * dt * evals)) @ evecs.conj().T


def propagate_schedule(
    hamiltonian_of_s: Callable[[float], np.ndarray],
    state: np.ndarray,
    n_steps: int,
    dt: float,
    checkpoint_stride: int = 0,
) -> EvolutionResult:
    """Apply the N+1 slice propagators of a schedule to `state`.

    `hamiltonian_of_s` maps the dimensionless position s in [0, 1] to the
    frozen Hamiltonian of that slice. Aborts if the norm drifts beyond
    NORM_ABORT, which signals a broken propagator.
    """
    psi = np.asarray(state, dtype=complex).copy()
    checkpoints: list[tuple[float, np.ndarray]] = []
    drift = abs(np.linalg.norm(psi) - 1.0)
    for step in range(n_steps + 1):
        u = step_propagator(hamiltonian_of_s(step / n_steps), dt)
        psi = u @ psi
        drift = max(drift, abs(np.linalg.norm(psi) - 1.0))
        if drift > NORM_ABORT:
            raise NumericalError(f"norm drifted by {drift:.3e} at slice {step}")
        if checkpoint_stride and (step + 1) % checkpoint_stride == 0:
            checkpoints.append((step * dt, psi.copy()))
    return EvolutionResult(
        final_state=psi, checkpoints=tuple(checkpoints), norm_drift=drift
    )


def anneal(spec: hamiltonian.AnnealSpec, checkpoint_stride: int = 0) -> EvolutionResult:
    """Run the full anneal from the transverse-field ground state."""
    pieces = hamiltonian.schedule_pieces(spec)
    return propagate_schedule(
        lambda s: hamiltonian.compose_at(pieces, s),
        hamiltonian.initial_state(spec.n_sites),
        spec.n_steps,
        spec.dt,
        checkpoint_stride,
    )


def pattern_probability(state: np.ndarray, pattern) -> float:
    """Probability of reading out `pattern` from `state`."""
    p = algebra.validate_pattern(pattern)
    if 3 ** len(p) != state.shape[0]:
        raise ValidationError(
            f"pattern {p} does not address a state of dimension {state.shape[0]}"
        )
    # same ufunc as basis_probabilities, so the two paths agree bitwise
    return float(np.abs(state[algebra.basis_index(p)]) ** 2)


def basis_probabilities(state: np.ndarray) -> np.ndarray:
    """All 3**n readout probabilities, indexed by basis_index."""
    return np.abs(np.asarray(state)) ** 2


def instantaneous_spectrum(
    spec: hamiltonian.AnnealSpec, samples: int = 301
) -> SpectrumTrace:
    """Eigenvalues of the schedule Hamiltonian at equally spaced times."""
    if samples < 2:
        raise ValidationError("need at least two sample times")
    pieces = hamiltonian.schedule_pieces(spec)
    times = np.linspace(0.0, spec.total_time, samples)
    levels = np.empty((samples, spec.memory.dim))
    for i, t in enumerate(times):
        levels[i] = np.linalg.eigvalsh(
            hamiltonian.compose_at(pieces, t / spec.total_time)
        )
    return SpectrumTrace(times=times, levels=levels)
