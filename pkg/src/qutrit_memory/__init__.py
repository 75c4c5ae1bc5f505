"""Associative memory on spin-1 (qutrit) registers via simulated quantum annealing.

Patterns of three-valued spins are stored in the degenerate ground manifold
of a projector Hamiltonian and recalled by slowly sweeping from a
transverse field, optionally biased toward a probe pattern. The package
simulates the sweep exactly on small registers and cross-checks the recall
probabilities against closed-form perturbative predictions.
"""

from .algebra import (
    TRIT_VALUES,
    basis_index,
    diag_projector,
    embed_site,
    is_hermitian,
    ladder_operators,
    offdiag_projector,
    pattern_from_index,
    pattern_projector,
    spin_operators,
)
from .analysis import (
    DEFAULT_GAMMA_GRID,
    THREE_QUTRIT_MEMORY,
    THREE_QUTRIT_PROBE,
    TWO_QUTRIT_MEMORY,
    ScalingFit,
    ScheduleComparison,
    SlopeEstimate,
    SweepTable,
    compare_schedules,
    gamma_sweep,
    ground_state_crossover,
    scaling_scan,
    slope_at_zero,
    sweep,
    three_qutrit_demo,
)
from .errors import NumericalError, ValidationError
from .evolve import (
    EvolutionResult,
    SpectrumTrace,
    anneal,
    basis_probabilities,
    instantaneous_spectrum,
    pattern_probability,
    step_propagator,
)
from .hamiltonian import (
    AnnealSpec,
    MemorySet,
    Schedule,
    build_equal_memory,
    build_field,
    build_help,
    build_memory,
    build_probe,
    hamiltonian_at,
    initial_state,
)

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
