"""Register Hamiltonians for pattern storage and their annealing schedule.

The memory Hamiltonian is a negative sum of projectors onto the stored
patterns, so its ground manifold encodes the memory. The anneal
interpolates from a transverse-field Hamiltonian, whose ground state is
easy to prepare, to the memory Hamiltonian plus an optional hint term that
biases recall toward a probe pattern. An auxiliary Hamiltonian coupling
the stored patterns pairwise can be blended in to equalize the recalled
superposition, either permanently or switched off toward the end.

The storage, hint and coupling builders construct their matrices twice,
once from spin-operator products and once from direct outer products, and
verify the two agree; the outer-product form is returned.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import algebra
from .algebra import Pattern
from .errors import NumericalError, ValidationError

CONSTRUCTION_TOL = 1e-12


@dataclass(frozen=True)
class MemorySet:
    """A set of distinct patterns of common length to store."""

    patterns: tuple[Pattern, ...]

    def __post_init__(self):
        pats = tuple(algebra.validate_pattern(p) for p in self.patterns)
        if not pats:
            raise ValidationError("memory must contain at least one pattern")
        n = len(pats[0])
        for p in pats:
            if len(p) != n:
                raise ValidationError(f"pattern {p} has length {len(p)}, expected {n}")
        if len(set(pats)) != len(pats):
            raise ValidationError("stored patterns must be distinct")
        object.__setattr__(self, "patterns", pats)

    @property
    def n_sites(self) -> int:
        return len(self.patterns[0])

    @property
    def n_patterns(self) -> int:
        return len(self.patterns)

    @property
    def dim(self) -> int:
        return 3**self.n_sites


class Schedule(enum.Enum):
    """How the Hamiltonian interpolates over the anneal.

    PLAIN:          (1-s) H_field + s H_target
    SWITCHED_HELP:  adds s(1-s) * help_scale * H_help, vanishing at both ends
    PERMANENT_HELP: folds help_scale * H_help into the target itself
    """

    PLAIN = "plain"
    SWITCHED_HELP = "switched_help"
    PERMANENT_HELP = "permanent_help"


@dataclass(frozen=True)
class AnnealSpec:
    """Complete description of one annealing run.

    gamma scales the probe (hint) projector; field_h the initial transverse
    field; memory_scale and help_scale allow the equal-superposition target
    (memory_scale = help_scale = 1/3) and related variants.
    """

    memory: MemorySet
    probe: Pattern | None = None
    gamma: float = 0.0
    field_h: float = 2.0
    total_time: float = 300.0
    dt: float = 0.1
    schedule: Schedule = Schedule.PLAIN
    help_scale: float = 1.0
    memory_scale: float = 1.0

    def __post_init__(self):
        if self.field_h <= 0:
            raise ValidationError("field_h must be positive")
        if self.total_time <= 0 or self.dt <= 0:
            raise ValidationError("total_time and dt must be positive")
        if self.help_scale < 0:
            raise ValidationError("help_scale must be non-negative")
        if self.probe is not None:
            object.__setattr__(
                self, "probe", algebra.validate_pattern(self.probe, self.memory.n_sites)
            )
        else:
            # no probe means no hint term
            object.__setattr__(self, "gamma", 0.0)

    @property
    def n_sites(self) -> int:
        return self.memory.n_sites

    @property
    def n_steps(self) -> int:
        """Number of time slices N = total_time / dt, rounded if inexact."""
        ratio = self.total_time / self.dt
        n = round(ratio)
        if abs(n - ratio) > 1e-9:
            warnings.warn(
                f"total_time/dt = {ratio} is not an integer; rounding to {n} slices",
                stacklevel=2,
            )
        if n < 1:
            raise ValidationError("total_time/dt must round to at least one slice")
        return n

    def with_gamma(self, gamma: float) -> "AnnealSpec":
        return replace(self, gamma=gamma)


def _check_equal(direct: np.ndarray, from_spin_ops: np.ndarray, what: str) -> np.ndarray:
    diff = np.abs(direct - from_spin_ops).max()
    if diff > CONSTRUCTION_TOL:
        raise NumericalError(
            f"{what}: spin-operator and outer-product constructions differ by {diff:.3e}"
        )
    return direct


def _site_transition(bra: int, ket: int) -> np.ndarray:
    if bra == ket:
        return algebra.diag_projector(bra)
    return algebra.offdiag_projector(bra, ket)


def _pair_coupling(bra_pattern: Pattern, ket_pattern: Pattern) -> np.ndarray:
    """|bra_pattern><ket_pattern| as a tensor product of per-site spin-operator products."""
    out = np.array([[1.0 + 0j]])
    for b, k in zip(bra_pattern, ket_pattern):
        out = np.kron(out, _site_transition(b, k))
    return out


def build_memory(memory: MemorySet) -> np.ndarray:
    """Memory Hamiltonian: -1 on the diagonal at each stored pattern's index."""
    direct = np.zeros((memory.dim, memory.dim), dtype=complex)
    for p in memory.patterns:
        direct[algebra.basis_index(p), algebra.basis_index(p)] = -1.0
    from_ops = -sum(algebra.pattern_projector(p) for p in memory.patterns)
    return _check_equal(direct, from_ops, "memory Hamiltonian")


def build_field(h: float, n: int) -> np.ndarray:
    """Transverse-field Hamiltonian -h * sum_i Sx_i on n sites."""
    if h <= 0:
        raise ValidationError("field strength h must be positive")
    sx, _, _ = algebra.spin_operators()
    out = np.zeros((3**n, 3**n), dtype=complex)
    for site in range(1, n + 1):
        out -= h * algebra.embed_site(sx, site, n)
    return out


def initial_state(n: int) -> np.ndarray:
    """Ground state of the transverse field: n-fold product of (1, sqrt2, 1)/2."""
    if n < 1:
        raise ValidationError("register needs at least one site")
    site = np.array([0.5, math.sqrt(2.0) / 2.0, 0.5], dtype=complex)
    state = np.array([1.0 + 0j])
    for _ in range(n):
        state = np.kron(state, site)
    return state


def build_probe(pattern: Sequence[int]) -> np.ndarray:
    """Hint Hamiltonian: minus the projector onto the probe pattern (unscaled)."""
    p = algebra.validate_pattern(pattern)
    dim = 3 ** len(p)
    direct = np.zeros((dim, dim), dtype=complex)
    direct[algebra.basis_index(p), algebra.basis_index(p)] = -1.0
    return _check_equal(direct, -algebra.pattern_projector(p), "probe Hamiltonian")


def build_help(memory: MemorySet) -> np.ndarray:
    """Auxiliary Hamiltonian: -1 couplings between every ordered pair of stored patterns.

    Off-diagonal only; together with the memory Hamiltonian (both scaled by
    1/p) it reproduces the rank-1 equal-superposition Hamiltonian.
    """
    if memory.n_patterns < 2:
        raise ValidationError("auxiliary Hamiltonian needs at least two stored patterns")
    direct = np.zeros((memory.dim, memory.dim), dtype=complex)
    from_ops = np.zeros_like(direct)
    for mu in memory.patterns:
        for nu in memory.patterns:
            if mu == nu:
                continue
            direct[algebra.basis_index(mu), algebra.basis_index(nu)] = -1.0
            from_ops -= _pair_coupling(mu, nu)
    return _check_equal(direct, from_ops, "auxiliary Hamiltonian")


def build_equal_memory(memory: MemorySet) -> np.ndarray:
    """Rank-1 Hamiltonian -|Psi><Psi| for the equal superposition of stored patterns."""
    amp = np.zeros(memory.dim, dtype=complex)
    for p in memory.patterns:
        amp[algebra.basis_index(p)] = 1.0 / math.sqrt(memory.n_patterns)
    return -np.outer(amp, amp.conj())


def problem_hamiltonian(spec: AnnealSpec) -> np.ndarray:
    """Target of the anneal: scaled memory plus hint (plus permanent help)."""
    h_p = spec.memory_scale * build_memory(spec.memory)
    if spec.probe is not None and spec.gamma != 0.0:
        h_p = h_p + spec.gamma * build_probe(spec.probe)
    if spec.schedule is Schedule.PERMANENT_HELP:
        h_p = h_p + spec.help_scale * build_help(spec.memory)
    return h_p


@dataclass(frozen=True)
class SchedulePieces:
    """Prebuilt constituents of the time-dependent Hamiltonian."""

    field: np.ndarray
    problem: np.ndarray
    switched_help: np.ndarray | None = None


def schedule_pieces(spec: AnnealSpec) -> SchedulePieces:
    """Build the constant matrices the schedule interpolates between."""
    helper = None
    if spec.schedule is Schedule.SWITCHED_HELP:
        helper = spec.help_scale * build_help(spec.memory)
    return SchedulePieces(
        field=build_field(spec.field_h, spec.n_sites),
        problem=problem_hamiltonian(spec),
        switched_help=helper,
    )


def compose_at(pieces: SchedulePieces, s: float) -> np.ndarray:
    """Hamiltonian at dimensionless schedule position s = t / total_time."""
    out = (1 - s) * pieces.field + s * pieces.problem
    if pieces.switched_help is not None:
        out = out + s * (1 - s) * pieces.switched_help
    return out


def hamiltonian_at(spec: AnnealSpec, t: float) -> np.ndarray:
    """Instantaneous Hamiltonian at time t in [0, total_time]."""
    if not 0 <= t <= spec.total_time:
        raise ValidationError(f"t = {t} outside [0, {spec.total_time}]")
    return compose_at(schedule_pieces(spec), t / spec.total_time)
