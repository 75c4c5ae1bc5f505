"""Closed-form predictions for recall probabilities, independent of the simulator.

Near the end of the sweep the stored patterns of the canonical two-qutrit
memory {(0,1), (1,0), (-1,-1)} become degenerate, the gap to the remaining
levels stays of order one, and the dynamics reduces to three dressed
levels. The patterns (0,1) and (1,0) share dressed neighbours and mix, so
the natural basis is their symmetric and antisymmetric combinations plus
the remaining "lone" state (-1,-1), which follows its own path. This
module implements that reduction: the dressing coefficients, the 3x3
effective Hamiltonian with optional hint terms, direct integration of the
reduced amplitudes, and the closed-form scaling laws that follow from it.

The final-stage transition amplitude is governed by phase integrals of the
form int_0^zmax exp(-iz) z^p dz. Conventions: overall phase factors are
dropped and every prediction is a modulus squared, so the kernel sign only
fixes signs of intermediate imaginary parts.

Derived scaling results, with omega = ((5/6) T h^2)^(1/3):

  lone-state probability at zero hint:   A (h/T)^(2/3)
  hinted pair probability:               (1 + 2 gamma K_pair (T/h)^(2/3)) / 2
  hinted lone probability:               A (h/T)^(2/3) (1 + 2 gamma K_lone (T/h)^(2/3))

where A = (6/5)^(8/3) |I(1/3, zmax)|^2 / 4 evaluates to 1.22 for
|I|^2 = 3, K_pair = Gamma(1/3) (3/4)^(1/3) / 12 = 0.203, and K_lone
relates to the reduced-units slope 0.5 by K_lone = 0.5 (6/5)^(1/3) = 0.53.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import gamma as gamma_function

from .errors import NumericalError, ValidationError

SQRT2 = math.sqrt(2.0)

QUADRATURE_TOL = 1e-8
REDUCED_STEP_TOL = 1e-4

VALIDATED_H_RANGE = (0.5, 4.0)
VALIDATED_T_RANGE = (100.0, 400.0)
SMALL_GAMMA_LIMIT = 0.05


class OutOfWindowError(ValidationError):
    """The dressed three-level basis is only valid while 3 c2^2 <= 1."""


@dataclass(frozen=True)
class Constants:
    """Printed constants of the closed-form laws.

    scaling_prefactor is treated as authoritative; prefactor_from_integral
    reports the value implied by the phase integral at a given cutoff
    alongside it, without asserting equality.
    """

    scaling_prefactor: float = 1.22
    paired_slope: float = 0.203
    lone_slope: float = 0.53
    reduced_slope: float = 0.5
    phase_cutoff: float = 3.0


CONSTANTS = Constants()


class HintTarget(enum.Enum):
    NONE = "none"
    PAIRED = "paired"  # hint on one of the two mixing patterns
    LONE = "lone"  # hint on the lone pattern


@dataclass(frozen=True)
class MixingCoefficients:
    """Dressing weights of the three near-degenerate levels."""

    c1: float
    c2: float
    c3: float


@dataclass(frozen=True)
class ReducedAmplitudes:
    """Amplitudes in the (symmetric, antisymmetric, lone) dressed basis."""

    a_sym: complex
    a_anti: complex
    a_lone: complex

    @property
    def total(self) -> float:
        return abs(self.a_sym) ** 2 + abs(self.a_anti) ** 2 + abs(self.a_lone) ** 2


def mixing_coefficients(h: float, total_time: float, t: float) -> MixingCoefficients:
    """Dressing coefficients at time t; c2 = (h/sqrt2)(1 - t/T)."""
    if not 0 <= t <= total_time:
        raise ValidationError(f"t = {t} outside [0, {total_time}]")
    c2 = (h / SQRT2) * (1.0 - t / total_time)
    if 3 * c2**2 > 1.0:
        raise OutOfWindowError(
            f"3 c2^2 = {3 * c2**2:.4f} > 1 at t = {t}; dressed basis invalid"
        )
    return MixingCoefficients(
        c1=math.sqrt(1.0 - 3 * c2**2), c2=c2, c3=math.sqrt(1.0 - 2 * c2**2)
    )


def effective_hamiltonian(
    h: float,
    total_time: float,
    t: float,
    gamma: float = 0.0,
    hint: HintTarget = HintTarget.NONE,
) -> np.ndarray:
    """3x3 Hamiltonian of the reduced dynamics in the (sym, anti, lone) basis.

    Without a hint the antisymmetric level is exactly decoupled. A hint on
    the lone pattern shifts its diagonal entry by -gamma; a hint on one of
    the paired patterns contributes -gamma/2 on the paired block,
    including the sym/anti coupling that populates the antisymmetric level.
    """
    c = mixing_coefficients(h, total_time, t)
    s = t / total_time
    coupling = -3 * SQRT2 * c.c2**3
    out = np.array(
        [
            [-s - 7 * c.c2**2, 0.0, coupling],
            [0.0, -s + c.c2**2, 0.0],
            [coupling, 0.0, -s - 2 * c.c2**2],
        ],
        dtype=complex,
    )
    if hint is HintTarget.LONE:
        out[2, 2] -= gamma
    elif hint is HintTarget.PAIRED:
        out[0, 0] -= gamma / 2
        out[1, 1] -= gamma / 2
        out[0, 1] -= gamma / 2
        out[1, 0] -= gamma / 2
    return out


def stored_basis_hamiltonian(h: float, total_time: float, t: float) -> np.ndarray:
    """Reduced Hamiltonian in the dressed stored-pattern basis.

    This is the matrix before rotating the two mixing patterns into their
    symmetric/antisymmetric combinations. Rotating it reproduces
    effective_hamiltonian up to contributions beyond the leading orders in
    c2 that the rotated form retains.
    """
    c = mixing_coefficients(h, total_time, t)
    s = t / total_time
    pair_diag = -c.c1**2 * s - 6 * c.c1 * c.c2**2
    pair_mix = -4 * c.c1 * c.c2**2
    cross = -3 * c.c2**3
    lone_diag = -c.c3**2 * s - 4 * c.c2**2 * c.c3
    return np.array(
        [
            [pair_diag, pair_mix, cross],
            [pair_mix, pair_diag, cross],
            [cross, cross, lone_diag],
        ],
        dtype=complex,
    )


PAIR_ROTATION = np.array(
    [[1.0, 1.0, 0.0], [1.0, -1.0, 0.0], [0.0, 0.0, SQRT2]]
) / SQRT2


def phase_frequency(h: float, total_time: float) -> float:
    """Frequency scale omega = ((5/6) T h^2)^(1/3) of the final-stage phase."""
    return ((5.0 / 6.0) * total_time * h * h) ** (1.0 / 3.0)


def crossover_time(
    h: float, total_time: float, z_cutoff: float | None = None
) -> float:
    """Time t_d where adiabatic following gives way to diabatic transitions.

    Parameterized through the phase-integral cutoff: (x_d omega)^3 = z_cutoff
    with x_d = 1 - t_d/T.
    """
    if z_cutoff is None:
        z_cutoff = CONSTANTS.phase_cutoff
    if z_cutoff < 0:
        raise ValidationError("z_cutoff must be non-negative")
    omega = phase_frequency(h, total_time)
    if omega <= 0:
        raise ValidationError("phase frequency vanishes; need h > 0 and T > 0")
    x_d = z_cutoff ** (1.0 / 3.0) / omega
    if x_d > 1:
        raise OutOfWindowError(
            f"crossover fraction x_d = {x_d:.3f} exceeds 1; sweep too fast for the reduction"
        )
    return total_time * (1.0 - x_d)


def _rk4(rhs, y: np.ndarray, t0: float, t1: float, n_steps: int) -> np.ndarray:
    dt = (t1 - t0) / n_steps
    for i in range(n_steps):
        t = t0 + i * dt
        # rounding must not push evaluation points past the window edge
        t_mid = min(t + dt / 2, t1)
        t_end = min(t + dt, t1)
        k1 = rhs(t, y)
        k2 = rhs(t_mid, y + dt / 2 * k1)
        k3 = rhs(t_mid, y + dt / 2 * k2)
        k4 = rhs(t_end, y + dt * k3)
        y = y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def reduced_evolution(
    h: float,
    total_time: float,
    gamma: float = 0.0,
    hint: HintTarget = HintTarget.NONE,
    start_time: float | None = None,
    step: float = 0.01,
    z_cutoff: float | None = None,
) -> ReducedAmplitudes:
    """Integrate the reduced dynamics from the crossover time to the end.

    Starts fully in the symmetric level at t = start_time (default: the
    crossover time for the given cutoff) and integrates the Schrodinger
    equation of the effective Hamiltonian with fixed-step RK4. The result
    is cross-checked at half the step; disagreement in the lone-state
    probability beyond REDUCED_STEP_TOL raises NumericalError.
    """
    if start_time is None:
        start_time = crossover_time(h, total_time, z_cutoff)
    if not 0 <= start_time <= total_time:
        raise ValidationError(f"start_time {start_time} outside [0, {total_time}]")
    y0 = np.array([1.0 + 0j, 0.0 + 0j, 0.0 + 0j])
    if start_time == total_time:
        return ReducedAmplitudes(*y0)
    # window validity at the earliest (largest-c2) point
    mixing_coefficients(h, total_time, start_time)

    def rhs(t, y):
        return -1j * effective_hamiltonian(h, total_time, t, gamma, hint) @ y

    n = max(1, math.ceil((total_time - start_time) / step))
    coarse = _rk4(rhs, y0, start_time, total_time, n)
    fine = _rk4(rhs, y0, start_time, total_time, 2 * n)
    if abs(abs(coarse[2]) ** 2 - abs(fine[2]) ** 2) > REDUCED_STEP_TOL:
        raise NumericalError(
            "reduced dynamics not converged; halving the step moved the "
            f"lone-state probability by more than {REDUCED_STEP_TOL}"
        )
    return ReducedAmplitudes(*fine)


def _warn_outside_validated(h: float, total_time: float) -> None:
    if not VALIDATED_H_RANGE[0] <= h <= VALIDATED_H_RANGE[1]:
        warnings.warn(
            f"h = {h} outside validated range {VALIDATED_H_RANGE}", stacklevel=3
        )
    if not VALIDATED_T_RANGE[0] <= total_time <= VALIDATED_T_RANGE[1]:
        warnings.warn(
            f"T = {total_time} outside validated range {VALIDATED_T_RANGE}", stacklevel=3
        )


def _warn_large_gamma(gamma: float) -> None:
    if gamma > SMALL_GAMMA_LIMIT:
        warnings.warn(
            f"gamma = {gamma} beyond the small-hint regime (< {SMALL_GAMMA_LIMIT})",
            stacklevel=3,
        )


def lone_probability(
    h: float, total_time: float, constants: Constants = CONSTANTS
) -> float:
    """Zero-hint probability of the lone stored state: A (h/T)^(2/3)."""
    _warn_outside_validated(h, total_time)
    return constants.scaling_prefactor * (h / total_time) ** (2.0 / 3.0)


def paired_hint_slope(
    h: float, total_time: float, constants: Constants = CONSTANTS
) -> float:
    """d/dgamma of the hinted pair probability at gamma -> 0."""
    return constants.paired_slope * (total_time / h) ** (2.0 / 3.0)


def paired_hint_probability(
    h: float, total_time: float, gamma: float, constants: Constants = CONSTANTS
) -> float:
    """Probability of a paired stored state when it is hinted."""
    _warn_large_gamma(gamma)
    return (1.0 + 2.0 * gamma * paired_hint_slope(h, total_time, constants)) / 2.0


def lone_hint_slope(
    h: float,
    total_time: float,
    lone_zero: float | None = None,
    constants: Constants = CONSTANTS,
) -> float:
    """d/dgamma of the hinted lone-state probability at gamma -> 0.

    The slope is proportional to the zero-hint probability; by default the
    closed-form value is used, but a measured baseline can be supplied.
    """
    if lone_zero is None:
        lone_zero = lone_probability(h, total_time, constants)
    return 2.0 * constants.lone_slope * (total_time / h) ** (2.0 / 3.0) * lone_zero


def lone_hint_probability(
    h: float, total_time: float, gamma: float, constants: Constants = CONSTANTS
) -> float:
    """Probability of the lone stored state when it is hinted."""
    _warn_large_gamma(gamma)
    return lone_probability(h, total_time, constants) + gamma * lone_hint_slope(
        h, total_time, constants=constants
    )


_ALLOWED_POWERS = (1.0 / 3.0, 2.0 / 3.0, -2.0 / 3.0)


def oscillatory_integral(power: float, z_max: float) -> complex:
    """Phase integral int_0^z_max exp(-iz) z^power dz.

    Supports the three powers arising in the reduction. For power = -2/3
    the infinite-cutoff limit is analytic: Gamma(1/3) (sqrt(3)/2 - i/2).
    """
    if not any(abs(power - p) < 1e-12 for p in _ALLOWED_POWERS):
        raise ValidationError(f"unsupported integrand power {power}")
    if z_max < 0:
        raise ValidationError("z_max must be non-negative")
    if math.isinf(z_max):
        if abs(power + 2.0 / 3.0) > 1e-12:
            raise ValidationError("infinite cutoff only supported for power -2/3")
        return gamma_function(1.0 / 3.0) * complex(math.sqrt(3.0) / 2.0, -0.5)
    if z_max == 0:
        return 0.0 + 0.0j
    re, re_err = integrate.quad(
        lambda z: math.cos(z) * z**power, 0.0, z_max,
        epsabs=1e-12, epsrel=1e-12, limit=500,
    )
    im, im_err = integrate.quad(
        lambda z: -math.sin(z) * z**power, 0.0, z_max,
        epsabs=1e-12, epsrel=1e-12, limit=500,
    )
    if max(re_err, im_err) > QUADRATURE_TOL:
        raise NumericalError(
            f"phase integral did not converge: error estimate {max(re_err, im_err):.2e}"
        )
    return complex(re, im)


def prefactor_from_integral(z_cutoff: float | None = None) -> float:
    """Scaling prefactor implied by the phase integral: (6/5)^(8/3) |I|^2 / 4.

    Reported alongside the printed 1.22; equals it when |I|^2 = 3.
    """
    if z_cutoff is None:
        z_cutoff = CONSTANTS.phase_cutoff
    value = oscillatory_integral(1.0 / 3.0, z_cutoff)
    return (6.0 / 5.0) ** (8.0 / 3.0) * abs(value) ** 2 / 4.0


def reconstructed_paired_slope() -> float:
    """Paired-hint slope constant from the infinite phase integral.

    |int_0^inf exp(-iz) z^(-2/3) dz| (3/4)^(1/3) / 12 = 0.203.
    """
    modulus = abs(oscillatory_integral(-2.0 / 3.0, math.inf))
    return modulus * (3.0 / 4.0) ** (1.0 / 3.0) / 12.0


def reconstructed_lone_slope(constants: Constants = CONSTANTS) -> float:
    """Lone-hint slope constant from the reduced-units slope: 0.5 (6/5)^(1/3) = 0.53."""
    return constants.reduced_slope * (6.0 / 5.0) ** (1.0 / 3.0)
