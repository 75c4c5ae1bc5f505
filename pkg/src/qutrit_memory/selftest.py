"""Built-in acceptance checks, runnable from the CLI (`selftest`) and reused
by the test suite. Each check carries a one-line verdict with the measured
numbers so failures are diagnosable from the output alone.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import algebra, analysis, evolve, hamiltonian, theory
from .analysis import THREE_QUTRIT_MEMORY, THREE_QUTRIT_PROBE, TWO_QUTRIT_MEMORY
from .hamiltonian import AnnealSpec, Schedule

CANONICAL = AnnealSpec(memory=TWO_QUTRIT_MEMORY, field_h=2.0, total_time=300.0, dt=0.1)

LONE = (-1, -1)
PAIRED = (0, 1)


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.criterion} {self.name}: {verdict} [{self.detail}]"


def check_scaling_law(jobs: int = 1) -> CheckResult:
    """Pooled log-log fit of the lone-state probability over the full grid."""
    fit = analysis.scaling_scan((0.5, 1.0, 2.0, 4.0), (100.0, 200.0, 300.0, 400.0), jobs=jobs)
    exp_ok = abs(fit.exponent - 2.0 / 3.0) <= 0.1
    pre_ok = abs(fit.prefactor - 1.22) <= 0.25 * 1.22
    return CheckResult(
        1,
        "scaling_law",
        exp_ok and pre_ok,
        f"exponent={fit.exponent:.4f} (want 0.6667+-0.1), "
        f"prefactor={fit.prefactor:.4f} (want 1.22+-25%)",
    )


def check_residual_split() -> CheckResult:
    """The two paired patterns share the residual probability equally."""
    state = evolve.anneal(CANONICAL).final_state
    p01 = evolve.pattern_probability(state, (0, 1))
    p10 = evolve.pattern_probability(state, (1, 0))
    p_lone = evolve.pattern_probability(state, LONE)
    split = (1.0 - p_lone) / 2.0
    pair_diff = abs(p01 - p10)
    split_diff = max(abs(p01 - split), abs(p10 - split))
    ok = pair_diff < 1e-3 and split_diff < 1e-3
    return CheckResult(
        2,
        "residual_split",
        ok,
        f"|P01-P10|={pair_diff:.2e}, |P-(1-Plone)/2|={split_diff:.2e} (want <1e-3)",
    )


def _slope_pair(h: float, total_time: float) -> tuple[float, float, float, float]:
    """Measured and predicted hint slopes for the paired and lone probes."""
    spec = replace(CANONICAL, field_h=h, total_time=total_time)
    meas_paired = analysis.slope_at_zero(replace(spec, probe=PAIRED), PAIRED).value
    meas_lone = analysis.slope_at_zero(replace(spec, probe=LONE), LONE).value
    lone_zero = evolve.pattern_probability(evolve.anneal(spec).final_state, LONE)
    pred_paired = theory.paired_hint_slope(h, total_time)
    pred_lone = theory.lone_hint_slope(h, total_time, lone_zero=lone_zero)
    return meas_paired, pred_paired, meas_lone, pred_lone


def check_hint_slopes() -> CheckResult:
    """Finite-difference hint slopes against the closed-form predictions.

    The lone-state prediction is anchored to the measured zero-hint
    probability, which is what its closed form is proportional to.
    """
    worst = 0.0
    details = []
    for h, total_time in ((2.0, 300.0), (1.0, 200.0), (2.0, 200.0), (4.0, 200.0)):
        mp, pp, ml, pl = _slope_pair(h, total_time)
        for tag, meas, pred in (("paired", mp, pp), ("lone", ml, pl)):
            rel = abs(meas / pred - 1.0)
            worst = max(worst, rel)
            details.append(f"h={h:g},T={total_time:g},{tag}: {meas:.3f}/{pred:.3f}")
    return CheckResult(
        3,
        "hint_slopes",
        worst <= 0.30,
        f"worst relative error {worst:.3f} (want <=0.30); " + "; ".join(details),
    )


def check_constant_reconstructions() -> CheckResult:
    """Slope constants rebuilt from the phase integrals match the printed values."""
    k_pair = theory.reconstructed_paired_slope()
    k_lone = theory.reconstructed_lone_slope()
    ok = abs(k_pair - 0.203) < 1e-3 and abs(k_lone - 0.53) < 1e-2
    return CheckResult(
        4,
        "constant_reconstructions",
        ok,
        f"paired={k_pair:.5f} (want 0.203+-1e-3), lone={k_lone:.5f} (want 0.53+-1e-2)",
    )


def check_degeneracy_structure() -> CheckResult:
    """Three-fold ground degeneracy opens only at the very end of the sweep."""
    trace = evolve.instantaneous_spectrum(CANONICAL, samples=301)
    final = trace.levels[-1]
    low_gap_final = final[2] - final[0]
    fourth_gap = final[3] - final[2]
    low_gaps = trace.levels[:, 2] - trace.levels[:, 0]
    ok = (
        low_gap_final < 1e-12
        and abs(fourth_gap - 1.0) < 1e-12
        and int(np.argmin(low_gaps)) == len(low_gaps) - 1
        and low_gaps[:-1].min() > 0
    )
    return CheckResult(
        5,
        "degeneracy_structure",
        ok,
        f"E3-E1(T)={low_gap_final:.2e}, E4-E3(T)={fourth_gap:.12f}, "
        f"gap minimum at sample {int(np.argmin(low_gaps))}/{len(low_gaps) - 1}",
    )


def check_equalization() -> CheckResult:
    """Switched help narrows the stored-probability spread; the permanent
    equal-superposition target recalls each pattern at ~1/3."""
    comparison = analysis.compare_schedules(
        TWO_QUTRIT_MEMORY, PAIRED, gammas=(0.0,)
    )
    spread_ok = comparison.spread_switched < comparison.spread_plain

    equal_target = replace(
        CANONICAL,
        schedule=Schedule.PERMANENT_HELP,
        memory_scale=1.0 / 3.0,
        help_scale=1.0 / 3.0,
    )
    state = evolve.anneal(equal_target).final_state
    probs = [
        evolve.pattern_probability(state, p) for p in TWO_QUTRIT_MEMORY.patterns
    ]
    worst = max(abs(p - 1.0 / 3.0) for p in probs)

    # oracle: the rank-1 target's exact ground state is the equal superposition
    evals, evecs = np.linalg.eigh(hamiltonian.build_equal_memory(TWO_QUTRIT_MEMORY))
    equal_amp = np.zeros(TWO_QUTRIT_MEMORY.dim, dtype=complex)
    for p in TWO_QUTRIT_MEMORY.patterns:
        equal_amp[algebra.basis_index(p)] = 1.0 / np.sqrt(3.0)
    oracle_ok = (
        abs(evals[0] + 1.0) < 1e-12
        and abs(abs(evecs[:, 0] @ equal_amp.conj()) - 1.0) < 1e-12
    )

    ok = spread_ok and worst <= 0.05 and oracle_ok
    return CheckResult(
        6,
        "equalization",
        ok,
        f"spread plain={comparison.spread_plain:.4f} > switched="
        f"{comparison.spread_switched:.4f}; permanent-target max|P-1/3|={worst:.4f} "
        f"(want <=0.05); ground-state oracle {'ok' if oracle_ok else 'violated'}",
    )


def check_crossover() -> CheckResult:
    """An unstored probe is recalled only once its hint exceeds the storage gap."""
    unstored = (1, 1)
    gamma_star = analysis.ground_state_crossover(TWO_QUTRIT_MEMORY, unstored)
    spec = replace(CANONICAL, probe=unstored, schedule=Schedule.SWITCHED_HELP)

    def recall(gamma: float) -> float:
        state = evolve.anneal(spec.with_gamma(gamma)).final_state
        return evolve.pattern_probability(state, unstored)

    below = max(recall(g) for g in (0.25, 0.5))
    above = min(recall(g) for g in (1.2, 1.5))
    ok = gamma_star == 1.0 and below < 0.1 and above > 0.5
    return CheckResult(
        7,
        "unstored_probe_crossover",
        ok,
        f"gamma*={gamma_star} (want 1.0), P(gamma<=0.5)<={below:.4f} (want <0.1), "
        f"P(gamma>=1.2)>={above:.4f} (want >0.5)",
    )


def check_three_qutrit_capacity(jobs: int = 1) -> CheckResult:
    """Five patterns on three qutrits: captured at zero hint, monotone under hint."""
    demo = analysis.three_qutrit_demo(jobs=jobs)
    zero_dist = demo.switched.distributions[0][1]
    stored_sum = sum(
        zero_dist[algebra.basis_index(p)] for p in THREE_QUTRIT_MEMORY.patterns
    )

    def monotone(table: analysis.SweepTable) -> bool:
        for p in THREE_QUTRIT_MEMORY.patterns:
            diffs = np.diff(table.column(p))
            if p == THREE_QUTRIT_PROBE:
                if not (diffs >= -1e-9).all():
                    return False
            elif not (diffs <= 1e-9).all():
                return False
        return True

    mono_ok = monotone(demo.switched) and monotone(demo.plain)
    ok = stored_sum > 0.9 and mono_ok
    return CheckResult(
        8,
        "three_qutrit_capacity",
        ok,
        f"zero-hint stored sum={stored_sum:.4f} (want >0.9), "
        f"monotone={'yes' if mono_ok else 'no'}",
    )


def check_numerical_hygiene() -> CheckResult:
    """Norm preservation, time-step convergence, projector identities."""
    result = evolve.anneal(CANONICAL)
    halved = evolve.anneal(replace(CANONICAL, dt=0.05))
    step_shift = np.abs(
        evolve.basis_probabilities(result.final_state)
        - evolve.basis_probabilities(halved.final_state)
    ).max()

    # diagonal projectors: resolution of identity and idempotence
    proj_err = np.abs(
        sum(algebra.diag_projector(m) for m in algebra.TRIT_VALUES) - np.eye(3)
    ).max()
    for m in algebra.TRIT_VALUES:
        p = algebra.diag_projector(m)
        proj_err = max(proj_err, np.abs(p @ p - p).max())
    # off-diagonal products against direct outer products
    eye = np.eye(3)
    for bra in algebra.TRIT_VALUES:
        for ket in algebra.TRIT_VALUES:
            if bra == ket:
                continue
            direct = np.outer(eye[algebra.basis_index((bra,))], eye[algebra.basis_index((ket,))])
            proj_err = max(
                proj_err, np.abs(algebra.offdiag_projector(bra, ket) - direct).max()
            )

    ok = result.norm_drift < 1e-9 and step_shift < 1e-3 and proj_err < 1e-12
    return CheckResult(
        9,
        "numerical_hygiene",
        ok,
        f"norm drift={result.norm_drift:.2e} (want <1e-9), "
        f"dt-halving shift={step_shift:.2e} (want <1e-3), "
        f"projector identity error={proj_err:.2e} (want <1e-12)",
    )


def run_all(jobs: int = 1) -> list[CheckResult]:
    return [
        check_scaling_law(jobs),
        check_residual_split(),
        check_hint_slopes(),
        check_constant_reconstructions(),
        check_degeneracy_structure(),
        check_equalization(),
        check_crossover(),
        check_three_qutrit_capacity(jobs),
        check_numerical_hygiene(),
    ]
