import numpy as np
import pytest
from numpy.testing import assert_allclose

from qutrit_memory import algebra, evolve
from qutrit_memory import hamiltonian as ham
from qutrit_memory.errors import NumericalError, ValidationError
from qutrit_memory.hamiltonian import AnnealSpec, MemorySet, Schedule

MEM = MemorySet(((0, 1), (1, 0), (-1, -1)))
CANONICAL = AnnealSpec(memory=MEM, field_h=2.0, total_time=300.0, dt=0.1)

# closed-form estimate 1.22 * (2/300)^(2/3) for the weak stored pattern
LONE_PREDICTION = 0.0432148


def test_step_propagator_zero_hamiltonian():
    u = evolve.step_propagator(np.zeros((4, 4), dtype=complex), 0.3)
    assert_allclose(u, np.eye(4), atol=1e-15)


def test_step_propagator_diagonal():
    lam = np.array([1.0, -2.0, 0.5])
    u = evolve.step_propagator(np.diag(lam).astype(complex), 0.7)
    assert_allclose(u, np.diag(np.exp(-1j * 0.7 * lam)), atol=1e-14)


def test_step_propagator_unitary_on_random_hermitian():
    rng = np.random.default_rng(7)
    raw = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
    h_random = (raw + raw.conj().T) / 2
    u = evolve.step_propagator(h_random, 0.1)
    assert np.abs(u.conj().T @ u - np.eye(9)).max() < 1e-12


def test_step_propagator_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        evolve.step_propagator(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), 0.1)


def test_constant_hamiltonian_keeps_ground_state():
    h0 = ham.build_field(2.0, 2)
    state = ham.initial_state(2)
    result = evolve.propagate_schedule(lambda s: h0, state, 3000, 0.1)
    overlap = abs(np.vdot(state, result.final_state)) ** 2
    assert abs(overlap - 1.0) < 1e-9


def test_canonical_run_matches_scaling_estimate():
    result = evolve.anneal(CANONICAL)
    p_lone = evolve.pattern_probability(result.final_state, (-1, -1))
    assert abs(p_lone - LONE_PREDICTION) < 0.25 * LONE_PREDICTION
    assert result.norm_drift < 1e-9


def test_canonical_run_residual_split():
    state = evolve.anneal(CANONICAL).final_state
    p01 = evolve.pattern_probability(state, (0, 1))
    p10 = evolve.pattern_probability(state, (1, 0))
    p_lone = evolve.pattern_probability(state, (-1, -1))
    assert abs(p01 - p10) < 1e-3
    assert abs(p01 - (1 - p_lone) / 2) < 1e-3


def test_adiabatic_run_reaches_exact_ground_state():
    spec = AnnealSpec(
        memory=MemorySet(((1, 1),)), field_h=2.0, total_time=300.0, dt=0.1
    )
    final = evolve.anneal(spec).final_state
    # oracle: direct diagonalization of the target Hamiltonian
    evals, evecs = np.linalg.eigh(ham.build_memory(spec.memory))
    assert evals[1] - evals[0] > 0.5  # nondegenerate ground state
    overlap = abs(np.vdot(evecs[:, 0], final)) ** 2
    assert overlap > 0.999


def test_slice_count_insensitivity():
    """Dropping either boundary factor moves probabilities far less than 2e-2."""
    pieces = ham.schedule_pieces(CANONICAL)
    state = ham.initial_state(2)
    n = CANONICAL.n_steps

    def run(offsets):
        psi = state
        for l in offsets:
            u = evolve.step_propagator(ham.compose_at(pieces, l / n), CANONICAL.dt)
            psi = u @ psi
        return evolve.basis_probabilities(psi)

    reference = run(range(n + 1))
    for variant in (range(n), range(1, n + 1)):
        assert np.abs(run(variant) - reference).max() < 2e-2


def test_pattern_probability_examples():
    state = ham.initial_state(2)
    assert abs(evolve.pattern_probability(state, (1, 1)) - 0.0625) < 1e-12
    total = sum(evolve.pattern_probability(state, p) for p in algebra.all_patterns(2))
    assert abs(total - 1.0) < 1e-12
    basis_vec = np.zeros(9, dtype=complex)
    basis_vec[algebra.basis_index((0, -1))] = 1.0
    assert evolve.pattern_probability(basis_vec, (0, -1)) == 1.0


def test_pattern_probability_dimension_check():
    with pytest.raises(ValidationError):
        evolve.pattern_probability(np.zeros(9, dtype=complex), (1, 1, 1))


def test_probabilities_sum_to_one_after_run():
    probs = evolve.basis_probabilities(evolve.anneal(CANONICAL).final_state)
    assert abs(probs.sum() - 1.0) < 1e-12


def test_spectrum_field_row():
    trace = evolve.instantaneous_spectrum(CANONICAL, samples=31)
    assert trace.levels.shape == (31, 9)
    assert_allclose(trace.levels[0], [-4, -2, -2, 0, 0, 0, 2, 2, 4], atol=1e-12)


def test_spectrum_final_row_is_memory_spectrum():
    trace = evolve.instantaneous_spectrum(CANONICAL, samples=11)
    assert_allclose(trace.levels[-1], [-1, -1, -1, 0, 0, 0, 0, 0, 0], atol=1e-12)


def test_spectrum_with_probe_gap():
    spec = AnnealSpec(
        memory=MEM, probe=(-1, -1), gamma=0.2, field_h=2.0, total_time=300.0, dt=0.1
    )
    final = evolve.instantaneous_spectrum(spec, samples=5).levels[-1]
    assert abs(final[0] + 1.2) < 1e-12
    assert_allclose(final[1:3], [-1.0, -1.0], atol=1e-12)
    assert abs((final[3] - final[2]) - 1.0) < 1e-12


def test_spectrum_rows_sorted():
    trace = evolve.instantaneous_spectrum(CANONICAL, samples=41)
    assert (np.diff(trace.levels, axis=1) >= -1e-12).all()


def test_spectrum_needs_two_samples():
    with pytest.raises(ValidationError):
        evolve.instantaneous_spectrum(CANONICAL, samples=1)


def test_propagation_aborts_on_bad_norm():
    h0 = ham.build_field(2.0, 2)
    bad_state = 1.1 * ham.initial_state(2)
    with pytest.raises(NumericalError):
        evolve.propagate_schedule(lambda s: h0, bad_state, 10, 0.1)


def test_checkpoints_recorded_at_stride():
    spec = AnnealSpec(memory=MEM, field_h=2.0, total_time=5.0, dt=0.1)
    result = evolve.anneal(spec, checkpoint_stride=10)
    assert len(result.checkpoints) == 5
    for _, state in result.checkpoints:
        assert abs(np.linalg.norm(state) - 1.0) < 1e-9
    assert evolve.anneal(spec).checkpoints == ()
