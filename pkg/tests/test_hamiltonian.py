import numpy as np
import pytest
from numpy.testing import assert_allclose

from qutrit_memory import algebra
from qutrit_memory import hamiltonian as ham
from qutrit_memory.errors import ValidationError
from qutrit_memory.hamiltonian import AnnealSpec, MemorySet, Schedule

MEM = MemorySet(((0, 1), (1, 0), (-1, -1)))
STORED_INDICES = (3, 1, 8)


def test_memory_set_validation():
    with pytest.raises(ValidationError):
        MemorySet(((0, 1), (0, 1)))
    with pytest.raises(ValidationError):
        MemorySet(((0, 1), (0, 1, 1)))
    with pytest.raises(ValidationError):
        MemorySet(())


def test_build_memory_diagonal_entries():
    h_mem = ham.build_memory(MEM)
    expected = np.zeros(9)
    expected[list(STORED_INDICES)] = -1.0
    assert_allclose(h_mem, np.diag(expected).astype(complex), atol=1e-15)
    assert abs(np.trace(h_mem) + MEM.n_patterns) < 1e-12


def test_build_memory_single_pattern_spectrum():
    h_mem = ham.build_memory(MemorySet(((1, -1),)))
    evals = np.linalg.eigvalsh(h_mem)
    assert_allclose(evals, [-1.0] + [0.0] * 8, atol=1e-14)


def test_build_memory_commutes_with_own_projectors():
    h_mem = ham.build_memory(MEM)
    for p in MEM.patterns:
        proj = algebra.pattern_projector(p)
        assert np.abs(h_mem @ proj - proj @ h_mem).max() < 1e-14


def test_build_field_two_site_spectrum():
    evals = np.linalg.eigvalsh(ham.build_field(2.0, 2))
    assert_allclose(evals, [-4, -2, -2, 0, 0, 0, 2, 2, 4], atol=1e-12)


def test_build_field_single_site():
    sx, _, _ = algebra.spin_operators()
    assert_allclose(ham.build_field(1.7, 1), -1.7 * sx, atol=0)


def test_build_field_ground_vector_single_site():
    evals, evecs = np.linalg.eigh(ham.build_field(2.0, 1))
    ground = evecs[:, 0]
    ground = ground / ground[0] * 0.5  # fix the global phase
    assert_allclose(ground, [0.5, np.sqrt(2) / 2, 0.5], atol=1e-12)
    assert abs(evals[0] + 2.0) < 1e-12


def test_build_field_requires_positive_h():
    with pytest.raises(ValidationError):
        ham.build_field(0.0, 2)


def test_initial_state_single_site():
    assert_allclose(ham.initial_state(1), [0.5, 0.70710678118654752, 0.5], atol=1e-15)


def test_initial_state_product_amplitude():
    state = ham.initial_state(2)
    assert abs(state[0] - 0.25) < 1e-15
    assert abs(np.linalg.norm(state) - 1.0) < 1e-12


@pytest.mark.parametrize("n", [1, 2, 3])
def test_initial_state_is_field_ground_state(n):
    h = 1.3
    state = ham.initial_state(n)
    residual = ham.build_field(h, n) @ state - (-n * h) * state
    assert np.abs(residual).max() < 1e-12


def test_build_probe_entries():
    probe = ham.build_probe((0, 1))
    assert probe[3, 3] == -1.0
    assert np.abs(probe).sum() == 1.0
    assert abs(np.trace(probe) + 1.0) < 1e-12
    assert ham.build_probe((1, 1, 1))[0, 0] == -1.0


def test_build_help_canonical_positions():
    h_help = ham.build_help(MEM)
    expected = np.zeros((9, 9))
    for i in STORED_INDICES:
        for j in STORED_INDICES:
            if i != j:
                expected[i, j] = -1.0
    assert_allclose(h_help, expected.astype(complex), atol=1e-14)
    assert np.abs(np.diag(h_help)).max() == 0.0
    assert algebra.is_hermitian(h_help)


def test_build_help_two_patterns():
    h_help = ham.build_help(MemorySet(((1, 1), (0, 0))))
    expected = np.zeros((9, 9))
    expected[0, 4] = expected[4, 0] = -1.0
    assert_allclose(h_help, expected.astype(complex), atol=1e-14)


def test_build_help_needs_two_patterns():
    with pytest.raises(ValidationError):
        ham.build_help(MemorySet(((1, 1),)))


def test_equal_memory_from_memory_and_help():
    combined = (ham.build_memory(MEM) + ham.build_help(MEM)) / MEM.n_patterns
    assert_allclose(combined, ham.build_equal_memory(MEM), atol=1e-14)


def test_equal_memory_entries_and_spectrum():
    h_eq = ham.build_equal_memory(MEM)
    for i in STORED_INDICES:
        for j in STORED_INDICES:
            assert abs(h_eq[i, j] + 1.0 / 3.0) < 1e-14
    evals = np.linalg.eigvalsh(h_eq)
    assert_allclose(evals, [-1.0] + [0.0] * 8, atol=1e-14)


def test_equal_memory_single_pattern_reduces_to_memory():
    single = MemorySet(((0, -1),))
    assert_allclose(ham.build_equal_memory(single), ham.build_memory(single), atol=1e-14)


def _spec(**kwargs):
    defaults = dict(memory=MEM, field_h=2.0, total_time=300.0, dt=0.1)
    defaults.update(kwargs)
    return AnnealSpec(**defaults)


def test_hamiltonian_at_endpoints():
    for schedule in Schedule:
        spec = _spec(
            probe=(-1, -1),
            gamma=0.2,
            schedule=schedule,
            memory_scale=1.0,
            help_scale=1.0 if schedule is not Schedule.PERMANENT_HELP else 0.0,
        )
        h0 = ham.build_field(2.0, 2)
        assert_allclose(ham.hamiltonian_at(spec, 0.0), h0, atol=1e-14)
        h_end = ham.build_memory(MEM) + 0.2 * ham.build_probe((-1, -1))
        assert_allclose(ham.hamiltonian_at(spec, 300.0), h_end, atol=1e-14)


def test_hamiltonian_at_midpoint_switched():
    spec = _spec(probe=(-1, -1), gamma=0.3, schedule=Schedule.SWITCHED_HELP)
    got = ham.hamiltonian_at(spec, 150.0)
    expected = (
        0.5 * ham.build_field(2.0, 2)
        + 0.25 * ham.build_help(MEM)
        + 0.5 * (ham.build_memory(MEM) + 0.3 * ham.build_probe((-1, -1)))
    )
    assert_allclose(got, expected, atol=1e-14)
    assert algebra.is_hermitian(got)


def test_hamiltonian_at_rejects_out_of_range():
    spec = _spec()
    with pytest.raises(ValidationError):
        ham.hamiltonian_at(spec, -1.0)
    with pytest.raises(ValidationError):
        ham.hamiltonian_at(spec, 301.0)


def test_plain_schedule_is_affine_in_time():
    spec = _spec(probe=(0, 1), gamma=0.4)
    h_a = ham.hamiltonian_at(spec, 30.0)
    h_b = ham.hamiltonian_at(spec, 90.0)
    h_c = ham.hamiltonian_at(spec, 150.0)
    # three equally spaced samples of an affine map are collinear
    assert np.abs((h_c - h_b) - (h_b - h_a)).max() < 1e-13


def test_switched_schedule_is_quadratic_in_time():
    spec = _spec(probe=(0, 1), gamma=0.4, schedule=Schedule.SWITCHED_HELP)
    times = np.array([30.0, 90.0, 150.0])
    entry = np.array([ham.hamiltonian_at(spec, t)[3, 1].real for t in times])
    coeffs = np.polyfit(times, entry, 2)
    predicted = np.polyval(coeffs, 240.0)
    actual = ham.hamiltonian_at(spec, 240.0)[3, 1].real
    assert abs(predicted - actual) < 1e-12


def test_permanent_help_folds_into_target():
    spec = _spec(
        schedule=Schedule.PERMANENT_HELP, memory_scale=1 / 3, help_scale=1 / 3
    )
    assert_allclose(
        ham.hamiltonian_at(spec, 300.0), ham.build_equal_memory(MEM), atol=1e-14
    )


def test_all_builders_hermitian():
    for matrix in (
        ham.build_memory(MEM),
        ham.build_field(2.0, 2),
        ham.build_probe((0, 1)),
        ham.build_help(MEM),
        ham.build_equal_memory(MEM),
    ):
        assert algebra.is_hermitian(matrix)


@pytest.mark.parametrize(
    "patterns",
    [((0, 1), (1, 0), (-1, -1)), ((1, 1), (0, 0)), ((1, 0, -1), (0, 0, 0), (1, 1, 1))],
)
def test_target_ground_energy_is_minus_one_with_multiplicity_p(patterns):
    memory = MemorySet(patterns)
    diag = np.diag(ham.build_memory(memory)).real
    assert (np.sort(diag)[: memory.n_patterns] == -1.0).all()
    assert (np.sort(diag)[memory.n_patterns :] == 0.0).all()


def test_probe_absent_forces_gamma_zero():
    spec = _spec(gamma=0.7)
    assert spec.gamma == 0.0
    probed = _spec(probe=(0, 1), gamma=0.7)
    assert probed.gamma == 0.7


def test_probe_length_checked():
    with pytest.raises(ValidationError):
        _spec(probe=(0, 1, 1))


def test_inexact_step_count_warns():
    spec = _spec(total_time=1.0, dt=0.3)
    with pytest.warns(UserWarning):
        assert spec.n_steps == 3


def test_with_gamma_round_trip():
    spec = _spec(probe=(0, 1), gamma=0.1)
    assert spec.with_gamma(-0.05).gamma == -0.05
