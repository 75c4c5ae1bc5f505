import itertools

import numpy as np
import pytest
from numpy.testing import assert_allclose

from qutrit_memory import algebra
from qutrit_memory.errors import ValidationError

SQ2 = np.sqrt(2.0)


def test_spin_matrices_explicit():
    sx, sy, sz = algebra.spin_operators()
    assert_allclose(sz, np.diag([1.0, 0.0, -1.0]), atol=0)
    assert_allclose(sx, np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / SQ2, atol=0)
    assert_allclose(sy, np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / SQ2, atol=0)


def test_spin_matrix_algebra():
    sx, sy, sz = algebra.spin_operators()
    for op in (sx, sy, sz):
        assert algebra.is_hermitian(op)
    assert np.abs(sx @ sy - sy @ sx - 1j * sz).max() < 1e-15
    assert np.abs(sz @ sz @ sz - sz).max() == 0.0


def test_ladder_operators_explicit():
    s_plus, s_minus = algebra.ladder_operators()
    assert_allclose(s_plus, np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]]), atol=1e-15)
    assert_allclose(s_minus, s_plus.conj().T, atol=0)


def test_ladder_products_give_transitions():
    s_plus, s_minus = algebra.ladder_operators()
    _, _, sz = algebra.spin_operators()
    # |1><-1| and |0><1| as operator products
    expected_pp = np.zeros((3, 3))
    expected_pp[0, 2] = 1.0
    assert_allclose(s_plus @ s_plus, expected_pp, atol=1e-15)
    expected_mz = np.zeros((3, 3))
    expected_mz[1, 0] = 1.0
    assert_allclose(s_minus @ sz, expected_mz, atol=1e-15)


def test_ladder_commutator_is_sz():
    s_plus, s_minus = algebra.ladder_operators()
    _, _, sz = algebra.spin_operators()
    assert np.abs(s_plus @ s_minus - s_minus @ s_plus - sz).max() < 1e-15


@pytest.mark.parametrize(
    "m,expected", [(1, [1, 0, 0]), (0, [0, 1, 0]), (-1, [0, 0, 1])]
)
def test_diag_projector_values(m, expected):
    p = algebra.diag_projector(m)
    assert_allclose(p, np.diag(expected).astype(complex), atol=1e-15)
    assert_allclose(p @ p, p, atol=1e-15)
    assert abs(np.trace(p) - 1.0) < 1e-15


def test_diag_projectors_resolve_identity():
    total = sum(algebra.diag_projector(m) for m in algebra.TRIT_VALUES)
    assert_allclose(total, np.eye(3), atol=1e-15)


@pytest.mark.parametrize(
    "bra,ket",
    [(b, k) for b in algebra.TRIT_VALUES for k in algebra.TRIT_VALUES if b != k],
)
def test_offdiag_projector_matches_outer_product(bra, ket):
    eye = np.eye(3)
    direct = np.outer(eye[algebra.basis_index((bra,))], eye[algebra.basis_index((ket,))])
    assert np.abs(algebra.offdiag_projector(bra, ket) - direct).max() < 1e-15


def test_offdiag_projector_examples():
    got = algebra.offdiag_projector(-1, 0)
    assert abs(got[2, 1] - 1.0) < 1e-15
    assert np.abs(got).sum() < 1.0 + 1e-15
    transposed_pair = algebra.offdiag_projector(-1, 1)
    assert_allclose(transposed_pair, algebra.offdiag_projector(1, -1).T, atol=1e-15)


def test_offdiag_projector_rejects_diagonal():
    with pytest.raises(ValidationError):
        algebra.offdiag_projector(0, 0)


@pytest.mark.parametrize(
    "pattern,index", [((1, 1), 0), ((0, 1), 3), ((-1, -1), 8), ((-1, -1, 1), 24)]
)
def test_basis_index_examples(pattern, index):
    assert algebra.basis_index(pattern) == index


@pytest.mark.parametrize("n", [1, 2, 3])
def test_basis_index_is_a_bijection(n):
    seen = [algebra.basis_index(p) for p in algebra.all_patterns(n)]
    assert sorted(seen) == list(range(3**n))
    for idx in range(3**n):
        assert algebra.basis_index(algebra.pattern_from_index(idx, n)) == idx


def test_pattern_from_index_range_check():
    with pytest.raises(ValidationError):
        algebra.pattern_from_index(9, 2)


def test_pattern_projector_unit_entry():
    p = algebra.pattern_projector((0, 1))
    assert p.shape == (9, 9)
    assert p[3, 3] == 1.0
    assert np.abs(p).sum() == 1.0
    assert abs(np.trace(p) - 1.0) < 1e-15
    assert_allclose(p @ p, p, atol=1e-15)


@pytest.mark.parametrize("n", [2, 3])
def test_pattern_projector_action_on_basis(n):
    for pattern in itertools.islice(algebra.all_patterns(n), 0, 3**n, 4):
        proj = algebra.pattern_projector(pattern)
        target = algebra.basis_index(pattern)
        for q in range(3**n):
            e_q = np.zeros(3**n)
            e_q[q] = 1.0
            expected = e_q if q == target else np.zeros(3**n)
            assert_allclose(proj @ e_q, expected, atol=1e-15)


def test_embed_site_identity_case():
    _, _, sz = algebra.spin_operators()
    assert_allclose(algebra.embed_site(sz, 1, 1), sz, atol=0)


def test_embed_site_first_site_reads_first_trit():
    _, _, sz = algebra.spin_operators()
    embedded = algebra.embed_site(sz, 1, 2)
    expected = np.diag([p[0] for p in algebra.all_patterns(2)]).astype(complex)
    assert_allclose(embedded, expected, atol=0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_embedded_sx_is_traceless(n):
    sx, _, _ = algebra.spin_operators()
    for site in range(1, n + 1):
        assert abs(np.trace(algebra.embed_site(sx, site, n))) < 1e-15


def test_embed_site_range_check():
    sx, _, _ = algebra.spin_operators()
    with pytest.raises(ValidationError):
        algebra.embed_site(sx, 3, 2)


def test_trit_validation():
    with pytest.raises(ValidationError):
        algebra.validate_pattern((0, 2))
    with pytest.raises(ValidationError):
        algebra.validate_pattern(())
    with pytest.raises(ValidationError):
        algebra.validate_pattern((1, 0), n=3)
