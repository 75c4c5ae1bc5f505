"""Single-site spin-1 operator algebra and tensor embedding.

A register of n spin-1 sites has dimension 3**n. Basis states are labelled
by patterns: tuples of trits, each trit being a spin projection in
{+1, 0, -1}. Site ordering is most-significant-first, with the per-site
basis ordered |+1>, |0>, |-1>, so the pattern (m1, m2, ...) maps to a
unique index in [0, 3**n).

All matrices are dense complex arrays; hbar = 1 throughout.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

import numpy as np

from .errors import ValidationError

TRIT_VALUES = (1, 0, -1)

# per-site basis position of each trit: |+1>, |0>, |-1>
_TRIT_DIGIT = {1: 0, 0: 1, -1: 2}
_DIGIT_TRIT = {d: t for t, d in _TRIT_DIGIT.items()}

HERMITIAN_TOL = 1e-12

_SQRT2 = np.sqrt(2.0)

Pattern = tuple[int, ...]


def validate_trit(value: int) -> int:
    if value not in _TRIT_DIGIT:
        raise ValidationError(f"trit must be one of {TRIT_VALUES}, got {value!r}")
    return value


def validate_pattern(pattern: Sequence[int], n: int | None = None) -> Pattern:
    """Return `pattern` as a tuple, checking each entry and (optionally) the length."""
    p = tuple(validate_trit(m) for m in pattern)
    if not p:
        raise ValidationError("pattern must contain at least one trit")
    if n is not None and len(p) != n:
        raise ValidationError(f"pattern {p} has length {len(p)}, expected {n}")
    return p


def spin_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The spin-1 matrices (Sx, Sy, Sz) in the Sz eigenbasis |+1>, |0>, |-1>."""
    sx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex) / _SQRT2
    sy = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex) / _SQRT2
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return sx, sy, sz


def ladder_operators() -> tuple[np.ndarray, np.ndarray]:
    """Scaled ladder operators S± = (Sx ± i Sy) / sqrt(2).

    With this normalization S+ has unit entries and [S+, S-] = Sz.
    """
    sx, sy, _ = spin_operators()
    s_plus = (sx + 1j * sy) / _SQRT2
    s_minus = (sx - 1j * sy) / _SQRT2
    return s_plus, s_minus


def diag_projector(m: int) -> np.ndarray:
    """Projector |m><m| on one site, built from polynomials in Sz.

    Uses Sz(1+Sz)/2, 1-Sz^2 and -Sz(1-Sz)/2 for m = +1, 0, -1 rather than
    writing the outer product directly; the two agree exactly.
    """
    validate_trit(m)
    _, _, sz = spin_operators()
    eye = np.eye(3, dtype=complex)
    if m == 1:
        return sz @ (eye + sz) / 2
    if m == 0:
        return eye - sz @ sz
    return -sz @ (eye - sz) / 2


def offdiag_projector(bra: int, ket: int) -> np.ndarray:
    """Transition operator |bra><ket| (bra != ket) as a product of spin operators.

    The six off-diagonal unit matrices are generated by products of S±
    and Sz; each result equals the direct outer product exactly.
    """
    validate_trit(bra)
    validate_trit(ket)
    if bra == ket:
        raise ValidationError("bra == ket: use diag_projector for diagonal projectors")
    s_plus, s_minus = ladder_operators()
    _, _, sz = spin_operators()
    products = {
        (0, 1): s_minus @ sz,
        (1, 0): sz @ s_plus,
        (-1, 0): -sz @ s_minus,
        (0, -1): -s_plus @ sz,
        (-1, 1): s_minus @ s_minus,
        (1, -1): s_plus @ s_plus,
    }
    return products[(bra, ket)]


def basis_index(pattern: Sequence[int]) -> int:
    """Index of a pattern in the computational basis, site 1 most significant."""
    p = validate_pattern(pattern)
    idx = 0
    for m in p:
        idx = idx * 3 + _TRIT_DIGIT[m]
    return idx


def pattern_from_index(index: int, n: int) -> Pattern:
    """Inverse of basis_index for a register of n sites."""
    if not 0 <= index < 3**n:
        raise ValidationError(f"index {index} out of range for {n} sites")
    digits = []
    for _ in range(n):
        index, d = divmod(index, 3)
        digits.append(_DIGIT_TRIT[d])
    return tuple(reversed(digits))


def all_patterns(n: int) -> Iterator[Pattern]:
    """All 3**n patterns of length n in basis-index order."""
    return itertools.product(TRIT_VALUES, repeat=n)


def pattern_projector(pattern: Sequence[int]) -> np.ndarray:
    """Rank-1 projector onto a basis pattern: Kronecker product of site projectors."""
    p = validate_pattern(pattern)
    out = np.array([[1.0 + 0j]])
    for m in p:
        out = np.kron(out, diag_projector(m))
    return out


def embed_site(op: np.ndarray, site: int, n: int) -> np.ndarray:
    """Embed a 3x3 operator at 1-based position `site` of an n-site register."""
    if not 1 <= site <= n:
        raise ValidationError(f"site {site} out of range 1..{n}")
    eye = np.eye(3, dtype=complex)
    out = np.array([[1.0 + 0j]])
    for i in range(1, n + 1):
        out = np.kron(out, op if i == site else eye)
    return out


def is_hermitian(matrix: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.abs(matrix - matrix.conj().T).max() < tol)
