"""Closed-form linear algebra on 2x2 complex matrices.

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and dtype
``complex128``; vectors have shape ``(2,)``.  Singular values are obtained
from the Gram matrix (largest one) and from Cauchy--Binet minors (smallest
one), so that tiny singular values keep full relative accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NonOrthonormalInput, Singular

__all__ = [
    "TolerancePolicy",
    "DEFAULT_TOL",
    "TOLERANCE_PROFILES",
    "as_mat2",
    "as_vec2",
    "det",
    "adjugate",
    "inverse",
    "singular_values",
    "rank",
    "rank24",
    "kernel_basis",
    "range_basis",
    "ortho_projector",
    "operator_norm",
    "max_real_numerical_range",
]

IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class TolerancePolicy:
    """Cut-offs used wherever a discrete decision is taken from floats.

    Parameters
    ----------
    rank_rel_tol : float
        A singular value counts as nonzero when it exceeds
        ``rank_rel_tol * sigma_max``.
    root_abs_tol : float
        Relative residual below which ``det(A + ikB)`` is treated as zero.
    """

    rank_rel_tol: float = 1e-10
    root_abs_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_rel_tol", "root_abs_tol"):
            value = getattr(self, name)
            if not (0.0 < value < 1e-6):
                raise ValueError(f"{name} must lie in (0, 1e-6), got {value!r}")


DEFAULT_TOL = TolerancePolicy()

TOLERANCE_PROFILES = {
    "strict": TolerancePolicy(rank_rel_tol=1e-12, root_abs_tol=1e-11),
    "default": DEFAULT_TOL,
    "loose": TolerancePolicy(rank_rel_tol=1e-8, root_abs_tol=1e-7),
}


def as_mat2(M) -> np.ndarray:
    """Return ``M`` as a finite complex 2x2 array (copy)."""
    arr = np.array(M, dtype=complex)
    if arr.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def as_vec2(v) -> np.ndarray:
    arr = np.array(v, dtype=complex)
    if arr.shape != (2,):
        raise ValueError(f"expected a 2-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector entries must be finite")
    return arr


def det(M) -> complex:
    M = np.asarray(M)
    return complex(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])


def adjugate(M) -> np.ndarray:
    """Classical adjoint; linear in ``M`` for the 2x2 case."""
    M = np.asarray(M, dtype=complex)
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])


def singular_values(M) -> tuple[float, float]:
    """The two largest singular values of a 2xn or nx2 matrix.

    ``sigma_1`` comes from the 2x2 Gram matrix, ``sigma_2`` from
    ``sigma_1 * sigma_2 = sqrt(sum |2x2 minors|^2)``.
    """
    M = np.asarray(M, dtype=complex)
    if M.shape[0] != 2:
        M = M.T
    if M.shape[0] != 2:
        raise ValueError(f"need a 2xn or nx2 matrix, got {M.shape}")
    gram = M @ M.conj().T
    tr = float(np.real(gram[0, 0] + gram[1, 1]))
    if tr == 0.0:
        return 0.0, 0.0
    a = float(np.real(gram[0, 0]))
    d = float(np.real(gram[1, 1]))
    off = abs(gram[0, 1])
    s1sq = 0.5 * tr + np.hypot(0.5 * (a - d), off)
    s1 = float(np.sqrt(s1sq))
    minors = sum(
        abs(M[0, i] * M[1, j] - M[0, j] * M[1, i]) ** 2
        for i, j in combinations(range(M.shape[1]), 2)
    )
    s2 = float(np.sqrt(minors)) / s1
    return s1, min(s2, s1)


def _rank_from_sv(s1: float, s2: float, tol: TolerancePolicy) -> int:
    if s1 == 0.0:
        return 0
    return 2 if s2 > tol.rank_rel_tol * s1 else 1


def rank(M, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    return _rank_from_sv(*singular_values(M), tol)


def rank24(A, B, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Rank of the 2x4 block matrix ``(A B)``."""
    return rank(np.hstack([np.asarray(A), np.asarray(B)]), tol)


def _unit(v: np.ndarray) -> np.ndarray:
    # rescale first so tiny entries do not underflow when squared
    v = v / np.max(np.abs(v))
    return v / np.linalg.norm(v)


def kernel_basis(M, tol: TolerancePolicy = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical null space of a 2x2 matrix."""
    M = np.asarray(M, dtype=complex)
    r = rank(M, tol)
    if r == 2:
        return []
    if r == 0:
        return [IDENTITY[:, 0].copy(), IDENTITY[:, 1].copy()]
    row = M[np.argmax(np.linalg.norm(M, axis=1))]
    v = np.array([-row[1], row[0]])
    return [_unit(v)]


def range_basis(M, tol: TolerancePolicy = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the column space of a 2x2 matrix."""
    M = np.asarray(M, dtype=complex)
    r = rank(M, tol)
    if r == 2:
        return [IDENTITY[:, 0].copy(), IDENTITY[:, 1].copy()]
    if r == 0:
        return []
    col = M[:, np.argmax(np.linalg.norm(M, axis=0))]
    return [_unit(col)]


def ortho_projector(vs) -> np.ndarray:
    """Orthogonal projector onto ``span(vs)`` for orthonormal ``vs``."""
    vs = [as_vec2(v) for v in vs]
    if not vs:
        return np.zeros((2, 2), dtype=complex)
    V = np.column_stack(vs)
    if V.shape[1] > 2 or np.max(np.abs(V.conj().T @ V - np.eye(V.shape[1]))) > 1e-10:
        raise NonOrthonormalInput("projector basis must be orthonormal")
    return V @ V.conj().T


def operator_norm(M) -> float:
    return singular_values(M)[0]


def inverse(M, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Inverse via the adjugate; raises :class:`Singular` below the rank cut-off."""
    M = np.asarray(M, dtype=complex)
    s1, s2 = singular_values(M)
    if _rank_from_sv(s1, s2, tol) < 2:
        raise Singular("matrix is numerically singular")
    return adjugate(M) / det(M)


def max_real_numerical_range(M) -> float:
    """``max Re <Mx, x>`` over unit ``x``: top eigenvalue of the Hermitian part."""
    M = np.asarray(M, dtype=complex)
    H = 0.5 * (M + M.conj().T)
    a = float(np.real(H[0, 0]))
    d = float(np.real(H[1, 1]))
    return 0.5 * (a + d) + float(np.hypot(0.5 * (a - d), abs(H[0, 1])))
