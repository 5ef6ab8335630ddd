"""Boundary-condition pairs ``A psi(0) + B psi'(0) = 0`` and their classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import complex2 as c2
from .complex2 import DEFAULT_TOL, TolerancePolicy
from .errors import RankDeficient

__all__ = [
    "BCPair",
    "Table1Row",
    "CayleyClass",
    "MSectorialForm",
    "Classification",
    "new_bc",
    "is_regular",
    "classify",
    "msectorial_form",
    "canonicalize",
    "zero_one_defect",
]

# angle/relative threshold for "P_perp A^-1 B P_perp = 0"
ZERO_ONE_REL_TOL = 1e-10


class Table1Row(str, enum.Enum):
    KER_B0 = "KerB0"
    KER_A0_KER_B2 = "KerA0KerB2"
    KER_A0_KER_B1 = "KerA0KerB1"
    KER_A1_KER_B1 = "KerA1KerB1"


class CayleyClass(str, enum.Enum):
    UNIFORMLY_BOUNDED = "UniformlyBounded"
    LINEAR_GROWTH = "LinearGrowth"
    INFINITE = "Infinite"


@dataclass(frozen=True, eq=False)
class BCPair:
    """The pair ``(A, B)``; arrays are copied and made read-only."""

    A: np.ndarray
    B: np.ndarray
    tol: TolerancePolicy = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        A = c2.as_mat2(self.A)
        B = c2.as_mat2(self.B)
        A.flags.writeable = False
        B.flags.writeable = False
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "_rank", c2.rank24(A, B, self.tol))

    @property
    def rank(self) -> int:
        return self._rank

    @property
    def rank_ok(self) -> bool:
        return self._rank == 2

    @property
    def scale(self) -> float:
        """``||A|| + ||B||``, the natural size for relative tolerances."""
        return c2.operator_norm(self.A) + c2.operator_norm(self.B)

    def transformed(self, C) -> "BCPair":
        """The equivalent pair ``(CA, CB)``."""
        C = c2.as_mat2(C)
        return BCPair(C @ self.A, C @ self.B, self.tol)

    def __eq__(self, other):
        if not isinstance(other, BCPair):
            return NotImplemented
        return np.array_equal(self.A, other.A) and np.array_equal(self.B, other.B)

    def __hash__(self):
        return hash((self.A.tobytes(), self.B.tobytes()))


def new_bc(A, B, tol: TolerancePolicy = DEFAULT_TOL) -> BCPair:
    return BCPair(A, B, tol)


@dataclass(frozen=True)
class MSectorialForm:
    """``C A = L + P`` and ``C B = P_perp`` with ``P`` an orthogonal projector."""

    P: np.ndarray
    L: np.ndarray
    C: np.ndarray

    @property
    def Pperp(self) -> np.ndarray:
        return np.eye(2) - self.P


@dataclass(frozen=True)
class Classification:
    rank_ok: bool
    regular: bool
    dim_ker_A: int
    dim_ker_B: int
    table1_row: Optional[Table1Row]
    msectorial: Optional[MSectorialForm]
    cayley_class: CayleyClass
    P: np.ndarray
    Qperp: np.ndarray
    zero_one_defect: Optional[float] = None


def _dim_intersection(A, B, tol) -> int:
    stacked = np.vstack([np.asarray(A), np.asarray(B)])
    return 2 - c2.rank(stacked, tol)


def is_regular(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True iff ``rank (A B) = 2`` and ``Ker A`` meets ``Ker B`` trivially."""
    return bc.rank_ok and _dim_intersection(bc.A, bc.B, tol) == 0


def zero_one_defect(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """``||P_perp A^-1 B P_perp|| / ||A^-1 B||`` for the ``dim Ker A = 0``,
    ``dim Ker B = 1`` case (``P`` projects onto ``Ker B``)."""
    T = c2.inverse(bc.A, tol) @ bc.B
    P = c2.ortho_projector(c2.kernel_basis(bc.B, tol))
    Pp = np.eye(2) - P
    norm_T = c2.operator_norm(T)
    return c2.operator_norm(Pp @ T @ Pp) / norm_T


def _general_msectorial(bc: BCPair, tol: TolerancePolicy) -> Optional[MSectorialForm]:
    # M(A,B) = Ker(A B); m-sectorial iff {y: (0,y) in M} is the orthogonal
    # complement of the set X of admissible boundary values.
    AB = np.hstack([bc.A, bc.B])
    _, _, vh = np.linalg.svd(AB)
    basis = vh[2:].conj().T  # 4x2, columns span M(A,B)
    X, Y = basis[:2], basis[2:]
    Pp = c2.ortho_projector(c2.range_basis(X, tol))
    P = np.eye(2) - Pp
    for c in c2.kernel_basis(X, tol):
        y = Y @ c
        if np.linalg.norm(Pp @ y) > 1e3 * tol.rank_rel_tol * np.linalg.norm(y):
            return None
    L = -Pp @ Y @ np.linalg.pinv(X, rcond=tol.rank_rel_tol) @ Pp
    target = np.hstack([L + P, Pp])
    C = target @ np.linalg.pinv(AB)
    if c2.rank(C, tol) < 2:
        return None
    resid = np.linalg.norm(C @ AB - target, 2)
    if resid > 1e-10 * (bc.scale + 1.0) * max(1.0, c2.operator_norm(C)):
        return None
    return MSectorialForm(P=P, L=L, C=C)


def msectorial_form(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> Optional[MSectorialForm]:
    """Equivalent ``A' = L + P``, ``B' = P_perp`` when one exists.

    The two Table-1 rows flagged m-sectorial get exact closed forms
    (``L = B^-1 A`` when ``B`` is invertible, ``L = 0, P = 1`` when
    ``B = 0``); every other rank-2 pair is tested through its boundary
    subspace ``Ker (A B)``.
    """
    if not bc.rank_ok:
        return None
    rA, rB = c2.rank(bc.A, tol), c2.rank(bc.B, tol)
    zero = np.zeros((2, 2), dtype=complex)
    if rB == 2:
        Binv = c2.inverse(bc.B, tol)
        return MSectorialForm(P=zero, L=Binv @ bc.A, C=Binv)
    if rB == 0:
        if rA < 2:
            return None
        return MSectorialForm(P=np.eye(2, dtype=complex), L=zero, C=c2.inverse(bc.A, tol))
    if not is_regular(bc, tol):
        return None
    return _general_msectorial(bc, tol)


def classify(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> Classification:
    rA, rB = c2.rank(bc.A, tol), c2.rank(bc.B, tol)
    dA, dB = 2 - rA, 2 - rB
    regular = is_regular(bc, tol)
    P = c2.ortho_projector(c2.kernel_basis(bc.B, tol))
    Qperp = c2.ortho_projector(c2.range_basis(bc.A, tol))

    row = None
    if bc.rank_ok:
        if dB == 0:
            row = Table1Row.KER_B0
        elif (dA, dB) == (0, 2):
            row = Table1Row.KER_A0_KER_B2
        elif (dA, dB) == (0, 1):
            row = Table1Row.KER_A0_KER_B1
        elif (dA, dB) == (1, 1):
            row = Table1Row.KER_A1_KER_B1

    form = msectorial_form(bc, tol) if regular else None
    defect = None
    if not regular:
        cls = CayleyClass.INFINITE
    elif row is Table1Row.KER_A0_KER_B1:
        defect = zero_one_defect(bc, tol)
        cls = (CayleyClass.LINEAR_GROWTH if defect <= ZERO_ONE_REL_TOL
               else CayleyClass.UNIFORMLY_BOUNDED)
    else:
        cls = CayleyClass.UNIFORMLY_BOUNDED

    return Classification(
        rank_ok=bc.rank_ok,
        regular=regular,
        dim_ker_A=dA,
        dim_ker_B=dB,
        table1_row=row,
        msectorial=form,
        cayley_class=cls,
        P=P,
        Qperp=Qperp,
        zero_one_defect=defect,
    )


def canonicalize(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> BCPair:
    """Reduced row-echelon form of ``(A B)``.

    Two pairs are equivalent exactly when their rows span the same subspace,
    and the RREF is the unique representative of that row space.
    """
    if not bc.rank_ok:
        raise RankDeficient("canonical form needs rank (A B) = 2")
    M = np.hstack([bc.A, bc.B]).astype(complex)
    cutoff = tol.rank_rel_tol * np.max(np.abs(M))
    row = 0
    for col in range(4):
        if row == 2:
            break
        pivot = row + int(np.argmax(np.abs(M[row:, col])))
        if abs(M[pivot, col]) <= cutoff:
            M[row:, col] = 0.0
            continue
        M[[row, pivot]] = M[[pivot, row]]
        M[row] = M[row] / M[row, col]
        M[row, col] = 1.0
        for other in range(2):
            if other != row:
                M[other] = M[other] - M[other, col] * M[row]
                M[other, col] = 0.0
        row += 1
    M[np.abs(M) <= cutoff] = 0.0
    return BCPair(M[:, :2], M[:, 2:], bc.tol)
