"""The Cayley transform ``S(k) = -(A + ikB)^-1 (A - ikB)`` and its poles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import complex2 as c2
from .boundary import BCPair, CayleyClass, classify
from .complex2 import DEFAULT_TOL, TolerancePolicy
from .errors import AtPole, IdenticallySingular

__all__ = [
    "DetPoly",
    "Pole",
    "PoleSet",
    "CayleyEvaluation",
    "det_poly",
    "poles",
    "eval",
    "eval_adjoint_reflected",
    "growth_class",
    "growth_exponent",
]


@dataclass(frozen=True)
class DetPoly:
    """``det(A + ikB) = c0 + c1 (ik) + c2 (ik)^2``."""

    c0: complex
    c1: complex
    c2: complex
    scale: float = 1.0

    def __call__(self, k):
        z = 1j * np.asarray(k, dtype=complex)
        return self.c0 + self.c1 * z + self.c2 * z * z

    def is_identically_zero(self, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
        bound = tol.root_abs_tol * max(self.scale, 1e-300) ** 2
        return all(abs(c) <= bound for c in (self.c0, self.c1, self.c2))


@dataclass(frozen=True)
class Pole:
    k: complex
    order: int
    removable: bool


@dataclass(frozen=True)
class PoleSet:
    poles: tuple[Pole, ...]
    identically_singular: bool = False

    def __iter__(self):
        return iter(self.poles)

    def __len__(self):
        return len(self.poles)

    @property
    def non_removable(self) -> tuple[Pole, ...]:
        return tuple(p for p in self.poles if not p.removable)


@dataclass(frozen=True)
class CayleyEvaluation:
    k: complex
    S: np.ndarray
    cond: float


def det_poly(bc: BCPair) -> DetPoly:
    """Coefficients recovered by exact interpolation at ``k = 0, 1, -1``."""
    A, B = bc.A, bc.B
    d0 = c2.det(A)
    dp = c2.det(A + 1j * B)
    dm = c2.det(A - 1j * B)
    c1 = (dp - dm) / 2j
    c2_ = d0 - 0.5 * (dp + dm)
    return DetPoly(d0, c1, c2_, scale=bc.scale)


def _numerator_coeffs(bc: BCPair):
    # N(k) = adj(A + ikB)(A - ikB) = N0 + k N1 + k^2 N2, using linearity of adj
    adjA, adjB = c2.adjugate(bc.A), c2.adjugate(bc.B)
    N0 = adjA @ bc.A
    N1 = 1j * (adjB @ bc.A - adjA @ bc.B)
    N2 = adjB @ bc.B
    return N0, N1, N2


def _roots(p: DetPoly, tol: TolerancePolicy) -> list[tuple[complex, int]]:
    """Roots in k of ``p`` with multiplicities."""
    s2 = max(p.scale, 1e-300) ** 2
    eps = 1e-14 * s2
    a, b, c = p.c2, p.c1, p.c0  # polynomial in z = ik
    if abs(a) > eps:
        disc = b * b - 4 * a * c
        if abs(disc) <= tol.rank_rel_tol * (abs(b) ** 2 + 4 * abs(a * c)) or disc == 0:
            zs = [(-b / (2 * a), 2)]
        else:
            sq = np.sqrt(complex(disc))
            if (np.conj(b) * sq).real < 0:
                sq = -sq
            q = -0.5 * (b + sq)
            zs = [(q / a, 1), (c / q, 1)]
    elif abs(b) > eps:
        zs = [(-c / b, 1)]
    else:
        zs = []
    return [(complex(-1j * z), m) for z, m in zs]


def poles(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> PoleSet:
    """Zeros of ``det(A + ikB)`` with multiplicity and removability.

    A root ``k0`` is removable when ``N(k) = adj(A + ikB)(A - ikB)``
    vanishes there to the root's order, so that the ``1/det`` factor
    cancels.
    """
    p = det_poly(bc)
    if not bc.rank_ok or p.is_identically_zero(tol):
        raise IdenticallySingular("det(A + ikB) vanishes identically: irregular pair")
    N0, N1, N2 = _numerator_coeffs(bc)
    nA, nB = c2.operator_norm(bc.A), c2.operator_norm(bc.B)
    out = []
    for k0, order in _roots(p, tol):
        s = nA + abs(k0) * nB
        thresh = 1e-9 * s * s
        value = N0 + k0 * N1 + k0 * k0 * N2
        removable = np.max(np.abs(value)) <= thresh
        if removable and order == 2:
            slope = N1 + 2 * k0 * N2
            removable = np.max(np.abs(slope)) <= 1e-9 * s * max(nB, 1e-300)
        out.append(Pole(k=k0, order=order, removable=bool(removable)))
    return PoleSet(tuple(out))


def eval(bc: BCPair, k: complex, tol: TolerancePolicy = DEFAULT_TOL) -> CayleyEvaluation:
    k = complex(k)
    M = bc.A + 1j * k * bc.B
    s1, s2 = c2.singular_values(M)
    if c2._rank_from_sv(s1, s2, tol) < 2:
        raise AtPole(f"A + ikB is singular at k = {k}")
    S = -(c2.adjugate(M) / c2.det(M)) @ (bc.A - 1j * k * bc.B)
    return CayleyEvaluation(k=k, S=S, cond=s1 / s2)


def eval_adjoint_reflected(bc: BCPair, k: complex, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """``S(-conj(k))^*``, the Cayley factor of the adjoint resolvent kernel."""
    return eval(bc, -np.conj(complex(k)), tol).S.conj().T


def growth_exponent(bc: BCPair, radii=(1e2, 1e3, 1e4), n_angles: int = 9,
                    tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """Log-log slope of ``max ||S(k)||`` over circles ``|k| = r``."""
    angles = np.linspace(0.05, 2 * np.pi - 0.05, n_angles)
    sups = []
    for r in radii:
        vals = []
        for th in angles:
            try:
                vals.append(c2.operator_norm(eval(bc, r * np.exp(1j * th), tol).S))
            except AtPole:
                continue
        sups.append(max(vals))
    return float(np.polyfit(np.log(radii), np.log(sups), 1)[0])


def growth_class(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> CayleyClass:
    return classify(bc, tol).cayley_class
