"""Spectrum of ``-Delta(A, B)`` and the semigroup-generation decision.

Conventions: an eigen-parameter is a ``k`` with ``Im k > 0`` and
``det(A + ikB) = 0``; ``k^2`` is then an eigenvalue of ``-Delta`` and
``-k^2`` an eigenvalue of ``Delta`` (the generator).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import cayley
from . import complex2 as c2
from .boundary import BCPair, CayleyClass, classify
from .complex2 import DEFAULT_TOL, TolerancePolicy
from .errors import NotAnEigenparameter, NotMSectorial

__all__ = [
    "Essential",
    "Residual",
    "Eigenpair",
    "SpectrumReport",
    "spectrum",
    "eigenfunction_coeffs",
    "Reason",
    "GeneratorVerdict",
    "generator_verdict",
    "uniformly_bounded_sufficient",
    "spectral_bound",
    "ParabolaReport",
    "parabola_check",
]


class Essential(str, enum.Enum):
    HALF_LINE = "HalfLine"
    WHOLE_PLANE = "WholePlane"


class Residual(str, enum.Enum):
    EMPTY = "Empty"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class Eigenpair:
    k: complex
    geometric_multiplicity: int
    eigenvectors: tuple

    @property
    def lambda_minus_delta(self) -> complex:
        """Eigenvalue of ``-Delta``."""
        return self.k * self.k

    @property
    def lambda_delta(self) -> complex:
        """Eigenvalue of ``Delta``."""
        return -self.k * self.k


@dataclass(frozen=True)
class SpectrumReport:
    essential: Essential
    residual: Residual
    eigenvalues: tuple = ()


def _kernel_at(bc: BCPair, k: complex, tol: TolerancePolicy):
    M = bc.A + 1j * k * bc.B
    scale = c2.operator_norm(bc.A) + abs(k) * c2.operator_norm(bc.B)
    if np.max(np.abs(M)) <= tol.rank_rel_tol * max(scale, 1e-300):
        return [np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)]
    return c2.kernel_basis(M, tol)


def eigenfunction_coeffs(bc: BCPair, k: complex, tol: TolerancePolicy = DEFAULT_TOL) -> list:
    """Orthonormal ``alpha`` with ``psi = (alpha_1 e^{ikx}, alpha_2 e^{ikx})`` an
    eigenfunction, i.e. a basis of ``Ker(A + ikB)``."""
    k = complex(k)
    if k.imag <= 0:
        raise NotAnEigenparameter(f"eigen-parameters have Im k > 0, got {k}")
    basis = _kernel_at(bc, k, tol)
    if not basis:
        raise NotAnEigenparameter(f"A + ikB is invertible at k = {k}")
    return basis


def spectrum(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> SpectrumReport:
    if not classify(bc, tol).regular:
        return SpectrumReport(Essential.WHOLE_PLANE, Residual.UNDETERMINED, ())
    eig = []
    for p in cayley.poles(bc, tol):
        if p.k.imag <= tol.root_abs_tol * max(1.0, abs(p.k)):
            continue
        vecs = _kernel_at(bc, p.k, tol)
        if not vecs:  # pragma: no cover - root polishing safety net
            continue
        eig.append(Eigenpair(k=p.k, geometric_multiplicity=len(vecs), eigenvectors=tuple(vecs)))
    eig.sort(key=lambda e: -e.k.imag)
    return SpectrumReport(Essential.HALF_LINE, Residual.EMPTY, tuple(eig))


def spectral_bound(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """``max(0, max Re(-k^2))`` over the eigenvalues of ``Delta``."""
    rep = spectrum(bc, tol)
    vals = [e.lambda_delta.real for e in rep.eigenvalues]
    return max([0.0] + vals)


class Reason(str, enum.Enum):
    IRREGULAR = "Irregular"
    ZERO_ONE_DEGENERATE = "ZeroOneDegenerate"
    GENERATES = "Generates"


@dataclass(frozen=True)
class GeneratorVerdict:
    generates: bool
    reason: Reason
    analytic: bool
    uniformly_bounded_sufficient: Optional[bool]
    cosine_function: bool
    contractive_sufficient: Optional[bool]
    quasi_contractive: bool
    citations: dict = field(default_factory=dict, compare=False)


def uniformly_bounded_sufficient(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Pole-location test for a bounded semigroup.

    Every non-removable pole ``s`` of ``S(k)`` or of ``S(-conj k)^*`` in the
    open upper half-plane must have ``Re s > 0``, and ``0`` must not be a
    non-removable pole.  The poles of the second function are the
    reflections ``-conj(s)``.
    """
    cands = []
    for p in cayley.poles(bc, tol).non_removable:
        cands.extend([p.k, -np.conj(p.k)])
    eps = tol.root_abs_tol
    for s in cands:
        if abs(s) <= eps:
            return False
        if s.imag > eps * max(1.0, abs(s)) and not s.real > eps * max(1.0, abs(s)):
            return False
    return True


def generator_verdict(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> GeneratorVerdict:
    cl = classify(bc, tol)
    if not cl.regular:
        return GeneratorVerdict(False, Reason.IRREGULAR, False, None, False, None, False,
                                {"generates": "Thm 3.1(b)"})
    if cl.cayley_class is CayleyClass.LINEAR_GROWTH:
        return GeneratorVerdict(False, Reason.ZERO_ONE_DEGENERATE, False, None, False, None, False,
                                {"generates": "Thm 3.1(b)"})
    form = cl.msectorial
    cosine = form is not None
    contractive = None
    if cosine:
        contractive = c2.max_real_numerical_range(form.L) <= tol.rank_rel_tol * (
            1.0 + c2.operator_norm(form.L))
    return GeneratorVerdict(
        generates=True,
        reason=Reason.GENERATES,
        analytic=True,
        uniformly_bounded_sufficient=uniformly_bounded_sufficient(bc, tol),
        cosine_function=cosine,
        contractive_sufficient=contractive,
        quasi_contractive=cosine,
        citations={
            "generates": "Thm 3.1(b)",
            "analytic": "Thm 3.1(c)",
            "uniformly_bounded_sufficient": "Thm 3.1(d)",
            "cosine_function": "Thm 3.1(e)",
            "contractive_sufficient": "Thm 3.1(e)",
            "quasi_contractive": "Thm 3.1(e)",
        },
    )


@dataclass(frozen=True)
class ParabolaReport:
    C: float
    omega: float
    worst_ratio: float
    passed: bool
    samples: tuple


def _default_norm(bc: BCPair) -> Callable[[complex], float]:
    from .oracle import discretize, oracle_resolvent_norm

    d = discretize(bc, L=20.0, h=0.02)
    return lambda k: oracle_resolvent_norm(d, k)


def parabola_check(bc: BCPair, samples: Optional[Sequence[complex]] = None, *,
                   norm: Optional[Callable[[complex], float]] = None,
                   growth_tol: float = 1.25,
                   tol: TolerancePolicy = DEFAULT_TOL) -> ParabolaReport:
    """Check ``||lambda (Delta - lambda^2)^-1|| <= C / (Re lambda - omega)``.

    ``omega`` is the largest ``Re sqrt(mu)`` over eigenvalues ``mu`` of
    ``Delta`` (zero if there are none).  The resolvent norm at ``lambda`` is
    that of ``(-Delta - k^2)^-1`` with ``k = i lambda``, computed by ``norm``
    (default: the finite-difference oracle).  ``C`` is the largest value of
    ``|lambda| ||R|| (Re lambda - omega)`` over the samples; the check passes
    when the outer half of the sample set (by ``|lambda|``) does not exceed
    the inner half by more than ``growth_tol``, i.e. the product stays
    bounded rather than growing with ``lambda``.
    """
    if classify(bc, tol).msectorial is None:
        raise NotMSectorial("parabola estimate needs m-sectorial boundary conditions")
    rep = spectrum(bc, tol)
    omega = max([0.0] + [float(np.sqrt(complex(e.lambda_delta)).real) for e in rep.eigenvalues])
    if samples is None:
        re = omega + np.array([0.5, 1.0, 2.0, 4.0, 8.0])
        im = np.array([0.0, 2.0, -2.0, 5.0, -5.0, 10.0, -10.0, 20.0, -20.0])
        samples = (re[:, None] + 1j * im[None, :]).ravel()
    samples = np.asarray(samples, dtype=complex)
    if np.any(samples.real <= omega):
        raise ValueError("samples must satisfy Re lambda > omega")
    if norm is None:
        norm = _default_norm(bc)
    prods = np.array([abs(lam) * norm(1j * lam) * (lam.real - omega) for lam in samples])
    order = np.argsort(np.abs(samples))
    half = len(samples) // 2
    inner = prods[order[:max(half, 1)]].max()
    outer = prods[order[half:]].max()
    ratio = float(outer / inner)
    return ParabolaReport(C=float(prods.max()), omega=float(omega), worst_ratio=ratio,
                          passed=bool(ratio <= growth_tol),
                          samples=tuple(zip(samples.tolist(), prods.tolist())))
