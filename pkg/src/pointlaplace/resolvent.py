"""Green's kernel of ``(-Delta(A,B) - k^2)^-1`` and its action on grid functions.

For ``Im k > 0`` the kernel between edge ``i`` at ``x`` and edge ``j`` at
``y`` is::

    r_ij(x, y; k) = i/(2k) * (delta_ij exp(ik|x - y|) + exp(ikx) S_ij(k) exp(iky))

with ``S`` the Cayley transform.  The free part is integrated by two
exponential sweeps with the panel containing ``x`` split at ``y = x``, so
the kink never sits inside a quadrature rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.signal import lfilter

from . import cayley
from . import complex2 as c2
from .boundary import BCPair, CayleyClass, classify
from .complex2 import DEFAULT_TOL, TolerancePolicy
from .errors import LowerHalfPlane, ResolutionError, TruncationTooShort, WrongClass
from .grid import GridFunction, PanelGrid, lagrange_matrix

__all__ = [
    "EdgePoint",
    "KernelValue",
    "kernel",
    "kernel_matrix",
    "apply_resolvent",
    "evaluate_resolvent",
    "DefectReport",
    "defect_check",
    "ProbeReport",
    "resolvent_norm_probe",
    "LowerBoundPoint",
    "nongenerator_lower_bound",
    "loglog_slope",
    "default_grid",
    "TRUNCATION_EPS",
    "MAX_K_WIDTH",
]

TRUNCATION_EPS = 1e-12
# |k| * panel width above which a 16-point sub-rule no longer resolves exp(ik.)
MAX_K_WIDTH = 10.0


@dataclass(frozen=True)
class EdgePoint:
    edge: int
    x: float

    def __post_init__(self):
        if self.edge not in (1, 2):
            raise ValueError("edge must be 1 or 2")
        if not (np.isfinite(self.x) and self.x >= 0):
            raise ValueError("x must be finite and non-negative")


@dataclass(frozen=True)
class KernelValue:
    k: complex
    entries: np.ndarray


def default_grid(k: complex, x_max: Optional[float] = None) -> PanelGrid:
    """Grid with ``x_max = max(20, 30/Im k)`` and panel width ``min(1, 1/|k|)``
    rounded down to a divisor of one."""
    k = complex(k)
    if x_max is None:
        x_max = float(np.ceil(max(20.0, 30.0 / k.imag)))
    width = 1.0 / np.ceil(max(1.0, abs(k)))
    return PanelGrid.uniform(x_max, width)


def _cayley_matrix(bc: BCPair, k: complex, adjoint: bool, tol: TolerancePolicy) -> np.ndarray:
    if adjoint:
        return cayley.eval_adjoint_reflected(bc, k, tol)
    return cayley.eval(bc, k, tol).S


def _check_k(k: complex):
    if k.imag <= 0:
        raise LowerHalfPlane(f"resolvent kernel needs Im k > 0, got k = {k}")


def kernel_matrix(bc: BCPair, k: complex, x, y, *, adjoint: bool = False,
                  tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """All four edge blocks of the kernel on the grid ``x`` by ``y``.

    Returns an array of shape ``(2, 2, len(x), len(y))``.  With
    ``adjoint=True`` the Cayley factor ``S(-conj k)^*`` is used instead of
    ``S(k)``.
    """
    k = complex(k)
    _check_k(k)
    S = _cayley_matrix(bc, k, adjoint, tol)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    ex = np.exp(1j * k * x)
    ey = np.exp(1j * k * y)
    free = np.exp(1j * k * np.abs(x[:, None] - y[None, :]))
    out = np.empty((2, 2, x.size, y.size), dtype=complex)
    outer = ex[:, None] * ey[None, :]
    for i in range(2):
        for j in range(2):
            out[i, j] = S[i, j] * outer
        out[i, i] += free
    return (0.5j / k) * out


def kernel(bc: BCPair, x: EdgePoint, y: EdgePoint, k: complex, *, adjoint: bool = False,
           tol: TolerancePolicy = DEFAULT_TOL) -> complex:
    K = kernel_matrix(bc, k, [x.x], [y.x], adjoint=adjoint, tol=tol)
    return complex(K[x.edge - 1, y.edge - 1, 0, 0])


def _partial_ops(grid: PanelGrid, s: np.ndarray, k: complex):
    """Row ``e`` maps a panel's values to ``int_{a}^{x_e} exp(ik(x_e - y)) f dy``
    (left) and ``int_{x_e}^{b} exp(ik(y - x_e)) f dy`` (right), where ``s`` is
    the reference coordinate of ``x_e`` inside its panel."""
    t, w = grid.ref_nodes, grid.ref_weights
    half = 0.5 * grid.width
    s = np.asarray(s, dtype=float)
    lenL = 0.5 * (s + 1.0)
    lenR = 0.5 * (1.0 - s)
    zL = -1.0 + lenL[:, None] * (t + 1.0)
    zR = s[:, None] + lenR[:, None] * (t + 1.0)
    cL = half * lenL[:, None] * w * np.exp(1j * k * half * (s[:, None] - zL))
    cR = half * lenR[:, None] * w * np.exp(1j * k * half * (zR - s[:, None]))
    IL = lagrange_matrix(t, grid.bary, zL)
    IR = lagrange_matrix(t, grid.bary, zR)
    return np.einsum("em,emn->en", cL, IL), np.einsum("em,emn->en", cR, IR)


def _sweeps(grid: PanelGrid, fp: np.ndarray, k: complex):
    """Boundary values of the left/right exponential sweeps for panel data ``fp``."""
    t, w = grid.ref_nodes, grid.ref_weights
    half = 0.5 * grid.width
    rho = np.exp(1j * k * grid.width)
    vL = half * w * np.exp(1j * k * half * (1.0 - t))
    vR = half * w * np.exp(1j * k * half * (1.0 + t))
    FL = fp @ vL
    FR = fp @ vR
    P = grid.n_panels
    # left[p] = int_0^{a_p} exp(ik(a_p - y)) f dy
    left = np.zeros(P + 1, dtype=complex)
    left[1:] = lfilter([1.0], [1.0, -rho], FL)
    # right[p] = int_{b_p}^{x_max} exp(ik(y - b_p)) f dy
    right = np.zeros(P, dtype=complex)
    if P > 1:
        right[:-1] = lfilter([1.0], [1.0, -rho], FR[1:][::-1])[::-1]
    moment = np.sum(np.exp(1j * k * grid.starts) * FR)
    return left, right, moment


def _validate(bc: BCPair, grid: PanelGrid, k: complex):
    _check_k(k)
    if np.exp(-k.imag * grid.x_max) > TRUNCATION_EPS:
        raise TruncationTooShort(
            f"exp(-Im k x_max) = {np.exp(-k.imag * grid.x_max):.2e} > {TRUNCATION_EPS:g}; "
            f"need x_max >= {-np.log(TRUNCATION_EPS) / k.imag:.2f}")
    if abs(k) * grid.width > MAX_K_WIDTH:
        raise ResolutionError(f"|k| * panel width = {abs(k) * grid.width:.2f} > {MAX_K_WIDTH}")


def _free_and_moments(f: GridFunction, k: complex, points=None):
    """Free-line part ``int exp(ik|x-y|) f_e(y) dy`` at ``points`` (or nodes) and
    the boundary moments ``int exp(iky) f_e(y) dy`` for both edges."""
    grid = f.grid
    half = 0.5 * grid.width
    if points is None:
        s = grid.ref_nodes
        KL, KR = _partial_ops(grid, s, k)
        p = np.repeat(np.arange(grid.n_panels), grid.order)
        s_all = np.tile(s, grid.n_panels)
    else:
        p, s_all = grid.locate(points)
        KL, KR = _partial_ops(grid, s_all, k)
    free = []
    moments = np.empty(2, dtype=complex)
    for e in (1, 2):
        fp = f.panels(e)
        left, right, moments[e - 1] = _sweeps(grid, fp, k)
        if points is None:
            partL = (fp @ KL.T).ravel()
            partR = (fp @ KR.T).ravel()
        else:
            partL = np.einsum("en,en->e", KL, fp[p])
            partR = np.einsum("en,en->e", KR, fp[p])
        val = (np.exp(1j * k * half * (s_all + 1.0)) * left[p] + partL
               + np.exp(1j * k * half * (1.0 - s_all)) * right[p] + partR)
        free.append(val)
    return free, moments


def apply_resolvent(bc: BCPair, f: GridFunction, k: complex, *, adjoint: bool = False,
                    tol: TolerancePolicy = DEFAULT_TOL) -> GridFunction:
    """``psi = (-Delta(A,B) - k^2)^-1 f`` on the nodes of ``f``.

    With ``adjoint=True`` the adjoint resolvent ``((-Delta - k^2)^-1)^*`` is
    applied instead; its kernel is the same formula at ``-conj(k)`` with
    ``S(k)^*`` in place of the Cayley factor.
    """
    k = complex(k)
    _validate(bc, f.grid, k)
    if adjoint:
        kk = -np.conj(k)
        S = cayley.eval(bc, k, tol).S.conj().T
    else:
        kk = k
        S = cayley.eval(bc, k, tol).S
    free, moments = _free_and_moments(f, kk)
    ex = np.exp(1j * kk * f.nodes)
    boundary = S @ moments
    vals = np.vstack([free[i] + ex * boundary[i] for i in range(2)])
    return GridFunction(f.grid, (0.5j / kk) * vals)


def evaluate_resolvent(bc: BCPair, f: GridFunction, k: complex, x,
                       tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """``(-Delta - k^2)^-1 f`` at arbitrary points ``x`` in ``[0, x_max]``;
    returns shape ``(2, len(x))``."""
    k = complex(k)
    _validate(bc, f.grid, k)
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > f.x_max)):
        raise ValueError("evaluation points must lie in [0, x_max]")
    S = cayley.eval(bc, k, tol).S
    free, moments = _free_and_moments(f, k, x)
    boundary = S @ moments
    ex = np.exp(1j * k * x)
    return (0.5j / k) * np.vstack([free[i] + ex * boundary[i] for i in range(2)])


@dataclass(frozen=True)
class DefectReport:
    pde_residual: float
    bc_residual: float
    h: float


_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_D1_ONESIDED = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0


def defect_check(bc: BCPair, f: GridFunction, k: complex, *, h: float = 0.01,
                 x_eval: Optional[float] = None,
                 tol: TolerancePolicy = DEFAULT_TOL) -> DefectReport:
    """Residuals of ``-psi'' - k^2 psi = f`` and ``A psi(0) + B psi'(0) = 0``.

    ``psi`` is sampled on a uniform mesh of width ``h`` over ``[0, x_eval]``;
    the second derivative uses the 5-point centred stencil and ``psi'(0)`` the
    5-point one-sided stencil, both fourth order.  Residuals are max-norms.
    """
    k = complex(k)
    if x_eval is None:
        x_eval = min(f.x_max, 10.0)
    n = int(round(x_eval / h))
    x = h * np.arange(n + 1)
    psi = evaluate_resolvent(bc, f, k, x, tol)
    fx = np.vstack([f.evaluate(e, x) for e in (1, 2)])
    d2 = sum(c * psi[:, i:n - 3 + i] for i, c in enumerate(_D2)) / h**2
    interior = slice(2, n - 1)
    pde = -d2 - k * k * psi[:, interior] - fx[:, interior]
    dpsi0 = (psi[:, :5] @ _D1_ONESIDED) / h
    bc_res = bc.A @ psi[:, 0] + bc.B @ dpsi0
    return DefectReport(pde_residual=float(np.max(np.abs(pde))),
                        bc_residual=float(np.max(np.abs(bc_res))), h=h)


@dataclass(frozen=True)
class ProbeReport:
    k: complex
    lower_bound: float
    upper_bound: float
    C: float
    free_bound: float


def _pole_distance(bc: BCPair, k: complex, tol: TolerancePolicy) -> float:
    """Distance from ``k`` to the non-removable poles in ``Im s > 0`` or on
    ``[0, inf)``; ``inf`` when there are none."""
    ds = [abs(k - p.k) for p in cayley.poles(bc, tol).non_removable
          if p.k.imag > 0 or (abs(p.k.imag) <= 1e-12 * (1 + abs(p.k)) and p.k.real >= 0)]
    return min(ds) if ds else np.inf


def resolvent_norm_probe(bc: BCPair, k: complex, n_probes: int = 8, *,
                         grid: Optional[PanelGrid] = None, power_steps: int = 6,
                         seed: int = 0, tol: TolerancePolicy = DEFAULT_TOL) -> ProbeReport:
    """Certified lower bound on ``||(-Delta - k^2)^-1||`` and a matching upper bound.

    Probes are random panel-wise polynomials and the indicator of ``[0, 1]``
    on edge 1; each is refined by a few steps of power iteration on
    ``R^* R``.  The upper bound is ``1/dist(k^2, [0, inf)) + ||S(k)|| / (2|k| Im k)``;
    ``C`` is the constant that reproduces it in the form
    ``C / (|k| Im k dist(S, k))`` (``dist = 1`` when there are no poles).
    """
    k = complex(k)
    _check_k(k)
    if grid is None:
        grid = default_grid(k)
    rng = np.random.default_rng(seed)
    probes = [GridFunction.from_function(grid, lambda e, x: ((x <= 1.0) & (e == 1)).astype(float))]
    deg = min(4, grid.order - 1)
    for _ in range(max(n_probes - 1, 0)):
        coeffs = rng.standard_normal((2, grid.n_panels, deg + 1)) \
            + 1j * rng.standard_normal((2, grid.n_panels, deg + 1))
        envelope = np.exp(-rng.uniform(0.05, 1.0) * grid.nodes)
        vals = np.vstack([
            np.polynomial.legendre.legval(grid.ref_nodes, coeffs[e].T).ravel() for e in range(2)
        ]) * envelope
        probes.append(GridFunction(grid, vals))

    best = 0.0
    for f in probes:
        f = f * (1.0 / f.norm())
        for step in range(power_steps + 1):
            g = apply_resolvent(bc, f, k, tol=tol)
            best = max(best, g.norm())
            if step == power_steps:
                break
            f = apply_resolvent(bc, g, k, adjoint=True, tol=tol)
            nf = f.norm()
            if nf == 0:
                break
            f = f * (1.0 / nf)

    k2 = k * k
    dist_spec = abs(k2.imag) if k2.real >= 0 else abs(k2)
    free = 1.0 / dist_spec
    nS = c2.operator_norm(cayley.eval(bc, k, tol).S)
    second = nS / (2.0 * abs(k) * k.imag)
    dS = _pole_distance(bc, k, tol)
    C = nS / 2.0 * (dS if np.isfinite(dS) else 1.0)
    return ProbeReport(k=k, lower_bound=float(best), upper_bound=float(free + second),
                       C=float(C), free_bound=float(free))


@dataclass(frozen=True)
class LowerBoundPoint:
    kappa: float
    lower_bound: float


def degenerate_coupling(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """``|B_21|`` of the degenerate normal form, i.e. ``||P A^-1 B P_perp||``."""
    T = c2.inverse(bc.A, tol) @ bc.B
    P = c2.ortho_projector(c2.kernel_basis(bc.B, tol))
    return c2.operator_norm(P @ T @ (np.eye(2) - P))


def nongenerator_lower_bound(bc: BCPair, kappas: Sequence[float],
                             tol: TolerancePolicy = DEFAULT_TOL) -> list[LowerBoundPoint]:
    """``|B_21| |exp(-kappa) - 1| / kappa / sqrt(2 kappa)`` for each ``kappa``.

    This is the norm of the second component of ``R(i kappa) u`` for
    ``u = (1_[0,1], 0)`` in the degenerate normal form, a lower bound on
    ``||(-Delta + kappa^2)^-1||``.
    """
    if classify(bc, tol).cayley_class is not CayleyClass.LINEAR_GROWTH:
        raise WrongClass("lower bound applies only to the degenerate (0,1) class")
    b21 = degenerate_coupling(bc, tol)
    out = []
    for kap in kappas:
        kap = float(kap)
        val = b21 * abs(np.expm1(-kap)) / kap / np.sqrt(2.0 * kap)
        out.append(LowerBoundPoint(kappa=kap, lower_bound=float(val)))
    return out


def loglog_slope(xs, ys) -> float:
    return float(np.polyfit(np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float)), 1)[0])
