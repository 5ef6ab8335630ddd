"""Heat semigroup ``exp(t Delta(A, B))`` and invariance tests.

The semigroup is evaluated from the resolvent by quadrature on a parabola
``lambda(u) = sigma + mu (1 + iu)^2`` that encloses the spectrum of
``Delta``; each node needs one resolvent ``(lambda - Delta)^-1 =
(-Delta - k^2)^-1`` with ``k = i sqrt(lambda)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import cayley
from . import complex2 as c2
from .boundary import BCPair, classify
from .complex2 import DEFAULT_TOL, TolerancePolicy
from .errors import AtPole, ContourTooClose, HypothesisViolated, NotAGenerator, NotMSectorial
from .grid import GridFunction, PanelGrid
from .resolvent import MAX_K_WIDTH, evaluate_resolvent, kernel_matrix
from .spectral import generator_verdict, spectral_bound, spectrum

__all__ = [
    "ContourSpec",
    "Contour",
    "evolve",
    "heat_kernel",
    "semigroup_property_check",
    "rescaled_negative_parts",
    "Property",
    "Verdict",
    "Cone",
    "InvarianceReport",
    "invariance_msectorial",
    "invariance_kernel_sample",
    "asymptotic_positivity",
]


@dataclass(frozen=True)
class ContourSpec:
    """Parabolic contour ``lambda(u) = omega0 + mu (1 + iu)^2``.

    ``omega0 = None`` places the vertex shift at ``max(0, spectral bound) + 1``.
    ``aperture`` scales ``mu = aperture * pi * n / (12 t)``; ``n_nodes`` is
    ``n``, with nodes ``u_j = j h``, ``|j| <= n``, ``h = 3/n``.
    """

    omega0: Optional[float] = None
    aperture: float = 1.0
    n_nodes: int = 32
    clearance: float = 0.5

    def __post_init__(self):
        if self.n_nodes < 16:
            raise ValueError("n_nodes must be at least 16")
        if not self.aperture > 0:
            raise ValueError("aperture must be positive")


@dataclass(frozen=True)
class Contour:
    lam: np.ndarray
    dlam: np.ndarray
    h: float
    sigma: float
    mu: float


def _distance_to_parabola(z: complex, sigma: float, mu: float) -> float:
    u = np.linspace(-60.0, 60.0, 24001)
    lam = sigma + mu * (1 + 1j * u) ** 2
    return float(np.min(np.abs(lam - z)))


def _inside(z: complex, sigma: float, mu: float) -> bool:
    return z.real < sigma + mu * (1 - (z.imag / (2 * mu)) ** 2)


def build_contour(bc: BCPair, t: float, spec: ContourSpec = ContourSpec(),
                  tol: TolerancePolicy = DEFAULT_TOL) -> Contour:
    """Quadrature nodes for time ``t``, after checking the eigenvalues of
    ``Delta`` sit inside the contour with the declared clearance."""
    if not t > 0:
        raise ValueError("t must be positive")
    sigma = spec.omega0 if spec.omega0 is not None else spectral_bound(bc, tol) + 1.0
    n = spec.n_nodes
    h = 3.0 / n
    mu = spec.aperture * np.pi * n / (12.0 * t)
    if sigma + mu < spec.clearance:
        raise ContourTooClose("contour vertex is too close to the essential spectrum")
    for e in spectrum(bc, tol).eigenvalues:
        z = complex(e.lambda_delta)
        if not _inside(z, sigma, mu) or _distance_to_parabola(z, sigma, mu) < spec.clearance:
            raise ContourTooClose(f"eigenvalue {z} of Delta is not cleared by the contour")
    u = h * np.arange(-n, n + 1)
    lam = sigma + mu * (1 + 1j * u) ** 2
    dlam = 2j * mu * (1 + 1j * u)
    return Contour(lam=lam, dlam=dlam, h=h, sigma=sigma, mu=mu)


def _require_generator(bc: BCPair, tol: TolerancePolicy):
    v = generator_verdict(bc, tol)
    if not v.generates:
        raise NotAGenerator(f"not a generator (Thm 3.1(b)): {v.reason.value}")


def _fine_grid(grid: PanelGrid, kmax: float) -> PanelGrid:
    m = max(1, int(np.ceil(kmax * grid.width / (0.8 * MAX_K_WIDTH))))
    return grid if m == 1 else PanelGrid(grid.x_max, grid.width / m, grid.order)


def evolve(bc: BCPair, f0: GridFunction, t: float, contour: ContourSpec = ContourSpec(),
           tol: TolerancePolicy = DEFAULT_TOL) -> GridFunction:
    """``exp(t Delta) f0`` on the nodes of ``f0``.

    ``f0`` is treated as its panel-wise polynomial interpolant; when the
    contour reaches ``|k|`` beyond what the panels resolve, the source is
    resampled on nested sub-panels, which represents the same function.
    """
    _require_generator(bc, tol)
    C = build_contour(bc, t, contour, tol)
    if not np.any(f0.values):
        return GridFunction.zeros(f0.grid)
    ks = 1j * np.sqrt(C.lam)
    fine = _fine_grid(f0.grid, float(np.max(np.abs(ks))))
    src = f0 if fine is f0.grid else GridFunction(
        fine, np.vstack([f0.evaluate(e, fine.nodes) for e in (1, 2)]))
    acc = np.zeros((2, f0.grid.size), dtype=complex)
    for k, lam, dlam in zip(ks, C.lam, C.dlam):
        try:
            psi = evaluate_resolvent(bc, src, k, f0.nodes, tol)
        except AtPole as exc:
            raise ContourTooClose(str(exc)) from exc
        acc += np.exp(lam * t) * dlam * psi
    return GridFunction(f0.grid, acc * (C.h / (2j * np.pi)))


def heat_kernel(bc: BCPair, t: float, x, y, contour: ContourSpec = ContourSpec(),
                tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    """Kernel of ``exp(t Delta)`` on ``x`` by ``y``, shape ``(2, 2, len(x), len(y))``."""
    _require_generator(bc, tol)
    C = build_contour(bc, t, contour, tol)
    out = 0
    for lam, dlam in zip(C.lam, C.dlam):
        out = out + np.exp(lam * t) * dlam * kernel_matrix(bc, 1j * np.sqrt(lam), x, y, tol=tol)
    return out * (C.h / (2j * np.pi))


def semigroup_property_check(bc: BCPair, f0: GridFunction, t: float, s: float,
                             contour: ContourSpec = ContourSpec(),
                             tol: TolerancePolicy = DEFAULT_TOL) -> float:
    """``||T(t+s) f0 - T(t) T(s) f0|| / ||f0||``."""
    n0 = f0.norm()
    if n0 == 0:
        return 0.0
    once = evolve(bc, f0, t + s, contour, tol)
    twice = evolve(bc, evolve(bc, f0, s, contour, tol), t, contour, tol)
    return (once - twice).norm() / n0


def rescaled_negative_parts(bc: BCPair, f0: GridFunction, times: Sequence[float],
                            contour: ContourSpec = ContourSpec(),
                            tol: TolerancePolicy = DEFAULT_TOL) -> list[float]:
    """``||(exp(-s t) T(t) f0)^-|| / ||f0||`` with ``s`` the spectral bound."""
    s = spectral_bound(bc, tol)
    n0 = f0.norm()
    out = []
    for t in times:
        ft = evolve(bc, f0, t, contour, tol) * np.exp(-s * t)
        out.append(ft.negative_part().norm() / n0)
    return out


class Property(str, enum.Enum):
    REAL = "Real"
    POSITIVE = "Positive"
    LINF_CONTRACTIVE = "LinfContractive"
    ASYMPTOTICALLY_POSITIVE = "AsymptoticallyPositive"


class Verdict(str, enum.Enum):
    PROVEN_BY_CRITERION = "ProvenByCriterion"
    PASSED_ON_SAMPLE = "PassedOnSample"
    COUNTEREXAMPLE_FOUND = "CounterexampleFound"
    CRITERION_FAILED = "CriterionFailed"


class Cone(str, enum.Enum):
    POSITIVE_CONE = "PositiveCone"
    LINF_UNIT_BALL = "LinfUnitBall"


@dataclass(frozen=True)
class InvarianceReport:
    property: Property
    verdict: Verdict
    witness: Optional[dict]
    criterion_used: str
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict is Verdict.COUNTEREXAMPLE_FOUND and self.witness is None:
            raise ValueError("a counterexample needs a witness")


def invariance_msectorial(bc: BCPair, cone: Cone, tol: TolerancePolicy = DEFAULT_TOL) -> InvarianceReport:
    """Invariance of the positive cone or the sup-norm unit ball for m-sectorial pairs.

    With ``A = L + P`` and ``B = P_perp`` the semigroup leaves the set
    invariant iff the projector ``P_perp`` does and so does ``exp(tL)`` on
    ``Ran P_perp``.  For the positive cone that means ``P_perp`` real with
    non-negative entries and ``L`` real with non-negative off-diagonal
    entries; for the sup-norm ball, row sums of ``|P_perp|`` at most one and
    ``Re L_ii + sum_{j != i} |L_ij| <= 0``.
    """
    form = classify(bc, tol).msectorial
    if form is None:
        raise NotMSectorial("invariance criterion needs m-sectorial boundary conditions")
    Pp, L = form.Pperp, form.L
    eps = tol.rank_rel_tol * (1.0 + c2.operator_norm(L))
    prop = Property.POSITIVE if cone is Cone.POSITIVE_CONE else Property.LINF_CONTRACTIVE

    def fail(matrix, i, j, value, why):
        return InvarianceReport(prop, Verdict.CRITERION_FAILED,
                                {"matrix": matrix, "entry": (i + 1, j + 1), "value": complex(value),
                                 "reason": why}, "Prop. 6.1")

    if cone is Cone.POSITIVE_CONE:
        for i in range(2):
            for j in range(2):
                p = Pp[i, j]
                if abs(p.imag) > eps or p.real < -eps:
                    return fail("P_perp", i, j, p, "projector entry not real non-negative")
                v = L[i, j]
                if abs(v.imag) > eps:
                    return fail("L", i, j, v, "generator entry not real")
                if i != j and v.real < -eps:
                    return fail("L", i, j, v, "negative off-diagonal entry")
    else:
        for i in range(2):
            rs = np.sum(np.abs(Pp[i]))
            if rs > 1 + eps:
                return fail("P_perp", i, i, rs, "row sum of |P_perp| exceeds one")
            dom = L[i, i].real + sum(abs(L[i, j]) for j in range(2) if j != i)
            if dom > eps:
                return fail("L", i, i, dom, "row not diagonally dominated by a non-positive diagonal")
    return InvarianceReport(prop, Verdict.PROVEN_BY_CRITERION, None, "Prop. 6.1")


def _pole_scale(bc: BCPair, tol: TolerancePolicy) -> float:
    ps = cayley.poles(bc, tol)
    return max([0.0] + [abs(p.k) for p in ps])


def default_kappa_grid(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL) -> np.ndarray:
    k0 = _pole_scale(bc, tol)
    return (k0 + 0.5) * np.geomspace(1.0, 1e3, 13) + 0.137


def invariance_kernel_sample(bc: BCPair, prop: Property, kappa_grid=None, xy_grid=None,
                             tol: TolerancePolicy = DEFAULT_TOL) -> InvarianceReport:
    """Sampled checks on ``S(i kappa)`` and the kernel of ``kappa^2 (kappa^2 - Delta)^-1``.

    Real: ``S(i kappa)`` is a ratio of polynomials of degree at most two in
    ``kappa``, so its imaginary part vanishes identically once it does at
    five points; the equivalence then gives a proof or a counterexample.
    Positive and LinfContractive are sufficient conditions on ``1 + S(i
    kappa)`` for ``kappa`` above the pole scale and can only pass on the
    sample.
    """
    _require_generator(bc, tol)
    if kappa_grid is None:
        kappa_grid = default_kappa_grid(bc, tol)
    if xy_grid is None:
        xy_grid = np.array([0.0, 0.25, 1.0, 3.0])
    kappa_grid = np.asarray(kappa_grid, dtype=float)
    xy_grid = np.asarray(xy_grid, dtype=float)
    if np.any(kappa_grid <= 0):
        raise ValueError("kappa grid must be positive")
    values = []
    for kap in kappa_grid:
        try:
            values.append((kap, cayley.eval(bc, 1j * kap, tol).S))
        except AtPole:
            continue

    if prop is Property.REAL:
        worst = (0.0, None)
        for kap, S in values:
            i, j = np.unravel_index(np.argmax(np.abs(S.imag)), S.shape)
            if abs(S[i, j].imag) > worst[0]:
                worst = (abs(S[i, j].imag), (kap, i, j, S[i, j]))
        if worst[0] > 1e-9 * max(1.0, max(np.max(np.abs(S)) for _, S in values)):
            kap, i, j, s = worst[1]
            return InvarianceReport(prop, Verdict.COUNTEREXAMPLE_FOUND,
                                    {"kappa": float(kap), "entry": (int(i) + 1, int(j) + 1),
                                     "value": complex(s)}, "Cor. 6.3")
        if len(values) >= 5:
            return InvarianceReport(prop, Verdict.PROVEN_BY_CRITERION, None, "Cor. 6.3",
                                    {"n_kappa": len(values)})
        return InvarianceReport(prop, Verdict.PASSED_ON_SAMPLE, None, "Cor. 6.3")

    if prop not in (Property.POSITIVE, Property.LINF_CONTRACTIVE):
        raise ValueError("use asymptotic_positivity for asymptotic positivity")
    k0 = _pole_scale(bc, tol)
    admissible = [(kap, S) for kap, S in values if kap > k0]
    eps = 1e-9
    for kap, S in admissible:
        M = np.eye(2) + S
        # kernel of kappa^2 (kappa^2 - Delta)^-1 minus its free part
        ex = np.exp(-kap * xy_grid)
        K = 0.5 * kap * M[:, :, None, None] * ex[None, None, :, None] * ex[None, None, None, :]
        if prop is Property.POSITIVE:
            bad = (np.abs(K.imag) > eps * (1 + np.abs(K))) | (K.real < -eps * kap)
            if bad.any():
                i, j, a, b = (int(v) for v in np.argwhere(bad)[0])
                return InvarianceReport(prop, Verdict.CRITERION_FAILED,
                                        {"kappa": float(kap), "x": float(xy_grid[a]),
                                         "y": float(xy_grid[b]), "entry": (i + 1, j + 1),
                                         "value": complex(M[i, j])}, "Lemma 6.2")
        else:
            cols = np.sum(np.abs(M), axis=0)
            if np.any(cols > 1 + eps):
                j = int(np.argmax(cols))
                return InvarianceReport(prop, Verdict.CRITERION_FAILED,
                                        {"kappa": float(kap), "entry": (1, j + 1),
                                         "value": complex(cols[j])}, "Lemma 6.2")
    return InvarianceReport(prop, Verdict.PASSED_ON_SAMPLE, None, "Lemma 6.2",
                            {"n_kappa": len(admissible)})


def _dist_half_line(z: complex) -> float:
    return abs(z.imag) if z.real >= 0 else abs(z)


def asymptotic_positivity(bc: BCPair, tol: TolerancePolicy = DEFAULT_TOL,
                          decades: int = 6, limit_tol: float = 1e-5) -> InvarianceReport:
    """Sufficient conditions (iii) and (iv) for asymptotic positivity.

    Along ``kappa = kappa0 + 10^-m``, ``m = 1..decades``:
    (iv) ``(kappa - kappa0)^2 / det(A - kappa B)`` tends to zero;
    (iii) every entry of ``(kappa - kappa0)^2 S(i kappa)`` approaches
    ``[0, inf)``.  A limit counts as zero when the last value is below
    ``limit_tol`` and the sequence decreases.
    """
    _require_generator(bc, tol)
    upper = [p for p in cayley.poles(bc, tol) if p.k.imag > tol.root_abs_tol]
    if not upper:
        raise HypothesisViolated("det(A + ikB) has no zero in the upper half-plane")
    dom = max(upper, key=lambda p: abs(p.k))
    if abs(dom.k.real) > tol.root_abs_tol * max(1.0, abs(dom.k)):
        raise HypothesisViolated(f"dominant zero {dom.k} is not on the positive imaginary axis")
    kappa0 = float(dom.k.imag)
    if np.allclose(bc.A, kappa0 * bc.B, rtol=0, atol=tol.rank_rel_tol * bc.scale):
        raise HypothesisViolated("A = kappa0 B")

    kappas = kappa0 + 10.0 ** -np.arange(1, decades + 1)
    seq_iv = []
    seq_iii = []
    for kap in kappas:
        d = c2.det(bc.A - kap * bc.B)
        seq_iv.append(complex((kap - kappa0) ** 2 / d))
        S = cayley.eval(bc, 1j * kap, tol).S
        seq_iii.append(max(_dist_half_line(complex(z)) for z in ((kap - kappa0) ** 2 * S).ravel()))

    def tends_to_zero(vals):
        mags = np.abs(np.asarray(vals))
        return bool(mags[-1] <= limit_tol and np.all(np.diff(mags) <= 0))

    iv = tends_to_zero(seq_iv)
    iii = tends_to_zero(seq_iii)
    data = {"kappa0": kappa0, "kappas": kappas.tolist(),
            "condition_iv": seq_iv, "condition_iii": seq_iii,
            "iv_holds": iv, "iii_holds": iii}
    if iv or iii:
        return InvarianceReport(Property.ASYMPTOTICALLY_POSITIVE, Verdict.PASSED_ON_SAMPLE, None,
                                "Prop. 6.5(iv)" if iv else "Prop. 6.5(iii)", data)
    return InvarianceReport(Property.ASYMPTOTICALLY_POSITIVE, Verdict.CRITERION_FAILED,
                            {"kappa": float(kappas[-1]), "value": seq_iv[-1]}, "Prop. 6.5", data)
