"""Acceptance criteria 1-8 at their stated tolerances and runtime budgets.

Each test records its outcome in ``conftest.ACCEPTANCE``; the terminal
summary prints one pass/fail line per criterion.
"""

import time
from contextlib import contextmanager

import numpy as np

from pointlaplace import cayley, classify, oracle
from pointlaplace import resolvent as R
from pointlaplace import semigroup as T
from pointlaplace import spectral as S
from pointlaplace.complex2 import operator_norm
from pointlaplace.errors import AtPole
from pointlaplace.grid import GridFunction, PanelGrid

from conftest import ACCEPTANCE, ex32, ex33, preset, random_invertible, random_regular_pair


@contextmanager
def criterion(num, name, budget):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < budget
        ACCEPTANCE.setdefault(num, []).append((name, ok, dt))
    assert dt < budget, f"{name} took {dt:.1f} s, budget {budget} s"


def smooth(grid, centre=3.0):
    return GridFunction.from_function(grid, lambda e, x: np.exp(-(x - centre) ** 2) * (1 + 0.5 * e))


GENERATOR_PRESETS = [preset("dirichlet"), preset("neumann"), ex32(1, 0), ex33(np.pi / 4),
                     preset("example-6.6")]


def test_criterion_1_classification():
    expected = {
        # name: (regular, generates, reason, cosine)
        "dirichlet": (True, True, S.Reason.GENERATES, True),
        "neumann": (True, True, S.Reason.GENERATES, True),
        "example-3.2": (True, True, S.Reason.GENERATES, True),
        "example-3.3": (True, True, S.Reason.GENERATES, False),
        "example-3.4": (True, False, S.Reason.ZERO_ONE_DEGENERATE, False),
        "example-3.5": (False, False, S.Reason.IRREGULAR, False),
    }
    pairs = {"example-3.2": ex32(1, 0), "example-3.3": ex33(np.pi / 4)}
    with criterion(1, "classification matrix", 1.0):
        for name, (regular, gen, reason, cosine) in expected.items():
            bc = pairs.get(name) or preset(name)
            v = S.generator_verdict(bc)
            assert classify(bc).regular is regular, name
            assert (v.generates, v.reason, v.cosine_function) == (gen, reason, cosine), name
            assert v.analytic is gen


def test_criterion_2_eigenvalues():
    with criterion(2, "eigenvalue reproduction", 120.0):
        (e,) = S.spectrum(ex32(1, 0)).eigenvalues
        assert abs(e.lambda_delta - 1) <= 1e-12 and e.geometric_multiplicity == 1
        (e,) = S.spectrum(preset("example-6.6")).eigenvalues
        assert abs(e.lambda_delta - 1) <= 1e-12 and abs(e.k - 1j) <= 1e-12
        assert S.spectrum(ex33(np.pi / 4)).eigenvalues == ()
        for bc in (ex32(1, 0), preset("example-6.6")):
            found = []
            for h in (0.02, 0.01):
                ev = oracle.oracle_eigenvalues(oracle.discretize(bc, L=40, h=h), key="offaxis")
                found.append(ev[np.argmin(np.abs(ev - 1))])
            assert abs(found[1] - 1) <= 5e-4
            assert abs(oracle.richardson_ratio(1, *found) - 4) <= 0.5


def test_criterion_3_cayley_identity():
    rng = np.random.default_rng(2024)
    pairs = [random_regular_pair(rng) for _ in range(1000)]
    pairs += [preset(n) for n in ("dirichlet", "neumann", "example-3.4", "example-6.6")]
    pairs += [ex32(1, 0), ex32(-1 + 2j, 3), ex33(np.pi / 4)]
    with criterion(3, "Cayley identity and invariance", 5.0):
        for bc in pairs:
            C = random_invertible(rng)
            bc2 = bc.transformed(C)
            nA, nB = operator_norm(bc.A), operator_norm(bc.B)
            ks = rng.uniform(-3, 3, 20) + 1j * rng.uniform(-3, 3, 20)
            for k in ks:
                try:
                    ev = cayley.eval(bc, k)
                except AtPole:
                    continue
                resid = operator_norm((bc.A + 1j * k * bc.B) @ ev.S + (bc.A - 1j * k * bc.B))
                assert resid <= 1e-11 * (nA + abs(k) * nB) * max(1.0, ev.cond)
                S2 = cayley.eval(bc2, k).S
                assert operator_norm(S2 - ev.S) <= 1e-9 * max(1.0, ev.cond) * (1 + operator_norm(ev.S))


def test_criterion_4_nongenerator_certificate():
    bc = preset("example-3.4")
    with criterion(4, "non-generator certificate", 60.0):
        kappas = 2.0 ** np.arange(1, 9)
        pts = R.nongenerator_lower_bound(bc, kappas)
        slope = R.loglog_slope(kappas, [p.lower_bound for p in pts])
        assert abs(slope + 1.5) <= 0.05, slope
        d = oracle.discretize(bc, L=40, h=0.01)
        oks = [4.0, 8.0, 16.0, 32.0]
        norms = [oracle.oracle_resolvent_norm(d, 1j * k) for k in oks]
        oslope = R.loglog_slope(oks, norms)
        assert oslope > -2 + 0.3, oslope
        # the closed form is a lower bound on the true norm
        for k, n in zip(oks, norms):
            (pt,) = R.nongenerator_lower_bound(bc, [k])
            assert pt.lower_bound <= n * 1.01


def test_criterion_5_resolvent():
    with criterion(5, "resolvent correctness", 60.0):
        for bc in GENERATOR_PRESETS:
            for k in (1.5j, 0.5 + 2j):
                rep = R.defect_check(bc, smooth(R.default_grid(k)), k)
                assert rep.pde_residual <= 1e-6 and rep.bc_residual <= 1e-6
        g = PanelGrid.uniform(40, 0.25)
        k1, k2 = 1.2j, 0.5 + 2j
        for bc in GENERATOR_PRESETS + [preset("example-3.4")]:
            f = smooth(g)
            r12 = R.apply_resolvent(bc, R.apply_resolvent(bc, f, k2), k1)
            d = R.apply_resolvent(bc, f, k1) - R.apply_resolvent(bc, f, k2) - (k1 ** 2 - k2 ** 2) * r12
            assert d.norm() / f.norm() <= 1e-7
        x = np.linspace(0, 4, 9)
        for bc in GENERATOR_PRESETS + [preset("example-3.4")]:
            for k in (0.7 + 1.3j, -2 + 0.5j):
                K = R.kernel_matrix(bc, k, x, x[::2])
                Ka = R.kernel_matrix(bc, -np.conj(k), x[::2], x, adjoint=True)
                assert np.max(np.abs(K - np.conj(np.transpose(Ka, (1, 0, 3, 2))))) <= 1e-11
        for bc in (preset("dirichlet"), ex32(1, 0), ex33(np.pi / 4), preset("example-3.4")):
            d = oracle.discretize(bc, L=40, h=0.01)
            k = 2j
            for edge in (1, 2):
                col = oracle.oracle_green_column(d, k, edge, 100)
                xs = d.x_full[10:301:10]
                K = R.kernel_matrix(bc, k, xs, [1.0])[:, edge - 1, :, 0]
                ref = col[:, 10:301:10]
                assert np.max(np.abs(ref - K)) <= 0.02 * np.max(np.abs(K))


def test_criterion_6_semigroup():
    g = PanelGrid.uniform(30, 0.5)
    with criterion(6, "semigroup correctness", 120.0):
        for bc in GENERATOR_PRESETS:
            assert T.semigroup_property_check(bc, smooth(g), 0.5, 0.7) <= 1e-5
        bc = ex32(1, 0)
        f0 = GridFunction.from_function(PanelGrid.uniform(40, 0.5), lambda e, x: np.exp(-x) * (e == 1))
        for t in (0.5, 1.0, 2.0):
            ft = T.evolve(bc, f0, t)
            i = 20
            assert abs(ft.values[0, i] / f0.values[0, i] / np.exp(t) - 1) <= 1e-4
        neu = preset("neumann")
        f0 = GridFunction.from_function(g, lambda e, x: np.exp(-(x - 3) ** 2) * (e == 1))
        for t in (0.5, 2.0, 5.0):
            assert abs(T.evolve(neu, f0, t).mass() - f0.mass()) <= 1e-6
        for bc in (ex33(np.pi / 4), preset("example-6.6")):
            a = T.evolve(bc, smooth(g), 1.0)
            b = T.evolve(bc, smooth(g), 1.0, T.ContourSpec(aperture=0.7, n_nodes=40))
            assert (a - b).norm() <= 1e-6 * smooth(g).norm()


def test_criterion_7_invariance():
    P = T.Cone.POSITIVE_CONE
    Linf = T.Cone.LINF_UNIT_BALL
    with criterion(7, "invariance suite", 180.0):
        for a11 in (-2.0, -0.3, 0.0, 1.5, 1 + 1j, -1 - 0.5j):
            for a21 in (-1.0, -1e-3, 0.0, 0.5, 2.0, 1j):
                bc = ex32(a11, a21)
                positive = T.invariance_msectorial(bc, P).verdict is T.Verdict.PROVEN_BY_CRITERION
                expect = np.imag(a11) == 0 and np.imag(a21) == 0 and np.real(a21) >= 0
                assert positive == expect, (a11, a21)
                linf = T.invariance_msectorial(bc, Linf).verdict is T.Verdict.PROVEN_BY_CRITERION
                assert linf == (np.real(a11) <= 0 and a21 == 0), (a11, a21)
        for tau in (0.3, np.pi / 4, 1.2):
            r = T.invariance_kernel_sample(ex33(tau), T.Property.REAL)
            assert r.verdict is T.Verdict.COUNTEREXAMPLE_FOUND
            assert abs(r.witness["value"] - 1j * np.tan(tau)) <= 1e-12 * (1 + np.tan(tau))
        r = T.asymptotic_positivity(preset("example-6.6"))
        assert r.data["iv_holds"]
        kap = np.array(r.data["kappas"])
        assert np.max(np.abs(np.abs(r.data["condition_iv"]) - (kap - 1) / (kap + 1))) <= 1e-10


def test_criterion_7_time_domain_negative_part():
    """Known failure: for this initial datum the rescaled negative part grows.

    The limit of ``exp(-t) T(t) f0`` is the projection onto the eigenfunction
    with coefficients ``(1, -1)``, which is not a positive function, so the
    negative part tends to a positive constant from below.
    """
    bc = preset("example-6.6")
    f0 = GridFunction.from_function(PanelGrid.uniform(40, 0.5),
                                    lambda e, x: np.exp(-(x - 3) ** 2) * (e == 1))
    with criterion(7, "time-domain negative part decreasing", 180.0):
        vals = T.rescaled_negative_parts(bc, f0, [1.0, 2.0, 4.0, 8.0])
        assert all(b < a for a, b in zip(vals, vals[1:])), vals


def test_criterion_8_uniform_boundedness():
    with criterion(8, "uniform-boundedness sufficient check", 1.0):
        # det = 2ik cos(tau): the only pole is k = 0 and it is removable
        for tau in (0.0, 0.4, np.pi / 4, 1.4):
            bc = ex33(tau)
            assert [abs(p.k) < 1e-9 for p in cayley.poles(bc)] in ([], [True])
            assert cayley.poles(bc).non_removable == ()
            assert S.generator_verdict(bc).uniformly_bounded_sufficient is True
        # det = ik (A11 + ik): poles 0 (removable) and i A11
        for a11 in (-1.0, -0.2 + 3j, -4 - 1j):
            bc = ex32(a11, 2.0)
            (p,) = cayley.poles(bc).non_removable
            assert abs(p.k - 1j * a11) <= 1e-12 and p.k.imag < 0
            assert S.generator_verdict(bc).uniformly_bounded_sufficient is True
        for a11 in (1.0, 0.5 + 1j, 2 - 3j):
            assert S.generator_verdict(ex32(a11, 2.0)).uniformly_bounded_sufficient is False
