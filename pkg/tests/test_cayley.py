import numpy as np
import pytest
from hypothesis import given, strategies as st

from pointlaplace import cayley, new_bc
from pointlaplace.boundary import CayleyClass
from pointlaplace.complex2 import operator_norm
from pointlaplace.errors import AtPole, IdenticallySingular

from conftest import ex32, ex33, preset, random_invertible, random_regular_pair


def test_det_poly_examples(ex66):
    a11 = 0.7 - 0.2j
    p = cayley.det_poly(ex32(a11, 3.0))
    assert (p.c0, p.c1, p.c2) == pytest.approx((0, a11, 1), abs=1e-14)
    tau = 0.4
    p = cayley.det_poly(ex33(tau))
    for k in (0.3, 1 + 2j, -4j):
        assert p(k) == pytest.approx(2j * k * np.cos(tau), abs=1e-13)
    p = cayley.det_poly(ex66)
    for k in (0.3, 1 + 2j):
        assert p(k) == pytest.approx(-k * k - 1, abs=1e-13)


def test_det_poly_end_coefficients():
    rng = np.random.default_rng(3)
    for _ in range(50):
        bc = random_regular_pair(rng)
        p = cayley.det_poly(bc)
        assert p.c0 == pytest.approx(np.linalg.det(bc.A), abs=1e-12)
        assert p.c2 == pytest.approx(np.linalg.det(bc.B), abs=1e-12)


def test_poles_examples(ex34, ex35):
    ps = cayley.poles(ex32(1, 0))
    got = sorted(((round(p.k.imag, 12), p.removable, p.order) for p in ps))
    assert got == [(0.0, True, 1), (1.0, False, 1)]
    assert len(cayley.poles(ex34)) == 0
    with pytest.raises(IdenticallySingular):
        cayley.poles(ex35)


def test_poles_double_root():
    ps = cayley.poles(new_bc(np.eye(2), np.eye(2)))
    (p,) = ps.poles
    assert p.order == 2 and not p.removable and p.k == pytest.approx(1j)
    (p,) = cayley.poles(preset("neumann")).poles
    assert p.order == 2 and p.removable and abs(p.k) < 1e-14


def test_removable_poles_have_finite_limits():
    for bc in (ex32(1, 0), ex32(-2, 1), ex33(0.3), preset("neumann")):
        for p in cayley.poles(bc):
            ring = [cayley.eval(bc, p.k + 1e-5 * np.exp(1j * th)).S for th in np.linspace(0, 6, 7)]
            spread = max(np.abs(r - ring[0]).max() for r in ring)
            if p.removable:
                assert spread < 1e-3
            else:
                assert spread > 1.0


def test_eval_examples(ex34):
    for k in (0.5, 1 + 1j, -3j + 2):
        np.testing.assert_allclose(cayley.eval(preset("neumann"), k).S, np.eye(2), atol=1e-14)
    np.testing.assert_allclose(cayley.eval(ex34, 1j).S, [[-1, 0], [2, -1]], atol=1e-14)
    r2 = np.sqrt(2)
    for kap in (0.3, 1.0, 7.0):
        np.testing.assert_allclose(cayley.eval(ex33(np.pi / 4), 1j * kap).S,
                                   [[1j, r2], [r2, -1j]], atol=1e-13)
    with pytest.raises(AtPole):
        cayley.eval(ex32(1, 0), 1j)


def test_eval_closed_form_example_32():
    a, c = 0.8 + 0.3j, -1.2
    for k in (0.4 + 2j, 3.0, -1 + 0.5j):
        S = cayley.eval(ex32(a, c), k).S
        expected = np.array([[-(a - 1j * k) / (a + 1j * k), 0], [-2 * c / (a + 1j * k), 1]])
        np.testing.assert_allclose(S, expected, atol=1e-13)


def test_eval_adjoint_reflected_examples():
    np.testing.assert_allclose(cayley.eval_adjoint_reflected(preset("neumann"), 1 + 1j), np.eye(2),
                               atol=1e-14)
    np.testing.assert_allclose(cayley.eval_adjoint_reflected(preset("dirichlet"), 0.3 + 2j), -np.eye(2),
                               atol=1e-14)
    # S(-conj(2i)) = S(2i) = diag(-(1-(-2))/(1+(-2)), 1) = diag(3, 1)
    np.testing.assert_allclose(cayley.eval_adjoint_reflected(ex32(1, 0), 2j), np.diag([3, 1]), atol=1e-13)


def test_growth_class_examples(ex34, ex35):
    assert cayley.growth_class(ex34) is CayleyClass.LINEAR_GROWTH
    assert cayley.growth_class(ex33(1.2)) is CayleyClass.UNIFORMLY_BOUNDED
    assert cayley.growth_class(ex35) is CayleyClass.INFINITE


@pytest.mark.parametrize("bc, cls", [
    (ex32(1, 2), CayleyClass.UNIFORMLY_BOUNDED),
    (ex33(np.pi / 4), CayleyClass.UNIFORMLY_BOUNDED),
    (preset("example-3.4"), CayleyClass.LINEAR_GROWTH),
    (preset("example-6.6"), CayleyClass.UNIFORMLY_BOUNDED),
    (new_bc(np.eye(2), [[0.5, 0], [-1, 0]]), CayleyClass.UNIFORMLY_BOUNDED),
])
def test_empirical_growth_matches_class(bc, cls):
    e = cayley.growth_exponent(bc)
    assert cayley.growth_class(bc) is cls
    if cls is CayleyClass.LINEAR_GROWTH:
        assert 0.9 <= e <= 1.1
    else:
        assert e <= 0.1


@given(st.integers(0, 2**32 - 1))
def test_defining_identity_and_invariance(seed):
    rng = np.random.default_rng(seed)
    bc = random_regular_pair(rng)
    C = random_invertible(rng)
    bc2 = bc.transformed(C)
    for _ in range(5):
        k = complex(*rng.standard_normal(2) * 3)
        try:
            ev = cayley.eval(bc, k)
        except AtPole:
            continue
        scale = operator_norm(bc.A) + abs(k) * operator_norm(bc.B)
        resid = np.linalg.norm((bc.A + 1j * k * bc.B) @ ev.S + (bc.A - 1j * k * bc.B), 2)
        assert resid <= 1e-11 * scale * max(1.0, ev.cond)
        np.testing.assert_allclose(cayley.eval(bc2, k).S, ev.S,
                                   atol=1e-11 * max(1.0, ev.cond) * operator_norm(ev.S))


def test_nonremovable_upper_poles_are_eigenparameters():
    rng = np.random.default_rng(11)
    for _ in range(200):
        bc = random_regular_pair(rng)
        for p in cayley.poles(bc).non_removable:
            s = np.linalg.svd(bc.A + 1j * p.k * bc.B, compute_uv=False)
            assert s[-1] <= 1e-8 * s[0]


def test_msectorial_norm_bound():
    for bc in (ex32(1.0, 2.0), ex32(-0.5, 1.0), preset("example-6.6")):
        L = bc.A  # B is the identity for these pairs
        nL = operator_norm(L)
        for kap in np.linspace(2 * nL + 0.1, 50, 25):
            assert operator_norm(cayley.eval(bc, 1j * kap).S) <= 2 / (1 - nL / kap) + 1e-12


def test_adjoint_reflected_example_32():
    # A11 + ik = -1 and A11 - ik = 3 at k = 2i, so S = diag(3, 1)
    bc = preset("example-3.2", A11=1.0, A21=0.0)
    np.testing.assert_allclose(cayley.eval_adjoint_reflected(bc, 2j), np.diag([3.0, 1.0]), atol=1e-14)
