import numpy as np
import pytest
from hypothesis import given, strategies as st

from pointlaplace import cayley, new_bc
from pointlaplace.boundary import (CayleyClass, Table1Row, canonicalize, classify, is_regular,
                                   msectorial_form)
from pointlaplace.errors import RankDeficient

from conftest import ex32, ex33, preset, random_invertible, random_regular_pair

ALL = ["dirichlet", "neumann", "example-3.2", "example-3.3", "example-3.4", "example-3.5",
       "example-6.6"]


def test_new_bc_examples():
    assert preset("dirichlet").rank_ok
    assert preset("example-3.5").rank_ok
    assert not new_bc(np.zeros((2, 2)), np.zeros((2, 2))).rank_ok


def test_bcpair_is_immutable():
    bc = preset("neumann")
    with pytest.raises(ValueError):
        bc.A[0, 0] = 1


def test_is_regular_examples(ex35):
    assert is_regular(ex32(1, 0))
    assert not is_regular(ex35)
    assert is_regular(preset("neumann"))


def test_classify_examples(ex34, ex35):
    cl = classify(ex34)
    assert cl.regular and (cl.dim_ker_A, cl.dim_ker_B) == (0, 1)
    assert cl.table1_row is Table1Row.KER_A0_KER_B1
    assert cl.cayley_class is CayleyClass.LINEAR_GROWTH
    assert cl.zero_one_defect == 0
    cl = classify(ex32(1, 0))
    assert cl.regular and cl.dim_ker_A == 1 and cl.dim_ker_B == 0 and cl.msectorial is not None
    assert classify(ex32(1, 2)).dim_ker_A == 1
    assert classify(ex35).cayley_class is CayleyClass.INFINITE
    assert classify(preset("dirichlet")).table1_row is Table1Row.KER_A0_KER_B2


def test_table1_row_for_one_one_case():
    cl = classify(ex33(0.3))
    assert (cl.dim_ker_A, cl.dim_ker_B) == (1, 1)
    assert cl.table1_row is Table1Row.KER_A1_KER_B1
    assert cl.cayley_class is CayleyClass.UNIFORMLY_BOUNDED


def test_msectorial_examples(ex34):
    f = msectorial_form(ex32(1.5, 2.0))
    np.testing.assert_allclose(f.P, 0)
    np.testing.assert_allclose(f.L, [[1.5, 0], [2.0, 0]])
    f = msectorial_form(preset("dirichlet"))
    np.testing.assert_allclose(f.P, np.eye(2))
    np.testing.assert_allclose(f.L, 0)
    assert msectorial_form(ex34) is None
    # PT-symmetric family: sectorial only in the Kirchhoff case tau = 0
    assert msectorial_form(ex33(0.5)) is None
    assert msectorial_form(ex33(0.0)) is not None


def _check_form(bc, f):
    A, B = bc.A, bc.B
    Pp = np.eye(2) - f.P
    np.testing.assert_allclose(f.P @ f.P, f.P, atol=1e-12)
    np.testing.assert_allclose(f.P, f.P.conj().T, atol=1e-12)
    assert np.linalg.norm(Pp @ f.L @ Pp - f.L) <= 1e-10
    scale = np.linalg.norm(A, 2) + np.linalg.norm(B, 2)
    resid = np.linalg.norm(f.C @ A - (f.L + f.P), 2) + np.linalg.norm(f.C @ B - Pp, 2)
    assert resid <= 1e-10 * scale * max(1.0, np.linalg.norm(f.C, 2))


@pytest.mark.parametrize("name", ALL)
def test_msectorial_reproduces_pair(name):
    bc = preset(name)
    f = msectorial_form(bc)
    if f is not None:
        _check_form(bc, f)


def test_msectorial_general_rank_one_b():
    # Robin on edge 1, Dirichlet on edge 2: A = [[a, 0], [0, 1]], B = [[1, 0], [0, 0]]
    bc = new_bc([[2.0, 0], [0, 1]], [[1, 0], [0, 0]])
    f = msectorial_form(bc)
    np.testing.assert_allclose(f.P, np.diag([0, 1]), atol=1e-12)
    np.testing.assert_allclose(f.L, np.diag([2.0, 0]), atol=1e-12)
    _check_form(bc, f)


def test_canonicalize_examples():
    out = canonicalize(new_bc(2 * np.eye(2), np.zeros((2, 2))))
    np.testing.assert_array_equal(out.A, np.eye(2))
    np.testing.assert_array_equal(out.B, 0)
    out = canonicalize(new_bc(np.eye(2), np.eye(2)))
    np.testing.assert_array_equal(out.A, np.eye(2))
    np.testing.assert_array_equal(out.B, np.eye(2))
    with pytest.raises(RankDeficient):
        canonicalize(new_bc(np.zeros((2, 2)), np.zeros((2, 2))))


@given(st.integers(0, 2**32 - 1))
def test_canonicalize_orbit_invariance(seed):
    rng = np.random.default_rng(seed)
    for bc in (ex33(0.7), random_regular_pair(rng)):
        ref = canonicalize(bc)
        out = canonicalize(bc.transformed(random_invertible(rng)))
        np.testing.assert_allclose(out.A, ref.A, atol=1e-10)
        np.testing.assert_allclose(out.B, ref.B, atol=1e-10)
        twice = canonicalize(ref)
        np.testing.assert_allclose(twice.A, ref.A, atol=1e-14)
        np.testing.assert_allclose(twice.B, ref.B, atol=1e-14)


@given(st.integers(0, 2**32 - 1), st.sampled_from(ALL))
def test_classification_equivalence_invariance(seed, name):
    rng = np.random.default_rng(seed)
    bc = preset(name) if name != "example-3.2" else ex32(rng.standard_normal(), rng.standard_normal())
    a = classify(bc)
    b = classify(bc.transformed(random_invertible(rng)))
    for field in ("rank_ok", "regular", "dim_ker_A", "dim_ker_B", "table1_row", "cayley_class"):
        assert getattr(a, field) == getattr(b, field)
    assert (a.msectorial is None) == (b.msectorial is None)
    np.testing.assert_allclose(a.P, b.P, atol=1e-9)
    if a.msectorial is not None:
        np.testing.assert_allclose(a.msectorial.L, b.msectorial.L, atol=1e-9)


def test_regularity_matches_det_polynomial():
    rng = np.random.default_rng(7)
    pairs = [preset(n) for n in ALL]
    for _ in range(1000):
        # mix generic and structurally degenerate pairs
        A = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        B = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        kind = rng.integers(4)
        if kind == 1:
            A[:, 1] = 0
            B[:, 1] = 0
        elif kind == 2:
            A[1] = 0
            B[0] = 0
        elif kind == 3:
            v = rng.standard_normal(2)
            A = np.outer(A[:, 0], v)
            B = np.outer(B[:, 0], [-v[1], v[0]])
        pairs.append(new_bc(A, B))
    for bc in pairs:
        p = cayley.det_poly(bc)
        assert is_regular(bc) == (bc.rank_ok and not p.is_identically_zero())
