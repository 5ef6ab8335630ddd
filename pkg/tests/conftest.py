import numpy as np
import pytest
from hypothesis import settings

from pointlaplace import new_bc
from pointlaplace.cli import preset_config
from pointlaplace.complex2 import DEFAULT_TOL

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def preset(name, **params):
    return preset_config(name, **params).to_bc(DEFAULT_TOL)


def ex32(a11=1.0, a21=0.0):
    return preset("example-3.2", A11=a11, A21=a21)


def ex33(tau=np.pi / 4):
    return preset("example-3.3", tau=tau)


@pytest.fixture
def dirichlet():
    return preset("dirichlet")


@pytest.fixture
def neumann():
    return preset("neumann")


@pytest.fixture
def ex34():
    return preset("example-3.4")


@pytest.fixture
def ex35():
    return preset("example-3.5")


@pytest.fixture
def ex66():
    return preset("example-6.6")


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_invertible(rng):
    while True:
        C = random_complex(rng, (2, 2))
        s = np.linalg.svd(C, compute_uv=False)
        if s[-1] > 0.2 * s[0]:
            return C


def random_regular_pair(rng):
    while True:
        bc = new_bc(random_complex(rng, (2, 2)), random_complex(rng, (2, 2)))
        if bc.rank_ok:
            return bc


# criterion number -> list of (sub-check, passed, seconds); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[num]
        ok = all(p for _, p, _ in parts)
        secs = sum(s for _, _, s in parts)
        failed = [name for name, p, _ in parts if not p]
        note = f"  failed: {', '.join(failed)}" if failed else ""
        terminalreporter.write_line(
            f"criterion {num}: {'PASS' if ok else 'FAIL'} ({len(parts)} checks, {secs:.1f} s){note}")
