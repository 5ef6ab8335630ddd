"""Finite-difference oracle for ``Delta(A, B)`` on two truncated half-lines.

Every quantity here is computed from the discretized operator alone (no
Cayley transform, no Green's kernel) so that it can arbitrate the analytic
code paths.

Each edge carries nodes ``x_j = j h``, ``j = 0..n`` with ``n = L/h``.  The
far end ``x_n = L`` is a homogeneous Dirichlet node.  The boundary values
``psi(0)`` are eliminated through the boundary equations
``A psi(0) + B psi'(0) = 0`` with the one-sided stencil
``psi'(0) ~ (-3 psi_0 + 4 psi_1 - psi_2) / 2h``, which leaves a square
matrix on the interior nodes ``j = 1..n-1`` of both edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import complex2 as c2
from .boundary import BCPair
from .errors import ConvergenceFailure, MeshTooCoarse, Singular, SpectralCollision

__all__ = [
    "Discretization",
    "discretize",
    "oracle_eigenvalues",
    "oracle_expm_apply",
    "oracle_resolvent_norm",
    "oracle_green_column",
    "richardson_ratio",
]

MAX_DENSE = 8000
DIRECT_DENSE = 2000


@dataclass(frozen=True, eq=False)
class Discretization:
    bc: BCPair
    L: float
    h: float
    n: int
    matrix: sp.csr_matrix
    G1: np.ndarray
    G2: np.ndarray

    @property
    def m(self) -> int:
        """Interior unknowns per edge."""
        return self.n - 1

    @property
    def size(self) -> int:
        return 2 * self.m

    @property
    def x(self) -> np.ndarray:
        """Interior node positions (shared by both edges)."""
        return self.h * np.arange(1, self.n)

    @property
    def x_full(self) -> np.ndarray:
        return self.h * np.arange(self.n + 1)

    def sample(self, func) -> np.ndarray:
        """Interior vector from ``func(edge, x)`` with ``edge in {1, 2}``."""
        return np.concatenate([np.asarray(func(e, self.x), dtype=complex) for e in (1, 2)])

    def full_values(self, vec) -> np.ndarray:
        """Values on all nodes ``0..n`` as a ``(2, n+1)`` array."""
        vec = np.asarray(vec)
        out = np.zeros((2, self.n + 1), dtype=complex)
        out[0, 1:-1] = vec[: self.m]
        out[1, 1:-1] = vec[self.m:]
        psi1 = out[:, 1]
        psi2 = out[:, 2]
        out[:, 0] = self.G1 @ psi1 + self.G2 @ psi2
        return out

    def inner_norm(self, vec) -> float:
        return float(np.sqrt(self.h) * np.linalg.norm(vec))


def discretize(bc: BCPair, L: float = 40.0, h: float = 0.01) -> Discretization:
    if L / h < 200 - 1e-9:
        raise MeshTooCoarse(f"need L/h >= 200, got {L / h:g}")
    n = int(round(L / h))
    m = n - 1
    E = bc.A - 1.5 / h * bc.B
    try:
        Einv = c2.inverse(E, bc.tol)
    except Singular:
        raise SpectralCollision("boundary equations cannot be solved for psi(0) at this h") from None
    G1 = -2.0 / h * Einv @ bc.B
    G2 = 0.5 / h * Einv @ bc.B
    real = np.all(np.isreal(bc.A)) and np.all(np.isreal(bc.B))
    dtype = float if real else complex

    main = -2.0 * np.ones(m)
    off = np.ones(m - 1)
    T = sp.diags([off, main, off], [-1, 0, 1], shape=(m, m), format="lil", dtype=dtype)
    M = sp.block_diag([T, T], format="lil", dtype=dtype)
    for e in range(2):
        row = e * m
        for e2 in range(2):
            M[row, e2 * m] += G1[e, e2].real if dtype is float else G1[e, e2]
            M[row, e2 * m + 1] += G2[e, e2].real if dtype is float else G2[e, e2]
    matrix = (M / h**2).tocsr()
    return Discretization(bc=bc, L=float(L), h=float(h), n=n, matrix=matrix, G1=G1, G2=G2)


def _sort(vals, count, key):
    vals = np.asarray(vals, dtype=complex)
    if key == "real":
        order = np.argsort(-vals.real, kind="stable")
    elif key == "offaxis":
        # distance to the half-line (-inf, 0] where the discretized continuum sits
        dist = np.where(vals.real >= 0, np.abs(vals), np.abs(vals.imag))
        order = np.argsort(-dist, kind="stable")
    else:
        raise ValueError(f"unknown key {key!r}")
    return vals[order][:count]


def oracle_eigenvalues(d: Discretization, count: int = 4, key: str = "real") -> np.ndarray:
    """``count`` eigenvalues of the discretized ``Delta(A, B)``.

    Small matrices are solved densely.  Larger ones are located with a dense
    solve on a coarse mesh (``h = 0.05``, ``L <= 20``) and each candidate is
    then refined on the requested mesh by shift-invert Arnoldi.
    """
    if d.size > MAX_DENSE:
        raise MeshTooCoarse(f"oracle matrix of size {d.size} exceeds the cap {MAX_DENSE}")
    if d.size <= DIRECT_DENSE:
        return _sort(sla.eigvals(d.matrix.toarray()), count, key)

    coarse = discretize(d.bc, L=min(d.L, 20.0), h=max(d.h, 0.05))
    candidates = _sort(sla.eigvals(coarse.matrix.toarray()), count, key)
    M = d.matrix.astype(complex).tocsc()
    refined = []
    for cand in candidates:
        try:
            val = spla.eigs(M, k=1, sigma=cand, which="LM", return_eigenvectors=False, tol=0)
        except spla.ArpackNoConvergence as exc:  # pragma: no cover - defensive
            raise ConvergenceFailure(str(exc)) from exc
        refined.append(complex(val[0]))
    out = []
    for v in refined:
        if all(abs(v - w) > 1e-9 * (1 + abs(v)) for w in out):
            out.append(v)
    return _sort(out, count, key)


def oracle_expm_apply(d: Discretization, f0, t: float) -> np.ndarray:
    """``exp(t M) f0`` on the interior unknowns."""
    f0 = np.asarray(f0, dtype=complex)
    if t == 0:
        return f0.copy()
    if not (0 < t <= 10):
        raise ValueError("t must lie in (0, 10]")
    return spla.expm_multiply(t * d.matrix.astype(complex), f0)


def _shifted(d: Discretization, k: complex):
    return (d.matrix.astype(complex) + (k * k) * sp.identity(d.size, format="csr")).tocsc()


def oracle_resolvent_norm(d: Discretization, k: complex, dense: bool = False) -> float:
    """``||(M + k^2)^-1||``, the largest singular value of the inverse.

    The default runs sparse Lanczos on an LU-factored inverse; ``dense=True``
    takes ``1 / sigma_min`` from a full SVD instead (slow, for cross-checks).
    """
    K = _shifted(d, complex(k))
    if dense:
        if d.size > DIRECT_DENSE:
            raise MeshTooCoarse(f"dense SVD limited to size {DIRECT_DENSE}")
        s = sla.svdvals(K.toarray())
        if s[-1] <= 1e-14 * s[0]:
            raise SpectralCollision("-k^2 is an oracle eigenvalue")
        return float(1.0 / s[-1])
    try:
        lu = spla.splu(K)
    except RuntimeError as exc:
        raise SpectralCollision(str(exc)) from exc
    op = spla.LinearOperator(
        K.shape, matvec=lu.solve, rmatvec=lambda v: lu.solve(v, trans="H"), dtype=complex
    )
    s = spla.svds(op, k=1, which="LM", return_singular_vectors=False, tol=1e-10,
                  random_state=0)
    return float(s[0])


def oracle_green_column(d: Discretization, k: complex, edge: int, y_index: int) -> np.ndarray:
    """Discrete kernel ``r(., y; k)`` of ``(-Delta - k^2)^-1`` for ``y = x_{y_index}``
    on ``edge``; returned on all nodes as a ``(2, n+1)`` array."""
    rhs = np.zeros(d.size, dtype=complex)
    rhs[(edge - 1) * d.m + (y_index - 1)] = -1.0 / d.h
    K = _shifted(d, complex(k))
    return d.full_values(spla.spsolve(K, rhs))


def richardson_ratio(exact: complex, coarse: complex, fine: complex) -> float:
    """Error ratio ``|coarse - exact| / |fine - exact|``; 4 for second order."""
    return float(abs(coarse - exact) / abs(fine - exact))
