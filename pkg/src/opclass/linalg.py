"""Dense complex linear algebra kernels.

Everything here is a pure function of its inputs. Decompositions are backed
by LAPACK through numpy; what this module adds is input validation, a
single tolerance record, and deterministic eigenvector bases inside
degenerate eigenvalue clusters so that downstream reports are reproducible.

Default tolerances (all relative to the norm of the input, with an absolute
floor of ``1e-12``):

=============  =======  ====================================================
field          default  used for
=============  =======  ====================================================
``floor``      1e-12    absolute floor added to every relative tolerance
``herm``       1e-10    Hermiticity / PSD validation of inputs
``degenerate`` 1e-12    eigenvalue ties that get a canonical eigenbasis
``rank``       1e-10    singular values treated as zero (polar, kernels)
``cluster``    1e-8     grouping of singular values into one eigenspace
``psd``        1e-10    sign decisions ("A >= 0") in the class tests
``block``      1e-8     residuals of subspace / block-representation checks
``angle``      1e-8     principal angles when comparing subspaces
=============  =======  ====================================================
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace
from typing import NamedTuple

import numpy as np


class InputError(ValueError):
    """Raised when an operand violates an operation's preconditions."""


@dataclass(frozen=True)
class Tolerances:
    floor: float = 1e-12
    herm: float = 1e-10
    degenerate: float = 1e-12
    rank: float = 1e-10
    cluster: float = 1e-8
    psd: float = 1e-10
    block: float = 1e-8
    angle: float = 1e-8

    def scaled(self, field: str, scale: float) -> float:
        """Relative tolerance ``field`` times ``scale``, plus the floor."""
        return getattr(self, field) * scale + self.floor

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


def resolve_tolerances(tol, field: str = "psd") -> Tolerances:
    """Accept ``None``, a bare float (overriding ``field``) or a record."""
    if tol is None:
        return DEFAULT_TOLERANCES
    if isinstance(tol, Tolerances):
        return tol
    tol = float(tol)
    if not np.isfinite(tol) or tol < 0:
        raise InputError(f"tolerance must be a finite non-negative number, got {tol}")
    return replace(DEFAULT_TOLERANCES, **{field: tol})


class HermEig(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


class PolarParts(NamedTuple):
    W: np.ndarray
    P: np.ndarray


def as_matrix(T, *, square: bool = False, name: str = "matrix") -> np.ndarray:
    """Validate ``T`` and return it as a complex128 2-D array (a copy)."""
    try:
        M = np.array(T, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name} is not numeric: {exc}") from None
    if M.ndim != 2:
        raise InputError(f"{name} must be 2-D, got shape {M.shape}")
    if M.size and not np.all(np.isfinite(M)):
        raise InputError(f"{name} has non-finite entries")
    if square and M.shape[0] != M.shape[1]:
        raise InputError(f"{name} must be square, got shape {M.shape}")
    return M


def adjoint(T: np.ndarray) -> np.ndarray:
    return T.conj().T


def op_norm(T) -> float:
    """Largest singular value (0 for an empty or zero matrix)."""
    T = as_matrix(T)
    if T.size == 0:
        return 0.0
    return float(np.linalg.svd(T, compute_uv=False)[0])


def min_modulus(T) -> float:
    """inf ||Tx|| over unit x, i.e. the smallest singular value on the domain."""
    T = as_matrix(T)
    rows, cols = T.shape
    if cols == 0:
        return 0.0
    if cols > rows:
        return 0.0
    return float(np.linalg.svd(T, compute_uv=False)[-1])


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # first entry of (near-)maximal modulus is made real positive
    mags = np.abs(v)
    top = mags.max()
    if top == 0:
        return v
    i = int(np.argmax(mags >= top * (1 - 1e-10)))
    return v * (np.conj(v[i]) / mags[i])


def canonical_basis(Q: np.ndarray) -> np.ndarray:
    """Basis-independent orthonormal basis of ``span(Q)``.

    Pivoted Gram-Schmidt on the projector ``Q Q^*``: at each step the
    standard basis vector with the largest remaining component in the
    subspace is taken (ties resolved to the lowest index), so any two
    orthonormal bases of the same subspace give the same output.
    """
    n, d = Q.shape
    if d == 0:
        return Q.copy()
    R = Q @ adjoint(Q)
    cols = []
    for _ in range(d):
        norms = np.linalg.norm(R, axis=0)
        j = int(np.argmax(norms >= norms.max() - 1e-10))
        v = R[:, j] / norms[j]
        for u in cols:  # second pass against accumulated rounding
            v = v - u * np.vdot(u, v)
        v = _fix_phase(v / np.linalg.norm(v))
        cols.append(v)
        R = R - np.outer(v, v.conj() @ R)
    return np.column_stack(cols)


def _canonicalize(values: np.ndarray, vectors: np.ndarray, tols: Tolerances) -> np.ndarray:
    vectors = vectors.copy()
    n = len(values)
    scale = float(np.max(np.abs(values))) if n else 0.0
    gap = tols.scaled("degenerate", scale)
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and values[stop] - values[stop - 1] <= gap:
            stop += 1
        if stop - start == 1:
            vectors[:, start] = _fix_phase(vectors[:, start])
        else:
            vectors[:, start:stop] = canonical_basis(vectors[:, start:stop])
        start = stop
    return vectors


def check_hermitian(A, tols: Tolerances = DEFAULT_TOLERANCES, name: str = "matrix") -> np.ndarray:
    A = as_matrix(A, square=True, name=name)
    scale = op_norm(A) if A.size else 0.0
    if A.size and np.linalg.norm(A - adjoint(A), 2) > tols.scaled("herm", scale):
        raise InputError(f"{name} is not Hermitian")
    return (A + adjoint(A)) / 2


def herm_eig(A, tol=None) -> HermEig:
    """Ascending eigenvalues and a deterministic orthonormal eigenbasis."""
    tols = resolve_tolerances(tol, "herm")
    H = check_hermitian(A, tols)
    values, vectors = np.linalg.eigh(H)
    return HermEig(values, _canonicalize(values, vectors, tols))


def psd_min(A, tol=None) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue of a Hermitian matrix and a unit eigenvector for it."""
    values, vectors = herm_eig(A, tol)
    if len(values) == 0:
        raise InputError("empty matrix has no eigenvalues")
    return float(values[0]), vectors[:, 0]


def is_psd(A, tol=None) -> bool:
    tols = resolve_tolerances(tol, "psd")
    H = check_hermitian(A, tols)
    if H.size == 0:
        return True
    lam = np.linalg.eigvalsh(H)
    return bool(lam[0] >= -tols.scaled("psd", float(np.abs(lam).max())))


def svd(T) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Thin SVD ``T = U @ diag(S) @ V^*`` with ``S`` descending."""
    T = as_matrix(T)
    U, S, Vh = np.linalg.svd(T, full_matrices=False)
    return U, S, adjoint(Vh)


def modulus_eig(T, tol=None) -> HermEig:
    """Eigen-decomposition of ``|T|`` computed from the SVD of ``T``.

    Going through the SVD keeps small singular values accurate (squaring
    into ``T^*T`` would lose half the digits). Ordering and degenerate
    bases follow :func:`herm_eig`.
    """
    tols = resolve_tolerances(tol, "herm")
    T = as_matrix(T, square=True)
    _, S, Vh = np.linalg.svd(T)
    values = S[::-1].copy()
    vectors = adjoint(Vh)[:, ::-1]
    return HermEig(values, _canonicalize(values, vectors, tols))


def modulus(T) -> np.ndarray:
    """``|T| = (T^*T)^{1/2}``."""
    T = as_matrix(T)
    _, S, Vh = np.linalg.svd(T, full_matrices=False)
    V = adjoint(Vh)
    P = (V * S) @ Vh
    return (P + adjoint(P)) / 2


def numerical_rank(S: np.ndarray, tols: Tolerances) -> int:
    if len(S) == 0:
        return 0
    return int(np.sum(S > tols.scaled("rank", float(S[0]))))


def polar(T, tol=None) -> PolarParts:
    """``T = W |T|`` with ``W`` a partial isometry and ``N(W) = N(T)``.

    Singular values at or below ``rank * sigma_max`` are treated as zero,
    so ``W`` has exactly the numerical rank of ``T``.
    """
    tols = resolve_tolerances(tol, "rank")
    T = as_matrix(T, square=True)
    U, S, Vh = np.linalg.svd(T)
    r = numerical_rank(S, tols)
    W = U[:, :r] @ Vh[:r, :]
    return PolarParts(W, modulus(T))


def null_space(T, tol=None) -> np.ndarray:
    """Orthonormal (canonical) basis of the numerical kernel of ``T``."""
    tols = resolve_tolerances(tol, "rank")
    T = as_matrix(T)
    n = T.shape[1]
    if T.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, S, Vh = np.linalg.svd(T)
    r = numerical_rank(S, tols)
    return canonical_basis(adjoint(Vh[r:, :]))


def commutator_norm(T) -> float:
    """``||T^*T - TT^*||``, zero exactly for normal ``T``."""
    T = as_matrix(T, square=True)
    if T.size == 0:
        return 0.0
    return op_norm(adjoint(T) @ T - T @ adjoint(T))


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    nv = np.linalg.norm(v)
    if nv == 0:
        raise InputError("zero vector")
    return v / nv
