"""Invariant subspaces and the three-block representation of *-paranormal
matrices.

The space is split along the eigenspaces of ``|T|``: ``H0`` collects the
clusters above ``lambda`` (the alphas, descending), ``H1`` the cluster at
``lambda`` and ``H2`` everything below. For a *-paranormal operator the
conjugated matrix has the shape::

    [ V0   0     0 ]
    [ 0   lam V  A ]
    [ 0    0     B ]

with ``V0`` a direct sum of ``alpha_i`` times unitaries, ``V`` an
isometry, ``V^*A = 0``, ``A^*A + B^*B <= lam^2`` and ``||B|| <= lam``.
Failing any of these is reported, never raised: the input may simply not be
*-paranormal.

In finite dimension an isometry on ``H1`` is unitary, which together with
``V^*A = 0`` forces ``A = 0``. Non-zero ``A`` therefore only shows up in
inconsistent inputs, e.g. blocks assembled by hand with :func:`from_blocks`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .classify import PencilVerdict, pencil_min
from .io import matrix_from_json, matrix_to_json
from .linalg import (
    InputError,
    Tolerances,
    adjoint,
    as_matrix,
    canonical_basis,
    op_norm,
    resolve_tolerances,
)
from .spectra import auto_lambda, cluster


class InvarianceResult(NamedTuple):
    invariant: bool
    reducing: bool
    residual_inv: float
    residual_red: float


def invariant_check(T, basis, tol=None) -> InvarianceResult:
    """Is ``span(basis)`` invariant under ``T``, and does it reduce ``T``?

    Residuals are ``||(I-P) T P||`` and ``max(that, ||P T (I-P)||)``; flags
    compare them with ``tol * ||T||``.
    """
    tols = resolve_tolerances(tol, "block")
    T = as_matrix(T, square=True)
    Q = np.asarray(basis, dtype=complex)
    if Q.ndim == 1:
        Q = Q[:, None]
    if Q.shape[0] != len(T):
        raise InputError(f"basis has {Q.shape[0]} rows, matrix has {len(T)}")
    if Q.shape[1] and op_norm(adjoint(Q) @ Q - np.eye(Q.shape[1])) > tols.scaled("block", 1.0):
        raise InputError("basis columns are not orthonormal")
    P = Q @ adjoint(Q)
    I = np.eye(len(T))
    r_inv = op_norm((I - P) @ T @ P)
    r_red = max(r_inv, op_norm(P @ T @ (I - P)))
    lim = tols.scaled("block", op_norm(T))
    return InvarianceResult(r_inv <= lim, r_red <= lim, r_inv, r_red)


class HypoBlockResult(NamedTuple):
    res1: float
    res2: float
    ok1: bool
    ok2: bool


def hypo_block_check(C, A, B, tol=None) -> HypoBlockResult:
    """Necessary conditions for ``[[C, A], [0, B]]`` to be hyponormal.

    ``res1 = lambda_min(A^*A + B^*B - BB^*)`` and
    ``res2 = lambda_min(C^*C - CC^* - AA^*)``; both must be ``>= 0``, and
    ``res2 >= 0`` makes ``C`` hyponormal.
    """
    tols = resolve_tolerances(tol, "psd")
    C = as_matrix(C, square=True, name="C")
    A = as_matrix(A, name="A")
    B = as_matrix(B, square=True, name="B")
    if A.shape != (C.shape[0], B.shape[0]):
        raise InputError(f"A must be {C.shape[0]}x{B.shape[0]}, got {A.shape[0]}x{A.shape[1]}")
    X1 = adjoint(A) @ A + adjoint(B) @ B - B @ adjoint(B)
    X2 = adjoint(C) @ C - C @ adjoint(C) - A @ adjoint(A)
    res1 = float(np.linalg.eigvalsh((X1 + adjoint(X1)) / 2)[0]) if len(B) else 0.0
    res2 = float(np.linalg.eigvalsh((X2 + adjoint(X2)) / 2)[0]) if len(C) else 0.0
    scale = max(op_norm(C) if C.size else 0, op_norm(A) if A.size else 0, op_norm(B) if B.size else 0)
    lim = tols.scaled("psd", scale**2)
    return HypoBlockResult(res1, res2, res1 >= -lim, res2 >= -lim)


def _m2j(M):
    return matrix_to_json(M)


@dataclass
class BlockDecomposition:
    """Change of basis ``basis`` (columns ``H0 | H1 | H2``) and the
    conjugated matrix ``conj = basis^* T basis``.

    ``layout`` is ``"upper"`` for the representation of ``T`` and
    ``"lower"`` when it was obtained from ``T^*`` (the ``A`` block then sits
    below the diagonal).
    """

    lam: float
    lam_source: str
    layout: str
    basis: np.ndarray
    dims: tuple
    alphas: list
    alpha_dims: list
    conj: np.ndarray
    original: np.ndarray

    def _slices(self):
        d0, d1, d2 = self.dims
        return slice(0, d0), slice(d0, d0 + d1), slice(d0 + d1, d0 + d1 + d2)

    def block(self, i: int, j: int) -> np.ndarray:
        s = self._slices()
        return self.conj[s[i], s[j]]

    @property
    def basis_H0(self):
        return self.basis[:, self._slices()[0]]

    @property
    def basis_H1(self):
        return self.basis[:, self._slices()[1]]

    @property
    def basis_H2(self):
        return self.basis[:, self._slices()[2]]

    @property
    def V0(self):
        return self.block(0, 0)

    @property
    def V(self):
        X = self.block(1, 1)
        return X / self.lam if self.lam > 0 else X

    @property
    def A(self):
        return self.block(1, 2) if self.layout == "upper" else self.block(2, 1)

    @property
    def B(self):
        return self.block(2, 2)

    def reassemble(self) -> np.ndarray:
        return self.basis @ self.conj @ adjoint(self.basis)

    def to_dict(self) -> dict:
        return {
            "lambda": float(self.lam),
            "lambda_source": self.lam_source,
            "layout": self.layout,
            "dims": list(self.dims),
            "alphas": [float(a) for a in self.alphas],
            "alpha_dims": list(self.alpha_dims),
            "basis": _m2j(self.basis),
            "conj": _m2j(self.conj),
            "original": _m2j(self.original),
            "blocks": {
                "V0": _m2j(self.V0),
                "V": _m2j(self.V),
                "A": _m2j(self.A),
                "B": _m2j(self.B),
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BlockDecomposition":
        return cls(
            lam=d["lambda"],
            lam_source=d["lambda_source"],
            layout=d["layout"],
            basis=matrix_from_json(d["basis"]),
            dims=tuple(d["dims"]),
            alphas=list(d["alphas"]),
            alpha_dims=list(d["alpha_dims"]),
            conj=matrix_from_json(d["conj"]),
            original=matrix_from_json(d["original"]),
        )


CHECKS = (
    "zero_blocks",
    "V0_structure",
    "V_isometry",
    "VstarA",
    "contraction",
    "B_norm",
    "H2_pencil",
    "reassembly",
)


@dataclass
class BlockCheckReport:
    """Residuals of every representation condition.

    First-order residuals are divided by ``||T||`` and quadratic ones by
    ``||T||^2``; each verdict is ``residual <= tol``. ``H2_pencil`` is the
    *-paranormal pencil restricted to ``H2`` (a necessary condition; it is
    what rules out a non-normal ``B`` hiding under ``||B|| <= lam``).
    ``B_pencil_verdict`` re-decides ``||B|| <= lam`` through the certified
    pencil ``(lam^4 + k^2) I - 2k BB^*`` as a cross-check of the closed form.
    """

    layout: str
    zero_block_residuals: dict
    V0_structure_residual: float
    V_isometry_residual: float
    VstarA_residual: float
    contraction_residual: float
    B_norm_excess: float
    H2_pencil_min: float | None
    reassembly_residual: float
    verdicts: dict
    tol: float
    B_pencil_verdict: str | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v is True for v in self.verdicts.values())

    @property
    def failed(self) -> list:
        return [k for k, v in self.verdicts.items() if v is not True]

    def to_dict(self) -> dict:
        return {
            "layout": self.layout,
            "zero_block_residuals": dict(self.zero_block_residuals),
            "V0_structure_residual": self.V0_structure_residual,
            "V_isometry_residual": self.V_isometry_residual,
            "VstarA_residual": self.VstarA_residual,
            "contraction_residual": self.contraction_residual,
            "B_norm_excess": self.B_norm_excess,
            "H2_pencil_min": self.H2_pencil_min,
            "reassembly_residual": self.reassembly_residual,
            "verdicts": dict(self.verdicts),
            "tol": self.tol,
            "B_pencil_verdict": self.B_pencil_verdict,
            "notes": list(self.notes),
            "passed": self.passed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "BlockCheckReport":
        kw = {k: d[k] for k in d if k != "passed"}
        return cls(**kw)


def _split(T: np.ndarray, lam, tols: Tolerances):
    n = len(T)
    U, S, Vh = np.linalg.svd(T)
    values = S[::-1]
    vectors = adjoint(Vh)[:, ::-1]
    norm = float(S[0]) if n else 0.0
    groups = cluster(values, tols.cluster)
    if isinstance(lam, str):
        if lam != "auto":
            raise InputError(f"lambda must be 'auto' or a number, got {lam!r}")
        ess = auto_lambda(groups)
        lam_value, source = ess.center, "auto"
    else:
        lam_value, source = float(lam), "given"
        if lam_value < 0 or not np.isfinite(lam_value):
            raise InputError("lambda must be a finite non-negative number")
        near = [g for g in groups if abs(g.center - lam_value) <= tols.scaled("cluster", norm)]
        ess = min(near, key=lambda g: abs(g.center - lam_value)) if near else None
    start = 0
    spans = []
    for g in groups:
        spans.append((g, slice(start, start + g.multiplicity)))
        start += g.multiplicity
    above = [(g, s) for g, s in spans if g is not ess and g.center > lam_value][::-1]
    mid = [(g, s) for g, s in spans if g is ess]
    below = [(g, s) for g, s in spans if g is not ess and g.center < lam_value]
    cols = []
    for g, s in above + mid + below:
        cols.append(canonical_basis(vectors[:, s]))
    basis = np.column_stack(cols) if cols else np.zeros((n, 0), dtype=complex)
    dims = (
        sum(g.multiplicity for g, _ in above),
        sum(g.multiplicity for g, _ in mid),
        sum(g.multiplicity for g, _ in below),
    )
    return lam_value, source, basis, dims, [g.center for g, _ in above], [g.multiplicity for g, _ in above]


def _decompose(T: np.ndarray, lam, tols: Tolerances, layout: str = "upper") -> BlockDecomposition:
    lam_value, source, basis, dims, alphas, alpha_dims = _split(T, lam, tols)
    return BlockDecomposition(
        lam=lam_value,
        lam_source=source,
        layout=layout,
        basis=basis,
        dims=dims,
        alphas=alphas,
        alpha_dims=alpha_dims,
        conj=adjoint(basis) @ T @ basis,
        original=T.copy(),
    )


def _norm(M):
    return op_norm(M) if M.size else 0.0


def check_blocks(d: BlockDecomposition, tol=None) -> BlockCheckReport:
    """Evaluate every representation condition on a decomposition."""
    tols = resolve_tolerances(tol, "block")
    lim = tols.block
    X = d.conj if d.layout == "upper" else adjoint(d.conj)
    T_norm = _norm(X)
    s = T_norm if T_norm > tols.floor else 1.0
    lam = d.lam
    d0, d1, d2 = d.dims
    sl = d._slices()

    def blk(i, j):
        return X[sl[i], sl[j]]

    notes = []
    positions = [(0, 1), (0, 2), (1, 0), (2, 0), (2, 1)]
    zero = {}
    for i, j in positions:
        a, b = (i, j) if d.layout == "upper" else (j, i)
        zero[f"({a + 1},{b + 1})"] = _norm(blk(i, j)) / s

    V0 = blk(0, 0)
    target = np.diag(np.repeat(np.asarray(d.alphas, dtype=float) ** 2, d.alpha_dims))
    v0_res = _norm(adjoint(V0) @ V0 - target) / s**2 if d0 else 0.0
    off = 0.0
    bounds = np.cumsum([0] + list(d.alpha_dims))
    for p in range(len(d.alpha_dims)):
        for q in range(len(d.alpha_dims)):
            if p != q:
                off = max(off, _norm(V0[bounds[p] : bounds[p + 1], bounds[q] : bounds[q + 1]]) / s)
    v0_res = max(v0_res, off)

    X11, A, B = blk(1, 1), blk(1, 2), blk(2, 2)
    lam_positive = lam > tols.scaled("block", s)
    if d1 == 0:
        v_res = 0.0
        notes.append("H1 is empty: isometry and V*A conditions are vacuous")
    elif lam_positive:
        V = X11 / lam
        v_res = _norm(adjoint(V) @ V - np.eye(d1))
    else:
        v_res = _norm(X11) / s
        notes.append("lambda ~ 0: isometry check replaced by ||lambda V|| ~ 0")
    if d1 and d2:
        vsa = _norm(adjoint(X11 / lam) @ A) / s if lam_positive else _norm(adjoint(X11) @ A) / s**2
    else:
        vsa = 0.0
    if d2:
        G = adjoint(A) @ A + adjoint(B) @ B
        contraction = max(0.0, float(np.linalg.eigvalsh((G + adjoint(G)) / 2)[-1]) - lam**2) / s**2
        b_excess = max(0.0, _norm(B) - lam) / s
        Bs = B / s
        bp = pencil_min((lam / s) ** 4 * np.eye(d2), Bs @ adjoint(Bs), tols.psd, kind="B")
        b_pencil = bp.verdict.value
        Xs = X / s
        X2 = Xs @ Xs
        A_full = adjoint(X2) @ X2
        B_full = Xs @ adjoint(Xs)
        cp = pencil_min(A_full[sl[2], sl[2]], B_full[sl[2], sl[2]], tols.psd, kind="H2")
        h2_min = cp.min_value
        h2_ok = {PencilVerdict.CERTIFIED_NONNEG: True, PencilVerdict.VIOLATION: False}.get(cp.verdict)
    else:
        contraction = b_excess = 0.0
        b_pencil, h2_min, h2_ok = None, None, True
    reassembly = _norm(d.reassemble() - d.original) / s

    verdicts = {
        "zero_blocks": max(zero.values(), default=0.0) <= lim,
        "V0_structure": v0_res <= lim,
        "V_isometry" if d.layout == "upper" else "V_coisometry": v_res <= lim,
        "VstarA" if d.layout == "upper" else "VAstar": vsa <= lim,
        "contraction": contraction <= lim,
        "B_norm": b_excess <= lim,
        "H2_pencil": h2_ok,
        "reassembly": reassembly <= lim,
    }
    return BlockCheckReport(
        layout=d.layout,
        zero_block_residuals=zero,
        V0_structure_residual=float(v0_res),
        V_isometry_residual=float(v_res),
        VstarA_residual=float(vsa),
        contraction_residual=float(contraction),
        B_norm_excess=float(b_excess),
        H2_pencil_min=None if h2_min is None else float(h2_min),
        reassembly_residual=float(reassembly),
        verdicts={k: (None if v is None else bool(v)) for k, v in verdicts.items()},
        tol=lim,
        B_pencil_verdict=b_pencil,
        notes=notes,
    )


def star_para_blocks(T, lam="auto", tol=None) -> tuple[BlockDecomposition, BlockCheckReport]:
    """Split along ``|T|`` at ``lam`` and check the three-block representation.

    ``lam="auto"`` takes the eigenvalue cluster of ``|T|`` with the largest
    multiplicity (ties to the smallest value), the finite stand-in for the
    single point of the essential spectrum of ``|T|``.
    """
    tols = resolve_tolerances(tol, "block")
    T = as_matrix(T, square=True)
    d = _decompose(T, lam, tols)
    return d, check_blocks(d, tols)


def adjoint_blocks(T, lam="auto", tol=None) -> tuple[BlockDecomposition, BlockCheckReport]:
    """Representation for ``T`` whose adjoint is *-paranormal.

    Decomposes ``T^*`` and transposes the result, giving the lower form
    ``[[V0, 0, 0], [0, lam V, 0], [0, A, B]]`` with ``V`` a co-isometry,
    ``V A^* = 0``, ``AA^* + BB^* <= lam^2`` and ``||B|| <= lam``.
    """
    tols = resolve_tolerances(tol, "block")
    T = as_matrix(T, square=True)
    dstar = _decompose(adjoint(T), lam, tols)
    d = BlockDecomposition(
        lam=dstar.lam,
        lam_source=dstar.lam_source,
        layout="lower",
        basis=dstar.basis,
        dims=dstar.dims,
        alphas=dstar.alphas,
        alpha_dims=dstar.alpha_dims,
        conj=adjoint(dstar.conj),
        original=T.copy(),
    )
    return d, check_blocks(d, tols)


def from_blocks(V0, V, A, B, lam: float, alphas=(), alpha_dims=()) -> BlockDecomposition:
    """Assemble ``[[V0,0,0],[0,lam V,A],[0,0,B]]`` in the standard basis.

    Meant for synthetic inputs; ``alphas``/``alpha_dims`` describe the
    eigenvalue clusters that ``V0`` is supposed to carry.
    """
    V0 = np.atleast_2d(np.asarray(V0, dtype=complex)) if np.size(V0) else np.zeros((0, 0), complex)
    V = np.atleast_2d(np.asarray(V, dtype=complex)) if np.size(V) else np.zeros((0, 0), complex)
    B = np.atleast_2d(np.asarray(B, dtype=complex)) if np.size(B) else np.zeros((0, 0), complex)
    d0, d1, d2 = len(V0), len(V), len(B)
    A = np.asarray(A, dtype=complex).reshape(d1, d2)
    if sum(alpha_dims) != d0:
        raise InputError("alpha_dims must add up to the size of V0")
    n = d0 + d1 + d2
    X = np.zeros((n, n), dtype=complex)
    X[:d0, :d0] = V0
    X[d0 : d0 + d1, d0 : d0 + d1] = lam * V
    X[d0 : d0 + d1, d0 + d1 :] = A
    X[d0 + d1 :, d0 + d1 :] = B
    return BlockDecomposition(
        lam=float(lam),
        lam_source="given",
        layout="upper",
        basis=np.eye(n, dtype=complex),
        dims=(d0, d1, d2),
        alphas=list(alphas),
        alpha_dims=list(alpha_dims),
        conj=X,
        original=X.copy(),
    )
