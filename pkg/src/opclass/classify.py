"""Certified membership tests for normal, hyponormal, paranormal and
*-paranormal matrices.

The *-paranormal and paranormal classes are decided through the pencil

    g(k) = lambda_min(A - 2 k B + k^2 I),   k >= 0,

with ``A = (T^2)^* T^2`` and ``B = T T^*`` (resp. ``T^* T``). For a unit
vector ``x`` the quadratic ``<Ax,x> - 2k<Bx,x> + k^2`` is minimised at
``k = <Bx,x> <= ||B||``, so the infimum of ``g`` over ``k >= 0`` is attained
on ``[0, ||B||]`` and equals ``min_x <Ax,x> - <Bx,x>^2``. The search grids
that interval, refines the best grid point by golden section, and then
certifies a non-negative verdict by one of two lower bounds:

* a global Lipschitz bound ``min_grid - L h / 2`` with ``L = 2(||B|| + K)``;
* a per-interval chord bound: ``k -> lambda_min(A - 2kB)`` is concave (a
  minimum of affine functions), so on any interval it lies above its chord,
  and ``g`` lies above ``k^2 + chord``. Intervals whose bound is not yet
  conclusive are bisected.

The chord bound is exact wherever ``g`` is tangent to zero without an
eigenvalue crossing, which is what makes equality cases (unitaries,
isometric tails of weighted shifts) certifiable at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.linalg import subspace_angles

from .linalg import (
    InputError,
    Tolerances,
    adjoint,
    as_matrix,
    canonical_basis,
    check_hermitian,
    null_space,
    op_norm,
    resolve_tolerances,
)

GRID_POINTS = 512
GOLDEN_ITERATIONS = 200
MAX_EVALUATIONS = 20000
_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
_EPS = np.finfo(float).eps


class PencilVerdict(str, Enum):
    CERTIFIED_NONNEG = "CertifiedNonneg"
    VIOLATION = "Violation"
    INCONCLUSIVE = "Inconclusive"


def _vec_to_json(v):
    if v is None:
        return None
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def _vec_from_json(data):
    if data is None:
        return None
    return np.array([complex(re, im) for re, im in data], dtype=complex)


@dataclass
class PencilCertificate:
    """Outcome of :func:`pencil_min`.

    ``lower_bound`` is the certified lower bound on ``min_k g(k)`` (``-inf``
    when the search stopped at a violation); ``certified_by`` names the
    bound that closed the search.
    """

    kind: str
    k_range: tuple[float, float]
    grid_step: float
    min_value: float
    argmin_k: float
    witness: np.ndarray
    lipschitz_bound: float
    verdict: PencilVerdict
    lower_bound: float
    tol: float
    certified_by: str | None = None
    evaluations: int = 0
    scale: float = 1.0

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k_range": [float(self.k_range[0]), float(self.k_range[1])],
            "grid_step": float(self.grid_step),
            "min_value": float(self.min_value),
            "argmin_k": float(self.argmin_k),
            "witness": _vec_to_json(self.witness),
            "lipschitz_bound": float(self.lipschitz_bound),
            "verdict": self.verdict.value,
            "lower_bound": float(self.lower_bound),
            "tol": float(self.tol),
            "certified_by": self.certified_by,
            "evaluations": int(self.evaluations),
            "scale": float(self.scale),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PencilCertificate":
        return cls(
            kind=d["kind"],
            k_range=(d["k_range"][0], d["k_range"][1]),
            grid_step=d["grid_step"],
            min_value=d["min_value"],
            argmin_k=d["argmin_k"],
            witness=_vec_from_json(d["witness"]),
            lipschitz_bound=d["lipschitz_bound"],
            verdict=PencilVerdict(d["verdict"]),
            lower_bound=d["lower_bound"],
            tol=d["tol"],
            certified_by=d.get("certified_by"),
            evaluations=d.get("evaluations", 0),
            scale=d.get("scale", 1.0),
        )


class _Pencil:
    def __init__(self, A, B):
        self.A, self.B = A, B
        self.n = len(A)
        self.evaluations = 0
        # keep each batched eigvalsh call around 20M complex entries
        self.chunk = max(1, int(2e7 // max(1, self.n * self.n)))

    def h(self, ks: np.ndarray) -> np.ndarray:
        """lambda_min(A - 2kB) for every k in ``ks``."""
        ks = np.atleast_1d(np.asarray(ks, dtype=float))
        out = np.empty(len(ks))
        for s in range(0, len(ks), self.chunk):
            kk = ks[s : s + self.chunk]
            M = self.A[None, :, :] - 2.0 * kk[:, None, None] * self.B[None, :, :]
            out[s : s + self.chunk] = np.linalg.eigvalsh(M)[:, 0]
        self.evaluations += len(ks)
        return out

    def g(self, k: float) -> float:
        return float(k * k + self.h(np.array([k]))[0])

    def min_vector(self, k: float) -> np.ndarray:
        M = self.A - 2.0 * k * self.B + k * k * np.eye(self.n)
        _, vecs = np.linalg.eigh((M + adjoint(M)) / 2)
        v = vecs[:, 0]
        i = int(np.argmax(np.abs(v)))
        return v * (np.conj(v[i]) / abs(v[i]))


def _golden(f, lo: float, hi: float, iterations: int, xtol: float):
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iterations):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _chord_bound(lo, hi, hlo, hhi):
    """min over [lo, hi] of k^2 + (linear interpolation of h)."""
    slope = (hhi - hlo) / (hi - lo)
    k = np.clip(-slope / 2.0, lo, hi)
    return k * k + hlo + slope * (k - lo)


def pencil_min(
    A,
    B,
    tol=None,
    *,
    kind: str = "custom",
    grid_points: int = GRID_POINTS,
    golden_iterations: int = GOLDEN_ITERATIONS,
    max_evaluations: int = MAX_EVALUATIONS,
) -> PencilCertificate:
    """Decide ``A - 2kB + k^2 I >= 0`` for all ``k > 0``.

    ``A`` and ``B`` must be Hermitian positive semidefinite of equal size.
    The decision tolerance is ``tol * max(||A||, ||B||^2)`` plus the floor.
    """
    tols = resolve_tolerances(tol, "psd")
    A = check_hermitian(A, tols, "A")
    B = check_hermitian(B, tols, "B")
    if A.shape != B.shape:
        raise InputError(f"dimension mismatch: A is {A.shape}, B is {B.shape}")
    n = len(A)
    if n == 0:
        raise InputError("empty pencil")
    normA, K = op_norm(A), op_norm(B)
    for name, M, nm in (("A", A, normA), ("B", B, K)):
        if np.linalg.eigvalsh(M)[0] < -tols.scaled("herm", nm):
            raise InputError(f"{name} is not positive semidefinite")
    atol = tols.scaled("psd", max(normA, K * K))
    roundoff = 16 * n * _EPS * (normA + 2 * K * K + K * K)
    lipschitz = 2.0 * (K + K)
    pencil = _Pencil(A, B)

    def finish(verdict, min_value, k_star, lower, step, by):
        return PencilCertificate(
            kind=kind,
            k_range=(0.0, K),
            grid_step=step,
            min_value=float(min_value),
            argmin_k=float(k_star),
            witness=pencil.min_vector(k_star),
            lipschitz_bound=lipschitz,
            verdict=verdict,
            lower_bound=float(lower),
            tol=atol,
            certified_by=by,
            evaluations=pencil.evaluations,
        )

    if K <= tols.floor:
        # optimal k is <Bx,x> <= K, so min_k g >= lambda_min(A) - K^2
        g0 = pencil.g(0.0)
        lower = g0 - K * K - roundoff
        if g0 < -atol:
            return finish(PencilVerdict.VIOLATION, g0, 0.0, -np.inf, 0.0, None)
        verdict = PencilVerdict.CERTIFIED_NONNEG if lower >= -atol else PencilVerdict.INCONCLUSIVE
        return finish(verdict, g0, 0.0, lower, 0.0, "lipschitz" if lower >= -atol else None)

    ks = np.linspace(0.0, K, grid_points)
    hs = pencil.h(ks)
    gs = ks * ks + hs
    step = K / (grid_points - 1)
    j = int(np.argmin(gs))
    best_k, best_g = float(ks[j]), float(gs[j])

    lo, hi = ks[max(j - 1, 0)], ks[min(j + 1, grid_points - 1)]
    k_ref, g_ref = _golden(pencil.g, lo, hi, golden_iterations, 1e-12 * K)
    if g_ref < best_g:
        best_k, best_g = k_ref, g_ref

    if best_g < -atol:
        return finish(PencilVerdict.VIOLATION, best_g, best_k, -np.inf, step, None)

    lower = float(gs.min()) - lipschitz * step / 2.0 - roundoff
    if lower >= -atol:
        return finish(PencilVerdict.CERTIFIED_NONNEG, best_g, best_k, lower, step, "lipschitz")

    # chord bound with bisection of inconclusive intervals
    lo, hi, hlo, hhi = ks[:-1], ks[1:], hs[:-1], hs[1:]
    bounds = _chord_bound(lo, hi, hlo, hhi) - roundoff
    open_ = bounds < -atol
    lower = float(bounds[~open_].min()) if (~open_).any() else np.inf
    lo, hi, hlo, hhi = lo[open_], hi[open_], hlo[open_], hhi[open_]
    min_width = 64 * _EPS * K
    while len(lo) and pencil.evaluations < max_evaluations:
        mid = (lo + hi) / 2.0
        hmid = pencil.h(mid)
        gmid = mid * mid + hmid
        i = int(np.argmin(gmid))
        if gmid[i] < best_g:
            best_k, best_g = float(mid[i]), float(gmid[i])
        if best_g < -atol:
            k_ref, g_ref = _golden(pencil.g, max(mid[i] - (hi[i] - lo[i]), 0.0),
                                   min(mid[i] + (hi[i] - lo[i]), K),
                                   golden_iterations, 1e-12 * K)
            if g_ref < best_g:
                best_k, best_g = k_ref, g_ref
            return finish(PencilVerdict.VIOLATION, best_g, best_k, -np.inf, step, None)
        lo2 = np.concatenate([lo, mid])
        hi2 = np.concatenate([mid, hi])
        hlo2 = np.concatenate([hlo, hmid])
        hhi2 = np.concatenate([hmid, hhi])
        b2 = _chord_bound(lo2, hi2, hlo2, hhi2) - roundoff
        open_ = b2 < -atol
        if (~open_).any():
            lower = min(lower, float(b2[~open_].min()))
        # intervals already at resolution limit stay open and end the search
        too_small = open_ & (hi2 - lo2 <= min_width)
        if too_small.any():
            lower = min(lower, float(b2[too_small].min()))
            return finish(PencilVerdict.INCONCLUSIVE, best_g, best_k, lower, step, None)
        lo, hi, hlo, hhi = lo2[open_], hi2[open_], hlo2[open_], hhi2[open_]

    if len(lo):
        lower = min(lower, float(_chord_bound(lo, hi, hlo, hhi).min() - roundoff))
        return finish(PencilVerdict.INCONCLUSIVE, best_g, best_k, lower, step, None)
    return finish(PencilVerdict.CERTIFIED_NONNEG, best_g, best_k, lower, step, "chord")


# --------------------------------------------------------------------------
# quadratic forms of T, optionally compressed to a leading window


def compress(T_ambient, m: int):
    """Leading ``m x m`` compressions of ``T*^2T^2``, ``T*T - TT*``, ``T*T``, ``TT*``.

    Vectors supported on the first ``m`` coordinates see exactly these
    forms as long as the ambient truncation keeps every product used
    (bandwidth at most 2), hence ``n >= m + 2``.
    """
    T = as_matrix(T_ambient, square=True, name="T_ambient")
    n = len(T)
    m = int(m)
    if m < 1:
        raise InputError("window size must be positive")
    if n < m + 2:
        raise InputError(f"ambient dimension {n} < window {m} + 2")
    Ts = adjoint(T)
    T2 = T @ T
    A = adjoint(T2) @ T2
    para = Ts @ T
    star = T @ Ts
    w = slice(0, m)
    return A[w, w], (para - star)[w, w], para[w, w], star[w, w]


@dataclass
class _Forms:
    T: np.ndarray  # normalised (ambient) operator
    scale: float
    window: int | None
    T2sT2: np.ndarray
    TsT: np.ndarray
    TTs: np.ndarray
    sym: np.ndarray  # compressed (T + T*)/2
    skew: np.ndarray  # compressed T - T*

    @property
    def comm(self):
        return self.TsT - self.TTs

    @property
    def dim(self):
        return len(self.TsT)


def _forms(T, compress_to: int | None, tols: Tolerances) -> _Forms:
    T = as_matrix(T, square=True)
    s = op_norm(T) if T.size else 0.0
    scale = s if s > tols.floor else 1.0
    Tn = T / scale
    if compress_to is None:
        w = slice(None)
        A = adjoint(Tn @ Tn) @ (Tn @ Tn)
        TsT, TTs = adjoint(Tn) @ Tn, Tn @ adjoint(Tn)
    else:
        A, _, TsT, TTs = compress(Tn, compress_to)
        w = slice(0, compress_to)
    return _Forms(
        T=Tn,
        scale=s,
        window=compress_to,
        T2sT2=A,
        TsT=TsT,
        TTs=TTs,
        sym=((Tn + adjoint(Tn)) / 2)[w, w],
        skew=(Tn - adjoint(Tn))[w, w],
    )


def _tri(verdict: PencilVerdict):
    if verdict is PencilVerdict.CERTIFIED_NONNEG:
        return True
    if verdict is PencilVerdict.VIOLATION:
        return False
    return None


class Witness(NamedTuple):
    value: float
    vector: np.ndarray


def _star(f: _Forms, tols: Tolerances):
    cert = pencil_min(f.T2sT2, f.TTs, tols, kind="star")
    cert.scale = f.scale
    return _tri(cert.verdict), cert


def _para(f: _Forms, tols: Tolerances):
    cert = pencil_min(f.T2sT2, f.TsT, tols, kind="para")
    cert.scale = f.scale
    return _tri(cert.verdict), cert


def _hypo(f: _Forms, tols: Tolerances):
    C = f.comm
    vals, vecs = np.linalg.eigh((C + adjoint(C)) / 2)
    ok = bool(vals[0] >= -tols.scaled("psd", 1.0))
    v = vecs[:, 0]
    i = int(np.argmax(np.abs(v)))
    v = v * (np.conj(v[i]) / abs(v[i]))
    # report in the caller's units: ||Tx||^2 - ||T*x||^2 at the witness
    return ok, Witness(float(vals[0]) * f.scale**2, v)


def is_star_paranormal(T, tol=None, compress: int | None = None):
    """``||T^*x||^2 <= ||T^2 x|| ||x||`` for all x; returns ``(verdict, certificate)``.

    ``verdict`` is True, False, or None when the certificate is
    inconclusive. With ``compress=m`` only vectors supported on the first
    ``m`` coordinates are tested, and the witness lives in that window.
    """
    tols = resolve_tolerances(tol, "psd")
    return _star(_forms(T, compress, tols), tols)


def is_paranormal(T, tol=None, compress: int | None = None):
    """``||Tx||^2 <= ||T^2 x|| ||x||`` for all x, via the pencil with ``B = T^*T``."""
    tols = resolve_tolerances(tol, "psd")
    return _para(_forms(T, compress, tols), tols)


def is_hyponormal(T, tol=None, compress: int | None = None):
    """``T^*T - TT^* >= 0``; the witness carries the smallest eigenvalue
    (in the units of ``T``) and its eigenvector."""
    tols = resolve_tolerances(tol, "psd")
    return _hypo(_forms(T, compress, tols), tols)


def is_normal(T, tol=None, compress: int | None = None) -> bool:
    tols = resolve_tolerances(tol, "psd")
    f = _forms(T, compress, tols)
    return bool(op_norm(f.comm) <= tols.scaled("psd", 1.0))


def is_self_adjoint(T, tol=None, compress: int | None = None) -> bool:
    tols = resolve_tolerances(tol, "psd")
    f = _forms(T, compress, tols)
    return bool(op_norm(f.skew) <= tols.scaled("psd", 1.0))


def is_positive(T, tol=None, compress: int | None = None) -> bool:
    tols = resolve_tolerances(tol, "psd")
    f = _forms(T, compress, tols)
    if op_norm(f.skew) > tols.scaled("psd", 1.0):
        return False
    return bool(np.linalg.eigvalsh(f.sym)[0] >= -tols.scaled("psd", 1.0))


def is_unitary(T, tol=None, compress: int | None = None) -> bool:
    tols = resolve_tolerances(tol, "psd")
    f = _forms(T, compress, tols)
    s2 = f.scale**2
    eye = np.eye(f.dim)
    return bool(
        op_norm(f.TsT * s2 - eye) <= tols.scaled("psd", 1.0)
        and op_norm(f.TTs * s2 - eye) <= tols.scaled("psd", 1.0)
    )


def is_isometry_multiple(T, tol=None, compress: int | None = None) -> tuple[bool, float]:
    """Whether ``T^*T = c^2 I``; ``c^2`` is fitted as ``trace(T^*T) / n``."""
    tols = resolve_tolerances(tol, "psd")
    f = _forms(T, compress, tols)
    G = f.TsT * f.scale**2
    c = float(np.sqrt(max(np.trace(G).real / f.dim, 0.0)))
    ok = op_norm(G - c * c * np.eye(f.dim)) <= tols.scaled("psd", f.scale**2)
    return bool(ok), c


FLAGS = (
    "normal",
    "self_adjoint",
    "positive",
    "unitary",
    "isometry_multiple",
    "hyponormal",
    "paranormal",
    "star_paranormal",
)


@dataclass
class ClassReport:
    flags: dict
    witnesses: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    window: int | None = None
    scale: float = 1.0

    def to_dict(self) -> dict:
        wit = {}
        for name, w in self.witnesses.items():
            if isinstance(w, Witness):
                wit[name] = {"value": w.value, "vector": _vec_to_json(w.vector)}
            else:
                wit[name] = w
        return {
            "flags": dict(self.flags),
            "witnesses": wit,
            "tolerances": dict(self.tolerances),
            "certificates": {k: c.to_dict() for k, c in self.certificates.items()},
            "window": self.window,
            "scale": self.scale,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClassReport":
        wit = {}
        for name, w in d.get("witnesses", {}).items():
            if isinstance(w, dict) and "vector" in w:
                wit[name] = Witness(w["value"], _vec_from_json(w["vector"]))
            else:
                wit[name] = w
        return cls(
            flags=dict(d["flags"]),
            witnesses=wit,
            tolerances=dict(d.get("tolerances", {})),
            certificates={
                k: PencilCertificate.from_dict(c) for k, c in d.get("certificates", {}).items()
            },
            window=d.get("window"),
            scale=d.get("scale", 1.0),
        )


def classify(T, tol=None, compress: int | None = None) -> ClassReport:
    """Every class flag for one operand under one tolerance record.

    Subclasses of the normal matrices (self-adjoint, positive, unitary) are
    only reported true when ``normal`` is, so the report never contradicts
    itself on near-boundary input.
    """
    tols = resolve_tolerances(tol, "psd")
    f = _forms(T, compress, tols)
    atol = tols.scaled("psd", 1.0)
    star, star_cert = _star(f, tols)
    para, para_cert = _para(f, tols)
    hypo, hypo_wit = _hypo(f, tols)
    comm = op_norm(f.comm)
    normal = comm <= atol
    skew = op_norm(f.skew)
    self_adjoint = normal and skew <= atol
    positive = self_adjoint and np.linalg.eigvalsh(f.sym)[0] >= -atol
    s2 = f.scale**2
    eye = np.eye(f.dim)
    unitary = normal and op_norm(f.TsT * s2 - eye) <= atol and op_norm(f.TTs * s2 - eye) <= atol
    G = f.TsT * s2
    c = float(np.sqrt(max(np.trace(G).real / f.dim, 0.0)))
    iso = op_norm(G - c * c * eye) <= tols.scaled("psd", s2)
    return ClassReport(
        flags={
            "normal": bool(normal),
            "self_adjoint": bool(self_adjoint),
            "positive": bool(positive),
            "unitary": bool(unitary),
            "isometry_multiple": bool(iso),
            "hyponormal": bool(hypo),
            "paranormal": para,
            "star_paranormal": star,
        },
        witnesses={
            "normal": float(comm),
            "isometry_multiple": c,
            "hyponormal": hypo_wit,
            "paranormal": Witness(para_cert.min_value, para_cert.witness),
            "star_paranormal": Witness(star_cert.min_value, star_cert.witness),
        },
        tolerances=tols.as_dict(),
        certificates={"star_paranormal": star_cert, "paranormal": para_cert},
        window=compress,
        scale=f.scale,
    )


# --------------------------------------------------------------------------
# norm-attaining subspaces, powers, kernels


def norm_attaining_subspace(T, tol=None) -> np.ndarray:
    """Orthonormal basis of ``M = N(|T| - ||T|| I)`` (top singular cluster)."""
    tols = resolve_tolerances(tol, "cluster")
    T = as_matrix(T, square=True)
    _, S, Vh = np.linalg.svd(T)
    top = S[0] if len(S) else 0.0
    keep = S >= top - tols.scaled("cluster", top)
    return canonical_basis(adjoint(Vh[keep, :]))


def powers_chain(T, x, N: int) -> np.ndarray:
    """Residuals ``| ||T^k x|| - ||T||^k ||x|| |`` for ``k = 1..N``."""
    T = as_matrix(T, square=True)
    x = np.asarray(x, dtype=complex)
    nx = np.linalg.norm(x)
    if nx == 0:
        raise InputError("powers_chain needs a non-zero vector")
    s = op_norm(T)
    out = np.empty(N)
    y = x
    for k in range(1, N + 1):
        y = T @ y
        out[k - 1] = abs(np.linalg.norm(y) - s**k * nx)
    return out


def joint_norm_attaining_set(T, N: int, tol=None) -> np.ndarray:
    """Basis of ``{x : ||T^k x|| = ||T||^k ||x||, k = 1..N}``, possibly empty."""
    tols = resolve_tolerances(tol, "cluster")
    T = as_matrix(T, square=True)
    n = len(T)
    s = op_norm(T)
    if s <= tols.floor:
        return np.eye(n, dtype=complex)
    Tn = T / s
    P = np.eye(n, dtype=complex)
    rows = []
    for _ in range(N):
        P = Tn @ P
        rows.append(adjoint(P) @ P - np.eye(n))
    stacked = np.vstack(rows)
    _, S, Vh = np.linalg.svd(stacked)
    r = int(np.sum(S > tols.scaled("cluster", 1.0)))
    return canonical_basis(adjoint(Vh[r:, :]))


class KernelComparison(NamedTuple):
    dim_kernel: int
    dim_adjoint_kernel: int
    equal: bool
    max_angle: float


def kernel_compare(T, tol=None) -> KernelComparison:
    """Compare ``N(T)`` with ``N(T^*)`` by dimension and principal angles."""
    tols = resolve_tolerances(tol, "rank")
    T = as_matrix(T, square=True)
    K1 = null_space(T, tols)
    K2 = null_space(adjoint(T), tols)
    d1, d2 = K1.shape[1], K2.shape[1]
    if d1 != d2:
        return KernelComparison(d1, d2, False, float(np.pi / 2))
    if d1 == 0:
        return KernelComparison(0, 0, True, 0.0)
    angle = float(np.max(subspace_angles(K1, K2)))
    return KernelComparison(d1, d2, angle <= tols.angle, angle)
