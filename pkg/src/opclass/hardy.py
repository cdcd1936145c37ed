"""Truncated Toeplitz and Hankel matrices of trigonometric-polynomial symbols.

Conventions (0-based ``i, j``):

* Toeplitz: ``T[i, j] = c_{i-j}``, the matrix of ``P L_phi`` on ``z^0..z^{n-1}``.
* Hankel: ``H[i, j] = c_{-(i+j+1)}``. ``L_phi z^j`` has the term ``c_m z^{m+j}``;
  ``I-P`` keeps ``m + j < 0`` and the flip ``z^{-k} -> z^{k-1}`` lands it on
  ``z^{-(m+j)-1}``, so row ``i`` picks ``m = -(i+j+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

from .classify import ClassReport, classify, is_isometry_multiple, is_normal
from .linalg import InputError, resolve_tolerances


class SymbolSpec:
    """Finitely supported Fourier coefficients ``{n: c_n}``.

    ``n_min``/``n_max`` is the declared support window; it defaults to the
    span of the given indices.
    """

    def __init__(self, coeffs, n_min: int | None = None, n_max: int | None = None):
        clean = {}
        for n, c in dict(coeffs).items():
            if isinstance(n, bool) or int(n) != n:
                raise InputError(f"coefficient index {n!r} is not an integer")
            c = complex(c)
            if not np.isfinite(c):
                raise InputError(f"coefficient c_{n} is not finite")
            clean[int(n)] = c
        self.coeffs = clean
        idx = sorted(clean)
        self.n_min = (idx[0] if idx else 0) if n_min is None else int(n_min)
        self.n_max = (idx[-1] if idx else 0) if n_max is None else int(n_max)
        if self.n_min > self.n_max:
            raise InputError("empty support window")
        if idx and (idx[0] < self.n_min or idx[-1] > self.n_max):
            raise InputError("coefficient index outside the declared window")

    def __getitem__(self, n: int) -> complex:
        return self.coeffs.get(n, 0j)

    @property
    def bandwidth(self) -> int:
        return max((abs(n) for n in self.coeffs), default=0)

    def is_real_coefficients(self) -> bool:
        return all(c.imag == 0 for c in self.coeffs.values())

    def is_selfadjoint(self) -> bool:
        return all(self[-n] == c.conjugate() for n, c in self.coeffs.items())

    def __add__(self, other: "SymbolSpec") -> "SymbolSpec":
        if not isinstance(other, SymbolSpec):
            return NotImplemented
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0j) + c
        return SymbolSpec(out, min(self.n_min, other.n_min), max(self.n_max, other.n_max))

    def __mul__(self, a) -> "SymbolSpec":
        if not isinstance(a, Number):
            return NotImplemented
        return SymbolSpec({n: a * c for n, c in self.coeffs.items()}, self.n_min, self.n_max)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolSpec) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"SymbolSpec({self.coeffs!r}, n_min={self.n_min}, n_max={self.n_max})"

    def __call__(self, z):
        """Evaluate the trigonometric polynomial at points ``z`` on the circle."""
        z = np.asarray(z, dtype=complex)
        return sum((c * z**n for n, c in self.coeffs.items()), np.zeros_like(z))


def _check_size(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise InputError(f"size must be a positive integer, got {n!r}")
    return int(n)


def toeplitz_matrix(sym: SymbolSpec, n: int) -> np.ndarray:
    n = _check_size(n)
    T = np.zeros((n, n), dtype=complex)
    i, j = np.indices((n, n))
    for k, c in sym.coeffs.items():
        T[i - j == k] = c
    return T


def hankel_matrix(sym: SymbolSpec, n: int) -> np.ndarray:
    n = _check_size(n)
    H = np.zeros((n, n), dtype=complex)
    i, j = np.indices((n, n))
    for k, c in sym.coeffs.items():
        if k < 0:
            H[i + j + 1 == -k] = c
    return H


def _laurent_window(sym: SymbolSpec, lo: int, hi: int) -> np.ndarray:
    # two-sided L_phi on z^lo..z^hi; test reference only
    idx = np.arange(lo, hi + 1)
    d = idx[:, None] - idx[None, :]
    L = np.zeros(d.shape, dtype=complex)
    for k, c in sym.coeffs.items():
        L[d == k] = c
    return L


def symbol_from_samples(values, prune: float = 1e-12) -> SymbolSpec:
    """Coefficients of the trigonometric polynomial through samples at
    ``exp(2 pi i k / N)``, ``k = 0..N-1``.

    Indices run over ``-floor(N/2) .. ceil(N/2) - 1`` (direct DFT sum).
    Coefficients below ``prune * max|values|`` are dropped.
    """
    v = np.asarray(values, dtype=complex).ravel()
    N = len(v)
    if N == 0:
        raise InputError("no samples")
    if not np.all(np.isfinite(v)):
        raise InputError("samples must be finite")
    lo, hi = -(N // 2), (N + 1) // 2 - 1
    theta = 2 * np.pi * np.arange(N) / N
    ns = np.arange(lo, hi + 1)
    c = np.exp(-1j * np.outer(ns, theta)) @ v / N
    cut = prune * float(np.max(np.abs(v)))
    coeffs = {int(n): complex(x) for n, x in zip(ns, c) if abs(x) > cut}
    return SymbolSpec(coeffs, lo, hi)


@dataclass
class HardyReport:
    """Windowed classification of a Toeplitz or Hankel truncation.

    ``prediction`` is the implication expected for the operator. It needs
    the operator to attain its norm; ``hypothesis`` records the finite
    evidence for that. ``consistent`` is ``False`` only when the window is
    certified *-paranormal, ``hypothesis`` holds and the conclusion fails.
    """

    kind: str
    m: int
    n: int
    report: ClassReport
    isometry_multiple: bool | None
    c: float | None
    normal: bool
    hypothesis: bool
    prediction: str
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "n": self.n,
            "report": self.report.to_dict(),
            "isometry_multiple": self.isometry_multiple,
            "c": self.c,
            "normal": self.normal,
            "hypothesis": self.hypothesis,
            "prediction": self.prediction,
            "consistent": self.consistent,
        }


def _ambient(sym: SymbolSpec, m: int) -> int:
    return _check_size(m) + 2 * max(sym.bandwidth, 1)


def sup_norm(sym: SymbolSpec, samples: int | None = None) -> float:
    """``max |phi|`` on a fine grid of the circle (a lower estimate)."""
    N = samples or max(8192, 128 * sym.bandwidth)
    z = np.exp(2j * np.pi * np.arange(N) / N)
    return float(np.max(np.abs(sym(z)))) if sym.coeffs else 0.0


def classify_toeplitz(sym: SymbolSpec, m: int, tol=None) -> HardyReport:
    tols = resolve_tolerances(tol, "psd")
    n = _ambient(sym, m)
    T = toeplitz_matrix(sym, n)
    rep = classify(T, tols, compress=m)
    iso, c = is_isometry_multiple(T, tols, compress=m)
    star = rep.flags["star_paranormal"]
    # ||T_phi|| = sup|phi|; attained if some window vector reaches it
    top = float(np.linalg.svd(T[:, :m], compute_uv=False)[0])
    attained = top >= sup_norm(sym) * (1 - 1e-6)
    return HardyReport(
        kind="toeplitz",
        m=m,
        n=n,
        report=rep,
        isometry_multiple=iso,
        c=c,
        normal=rep.flags["normal"],
        hypothesis=bool(attained),
        prediction="norm attaining and *-paranormal => scalar multiple of an isometry",
        consistent=(star is not True) or not attained or iso,
    )


def classify_hankel(sym: SymbolSpec, m: int, tol=None) -> HardyReport:
    tols = resolve_tolerances(tol, "psd")
    n = _ambient(sym, m)
    H = hankel_matrix(sym, n)
    rep = classify(H, tols, compress=m)
    normal = is_normal(H, tols, compress=m)
    star = rep.flags["star_paranormal"]
    return HardyReport(
        kind="hankel",
        m=m,
        n=n,
        report=rep,
        isometry_multiple=None,
        c=None,
        normal=normal,
        # finite band: H_phi has finite rank, hence attains its norm
        hypothesis=True,
        prediction="norm attaining and *-paranormal => normal",
        consistent=(star is not True) or normal,
    )
