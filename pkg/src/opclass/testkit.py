"""Fixture builders and the random-vector oracle.

Every randomised builder takes an explicit seed and derives its stream
from ``(name, size, seed)``, so fixtures are reproducible byte for byte.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass

import numpy as np

from .linalg import InputError, adjoint, as_matrix, op_norm


@dataclass(frozen=True)
class ShiftSpec:
    weights: tuple
    direction: str = "forward"
    size: int | None = None

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if self.size is None:
            object.__setattr__(self, "size", len(w) + 1)
        if self.direction not in ("forward", "backward"):
            raise InputError(f"direction must be forward or backward, got {self.direction!r}")
        if any(not np.isfinite(x) or x <= 0 for x in w):
            raise InputError("shift weights must be positive")
        if len(w) != self.size - 1:
            raise InputError(f"need size - 1 = {self.size - 1} weights, got {len(w)}")


def weighted_shift(spec: ShiftSpec) -> np.ndarray:
    """Forward: ``e_j -> w_j e_{j+1}``; backward: ``e_{j+1} -> w_j e_j``.

    The truncation sends the last basis vector to 0 (forward) or the
    first one to 0 (backward).
    """
    n = spec.size
    T = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    if spec.direction == "forward":
        T[idx + 1, idx] = spec.weights
    else:
        T[idx, idx + 1] = spec.weights
    return T


def _rng(name: str, size: int, seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(size), zlib.crc32(name.encode())]))


def example_2_2(n: int) -> np.ndarray:
    """Backward weighted shift ``(x_2, (1-1/3) x_3, (1-1/4) x_4, ...)``."""
    weights = [1.0] + [1.0 - 1.0 / j for j in range(3, n + 1)]
    return weighted_shift(ShiftSpec(weights, "backward", n))


def example_T(n: int) -> np.ndarray:
    """Hyponormal forward shift with weights ``(1, sqrt 2, 2, 2, ...)``."""
    weights = ([1.0, np.sqrt(2.0)] + [2.0] * n)[: n - 1]
    return weighted_shift(ShiftSpec(weights, "forward", n))


def example_S(n: int) -> np.ndarray:
    """Non-hyponormal *-paranormal forward shift, weights ``(sqrt 2, 1, 2, 2, ...)``."""
    weights = ([np.sqrt(2.0), 1.0] + [2.0] * n)[: n - 1]
    return weighted_shift(ShiftSpec(weights, "forward", n))


def jordan(k: int, eigenvalue: complex = 0.0) -> np.ndarray:
    J = np.diag(np.ones(k - 1, dtype=complex), 1)
    return J + eigenvalue * np.eye(k)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(n: int, seed: int) -> np.ndarray:
    Z = complex_gaussian(_rng("unitary", n, seed), (n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_normal(n: int, seed: int) -> np.ndarray:
    rng = _rng("normal", n, seed)
    U = random_unitary(n, seed)
    mu = complex_gaussian(rng, n)
    return (U * mu) @ adjoint(U)


def random_generic(n: int, seed: int) -> np.ndarray:
    return complex_gaussian(_rng("generic", n, seed), (n, n))


def fixtures(seed: int = 42, n: int = 8) -> dict:
    """Named fixture matrices: the three example shifts at size ``n`` plus canonical families."""
    return {
        "example_2_2": example_2_2(n),
        "example_T": example_T(n),
        "example_S": example_S(n),
        "jordan2": jordan(2),
        "jordan3": jordan(3),
        "random_unitary": random_unitary(n, seed),
        "random_normal": random_normal(n, seed),
        "random_generic": random_generic(n, seed),
    }


def _structured(i: int, n: int, rng: np.random.Generator, seed: int):
    kind = i % 15
    if kind == 0:
        return "jordan", jordan(n, complex_gaussian(rng, 1)[0] if i % 2 else 0.0)
    if kind == 1:
        w = rng.uniform(0.2, 2.0, n - 1)
        return "forward_shift", weighted_shift(ShiftSpec(w, "forward", n))
    if kind == 2:
        w = rng.uniform(0.2, 2.0, n - 1)
        return "backward_shift", weighted_shift(ShiftSpec(w, "backward", n))
    if kind == 3:
        return "upper_triangular", np.triu(complex_gaussian(rng, (n, n)))
    if kind == 4:
        return "complex_diagonal", np.diag(complex_gaussian(rng, n))
    if kind == 5:
        return "scaled_unitary", rng.uniform(0.1, 3.0) * random_unitary(n, seed * 1000 + i)
    if kind == 6:
        H = complex_gaussian(rng, (n, n))
        return "hermitian", H + adjoint(H)
    if kind == 7:
        X = complex_gaussian(rng, (n, n))
        return "positive", X @ adjoint(X)
    if kind == 8:
        c = complex_gaussian(rng, n)
        C = np.array([np.roll(c, j) for j in range(n)]).T
        return "circulant", C
    if kind == 9:
        k = max(1, n // 2)
        T = np.zeros((n, n), dtype=complex)
        T[:k, :k] = np.diag(complex_gaussian(rng, k))
        T[k:, k:] = jordan(n - k)
        return "normal_plus_jordan", T
    if kind == 10:
        u, v = complex_gaussian(rng, n), complex_gaussian(rng, n)
        return "rank_one", np.outer(u, v.conj())
    if kind == 11:
        X = complex_gaussian(rng, (n, n))
        P = X[:, : max(1, n // 2)]
        Q, _ = np.linalg.qr(P)
        Y = complex_gaussian(rng, (n, Q.shape[1]))
        # oblique projection onto span(Q) along the complement of span(Y)
        return "oblique_projection", Q @ np.linalg.solve(adjoint(Y) @ Q, adjoint(Y))
    if kind == 12:
        perm = rng.permutation(n)
        return "permutation", np.eye(n, dtype=complex)[perm]
    if kind == 13:
        name = ("example_2_2", "example_T", "example_S")[(i // 15) % 3]
        return name, {"example_2_2": example_2_2, "example_T": example_T, "example_S": example_S}[name](n)
    # companion matrix of a random polynomial
    c = complex_gaussian(rng, n)
    C = np.diag(np.ones(n - 1, dtype=complex), -1)
    C[:, -1] = -c
    return "companion", C


def corpus(seed: int = 42) -> list[tuple[str, np.ndarray]]:
    """1000 seeded matrices of dimension 2-8.

    400 random generic, 300 random normal (a tenth of them with repeated
    moduli), 300 structured matrices cycling through fifteen families.
    """
    rng = _rng("corpus", 0, seed)
    out = []
    for i in range(400):
        n = int(rng.integers(2, 9))
        out.append((f"generic/{i}", random_generic(n, seed * 100000 + i)))
    for i in range(300):
        n = int(rng.integers(2, 9))
        if i % 10 == 0:
            U = random_unitary(n, seed * 100000 + 400 + i)
            mu = rng.choice([1.0, 2.0], n) * np.exp(2j * np.pi * rng.random(n))
            out.append((f"normal/{i}", (U * mu) @ adjoint(U)))
        else:
            out.append((f"normal/{i}", random_normal(n, seed * 100000 + 400 + i)))
    for i in range(300):
        n = int(rng.integers(2, 9))
        name, M = _structured(i, n, rng, seed)
        out.append((f"structured/{name}/{i}", np.asarray(M, dtype=complex)))
    return out


# --------------------------------------------------------------------------
# random-vector oracle

CLASSES = ("hypo", "para", "star")


def direct_slack(T, x, cls: str) -> np.ndarray:
    """Slack of the defining inequality at ``x`` (rows of a 2-D ``x`` are vectors).

    hypo: ``||Tx||^2 - ||T^*x||^2``; para: ``||T^2x|| ||x|| - ||Tx||^2``;
    star: ``||T^2x|| ||x|| - ||T^*x||^2``. Negative means violated.
    """
    T = np.asarray(T, dtype=complex)
    X = np.atleast_2d(np.asarray(x, dtype=complex))
    TX = X @ T.T
    TsX = X @ T.conj()
    nx = np.linalg.norm(X, axis=1)
    if cls == "hypo":
        out = np.sum(np.abs(TX) ** 2, axis=1) - np.sum(np.abs(TsX) ** 2, axis=1)
    elif cls in ("para", "star"):
        T2X = TX @ T.T
        lhs = TX if cls == "para" else TsX
        out = np.linalg.norm(T2X, axis=1) * nx - np.sum(np.abs(lhs) ** 2, axis=1)
    else:
        raise InputError(f"unknown class {cls!r}; expected one of {CLASSES}")
    return out if np.ndim(x) == 2 else out[0]


def vector_oracle(
    T,
    cls: str,
    samples: int,
    seed: int,
    *,
    compress: int | None = None,
    extra_vectors=None,
    chunk: int = 20000,
):
    """Smallest slack of the class inequality over random unit vectors.

    ``T`` is scaled to unit norm first, so slacks are comparable across
    inputs. With ``compress=m`` samples are supported on the first ``m``
    coordinates. Returns ``(min_slack, argmin_vector)``; the vector has the
    ambient length.
    """
    T = as_matrix(T, square=True)
    if samples < 1:
        raise InputError("samples must be >= 1")
    if cls not in CLASSES:
        raise InputError(f"unknown class {cls!r}; expected one of {CLASSES}")
    n = len(T)
    s = op_norm(T)
    Tn = T / s if s > 0 else T
    m = n if compress is None else int(compress)
    best, best_x = np.inf, None
    streams = np.random.SeedSequence(int(seed)).spawn((samples + chunk - 1) // chunk)
    remaining = samples
    for ss in streams:
        k = min(chunk, remaining)
        remaining -= k
        X = np.zeros((k, n), dtype=complex)
        X[:, :m] = complex_gaussian(np.random.default_rng(ss), (k, m))
        X /= np.linalg.norm(X, axis=1, keepdims=True)
        sl = direct_slack(Tn, X, cls)
        i = int(np.argmin(sl))
        if sl[i] < best:
            best, best_x = float(sl[i]), X[i]
    if extra_vectors is not None:
        E = np.atleast_2d(np.asarray(extra_vectors, dtype=complex))
        E = E / np.linalg.norm(E, axis=1, keepdims=True)
        sl = direct_slack(Tn, E, cls)
        i = int(np.argmin(sl))
        if sl[i] < best:
            best, best_x = float(sl[i]), E[i]
    return best, best_x


def embed(x, n: int) -> np.ndarray:
    """Pad a window vector with zeros to ambient length ``n``."""
    x = np.asarray(x, dtype=complex)
    out = np.zeros(n, dtype=complex)
    out[: len(x)] = x
    return out
