"""Executable checks of the worked shift examples and their negative controls.

All fixtures are deterministic; ``seed`` only drives the random-vector
oracle cross-checks, so verdicts do not depend on it.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .classify import compress, is_hyponormal, is_star_paranormal, norm_attaining_subspace
from .decompose import hypo_block_check, invariant_check, star_para_blocks
from .linalg import adjoint, op_norm
from .testkit import example_2_2, example_S, example_T, jordan, vector_oracle

WINDOW = 8
AMBIENT = 10


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


def _shift_blocks(kind: str, p: int = 6):
    """``(2R, A, B)`` for the example shifts split as ``M + M^perp``.

    ``M^perp = span(e1, e2)`` and ``M`` is truncated to ``p`` coordinates;
    ``A`` only touches the first coordinate of ``M`` so the blocks are exact.
    """
    C = 2.0 * np.diag(np.ones(p - 1), -1).astype(complex)
    A = np.zeros((p, 2), dtype=complex)
    B = np.zeros((2, 2), dtype=complex)
    if kind == "T":
        A[0, 1] = np.sqrt(2.0)
        B[1, 0] = 1.0
    else:
        A[0, 1] = 1.0
        B[1, 0] = np.sqrt(2.0)
    return C, A, B


def _fixtures(corrupt: str | None):
    T = example_T(AMBIENT)
    S = example_S(AMBIENT)
    E = example_2_2(16)
    if corrupt == "example_S":
        # swap the first two weights: turns S into the hyponormal T
        S = example_T(AMBIENT)
    elif corrupt == "example_T":
        T = example_S(AMBIENT)
    elif corrupt == "example_2_2":
        E = adjoint(E)
    elif corrupt is not None:
        raise ValueError(f"unknown fixture {corrupt!r}")
    return T, S, E


def _ulp_equal(got, want, ulps: int = 4) -> bool:
    # sqrt(2)**2 is not representable as 2; allow a few ulps and nothing more
    return bool(np.all(np.abs(got - want) <= ulps * np.spacing(np.abs(want))))


def _checks(seed: int, corrupt: str | None) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    T, S, E = _fixtures(corrupt)
    m = WINDOW

    def t_hypo():
        ok, w = is_hyponormal(T, compress=m)
        return ok is True, f"min eig of compressed T*T-TT* = {w.value:.3g}"

    def s_not_hypo():
        ok, w = is_hyponormal(S, compress=m)
        e2 = np.zeros(m)
        e2[1] = 1
        Se2 = S @ np.pad(e2, (0, AMBIENT - m))
        slack = np.linalg.norm(adjoint(S) @ np.pad(e2, (0, AMBIENT - m))) ** 2 - np.linalg.norm(Se2) ** 2
        at_e2 = abs(abs(w.vector[1]) - 1) < 1e-12
        good = ok is False and abs(w.value + 1) < 1e-10 and abs(slack - 1) < 1e-12 and at_e2
        return good, f"witness value {w.value:.3g} at e2={at_e2}, ||S*e2||^2-||Se2||^2 = {slack:.3g}"

    def s_star():
        ok, cert = is_star_paranormal(S, compress=m)
        good = ok is True and cert.lower_bound >= -1e-10
        return good, f"verdict {cert.verdict.value}, certified lower bound {cert.lower_bound:.3g}"

    def s_gram():
        _, _, G, _ = compress(S, m)
        d = np.diag(G).real
        want = np.array([2.0, 1.0] + [4.0] * (m - 2))
        return _ulp_equal(d, want), f"diag(S*S) window = {d.tolist()}"

    def t_gram():
        _, _, G, _ = compress(T, m)
        d = np.diag(G).real
        want = np.array([1.0, 2.0] + [4.0] * (m - 2))
        return _ulp_equal(d, want), f"diag(T*T) window = {d.tolist()}"

    def e_not_star():
        ok, cert = is_star_paranormal(E)
        x = np.zeros(len(E))
        x[0] = 1
        Ex = adjoint(E) @ x
        gap = np.linalg.norm(Ex) ** 2 - np.linalg.norm(E @ (E @ x)) * np.linalg.norm(x)
        return ok is False and gap >= 1 - 1e-8, f"verdict {cert.verdict.value}, ||T*e1||^2 - ||T^2e1|| = {gap:.3g}"

    def e_norm():
        nrm = op_norm(E)
        e2 = np.zeros(len(E))
        e2[1] = 1
        attained = abs(np.linalg.norm(E @ e2) - 1) < 1e-12
        return abs(nrm - 1) < 1e-12 and attained, f"||T|| = {nrm!r}, ||Te2|| = 1: {attained}"

    def e_powers():
        base = example_2_2 if corrupt != "example_2_2" else (lambda n: adjoint(example_2_2(n)))
        norms = [op_norm(base(n) @ base(n)) for n in (8, 16, 32, 64)]
        ok = all(v < 1 for v in norms) and all(b >= a for a, b in zip(norms, norms[1:]))
        ok = ok and all(abs(v - (n - 2) / n) < 1e-12 for v, n in zip(norms, (8, 16, 32, 64)))
        return ok, "||T_n^2|| = " + ", ".join(f"{v:.6f}" for v in norms)

    def t_blocks():
        r = hypo_block_check(*_shift_blocks("T" if corrupt != "example_T" else "S"))
        return r.res1 >= -1e-10, f"res1 = {r.res1:.3g}"

    def s_blocks():
        r = hypo_block_check(*_shift_blocks("S" if corrupt != "example_S" else "T"))
        return r.res1 <= -1 + 1e-8, f"res1 = {r.res1:.3g}"

    def s_oracle():
        v, _ = vector_oracle(S, "star", 100000, seed, compress=m)
        return v >= -1e-12, f"min slack over 1e5 window samples = {v:.3g}"

    def j2_control():
        J = jordan(2)
        ok, _ = is_star_paranormal(J)
        M = norm_attaining_subspace(J)
        inv = invariant_check(J, M)
        _, rep = star_para_blocks(J)
        good = ok is False and not inv.invariant and not rep.passed
        return good, f"star {ok}, M invariant {inv.invariant}, failed checks {rep.failed}"

    return [
        ("T hyponormal (window 8)", t_hypo),
        ("S not hyponormal, slack 1 at e2", s_not_hypo),
        ("S *-paranormal (window 8)", s_star),
        ("diag S*S = (2,1,4,...)", s_gram),
        ("diag T*T = (1,2,4,...)", t_gram),
        ("backward shift not *-paranormal at e1", e_not_star),
        ("backward shift norm 1 attained at e2", e_norm),
        ("backward shift ||T_n^2|| < 1, nondecreasing", e_powers),
        ("block inequality holds for T", t_blocks),
        ("block inequality fails for S", s_blocks),
        ("oracle agrees on S window", s_oracle),
        ("jordan(2) negative control", j2_control),
    ]


def run_verification(seed: int = 42, corrupt: str | None = None) -> list[Check]:
    out = []
    for name, fn in _checks(seed, corrupt):
        ok, detail = fn()
        out.append(Check(name, bool(ok), detail))
    return out
