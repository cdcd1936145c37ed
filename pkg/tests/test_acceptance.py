"""One test per acceptance criterion; outcomes are summarised at the end of the run."""

import numpy as np

from opclass.classify import (
    PencilVerdict,
    compress,
    is_hyponormal,
    is_normal,
    is_star_paranormal,
    kernel_compare,
    norm_attaining_subspace,
)
from opclass.decompose import check_blocks, from_blocks, hypo_block_check, invariant_check, star_para_blocks
from opclass.hardy import SymbolSpec, classify_hankel, classify_toeplitz, hankel_matrix, toeplitz_matrix
from opclass.linalg import commutator_norm, herm_eig, min_modulus, op_norm
from opclass.spectra import diagram_emit, essential_candidate, spectrum_diagram
from opclass.testkit import direct_slack, example_2_2, example_S, example_T, jordan, vector_oracle
from opclass.verify import _shift_blocks, _ulp_equal

from conftest import CORPUS_TOL
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"


def certified(reports):
    return [i for i, r in enumerate(reports) if r.flags["star_paranormal"] is True]


def test_criterion_01_shift_examples(record):
    m, n = 8, 10
    T, S = example_T(n), example_S(n)
    t_hypo, _ = is_hyponormal(T, compress=m)
    s_hypo, w = is_hyponormal(S, compress=m)
    e2 = np.zeros(n)
    e2[1] = 1
    slack = np.linalg.norm(S.conj().T @ e2) ** 2 - np.linalg.norm(S @ e2) ** 2
    witness_at_e2 = abs(abs(w.vector[1]) - 1) < 1e-12
    s_star, cert = is_star_paranormal(S, compress=m)
    diag = np.diag(compress(S, m)[2]).real
    want = np.array([2.0, 1.0] + [4.0] * (m - 2))
    ok = (
        t_hypo is True
        and s_hypo is False
        and abs(-w.value - 1) < 1e-12
        and abs(slack - 1) < 1e-12
        and witness_at_e2
        and s_star is True
        and cert.lower_bound >= -1e-10
        and _ulp_equal(diag, want)
    )
    record(
        1,
        ok,
        f"hypo(T)={t_hypo} hypo(S)={s_hypo} slack={-w.value:.3g} star(S)={s_star} "
        f"lower={cert.lower_bound:.2e} max|diag-(2,1,4..)|={np.max(np.abs(diag - want)):.1e}",
    )
    assert ok


def test_criterion_02_backward_shift(record):
    E = example_2_2(16)
    ok_star, cert = is_star_paranormal(E)
    x = cert.witness
    gap = np.linalg.norm(E.conj().T @ x) ** 2 - np.linalg.norm(E @ (E @ x)) * np.linalg.norm(x)
    at_e1 = abs(abs(x[0]) - 1) < 1e-8
    e2 = np.zeros(16)
    e2[1] = 1
    norm_ok = abs(op_norm(E) - 1) < 1e-12 and abs(np.linalg.norm(E @ e2) - 1) < 1e-12
    sq = [op_norm(example_2_2(k) @ example_2_2(k)) for k in (8, 16, 32, 64)]
    pow_ok = all(v < 1 for v in sq) and all(b >= a for a, b in zip(sq, sq[1:]))
    ok = ok_star is False and gap >= 1 - 1e-8 and at_e1 and norm_ok and pow_ok
    record(2, ok, f"star={ok_star} gap at witness={gap:.10f} e1={at_e1} ||T_n^2||={[round(v, 6) for v in sq]}")
    assert ok


def test_criterion_03_block_inequalities(record):
    r_t = hypo_block_check(*_shift_blocks("T"))
    r_s = hypo_block_check(*_shift_blocks("S"))
    ok = r_t.res1 >= -1e-10 and r_s.res1 <= -1 + 1e-8
    record(3, ok, f"res1(T)={r_t.res1:.3g} res1(S)={r_s.res1:.3g}")
    assert ok


def test_criterion_04_compact_normality(record, seeded_corpus, corpus_reports):
    bad = []
    for i in certified(corpus_reports):
        T = seeded_corpus[i][1]
        if commutator_norm(T) > CORPUS_TOL * op_norm(T) ** 2:
            bad.append(seeded_corpus[i][0])
    n_cert = len(certified(corpus_reports))
    record(4, not bad, f"{n_cert} certified at tol {CORPUS_TOL:g}, non-normal among them: {len(bad)} {bad[:3]}")
    assert not bad


def test_criterion_05_implications(record, seeded_corpus, corpus_reports):
    bad = [
        seeded_corpus[i][0]
        for i, r in enumerate(corpus_reports)
        if r.flags["hyponormal"] and (r.flags["star_paranormal"] is False or r.flags["paranormal"] is False)
    ]
    n_hypo = sum(r.flags["hyponormal"] for r in corpus_reports)
    record(5, not bad, f"{n_hypo} hyponormal, chain violations: {len(bad)}")
    assert not bad


def test_criterion_06_oracle_agreement(record, seeded_corpus, corpus_reports):
    worst_cert = np.inf
    worst_wit = -np.inf
    bad = []
    for i, (name, T) in enumerate(seeded_corpus):
        cert = corpus_reports[i].certificates["star_paranormal"]
        if cert.verdict is PencilVerdict.CERTIFIED_NONNEG:
            v, _ = vector_oracle(T, "star", 100000, seed=1000 + i)
            worst_cert = min(worst_cert, v)
            if v < -1e-9:
                bad.append(name)
        elif cert.verdict is PencilVerdict.VIOLATION:
            Tn = T / op_norm(T)
            s = direct_slack(Tn, cert.witness, "star")
            worst_wit = max(worst_wit, s)
            if s > -cert.tol:
                bad.append(name)
    record(
        6,
        not bad,
        f"min oracle slack on certified={worst_cert:.2e}, max witness slack on violations={worst_wit:.2e}, "
        f"disagreements: {len(bad)}",
    )
    assert not bad


def test_criterion_07_attaining_subspace_invariant(record, seeded_corpus, corpus_reports):
    bad = []
    worst = 0.0
    for i in certified(corpus_reports):
        name, T = seeded_corpus[i]
        M = norm_attaining_subspace(T)
        r = invariant_check(T, M, 1e-8)
        s = op_norm(T)
        worst = max(worst, r.residual_red / s if s else 0.0)
        if not (r.invariant and r.reducing and r.residual_inv <= 1e-8 * s + 1e-12):
            bad.append(name)
    record(7, not bad, f"max reducing residual / ||T|| = {worst:.1e}, failures: {len(bad)}")
    assert not bad


def test_criterion_08_block_roundtrip(record, seeded_corpus, corpus_reports):
    cert = set(certified(corpus_reports))
    failed = []
    worst_reassembly = 0.0
    for i, (name, T) in enumerate(seeded_corpus):
        _, rep = star_para_blocks(T)
        worst_reassembly = max(worst_reassembly, rep.reassembly_residual)
        if rep.reassembly_residual > 1e-10:
            failed.append((name, "reassembly"))
        if i in cert and not rep.passed:
            failed.append((name, rep.failed))
    record(8, not failed, f"{len(cert)} certified decomposed, max reassembly={worst_reassembly:.1e}, failures: {failed[:3]}")
    assert not failed


def test_criterion_09_kernel_and_invertible(record, seeded_corpus, corpus_reports):
    bad = []
    n_checked = 0
    for i in certified(corpus_reports):
        name, T = seeded_corpus[i]
        if kernel_compare(T).equal or min_modulus(T) >= 1e-6:
            n_checked += 1
            if not is_normal(T, 1e-6):
                bad.append(name)
    record(9, not bad, f"{n_checked} members with equal kernels or invertible, non-normal: {len(bad)}")
    assert not bad


def test_criterion_10_toeplitz(record):
    c = 1.5 - 2j
    r_const = classify_toeplitz(SymbolSpec({0: c}), 8)
    const_ok = r_const.isometry_multiple and abs(r_const.c - abs(c)) < 1e-12
    r_z = classify_toeplitz(SymbolSpec({1: 1}), 8)
    z_ok = r_z.isometry_multiple and abs(r_z.c - 1) < 1e-12
    n = 32
    vals = herm_eig(toeplitz_matrix(SymbolSpec({1: 1, -1: 1}), n)).values
    want = np.sort(2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1)))
    err = float(np.max(np.abs(vals - want)))
    ok = const_ok and z_ok and err < 1e-8
    record(10, ok, f"|c| err={abs(r_const.c - abs(c)):.1e} shift c={r_z.c!r} cosine eig err={err:.1e}")
    assert ok


def test_criterion_11_hankel(record):
    rng = np.random.default_rng(42)
    results = []
    for _ in range(5):
        k = int(rng.integers(1, 5))
        sym = SymbolSpec({-j: float(rng.standard_normal()) for j in range(1, k + 1)} | {1: float(rng.standard_normal())})
        H = hankel_matrix(sym, 12)
        r = classify_hankel(sym, 8)
        results.append(bool(np.array_equal(H, H.T)) and r.normal)
    ok = all(results)
    record(11, ok, f"symmetric and normal: {results}")
    assert ok


def test_criterion_12_spectra(record):
    fam = [np.diag(1 - 1 / np.arange(1, n + 1)) for n in (16, 32, 64, 128)]
    est = essential_candidate(fam)
    lam_ok = est.lam is not None and 1 - 1e-2 <= est.lam <= 1 and est.singleton
    d = spectrum_diagram(np.diag([3.0, 2, 2, 1]), lam=2.0)
    golden_ok = True
    for fmt in ("csv", "json", "text"):
        a, b = diagram_emit(d, fmt), diagram_emit(spectrum_diagram(np.diag([3.0, 2, 2, 1]), lam=2.0), fmt)
        golden_ok &= a == b and a.encode() == (GOLDEN / f"diag3221_lambda2.{fmt}").read_bytes()
    ok = lam_ok and golden_ok
    record(12, ok, f"lambda={est.lam:.5f} singleton={est.singleton} golden identical={golden_ok}")
    assert ok


def test_criterion_13_negative_controls(record):
    J = jordan(2)
    star, _ = is_star_paranormal(J)
    inv = invariant_check(J, norm_attaining_subspace(J))
    _, rep = star_para_blocks(J)
    synth = check_blocks(from_blocks(np.zeros((0, 0)), np.eye(2), [[0.5], [0.0]], [[0.5]], 1.0))
    ok = star is False and not inv.invariant and not rep.passed and synth.failed == ["VstarA"]
    record(13, ok, f"J2 star={star} M invariant={inv.invariant} block failures={rep.failed} synthetic={synth.failed}")
    assert ok
