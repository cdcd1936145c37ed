import json

import numpy as np
import pytest

from opclass.classify import is_star_paranormal, norm_attaining_subspace
from opclass.decompose import (
    BlockCheckReport,
    BlockDecomposition,
    adjoint_blocks,
    check_blocks,
    from_blocks,
    hypo_block_check,
    invariant_check,
    star_para_blocks,
)
from opclass.linalg import InputError, op_norm
from opclass.testkit import example_2_2, jordan, random_normal, random_unitary


def test_invariant_check_examples():
    r = invariant_check(np.diag([1.0, 2, 3]), np.eye(3)[:, :1])
    assert r.invariant and r.reducing
    r = invariant_check(jordan(2), np.array([[0.0], [1.0]]))
    assert not r.invariant
    assert r.residual_inv == pytest.approx(1)
    U = random_unitary(4, 3)
    r = invariant_check(U, np.eye(4))
    assert r.invariant and r.reducing


def test_invariant_but_not_reducing():
    r = invariant_check(jordan(2), np.array([[1.0], [0.0]]))
    assert r.invariant and not r.reducing


def test_invariant_check_rejects_non_orthonormal():
    with pytest.raises(InputError):
        invariant_check(np.eye(2), np.array([[1.0], [1.0]]))


def test_diagonal_blocks():
    d, rep = star_para_blocks(np.diag([3.0, 2, 2, 2, 1]))
    assert d.lam == pytest.approx(2)
    assert d.dims == (1, 3, 1)
    assert np.allclose(d.V0, [[3]])
    assert np.allclose(d.V, np.eye(3))
    assert np.allclose(d.A, 0)
    assert np.allclose(d.B, [[1]])
    assert rep.passed
    assert rep.B_pencil_verdict == "CertifiedNonneg"


def test_unitary_is_lambda_times_V():
    U = random_unitary(4, 5)
    d, rep = star_para_blocks(U)
    assert d.lam == pytest.approx(1)
    assert d.dims == (0, 4, 0)
    assert rep.passed
    assert op_norm(d.basis @ (d.lam * d.V) @ d.basis.conj().T - U) < 1e-12


def test_jordan_fails():
    d, rep = star_para_blocks(jordan(2))
    assert d.lam == 0
    assert not rep.passed
    assert "zero_blocks" in rep.failed


def test_explicit_lambda():
    d, rep = star_para_blocks(np.diag([3.0, 2, 2, 1]), lam=3.0)
    assert d.dims == (0, 1, 3)
    assert rep.passed


def test_adjoint_blocks_examples():
    D = np.diag([3.0, 2, 2, 2, 1])
    _, r1 = star_para_blocks(D)
    _, r2 = adjoint_blocks(D)
    assert r1.passed and r2.passed
    assert r2.layout == "lower"
    assert "V_coisometry" in r2.verdicts
    _, r = adjoint_blocks(random_unitary(3, 1))
    assert r.passed


def test_adjoint_blocks_backward_shift_matches_direct():
    E = example_2_2(8)
    d, rep = adjoint_blocks(E)
    # direct computation: conjugate E by the basis built from |E^*|
    X = d.basis.conj().T @ E @ d.basis
    assert np.allclose(X, d.conj)
    d0, d1, d2 = d.dims
    assert rep.zero_block_residuals["(2,3)"] == pytest.approx(
        op_norm(X[d0 : d0 + d1, d0 + d1 :]) / op_norm(E) if d1 and d2 else 0.0, abs=1e-14
    )
    assert rep.reassembly_residual < 1e-10


def test_synthetic_VstarA_flagged_alone():
    d = from_blocks(np.zeros((0, 0)), np.eye(2), [[0.5], [0.0]], [[0.5]], 1.0)
    rep = check_blocks(d)
    assert rep.failed == ["VstarA"]


def test_synthetic_B_norm_excess():
    d = from_blocks(np.zeros((0, 0)), np.eye(1), [[0.0]], [[1.5]], 1.0)
    rep = check_blocks(d)
    assert rep.B_norm_excess > 0
    assert rep.verdicts["B_norm"] is False
    assert rep.B_pencil_verdict == "Violation"


def test_b_norm_closed_form_matches_pencil():
    rng = np.random.default_rng(0)
    for _ in range(20):
        b = rng.uniform(0.2, 2.0)
        B = np.diag([b, 0.3])
        d = from_blocks(np.zeros((0, 0)), np.eye(1), np.zeros((1, 2)), B, 1.0)
        rep = check_blocks(d)
        closed = rep.verdicts["B_norm"]
        assert closed == (rep.B_pencil_verdict == "CertifiedNonneg")


def test_pencil_violator_never_passes():
    # ||B|| <= lambda holds, but B is a Jordan block: caught by H2_pencil
    T = np.zeros((4, 4), dtype=complex)
    T[:2, :2] = np.eye(2)
    T[2:, 2:] = 0.5 * jordan(2)
    assert is_star_paranormal(T)[0] is False
    _, rep = star_para_blocks(T)
    assert not rep.passed
    assert rep.verdicts["B_norm"] is True
    assert rep.verdicts["H2_pencil"] is False


def test_V0_structure_with_two_alphas():
    U = random_unitary(5, 2)
    T = U @ np.diag([4.0, 3, 1, 1, 1]) @ U.conj().T
    d, rep = star_para_blocks(T)
    assert d.alphas == pytest.approx([4, 3])
    assert d.alpha_dims == [1, 1]
    assert rep.passed


def test_normal_corpus_members_pass():
    for seed in range(10):
        T = random_normal(6, seed)
        _, rep = star_para_blocks(T)
        assert rep.passed, rep.failed


def test_decomposition_roundtrip_json():
    d, rep = star_para_blocks(np.diag([3.0, 2, 2, 1]))
    d2 = BlockDecomposition.from_dict(json.loads(json.dumps(d.to_dict())))
    assert np.array_equal(d2.conj, d.conj)
    assert d2.to_dict() == d.to_dict()
    r2 = BlockCheckReport.from_dict(json.loads(json.dumps(rep.to_dict())))
    assert r2.to_dict() == rep.to_dict()


def test_residuals_nonnegative_and_verdicts_consistent():
    for T in (jordan(3), example_2_2(6), random_normal(4, 0)):
        _, rep = star_para_blocks(T)
        vals = list(rep.zero_block_residuals.values()) + [
            rep.V0_structure_residual,
            rep.V_isometry_residual,
            rep.VstarA_residual,
            rep.contraction_residual,
            rep.B_norm_excess,
            rep.reassembly_residual,
        ]
        assert all(v >= 0 for v in vals)
        assert rep.verdicts["reassembly"] == (rep.reassembly_residual <= rep.tol)
        assert rep.reassembly_residual < 1e-10


def test_norm_attaining_subspace_invariant_for_normal():
    T = random_normal(5, 4)
    r = invariant_check(T, norm_attaining_subspace(T))
    assert r.invariant and r.reducing


def test_hypo_block_check_examples():
    U1, U2 = random_unitary(2, 1), random_unitary(3, 2)
    r = hypo_block_check(U1, np.zeros((2, 3)), U2)
    assert r.res1 == pytest.approx(0, abs=1e-12)
    assert r.res2 == pytest.approx(0, abs=1e-12)
    assert r.ok1 and r.ok2


def test_hypo_block_check_shape_mismatch():
    with pytest.raises(InputError):
        hypo_block_check(np.eye(2), np.zeros((3, 1)), np.eye(1))
