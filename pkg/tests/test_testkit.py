import numpy as np
import pytest

from opclass.classify import is_star_paranormal
from opclass.linalg import InputError, commutator_norm
from opclass.testkit import (
    ShiftSpec,
    corpus,
    direct_slack,
    embed,
    example_2_2,
    example_S,
    example_T,
    fixtures,
    jordan,
    random_generic,
    random_normal,
    random_unitary,
    vector_oracle,
    weighted_shift,
)


def test_forward_shift():
    S = weighted_shift(ShiftSpec([1, 1, 1], "forward", 4))
    assert np.array_equal(S, np.diag([1, 1, 1], -1))


def test_backward_shift():
    S = weighted_shift(ShiftSpec([1, 2, 3], "backward"))
    assert np.array_equal(S, np.diag([1, 2, 3], 1))


def test_shift_validation():
    with pytest.raises(InputError):
        ShiftSpec([1, 0])
    with pytest.raises(InputError):
        ShiftSpec([1, 1], size=5)
    with pytest.raises(InputError):
        ShiftSpec([1], direction="sideways")


def test_example_grams():
    S, T = example_S(6), example_T(6)
    # last column is the truncation edge
    assert np.allclose(np.diag(S.conj().T @ S)[:5], [2, 1, 4, 4, 4])
    assert np.allclose(np.diag(T.conj().T @ T)[:5], [1, 2, 4, 4, 4])


def test_example_2_2_first_row():
    assert np.array_equal(example_2_2(4)[0], [0, 1, 0, 0])
    assert np.allclose(example_2_2(4)[1], [0, 0, 2 / 3, 0])


def test_fixture_examples():
    assert np.array_equal(jordan(2), [[0, 1], [0, 0]])
    assert commutator_norm(random_normal(3, 5)) <= 1e-10
    f = fixtures()
    assert set(f) >= {"example_2_2", "example_T", "example_S", "jordan2", "random_normal", "random_generic"}


def test_reproducible_bytes():
    for build in (random_generic, random_normal, random_unitary):
        assert build(5, 7).tobytes() == build(5, 7).tobytes()
        assert build(5, 7).tobytes() != build(5, 8).tobytes()
    a, b = corpus(42), corpus(42)
    assert all(x[0] == y[0] and x[1].tobytes() == y[1].tobytes() for x, y in zip(a, b))


def test_corpus_shape():
    c = corpus(42)
    assert len(c) == 1000
    names = [n for n, _ in c]
    assert sum(n.startswith("generic/") for n in names) == 400
    assert sum(n.startswith("normal/") for n in names) == 300
    assert sum(n.startswith("structured/") for n in names) == 300
    assert all(2 <= len(T) <= 8 for _, T in c)
    for name, T in c:
        if name.startswith("normal/"):
            assert commutator_norm(T) <= 1e-10 * np.linalg.norm(T, 2) ** 2


def test_direct_slack_by_hand():
    J = jordan(2)
    assert direct_slack(J, [1, 0], "star") == pytest.approx(-1)
    assert direct_slack(J, [0, 1], "para") == pytest.approx(-1)
    assert direct_slack(J, [0, 1], "hypo") == pytest.approx(1)
    with pytest.raises(InputError):
        direct_slack(J, [1, 0], "other")


def test_oracle_unitary_equality():
    v, _ = vector_oracle(random_unitary(4, 1), "star", 10000, 0)
    assert v >= -1e-12


def test_oracle_jordan_with_e1():
    v, x = vector_oracle(jordan(2), "star", 10000, 0, extra_vectors=[[1, 0]])
    assert v < 0


def test_oracle_S_window():
    v, x = vector_oracle(example_S(10), "star", 100000, 3, compress=8)
    assert v >= -1e-12
    assert np.allclose(x[8:], 0)


def test_oracle_deterministic():
    T = random_generic(5, 2)
    a = vector_oracle(T, "para", 5000, 9)
    b = vector_oracle(T, "para", 5000, 9)
    assert a[0] == b[0] and np.array_equal(a[1], b[1])


def test_oracle_never_beats_certificate():
    for seed in range(20):
        T = random_generic(4, seed)
        ok, cert = is_star_paranormal(T)
        v, _ = vector_oracle(T, "star", 20000, seed)
        if ok is True:
            assert v >= -1e-9
        if ok is False:
            Tn = T / np.linalg.norm(T, 2)
            assert direct_slack(Tn, cert.witness, "star") < 0


def test_embed():
    assert np.array_equal(embed([1, 2], 4), [1, 2, 0, 0])
