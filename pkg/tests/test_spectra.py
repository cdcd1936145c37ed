import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opclass.linalg import InputError
from opclass.spectra import (
    SURROGATE_NOTE,
    cluster,
    diagram_emit,
    diagram_parse,
    essential_candidate,
    singular_spectrum,
    spectrum_diagram,
)
from opclass.testkit import example_2_2, jordan, random_generic, random_unitary


def test_singular_spectrum_examples():
    assert np.allclose(singular_spectrum(np.diag([3.0, 1, 2])), [1, 2, 3])
    assert np.allclose(singular_spectrum(jordan(2)), [0, 1])
    assert np.allclose(singular_spectrum(np.zeros((3, 3))), 0)


def test_cluster_examples():
    assert len(cluster([1, 1 + 1e-12, 5])) == 2
    c = cluster([2.0, 2.0, 2.0])
    assert len(c) == 1 and c[0].multiplicity == 3
    assert len(cluster([1, 2, 3], 1e-8)) == 3
    with pytest.raises(InputError):
        cluster([2, 1])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(0, 10), min_size=1, max_size=30), st.floats(1e-10, 0.5))
def test_cluster_multiplicities_sum(values, gap):
    v = sorted(values)
    cl = cluster(v, gap)
    assert sum(c.multiplicity for c in cl) == len(v)
    assert all(c.lo <= c.center <= c.hi for c in cl)


def test_diagram_diag3221():
    d = spectrum_diagram(np.diag([3.0, 2, 2, 1]), lam=2.0)
    assert d.above == [3.0]
    assert d.below == [1.0]
    assert d.essential_candidate == 2.0
    assert d.norm == 3.0 and d.min_mod == 1.0
    assert sum(m for _, m in d.clusters) == 4


def test_diagram_unitary():
    d = spectrum_diagram(random_unitary(5, 0))
    assert d.essential_candidate == pytest.approx(1)
    assert d.above == [] and d.below == []


def test_diagram_backward_shift():
    n = 16
    # every singular value is simple, so place lambda at the norm by hand
    d = spectrum_diagram(example_2_2(n), lam=1.0)
    weights = [1.0] + [1 - 1 / k for k in range(3, n + 1)]
    # nonzero singular values are the weights; the kernel adds a 0
    assert np.allclose(d.values, [0.0] + sorted(weights))
    assert d.norm == pytest.approx(1)
    assert d.essential_candidate == pytest.approx(1)
    assert d.above == []
    assert d.below[0] == pytest.approx(0, abs=1e-14)
    assert np.allclose(d.below[1:], weights[1:])


def test_emit_formats():
    d = spectrum_diagram(np.diag([3.0, 2, 2, 1]), lam=2.0)
    csv = diagram_emit(d, "csv")
    assert csv == "value,multiplicity,region\n1.0,1,beta\n2.0,2,lambda\n3.0,1,alpha\n"
    text = diagram_emit(d, "text")
    assert "alpha_1" in text and "beta_1" in text and "lambda" in text
    assert SURROGATE_NOTE in text
    with pytest.raises(InputError):
        diagram_emit(d, "xml")


def test_json_roundtrip_byte_identical():
    for T in (np.diag([3.0, 2, 2, 1]), random_generic(6, 1), example_2_2(10)):
        s1 = diagram_emit(spectrum_diagram(T), "json")
        s2 = diagram_emit(diagram_parse(s1), "json")
        assert s1 == s2


def test_essential_one_over_k():
    fam = [np.diag(1 - 1 / np.arange(1, n + 1)) for n in (16, 32, 64, 128)]
    est = essential_candidate(fam)
    assert 0.99 <= est.lam <= 1
    assert est.singleton


def test_essential_two_accumulation_points():
    fam = [np.diag(np.where(np.arange(n) % 2, 2.0, 1.0)) for n in (8, 16, 32, 64)]
    est = essential_candidate(fam)
    assert not est.singleton
    assert len(est.growing) == 2


def test_essential_alternating_sign_has_one_cluster():
    # |T| = I for diag(+-1): only one singular-value cluster grows
    fam = [np.diag(np.where(np.arange(n) % 2, -1.0, 1.0)) for n in (8, 16, 32)]
    est = essential_candidate(fam)
    assert est.singleton and est.lam == pytest.approx(1)


def test_essential_unitary_family():
    fam = [random_unitary(n, 3) for n in (8, 16, 32)]
    est = essential_candidate(fam)
    assert est.singleton and est.lam == pytest.approx(1)


def test_essential_needs_three_sizes():
    with pytest.raises(InputError):
        essential_candidate([np.eye(2), np.eye(3)])
    with pytest.raises(InputError):
        essential_candidate([np.eye(3), np.eye(2), np.eye(4)])


@settings(max_examples=20, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(0.05, 0.9), st.integers(0, 1000))
def test_essential_recovers_geometric_accumulation(lam, r, seed):
    # normal family with eigenvalue moduli lam + r^k and a couple of outliers
    def member(n):
        mods = lam + r ** np.arange(1, n + 1) * lam
        U = random_unitary(n, seed)
        return (U * mods) @ U.conj().T

    fam = [member(n) for n in (16, 32, 64, 128)]
    est = essential_candidate(fam)
    assert est.singleton
    assert abs(est.lam - lam) <= 1e-3 * est.tables[128][-1].hi
