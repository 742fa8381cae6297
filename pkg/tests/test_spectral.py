import math
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fermigraph.combinatorics import Partition, partitions_of
from fermigraph.graph import build_graph
from fermigraph.spectral import (ConvergenceError, SpectrumError, SpectrumMultiset, box_gap, extremal_eigenvalues,
                                 full_spectrum, hook_eigenvalues, hook_shape, lanczos_extremal, path_laplacian,
                                 path_spectrum, spectral_gap, uniform_path_gap)
from fermigraph.weights import WeightSet, box_weights, random_weights, uniform_weights

from oracles import brute_cayley_laplacian


def test_multiset_matching():
    s = SpectrumMultiset([3.0, 0.0, 1.0, 1.0], tol=1e-9)
    assert s.values.tolist() == [0, 1, 1, 3]
    assert s.multiplicity(1.0) == 2
    assert s.contains([1.0 + 1e-10, 1.0])
    assert not s.contains([1.0, 1.0, 1.0])
    assert s.matches([0, 1, 1, 3])
    assert not s.matches([0, 1, 3])
    assert s.distinct() == [(0.0, 1), (1.0, 2), (3.0, 1)]


def test_multiset_labels_follow_sorting():
    a, b = Partition([2]), Partition([1, 1])
    s = SpectrumMultiset([2.0, 0.0], labels=(b, a))
    assert s.labels == (a, b)
    assert s.labels_at(2.0) == (b,)
    assert s.max_by_label() == {a: 0.0, b: 2.0}


def test_hexagon_spectrum():
    g = build_graph(Partition([1, 1, 1]), uniform_weights(3))
    assert full_spectrum(g).matches([0, 1, 1, 3, 3, 4])
    ref = [2 - 2 * math.cos(2 * math.pi * k / 6) for k in range(6)]
    assert full_spectrum(g).matches(ref)


def test_small_spectra():
    assert full_spectrum(build_graph(Partition([4]), uniform_weights(4))).matches([0])
    assert full_spectrum(build_graph(Partition([2, 1]), uniform_weights(3))).matches([0, 1, 3])


def test_dense_cap():
    with pytest.raises(SpectrumError):
        full_spectrum(build_graph(Partition([1] * 5), uniform_weights(5)), cap=100)


@pytest.mark.parametrize("n", range(2, 7))
def test_trace_and_length(n):
    for i, nu in enumerate(partitions_of(n)):
        w = random_weights(n, i)
        g = build_graph(nu, w)
        spec = full_spectrum(g)
        assert len(spec) == g.num_vertices
        trace = float(np.trace(g.dense_laplacian()))
        assert abs(spec.total() - trace) <= 1e-9 * max(1.0, trace)
        assert spec.min >= -spec.tol


def test_path_spectrum_examples():
    assert path_spectrum(uniform_weights(3)).matches([0, 1, 3])
    a = 2.7
    assert path_spectrum(WeightSet((a,))).matches([0, 2 * a])
    ref = [2 * (1 - math.cos(k * math.pi / 5)) for k in range(5)]
    vals = path_spectrum(uniform_weights(5)).values
    assert np.allclose(vals, ref, rtol=0, atol=1e-14)
    assert vals[1] == pytest.approx(0.381966, abs=1e-6)


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 30), st.integers(0, 10**6))
def test_path_spectrum_matches_dense_and_is_strict(n, seed):
    w = random_weights(n, seed)
    vals = path_spectrum(w).values
    dense = np.linalg.eigvalsh(path_laplacian(w))
    assert np.allclose(vals, dense, rtol=0, atol=1e-11 * w.d)
    assert vals[0] == 0.0
    assert np.all(np.diff(vals) > 0)


def test_uniform_gap_closed_form():
    for n in range(2, 20):
        for alpha in (0.3, 1.0, 7.0):
            assert spectral_gap(uniform_weights(n, alpha)) == pytest.approx(uniform_path_gap(n, alpha), rel=1e-12)


def test_gap_examples():
    assert spectral_gap(uniform_weights(3)) == pytest.approx(1.0, rel=1e-14)
    w = random_weights(4, 21)
    dense = full_spectrum(build_graph(Partition([1] * 4), w))
    assert abs(spectral_gap(w) - dense.values[1]) <= 1e-9


@pytest.mark.parametrize("n", range(2, 6))
def test_gap_theorem_against_brute_cayley(n):
    for seed in range(5):
        w = random_weights(n, 1000 + seed)
        vals = np.linalg.eigvalsh(brute_cayley_laplacian(n, w.alphas))
        assert abs(spectral_gap(w) - vals[1]) <= 1e-9 * w.d


def test_box_gap_values():
    assert box_gap(3, 1.0) == pytest.approx(14 * math.pi**2, rel=1e-14)
    assert box_gap(3, 1.0) == pytest.approx(138.1745, abs=1e-4)
    assert box_gap(7, 2.0) == pytest.approx(box_gap(7, 1.0) / 8, rel=1e-14)
    for n in range(2, 31):
        assert box_gap(n, 1.0) == pytest.approx(spectral_gap(box_weights(n, 1.0)), rel=1e-12)
    n = 1000
    assert box_gap(n) / (math.pi**4 * n / 3) == pytest.approx(1.0, rel=0.01)
    for bad in ((1, 1.0), (3, 0.0), (3, -1.0)):
        with pytest.raises(ValueError):
            box_gap(*bad)


def test_hook_examples():
    h = hook_eigenvalues(uniform_weights(3), 1)
    assert h.matches([1, 3])
    assert set(h.labels) == {Partition([2, 1])}
    w = random_weights(5, 4)
    assert len(hook_eigenvalues(w, 2)) == 6
    top = hook_eigenvalues(w, 4)
    assert len(top) == 1 and top.values[0] == pytest.approx(2 * w.d, rel=1e-13)
    assert top.labels == (Partition([1] * 5),)
    with pytest.raises(ValueError):
        hook_eigenvalues(w, 0)
    with pytest.raises(ValueError):
        hook_eigenvalues(w, 5)
    assert hook_shape(5, 2) == Partition([3, 1, 1])


@pytest.mark.parametrize("n", range(3, 6))
def test_hook_sums_contained_in_cayley_spectrum(n):
    w = random_weights(n, 77 + n)
    spec = full_spectrum(build_graph(Partition([1] * n), w))
    for r in range(1, n):
        hooks = hook_eigenvalues(w, r)
        assert len(hooks) == comb(n - 1, r)
        # each value carries multiplicity dim [N-r,1^r] = C(N-1, r) in the regular representation
        repeated = np.repeat(hooks.values, comb(n - 1, r))
        assert spec.contains(repeated)


@pytest.mark.parametrize("n", range(2, 7))
def test_lanczos_matches_dense(n):
    for i, nu in enumerate(partitions_of(n)):
        w = random_weights(n, 300 + i)
        g = build_graph(nu, w)
        spec = full_spectrum(g)
        tol = 1e-8 * max(1.0, w.d)
        top = extremal_eigenvalues(g, "largest")
        assert abs(top.value - spec.max) <= tol
        assert top.residual <= tol
        assert np.linalg.norm(g.laplacian @ top.vector - top.value * top.vector) <= tol
        low = extremal_eigenvalues(g, "smallest")
        assert abs(low.value) <= tol and low.residual <= tol
        if g.num_vertices > 1:
            gap = extremal_eigenvalues(g, "gap")
            assert abs(gap.value - spec.values[1]) <= tol
        if g.num_vertices > 2:
            second = extremal_eigenvalues(g, "second-largest")
            assert abs(second.value - spec.values[-2]) <= tol


def test_lanczos_cayley_largest_is_2d():
    for n in (3, 5, 7):
        w = random_weights(n, n)
        res = extremal_eigenvalues(build_graph(Partition([1] * n), w), "largest")
        assert res.value == pytest.approx(2 * w.d, rel=1e-8)


def test_lanczos_single_vertex():
    g = build_graph(Partition([3]), uniform_weights(3))
    assert extremal_eigenvalues(g, "largest").value == 0.0
    with pytest.raises(SpectrumError):
        extremal_eigenvalues(g, "gap")


def test_lanczos_reports_nonconvergence():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((200, 200))
    A = A + A.T
    with pytest.raises(ConvergenceError) as info:
        lanczos_extremal(lambda v: A @ v, 200, tol=1e-30, max_matvecs=20, krylov_dim=10)
    assert info.value.residual > 0


def test_lanczos_unknown_selector():
    g = build_graph(Partition([2, 1]), uniform_weights(3))
    with pytest.raises(ValueError):
        extremal_eigenvalues(g, "middle")
