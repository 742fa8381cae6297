"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Random weight sets are log-uniform on [0.1, 10] with the seeds listed here.
"""

import io
import json
import math
import time
from contextlib import redirect_stdout
from math import comb
from pathlib import Path

import numpy as np
import pytest

from fermigraph.cli import main
from fermigraph.combinatorics import Partition, dominates, irrep_dimension, kostka_number, partitions_of
from fermigraph.graph import build_graph
from fermigraph.irreps import block_spectrum, mixture_spectrum_by_symmetry, young_orthogonal_block
from fermigraph.physics import ground_state, interchange_walk, lieb_mattis_table, sign_flip_vector
from fermigraph.spectral import (SpectrumMultiset, box_gap, full_spectrum, hook_eigenvalues, path_spectrum,
                                 spectral_gap)
from fermigraph.weights import box_weights, dump_weights, load_weights, random_weights, uniform_weights

from oracles import brute_cayley_laplacian, multinomial

FIXTURES = Path(__file__).parent / "data"


def seeds(n, count):
    return [1000 * n + s for s in range(count)]


def test_criterion_1_block_route_equals_dense(acceptance):
    with acceptance(1, "block decomposition equals dense spectrum, N=2..6, 10 weight sets") as rec:
        t0 = time.perf_counter()
        checked = worst = 0.0
        for n in range(2, 7):
            for nu in partitions_of(n):
                for seed in seeds(n, 10):
                    w = random_weights(n, seed)
                    tol = 1e-9 * max(1.0, w.d)
                    blocks = mixture_spectrum_by_symmetry(nu, w)
                    dense = full_spectrum(build_graph(nu, w))
                    assert len(blocks) == len(dense) == multinomial(nu.parts)
                    assert blocks.matches(dense, tol), (nu, seed)
                    worst = max(worst, float(np.max(np.abs(blocks.values - dense.values))) / max(1.0, w.d))
                    checked += 1
        elapsed = time.perf_counter() - t0
        rec.detail = f"{int(checked)} cases, max deviation {worst:.1e}·max(1,d), {elapsed:.1f}s"
        assert elapsed < 120


def test_criterion_2_gap_theorem(acceptance):
    with acceptance(2, "path gap equals Cayley gap, N=2..5, 20 weight sets") as rec:
        t0 = time.perf_counter()
        worst = 0.0
        for n in range(2, 6):
            for seed in seeds(n, 20):
                w = random_weights(n, seed)
                cayley = np.linalg.eigvalsh(brute_cayley_laplacian(n, w.alphas))
                dev = abs(spectral_gap(w) - cayley[1])
                assert dev <= 1e-9 * w.d, (n, seed, dev)
                worst = max(worst, dev / w.d)
        elapsed = time.perf_counter() - t0
        rec.detail = f"max deviation {worst:.1e}·d, {elapsed:.1f}s"
        assert elapsed < 60


def test_criterion_3_box_formula(acceptance):
    with acceptance(3, "box gap formula, N=2..30, L in {0.5,1,2}") as rec:
        worst = 0.0
        for length in (0.5, 1.0, 2.0):
            gaps = []
            for n in range(2, 31):
                closed = box_gap(n, length)
                numeric = spectral_gap(box_weights(n, length))
                rel = abs(closed - numeric) / closed
                assert rel <= 1e-12, (n, length, rel)
                worst = max(worst, rel)
                gaps.append(numeric)
            assert all(a < b for a, b in zip(gaps, gaps[1:])), length
        assert box_gap(3, 1.0) == pytest.approx(14 * math.pi**2, rel=1e-14)
        assert spectral_gap(box_weights(3, 1.0)) == pytest.approx(14 * math.pi**2, rel=1e-12)
        ratio = box_gap(1000, 1.0) / (math.pi**4 * 1000 / 3)
        assert abs(ratio - 1) <= 0.01
        rec.detail = f"max relative deviation {worst:.1e}, N=1000 asymptotic ratio {ratio:.6f}"


def test_criterion_4_hook_sums(acceptance):
    with acceptance(4, "hook sums contained in Cayley spectrum, N=3..5") as rec:
        families = 0
        for n in range(3, 6):
            for seed in seeds(n, 5):
                w = random_weights(n, seed)
                spec = full_spectrum(build_graph(Partition([1] * n), w))
                path = path_spectrum(w)
                for r in range(1, n):
                    sums = hook_eigenvalues(w, r, path)
                    assert len(sums) == comb(n - 1, r)
                    # every value with multiplicity C(N-1, r), the dimension of [N-r, 1^r]
                    assert spec.contains(np.repeat(sums.values, comb(n - 1, r))), (n, seed, r)
                    families += 1
                top = hook_eigenvalues(w, n - 1, path).values[0]
                assert abs(top - 2 * w.d) <= 1e-12 * 2 * w.d, (n, seed, top - 2 * w.d)
        rec.detail = f"{families} sum families, r=N-1 sum equals 2d to 1e-12 relative"


def test_criterion_5_lieb_mattis(acceptance):
    with acceptance(5, "dominance ordering of K_max, N<=7, 10 weight sets; blocks vs dense, N<=6") as rec:
        t0 = time.perf_counter()
        pairs = 0
        for n in range(2, 8):
            for seed in seeds(n, 10):
                w = random_weights(n, seed)
                table = lieb_mattis_table(n, w)
                assert not table.violations, (n, seed, table.violations)
                pairs += sum(p.comparable for p in table.pairs)
        worst = 0.0
        for n in range(2, 7):
            for seed in seeds(n, 10):
                w = random_weights(n, seed)
                for mu in partitions_of(n):
                    dense = full_spectrum(build_graph(mu, w)).max
                    dev = abs(block_spectrum(mu, w).max - dense)
                    assert dev <= 1e-9 * max(1.0, w.d), (mu, seed, dev)
                    worst = max(worst, dev / max(1.0, w.d))
        elapsed = time.perf_counter() - t0
        rec.detail = f"0 violations over {pairs} comparable pairs, K_max deviation {worst:.1e}, {elapsed:.1f}s"
        assert elapsed < 120


def test_criterion_6_representation_integrity(acceptance):
    with acceptance(6, "Young orthogonal blocks and dimension identity, N<=8") as rec:
        blocks = 0
        for n in range(1, 9):
            for mu in partitions_of(n):
                young_orthogonal_block(mu).check_relations(1e-12)
                blocks += 1
            for nu in partitions_of(n):
                total = sum(kostka_number(mu, nu) * irrep_dimension(mu) for mu in partitions_of(n) if dominates(mu, nu))
                assert total == multinomial(nu.parts), nu
        rec.detail = f"{blocks} blocks pass involution, braid and commutation at 1e-12"


def test_criterion_7_sign_flip(acceptance):
    with acceptance(7, "sign-flipped top eigenvector stays an eigenvector, N<=6") as rec:
        worst_res = worst_norm = 0.0
        for n in range(2, 7):
            for i, nu in enumerate(partitions_of(n)):
                w = random_weights(n, 1000 * n + i)
                g = build_graph(nu, w)
                top = ground_state(nu, w)
                flipped = sign_flip_vector(g.space, top.eigenvector)
                res = float(np.linalg.norm(g.laplacian @ flipped - top.k_max * flipped))
                dnorm = abs(np.linalg.norm(flipped) - np.linalg.norm(top.eigenvector))
                assert res <= 1e-8 * w.d, (nu, res)
                assert dnorm <= 1e-12, (nu, dnorm)
                worst_res = max(worst_res, res / w.d)
                worst_norm = max(worst_norm, dnorm)
        rec.detail = f"max residual {worst_res:.1e}·d, max norm change {worst_norm:.1e}"


def test_criterion_8_interchange_walk(acceptance):
    with acceptance(8, "interchange walk on the hexagon: relaxation rate and stationarity") as rec:
        t0 = time.perf_counter()
        g = build_graph(Partition([1, 1, 1]), uniform_weights(3))
        relax = interchange_walk(g, 3.0, seed=2024, trajectories=10_000, lags=np.linspace(0, 3.0, 31))
        # fixed start so stationarity is reached by the dynamics, 10^4 trajectories x 100 ticks = 10^6 events
        stat = interchange_walk(g, 50.0, seed=2025, trajectories=10_000, start=0, lags=[0.0])
        tv = stat.total_variation_from_uniform()
        elapsed = time.perf_counter() - t0
        rec.detail = (f"rate {relax.relaxation_rate:.4f} ± {relax.relaxation_rate_se:.4f}, "
                      f"TV {tv:.4f} over {stat.events} events, {elapsed:.1f}s")
        assert abs(relax.relaxation_rate - 1.0) <= 0.1
        assert tv <= 0.02
        assert elapsed < 60


def test_criterion_9_fixture_ingestion(acceptance):
    with acceptance(9, "synthetic weight fixtures round-trip and feed a monotone gap table") as rec:
        files = sorted((FIXTURES / "weights").glob("*.json")) + sorted((FIXTURES / "weights_csv").glob("*.csv"))
        assert files
        for path in files:
            text = path.read_text(encoding="utf-8")
            w = load_weights(path)
            assert dump_weights(w, path.suffix[1:]) == text, path.name
            if path.suffix == ".json":
                assert list(w.alphas) == json.loads(text)["alphas"]
            assert all(a > b for a, b in zip(w.alphas, w.alphas[1:]))
        tables = {}
        for source in (f"file:{FIXTURES}/weights/decay_n{{n}}.json", f"file:{FIXTURES}/weights"):
            buf = io.StringIO()
            with redirect_stdout(buf):
                code = main(["gap", "--n", "2:10", "--weights", source, "--format", "csv"])
            assert code == 0
            rows = [line.split(",") for line in buf.getvalue().splitlines()[1:]]
            tables[source] = [(int(r[0]), float(r[1])) for r in rows]
        first, second = tables.values()
        assert first == second
        ns = [n for n, _ in first]
        gaps = [k for _, k in first]
        assert ns == list(range(2, 11))
        assert all(a > b for a, b in zip(gaps, gaps[1:]))
        rec.detail = f"{len(files)} files bit-exact, K2 strictly decreasing from {gaps[0]:.3g} to {gaps[-1]:.3g}"
