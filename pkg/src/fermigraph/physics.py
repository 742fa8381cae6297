"""Physics-facing layer: ground states, energy slopes, symmetry ordering and
the interchange-process random walk generated by the Laplacian.

Near infinite repulsion an eigenstate with energy slope ``K`` has energy
``E_A - K/g`` to first order in ``1/g``; the ground state of a mixture is the
top eigenvector of its Laplacian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .combinatorics import Partition, dominates, partitions_of
from .graph import WeightedSchreierGraph, build_graph
from .irreps import block_spectrum, classify_eigenvector
from .snippets import SnippetSpace
from .spectral import extremal_eigenvalues, path_laplacian
from .weights import WeightSet


@dataclass(frozen=True)
class ContactReport:
    """Top eigenpair of ``V^nu``.

    ``k_max`` is the energy slope of the ground state; ``eigenvector`` holds the
    snippet coefficients in the basis order of the snippet space.
    """

    mixture: Partition
    k_max: float
    symmetry_label: Partition | None
    candidate_labels: tuple[Partition, ...]
    eigenvector: np.ndarray = field(repr=False)
    residual: float
    d: float
    snippets: tuple[str, ...] = field(repr=False, default=())

    @property
    def ambiguous(self) -> bool:
        return len(self.candidate_labels) > 1

    def energy_slope_interpretation(self) -> str:
        return f"E(1/g) = E_A - {self.k_max!r}/g + o(1/g)"

    def to_dict(self) -> dict:
        return {
            "mixture": list(self.mixture.parts),
            "K_max": self.k_max,
            "symmetry_label": None if self.symmetry_label is None else list(self.symmetry_label.parts),
            "candidate_labels": [list(m.parts) for m in self.candidate_labels],
            "residual": self.residual,
            "d": self.d,
            "energy": self.energy_slope_interpretation(),
            "snippets": list(self.snippets),
            "eigenvector": self.eigenvector.tolist(),
        }


def _fix_sign(x: np.ndarray) -> np.ndarray:
    i = int(np.argmax(np.abs(x)))
    return -x if x[i] < 0 else x


def ground_state(nu: Partition | Sequence[int], w: WeightSet, seed: int = 0) -> ContactReport:
    """Largest eigenpair of ``V^nu`` (Lanczos) and its symmetry class.

    The label is ``nu`` itself whenever the top eigenvalue is not shared with
    another class; with accidental degeneracies every matching class is kept
    in ``candidate_labels`` and ``symmetry_label`` is ``nu`` only if it is
    among them.
    """
    nu = nu if isinstance(nu, Partition) else Partition(nu)
    g = build_graph(nu, w)
    res = extremal_eigenvalues(g, "largest", seed=seed)
    vec = _fix_sign(res.vector / np.linalg.norm(res.vector))
    labels = classify_eigenvector(g, vec)
    label = labels[0] if len(labels) == 1 else (nu if nu in labels else None)
    return ContactReport(nu, res.value, label, labels, vec, res.residual, w.d, g.labels)


def energy_at(report: ContactReport | float, e_a: float, g: float) -> float:
    """First-order energy ``E_A - K/g``."""
    if not g > 0:
        raise ValueError(f"coupling must be positive, got {g}")
    k = report.k_max if isinstance(report, ContactReport) else float(report)
    return e_a - k / g


@dataclass(frozen=True)
class PairComparison:
    upper: Partition
    lower: Partition
    comparable: bool
    k_upper: float
    k_lower: float
    tol: float = 0.0

    @property
    def violation(self) -> bool:
        """For ``upper ⊵ lower`` the ordering demands ``K[upper] <= K[lower]``."""
        return self.comparable and self.k_upper > self.k_lower + self.tol


@dataclass(frozen=True)
class LiebMattisTable:
    n: int
    d: float
    k_max: dict[Partition, float]
    pairs: tuple[PairComparison, ...]

    @property
    def violations(self) -> list[PairComparison]:
        return [p for p in self.pairs if p.violation]

    @property
    def incomparable(self) -> list[PairComparison]:
        return [p for p in self.pairs if not p.comparable]

    def ordered(self) -> list[tuple[Partition, float]]:
        """Classes sorted by ground-state energy, lowest energy (largest ``K``) first."""
        return sorted(self.k_max.items(), key=lambda kv: -kv[1])


def lieb_mattis_table(n: int, w: WeightSet, rtol: float = 1e-9) -> LiebMattisTable:
    """Largest eigenvalue per symmetry class and a check of the dominance ordering.

    Every pair of distinct partitions is listed once, oriented so that
    ``upper`` comes first in reverse-lexicographic order.  Comparable pairs
    must satisfy ``K[upper] <= K[lower]``; incomparable ones are just compared.
    """
    if w.n != n:
        raise ValueError(f"weights are for N={w.n}, not {n}")
    tol = rtol * max(1.0, w.d)
    shapes = partitions_of(n)
    kmax = {mu: block_spectrum(mu, w).max for mu in shapes}
    pairs = []
    for i, a in enumerate(shapes):
        for b in shapes[i + 1:]:
            # reverse-lex order never lists a dominated shape before its dominator
            comparable = dominates(a, b)
            pairs.append(PairComparison(a, b, comparable, kmax[a], kmax[b], tol))
    return LiebMattisTable(n, w.d, kmax, tuple(pairs))


def sign_flip_vector(space: SnippetSpace, a: np.ndarray) -> np.ndarray:
    """``a~_i = sign(snippet_i) * |a_i|``."""
    a = np.asarray(a, dtype=float)
    if a.shape != (space.dimension,):
        raise ValueError(f"vector has shape {a.shape}, snippet space has dimension {space.dimension}")
    return np.asarray(space.signs, dtype=float) * np.abs(a)


# --- interchange process --------------------------------------------------


def path_mode_observable(g: WeightedSchreierGraph, component: int | None = None) -> np.ndarray:
    """``f(s) = sum over positions p holding ``component`` of phi(p)``.

    ``phi`` is the slowest nonconstant mode of the weighted path Laplacian.
    Lifted this way ``f`` is an exact Laplacian eigenvector of the Schreier
    graph with eigenvalue ``lambda_2`` (zero only for the one-component
    mixture).  ``component`` defaults to the last one.
    """
    _, vecs = np.linalg.eigh(path_laplacian(g.weights))
    phi = vecs[:, 1]
    c = len(g.mixture) if component is None else component
    words = np.array(g.space.words())
    return ((words == c) * phi[None, :]).sum(axis=1)


@dataclass
class WalkStatistics:
    duration: float
    trajectories: int
    seed: int
    occupancy: np.ndarray
    initial_histogram: np.ndarray
    jump_counts: np.ndarray
    holding_times: np.ndarray
    lags: np.ndarray
    autocorrelation: np.ndarray
    autocorrelation_se: np.ndarray
    relaxation_rate: float | None
    relaxation_rate_se: float | None
    sign_autocorrelation: np.ndarray
    sign_decay_rate: float | None
    events: int
    labels: tuple[str, ...] = ()

    def total_variation_from_uniform(self) -> float:
        p = self.occupancy
        return 0.5 * float(np.abs(p - 1.0 / p.size).sum())

    def rate_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Empirical jump rates ``n_uv / T_u`` and their Poisson standard errors."""
        T = self.holding_times[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            rates = np.where(T > 0, self.jump_counts / T, np.nan)
            se = np.where(T > 0, np.sqrt(self.jump_counts) / T, np.nan)
        return rates, se

    def to_dict(self) -> dict:
        return {
            "duration": self.duration,
            "trajectories": self.trajectories,
            "seed": self.seed,
            "events": self.events,
            "vertices": list(self.labels),
            "occupancy": self.occupancy.tolist(),
            "initial_histogram": self.initial_histogram.tolist(),
            "total_variation_from_uniform": self.total_variation_from_uniform(),
            "lags": self.lags.tolist(),
            "autocorrelation": self.autocorrelation.tolist(),
            "autocorrelation_se": self.autocorrelation_se.tolist(),
            "relaxation_rate": self.relaxation_rate,
            "relaxation_rate_se": self.relaxation_rate_se,
            "sign_autocorrelation": self.sign_autocorrelation.tolist(),
            "sign_decay_rate": self.sign_decay_rate,
        }


def _neighbor_table(g: WeightedSchreierGraph) -> np.ndarray:
    n = g.mixture.n
    table = np.tile(np.arange(g.num_vertices)[:, None], (1, n - 1))
    for u, v, k in g.generator_edges:
        table[u, k - 1] = v
        table[v, k - 1] = u
    return table


def _fit_decay(lags: np.ndarray, corr: np.ndarray, se: np.ndarray) -> tuple[float | None, float | None]:
    """Least squares on ``log C(t)`` over lags where ``C`` exceeds three standard errors.

    Weighted by ``(C / se)^2``, the inverse variance of ``log C``.  The fit
    stops at the first lag that fails the cut.
    """
    keep = []
    for i in range(lags.size):
        if corr[i] > 3 * se[i] and corr[i] > 0:
            keep.append(i)
        elif i > 0:
            break
    if len(keep) < 2:
        return None, None
    t = lags[keep]
    y = np.log(corr[keep])
    sig = np.where(se[keep] > 0, se[keep] / corr[keep], 1e-12)
    wts = 1.0 / np.maximum(sig, 1e-12) ** 2
    A = np.vstack([np.ones_like(t), t]).T
    Aw = A * wts[:, None]
    cov = np.linalg.inv(A.T @ Aw)
    coef = cov @ (Aw.T @ y)
    return float(-coef[1]), float(math.sqrt(cov[1, 1]))


def interchange_walk(g: WeightedSchreierGraph, duration: float, seed: int = 0, trajectories: int = 1000,
                     start: int | None = None, lags: Sequence[float] | np.ndarray | None = None,
                     observable: np.ndarray | None = None) -> WalkStatistics:
    """Simulate the continuous-time interchange process on a Schreier graph.

    Adjacent positions ``k, k+1`` holding distinct components swap at rate
    ``alpha_k``, so the generator is minus the Laplacian.  Each trajectory
    uses its own stream seeded by ``(seed, index)``.

    Trajectories start uniformly at random (stationary) unless ``start`` fixes
    a vertex.  Returned statistics:

    * ``occupancy``: time-averaged occupation over ``[0, duration]`` pooled over
      trajectories (the initial histogram when ``duration == 0``);
    * ``jump_counts`` / ``holding_times``: per-edge jump tallies and time spent
      per vertex, for rate estimation;
    * ``autocorrelation`` of ``observable`` (default: the lifted slowest path
      mode, see :func:`path_mode_observable`) at ``lags``, and its fitted decay
      rate ``relaxation_rate``;
    * ``sign_autocorrelation`` / ``sign_decay_rate`` for the coset-sign observable.
    """
    if duration < 0 or trajectories <= 0:
        raise ValueError("duration must be >= 0 and trajectories > 0")
    w = g.weights
    n_vert = g.num_vertices
    table = _neighbor_table(g)
    alphas = w.as_array()
    total_rate = w.d
    probs = alphas / alphas.sum()
    if lags is None:
        lags = np.linspace(0.0, duration, 21) if duration > 0 else np.zeros(1)
    lags = np.asarray(lags, dtype=float)
    if np.any(lags > duration + 1e-12) or np.any(lags < 0):
        raise ValueError("lags must lie within [0, duration]")
    f = path_mode_observable(g) if observable is None else np.asarray(observable, dtype=float)
    sgn = g.signs.astype(float)

    occupancy = np.zeros(n_vert)
    initial = np.zeros(n_vert)
    jumps = np.zeros((n_vert, n_vert))
    holding = np.zeros(n_vert)
    f_prod = np.zeros((trajectories, lags.size))
    s_prod = np.zeros((trajectories, lags.size))
    f0sq = np.zeros(trajectories)
    events_total = 0

    for t_idx in range(trajectories):
        rng = np.random.default_rng([seed, t_idx])
        state = int(rng.integers(n_vert)) if start is None else int(start)
        initial[state] += 1
        # uniformization: clock ticks at rate d, tick picks bond k with prob alpha_k/d
        n_events = int(rng.poisson(total_rate * duration)) if duration > 0 else 0
        times = np.sort(rng.uniform(0.0, duration, size=n_events))
        bonds = rng.choice(alphas.size, size=n_events, p=probs)
        path = np.empty(n_events + 1, dtype=np.int64)
        path[0] = state
        for e in range(n_events):
            nxt = table[state, bonds[e]]
            if nxt != state:
                jumps[state, nxt] += 1
            state = nxt
            path[e + 1] = state
        events_total += n_events
        edges_t = np.concatenate([[0.0], times, [duration]])
        np.add.at(holding, path, np.diff(edges_t))
        at_lag = path[np.searchsorted(times, lags, side="right")]
        f_prod[t_idx] = f[path[0]] * f[at_lag]
        s_prod[t_idx] = sgn[path[0]] * sgn[at_lag]
        f0sq[t_idx] = f[path[0]] ** 2

    if duration > 0:
        occupancy = holding / holding.sum()
    else:
        occupancy = initial / initial.sum()

    norm = f0sq.mean()
    if norm > 0:
        corr = f_prod.mean(axis=0) / norm
        se = f_prod.std(axis=0, ddof=1) / math.sqrt(trajectories) / norm if trajectories > 1 else np.zeros(lags.size)
        rate, rate_se = _fit_decay(lags, corr, se)
    else:
        corr = np.zeros(lags.size)
        se = np.zeros(lags.size)
        rate = rate_se = None
    s_corr = s_prod.mean(axis=0)
    s_se = s_prod.std(axis=0, ddof=1) / math.sqrt(trajectories) if trajectories > 1 else np.zeros(lags.size)
    s_rate, _ = _fit_decay(lags, s_corr, s_se)

    return WalkStatistics(duration, trajectories, seed, occupancy, initial / initial.sum(), jumps, holding,
                          lags, corr, se, rate, rate_se, s_corr, s_rate, events_total, g.labels)
