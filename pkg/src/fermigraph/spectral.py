"""Laplacian spectra: dense, Krylov-extremal, and the path-graph reduction.

The gap of the full Cayley graph ``X(S_N, S_C)`` (an ``N! x N!`` problem)
equals the smallest nonzero eigenvalue of the ``N x N`` weighted path
Laplacian; :func:`spectral_gap` uses that.  :func:`hook_eigenvalues` builds the
hook-shape part of the Cayley spectrum from the same path eigenvalues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Literal, Sequence

import numpy as np
import scipy.linalg as sla

from .combinatorics import Partition
from .weights import WeightSet, box_alpha

DEFAULT_DENSE_CAP = 4096
DEFAULT_RTOL = 1e-9


class SpectrumError(RuntimeError):
    pass


class ConvergenceError(SpectrumError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (best residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class SpectrumMultiset:
    """Sorted eigenvalues with an absolute matching tolerance.

    ``labels`` optionally assigns a symmetry class to every value.
    """

    values: np.ndarray
    tol: float = 1e-9
    labels: tuple[Partition, ...] | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).ravel()
        order = np.argsort(vals, kind="stable")
        vals = vals[order]
        if self.labels is not None:
            if len(self.labels) != vals.size:
                raise ValueError("one label per eigenvalue required")
            object.__setattr__(self, "labels", tuple(self.labels[i] for i in order))
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)

    def __iter__(self):
        return iter(self.values.tolist())

    def __getitem__(self, i):
        return self.values[i]

    @property
    def min(self) -> float:
        return float(self.values[0])

    @property
    def max(self) -> float:
        return float(self.values[-1])

    def total(self) -> float:
        return math.fsum(self.values.tolist())

    def multiplicity(self, value: float, tol: float | None = None) -> int:
        tol = self.tol if tol is None else tol
        return int(np.count_nonzero(np.abs(self.values - value) <= tol))

    def distinct(self, tol: float | None = None) -> list[tuple[float, int]]:
        """Cluster values closer than ``tol``; returns ``(mean, count)`` pairs."""
        tol = self.tol if tol is None else tol
        groups: list[list[float]] = []
        for v in self.values.tolist():
            if groups and v - groups[-1][-1] <= tol:
                groups[-1].append(v)
            else:
                groups.append([v])
        return [(sum(g) / len(g), len(g)) for g in groups]

    def contains(self, other: "SpectrumMultiset | Sequence[float]", tol: float | None = None) -> bool:
        """Multiset inclusion ``other ⊆ self`` by greedy matching of sorted values."""
        tol = self.tol if tol is None else tol
        return _match_sorted(np.sort(np.asarray(_values(other), dtype=float)), self.values, tol)

    def matches(self, other: "SpectrumMultiset | Sequence[float]", tol: float | None = None) -> bool:
        theirs = np.sort(np.asarray(_values(other), dtype=float))
        return theirs.size == self.values.size and self.contains(theirs, tol)

    def labels_at(self, value: float, tol: float | None = None) -> tuple[Partition, ...]:
        """Distinct symmetry labels carried by values within ``tol`` of ``value``."""
        if self.labels is None:
            return ()
        tol = self.tol if tol is None else tol
        out: list[Partition] = []
        for v, lab in zip(self.values.tolist(), self.labels):
            if abs(v - value) <= tol and lab not in out:
                out.append(lab)
        return tuple(out)

    def max_by_label(self) -> dict[Partition, float]:
        if self.labels is None:
            raise ValueError("spectrum carries no labels")
        out: dict[Partition, float] = {}
        for v, lab in zip(self.values.tolist(), self.labels):
            out[lab] = max(v, out.get(lab, -math.inf))
        return out


def _values(x) -> np.ndarray:
    return x.values if isinstance(x, SpectrumMultiset) else np.asarray(x, dtype=float)


def _match_sorted(small: np.ndarray, big: np.ndarray, tol: float) -> bool:
    j = 0
    for a in small:
        while j < big.size and big[j] < a - tol:
            j += 1
        if j == big.size or big[j] > a + tol:
            return False
        j += 1
    return True


def spectrum_tolerance(d: float, rtol: float = DEFAULT_RTOL) -> float:
    return rtol * max(1.0, d)


def _graph_scale(g) -> float:
    w = getattr(g, "weights", None)
    if w is not None:
        return w.d
    deg = g.degrees()
    return float(deg.max()) if deg.size else 0.0


def full_spectrum(g, cap: int = DEFAULT_DENSE_CAP, rtol: float = DEFAULT_RTOL,
                  vectors: bool = False):
    """All Laplacian eigenvalues by a dense symmetric solve.

    With ``vectors=True`` returns ``(spectrum, eigenvectors)``, columns in
    ascending eigenvalue order.
    """
    n = g.num_vertices
    if n > cap:
        raise SpectrumError(f"dense solve of size {n} exceeds cap {cap}; use extremal_eigenvalues")
    lap = g.dense_laplacian()
    tol = spectrum_tolerance(_graph_scale(g), rtol)
    if vectors:
        vals, vecs = np.linalg.eigh(lap)
        return SpectrumMultiset(vals, tol), vecs
    return SpectrumMultiset(np.linalg.eigvalsh(lap), tol)


@dataclass
class LanczosResult:
    value: float
    vector: np.ndarray
    residual: float
    matvecs: int
    restarts: int = 0
    extra: dict = field(default_factory=dict)


def lanczos_extremal(matvec: Callable[[np.ndarray], np.ndarray], n: int, *, largest: bool = True,
                     deflate: Sequence[np.ndarray] = (), tol: float = 1e-8, max_matvecs: int | None = None,
                     krylov_dim: int = 60, seed: int = 0, v0: np.ndarray | None = None) -> LanczosResult:
    """Extremal eigenpair of a symmetric operator by restarted Lanczos.

    Full reorthogonalization against the Krylov basis and the ``deflate``
    vectors (assumed orthonormal) each step.  The Krylov space is restarted
    from the current best Ritz vector until ``||A x - theta x|| <= tol``.
    """
    if max_matvecs is None:
        max_matvecs = max(10 * n, 50)
    deflate = [np.asarray(q, dtype=float) for q in deflate]

    def project(x: np.ndarray) -> np.ndarray:
        for q in deflate:
            x = x - (q @ x) * q
        return x

    free_dim = n - len(deflate)
    if free_dim <= 0:
        raise SpectrumError("nothing left after deflation")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n) if v0 is None else np.asarray(v0, dtype=float).copy()
    x = project(project(x))
    x /= np.linalg.norm(x)

    matvecs = 0
    best = (math.inf, 0.0, x)
    restarts = 0
    m_max = min(krylov_dim, free_dim)
    while True:
        basis = [x]
        alphas: list[float] = []
        betas: list[float] = []
        w_last = None
        for j in range(m_max):
            w = matvec(basis[j])
            matvecs += 1
            a = float(basis[j] @ w)
            alphas.append(a)
            w = project(w)
            Q = np.array(basis)
            w = w - Q.T @ (Q @ w)
            w = w - Q.T @ (Q @ w)
            w = project(w)
            b = float(np.linalg.norm(w))
            w_last = w
            if j + 1 == m_max or b <= 1e-14 * max(1.0, abs(a)) or matvecs >= max_matvecs:
                break
            betas.append(b)
            basis.append(w / b)
        T = np.diag(alphas)
        if betas:
            T += np.diag(betas, 1) + np.diag(betas, -1)
        theta, S = np.linalg.eigh(T)
        idx = -1 if largest else 0
        Q = np.array(basis)
        y = Q.T @ S[:, idx]
        y = project(y)
        y /= np.linalg.norm(y)
        Ay = matvec(y)
        matvecs += 1
        value = float(y @ Ay)
        res = float(np.linalg.norm(Ay - value * y))
        if res < best[0]:
            best = (res, value, y)
        if res <= tol:
            return LanczosResult(value, y, res, matvecs, restarts)
        if matvecs >= max_matvecs:
            raise ConvergenceError(f"Lanczos did not converge within {max_matvecs} matvecs", best[0])
        restarts += 1
        x = y


Which = Literal["largest", "second-largest", "smallest", "gap"]


def extremal_eigenvalues(g, which: Which = "largest", *, rtol: float = 1e-8, max_matvecs: int | None = None,
                         seed: int = 0) -> LanczosResult:
    """Iterative extremal eigenpair of the graph Laplacian.

    ``which``:

    * ``"largest"``: top eigenpair;
    * ``"second-largest"``: top eigenpair after deflating the largest;
    * ``"smallest"``: the zero mode (constant vector, checked numerically);
    * ``"gap"``: smallest eigenvalue orthogonal to the constant vector.

    Residual target is ``rtol * max(1, d)``.
    """
    lap = g.laplacian
    n = g.num_vertices
    tol = rtol * max(1.0, _graph_scale(g))
    ones = np.full(n, 1.0 / math.sqrt(n))
    matvec = lambda v: lap @ v  # noqa: E731
    if max_matvecs is None:
        max_matvecs = max(10 * n, 200)
    if which == "smallest":
        r = matvec(ones)
        return LanczosResult(float(ones @ r), ones, float(np.linalg.norm(r - (ones @ r) * ones)), 1)
    if n == 1:
        if which in ("gap", "second-largest"):
            raise SpectrumError("a single-vertex graph has only one eigenvalue")
        return LanczosResult(float(lap[0, 0]), np.ones(1), 0.0, 0)
    if which == "largest":
        return lanczos_extremal(matvec, n, largest=True, tol=tol, max_matvecs=max_matvecs, seed=seed)
    if which == "gap":
        return lanczos_extremal(matvec, n, largest=False, deflate=[ones], tol=tol,
                                max_matvecs=max_matvecs, seed=seed)
    if which == "second-largest":
        top = lanczos_extremal(matvec, n, largest=True, tol=tol * 1e-2, max_matvecs=max_matvecs, seed=seed)
        second = lanczos_extremal(matvec, n, largest=True, deflate=[top.vector], tol=tol,
                                  max_matvecs=max_matvecs, seed=seed + 1)
        second.matvecs += top.matvecs
        second.extra["largest"] = top.value
        return second
    raise ValueError(f"unknown selector {which!r}")


def path_laplacian(w: WeightSet) -> np.ndarray:
    """Dense Laplacian of the weighted path graph on ``N`` sites."""
    a = w.as_array()
    n = w.n
    lap = np.zeros((n, n))
    idx = np.arange(n - 1)
    lap[idx, idx] += a
    lap[idx + 1, idx + 1] += a
    lap[idx, idx + 1] = -a
    lap[idx + 1, idx] = -a
    return lap


def path_spectrum(w: WeightSet) -> SpectrumMultiset:
    """Eigenvalues ``0 = l_1 < l_2 < ... < l_N`` of the weighted path Laplacian.

    The Laplacian factors as ``B B^T`` with ``B`` the ``N x (N-1)`` weighted
    incidence matrix, so the nonzero eigenvalues are the squared singular
    values of ``B``.  That keeps the small end of the spectrum accurate to a
    few ulps even when the weights are large.
    """
    a = w.as_array()
    n = w.n
    B = np.zeros((n, n - 1))
    s = np.sqrt(a)
    B[np.arange(n - 1), np.arange(n - 1)] = s
    B[np.arange(1, n), np.arange(n - 1)] = -s
    sv = sla.svdvals(B)
    lam = np.concatenate([[0.0], np.sort(sv**2)])
    if not np.all(np.diff(lam) > 0):
        raise SpectrumError("path spectrum is not strictly increasing; numerical failure")
    return SpectrumMultiset(lam, spectrum_tolerance(w.d))


def hook_shape(n: int, r: int) -> Partition:
    return Partition((n - r,) + (1,) * r)


def hook_eigenvalues(w: WeightSet, r: int, path: SpectrumMultiset | None = None) -> SpectrumMultiset:
    """Sums of ``r`` distinct nonzero path eigenvalues, labeled ``[N-r, 1^r]``.

    There are ``C(N-1, r)`` of them.
    """
    n = w.n
    if not 1 <= r <= n - 1:
        raise ValueError(f"r must lie in 1..{n - 1}, got {r}")
    lam = (path or path_spectrum(w)).values[1:]
    sums = [math.fsum(c) for c in combinations(lam.tolist(), r)]
    label = hook_shape(n, r)
    return SpectrumMultiset(np.array(sums), spectrum_tolerance(w.d), labels=(label,) * len(sums))


def spectral_gap(w: WeightSet) -> float:
    """Spectral gap of the full Cayley graph ``X(S_N, S_C)``.

    Equal to the second-smallest path eigenvalue: an ``O(N^3)`` computation at
    worst instead of an ``N!``-dimensional one.
    """
    return float(path_spectrum(w).values[1])


def box_gap(n: int, length: float = 1.0) -> float:
    """Closed-form gap for a hard-wall box: ``pi^2 N(N+1)(2N+1)/(3 L^3) * (1 - cos(pi/N))``."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if not length > 0:
        raise ValueError(f"box length must be positive, got {length}")
    # 1 - cos(x) written as 2 sin^2(x/2) to avoid cancellation at large N
    return math.pi**2 * n * (n + 1) * (2 * n + 1) / (3.0 * length**3) * 2.0 * math.sin(math.pi / (2 * n)) ** 2


def uniform_path_gap(n: int, alpha: float) -> float:
    return 2.0 * alpha * (1.0 - math.cos(math.pi / n))


__all__ = [
    "ConvergenceError", "LanczosResult", "SpectrumError", "SpectrumMultiset", "box_alpha", "box_gap",
    "extremal_eigenvalues", "full_spectrum", "hook_eigenvalues", "hook_shape", "lanczos_extremal",
    "path_laplacian", "path_spectrum", "spectral_gap", "spectrum_tolerance", "uniform_path_gap",
]
