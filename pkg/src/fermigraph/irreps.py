"""Symmetry-resolved spectra through Young's orthogonal form.

For each irreducible representation ``mu`` of ``S_N`` the Laplacian restricted
to the ``mu``-isotypic part acts as ``d*I - sum_k alpha_k rho_mu(s_k)``, a
``dim(mu) x dim(mu)`` matrix.  The spectrum of the mixture ``nu`` is the union
over ``mu ⊵ nu`` of these block spectra, each repeated ``K(mu, nu)`` times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .combinatorics import (DEFAULT_TABLEAU_CAP, Partition, Tableau, dominates, irrep_dimension, kostka_number,
                            partitions_of, standard_tableaux)
from .snippets import perm_sign, Perm
from .spectral import SpectrumError, SpectrumMultiset, spectrum_tolerance
from .weights import WeightSet

DEFAULT_BLOCK_CAP = 20_000
RELATION_TOL = 1e-12


class RepresentationError(AssertionError):
    pass


@dataclass(frozen=True)
class IrrepBlock:
    shape: Partition
    basis: tuple[Tableau, ...]
    generators: tuple[np.ndarray, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def generator(self, k: int) -> np.ndarray:
        """Matrix of the transposition ``(k, k+1)``, ``k`` 1-based."""
        return self.generators[k - 1]

    def hamiltonian(self, w: WeightSet) -> np.ndarray:
        """``sum_k alpha_k rho(s_k)``."""
        if w.n != self.shape.n:
            raise ValueError(f"weights are for N={w.n}, block is for N={self.shape.n}")
        dim = self.dimension
        out = np.zeros((dim, dim))
        for a, gen in zip(w.alphas, self.generators):
            out += a * gen
        return out

    def check_relations(self, tol: float = RELATION_TOL) -> None:
        """Raise :class:`RepresentationError` unless every Coxeter relation holds."""
        eye = np.eye(self.dimension)
        gens = self.generators
        for k, g in enumerate(gens, start=1):
            if np.max(np.abs(g - g.T), initial=0.0) > tol:
                raise RepresentationError(f"{self.shape}: generator {k} is not symmetric")
            if np.max(np.abs(g @ g - eye), initial=0.0) > tol:
                raise RepresentationError(f"{self.shape}: generator {k} is not an involution")
        for k in range(len(gens) - 1):
            a, b = gens[k], gens[k + 1]
            if np.max(np.abs(a @ b @ a - b @ a @ b), initial=0.0) > tol:
                raise RepresentationError(f"{self.shape}: braid relation fails at k={k + 1}")
        for i in range(len(gens)):
            for j in range(i + 2, len(gens)):
                a, b = gens[i], gens[j]
                if np.max(np.abs(a @ b - b @ a), initial=0.0) > tol:
                    raise RepresentationError(f"{self.shape}: generators {i + 1},{j + 1} do not commute")


def _swap_entries(t: Tableau, k: int) -> Tableau:
    rows = tuple(tuple(k + 1 if x == k else k if x == k + 1 else x for x in row) for row in t.entries)
    return Tableau(t.shape, rows)


@lru_cache(maxsize=256)
def _cached_block(mu: Partition, cap: int) -> IrrepBlock:
    if irrep_dimension(mu) > cap:
        raise ValueError(f"irrep {mu} has dimension {irrep_dimension(mu)}, above cap {cap}")
    basis = standard_tableaux(mu, cap=DEFAULT_TABLEAU_CAP)
    index = {t.entries: i for i, t in enumerate(basis)}
    dim = len(basis)
    contents = [{v: t.content_of(v) for v in range(1, mu.n + 1)} for t in basis]
    gens = []
    for k in range(1, mu.n):
        g = np.zeros((dim, dim))
        for i, t in enumerate(basis):
            axial = contents[i][k + 1] - contents[i][k]
            g[i, i] = 1.0 / axial
            if abs(axial) > 1:
                j = index[_swap_entries(t, k).entries]
                g[i, j] = math.sqrt(1.0 - 1.0 / axial**2)
        g.setflags(write=False)
        gens.append(g)
    block = IrrepBlock(mu, tuple(basis), tuple(gens))
    block.check_relations()
    return block


def young_orthogonal_block(mu: Partition | Sequence[int], cap: int = DEFAULT_BLOCK_CAP) -> IrrepBlock:
    """Young's orthogonal form of the irrep ``mu``.

    In the basis of standard tableaux, ``(k, k+1)`` acts on ``T`` as
    ``T/r + sqrt(1 - 1/r^2) T'`` where ``r`` is the axial distance
    ``content(k+1) - content(k)`` and ``T'`` is ``T`` with ``k, k+1`` swapped
    (zero when ``|r| = 1``).  Coxeter relations are checked on construction.
    """
    mu = mu if isinstance(mu, Partition) else Partition(mu)
    return _cached_block(mu, cap)


def block_spectrum(mu: Partition | Sequence[int], w: WeightSet, cap: int = DEFAULT_BLOCK_CAP) -> SpectrumMultiset:
    """Eigenvalues ``d - lambda`` for ``lambda`` in the spectrum of ``sum_k alpha_k rho_mu(s_k)``."""
    block = young_orthogonal_block(mu, cap)
    lam = np.linalg.eigvalsh(block.hamiltonian(w))
    vals = w.d - lam
    return SpectrumMultiset(vals, spectrum_tolerance(w.d), labels=(block.shape,) * vals.size)


def contributing_shapes(nu: Partition) -> list[tuple[Partition, int]]:
    """``(mu, K(mu, nu))`` for every ``mu ⊵ nu`` in reverse-lexicographic order."""
    return [(mu, kostka_number(mu, nu)) for mu in partitions_of(nu.n) if dominates(mu, nu)]


def mixture_spectrum_by_symmetry(nu: Partition | Sequence[int], w: WeightSet,
                                 cap: int = DEFAULT_BLOCK_CAP) -> SpectrumMultiset:
    """Full spectrum of the mixture ``nu`` assembled from irrep blocks, with labels."""
    nu = nu if isinstance(nu, Partition) else Partition(nu)
    if w.n != nu.n:
        raise ValueError(f"weights are for N={w.n} but mixture {nu} has N={nu.n}")
    values: list[float] = []
    labels: list[Partition] = []
    for mu, mult in contributing_shapes(nu):
        bs = block_spectrum(mu, w, cap)
        for _ in range(mult):
            values.extend(bs.values.tolist())
            labels.extend([mu] * len(bs))
    return SpectrumMultiset(np.array(values), spectrum_tolerance(w.d), labels=tuple(labels))


def classify_eigenvector(g, vector: np.ndarray, candidates: Iterable[Partition] | None = None,
                         rtol: float = 1e-8) -> tuple[Partition, ...]:
    """Symmetry classes whose block spectrum contains the eigenvalue of ``vector``.

    The eigenvalue is the Rayleigh quotient of ``vector``; it is rejected unless
    ``vector`` is an eigenvector to within ``rtol * max(1, d)``.  A tuple of
    length one is an unambiguous label; longer tuples mean several classes
    share the eigenvalue within tolerance.
    """
    w = g.weights
    tol = rtol * max(1.0, w.d)
    x = np.asarray(vector, dtype=float)
    x = x / np.linalg.norm(x)
    Vx = g.laplacian @ x
    value = float(x @ Vx)
    residual = float(np.linalg.norm(Vx - value * x))
    if residual > tol:
        raise SpectrumError(f"not an eigenvector: residual {residual:.3e} > {tol:.3e}")
    if candidates is None:
        candidates = [mu for mu, _ in contributing_shapes(g.mixture)]
    found = []
    for mu in candidates:
        if block_spectrum(mu, w).multiplicity(value, tol) > 0:
            found.append(mu)
    if not found:
        raise SpectrumError(f"eigenvalue {value!r} matches no candidate symmetry class")
    return tuple(found)


def polytabloid(t: Tableau) -> dict[tuple[int, ...], int]:
    """``E_T = sum_{P in C_T} sign(P) {P(T)}`` as a map from tabloid words to coefficients.

    A tabloid is encoded as the snippet word whose position ``p`` carries the
    row (1-based) that contains ``p``.  Small shapes only: the column group is
    enumerated explicitly.
    """
    shape = t.shape
    cols = [t.column(c) for c in range(shape.parts[0])]
    out: dict[tuple[int, ...], int] = {}
    col_perms = [list(permutations(col)) for col in cols]

    def rec(c: int, mapping: dict[int, int], sign: int):
        if c == len(cols):
            word = [0] * shape.n
            for r, row in enumerate(t.entries, start=1):
                for x in row:
                    word[mapping.get(x, x) - 1] = r
            key = tuple(word)
            out[key] = out.get(key, 0) + sign
            return
        col = cols[c]
        for image in col_perms[c]:
            perm_sign_ = perm_sign(Perm([col.index(v) + 1 for v in image])) if len(col) > 1 else 1
            new = dict(mapping)
            for src, dst in zip(col, image):
                new[src] = dst
            rec(c + 1, new, sign * perm_sign_)

    rec(0, {}, 1)
    return {k: v for k, v in out.items() if v}


def specht_basis_matrix(mu: Partition, words: Sequence[tuple[int, ...]]) -> np.ndarray:
    """Polytabloids of all standard tableaux of ``mu`` as rows over the given tabloid words."""
    index = {wd: i for i, wd in enumerate(words)}
    tabs = standard_tableaux(mu)
    mat = np.zeros((len(tabs), len(words)))
    for i, t in enumerate(tabs):
        for word, coeff in polytabloid(t).items():
            mat[i, index[word]] = coeff
    return mat


__all__ = [
    "IrrepBlock", "RepresentationError", "block_spectrum", "classify_eigenvector", "contributing_shapes",
    "mixture_spectrum_by_symmetry", "polytabloid", "specht_basis_matrix", "young_orthogonal_block",
]
