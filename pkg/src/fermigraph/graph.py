"""Weighted Schreier graphs of the symmetric group and their Laplacians.

Vertices of ``X(S_nu ⊂ S_N, S_C)`` are the snippets of the mixture ``nu``;
two snippets are joined by an edge of weight ``alpha_k`` when they differ by
exchanging the (distinct) components at positions ``k`` and ``k+1``.  The
graph Laplacian is exactly the strong-coupling spin-chain matrix ``V^nu``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .combinatorics import Partition
from .snippets import ALPHABET, DEFAULT_SNIPPET_CAP, SnippetSpace, enumerate_snippets, swap_word
from .weights import WeightSet

DEFAULT_PRODUCT_CAP = 10**6


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph with a sparse Laplacian.

    ``edges`` holds ``(u, v, weight)`` with ``u < v``.
    """

    labels: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]
    laplacian: sp.csr_matrix = field(repr=False, compare=False)

    @property
    def num_vertices(self) -> int:
        return len(self.labels)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        return np.asarray(self.laplacian.diagonal(), dtype=float)

    def adjacency_lists(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.labels]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def dense_laplacian(self) -> np.ndarray:
        return self.laplacian.toarray()


def laplacian_from_edges(n_vertices: int, edges: Sequence[tuple[int, int, float]]) -> sp.csr_matrix:
    if not edges:
        return sp.csr_matrix((n_vertices, n_vertices), dtype=float)
    e = np.asarray([(u, v) for u, v, _ in edges], dtype=np.int64)
    wts = np.asarray([w for _, _, w in edges], dtype=float)
    rows = np.concatenate([e[:, 0], e[:, 1], e[:, 0], e[:, 1]])
    cols = np.concatenate([e[:, 1], e[:, 0], e[:, 0], e[:, 1]])
    vals = np.concatenate([-wts, -wts, wts, wts])
    lap = sp.coo_matrix((vals, (rows, cols)), shape=(n_vertices, n_vertices)).tocsr()
    lap.sum_duplicates()
    return lap


@dataclass(frozen=True)
class WeightedSchreierGraph(WeightedGraph):
    """Schreier graph of a Young subgroup with adjacent-transposition generators.

    ``generator_edges`` lists ``(u, v, k)``: snippet ``u`` becomes ``v`` by
    swapping positions ``k`` and ``k+1``.
    """

    space: SnippetSpace = field(default=None, repr=False, compare=False)
    weights: WeightSet = field(default=None, repr=False)
    generator_edges: tuple[tuple[int, int, int], ...] = field(default=(), repr=False)

    @property
    def mixture(self) -> Partition:
        return self.space.mixture

    @property
    def d(self) -> float:
        return self.weights.d

    @property
    def signs(self) -> np.ndarray:
        return np.asarray(self.space.signs, dtype=int)


def build_graph(nu: Partition | Sequence[int], w: WeightSet, cap: int = DEFAULT_SNIPPET_CAP) -> WeightedSchreierGraph:
    nu = nu if isinstance(nu, Partition) else Partition(nu)
    if w.n != nu.n:
        raise ValueError(f"weights are for N={w.n} but mixture {nu} has N={nu.n}")
    space = enumerate_snippets(nu, cap=cap)
    index = space.index
    gen_edges = []
    seen: set[tuple[int, int]] = set()
    for u, snip in enumerate(space.snippets):
        word = snip.word
        for k in range(1, nu.n):
            other = swap_word(word, k)
            if other is None:
                continue
            v = index[other]
            if u < v:
                if (u, v) in seen:
                    raise AssertionError(f"multi-edge between {u} and {v}")
                seen.add((u, v))
                gen_edges.append((u, v, k))
    edges = tuple((u, v, w[k]) for u, v, k in gen_edges)
    labels = tuple("".join(ALPHABET[x - 1] for x in s.word) for s in space.snippets)
    lap = laplacian_from_edges(len(labels), edges)
    return WeightedSchreierGraph(labels, edges, lap, space=space, weights=w, generator_edges=tuple(gen_edges))


def two_coloring(g: WeightedGraph) -> np.ndarray | None:
    """BFS 2-coloring with colors ``+1/-1`` (first vertex of each component gets ``+1``).

    Returns ``None`` if an odd cycle exists.
    """
    color = np.zeros(g.num_vertices, dtype=int)
    adj = g.adjacency_lists()
    for start in range(g.num_vertices):
        if color[start]:
            continue
        color[start] = 1
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if color[v] == 0:
                    color[v] = -color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    return color


@dataclass(frozen=True)
class Bipartition:
    is_bipartite: bool
    parts: tuple[tuple[int, ...], tuple[int, ...]] | None

    def __bool__(self) -> bool:
        return self.is_bipartite


def is_bipartite(g: WeightedGraph) -> Bipartition:
    """Check bipartiteness by 2-coloring.

    For Schreier graphs the two parts are reported by coset sign (positive
    first) and the sign split is checked against every edge.
    """
    coloring = two_coloring(g)
    if coloring is None:
        return Bipartition(False, None)
    if isinstance(g, WeightedSchreierGraph):
        signs = g.signs
        for u, v, _ in g.edges:
            if signs[u] == signs[v]:
                raise AssertionError(f"edge {u}-{v} joins two snippets of equal sign")
        pos = tuple(int(i) for i in np.flatnonzero(signs > 0))
        neg = tuple(int(i) for i in np.flatnonzero(signs < 0))
        return Bipartition(True, (pos, neg))
    a = tuple(int(i) for i in np.flatnonzero(coloring > 0))
    b = tuple(int(i) for i in np.flatnonzero(coloring < 0))
    return Bipartition(True, (a, b))


@dataclass(frozen=True)
class DegreeProfile:
    degrees: np.ndarray
    regular: bool
    biregular: bool
    max_edge_degree_sum: float


def degree_profile(g: WeightedGraph, rtol: float = 1e-12) -> DegreeProfile:
    """Weighted degrees, regularity and ``(x, y)``-biregularity flags.

    ``max_edge_degree_sum`` is ``max(deg u + deg v)`` over edges, which bounds
    the largest Laplacian eigenvalue from above.
    """
    deg = g.degrees()
    scale = max(1.0, float(np.max(np.abs(deg)))) if deg.size else 1.0
    tol = rtol * scale

    def constant(vals: np.ndarray) -> bool:
        return vals.size == 0 or float(np.ptp(vals)) <= tol

    regular = constant(deg)
    bip = is_bipartite(g)
    biregular = False
    if bip.is_bipartite:
        a, b = bip.parts
        biregular = constant(deg[list(a)]) and constant(deg[list(b)])
    bound = max((deg[u] + deg[v] for u, v, _ in g.edges), default=0.0)
    return DegreeProfile(deg, regular, biregular, float(bound))


def cartesian_product(g1: WeightedGraph, g2: WeightedGraph, cap: int = DEFAULT_PRODUCT_CAP) -> WeightedGraph:
    """Cartesian product: ``(a, b) ~ (a', b)`` for ``a ~ a'`` and ``(a, b) ~ (a, b')`` for ``b ~ b'``.

    Vertex ``(i, j)`` is numbered ``i * |V2| + j``; edge weights are inherited.
    """
    n1, n2 = g1.num_vertices, g2.num_vertices
    if n1 * n2 > cap:
        raise ValueError(f"product has {n1 * n2} vertices, above cap {cap}")
    labels = tuple(f"({a},{b})" for a in g1.labels for b in g2.labels)
    edges = []
    for u, v, wt in g1.edges:
        for j in range(n2):
            edges.append((u * n2 + j, v * n2 + j, wt))
    for i in range(n1):
        for u, v, wt in g2.edges:
            edges.append((i * n2 + u, i * n2 + v, wt))
    edges.sort()
    return WeightedGraph(labels, tuple(edges), laplacian_from_edges(n1 * n2, edges))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_graph(g: WeightedGraph, fmt: str = "dot") -> bytes:
    """Serialize to DOT or JSON (UTF-8), one node or edge per line, stable order."""
    fmt = fmt.lower()
    schreier = isinstance(g, WeightedSchreierGraph)
    if fmt == "dot":
        name = f"X{g.mixture}" if schreier else "G"
        lines = [f"graph {_dot_quote(name)} {{"]
        for i, label in enumerate(g.labels):
            extra = f", sign={int(g.signs[i])}" if schreier else ""
            lines.append(f"  {i} [label={_dot_quote(label)}{extra}];")
        if schreier:
            for (u, v, k), (_, _, wt) in zip(g.generator_edges, g.edges):
                lines.append(f"  {u} -- {v} [label={_dot_quote(f'α{k}={wt!r}')}, k={k}];")
        else:
            for u, v, wt in g.edges:
                lines.append(f"  {u} -- {v} [label={_dot_quote(repr(wt))}];")
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "json":
        if schreier:
            doc = {
                "n": g.mixture.n,
                "mixture": list(g.mixture.parts),
                "vertices": list(g.labels),
                "signs": [int(s) for s in g.signs],
                "edges": [{"u": u, "v": v, "k": k, "alpha": wt}
                          for (u, v, k), (_, _, wt) in zip(g.generator_edges, g.edges)],
            }
        else:
            doc = {
                "vertices": list(g.labels),
                "edges": [{"u": u, "v": v, "alpha": wt} for u, v, wt in g.edges],
            }
        return (json.dumps(doc, indent=1, ensure_ascii=False) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {fmt!r}")


def import_graph_json(data: bytes | str) -> WeightedGraph:
    """Rebuild a graph from :func:`export_graph` JSON.

    The Laplacian is reassembled from the listed edges alone, so a round trip
    checks the serialized content rather than re-deriving it.
    """
    doc = json.loads(data)
    labels = tuple(doc["vertices"])
    edges = tuple((int(e["u"]), int(e["v"]), float(e["alpha"])) for e in doc["edges"])
    lap = laplacian_from_edges(len(labels), edges)
    if "mixture" not in doc:
        return WeightedGraph(labels, edges, lap)
    nu = Partition(doc["mixture"])
    space = enumerate_snippets(nu)
    alphas = [None] * (nu.n - 1)
    for e in doc["edges"]:
        alphas[int(e["k"]) - 1] = float(e["alpha"])
    # generators that never act (e.g. the single-vertex graph) keep a placeholder weight
    w = WeightSet(tuple(a if a is not None else 1.0 for a in alphas), provenance="file") if nu.n > 1 else None
    gen = tuple((int(e["u"]), int(e["v"]), int(e["k"])) for e in doc["edges"])
    return WeightedSchreierGraph(labels, edges, lap, space=space, weights=w, generator_edges=gen)
