"""Integer partitions, Young tableaux and Kostka numbers.

Enumeration orders are fixed so that every matrix built downstream is
reproducible:

* partitions of ``n`` come out in reverse-lexicographic order,
  ``[4], [3,1], [2,2], [2,1,1], [1,1,1,1]``;
* standard tableaux of a shape are sorted by their row-reading word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

MAX_PARTITION_N = 30
DEFAULT_TABLEAU_CAP = 10**6


@dataclass(frozen=True, order=False)
class Partition:
    """A nonincreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    and ``Partition((2, 1))`` compare and hash equal.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"4,3,1"`` (brackets and spaces tolerated)."""
        cleaned = text.strip().strip("[]()")
        if not cleaned:
            raise ValueError("empty partition")
        return cls(int(tok) for tok in cleaned.replace(" ", "").split(","))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    def cells(self) -> Iterator[tuple[int, int]]:
        for r, length in enumerate(self.parts):
            for c in range(length):
                yield r, c

    def is_hook(self) -> bool:
        return len(self.parts) <= 1 or all(p == 1 for p in self.parts[1:])


def _as_partition(mu: Partition | Sequence[int]) -> Partition:
    return mu if isinstance(mu, Partition) else Partition(mu)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if not 1 <= n <= MAX_PARTITION_N:
        raise ValueError(f"n must lie in 1..{MAX_PARTITION_N}, got {n}")

    def gen(remaining: int, largest: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return [Partition(p) for p in gen(n, n)]


def dominates(mu: Partition, nu: Partition) -> bool:
    """``mu ⊵ nu``: every prefix sum of ``mu`` is at least that of ``nu``."""
    mu, nu = _as_partition(mu), _as_partition(nu)
    if mu.n != nu.n:
        raise ValueError(f"partitions of different sizes: {mu} vs {nu}")
    s_mu = s_nu = 0
    for k in range(max(len(mu), len(nu))):
        s_mu += mu.parts[k] if k < len(mu) else 0
        s_nu += nu.parts[k] if k < len(nu) else 0
        if s_mu < s_nu:
            return False
    return True


def conjugate(mu: Partition) -> Partition:
    mu = _as_partition(mu)
    if not mu.parts:
        return mu
    return Partition(sum(1 for p in mu.parts if p > c) for c in range(mu.parts[0]))


def hook_lengths(mu: Partition) -> list[list[int]]:
    mu = _as_partition(mu)
    cols = conjugate(mu).parts
    return [[(row - c - 1) + (cols[c] - r - 1) + 1 for c in range(row)]
            for r, row in enumerate(mu.parts)]


def irrep_dimension(mu: Partition) -> int:
    """Number of standard tableaux of shape ``mu`` via the hook length formula."""
    mu = _as_partition(mu)
    hooks = prod(h for row in hook_lengths(mu) for h in row)
    return factorial(mu.n) // hooks


def multinomial(parts: Sequence[int]) -> int:
    """``n! / (n_1! ... n_k!)``, the number of distinct words with this content."""
    return factorial(sum(parts)) // prod(factorial(p) for p in parts)


@dataclass(frozen=True)
class Tableau:
    """A filling of a Young diagram, stored row by row."""

    shape: Partition
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if tuple(len(r) for r in rows) != self.shape.parts:
            raise ValueError(f"entries {rows} do not fit shape {self.shape}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Tableau":
        return cls(Partition(len(r) for r in rows), tuple(tuple(r) for r in rows))

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for row in self.entries for x in row)

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(row[c] for row in self.entries if len(row) > c)

    def is_semistandard(self) -> bool:
        """Rows weakly increase, columns strictly increase."""
        for row in self.entries:
            if any(a > b for a, b in zip(row, row[1:])):
                return False
        for upper, lower in zip(self.entries, self.entries[1:]):
            if any(upper[c] >= lower[c] for c in range(len(lower))):
                return False
        return True

    def is_standard(self) -> bool:
        word = self.reading_word()
        if sorted(word) != list(range(1, len(word) + 1)):
            return False
        return self.is_semistandard()

    def position(self, value: int) -> tuple[int, int]:
        for r, row in enumerate(self.entries):
            for c, x in enumerate(row):
                if x == value:
                    return r, c
        raise KeyError(value)

    def content_of(self, value: int) -> int:
        """Content ``col - row`` of the cell holding ``value``."""
        r, c = self.position(value)
        return c - r

    def __str__(self) -> str:
        return "/".join("".join(map(str, row)) for row in self.entries)


def _syt_generate(shape: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    n = sum(shape)
    rows: list[list[int]] = [[] for _ in shape]

    def place(value: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if value > n:
            yield tuple(tuple(r) for r in rows)
            return
        for r, length in enumerate(shape):
            filled = len(rows[r])
            if filled < length and (r == 0 or len(rows[r - 1]) > filled):
                rows[r].append(value)
                yield from place(value + 1)
                rows[r].pop()

    yield from place(1)


def standard_tableaux(mu: Partition, cap: int = DEFAULT_TABLEAU_CAP) -> list[Tableau]:
    """All standard tableaux of shape ``mu``, sorted by row-reading word."""
    mu = _as_partition(mu)
    dim = irrep_dimension(mu)
    if dim > cap:
        raise ValueError(f"shape {mu} has {dim} standard tableaux, above cap {cap}")
    tabs = sorted(_syt_generate(mu.parts), key=lambda rows: tuple(x for r in rows for x in r))
    return [Tableau(mu, rows) for rows in tabs]


def _horizontal_strips(shape: tuple[int, ...], size: int, outer: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Shapes ``lam`` with ``shape ⊆ lam ⊆ outer`` and ``lam/shape`` a horizontal strip of ``size``."""
    rows = len(outer)
    shape = shape + (0,) * (rows - len(shape))
    new = list(shape)

    def fill(r: int, left: int) -> Iterator[tuple[int, ...]]:
        if r == rows:
            if left == 0:
                yield tuple(x for x in new if x)
            return
        # a horizontal strip may extend row r only up to the old length of row r-1
        ceiling = outer[r] if r == 0 else min(outer[r], shape[r - 1])
        for add in range(min(left, ceiling - shape[r]), -1, -1):
            new[r] = shape[r] + add
            yield from fill(r + 1, left - add)
        new[r] = shape[r]

    yield from fill(0, size)


@lru_cache(maxsize=None)
def _kostka(outer: tuple[int, ...], content: tuple[int, ...]) -> int:
    # Peel off the largest value: the cells holding it form a horizontal strip.
    if not content:
        return 1 if not outer else 0
    *rest, last = content
    total = 0
    n_rest = sum(rest)
    for inner in _inner_strips(outer, last):
        if sum(inner) == n_rest:
            total += _kostka(inner, tuple(rest))
    return total


def _inner_strips(outer: tuple[int, ...], size: int) -> Iterator[tuple[int, ...]]:
    """Shapes ``inner ⊆ outer`` such that ``outer/inner`` is a horizontal strip of ``size``."""
    rows = len(outer)
    inner = list(outer)

    def fill(r: int, left: int) -> Iterator[tuple[int, ...]]:
        if r == rows:
            if left == 0:
                yield tuple(x for x in inner if x)
            return
        floor = outer[r + 1] if r + 1 < rows else 0
        for remove in range(0, min(left, outer[r] - floor) + 1):
            inner[r] = outer[r] - remove
            yield from fill(r + 1, left - remove)
        inner[r] = outer[r]

    yield from fill(0, size)


def kostka_number(mu: Partition, nu: Partition) -> int:
    """Number of semistandard tableaux of shape ``mu`` and content ``nu``.

    This is the multiplicity of the irreducible module of shape ``mu`` in the
    permutation module of shape ``nu``.
    """
    mu, nu = _as_partition(mu), _as_partition(nu)
    if mu.n != nu.n:
        raise ValueError(f"partitions of different sizes: {mu} vs {nu}")
    return _kostka(mu.parts, nu.parts)


def semistandard_tableaux(mu: Partition, content: Sequence[int]) -> list[Tableau]:
    """Explicit list of SSYT of shape ``mu`` and the given content.

    Built value by value as a chain of horizontal strips; meant for small
    shapes and tests, :func:`kostka_number` only counts.
    """
    mu = _as_partition(mu)
    content = tuple(content)
    if sum(content) != mu.n:
        raise ValueError("content and shape sizes differ")
    out: list[Tableau] = []

    def grow(shape: tuple[int, ...], value: int, rows: list[list[int]]):
        if value > len(content):
            if shape == mu.parts:
                out.append(Tableau(mu, tuple(tuple(r) for r in rows)))
            return
        for nxt in _horizontal_strips(shape, content[value - 1], mu.parts):
            new_rows = [list(r) for r in rows] + [[] for _ in range(len(nxt) - len(rows))]
            for r, length in enumerate(nxt):
                old = shape[r] if r < len(shape) else 0
                new_rows[r].extend([value] * (length - old))
            grow(nxt, value + 1, new_rows)

    grow((), 1, [])
    return sorted(out, key=lambda t: t.reading_word())
