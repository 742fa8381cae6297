"""Snippets: orderings of a fermionic mixture along the line.

A snippet of the mixture ``nu = (N_1, ..., N_k)`` is a word of length ``N``
in which component label ``i`` (1-based) appears ``N_i`` times.  It is the
same thing as a left coset of the Young subgroup ``S_nu`` in ``S_N``, or a
tabloid of shape ``nu``: row ``i`` of the tabloid holds the positions of
component ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .combinatorics import Partition, multinomial

DEFAULT_SNIPPET_CAP = 10**6
ALPHABET = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Perm:
    """Permutation of ``{1..N}`` in one-line notation."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def parse(cls, text: str) -> "Perm":
        return cls(int(c) for c in text) if "," not in text else cls(int(c) for c in text.split(","))

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Composition ``(self * other)(i) = self(other(i))``."""
        return Perm(self.images[j - 1] for j in other.images)

    def inversions(self) -> int:
        imgs = self.images
        return sum(1 for i in range(len(imgs)) for j in range(i + 1, len(imgs)) if imgs[i] > imgs[j])

    def __str__(self) -> str:
        sep = "" if self.n < 10 else ","
        return sep.join(map(str, self.images))


def perm_sign(p: Perm) -> int:
    """Sign of ``p``, the parity of its inversion count."""
    return -1 if p.inversions() % 2 else 1


@dataclass(frozen=True)
class Snippet:
    word: tuple[int, ...]
    mixture: Partition

    def __post_init__(self):
        word = tuple(int(x) for x in self.word)
        object.__setattr__(self, "word", word)
        counts = [0] * len(self.mixture)
        for x in word:
            if not 1 <= x <= len(self.mixture):
                raise ValueError(f"label {x} outside 1..{len(self.mixture)}")
            counts[x - 1] += 1
        if tuple(counts) != self.mixture.parts:
            raise ValueError(f"word {word} does not have content {self.mixture}")

    @classmethod
    def from_letters(cls, text: str) -> "Snippet":
        """Build from a letter word such as ``"abbaacba"``; the mixture is inferred."""
        labels = tuple(ALPHABET.index(ch) + 1 for ch in text)
        k = max(labels)
        counts = [labels.count(i) for i in range(1, k + 1)]
        return cls(labels, Partition(counts))

    @property
    def n(self) -> int:
        return len(self.word)

    def letters(self) -> str:
        return "".join(ALPHABET[x - 1] for x in self.word)

    def __str__(self) -> str:
        return self.letters()


def _multiset_permutations(sorted_word: list[int]) -> Iterator[tuple[int, ...]]:
    # Lexicographic successor enumeration (Narayana); each distinct word once.
    a = list(sorted_word)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


@dataclass(frozen=True)
class SnippetSpace:
    """The snippet basis of the mixture ``nu`` in lexicographic word order."""

    mixture: Partition
    snippets: tuple[Snippet, ...]
    index: dict[tuple[int, ...], int] = field(repr=False, compare=False)
    signs: tuple[int, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.mixture.n

    @property
    def dimension(self) -> int:
        return len(self.snippets)

    def __len__(self) -> int:
        return len(self.snippets)

    def words(self) -> list[tuple[int, ...]]:
        return [s.word for s in self.snippets]

    def position(self, word: Sequence[int]) -> int:
        return self.index[tuple(word)]


def enumerate_snippets(nu: Partition | Sequence[int], cap: int = DEFAULT_SNIPPET_CAP) -> SnippetSpace:
    """Enumerate every snippet of the mixture ``nu``.

    The size cap is applied to ``D_nu`` itself, so long words with few
    distinct arrangements (the path graph ``(N-1, 1)`` at ``N = 30``) are fine.
    """
    nu = nu if isinstance(nu, Partition) else Partition(nu)
    if len(nu) == 0:
        raise ValueError("mixture must have at least one component")
    dim = multinomial(nu.parts)
    if dim > cap:
        raise ValueError(f"mixture {nu} has {dim} snippets, above cap {cap}")
    base = [label for label, count in enumerate(nu.parts, start=1) for _ in range(count)]
    snippets = []
    index = {}
    signs = []
    for i, word in enumerate(_multiset_permutations(base)):
        snip = Snippet.__new__(Snippet)
        object.__setattr__(snip, "word", word)
        object.__setattr__(snip, "mixture", nu)
        snippets.append(snip)
        index[word] = i
        signs.append(_word_sign(word))
    return SnippetSpace(nu, tuple(snippets), index, tuple(signs))


def _representative_images(word: Sequence[int], mixture: Partition) -> list[int]:
    offsets = [0]
    for count in mixture.parts:
        offsets.append(offsets[-1] + count)
    next_label = offsets[:-1]
    images = []
    for label in word:
        next_label[label - 1] += 1
        images.append(next_label[label - 1])
    return images


def coset_representative(s: Snippet) -> Perm:
    """Canonical coset representative of a snippet.

    Particles of component ``i`` carry the labels ``N_1+...+N_{i-1}+1`` onward,
    handed out in increasing order to that component's positions read left to
    right.  ``abbaacba`` maps to ``15623874``.
    """
    return Perm(_representative_images(s.word, s.mixture))


def _word_sign(word: Sequence[int]) -> int:
    # Inversions of the canonical representative are exactly the pairs of
    # positions i < j with word[i] > word[j].
    counts = [0] * (max(word) + 1)
    inv = 0
    for x in reversed(word):
        inv += sum(counts[:x])
        counts[x] += 1
    return -1 if inv % 2 else 1


def coset_sign(s: Snippet) -> int:
    return perm_sign(coset_representative(s))


def adjacent_swap(s: Snippet, k: int) -> Snippet | None:
    """Exchange positions ``k`` and ``k+1`` (1-based).

    Returns ``None`` when both positions hold the same component, in which
    case the swap leaves the snippet unchanged and carries no edge.
    """
    if not 1 <= k <= s.n - 1:
        raise ValueError(f"k must lie in 1..{s.n - 1}, got {k}")
    w = s.word
    if w[k - 1] == w[k]:
        return None
    new = w[:k - 1] + (w[k], w[k - 1]) + w[k + 1:]
    return Snippet(new, s.mixture)


def swap_word(word: tuple[int, ...], k: int) -> tuple[int, ...] | None:
    """Word-level version of :func:`adjacent_swap` for hot loops."""
    if word[k - 1] == word[k]:
        return None
    return word[:k - 1] + (word[k], word[k - 1]) + word[k + 1:]
