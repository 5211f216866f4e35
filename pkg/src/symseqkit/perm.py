"""Permutations, words over ordered colour sets, and the grid permutations.

Conventions used throughout the package:

* A permutation of degree ``n`` is stored 0-based as the tuple of its images.
  Composition is ``compose(s, t)(i) == s(t(i))``.
* A word is a tuple of colours. ``act_word(s, w)[i] == w[s(i)]``, so
  ``act_word(t, act_word(s, w)) == act_word(compose(s, t), w)``.
* A morphism ``w -> w'`` of the free symmetric monoidal category on a
  discrete colour set is a permutation ``s`` with ``act_word(s, w) == w'``.
  Following ``s : w -> w'`` by ``t : w' -> w''`` gives ``compose(s, t)``.

External (printed) forms are 1-based.
"""
from __future__ import annotations

import itertools
import math
from typing import Hashable, Iterable, Iterator, Sequence

Word = tuple


class PermutationError(ValueError):
    """Raised on malformed permutations or degree mismatches."""


class Permutation(tuple):
    """A bijection of ``{0, ..., n-1}`` stored as its tuple of images."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise PermutationError(f"not a permutation: {images}")
        return super().__new__(cls, images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def transposition(cls, n: int, i: int, j: int | None = None) -> "Permutation":
        """The transposition of ``i`` and ``j`` (default ``i + 1``), 0-based."""
        j = i + 1 if j is None else j
        images = list(range(n))
        images[i], images[j] = images[j], images[i]
        return cls(images)

    @classmethod
    def from_one_line(cls, images: Iterable[int]) -> "Permutation":
        """Build from 1-based one-line notation."""
        return cls(i - 1 for i in images)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build from 1-based disjoint cycles, e.g. ``from_cycles(3, [(1, 2)])``."""
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                images[a - 1] = b - 1
        return cls(images)

    @property
    def n(self) -> int:
        return len(self)

    def __call__(self, i: int) -> int:
        return self[i]

    def compose(self, other: Sequence[int]) -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return Permutation(inverse(self))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self))

    def one_line(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, 1-based, fixed points included."""
        seen = set()
        out = []
        for start in range(len(self)):
            if start in seen:
                continue
            cyc = []
            i = start
            while i not in seen:
                seen.add(i)
                cyc.append(i + 1)
                i = self[i]
            out.append(tuple(cyc))
        return out

    def __repr__(self) -> str:
        return "Permutation[" + " ".join(map(str, self.one_line())) + "]"


# ---------------------------------------------------------------------------
# tuple-level helpers (used in the hot loops of the engines)


def compose(s: Sequence[int], t: Sequence[int]) -> Permutation:
    """``compose(s, t)(i) == s(t(i))``."""
    if len(s) != len(t):
        raise PermutationError(f"degree mismatch: {len(s)} vs {len(t)}")
    return tuple.__new__(Permutation, (s[i] for i in t))


def inverse(s: Sequence[int]) -> Permutation:
    inv = [0] * len(s)
    for i, v in enumerate(s):
        inv[v] = i
    return tuple.__new__(Permutation, inv)


def identity(n: int) -> Permutation:
    return tuple.__new__(Permutation, range(n))


def act_word(s: Sequence[int], w: Sequence[Hashable]) -> Word:
    """Right action of permutations on words: position ``i`` reads ``w[s(i)]``."""
    if len(s) != len(w):
        raise PermutationError(f"degree mismatch: permutation {len(s)}, word {len(w)}")
    return tuple(w[i] for i in s)


def is_morphism(s: Sequence[int], source: Sequence, target: Sequence) -> bool:
    return len(s) == len(source) == len(target) and act_word(s, source) == tuple(target)


def adjacent_factorization(s: Sequence[int]) -> list[int]:
    """Factor ``s`` as ``t_{k1} o t_{k2} o ... o t_{kr}`` with ``t_k = (k k+1)``.

    Returns the 0-based indices ``[k1, ..., kr]``; the factorization is reduced,
    so ``r`` is the inversion count (at most ``n(n-1)/2``) and, for ``s`` in a
    Young subgroup, only uses transpositions from that subgroup.
    """
    cur = list(s)
    rev = []
    n = len(cur)
    while True:
        for k in range(n - 1):
            if cur[k] > cur[k + 1]:
                # cur = cur' o t_k with fewer inversions
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                rev.append(k)
                break
        else:
            break
    rev.reverse()
    return rev


def recompose(n: int, factors: Iterable[int]) -> Permutation:
    out = list(range(n))
    for k in factors:
        # out o t_k swaps entries k, k+1
        out[k], out[k + 1] = out[k + 1], out[k]
    return tuple.__new__(Permutation, out)


def grid_embed(a: Sequence[int], b: Sequence[int]) -> Permutation:
    """``(i, j) -> (a(i), b(j))`` on lexicographically indexed pairs."""
    la = len(b)
    return tuple.__new__(Permutation, (ai * la + bj for ai in a for bj in b))


def block_sum(perms: Sequence[Sequence[int]]) -> Permutation:
    """Block-diagonal sum: the ``k``-th permutation acts on the ``k``-th segment."""
    out = []
    offset = 0
    for p in perms:
        out.extend(offset + v for v in p)
        offset += len(p)
    return tuple.__new__(Permutation, out)


def segment_permutation(lengths: Sequence[int], order: Sequence[int]) -> Permutation:
    """Reorder consecutive segments.

    For segments of the given lengths concatenated in order, returns the
    permutation ``B`` with ``act_word(B, concat(segs)) == concat(segs[order[0]], segs[order[1]], ...)``.
    """
    offsets = [0]
    for length in lengths:
        offsets.append(offsets[-1] + length)
    out = []
    for k in order:
        out.extend(range(offsets[k], offsets[k] + lengths[k]))
    return tuple.__new__(Permutation, out)


def theta(ms: Sequence[int], ns: Sequence[int]) -> Permutation:
    """Exchange of the two lexicographic orders on index quadruples.

    Quadruples ``(i, a, j, b)`` with ``a < ms[i]`` and ``b < ns[j]``. Returns
    the permutation sending the rank of a quadruple in the ``(i, a, j, b)``
    order to its rank in the ``(i, j, a, b)`` order.
    """
    if any(m < 0 for m in ms) or any(n < 0 for n in ns):
        raise PermutationError("block lengths must be non-negative")
    quads = [(i, a, j, b)
             for i, m in enumerate(ms) for a in range(m)
             for j, n in enumerate(ns) for b in range(n)]
    by_second = sorted(range(len(quads)), key=lambda r: (quads[r][0], quads[r][2], quads[r][1], quads[r][3]))
    images = [0] * len(quads)
    for rank2, rank1 in enumerate(by_second):
        images[rank1] = rank2
    return tuple.__new__(Permutation, images)


def all_permutations(n: int) -> Iterator[Permutation]:
    for p in itertools.permutations(range(n)):
        yield tuple.__new__(Permutation, p)


def morphisms(source: Sequence, target: Sequence) -> Iterator[Permutation]:
    """All ``s`` with ``act_word(s, source) == target``."""
    if len(source) != len(target) or sorted(map(repr, source)) != sorted(map(repr, target)):
        return
    slots: dict = {}
    for i, c in enumerate(target):
        slots.setdefault(c, []).append(i)
    sources: dict = {}
    for i, c in enumerate(source):
        sources.setdefault(c, []).append(i)
    colours = list(slots)
    choices = [itertools.permutations(sources[c]) for c in colours]
    for combo in itertools.product(*[list(ch) for ch in choices]):
        images = [0] * len(target)
        for c, picked in zip(colours, combo):
            for pos, src in zip(slots[c], picked):
                images[pos] = src
        yield tuple.__new__(Permutation, images)


def cycle_type(s: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in Permutation(s).cycles()), reverse=True))


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def permutation_of_type(shape: Sequence[int]) -> Permutation:
    """A representative permutation with the given cycle type."""
    images = []
    start = 0
    for k in shape:
        images.extend(start + (i + 1) % k for i in range(k))
        start += k
    return tuple.__new__(Permutation, images)


def class_size(shape: Sequence[int]) -> int:
    """Number of permutations of the given cycle type."""
    n = sum(shape)
    denom = 1
    for k in set(shape):
        mult = shape.count(k) if isinstance(shape, list) else list(shape).count(k)
        denom *= k ** mult * math.factorial(mult)
    return math.factorial(n) // denom


# ---------------------------------------------------------------------------
# colour sets


class ColourSet:
    """A finite set of colours with a fixed total order (the listed order)."""

    __slots__ = ("names", "_rank")

    def __init__(self, names: Iterable[Hashable]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"colour names must be distinct: {names}")
        self.names = names
        self._rank = {c: i for i, c in enumerate(names)}

    def __contains__(self, c) -> bool:
        return c in self._rank

    def __iter__(self):
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, ColourSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"ColourSet({list(self.names)!r})"

    def rank(self, c) -> int:
        try:
            return self._rank[c]
        except KeyError:
            raise ValueError(f"unknown colour {c!r}") from None

    def check_word(self, w: Iterable) -> Word:
        w = tuple(w)
        for c in w:
            if c not in self._rank:
                raise ValueError(f"unknown colour {c!r} in word {w!r}")
        return w

    def word_key(self, w: Sequence) -> tuple[int, ...]:
        return tuple(self._rank[c] for c in w)

    def sort_word(self, w: Sequence) -> Word:
        return tuple(sorted(w, key=self._rank.__getitem__))

    def is_sorted(self, w: Sequence) -> bool:
        ranks = self.word_key(w)
        return all(a <= b for a, b in zip(ranks, ranks[1:]))

    def sorting_permutation(self, w: Sequence) -> Permutation:
        """The stable-sort permutation ``p`` with ``act_word(p, w)`` sorted."""
        return tuple.__new__(Permutation, sorted(range(len(w)), key=lambda i: self._rank[w[i]]))

    def product(self, other: "ColourSet") -> "ColourSet":
        """Pairs of colours, ordered lexicographically."""
        return ColourSet((a, b) for a in self.names for b in other.names)


def young_generators(w: Sequence, colours: ColourSet | None = None) -> list[int]:
    """Adjacent transpositions ``k`` (swapping ``k, k+1``) fixing the sorted word ``w``."""
    w = tuple(w)
    if colours is not None:
        if not colours.is_sorted(w):
            raise ValueError(f"word {w!r} is not sorted")
    else:
        seen = set()
        for k, c in enumerate(w):
            if c in seen and w[k - 1] != c:
                raise ValueError(f"word {w!r} is not sorted")
            seen.add(c)
    return [k for k in range(len(w) - 1) if w[k] == w[k + 1]]


def runs(w: Sequence) -> list[tuple[int, int]]:
    """Maximal runs ``[start, stop)`` of equal consecutive colours."""
    out = []
    start = 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] != w[start]:
            out.append((start, k))
            start = k
    return out if w else []


def stabilizer(w: Sequence) -> Iterator[Permutation]:
    """Every permutation fixing ``w``, one colour class at a time."""
    w = tuple(w)
    classes: dict = {}
    for i, c in enumerate(w):
        classes.setdefault(c, []).append(i)
    groups = list(classes.values())
    for choice in itertools.product(*(itertools.permutations(g) for g in groups)):
        p = [0] * len(w)
        for g, img in zip(groups, choice):
            for i, j in zip(g, img):
                p[i] = j
        yield tuple.__new__(Permutation, p)


def lex_word_product(w1: Sequence, w2: Sequence) -> Word:
    """Pairs ``(w1[i], w2[j])`` in lexicographic order of ``(i, j)``."""
    return tuple((a, b) for a in w1 for b in w2)
