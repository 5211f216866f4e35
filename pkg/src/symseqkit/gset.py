"""Finite sets with a Young-subgroup action given on adjacent transpositions.

A :class:`GSet` lives at a sorted word ``w``. The stabilizer of ``w`` acts on
the right, ``act(st, e) == act(t, act(s, e))``, and the action is stored only
on the generators ``k`` (the transposition of ``k`` and ``k + 1``, 0-based)
with ``w[k] == w[k + 1]``. The Coxeter relations are checked by
:func:`validate_gset`; when they hold the data extends uniquely to the group.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .perm import act_word, adjacent_factorization, young_generators


class GSetError(ValueError):
    """Raised on malformed or out-of-range action data."""


@dataclass(frozen=True)
class Violation:
    relation: str
    generators: tuple
    element: Hashable

    def __str__(self) -> str:
        gens = ",".join(f"s{k + 1}" for k in self.generators)
        where = "" if self.element is None else f" at element {self.element!r}"
        return f"{self.relation} fails for ({gens}){where}"


class GSet:
    """Elements (hashable labels) at ``base_word`` with generator images.

    ``gens`` maps a 0-based generator ``k`` to the tuple of element indices
    ``image[i] = index of act(s_k, elements[i])``. Generators left out act as
    the identity.
    """

    __slots__ = ("base_word", "elements", "gens", "index", "_extra", "_omin")

    def __init__(self, base_word: Sequence, elements: Iterable[Hashable],
                 gens: Mapping[int, Sequence[int]] | None = None):
        self.base_word = tuple(base_word)
        self.elements = tuple(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise GSetError("duplicate element labels")
        n = len(self.elements)
        full = {}
        extra = {}
        allowed = set(_equal_adjacent(self.base_word))
        for k, images in (gens or {}).items():
            images = tuple(images)
            if len(images) != n or any(not 0 <= v < n for v in images):
                raise GSetError(f"generator s{k + 1}: image table has wrong shape")
            if k in allowed:
                full[k] = images
            else:
                extra[k] = images
        for k in allowed:
            full.setdefault(k, tuple(range(n)))
        self.gens = full
        self._extra = extra
        self._omin: dict = {}

    @classmethod
    def from_names(cls, base_word: Sequence, elements: Sequence[Hashable],
                   actions: Mapping[int, Mapping[Hashable, Hashable]]) -> "GSet":
        """Build from ``{k: {element: image}}``; unlisted elements are fixed."""
        index = {e: i for i, e in enumerate(elements)}
        gens = {}
        for k, mapping in actions.items():
            images = list(range(len(elements)))
            for src, dst in mapping.items():
                try:
                    images[index[src]] = index[dst]
                except KeyError as exc:
                    raise GSetError(f"unknown element {exc.args[0]!r}") from None
            gens[k] = images
        return cls(base_word, elements, gens)

    @classmethod
    def trivial(cls, base_word: Sequence, elements: Iterable[Hashable]) -> "GSet":
        return cls(base_word, elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e) -> bool:
        return e in self.index

    def __eq__(self, other) -> bool:
        return (isinstance(other, GSet) and self.base_word == other.base_word
                and self.elements == other.elements and self.gens == other.gens
                and self._extra == other._extra)

    def __repr__(self) -> str:
        return f"GSet(word={self.base_word!r}, size={len(self)})"

    def act_index(self, sigma: Sequence[int], i: int) -> int:
        """Index-level action of a stabilizer element."""
        if len(sigma) != len(self.base_word) or act_word(sigma, self.base_word) != self.base_word:
            raise GSetError(f"{tuple(sigma)} does not stabilize {self.base_word!r}")
        for k in adjacent_factorization(sigma):
            i = self.gens[k][i]
        return i

    def act(self, sigma: Sequence[int], e: Hashable) -> Hashable:
        try:
            i = self.index[e]
        except KeyError:
            raise GSetError(f"unknown element {e!r}") from None
        return self.elements[self.act_index(sigma, i)]

    def gen(self, k: int, i: int) -> int:
        return self.gens[k][i]

    def orbits(self) -> list[list[int]]:
        """Orbits as sorted index lists, ordered by least member."""
        parent = list(range(len(self)))
        for images in self.gens.values():
            for i, j in enumerate(images):
                _union(parent, i, j)
        groups: dict[int, list[int]] = {}
        for i in range(len(self)):
            groups.setdefault(_find(parent, i), []).append(i)
        return sorted(groups.values())

    def orbit_min(self, i: int, generators: Iterable[int] | None = None) -> int:
        """Least index in the orbit of ``i`` under the given generators (default all)."""
        pattern = tuple(sorted(self.gens if generators is None else set(generators)))
        table = self._omin.get(pattern)
        if table is None:
            parent = list(range(len(self)))
            for k in pattern:
                for a, b in enumerate(self.gens[k]):
                    _union(parent, a, b)
            table = [_find(parent, a) for a in range(len(self))]
            self._omin[pattern] = table
        return table[i]

    def relabel(self, names: Sequence[Hashable]) -> "GSet":
        return GSet(self.base_word, names, self.gens)


def _equal_adjacent(w: Sequence) -> list[int]:
    return [k for k in range(len(w) - 1) if w[k] == w[k + 1]]


def validate_gset(g: GSet) -> list[Violation]:
    """Return the list of violated conditions (empty when ``g`` is valid)."""
    out: list[Violation] = []
    w = g.base_word
    try:
        young_generators(w)
    except ValueError:
        out.append(Violation("sorted base word", (), None))
    for k in sorted(g._extra):
        out.append(Violation("generator outside stabilizer", (k,), None))
    n = len(g)
    gens = g.gens
    for k, images in sorted(gens.items()):
        if sorted(images) != list(range(n)):
            out.append(Violation("bijectivity", (k,), None))
            continue
        for i in range(n):
            if images[images[i]] != i:
                out.append(Violation("involution s^2 = id", (k,), g.elements[i]))
                break
    if out:
        return out
    keys = sorted(gens)
    for a in keys:
        for b in keys:
            if b <= a:
                continue
            sa, sb = gens[a], gens[b]
            if b - a >= 2:
                for i in range(n):
                    if sa[sb[i]] != sb[sa[i]]:
                        out.append(Violation("commutation", (a, b), g.elements[i]))
                        break
            elif b == a + 1:
                for i in range(n):
                    if sb[sa[sb[i]]] != sa[sb[sa[i]]]:
                        out.append(Violation("braid", (a, b), g.elements[i]))
                        break
    return out


# ---------------------------------------------------------------------------
# orbit quotient


def _find(parent: list[int], i: int) -> int:
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        parent[i], i = root, parent[i]
    return root


def _union(parent: list[int], i: int, j: int) -> None:
    ri, rj = _find(parent, i), _find(parent, j)
    if ri != rj:
        if ri < rj:
            parent[rj] = ri
        else:
            parent[ri] = rj


@dataclass
class QuotientResult:
    representatives: list
    projection: dict = field(repr=False)

    def classes(self) -> dict:
        out: dict = {r: [] for r in self.representatives}
        for raw, rep in self.projection.items():
            out[rep].append(raw)
        return out

    def __len__(self) -> int:
        return len(self.representatives)


Move = Callable[[Hashable], "Hashable | None"] | Mapping


def orbit_quotient(raws: Iterable[Hashable], moves: Iterable[Move]) -> QuotientResult:
    """Connected components of the move graph on ``raws``.

    A move is a callable returning the image of a raw (or ``None`` where it is
    undefined) or a mapping used the same way. Each component is represented
    by its least raw; raws must therefore be mutually comparable.
    """
    ordered = sorted(set(raws))
    pos = {r: i for i, r in enumerate(ordered)}
    parent = list(range(len(ordered)))
    for move in moves:
        get = move.get if isinstance(move, Mapping) else move
        for i, r in enumerate(ordered):
            img = get(r)
            if img is None:
                continue
            j = pos.get(img)
            if j is None:
                raise GSetError(f"move sends {r!r} outside the raw set ({img!r})")
            _union(parent, i, j)
    # roots are least indices, hence least raws
    projection = {r: ordered[_find(parent, i)] for i, r in enumerate(ordered)}
    reps = [r for i, r in enumerate(ordered) if _find(parent, i) == i]
    return QuotientResult(reps, projection)
