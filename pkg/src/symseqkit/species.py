"""Species: single-colour symmetric sequences and counting oracles.

A species here is a sequence over the one-colour sets ``{*}`` with a
declared truncation bound ``A``: values are given for arities ``<= A`` and
taken to be empty above. Three counting oracles check the engines
independently of the orbit-quotient machinery:

* :func:`rectangle_oracle` enumerates pairs of transversal set partitions,
* :func:`dwyer_hess_count` is the closed form for the arithmetic product,
* :func:`analytic_eval` evaluates the analytic functor with Burnside's lemma.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .gset import GSet
from .perm import class_size, integer_partitions, permutation_of_type
from .symseq import SymSeq, regular_gset

STAR = "*"


class Species(SymSeq):
    """A single-colour sequence with a truncation bound."""

    def __init__(self, values: Mapping[int, GSet | Sequence], truncation: int | None = None,
                 *, validate: bool = True):
        support = {}
        for n, val in values.items():
            w = (STAR,) * n
            support[(w, STAR)] = val if isinstance(val, GSet) else GSet(w, val)
        top = max((n for n, v in values.items() if len(v)), default=0)
        self.truncation = top if truncation is None else truncation
        if self.truncation < top:
            raise ValueError(f"truncation {self.truncation} is below the largest arity {top}")
        super().__init__([STAR], [STAR], support, validate=validate)

    def card(self, n: int) -> int:
        """``|F[n]|``."""
        g = self.point(((STAR,) * n, STAR))
        return len(g) if g is not None else 0

    def value(self, n: int) -> GSet | None:
        return self.point(((STAR,) * n, STAR))

    def __repr__(self) -> str:
        counts = [self.card(n) for n in range(self.truncation + 1)]
        return f"Species(truncation={self.truncation}, cards={counts})"


def as_species(M: SymSeq, truncation: int | None = None) -> Species:
    """View a single-colour sequence as a species (all its points are read)."""
    if list(M.inputs) != [STAR] or list(M.outputs) != [STAR]:
        raise ValueError("a species has the single colour '*' for inputs and outputs")
    if isinstance(M, Species) and truncation is None:
        return M
    values = {len(w): g for (w, _), g in M.support.items()}
    return Species(values, truncation, validate=False)


def species_E(A: int) -> Species:
    """Sets: one element with the trivial action at each arity ``<= A``."""
    if A < 0:
        raise ValueError("truncation must be non-negative")
    return Species({n: ["e"] for n in range(A + 1)}, A)


def species_L(A: int) -> Species:
    """Linear orders: the regular action of the symmetric group at each arity ``<= A``."""
    if A < 0:
        raise ValueError("truncation must be non-negative")
    return Species({n: regular_gset((STAR,) * n) for n in range(A + 1)}, A)


def species_X() -> Species:
    """The singleton species: one element at arity 1."""
    return Species({1: ["x"]}, 1)


def species_E2() -> Species:
    """A single binary operation with the trivial action."""
    return Species({2: ["m"]}, 2)


def random_species(rng: random.Random, max_arity: int = 3, max_elements: int = 2) -> Species:
    """Random species with values of size ``<= max_elements``.

    Each value is a disjoint union of trivial orbits and sign orbits (the
    latter only at arities ``>= 2``), so every Coxeter relation holds.
    """
    values = {}
    for n in range(max_arity + 1):
        k = rng.randint(0, max_elements)
        if not k:
            continue
        names = [f"a{i}" for i in range(k)]
        images = list(range(k))
        i = 0
        while i + 1 < k and n >= 2:
            if rng.random() < 0.5:
                images[i], images[i + 1] = i + 1, i
                i += 2
            else:
                i += 1
        gens = {j: tuple(images) for j in range(n - 1)}
        values[n] = GSet((STAR,) * n, names, gens)
    return Species(values, max_arity)


# ---------------------------------------------------------------------------
# oracles


def fixed_points(g: GSet, sigma: Sequence[int]) -> int:
    return sum(1 for i in range(len(g)) if g.act_index(sigma, i) == i)


def analytic_eval(F: SymSeq, k: int) -> int:
    """``F(k) = sum_n |F[n] x k^n / S_n|`` by Burnside's lemma.

    The fixed-point count is a class function, so the inner sum runs over
    cycle types with their class sizes.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    F = as_species(F)
    total = Fraction(0)
    for n in range(F.truncation + 1):
        g = F.value(n)
        if g is None:
            continue
        s = 0
        for shape in integer_partitions(n):
            sigma = permutation_of_type(shape)
            s += class_size(shape) * fixed_points(g, sigma) * k ** len(shape)
        total += Fraction(s, math.factorial(n))
    if total.denominator != 1:
        raise ArithmeticError("Burnside sum is not an integer; the action is inconsistent")
    return int(total)


def _equal_block_partitions(items: Sequence[int], size: int):
    """Set partitions of ``items`` into blocks of ``size`` elements each."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for others in itertools.combinations(rest, size - 1):
        block = (first,) + others
        remaining = [x for x in rest if x not in others]
        for tail in _equal_block_partitions(remaining, size):
            yield [block] + tail


def rectangles(n: int):
    """All rectangles on ``{0..n-1}``: pairs of set partitions meeting transversally.

    Yields ``(rows, columns)`` as lists of frozensets.
    """
    if n == 0:
        yield [], []
        return
    for d in range(1, n + 1):
        if n % d:
            continue
        e = n // d
        for rows in _equal_block_partitions(list(range(n)), e):
            # the first row names the columns; other rows choose a bijection to them
            first = rows[0]
            for choice in itertools.product(*(itertools.permutations(r) for r in rows[1:])):
                cols = [{first[j]} for j in range(e)]
                for r in choice:
                    for j, x in enumerate(r):
                        cols[j].add(x)
                yield [frozenset(r) for r in rows], [frozenset(c) for c in cols]


def rectangle_oracle(F: SymSeq, G: SymSeq, n: int) -> int:
    """``sum |F[#rows]| * |G[#columns]|`` over the rectangles on ``n`` points."""
    F, G = as_species(F), as_species(G)
    return sum(F.card(len(rows)) * G.card(len(cols)) for rows, cols in rectangles(n))


def dwyer_hess_count(F: SymSeq, G: SymSeq, n: int) -> int:
    """Closed form ``sum_{m1 m2 = n} n! |F[m1]| |G[m2]| / (m1! m2!)``.

    At ``n = 0`` only ``m1 = m2 = 0`` is counted.
    """
    F, G = as_species(F), as_species(G)
    if n == 0:
        return F.card(0) * G.card(0)
    total = 0
    for m1 in range(1, n + 1):
        if n % m1:
            continue
        m2 = n // m1
        total += (math.factorial(n) * F.card(m1) * G.card(m2)
                  // (math.factorial(m1) * math.factorial(m2)))
    return total


def orbit_count(g: GSet | None) -> int:
    return len(g.orbits()) if g is not None else 0


def boxtimes_zero_count(F: SymSeq, G: SymSeq) -> int:
    """Element count of ``F [x] G`` at the empty word.

    A nullary element of one factor pairs with an orbit of the other factor
    at any arity; the pair of two nullaries is counted once.
    """
    F, G = as_species(F), as_species(G)
    f0, g0 = F.card(0), G.card(0)
    total = f0 * g0
    total += f0 * sum(orbit_count(G.value(m)) for m in range(1, G.truncation + 1))
    total += g0 * sum(orbit_count(F.value(m)) for m in range(1, F.truncation + 1))
    return total


@dataclass(frozen=True)
class AnalyticCheck:
    """Outcome of comparing ``(G o F)(k)`` with ``G(F(k))``."""

    status: str  # pass | fail | inconclusive
    composite: int | None
    nested: int | None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.status == "pass"


def composite_analytic_check(G: SymSeq, F: SymSeq, k: int, max_arity: int = 9) -> AnalyticCheck:
    """Substitution against composition of analytic functors.

    ``G o F`` places ``F``-structures on the inputs of a ``G``-structure, that
    is the composite with ``G`` inner and ``F`` outer. The composite is
    computed in full; when its arities could exceed ``max_arity`` the
    result is inconclusive rather than a pass.
    """
    from .compose import kleisli_compose

    G, F = as_species(G), as_species(F)
    bound = G.truncation * max(F.truncation, 0)
    if bound > max_arity:
        return AnalyticCheck("inconclusive", None, None,
                             f"composite arities reach {bound}, above the limit {max_arity}")
    C = kleisli_compose(F, G)
    composite = analytic_eval(as_species(C, bound), k)
    nested = analytic_eval(G, analytic_eval(F, k))
    status = "pass" if composite == nested else "fail"
    return AnalyticCheck(status, composite, nested)
