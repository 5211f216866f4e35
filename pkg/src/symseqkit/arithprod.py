"""The arithmetic product of coloured symmetric sequences.

An element of ``M1 [x] M2`` at a sorted word ``z`` over ``Y1 x Y2`` is a class
of raws ``(k1, f1, k2, f2, s)`` where ``s`` glues ``z`` to the lexicographic
pairing ``lex(y1, y2)`` of the two input words: ``act_word(s, z) ==
lex(y1, y2)``. The stabilizers of ``y1`` and ``y2`` act by
``(f1, s) ~ (act(a, f1), s o grid(a, id))`` and symmetrically. When both
words are nonempty this action is free; canonical raws have the grid rows
(and columns) ordered by their least label within each colour run.

Raws are ``(k1 id, f1, k2 id, f2, labels)`` (key ids are the keys' sort
tuples, ``f1`` and ``f2`` element labels of the factors) with
``labels[i * len(y2) + j]`` the position of ``z`` glued to cell ``(i, j)``.
"""
from __future__ import annotations

import itertools
import math
from typing import Hashable, Sequence

from .compose import orbit_symbols, run_argsort
from .perm import ColourSet, compose, grid_embed, inverse, lex_word_product, runs
from .symseq import LazySeq, PointTooLarge, SeqMorphism, SymSeq, identity_seq


class BoxProductError(ValueError):
    """Raised on inconsistent product data."""


def product_colours(A: ColourSet, B: ColourSet) -> ColourSet:
    return A.product(B)


def boxtimes_unit() -> SymSeq:
    """The unit: a single element at ``((*), *)`` over the one-colour set."""
    return identity_seq(["*"])


class BoxProduct(LazySeq):
    """``M1 [x] M2`` with canonical raws as element labels, computed lazily.

    The value at the empty word collects every point of one factor paired
    with a nullary point of the other. It is only computed when the partner
    factor's arities stay within ``zero_limit``; otherwise
    :class:`PointTooLarge` is raised.
    """

    zero_limit = 8

    def __init__(self, M1: SymSeq, M2: SymSeq, max_arity: int | None = None):
        self._zcol = M1.inputs.product(M2.inputs)
        super().__init__(M1.outputs.product(M2.outputs), self._zcol)
        self.left = M1
        self.right = M2
        self.cap = max_arity

    def canonical(self, k1: tuple, f1: Hashable, k2: tuple, f2: Hashable,
                  labels: Sequence[int]) -> tuple:
        key1 = self.left.key_from_order(k1)
        key2 = self.right.key_from_order(k2)
        m1, m2 = len(key1[0]), len(key2[0])
        labels = tuple(labels)
        if m1 and m2:
            rows = [min(labels[i * m2:(i + 1) * m2]) for i in range(m1)]
            cols = [min(labels[j::m2]) for j in range(m2)]
            alpha = run_argsort(key1[0], rows)
            beta = run_argsort(key2[0], cols)
            if alpha is not None or beta is not None:
                a = alpha if alpha is not None else range(m1)
                b = beta if beta is not None else range(m2)
                labels = tuple(labels[i] for i in grid_embed(a, b))
                if alpha is not None:
                    f1 = self.left.act_elem(key1, alpha, f1)
                if beta is not None:
                    f2 = self.right.act_elem(key2, beta, f2)
        elif m1:
            f1 = self.left.orbit_rep(key1, f1)
        elif m2:
            f2 = self.right.orbit_rep(key2, f2)
        return (k1, f1, k2, f2, labels)

    def gen_image(self, key, k: int, raw: tuple) -> tuple:
        k1, f1, k2, f2, lab = raw
        swap = {k: k + 1, k + 1: k}
        return self.canonical(k1, f1, k2, f2, tuple(swap.get(q, q) for q in lab))

    def orbit_rep(self, key, raw: tuple, generators=None) -> tuple:
        """Canonical member of the orbit of ``raw`` under a Young subgroup.

        Labels in one subgroup run become equal symbols. Row orders (or column
        orders, whichever side has fewer distinct arrangements) are
        enumerated, the other side is sorted, and the least symbol grid wins;
        identical rows or columns leave a residual symmetry handled by the
        factors' own orbit representatives. The winner is relabelled in
        reading order.
        """
        sym = orbit_symbols(key[0], generators)
        if sym is None:
            return raw
        k1, f1, k2, f2, labels = raw
        key1 = self.left.key_from_order(k1)
        key2 = self.right.key_from_order(k2)
        y1, y2 = key1[0], key2[0]
        m1, m2 = len(y1), len(y2)
        side1 = _Side(self.left, key1)
        side2 = _Side(self.right, key2)
        cells = [sym[q] for q in labels]
        cols = [cells[i * m2 + j] for j in range(m2) for i in range(m1)]
        if _arrangements(cells, y1, m2) <= _arrangements(cols, y2, m1):
            grid, f1, f2 = _grid_rep(cells, y1, y2, side1, side2, f1, f2)
        else:
            gt, f2, f1 = _grid_rep(cols, y2, y1, side2, side1, f2, f1)
            grid = [gt[j * m1 + i] for i in range(m1) for j in range(m2)]
        nxt: dict = {}
        out = []
        for v in grid:
            q = nxt.get(v, v)
            nxt[v] = q + 1
            out.append(q)
        return self.canonical(k1, f1, k2, f2, out)

    def _enumerate_keys(self):
        Z = self._zcol
        out = set()
        keys2 = self.right.key_list()
        for y1, x1 in self.left.key_list():
            for y2, x2 in keys2:
                if self.cap is not None and len(y1) * len(y2) > self.cap:
                    continue
                out.add((Z.sort_word(lex_word_product(y1, y2)), (x1, x2)))
        return out

    def _compute_elements(self, key):
        z, (x1, x2) = key
        Z = self._zcol
        M1, M2 = self.left, self.right
        keys1 = [k for k in M1.key_list() if k[1] == x1]
        keys2 = [k for k in M2.key_list() if k[1] == x2]
        if not z:
            for side, own, other in ((0, keys1, keys2), (1, keys2, keys1)):
                if any(not k[0] for k in own) and max((len(k[0]) for k in other), default=0) > self.zero_limit:
                    raise PointTooLarge(f"empty-word value of a product needs points of arity "
                                        f"above {self.zero_limit}")
        raws = set()
        for key1 in keys1:
            for key2 in keys2:
                y1, y2 = key1[0], key2[0]
                if len(y1) * len(y2) != len(z):
                    continue
                if z and Z.sort_word(lex_word_product(y1, y2)) != z:
                    continue
                k1, k2 = M1.key_order(key1), M2.key_order(key2)
                if z:
                    pairs = list(itertools.product(M1.elements_at(key1), M2.elements_at(key2)))
                    for labels in _grid_labellings(z, y1, y2):
                        for f1, f2 in pairs:
                            raws.add((k1, f1, k2, f2, labels))
                else:
                    e1 = M1.elements_at(key1)
                    e2 = M2.elements_at(key2)
                    if not e1 or not e2:
                        continue
                    f1s = {self.canonical(k1, f, k2, e2[0], ())[1] for f in e1}
                    f2s = {self.canonical(k1, e1[0], k2, f, ())[3] for f in e2}
                    for f1 in f1s:
                        for f2 in f2s:
                            raws.add((k1, f1, k2, f2, ()))
        return raws

    def classify(self, z: Sequence, x: tuple, w1: Sequence, f1: Hashable,
                 w2: Sequence, f2: Hashable, sigma: Sequence[int]) -> tuple:
        """Class of a raw at arbitrary words.

        ``f1``, ``f2`` are labels stored at ``sort(w1)``, ``sort(w2)`` and
        ``act_word(sigma, z) == lex(w1, w2)``. Returns ``(key, label)``.
        """
        Z = self._zcol
        A = self.left.inputs
        B = self.right.inputs
        z, w1, w2 = tuple(z), tuple(w1), tuple(w2)
        if len(z) != len(w1) * len(w2):
            raise BoxProductError("target length differs from the product of input lengths")
        sigma = compose(inverse(Z.sorting_permutation(z)), tuple(sigma))
        p1, p2 = A.sorting_permutation(w1), B.sorting_permutation(w2)
        sigma = compose(sigma, grid_embed(p1, p2))
        x1, x2 = x
        k1 = self.left.key_order((A.sort_word(w1), x1))
        k2 = self.right.key_order((B.sort_word(w2), x2))
        return (Z.sort_word(z), x), self.canonical(k1, f1, k2, f2, sigma)

    def decode(self, raw: tuple) -> tuple:
        """``(key1, f1, key2, f2, labels)``."""
        k1, f1, k2, f2, labels = raw
        return (self.left.key_from_order(k1), f1, self.right.key_from_order(k2), f2, labels)

    def element_label(self, key, raw) -> str:
        """``f1*f2@...``: the two factors, then the grid positions read row by row."""
        key1, f1, key2, f2, labels = self.decode(raw)
        name = f"{self.left.element_label(key1, f1)}*{self.right.element_label(key2, f2)}"
        return name + "@" + ".".join(str(q + 1) for q in labels) if labels else name


class _Side:
    """Element operations of one factor at a fixed key."""

    __slots__ = ("seq", "key")

    def __init__(self, seq: SymSeq, key):
        self.seq = seq
        self.key = key

    def act(self, perm, f):
        return self.seq.act_elem(self.key, perm, f)

    def rep(self, f, gens):
        return self.seq.orbit_rep(self.key, f, gens)

    def rank(self, f):
        return self.seq.elem_rank(self.key, f)


def _row_groups(cells, y1, m2):
    """Rows of each run of ``y1`` grouped by their sorted symbol multiset."""
    rows = [tuple(cells[i * m2:(i + 1) * m2]) for i in range(len(y1))]
    groups = []
    for a, b in runs(y1):
        by_inv: dict = {}
        for i in range(a, b):
            by_inv.setdefault(tuple(sorted(rows[i])), []).append(i)
        groups.extend(by_inv[inv] for inv in sorted(by_inv))
    return rows, groups


def _arrangements(cells, y1, m2) -> int:
    rows, groups = _row_groups(cells, y1, m2)
    total = 1
    for g in groups:
        counts: dict = {}
        for i in g:
            counts[rows[i]] = counts.get(rows[i], 0) + 1
        total *= math.factorial(len(g)) // math.prod(math.factorial(c) for c in counts.values())
    return total


def _orders(group, rows):
    """Distinct orders of the row vectors in ``group``, as row index lists."""
    pools: dict = {}
    for i in group:
        pools.setdefault(rows[i], []).append(i)
    types = sorted(pools)
    counts = {t: len(pools[t]) for t in types}
    seq: list = []
    out = []

    def rec():
        if len(seq) == len(group):
            used = {t: 0 for t in types}
            order = []
            for t in seq:
                order.append(pools[t][used[t]])
                used[t] += 1
            out.append(order)
            return
        for t in types:
            if counts[t]:
                counts[t] -= 1
                seq.append(t)
                rec()
                seq.pop()
                counts[t] += 1

    rec()
    return out


def _grid_rep(cells, y1, y2, side1: _Side, side2: _Side, f1, f2):
    """Least ``(grid, rank f1, rank f2)`` over row orders with sorted columns."""
    m2 = len(y2)
    rows, groups = _row_groups(cells, y1, m2)
    runs1 = runs(y1)
    runs2 = runs(y2)
    best = None
    for combo in itertools.product(*(_orders(g, rows) for g in groups)):
        alpha = [i for part in combo for i in part]
        new = [rows[i] for i in alpha]
        beta = []
        for a, b in runs2:
            beta.extend(sorted(range(a, b), key=lambda j: tuple(r[j] for r in new)))
        grid = tuple(r[j] for r in new for j in beta)
        if best is not None and grid > best[0]:
            continue
        # identical rows: conjugate them next to each other, then take the factor's representative
        pi = []
        for a, b in runs1:
            pi.extend(sorted(range(a, b), key=lambda i: new[i]))
        g1 = side1.act(pi, side1.act(alpha, f1))
        gens = [k for k in range(len(pi) - 1) if y1[k] == y1[k + 1] and new[pi[k]] == new[pi[k + 1]]]
        if gens:
            g1 = side1.rep(g1, gens)
        g1 = side1.act(inverse(pi), g1)
        g2 = side2.act(beta, f2)
        gens = [j for j in range(m2 - 1) if y2[j] == y2[j + 1]
                and all(r[beta[j]] == r[beta[j + 1]] for r in new)]
        if gens:
            g2 = side2.rep(g2, gens)
        cand = (grid, side1.rank(g1), side2.rank(g2))
        if best is None or cand < best[:3]:
            best = cand + (g1, g2)
    return best[0], best[3], best[4]


def _grid_labellings(z: Sequence, y1: Sequence, y2: Sequence):
    """Canonical gluings of the ``len(y1) x len(y2)`` grid to ``z``.

    Positions of ``z`` are assigned in increasing order; a row (column)
    receives its first label only after the previous row (column) of the
    same colour has.
    """
    m1, m2 = len(y1), len(y2)
    n = m1 * m2
    cells_by_colour: dict = {}
    for i in range(m1):
        for j in range(m2):
            cells_by_colour.setdefault((y1[i], y2[j]), []).append(i * m2 + j)
    labels = [None] * n
    row_started = [0] * m1
    col_started = [0] * m2
    row_prev = [i - 1 if i and y1[i - 1] == y1[i] else None for i in range(m1)]
    col_prev = [j - 1 if j and y2[j - 1] == y2[j] else None for j in range(m2)]
    out = []

    def rec(q):
        if q == n:
            out.append(tuple(labels))
            return
        for c in cells_by_colour.get(z[q], ()):
            if labels[c] is not None:
                continue
            i, j = divmod(c, m2)
            if not row_started[i] and row_prev[i] is not None and not row_started[row_prev[i]]:
                continue
            if not col_started[j] and col_prev[j] is not None and not col_started[col_prev[j]]:
                continue
            labels[c] = q
            row_started[i] += 1
            col_started[j] += 1
            rec(q + 1)
            row_started[i] -= 1
            col_started[j] -= 1
            labels[c] = None

    rec(0)
    return out


def boxtimes(M1: SymSeq, M2: SymSeq, max_arity: int | None = None) -> BoxProduct:
    """The arithmetic product ``M1 [x] M2`` over the product colour sets."""
    return BoxProduct(M1, M2, max_arity)


# ---------------------------------------------------------------------------
# morphisms and constraints


def boxtimes_morphisms(phi1: SeqMorphism, phi2: SeqMorphism,
                       source: BoxProduct, target: BoxProduct) -> SeqMorphism:
    """``phi1 [x] phi2`` between prebuilt products."""

    def fn(key, raw):
        z, x = key
        k1, f1, k2, f2, labels = source.decode(raw)
        return target.classify(z, x, k1[0], phi1(k1, f1), k2[0], phi2(k2, f2), labels)[1]

    return SeqMorphism(source, target, name="product of morphisms", fn=fn)


def rebracket(c):
    """``((a, b), c) -> (a, (b, c))``."""
    (a, b), d = c
    return (a, (b, d))


def boxtimes_associator(lhs: BoxProduct, rhs: BoxProduct) -> SeqMorphism:
    """``(M1 [x] M2) [x] M3 -> M1 [x] (M2 [x] M3)`` with colours rebracketed."""
    inner_l = lhs.left
    inner_r = rhs.right
    if not isinstance(inner_l, BoxProduct) or not isinstance(inner_r, BoxProduct):
        raise BoxProductError("associator needs products (M1 [x] M2) [x] M3 and M1 [x] (M2 [x] M3)")

    def fn(key, raw):
        z, x = key
        k12, e12, k3, f3, labels = lhs.decode(raw)
        k1, f1, k2, f2, lab12 = inner_l.decode(e12)
        m3 = len(k3[0])
        # flat gluing reads z as lex(lex(y1, y2), y3)
        flat = tuple(q for i in lab12 for q in labels[i * m3:(i + 1) * m3])
        v = lex_word_product(k2[0], k3[0])
        _, e23 = inner_r.classify(v, (k2[1], k3[1]), k2[0], f2, k3[0], f3, tuple(range(len(v))))
        z2 = tuple(rebracket(c) for c in z)
        return rhs.classify(z2, rebracket(x), k1[0], f1, v, e23, flat)[1]

    in_map = {c: rebracket(c) for c in lhs.inputs}
    out_map = {c: rebracket(c) for c in lhs.outputs}
    return SeqMorphism(lhs, rhs, None, in_map, out_map, name="product associator", fn=fn)


def boxtimes_unitors(M: SymSeq, max_arity: int | None = None):
    """``(lambda, rho)`` for ``J [x] M -> M`` and ``M [x] J -> M``."""
    J = boxtimes_unit()
    left = boxtimes(J, M, max_arity)
    right = boxtimes(M, J, max_arity)
    return left_box_unitor(left), right_box_unitor(right)


def left_box_unitor(P: BoxProduct) -> SeqMorphism:
    M = P.right

    def fn(key, raw):
        _, _, k2, f2, labels = P.decode(raw)
        return M.act_elem(k2, inverse(labels), f2)

    return SeqMorphism(P, M, None, {c: c[1] for c in P.inputs}, {c: c[1] for c in P.outputs},
                       name="left product unitor", fn=fn)


def right_box_unitor(P: BoxProduct) -> SeqMorphism:
    M = P.left

    def fn(key, raw):
        k1, f1, _, _, labels = P.decode(raw)
        return M.act_elem(k1, inverse(labels), f1)

    return SeqMorphism(P, M, None, {c: c[0] for c in P.inputs}, {c: c[0] for c in P.outputs},
                       name="right product unitor", fn=fn)


def eta(X1, X2) -> SeqMorphism:
    """``id_X1 [x] id_X2 -> id_(X1 x X2)``, singleton to singleton."""
    P = boxtimes(identity_seq(X1), identity_seq(X2))
    T = identity_seq(P.outputs)
    return SeqMorphism(P, T, name="eta", fn=lambda key, raw: "id")
