"""Substitution (Kleisli) composition of coloured symmetric sequences.

For ``M`` with inputs ``Y`` and outputs ``X`` and ``N`` with inputs ``Z`` and
outputs ``Y``, an element of ``N o M`` at a sorted word ``z`` over ``Z`` is a
class of raw configurations

    (M-point ybar, f, blocks (N-point wbar_i, g_i, labelling l_i))

where the labellings send the block positions injectively onto the positions
of ``z`` and their concatenation ``s`` satisfies ``act_word(s, z) ==
concat(wbar_i)``. Two moves generate the relation: inside a block,
``(g, l) ~ (act(t, g), l o t)``; between equal inner colours,
``(f, B) ~ (act(t, f), B o t)``. Canonical representatives sort labels within
each colour run of a block and sort blocks within each colour run of
``ybar``; what remains is the stabilizer of identical nullary blocks acting
on ``f``, handled by taking least orbit members.

Raws are nested tuples ``(M key id, f, ((N key id, g, labels), ...))``
where a key id is the key's sort tuple and ``f``, ``g`` are element labels
of the factors. The stabilizer of ``z`` acts on the right by
``s -> t o s``, i.e. by exchanging the labels ``q`` and ``q + 1``.
"""
from __future__ import annotations

import functools
import itertools
from typing import Hashable, Sequence

from .perm import (ColourSet, act_word, block_sum, compose, inverse, runs,
                   segment_permutation)
from .symseq import LazySeq, SeqMorphism, SymSeq


class CompositionError(ValueError):
    """Raised when sequences are not composable or a needed point is missing."""


@functools.lru_cache(maxsize=4096)
def _runs(w: tuple) -> list:
    return runs(w)


def run_argsort(w: Sequence, keys: Sequence) -> list[int] | None:
    """Permutation sorting ``keys`` within each run of equal letters of ``w``.

    Returns ``None`` when ``keys`` is already sorted within runs.
    """
    rho = None
    for a, b in _runs(w):
        if b - a < 2:
            continue
        seg = keys[a:b]
        if all(seg[i] <= seg[i + 1] for i in range(len(seg) - 1)):
            continue
        if rho is None:
            rho = list(range(len(w)))
        rho[a:b] = sorted(range(a, b), key=keys.__getitem__)
    return rho


def orbit_symbols(z: Sequence, generators) -> list[int] | None:
    """Map each position to the first position of its subgroup run.

    ``generators`` are adjacent transpositions ``k`` (default: all that fix
    ``z``); returns ``None`` when the subgroup is trivial.
    """
    n = len(z)
    if generators is None:
        gens = [k for k in range(n - 1) if z[k] == z[k + 1]]
    else:
        gens = sorted(k for k in set(generators) if 0 <= k < n - 1 and z[k] == z[k + 1])
    if not gens:
        return None
    sym = list(range(n))
    for k in gens:
        sym[k + 1] = sym[k]
    return sym


class KleisliComposite(LazySeq):
    """The composite ``N o M`` with its canonical raws as element labels.

    Points are computed on first use. ``max_arity`` only bounds
    :meth:`key_list`; any point can still be requested directly.
    """

    def __init__(self, N: SymSeq, M: SymSeq, max_arity: int | None = None):
        if M.inputs != N.outputs:
            raise CompositionError(
                f"inputs of the inner sequence {list(M.inputs.names)} differ from "
                f"outputs of the outer one {list(N.outputs.names)}")
        super().__init__(M.outputs, N.inputs)
        self.outer = N
        self.inner = M
        self.cap = max_arity
        self._zcol = N.inputs
        self._nk_cache: dict = {}
        self._mk_cache: dict = {}
        self._ninfo = None

    def _nkey(self, nk: tuple):
        key = self._nk_cache.get(nk)
        if key is None:
            key = self._nk_cache[nk] = self.outer.key_from_order(nk)
        return key

    def _mkey(self, mk: tuple):
        key = self._mk_cache.get(mk)
        if key is None:
            key = self._mk_cache[mk] = self.inner.key_from_order(mk)
        return key

    # canonical forms -----------------------------------------------------
    def canonical(self, mk: tuple, f: Hashable, blocks: Sequence[tuple]) -> tuple:
        """Canonical raw of the class of ``(mk, f, blocks)``.

        ``blocks`` lists ``(N key id, g, labels)`` per inner position, with
        N keys at sorted words.
        """
        N, M = self.outer, self.inner
        nb = []
        for nk, g, labels in blocks:
            labels = tuple(labels)
            nkey = self._nkey(nk)
            rho = run_argsort(nkey[0], labels)
            if rho is not None:
                labels = tuple(labels[r] for r in rho)
                g = N.act_elem(nkey, rho, g)
            nb.append((nk, g, labels))
        mkey = self._mkey(mk)
        ybar = mkey[0]
        sort_keys = [(min(b[2]) if b[2] else -1, b[0], N.elem_rank(self._nkey(b[0]), b[1]))
                     for b in nb]
        rho = run_argsort(ybar, sort_keys)
        if rho is not None:
            nb = [nb[r] for r in rho]
            f = M.act_elem(mkey, rho, f)
        stab = [k for k in range(len(nb) - 1) if ybar[k] == ybar[k + 1] and nb[k] == nb[k + 1]]
        if stab:
            f = M.orbit_rep(mkey, f, stab)
        return (mk, f, tuple(nb))

    def gen_image(self, key, k: int, raw: tuple) -> tuple:
        mk, f, blocks = raw
        swap = {k: k + 1, k + 1: k}
        moved = [(nk, g, tuple(swap.get(q, q) for q in labels)) for nk, g, labels in blocks]
        return self.canonical(mk, f, moved)

    def orbit_rep(self, key, raw: tuple, generators=None) -> tuple:
        """Canonical member of the orbit of ``raw`` under a Young subgroup.

        Labels in one run of the subgroup become indistinguishable symbols;
        the symbolized raw is put in normal form (recursing into the factors
        for the residual symmetry) and then relabelled in reading order.
        """
        sym = orbit_symbols(key[0], generators)
        if sym is None:
            return raw
        N, M = self.outer, self.inner
        mk, f, blocks = raw
        nb = []
        for nk, g, labels in blocks:
            nkey = self._nkey(nk)
            w = nkey[0]
            sl = [sym[q] for q in labels]
            rho = run_argsort(w, sl)
            if rho is not None:
                sl = [sl[r] for r in rho]
                g = N.act_elem(nkey, rho, g)
            residual = [k for k in range(len(w) - 1) if w[k] == w[k + 1] and sl[k] == sl[k + 1]]
            if residual:
                g = N.orbit_rep(nkey, g, residual)
            nb.append((tuple(sl), nk, N.elem_rank(nkey, g), g))
        mkey = self._mkey(mk)
        ybar = mkey[0]
        keys = [b[:3] for b in nb]
        rho = run_argsort(ybar, keys)
        if rho is not None:
            nb = [nb[r] for r in rho]
            f = M.act_elem(mkey, rho, f)
        residual = [k for k in range(len(nb) - 1) if ybar[k] == ybar[k + 1] and nb[k][:3] == nb[k + 1][:3]]
        if residual:
            f = M.orbit_rep(mkey, f, residual)
        nxt: dict = {}
        out = []
        for sl, nk, _, g in nb:
            labels = []
            for v in sl:
                q = nxt.get(v, v)
                nxt[v] = q + 1
                labels.append(q)
            out.append((nk, g, tuple(labels)))
        return self.canonical(mk, f, out)

    def classify(self, z: Sequence, x: Hashable, inner_word: Sequence, f: Hashable,
                 blocks: Sequence[tuple], sigma: Sequence[int]) -> tuple:
        """Class of a raw given at arbitrary (possibly unsorted) words.

        ``z`` is the target word and ``inner_word`` the inner word; ``f`` and the
        block elements are labels stored at the sorted versions of their words
        (so they stand for their images under the sorting morphisms). Blocks
        are ``(word, element)`` in inner-word order and ``sigma`` satisfies
        ``act_word(sigma, z) == concat(block words)``. Returns ``(key, label)``.
        """
        Z = self._zcol
        Y = self.inner.inputs
        z = tuple(z)
        inner_word = tuple(inner_word)
        lengths = [len(w) for w, _ in blocks]
        if sum(lengths) != len(z) or len(blocks) != len(inner_word):
            raise CompositionError("blocks do not match the target and inner words")
        sigma = compose(inverse(Z.sorting_permutation(z)), tuple(sigma))
        sigma = compose(sigma, block_sum([Z.sorting_permutation(w) for w, _ in blocks]))
        py = Y.sorting_permutation(inner_word)
        sigma = compose(sigma, segment_permutation(lengths, py))
        ys = act_word(py, inner_word)
        mk = self.inner.key_order((ys, x))
        raw_blocks = []
        pos = 0
        for j in py:
            w, e = blocks[j]
            nk = self.outer.key_order((Z.sort_word(w), inner_word[j]))
            raw_blocks.append((nk, e, sigma[pos:pos + lengths[j]]))
            pos += lengths[j]
        return (Z.sort_word(z), x), self.canonical(mk, f, raw_blocks)

    def decode(self, raw: tuple) -> tuple:
        """``(inner key, f, [(outer key, g, labels)])``."""
        mk, f, blocks = raw
        return (self._mkey(mk), f, [(self._nkey(nk), g, labels) for nk, g, labels in blocks])

    def element_label(self, key, raw) -> str:
        """``f{g1@1.2,g2@3}``: the inner element, then each block with its input positions."""
        mkey, f, blocks = self.decode(raw)
        parts = []
        for nkey, g, labels in blocks:
            name = self.outer.element_label(nkey, g)
            parts.append(name + "@" + ".".join(str(q + 1) for q in labels) if labels else name)
        return self.inner.element_label(mkey, f) + "{" + ",".join(parts) + "}"

    # enumeration -----------------------------------------------------------
    def _counts(self, w: Sequence) -> tuple:
        c = [0] * len(self._zcol)
        for a in w:
            c[self._zcol.rank(a)] += 1
        return tuple(c)

    def _outer_info(self):
        """Per inner colour: nullary ``(nk, g)`` pairs and positive ``(nk, counts)``."""
        if self._ninfo is None:
            N = self.outer
            nullary: dict = {}
            positive: dict = {}
            for nkey in N.key_list():
                w, y = nkey
                nk = N.key_order(nkey)
                if not w:
                    nullary.setdefault(y, []).extend((nk, g) for g in N.elements_at(nkey))
                else:
                    positive.setdefault(y, []).append((nk, self._counts(w)))
            self._ninfo = (nullary, positive)
        return self._ninfo

    def _enumerate_keys(self):
        nullary, positive = self._outer_info()
        cols = self._zcol.names
        zero = (0,) * len(cols)
        options: dict = {}
        for y in self.inner.inputs:
            opts = {c for _, c in positive.get(y, ())}
            if nullary.get(y):
                opts.add(zero)
            options[y] = opts
        cap = self.cap
        out = set()
        for ybar, x in self.inner.key_list():
            reach = {zero}
            for y in ybar:
                reach = {tuple(a + b for a, b in zip(r, c)) for r in reach for c in options[y]
                         if cap is None or sum(r) + sum(c) <= cap}
                if not reach:
                    break
            for r in reach:
                out.add((tuple(c for c, n in zip(cols, r) for _ in range(n)), x))
        return out

    def _compute_elements(self, key):
        z, x = key
        target = self._counts(z)
        M = self.inner
        raws = set()
        for mkey in M.key_list():
            ybar, mx = mkey
            if mx != x:
                continue
            shapes = self._shapes(ybar, target)
            if not shapes:
                continue
            mk = M.key_order(mkey)
            felems = M.elements_at(mkey)
            run_of = {}
            for r, (a, b) in enumerate(runs(ybar)):
                for i in range(a, b):
                    run_of[i] = r
            for shape in shapes:
                stab = [k for k in range(len(shape) - 1)
                        if ybar[k] == ybar[k + 1] and shape[k][0] == "e" and shape[k] == shape[k + 1]]
                freps = sorted({M.orbit_rep(mkey, f, stab) for f in felems},
                               key=lambda f: M.elem_rank(mkey, f)) if stab else felems
                pos_blocks = [i for i, s in enumerate(shape) if s[0] == "n"]
                words = [self._nkey(shape[i][1])[0] for i in pos_blocks]
                pred = []
                last: dict = {}
                for bi, i in enumerate(pos_blocks):
                    pred.append(last.get(run_of[i]))
                    last[run_of[i]] = bi
                gchoices = [self.outer.elements_at(self._nkey(shape[i][1])) for i in pos_blocks]
                for labels in _labellings(z, words, pred):
                    for gs in itertools.product(*gchoices):
                        blocks = []
                        bi = 0
                        for s in shape:
                            if s[0] == "e":
                                blocks.append((s[1], s[2], ()))
                            else:
                                blocks.append((s[1], gs[bi], labels[bi]))
                                bi += 1
                        blocks = tuple(blocks)
                        for f in freps:
                            raws.add((mk, f, blocks))
        return raws

    def _shapes(self, ybar, target):
        """Block shapes with nullary blocks first inside each run, using exactly ``target``."""
        nullary, positive = self._outer_info()
        run_list = runs(ybar)
        results = []

        def sequences(pos, length, budget):
            if length == 0:
                yield (), budget
                return
            for nk, c in pos:
                rest = tuple(b - a for a, b in zip(c, budget))
                if min(rest, default=0) < 0:
                    continue
                for tail, left in sequences(pos, length - 1, rest):
                    yield (nk,) + tail, left

        def rec(r, budget, acc):
            if r == len(run_list):
                if not any(budget):
                    results.append(tuple(acc))
                return
            a, b = run_list[r]
            y = ybar[a]
            length = b - a
            nul = nullary.get(y, [])
            pos = positive.get(y, [])
            for e in range(length + 1):
                if e and not nul:
                    break
                if length - e > sum(budget):
                    continue
                for tail, left in sequences(pos, length - e, budget):
                    opt_tail = [("n", nk) for nk in tail]
                    for empties in itertools.combinations_with_replacement(nul, e):
                        rec(r + 1, left, acc + [("e", nk, g) for nk, g in empties] + opt_tail)

        rec(0, target, [])
        return results


def _labellings(z: Sequence, words: Sequence[Sequence], pred: Sequence[int | None]):
    """Canonical labellings of nonempty blocks by the positions of ``z``.

    Labels increase inside every colour run of every block, and a block
    receives its first label only after its predecessor (``pred``) has.
    """
    groups = []  # (block, colour, start, size)
    for b, w in enumerate(words):
        for a, c in runs(w):
            groups.append((b, w[a], a, c - a))
    by_colour: dict = {}
    for gidx, (b, col, start, size) in enumerate(groups):
        by_colour.setdefault(col, []).append(gidx)
    fill = [0] * len(groups)
    started = [0] * len(words)
    labels = [[None] * len(w) for w in words]
    n = len(z)
    out = []

    def rec(q):
        if q == n:
            out.append(tuple(tuple(lab) for lab in labels))
            return
        for gidx in by_colour.get(z[q], ()):
            b, _, start, size = groups[gidx]
            if fill[gidx] == size:
                continue
            if not started[b] and pred[b] is not None and not started[pred[b]]:
                continue
            labels[b][start + fill[gidx]] = q
            fill[gidx] += 1
            started[b] += 1
            rec(q + 1)
            started[b] -= 1
            fill[gidx] -= 1
            labels[b][start + fill[gidx]] = None

    rec(0)
    return out


def kleisli_compose(N: SymSeq, M: SymSeq, max_arity: int | None = None) -> KleisliComposite:
    """The substitution composite ``N o M`` (``M`` inner, ``N`` grafted on its inputs).

    The result is lazy; ``max_arity`` bounds the listed keys only.
    """
    return KleisliComposite(N, M, max_arity)


# ---------------------------------------------------------------------------
# constraints


def left_unitor(C: KleisliComposite) -> SeqMorphism:
    """``id o M -> M`` for a composite whose outer factor is an identity sequence."""
    M = C.inner

    def fn(key, raw):
        mkey, f, blocks = C.decode(raw)
        sigma = tuple(q for _, _, labels in blocks for q in labels)
        return M.act_elem(mkey, inverse(sigma), f)

    return SeqMorphism(C, M, name="left unitor", fn=fn)


def right_unitor(C: KleisliComposite) -> SeqMorphism:
    """``M o id -> M`` for a composite whose inner factor is an identity sequence."""
    N = C.outer

    def fn(key, raw):
        _, _, blocks = C.decode(raw)
        (nkey, e, labels), = blocks
        return N.act_elem(nkey, inverse(labels), e)

    return SeqMorphism(C, N, name="right unitor", fn=fn)


def unitors(M: SymSeq, max_arity: int | None = None) -> tuple[SeqMorphism, SeqMorphism]:
    """Left and right unitors of ``M`` with freshly built composites."""
    from .symseq import identity_seq
    left = kleisli_compose(identity_seq(M.inputs), M, max_arity)
    right = kleisli_compose(M, identity_seq(M.outputs), max_arity)
    return left_unitor(left), right_unitor(right)


def flatten(C: KleisliComposite, raw: tuple):
    """Three-level tree of a raw of ``(P o N) o M``.

    Returns ``(M key, f, branches, sigma_flat)`` with one branch
    ``(N key, g, [(P key, h)])`` per inner position and ``sigma_flat`` reading
    the target word as the concatenation of all P words.
    """
    PN = C.outer
    if not isinstance(PN, KleisliComposite):
        raise CompositionError("outer factor is not a composite")
    mkey, f, blocks = C.decode(raw)
    branches = []
    parts = []
    for pnkey, e, labels in blocks:
        nkey, g, pblocks = PN.decode(e)
        branches.append((nkey, g, [(pk, h) for pk, h, _ in pblocks]))
        inner_sigma = tuple(q for _, _, lab in pblocks for q in lab)
        # labels: block positions -> target; inner_sigma: concat P words -> block positions
        parts.append(tuple(labels[q] for q in inner_sigma))
    sigma_flat = tuple(q for part in parts for q in part)
    return mkey, f, branches, sigma_flat


def associator(lhs: KleisliComposite, rhs: KleisliComposite) -> SeqMorphism:
    """``(P o N) o M -> P o (N o M)`` between prebuilt composites."""
    NM = rhs.inner
    if not isinstance(lhs.outer, KleisliComposite) or not isinstance(NM, KleisliComposite):
        raise CompositionError("associator needs composites (P o N) o M and P o (N o M)")

    def fn(key, raw):
        z, x = key
        mkey, f, branches, sigma = flatten(lhs, raw)
        mid_word = tuple(c for nkey, _, _ in branches for c in nkey[0])
        nm_blocks = [(nkey[0], e) for nkey, e, _ in branches]
        _, nm_label = NM.classify(mid_word, x, mkey[0], f, nm_blocks, tuple(range(len(mid_word))))
        p_blocks = [(pkey[0], h) for _, _, leaves in branches for pkey, h in leaves]
        return rhs.classify(z, x, mid_word, nm_label, p_blocks, sigma)[1]

    return SeqMorphism(lhs, rhs, name="associator", fn=fn)


def associated_pair(P: SymSeq, N: SymSeq, M: SymSeq, max_arity: int | None = None):
    """Both bracketings ``(P o N) o M`` and ``P o (N o M)``; keys listed up to ``max_arity``."""
    lhs = kleisli_compose(kleisli_compose(P, N), M, max_arity)
    rhs = kleisli_compose(P, kleisli_compose(N, M), max_arity)
    return lhs, rhs


def horizontal_compose(psi: SeqMorphism, phi: SeqMorphism,
                       source: KleisliComposite, target: KleisliComposite) -> SeqMorphism:
    """``psi o phi : N o M -> N' o M'`` for ``psi : N -> N'`` and ``phi : M -> M'``."""
    if psi.input_map or psi.output_map or phi.input_map or phi.output_map:
        raise CompositionError("horizontal composition of colour-relabelling morphisms is not supported")

    def fn(key, raw):
        z, x = key
        mkey, f, blocks = source.decode(raw)
        nblocks = [(nkey[0], psi(nkey, e)) for nkey, e, _ in blocks]
        sigma = tuple(q for _, _, labels in blocks for q in labels)
        return target.classify(z, x, mkey[0], phi(mkey, f), nblocks, sigma)[1]

    return SeqMorphism(source, target, name="horizontal composite", fn=fn)


def element_at_word(C: KleisliComposite, word: Sequence, x: Hashable, inner_word: Sequence,
                    f: Hashable, blocks: Sequence[tuple], sigma: Sequence[int]):
    """Stored label of a raw given at an unsorted target word (see ``classify``)."""
    return C.classify(word, x, inner_word, f, blocks, sigma)[1]


# ---------------------------------------------------------------------------
# coherence instances


def check_pentagon(Q: SymSeq, P: SymSeq, N: SymSeq, M: SymSeq, max_arity: int = 3) -> list[str]:
    """Both ways from ``((Q P) N) M`` to ``Q (P (N M))`` agree up to ``max_arity``."""
    from .symseq import identity_morphism, morphisms_equal, vertical_compose
    QP, PN, NM = kleisli_compose(Q, P), kleisli_compose(P, N), kleisli_compose(N, M)
    QP_N, Q_PN = kleisli_compose(QP, N), kleisli_compose(Q, PN)
    PN_M, P_NM = kleisli_compose(PN, M), kleisli_compose(P, NM)
    start = kleisli_compose(QP_N, M, max_arity)
    X1, X2 = kleisli_compose(QP, NM), kleisli_compose(Q, P_NM)
    Y1, Y2 = kleisli_compose(Q_PN, M), kleisli_compose(Q, PN_M)
    top = vertical_compose(associator(start, X1), associator(X1, X2))
    a1 = horizontal_compose(associator(QP_N, Q_PN), identity_morphism(M), start, Y1)
    a3 = horizontal_compose(identity_morphism(Q), associator(PN_M, P_NM), Y2, X2)
    bottom = vertical_compose(vertical_compose(a1, associator(Y1, Y2)), a3)
    return morphisms_equal(top, bottom, start.key_list())


def check_triangle(N: SymSeq, M: SymSeq, max_arity: int = 3) -> list[str]:
    """``(1 o l) . a == r o 1`` as maps ``(N o id) o M -> N o M``."""
    from .symseq import identity_morphism, identity_seq, morphisms_equal, vertical_compose
    unit = identity_seq(N.inputs)
    NI, IM, NM = kleisli_compose(N, unit), kleisli_compose(unit, M), kleisli_compose(N, M)
    start = kleisli_compose(NI, M, max_arity)
    mid = kleisli_compose(N, IM)
    lhs = vertical_compose(associator(start, mid),
                           horizontal_compose(identity_morphism(N), left_unitor(IM), mid, NM))
    rhs = horizontal_compose(right_unitor(NI), identity_morphism(M), start, NM)
    return morphisms_equal(lhs, rhs, start.key_list())
