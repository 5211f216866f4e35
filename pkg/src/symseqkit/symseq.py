"""Finite-support coloured symmetric sequences stored at sorted words.

A sequence ``M`` with output colours ``X`` and input colours ``Y`` assigns to
each pair ``(w, x)`` (``w`` a word over ``Y``) a finite set ``M(w, x)``,
contravariantly functorial in ``w``. Only sorted words are stored; the value
at an arbitrary word is identified with the stored one through the
stable-sort permutation. Each stored value is a :class:`GSet` whose right
action ``act`` relates to the functor by ``M(rho) = act(rho^-1)``.
"""
from __future__ import annotations

import math
from typing import Hashable, Iterable, Mapping, Sequence

from .gset import GSet, GSetError, orbit_quotient, validate_gset
from .perm import (ColourSet, Permutation, act_word, adjacent_factorization, compose, inverse,
                   stabilizer)

Key = tuple  # (sorted word, output colour)


class SymSeqError(ValueError):
    """Raised on malformed sequences or foreign colours."""


class PointTooLarge(RuntimeError):
    """Raised when a lazily computed point would need unreasonably large inputs."""


class SymSeq:
    """A coloured symmetric sequence with finite support.

    The base class stores every point eagerly. Engine results subclass
    :class:`LazySeq` and compute points on demand through the same
    interface: ``point``, ``key_list``, ``points_upto`` and ``support``.
    """

    lazy = False

    def __init__(self, outputs: ColourSet, inputs: ColourSet,
                 support: Mapping[Key, GSet], *, validate: bool = True):
        if not isinstance(outputs, ColourSet):
            outputs = ColourSet(outputs)
        if not isinstance(inputs, ColourSet):
            inputs = ColourSet(inputs)
        self.outputs = outputs
        self.inputs = inputs
        items = []
        for (w, x), g in support.items():
            w = tuple(w)
            if len(g) == 0:
                continue
            items.append(((w, x), g))
        items.sort(key=lambda kv: self.key_order(kv[0]) if _known(self, kv[0])
                   else (len(kv[0][0]), (), -1, repr(kv[0])))
        self._support: dict[Key, GSet] = dict(items)
        if validate:
            problems = self.violations()
            if problems:
                raise SymSeqError("; ".join(problems))

    # ordering -----------------------------------------------------------
    def key_order(self, key: Key) -> tuple:
        w, x = key
        return (len(w), self.inputs.word_key(w), self.outputs.rank(x))

    @property
    def support(self) -> dict[Key, GSet]:
        return self._support

    def key_list(self) -> list[Key]:
        return list(self._support)

    def keys_upto(self, n: int) -> list[Key]:
        return [k for k in self.key_list() if len(k[0]) <= n]

    def point(self, key: Key) -> GSet | None:
        return self._support.get(key)

    def points_upto(self, n: int) -> dict[Key, GSet]:
        return {k: self.point(k) for k in self.keys_upto(n)}

    def violations(self, keys: Iterable[Key] | None = None) -> list[str]:
        out = []
        for key in (self.key_list() if keys is None else keys):
            w, x = key
            g = self.point(key)
            if g is None:
                continue
            where = f"at ({_fmt_word(w)}, {x})"
            if x not in self.outputs:
                out.append(f"unknown output colour {x!r} {where}")
                continue
            try:
                self.inputs.check_word(w)
            except ValueError as exc:
                out.append(f"{exc} {where}")
                continue
            if not self.inputs.is_sorted(w):
                out.append(f"unsorted key {where}")
                continue
            if g.base_word != w:
                out.append(f"base word {g.base_word!r} differs from key {where}")
                continue
            out.extend(f"{v} {where}" for v in validate_gset(g))
        return out

    # basic access ---------------------------------------------------------
    def __getitem__(self, key: Key) -> GSet:
        g = self.point(key)
        if g is None:
            raise KeyError(key)
        return g

    def get(self, w: Sequence, x: Hashable) -> GSet | None:
        return self.point((tuple(w), x))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SymSeq) and self.outputs == other.outputs
                and self.inputs == other.inputs and self.support == other.support)

    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(outputs={list(self.outputs.names)}, "
                f"inputs={list(self.inputs.names)})")

    def is_zero(self) -> bool:
        return not self.key_list()

    def max_arity(self) -> int:
        return max((len(w) for w, _ in self.key_list()), default=-1)

    def has_nullary(self) -> bool:
        return any(len(w) == 0 for w, _ in self.key_list())

    # element-level access -------------------------------------------------
    def key_from_order(self, order: tuple) -> Key:
        """Inverse of :meth:`key_order`."""
        _, ranks, xr = order
        names = self.inputs.names
        return (tuple(names[r] for r in ranks), self.outputs.names[xr])

    def elements_at(self, key: Key) -> tuple:
        g = self.point(key)
        return g.elements if g is not None else ()

    def gen_image(self, key: Key, k: int, e):
        """Image of ``e`` under the generator ``k`` at ``key``."""
        g = self.point(key)
        images = g.gens.get(k)
        if images is None:
            raise GSetError(f"s{k + 1} does not stabilize {key[0]!r}")
        return g.elements[images[g.index[e]]]

    def act_elem(self, key: Key, sigma: Sequence[int], e):
        for k in adjacent_factorization(sigma):
            e = self.gen_image(key, k, e)
        return e

    def element_label(self, key: Key, e) -> str:
        """Readable name of an element, used when writing files."""
        return e if isinstance(e, str) else repr(e)

    def elem_rank(self, key: Key, e):
        """A sort key for elements of one point, used by canonical forms."""
        return self.point(key).index[e]

    def orbit_rep(self, key: Key, e, generators: Iterable[int] | None = None):
        """Canonical member of the orbit of ``e`` under the given generators.

        Any class function with values in the orbit would do; stored values
        use the least index.
        """
        g = self.point(key)
        return g.elements[g.orbit_min(g.index[e], generators)]

    def truncate(self, max_arity: int) -> "SymSeq":
        """Eager copy without the points above ``max_arity``."""
        return SymSeq(self.outputs, self.inputs, self.points_upto(max_arity), validate=False)

    def materialize(self) -> "SymSeq":
        return SymSeq(self.outputs, self.inputs, self.support, validate=False)


class LazySeq(SymSeq):
    """A sequence whose points are computed on first use."""

    lazy = True

    def __init__(self, outputs: ColourSet, inputs: ColourSet):
        self.outputs = outputs
        self.inputs = inputs
        self._points: dict[Key, GSet | None] = {}
        self._elements: dict[Key, tuple] = {}
        self._keys: list[Key] | None = None
        self._key_cache: dict = {}

    def _enumerate_keys(self) -> Iterable[Key]:
        raise NotImplementedError

    def _compute_elements(self, key: Key) -> Iterable:
        """Canonical raws of the point (any order, no duplicates needed)."""
        raise NotImplementedError

    def elements_at(self, key: Key) -> tuple:
        elems = self._elements.get(key)
        if elems is None:
            elems = self._elements[key] = tuple(sorted(set(self._compute_elements(key))))
        return elems

    def _compute_point(self, key: Key) -> GSet | None:
        elems = self.elements_at(key)
        if not elems:
            return None
        z = key[0]
        index = {r: i for i, r in enumerate(elems)}
        gens = {k: tuple(index[self.gen_image(key, k, r)] for r in elems)
                for k in range(len(z) - 1) if z[k] == z[k + 1]}
        return GSet(z, elems, gens)

    def key_from_order(self, order: tuple) -> Key:
        key = self._key_cache.get(order)
        if key is None:
            key = self._key_cache[order] = SymSeq.key_from_order(self, order)
        return key

    def key_list(self) -> list[Key]:
        if self._keys is None:
            self._keys = sorted(set(self._enumerate_keys()), key=self.key_order)
        return self._keys

    def point(self, key: Key) -> GSet | None:
        if key not in self._points:
            self._points[key] = self._compute_point(key)
        return self._points[key]

    # elements are canonical raws, sorted, so their natural order is the index order
    def elem_rank(self, key: Key, e):
        return e

    def orbit_rep(self, key: Key, e, generators: Iterable[int] | None = None):
        # least raw of the orbit; engines override this with a structural form
        g = self._points.get(key)
        if g is not None:
            return g.elements[g.orbit_min(g.index[e], generators)]
        gens = list(range(len(key[0]) - 1)) if generators is None else list(generators)
        gens = [k for k in gens if key[0][k] == key[0][k + 1]]
        seen = {e}
        stack = [e]
        while stack:
            a = stack.pop()
            for k in gens:
                b = self.gen_image(key, k, a)
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return min(seen)

    @property
    def support(self) -> dict[Key, GSet]:
        out = {}
        for k in self.key_list():
            g = self.point(k)
            if g is not None and len(g):
                out[k] = g
        return out


def _known(M: SymSeq, key) -> bool:
    w, x = key
    return x in M.outputs and all(c in M.inputs for c in w)


def _fmt_word(w) -> str:
    return "[" + " ".join(map(str, w)) + "]"


def new_symseq(outputs: Iterable, inputs: Iterable,
               table: Mapping[tuple, GSet | Sequence[Hashable]]) -> SymSeq:
    """Validated constructor; plain element lists get the trivial action."""
    outs = outputs if isinstance(outputs, ColourSet) else ColourSet(outputs)
    ins = inputs if isinstance(inputs, ColourSet) else ColourSet(inputs)
    support = {}
    for (w, x), val in table.items():
        w = tuple(w)
        support[(w, x)] = val if isinstance(val, GSet) else GSet(w, val)
    return SymSeq(outs, ins, support)


def zero_seq(outputs: Iterable, inputs: Iterable) -> SymSeq:
    return new_symseq(outputs, inputs, {})


def eval_seq(M: SymSeq, w: Sequence, x: Hashable) -> tuple:
    """Elements of ``M(w, x)`` in stored coordinates (those at ``sort(w)``)."""
    w = M.inputs.check_word(w)
    if x not in M.outputs:
        raise SymSeqError(f"unknown output colour {x!r}")
    g = M.point((M.inputs.sort_word(w), x))
    return g.elements if g is not None else ()


def transport(M: SymSeq, sigma: Sequence[int], w: Sequence, x: Hashable) -> dict:
    """The bijection ``M(w', x) -> M(w, x)`` induced by ``sigma : w -> w'``.

    Elements on both sides are given in stored coordinates: a stored element
    ``e`` at ``sort(v)`` stands for the image of ``e`` under the sorting
    morphism of ``v``. With ``rho = p_w^-1 o sigma o p_w'`` the bijection is
    ``e -> act(rho^-1, e)``.
    """
    w = M.inputs.check_word(w)
    if x not in M.outputs:
        raise SymSeqError(f"unknown output colour {x!r}")
    if len(sigma) != len(w):
        raise SymSeqError("degree mismatch between permutation and word")
    w2 = act_word(sigma, w)
    rho = residual(M.inputs, sigma, w, w2)
    g = M.point((M.inputs.sort_word(w), x))
    if g is None:
        return {}
    rinv = inverse(rho)
    return {e: g.elements[g.act_index(rinv, i)] for i, e in enumerate(g.elements)}


def residual(colours: ColourSet, sigma: Sequence[int], w: Sequence, w2: Sequence) -> Permutation:
    """``p_w^-1 o sigma o p_w2``, a stabilizer element of ``sort(w)``."""
    pw = colours.sorting_permutation(w)
    pw2 = colours.sorting_permutation(w2)
    return compose(compose(inverse(pw), sigma), pw2)


def identity_seq(X: Iterable) -> SymSeq:
    """The unit for substitution: one element at ``((x), x)`` for each colour."""
    cs = X if isinstance(X, ColourSet) else ColourSet(X)
    return SymSeq(cs, cs, {((x,), x): GSet((x,), ("id",)) for x in cs}, validate=False)


def free_seq(outputs: Iterable, inputs: Iterable,
             signature: Iterable[tuple[Sequence, Hashable, Hashable]]) -> SymSeq:
    """One element per listed operation, placed at its sorted input word.

    Labellings related by the stabilizer are identified, so each listed
    operation contributes a single element fixed by the whole stabilizer.
    """
    outs = outputs if isinstance(outputs, ColourSet) else ColourSet(outputs)
    ins = inputs if isinstance(inputs, ColourSet) else ColourSet(inputs)
    table: dict = {}
    for entry in signature:
        try:
            w, x, name = entry
        except (TypeError, ValueError):
            raise SymSeqError(f"malformed signature entry {entry!r}") from None
        key = (ins.sort_word(ins.check_word(w)), x)
        names = table.setdefault(key, [])
        if name in names:
            raise SymSeqError(f"duplicate operation {name!r} at {key!r}")
        names.append(name)
    return new_symseq(outs, ins, table)


def regular_gset(w: Sequence, prefix: str = "p") -> GSet:
    """The stabilizer of ``w`` acting on itself by right multiplication."""
    w = tuple(w)
    elems = sorted(stabilizer(w))
    index = {p: i for i, p in enumerate(elems)}
    gens = {}
    for k in range(len(w) - 1):
        if w[k] == w[k + 1]:
            t = Permutation.transposition(len(w), k)
            gens[k] = tuple(index[compose(p, t)] for p in elems)
    names = [prefix + "".join(str(v + 1) for v in p) if p else prefix for p in elems]
    return GSet(w, names, gens)


def regular_seq(outputs: Iterable, inputs: Iterable,
                signature: Iterable[tuple[Sequence, Hashable]]) -> SymSeq:
    """Free action: each ``(word, colour)`` gets the regular action of its stabilizer."""
    outs = outputs if isinstance(outputs, ColourSet) else ColourSet(outputs)
    ins = inputs if isinstance(inputs, ColourSet) else ColourSet(inputs)
    table = {}
    for w, x in signature:
        sw = ins.sort_word(ins.check_word(w))
        if (sw, x) in table:
            raise SymSeqError(f"duplicate point {(sw, x)!r}")
        table[(sw, x)] = regular_gset(sw)
    return SymSeq(outs, ins, table)


def cardinality_table(M: SymSeq, max_arity: int | None = None) -> dict[Key, tuple[int, int]]:
    """``(element count, orbit count)`` per support point, optionally up to an arity."""
    out = {}
    points = M.support if max_arity is None else M.points_upto(max_arity)
    for key, g in points.items():
        if g is None:
            continue
        moves = [dict(zip(range(len(g)), images)) for images in g.gens.values()]
        out[key] = (len(g), len(orbit_quotient(range(len(g)), moves)))
    return out


def burnside_orbits(g: GSet) -> int:
    """Orbit count by Burnside's lemma over the full stabilizer."""
    total = 0
    order = 0
    for p in stabilizer(g.base_word):
        order += 1
        total += sum(1 for i in range(len(g)) if g.act_index(p, i) == i)
    return total // order


# ---------------------------------------------------------------------------
# morphisms


class SeqMorphism:
    """Equivariant maps between the values of two sequences.

    Given either as ``components`` (source key -> {element: image}) or as a
    function ``fn(key, element)``; components are filled in lazily from
    ``fn``. Optional colour maps (applied letterwise to words and to output
    colours) identify the colour sets of source and target; they must be
    order-preserving bijections.
    """

    def __init__(self, source: SymSeq, target: SymSeq, components: dict | None = None,
                 input_map: Mapping | None = None, output_map: Mapping | None = None,
                 name: str = "", fn=None):
        self.source = source
        self.target = target
        self.components = dict(components or {})
        self.input_map = input_map
        self.output_map = output_map
        self.name = name
        self.fn = fn

    def __repr__(self) -> str:
        return f"SeqMorphism({self.name or '?'})"

    def target_key(self, key: Key) -> Key:
        w, x = key
        if self.input_map is not None:
            w = tuple(self.input_map[c] for c in w)
        if self.output_map is not None:
            x = self.output_map[x]
        return (w, x)

    def __call__(self, key: Key, e):
        comp = self.components.get(key)
        if comp is not None and e in comp:
            return comp[e]
        if self.fn is None:
            raise KeyError(f"{self.name or 'morphism'} undefined at {key!r}, element {e!r}")
        return self.fn(key, e)

    def component(self, key: Key) -> dict:
        comp = self.components.get(key)
        g = self.source.point(key)
        if comp is not None and (g is None or len(comp) == len(g)):
            return comp
        comp = {e: self(key, e) for e in (g.elements if g is not None else ())}
        self.components[key] = comp
        return comp

    def is_iso(self, keys=None) -> bool:
        return not iso_violations(self, keys)


def identity_morphism(M: SymSeq) -> SeqMorphism:
    return SeqMorphism(M, M, name="id", fn=lambda key, e: e)


def check_morphism(phi: SeqMorphism, keys: Iterable[Key] | None = None,
                   per_point: int | None = None, rng=None) -> list[str]:
    """Violations of well-typedness and equivariance (empty when valid).

    ``keys`` restricts the check to some source points (default: all).
    With ``per_point`` only equivariance is checked, on at most that many
    elements per point drawn from ``rng``; the target values are then never
    enumerated, which keeps lazily computed targets cheap.
    """
    out = []
    S, T = phi.source, phi.target
    for key in (S.key_list() if keys is None else keys):
        if per_point is not None:
            elems = list(S.elements_at(key))
            if len(elems) > per_point:
                elems = rng.sample(elems, per_point)
            out.extend(_sampled_equivariance(phi, key, elems))
            continue
        g = S.point(key)
        if g is None:
            continue
        tkey = phi.target_key(key)
        h = T.point(tkey)
        where = f"({_fmt_word(key[0])}, {key[1]})"
        if h is None:
            out.append(f"no target value for nonempty source point {where}")
            continue
        try:
            comp = phi.component(key)
        except (KeyError, ValueError) as exc:
            out.append(f"component undefined at {where}: {exc}")
            continue
        bad = [e for e in g.elements if comp[e] not in h.index]
        if bad:
            out.append(f"component leaves the target at {where}, element {bad[0]!r}")
            continue
        for k, images in g.gens.items():
            timages = h.gens.get(k)
            for i, e in enumerate(g.elements):
                lhs = comp[g.elements[images[i]]]
                rhs = h.elements[timages[h.index[comp[e]]]] if timages is not None else comp[e]
                if lhs != rhs:
                    out.append(f"not equivariant for s{k + 1} at {where}, element {e!r}")
                    break
    return out


def _sampled_equivariance(phi: SeqMorphism, key: Key, elems) -> list[str]:
    S, T = phi.source, phi.target
    tkey = phi.target_key(key)
    where = f"({_fmt_word(key[0])}, {key[1]})"
    w = key[0]
    gens = [k for k in range(len(w) - 1) if w[k] == w[k + 1]]
    for e in elems:
        img = phi(key, e)
        for k in gens:
            if phi(key, S.gen_image(key, k, e)) != T.gen_image(tkey, k, img):
                return [f"not equivariant for s{k + 1} at {where}, element {e!r}"]
    return []


def iso_violations(phi: SeqMorphism, keys: Iterable[Key] | None = None) -> list[str]:
    """Violations of being an isomorphism, on all points or on ``keys``."""
    keys = None if keys is None else list(keys)
    out = check_morphism(phi, keys)
    if out:
        return out
    if keys is None:
        tkeys = {phi.target_key(k) for k in phi.source.key_list()}
        for key in phi.target.key_list():
            if key not in tkeys:
                out.append(f"target point ({_fmt_word(key[0])}, {key[1]}) not hit")
    for key in (phi.source.key_list() if keys is None else keys):
        g = phi.source.point(key)
        h = phi.target.point(phi.target_key(key))
        gn = len(g) if g is not None else 0
        hn = len(h) if h is not None else 0
        comp = phi.component(key) if g is not None else {}
        if len(set(comp.values())) != gn or gn != hn:
            out.append(f"component at ({_fmt_word(key[0])}, {key[1]}) is not a bijection "
                       f"({gn} -> {hn})")
    return out


def vertical_compose(phi: SeqMorphism, psi: SeqMorphism) -> SeqMorphism:
    """``psi`` after ``phi``."""
    in_map = _compose_maps(phi.input_map, psi.input_map, phi.source.inputs)
    out_map = _compose_maps(phi.output_map, psi.output_map, phi.source.outputs)
    return SeqMorphism(phi.source, psi.target, None, in_map, out_map,
                       name=f"{psi.name} . {phi.name}",
                       fn=lambda key, e: psi(phi.target_key(key), phi(key, e)))


def inverse_morphism(phi: SeqMorphism, keys: Iterable[Key] | None = None) -> SeqMorphism:
    comps = {}
    for key in (phi.source.key_list() if keys is None else keys):
        comps[phi.target_key(key)] = {v: e for e, v in phi.component(key).items()}
    inv_in = None if phi.input_map is None else {v: k for k, v in phi.input_map.items()}
    inv_out = None if phi.output_map is None else {v: k for k, v in phi.output_map.items()}
    return SeqMorphism(phi.target, phi.source, comps, inv_in, inv_out, name=f"{phi.name}^-1")


def _compose_maps(a, b, colours):
    if a is None and b is None:
        return None
    out = {}
    for c in colours:
        v = a[c] if a is not None else c
        out[c] = b[v] if b is not None else v
    return out


def morphisms_equal(phi: SeqMorphism, psi: SeqMorphism, keys: Iterable[Key] | None = None) -> list[str]:
    """Points where two parallel morphisms differ (first differing element per point)."""
    out = []
    for key in (phi.source.key_list() if keys is None else keys):
        g = phi.source.point(key)
        if g is None:
            continue
        if phi.target_key(key) != psi.target_key(key):
            out.append(f"different target point for ({_fmt_word(key[0])}, {key[1]})")
            continue
        for e in g.elements:
            a, b = phi(key, e), psi(key, e)
            if a != b:
                out.append(f"differ at ({_fmt_word(key[0])}, {key[1]}), element {e!r}: {a!r} vs {b!r}")
                break
    return out


def count_stabilizer(w: Sequence) -> int:
    counts: dict = {}
    for c in w:
        counts[c] = counts.get(c, 0) + 1
    return math.prod(math.factorial(v) for v in counts.values())


def random_morphism(source: SymSeq, target: SymSeq, rng, keys: Iterable[Key] | None = None):
    """A random equivariant morphism ``source -> target`` with the same colours, or ``None``.

    Each source orbit is sent to a target element chosen at random among
    those whose stabilizer contains that of the orbit representative: the
    choice is propagated along generators and rejected on a conflict.
    """
    if source.inputs != target.inputs or source.outputs != target.outputs:
        raise SymSeqError("random_morphism needs matching colour sets")
    comps = {}
    for key in (source.key_list() if keys is None else keys):
        g = source.point(key)
        if g is None:
            continue
        h = target.point(key)
        if h is None:
            return None
        comp: dict[int, int] = {}
        for orbit in g.orbits():
            choices = list(range(len(h)))
            rng.shuffle(choices)
            for t in choices:
                trial = _propagate(g, h, orbit[0], t)
                if trial is not None:
                    comp.update(trial)
                    break
            else:
                return None
        comps[key] = {g.elements[i]: h.elements[j] for i, j in comp.items()}
    return SeqMorphism(source, target, comps, name="random")


def _propagate(g: GSet, h: GSet, i: int, t: int) -> dict[int, int] | None:
    image = {i: t}
    todo = [i]
    while todo:
        a = todo.pop()
        for k, images in g.gens.items():
            b, tb = images[a], h.gens[k][image[a]]
            if b in image:
                if image[b] != tb:
                    return None
            else:
                image[b] = tb
                todo.append(b)
    return image
