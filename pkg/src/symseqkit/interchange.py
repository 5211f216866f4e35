"""The interchange map between the two products, and checks of its axioms.

``tau : (N1 o M1) [x] (N2 o M2) -> (N1 [x] N2) o (M1 [x] M2)`` sends the class
of ``(c1, c2, s)``, with ``c_i = (y_i, f_i, blocks w_(i,k), g_(i,k), s_i)``,
to the composite whose inner element is ``(f1, f2)`` at ``lex(y1, y2)``,
whose block at ``(j, k)`` is ``(g_(1,j), g_(2,k))`` at
``lex(w_(1,j), w_(2,k))``, glued by ``s o grid(s1, s2) o theta^-1``.

Maps are evaluated element by element. Checks run over the domain points up
to an arity bound; points whose computation is refused (see
``PointTooLarge``) are reported as skipped, never passed.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .arithprod import (BoxProduct, boxtimes, boxtimes_morphisms, eta, left_box_unitor,
                        right_box_unitor)
from .compose import (KleisliComposite, associated_pair, associator, horizontal_compose,
                      kleisli_compose, left_unitor, right_unitor)
from .gset import GSet
from .species import species_E, species_E2
from .perm import ColourSet, compose, grid_embed, inverse, lex_word_product, theta
from .symseq import (PointTooLarge, SeqMorphism, SymSeq, check_morphism, identity_morphism, identity_seq,
                     iso_violations, morphisms_equal, new_symseq, random_morphism,
                     vertical_compose)


def _fmt_key(key) -> str:
    w, x = key
    return "[" + " ".join(map(str, w)) + f"] -> {x}"


@dataclass
class Report:
    """Outcome of one check on one instance."""

    check: str
    instance: str
    status: str  # pass | fail | inconclusive
    witness: str = ""
    detail: str = ""

    def as_dict(self) -> dict:
        return {"check": self.check, "instance": self.instance, "status": self.status,
                "witness": self.witness, "detail": self.detail}

    def line(self) -> str:
        out = f"{self.status.upper():12s} {self.check} [{self.instance}]"
        if self.witness:
            out += f" witness: {self.witness}"
        if self.detail:
            out += f" ({self.detail})"
        return out


def available_keys(S: SymSeq, max_arity: int | None) -> tuple[list, list]:
    """Keys of ``S`` up to ``max_arity`` split into computable and too-large ones."""
    keys = S.key_list() if max_arity is None else S.keys_upto(max_arity)
    ok, skipped = [], []
    for key in keys:
        try:
            S.elements_at(key)
        except PointTooLarge:
            skipped.append(key)
        else:
            ok.append(key)
    return ok, skipped


class Interchange:
    """Domain, codomain and the (lazily evaluated) interchange map."""

    def __init__(self, M1: SymSeq, N1: SymSeq, M2: SymSeq, N2: SymSeq,
                 max_arity: int | None = None, *,
                 theta_fn: Callable[[Sequence[int], Sequence[int]], Sequence[int]] = theta,
                 left: KleisliComposite | None = None, right: KleisliComposite | None = None,
                 outer: BoxProduct | None = None, inner: BoxProduct | None = None):
        self.factors = (M1, N1, M2, N2)
        self.theta_fn = theta_fn
        self.max_arity = max_arity
        self.K1 = left if left is not None else kleisli_compose(N1, M1)
        self.K2 = right if right is not None else kleisli_compose(N2, M2)
        self.domain = boxtimes(self.K1, self.K2, max_arity)
        self.BN = outer if outer is not None else boxtimes(N1, N2)
        self.BM = inner if inner is not None else boxtimes(M1, M2)
        self.codomain = kleisli_compose(self.BN, self.BM, max_arity)
        self.morphism = SeqMorphism(self.domain, self.codomain, name="tau", fn=self.image)

    def keys(self) -> tuple[list, list]:
        """Computable domain keys up to the arity bound, and the skipped ones."""
        return available_keys(self.domain, self.max_arity)

    def image(self, key, raw) -> object:
        z, x = key
        k1, c1, k2, c2, sigma = self.domain.decode(raw)
        d1 = self.K1.decode(c1)
        d2 = self.K2.decode(c2)
        return self.image_of(z, x, d1, d2, sigma)

    def image_of(self, z, x, d1, d2, sigma):
        """Image of an arbitrary (not necessarily canonical) raw.

        ``d_i = (M key, f, [(N key, g, labels)])`` as returned by
        ``KleisliComposite.decode``; ``sigma`` glues ``z`` to ``lex(u1, u2)``
        with ``u_i`` the sorted target words of the two composites.
        """
        (y1, _), f1, b1 = d1
        (y2, _), f2, b2 = d2
        s1 = tuple(q for _, _, lab in b1 for q in lab)
        s2 = tuple(q for _, _, lab in b2 for q in lab)
        v = lex_word_product(y1, y2)
        _, inner = self.BM.classify(v, (d1[0][1], d2[0][1]), y1, f1, y2, f2, tuple(range(len(v))))
        blocks = []
        for (w1, o1), g1, _ in b1:
            for (w2, o2), g2, _ in b2:
                lw = lex_word_product(w1, w2)
                _, e = self.BN.classify(lw, (o1, o2), w1, g1, w2, g2, tuple(range(len(lw))))
                blocks.append((lw, e))
        th = self.theta_fn([len(k[0]) for k, _, _ in b1], [len(k[0]) for k, _, _ in b2])
        out = compose(compose(tuple(sigma), grid_embed(s1, s2)), inverse(th))
        return self.codomain.classify(z, x, v, inner, blocks, out)[1]

    def non_bijective_points(self) -> tuple[list, list]:
        """Points up to the arity bound where the component is not a bijection.

        Returns ``([(key, domain size, codomain size)], skipped keys)``.
        """
        dkeys, dskip = available_keys(self.domain, self.max_arity)
        ckeys, cskip = available_keys(self.codomain, self.max_arity)
        skipped = sorted(set(dskip) | set(cskip), key=self.codomain.key_order)
        bad = []
        for key in sorted((set(dkeys) | set(ckeys)) - set(skipped), key=self.codomain.key_order):
            dom = self.domain.point(key)
            cod = self.codomain.point(key)
            dn = len(dom) if dom is not None else 0
            cn = len(cod) if cod is not None else 0
            images = {self.image(key, e) for e in (dom.elements if dom is not None else ())}
            if dn != cn or len(images) != dn or (cod is not None and not images <= set(cod.elements)):
                bad.append((key, dn, cn))
        return bad, skipped


def interchange_tau(M1, N1, M2, N2, max_arity=None, **kw) -> SeqMorphism:
    """The interchange morphism, evaluated lazily."""
    return Interchange(M1, N1, M2, N2, max_arity, **kw).morphism


# ---------------------------------------------------------------------------
# descent to orbits


def random_representative(C: KleisliComposite, raw, rng: random.Random):
    """A random raw of the class of ``raw``, in decoded form.

    Applies random block-internal and block-swapping moves to the canonical
    raw.
    """
    mkey, f, blocks = C.decode(raw)
    M, N = C.inner, C.outer
    ybar = mkey[0]
    blocks = [list(b) for b in blocks]
    for _ in range(rng.randint(0, 4)):
        if rng.random() < 0.5 and blocks:
            i = rng.randrange(len(blocks))
            nkey, g, lab = blocks[i]
            gens = [k for k in range(len(nkey[0]) - 1) if nkey[0][k] == nkey[0][k + 1]]
            if not gens:
                continue
            k = rng.choice(gens)
            g = N.gen_image(nkey, k, g)
            lab = list(lab)
            lab[k], lab[k + 1] = lab[k + 1], lab[k]
            blocks[i] = [nkey, g, tuple(lab)]
        else:
            gens = [k for k in range(len(ybar) - 1) if ybar[k] == ybar[k + 1]]
            if not gens:
                continue
            k = rng.choice(gens)
            f = M.gen_image(mkey, k, f)
            blocks[k], blocks[k + 1] = blocks[k + 1], blocks[k]
    return mkey, f, [tuple(b) for b in blocks]


def check_descent(T: Interchange, rng: random.Random, tries: int = 3,
                  per_point: int | None = None) -> list[str]:
    """Recompute images from random representatives; list the mismatches.

    ``per_point`` limits the elements tried at each point to a random subset.
    """
    out = []
    D = T.domain
    for key in T.keys()[0]:
        z, x = key
        elems = D.elements_at(key)
        if per_point is not None and len(elems) > per_point:
            elems = rng.sample(list(elems), per_point)
        for raw in elems:
            img = T.image(key, raw)
            k1, c1, k2, c2, sigma = D.decode(raw)
            for _ in range(tries):
                d1 = random_representative(T.K1, c1, rng)
                d2 = random_representative(T.K2, c2, rng)
                # also move along the product's own relation
                a = _random_stab(k1[0], rng)
                b = _random_stab(k2[0], rng)
                d1 = _act_composite(T.K1, d1, a)
                d2 = _act_composite(T.K2, d2, b)
                s = compose(tuple(sigma), grid_embed(a, b))
                if T.image_of(z, x, d1, d2, s) != img:
                    out.append(f"{_fmt_key(key)}: representative changes the image of {raw!r}")
                    break
    return out


def _random_stab(w, rng):
    perm = list(range(len(w)))
    for a, b in _runs(w):
        seg = perm[a:b]
        rng.shuffle(seg)
        perm[a:b] = seg
    return tuple(perm)


def _runs(w):
    out = []
    start = 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] != w[start]:
            out.append((start, k))
            start = k
    return out if w else []


def _act_composite(C: KleisliComposite, d, a):
    """Decoded raw of ``act(a, c)``: relabel so that the pair moves with ``s o grid(a, b)``.

    With ``(c, s) ~ (act(a, c), s o grid(a, id))`` and ``act(a, c)`` given by
    ``labels -> a^-1 o labels``.
    """
    mkey, f, blocks = d
    ainv = inverse(a)
    return mkey, f, [(k, g, tuple(ainv[q] for q in lab)) for k, g, lab in blocks]


# ---------------------------------------------------------------------------
# normality


def check_normality(M: SymSeq, N: SymSeq, side: str = "left", max_arity: int | None = 4,
                    colours: Iterable = ("*",)) -> Report:
    """Invertibility of tau with identities in the chosen slot."""
    I = identity_seq(list(colours))
    if side == "left":
        T = Interchange(I, I, M, N, max_arity)
    elif side == "right":
        T = Interchange(M, N, I, I, max_arity)
    else:
        raise ValueError("side must be 'left' or 'right'")
    inst = f"{side} slot identities, arity <= {max_arity}"
    keys, _ = T.keys()
    problems = check_morphism(T.morphism, keys)
    if problems:
        return Report("normality", inst, "fail", problems[0])
    bad, skipped = T.non_bijective_points()
    if bad:
        key, dn, cn = bad[0]
        return Report("normality", inst, "fail", f"{_fmt_key(key)} domain {dn} codomain {cn}")
    status = "inconclusive" if skipped and not keys else "pass"
    return Report("normality", inst, status, detail=f"{len(keys)} points, {len(skipped)} skipped")


# ---------------------------------------------------------------------------
# the unit cells


def unit_one() -> SymSeq:
    return identity_seq(["*"])


def delta() -> SeqMorphism:
    """``J -> J o J`` on the unit ``J``."""
    J = unit_one()
    JJ = kleisli_compose(J, J)
    key = (("*",), "*")
    (raw,) = JJ.support[key].elements
    return SeqMorphism(J, JJ, {key: {"id": raw}}, name="delta")


def iota() -> SeqMorphism:
    """``J -> id`` on the unit; here both are the same sequence."""
    J = unit_one()
    return SeqMorphism(J, J, {(("*",), "*"): {"id": "id"}}, name="iota")


def check_unit_cells(colour_sets: Iterable[Sequence]) -> list[Report]:
    out = []
    for name, phi in (("delta", delta()), ("iota", iota())):
        v = iso_violations(phi)
        out.append(Report(f"{name} invertible", "unit", "fail" if v else "pass", v[0] if v else ""))
    for X1 in colour_sets:
        for X2 in colour_sets:
            v = iso_violations(eta(X1, X2))
            out.append(Report("eta invertible", f"{list(X1)} x {list(X2)}",
                              "fail" if v else "pass", v[0] if v else ""))
    return out


def check_delta_iota_axioms() -> list[Report]:
    J = unit_one()
    d = delta()
    i = iota()
    JJ = d.target
    out = []
    # coassociativity: a . (delta o 1) . delta == (1 o delta) . delta
    lhs_obj, rhs_obj = associated_pair(J, J, J)
    d1 = horizontal_compose(d, identity_morphism(J), JJ, lhs_obj)
    left = vertical_compose(vertical_compose(d, d1), associator(lhs_obj, rhs_obj))
    d2 = horizontal_compose(identity_morphism(J), d, JJ, rhs_obj)
    right = vertical_compose(d, d2)
    diff = morphisms_equal(left, right)
    out.append(Report("delta coassociativity", "unit", "fail" if diff else "pass", diff[0] if diff else ""))
    # counits
    lt = kleisli_compose(J, J)
    c1 = vertical_compose(vertical_compose(d, horizontal_compose(i, identity_morphism(J), JJ, lt)),
                          left_unitor(lt))
    c2 = vertical_compose(vertical_compose(d, horizontal_compose(identity_morphism(J), i, JJ, lt)),
                          right_unitor(lt))
    for name, m in (("left counit", c1), ("right counit", c2)):
        diff = morphisms_equal(m, identity_morphism(J))
        out.append(Report(f"delta/iota {name}", "unit", "fail" if diff else "pass", diff[0] if diff else ""))
    return out


# ---------------------------------------------------------------------------
# axioms of tau


def _restrict_equal(phi: SeqMorphism, psi: SeqMorphism, keys, orbits: bool = False,
                    max_orbits: int | None = None, seed: int = 0) -> list[str]:
    """Points where ``phi`` and ``psi`` differ.

    With ``orbits`` only one element per orbit is compared, which suffices
    when both maps are known to be equivariant. ``max_orbits`` further caps
    the orbits compared at each point to a seeded random subset.
    """
    out = []
    rng = random.Random(seed)
    for key in keys:
        elems = phi.source.elements_at(key)
        if orbits:
            g = phi.source.point(key)
            elems = [g.elements[o[0]] for o in g.orbits()]
            if max_orbits is not None and len(elems) > max_orbits:
                elems = rng.sample(elems, max_orbits)
        for e in elems:
            a, b = phi(key, e), psi(key, e)
            if a != b:
                out.append(f"{_fmt_key(key)} element {e!r}: {a!r} vs {b!r}")
                break
    return out


def check_tau_associativity(P1, N1, M1, P2, N2, M2, max_arity: int = 4,
                            theta_fn=theta, instance: str = "", max_orbits: int | None = None,
                            seed: int = 0) -> Report:
    """The first oplax axiom: two ways from ``((P N) M) [x] ((P N) M)`` to
    ``(P [x] P) o ((N [x] N) o (M [x] M))``.

    Both ways are equivariant, so they are compared on one element per
    orbit; ``max_orbits`` samples the orbits of large points.
    """
    L1, R1 = associated_pair(P1, N1, M1)
    L2, R2 = associated_pair(P2, N2, M2)
    # left path: tau_{M, PN}, then (tau_{N,P} o 1), then the associator
    PN1, PN2 = L1.outer, L2.outer
    T1 = Interchange(M1, PN1, M2, PN2, max_arity, theta_fn=theta_fn, left=L1, right=L2)
    T2 = Interchange(N1, P1, N2, P2, theta_fn=theta_fn, left=PN1, right=PN2)
    BMM, BPP, BNN = T1.BM, T2.BN, T2.BM
    mid = kleisli_compose(T2.codomain, BMM)
    whisk = horizontal_compose(T2.morphism, identity_morphism(BMM), T1.codomain, mid)
    final = kleisli_compose(BPP, kleisli_compose(BNN, BMM))
    left = vertical_compose(vertical_compose(T1.morphism, whisk), associator(mid, final))
    # right path: a [x] a, then tau_{NM, P}, then (1 o tau_{M,N})
    src = T1.domain
    tgt = boxtimes(R1, R2)
    aa = boxtimes_morphisms(associator(L1, R1), associator(L2, R2), src, tgt)
    NM1, NM2 = R1.inner, R2.inner
    T3 = Interchange(NM1, P1, NM2, P2, theta_fn=theta_fn, left=R1, right=R2, outer=BPP)
    T4 = Interchange(M1, N1, M2, N2, theta_fn=theta_fn, left=NM1, right=NM2, outer=BNN, inner=BMM)
    w2 = horizontal_compose(identity_morphism(BPP), T4.morphism, T3.codomain, final)
    right = vertical_compose(vertical_compose(aa, T3.morphism), w2)
    keys, skipped = T1.keys()
    try:
        diff = _restrict_equal(left, right, keys, orbits=True, max_orbits=max_orbits, seed=seed)
    except PointTooLarge as exc:
        return Report("tau associativity", instance, "inconclusive", detail=str(exc))
    if diff:
        return Report("tau associativity", instance, "fail", diff[0])
    status = "pass" if keys else "inconclusive"
    cap = f", at most {max_orbits} orbits each" if max_orbits is not None else ""
    return Report("tau associativity", instance, status,
                  detail=f"{len(keys)} points checked{cap}, {len(skipped)} skipped")


def check_tau_unit_axioms(M1, M2, max_arity: int = 4, instance: str = "") -> list[Report]:
    out = []
    I1 = identity_seq(M1.inputs)
    I2 = identity_seq(M2.inputs)
    Iprod = identity_seq(M1.inputs.product(M2.inputs))
    # left: l . (eta o 1) . tau == l [x] l
    T = Interchange(M1, I1, M2, I2, max_arity)
    tgt = kleisli_compose(Iprod, T.BM)
    e1 = horizontal_compose(_relabelled_eta(T.BN, Iprod), identity_morphism(T.BM), T.codomain, tgt)
    lhs = vertical_compose(vertical_compose(T.morphism, e1), left_unitor(tgt))
    ll = boxtimes_morphisms(left_unitor(T.K1), left_unitor(T.K2), T.domain, T.BM)
    keys, skipped = T.keys()
    diff = _restrict_equal(lhs, ll, keys)
    out.append(Report("tau/eta left unit", instance, "fail" if diff else "pass", diff[0] if diff else "",
                      detail=f"{len(keys)} points, {len(skipped)} skipped"))
    # right: r . (1 o eta) . tau == r [x] r
    J1 = identity_seq(M1.outputs)
    J2 = identity_seq(M2.outputs)
    T = Interchange(J1, M1, J2, M2, max_arity)
    Jprod = identity_seq(T.BM.outputs)
    tgt = kleisli_compose(T.BN, Jprod)
    e2 = horizontal_compose(identity_morphism(T.BN), _relabelled_eta(T.BM, Jprod), T.codomain, tgt)
    lhs = vertical_compose(vertical_compose(T.morphism, e2), right_unitor(tgt))
    rr = boxtimes_morphisms(right_unitor(T.K1), right_unitor(T.K2), T.domain, T.BN)
    keys, skipped = T.keys()
    diff = _restrict_equal(lhs, rr, keys)
    out.append(Report("tau/eta right unit", instance, "fail" if diff else "pass", diff[0] if diff else "",
                      detail=f"{len(keys)} points, {len(skipped)} skipped"))
    return out


def _relabelled_eta(source: BoxProduct, target: SymSeq) -> SeqMorphism:
    """``eta`` on a product of identities, landing in the identity on pairs."""
    return SeqMorphism(source, target, name="eta", fn=lambda key, raw: "id")


def check_tau_naturality(T: Interchange, T2: Interchange, phis, instance: str = "") -> Report:
    """``tau' . ((psi1 o phi1) [x] (psi2 o phi2)) == ((psi1 [x] psi2) o (phi1 [x] phi2)) . tau``.

    ``phis = (phi1, psi1, phi2, psi2)`` are morphisms from the factors of ``T``
    to those of ``T2``.
    """
    phi1, psi1, phi2, psi2 = phis
    k1 = horizontal_compose(psi1, phi1, T.K1, T2.K1)
    k2 = horizontal_compose(psi2, phi2, T.K2, T2.K2)
    top = boxtimes_morphisms(k1, k2, T.domain, T2.domain)
    lhs = vertical_compose(top, T2.morphism)
    bn = boxtimes_morphisms(psi1, psi2, T.BN, T2.BN)
    bm = boxtimes_morphisms(phi1, phi2, T.BM, T2.BM)
    bottom = horizontal_compose(bn, bm, T.codomain, T2.codomain)
    rhs = vertical_compose(T.morphism, bottom)
    keys, skipped = T.keys()
    diff = _restrict_equal(lhs, rhs, keys)
    status = "fail" if diff else "pass" if keys else "inconclusive"
    return Report("tau naturality", instance, status, diff[0] if diff else "",
                  detail=f"{len(keys)} points, {len(skipped)} skipped")


def identity_theta(ms, ns):
    """The corrupted interchange bijection used by the mutation test."""
    n = sum(ms) * sum(ns)
    return tuple(range(n))


# ---------------------------------------------------------------------------
# the standard sample and the full report


def standard_sample() -> list[tuple[str, SymSeq]]:
    """Identities, the binary operation and sets truncated at arity three."""
    return [("id", identity_seq(["*"])), ("E2", species_E2()), ("E<=3", species_E(3))]


def check_oplax_axioms(sample: Sequence[tuple[str, SymSeq]] | None = None, max_arity: int = 4,
                       theta_fn=theta, triples: int | None = None, seed: int = 0,
                       max_orbits: int | None = 20, naturality: int = 12, descent: int = 12,
                       first_failure: bool = False,
                       axioms: Sequence[str] = ("unit cells", "unit axioms", "associativity",
                                                "descent", "naturality")) -> list[Report]:
    """Run the axiom checks over a sample of single-sorted sequences.

    Associativity runs over every pair of triples from the sample, or over
    ``triples`` seeded pairs; ``max_orbits`` caps the orbits compared per
    point. Descent, equivariance and naturality use seeded quadruples.
    With ``first_failure`` the associativity loop stops at the first failure.
    """
    sample = list(sample or standard_sample())
    rng = random.Random(seed)
    out: list[Report] = []
    if "unit cells" in axioms:
        out.extend(check_unit_cells([("a",), ("a", "b"), ("a", "b", "c")]))
        out.extend(check_delta_iota_axioms())
    if "unit axioms" in axioms:
        for (n1, a), (n2, b) in itertools.product(sample, repeat=2):
            out.extend(check_tau_unit_axioms(a, b, max_arity, f"{n1}, {n2}"))
    if "associativity" in axioms:
        combos = list(itertools.product(sample, repeat=3))
        pairs = [(c1, c2) for c1 in combos for c2 in combos]
        if triples is not None and triples < len(pairs):
            pairs = rng.sample(pairs, triples)
        for c1, c2 in pairs:
            names = ",".join(n for n, _ in c1) + " | " + ",".join(n for n, _ in c2)
            (_, P1), (_, N1), (_, M1) = c1
            (_, P2), (_, N2), (_, M2) = c2
            out.append(check_tau_associativity(P1, N1, M1, P2, N2, M2, max_arity, theta_fn, names,
                                               max_orbits=max_orbits, seed=seed))
            if first_failure and out[-1].status == "fail":
                break
    if "descent" in axioms:
        for (n1, a), (n2, b), (n3, c), (n4, d) in _some_quadruples(sample, rng, descent):
            T = Interchange(a, b, c, d, max_arity, theta_fn=theta_fn)
            inst = f"{n1},{n2},{n3},{n4}"
            bad = check_descent(T, rng, per_point=max_orbits)
            out.append(Report("tau descends to orbits", inst, "fail" if bad else "pass", bad[0] if bad else ""))
            bad = check_morphism(T.morphism, T.keys()[0], per_point=max_orbits, rng=rng)
            out.append(Report("tau equivariant", inst, "fail" if bad else "pass", bad[0] if bad else ""))
    if "naturality" in axioms:
        out.extend(_naturality_reports(sample, rng, naturality, max_arity, theta_fn))
    return out


def _naturality_reports(sample, rng, count, max_arity, theta_fn, attempts: int = 400) -> list[Report]:
    """Naturality of tau against random morphisms between sampled quadruples."""
    out = []
    for _ in range(attempts):
        if len(out) >= count:
            break
        src = [rng.choice(sample) for _ in range(4)]
        dst = [rng.choice(sample) for _ in range(4)]
        maps = [random_morphism(a, b, rng) for (_, a), (_, b) in zip(src, dst)]
        if any(m is None for m in maps):
            continue
        T = Interchange(*(s for _, s in src), max_arity, theta_fn=theta_fn)
        if not T.keys()[0]:
            continue
        T2 = Interchange(*(s for _, s in dst), theta_fn=theta_fn)
        phi1, psi1, phi2, psi2 = maps
        inst = ",".join(n for n, _ in src) + " -> " + ",".join(n for n, _ in dst)
        out.append(check_tau_naturality(T, T2, (phi1, psi1, phi2, psi2), inst))
    return out


def _some_quadruples(sample, rng, k):
    quads = list(itertools.product(sample, repeat=4))
    if len(quads) <= k:
        return quads
    return rng.sample(quads, k)


def mutation_detected(max_arity: int = 4) -> Report:
    """The associativity axiom must fail once theta is replaced by the identity."""
    reports = check_oplax_axioms(max_arity=max_arity, theta_fn=identity_theta,
                                 axioms=("associativity",), first_failure=True)
    failed = [r for r in reports if r.status == "fail"]
    if failed:
        return Report("theta mutation detected", failed[0].instance, "pass", failed[0].witness)
    return Report("theta mutation detected", "standard sample", "fail", "",
                  "no instance distinguishes the corrupted interchange")


# ---------------------------------------------------------------------------
# non-invertibility search


def small_species(max_arity: int = 2, max_elements: int = 2) -> list[tuple[str, SymSeq]]:
    """Single-colour sequences with the given bounds, trivial or sign actions.

    Every arity gets 0..max_elements elements; a two-element value at arity
    two is also tried with the swap action.
    """
    per_arity = []
    for n in range(max_arity + 1):
        opts = [(f"{k}", k, False) for k in range(max_elements + 1)]
        if n >= 2 and max_elements >= 2:
            opts.append(("s", 2, True))
        per_arity.append(opts)
    out = []
    for combo in itertools.product(*per_arity):
        table = {}
        for n, (_, k, swap) in enumerate(combo):
            if k == 0:
                continue
            w = ("*",) * n
            names = [f"e{i}" for i in range(k)]
            gens = {j: (1, 0) for j in range(n - 1)} if swap else {}
            table[(w, "*")] = GSet(w, names, gens)
        if not table:
            continue
        name = "".join(c[0] for c in combo)
        out.append((name, new_symseq(["*"], ["*"], table)))
    return out


def find_noninvertible(max_arity: int = 2, max_elements: int = 2, cap: int = 4,
                       limit: int | None = None):
    """First quadruple (in a fixed order) whose interchange map is not bijective somewhere.

    Returns ``(names, (M1, N1, M2, N2), point, domain size, codomain size)``
    or ``None``.
    """
    sample = small_species(max_arity, max_elements)
    sample.sort(key=lambda t: (sum(len(g) for g in t[1].support.values()), t[0]))
    count = 0
    for quad in itertools.product(sample, repeat=4):
        count += 1
        if limit is not None and count > limit:
            return None
        seqs = tuple(s for _, s in quad)
        T = Interchange(*seqs, cap)
        bad, _ = T.non_bijective_points()
        if bad:
            key, dn, cn = bad[0]
            return tuple(n for n, _ in quad), seqs, key, dn, cn
    return None
