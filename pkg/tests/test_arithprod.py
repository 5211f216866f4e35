import random

import pytest

from brute import box_raws, brute_box
from symseqkit.arithprod import (boxtimes, boxtimes_associator, boxtimes_morphisms,
                                 boxtimes_unitors, eta)
from symseqkit.gset import GSet
from symseqkit.species import random_species, species_E, species_E2, species_L, species_X
from symseqkit.symseq import (PointTooLarge, check_morphism, identity_morphism, iso_violations,
                              new_symseq, random_morphism)


def sign(n):
    return GSet(("*",) * n, ["+", "-"], {k: (1, 0) for k in range(n - 1)})


SIGNED = new_symseq(["*"], ["*"], {(("*",) * 2, "*"): sign(2), ((), "*"): ["u"], (("*",), "*"): ["a", "b"]})
TWO = new_symseq(["a"], ["a", "b"], {
    (("a", "b"), "a"): ["f"],
    (("a", "a"), "a"): GSet(("a", "a"), ["g", "g2"], {0: (1, 0)}),
    (("b",), "a"): ["h"],
})

PAIRS = [(species_E(3), species_E(3)), (SIGNED, species_E(3)), (species_E(3), SIGNED),
         (SIGNED, SIGNED), (species_L(2), species_E2()), (TWO, SIGNED), (TWO, TWO)]


@pytest.mark.parametrize("M1,M2", PAIRS)
def test_product_matches_brute_force(M1, M2):
    P = boxtimes(M1, M2, max_arity=4)
    assert P.violations() == []
    for key, g in P.support.items():
        q = brute_box(M1, M2, *key)
        assert len(q) == len(g)
        labels = {}
        for raw, rep in q.projection.items():
            k1, f1, k2, f2, sigma = raw
            lab = P.classify(key[0], key[1], k1[0], f1, k2[0], f2, sigma)[1]
            assert lab in g.index
            labels.setdefault(rep, set()).add(lab)
        assert all(len(v) == 1 for v in labels.values())
        assert len({min(v) for v in labels.values()}) == len(g)


def test_product_of_sets_counts_rectangles():
    P = boxtimes(species_E(4), species_E(4), max_arity=4)
    # ordered factorisations n = m1 m2 weighted by n! / (m1! m2!)
    assert [len(P.elements_at(((("*", "*"),) * n, ("*", "*")))) for n in range(1, 5)] == [1, 2, 2, 8]


def test_eta_is_a_bijection():
    for X1, X2 in [(["*"], ["*"]), (["a", "b"], ["c"]), (["a", "b", "c"], ["a", "b"])]:
        phi = eta(X1, X2)
        keys = phi.source.key_list()
        assert check_morphism(phi, keys) == []
        assert iso_violations(phi, keys) == []


@pytest.mark.parametrize("M", [species_E(3), species_L(2), SIGNED, TWO])
def test_product_unitors(M):
    for phi in boxtimes_unitors(M, max_arity=4):
        keys = phi.source.keys_upto(4)
        assert check_morphism(phi, keys) == []
        assert iso_violations(phi, keys) == []


@pytest.mark.parametrize("M1,M2,M3", [(species_E(2), species_L(2), species_E2()),
                                      (SIGNED, species_X(), SIGNED), (TWO, species_E(1), TWO)])
def test_product_associator(M1, M2, M3):
    lhs = boxtimes(boxtimes(M1, M2), M3, max_arity=4)
    rhs = boxtimes(M1, boxtimes(M2, M3), max_arity=4)
    a = boxtimes_associator(lhs, rhs)
    keys = lhs.keys_upto(4)
    assert check_morphism(a, keys) == []
    assert iso_violations(a, keys) == []


def test_product_of_morphisms_is_equivariant():
    rng = random.Random(7)
    for _ in range(5):
        A, B = random_species(rng, 2, 2), random_species(rng, 2, 2)
        phi = random_morphism(A, A, rng) or identity_morphism(A)
        psi = random_morphism(B, B, rng) or identity_morphism(B)
        src = boxtimes(A, B, max_arity=4)
        h = boxtimes_morphisms(phi, psi, src, boxtimes(A, B))
        assert check_morphism(h, src.keys_upto(4)) == []


def test_large_empty_word_point_is_refused():
    big = species_E(9)
    P = boxtimes(species_E(1), big)
    with pytest.raises(PointTooLarge):
        P.elements_at(((), ("*", "*")))


def test_box_raws_are_well_typed():
    for raw in box_raws(SIGNED, SIGNED, ("*",) * 4, ("*", "*")):
        k1, _, k2, _, sigma = raw
        assert len(k1[0]) * len(k2[0]) == len(sigma) == 4
