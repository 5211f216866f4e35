import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brute import brute_compose, compose_raws
from symseqkit.compose import (CompositionError, associated_pair, associator, check_pentagon,
                               check_triangle, horizontal_compose, kleisli_compose, left_unitor,
                               right_unitor, unitors)
from symseqkit.gset import GSet
from symseqkit.perm import Permutation, compose
from symseqkit.species import random_species, species_E, species_E2, species_L, species_X
from symseqkit.symseq import (check_morphism, identity_morphism, identity_seq, iso_violations,
                              new_symseq, random_morphism, regular_gset)


def sign(n):
    return GSet(("*",) * n, ["+", "-"], {k: (1, 0) for k in range(n - 1)})


SIGNED = new_symseq(["*"], ["*"], {(("*",) * 2, "*"): sign(2), ((), "*"): ["u"], (("*",), "*"): ["a", "b"]})
TWO = new_symseq(["a", "b"], ["a", "b"], {
    (("a", "b"), "a"): ["f"],
    (("a", "a"), "b"): GSet(("a", "a"), ["g", "g2"], {0: (1, 0)}),
    ((), "a"): ["c"],
    (("b",), "b"): ["h"],
})

PAIRS = [(species_E(3), species_E(3)), (SIGNED, species_E(3)), (species_E(3), SIGNED), (SIGNED, SIGNED),
         (species_L(2), SIGNED), (TWO, TWO)]


@pytest.mark.parametrize("N,M", PAIRS)
def test_engine_matches_brute_force(N, M):
    C = kleisli_compose(N, M, max_arity=4)
    assert C.violations() == []
    brute_keys = set()
    for key, g in C.support.items():
        q = brute_compose(N, M, *key)
        assert len(q) == len(g)
        brute_keys.add(key)
        # every raw lands on a stored element, and classes map injectively
        labels = {}
        for raw, rep in q.projection.items():
            mkey, f, blocks, sigma = raw
            lab = C.classify(key[0], key[1], mkey[0], f, [(k[0], e) for k, e in blocks], sigma)[1]
            assert lab in g.index
            labels.setdefault(rep, set()).add(lab)
        assert all(len(v) == 1 for v in labels.values())
        assert len({min(v) for v in labels.values()}) == len(g)


def test_action_on_raws_is_postcomposition():
    C = kleisli_compose(SIGNED, SIGNED, max_arity=4)
    for key, g in C.support.items():
        z, x = key
        for mkey, f, blocks, sigma in compose_raws(SIGNED, SIGNED, z, x):
            nb = [(k[0], e) for k, e in blocks]
            lab = C.classify(z, x, mkey[0], f, nb, sigma)[1]
            for k in g.gens:
                t = Permutation.transposition(len(z), k)
                moved = C.classify(z, x, mkey[0], f, nb, compose(t, sigma))[1]
                assert C.gen_image(key, k, lab) == moved


def test_composite_counts_for_sets():
    # partitions into at most three blocks of size at most three, where
    # empty blocks are allowed because E has a nullary element
    C = kleisli_compose(species_E(3), species_E(3), max_arity=4)
    assert [len(C.elements_at(((("*",) * n), "*"))) for n in range(1, 5)] == [3, 5, 10, 20]


def test_composition_needs_matching_colours():
    with pytest.raises(CompositionError):
        kleisli_compose(TWO, species_E(2))


@pytest.mark.parametrize("M", [species_E(3), species_L(3), SIGNED, TWO])
def test_unitors_are_equivariant_bijections(M):
    lam, rho = unitors(M, max_arity=3)
    for phi in (lam, rho):
        keys = phi.source.keys_upto(3)
        assert check_morphism(phi, keys) == []
        assert iso_violations(phi, keys) == []


def sample_triples():
    rng = random.Random(2)
    pool = [species_E(2), species_E2(), species_X(), species_L(2), SIGNED]
    pool += [random_species(rng, 2, 2) for _ in range(3)]
    return [tuple(rng.choice(pool) for _ in range(3)) for _ in range(10)]


@pytest.mark.parametrize("P,N,M", sample_triples())
def test_associator_is_an_equivariant_bijection(P, N, M):
    lhs, rhs = associated_pair(P, N, M, max_arity=3)
    a = associator(lhs, rhs)
    keys = sorted(set(lhs.keys_upto(3)) | set(rhs.keys_upto(3)), key=lhs.key_order)
    assert check_morphism(a, lhs.keys_upto(3)) == []
    assert iso_violations(a, keys) == []


def test_associator_two_colours():
    lhs, rhs = associated_pair(TWO, TWO, TWO, max_arity=3)
    keys = sorted(set(lhs.keys_upto(3)) | set(rhs.keys_upto(3)), key=lhs.key_order)
    assert iso_violations(associator(lhs, rhs), keys) == []


@pytest.mark.parametrize("Q,P,N,M", [
    (species_E2(), species_E(3), species_L(2), species_E2()),
    (species_L(2), species_E2(), species_E(3), species_L(2)),
    (SIGNED, species_E(2), SIGNED, species_X()),
])
def test_pentagon(Q, P, N, M):
    assert check_pentagon(Q, P, N, M, 3) == []


@pytest.mark.parametrize("N,M", [(species_E(3), species_L(3)), (species_L(2), species_E2()),
                                 (SIGNED, SIGNED), (TWO, TWO)])
def test_triangle(N, M):
    assert check_triangle(N, M, 3) == []


def test_horizontal_composite_is_equivariant():
    rng = random.Random(4)
    L = species_L(2)
    phi = random_morphism(L, L, rng)
    psi = random_morphism(SIGNED, SIGNED, rng)
    src = kleisli_compose(SIGNED, L, max_arity=3)
    tgt = kleisli_compose(SIGNED, L)
    h = horizontal_compose(psi, phi, src, tgt)
    assert check_morphism(h, src.keys_upto(3)) == []
    assert iso_violations(h, src.keys_upto(3)) == []


@given(st.integers(0, 2 ** 16))
def test_random_composites_validate(seed):
    rng = random.Random(seed)
    N, M = random_species(rng, 2, 2), random_species(rng, 2, 2)
    C = kleisli_compose(N, M, max_arity=3)
    assert C.violations() == []


def test_identity_unit_counts():
    M = SIGNED
    left = kleisli_compose(identity_seq(["*"]), M)
    assert {k: len(g) for k, g in left.support.items()} == {k: len(g) for k, g in M.support.items()}
