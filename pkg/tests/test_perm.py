import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symseqkit.perm import (ColourSet, Permutation, PermutationError, act_word, adjacent_factorization,
                            all_permutations, block_sum, class_size, compose, cycle_type, grid_embed,
                            identity, integer_partitions, inverse, lex_word_product, morphisms,
                            permutation_of_type, recompose, segment_permutation, stabilizer, theta)


@st.composite
def perms(draw, max_n=8, n=None):
    if n is None:
        n = draw(st.integers(0, max_n))
    return Permutation(draw(st.permutations(range(n))))


@st.composite
def perm_pairs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    return draw(perms(n=n)), draw(perms(n=n)), draw(perms(n=n))


def test_group_laws_exhaustive_small():
    for n in range(5):
        group = list(all_permutations(n))
        e = identity(n)
        for s in group:
            assert compose(s, e) == s == compose(e, s)
            assert compose(s, inverse(s)) == e == compose(inverse(s), s)
        for s, t, u in itertools.product(group, repeat=3) if n <= 3 else []:
            assert compose(compose(s, t), u) == compose(s, compose(t, u))


@given(perm_pairs())
def test_associativity_random(triple):
    s, t, u = triple
    assert compose(compose(s, t), u) == compose(s, compose(t, u))
    assert inverse(inverse(s)) == s


def test_compose_is_function_composition():
    s, t = Permutation([1, 2, 0]), Permutation([0, 2, 1])
    assert all(compose(s, t)[i] == s[t[i]] for i in range(3))


def test_act_word_convention():
    assert act_word([2, 0, 1], "abc") == ("c", "a", "b")


def test_act_word_composition_fifty_cases():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(0, 6)
        w = tuple(rng.choice("xyz") for _ in range(n))
        s = list(range(n))
        t = list(range(n))
        rng.shuffle(s)
        rng.shuffle(t)
        assert act_word(t, act_word(s, w)) == act_word(compose(s, t), w)


@given(perms(max_n=7))
def test_adjacent_factorization_recomposes(s):
    factors = adjacent_factorization(s)
    assert recompose(len(s), factors) == s
    inversions = sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j])
    assert len(factors) == inversions


def test_factorization_stays_in_young_subgroup():
    w = ("a", "a", "b", "b", "b")
    for s in stabilizer(w):
        assert all(w[k] == w[k + 1] for k in adjacent_factorization(s))


def test_constructors_and_errors():
    assert Permutation.transposition(4, 1) == (0, 2, 1, 3)
    assert Permutation.from_cycles(3, [(1, 2, 3)]) == (1, 2, 0)
    assert Permutation([1, 2, 0]).cycles() == [(1, 2, 3)]
    with pytest.raises(PermutationError):
        Permutation([0, 0])
    with pytest.raises(PermutationError):
        theta([-1], [1])


def test_stabilizer_size():
    w = ("a", "a", "b", "a")
    assert len(set(stabilizer(("a", "a", "b", "b", "b")))) == 12
    assert sum(1 for _ in morphisms(w, w)) == 6


def test_morphisms_move_words():
    src, tgt = ("a", "b", "a"), ("b", "a", "a")
    ms = list(morphisms(src, tgt))
    assert len(ms) == 2
    assert all(act_word(s, src) == tgt for s in ms)
    assert list(morphisms("ab", "aa")) == []


def test_grid_and_block_sum():
    g = grid_embed([1, 0], [0, 2, 1])
    assert g == (3, 5, 4, 0, 2, 1)
    assert grid_embed(compose([1, 0], [1, 0]), [0, 1]) == compose(grid_embed([1, 0], [0, 1]),
                                                               grid_embed([1, 0], [0, 1]))
    assert block_sum([[1, 0], [0], [2, 0, 1]]) == (1, 0, 2, 5, 3, 4)
    assert segment_permutation([2, 1], [1, 0]) == (2, 0, 1)


@given(st.lists(st.integers(0, 2), max_size=3), st.lists(st.integers(0, 2), max_size=3))
def test_theta_is_a_permutation_and_trivial_on_single_blocks(ms, ns):
    t = theta(ms, ns)
    assert sorted(t) == list(range(sum(ms) * sum(ns)))
    if len(ms) <= 1 or len(ns) <= 1:
        assert t == identity(len(t)) or (len(ms) == 1 and len(ns) > 1)


def test_theta_small_value():
    # blocks (i, a) with ms = [1, 1] and (j, b) with ns = [2]
    assert theta([1, 1], [2]) == (0, 1, 2, 3)
    assert theta([2], [1, 1]) == (0, 2, 1, 3)


def test_partitions_and_classes():
    assert sorted(integer_partitions(4)) == sorted([(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)])
    for n in range(6):
        assert sum(class_size(p) for p in integer_partitions(n)) == len(list(all_permutations(n)))
        for p in integer_partitions(n):
            assert cycle_type(permutation_of_type(p)) == tuple(sorted(p, reverse=True))


def test_colour_set_order():
    cs = ColourSet(["b", "a"])
    assert cs.sort_word("abab") == ("b", "b", "a", "a")
    p = cs.sorting_permutation("abab")
    assert act_word(p, "abab") == cs.sort_word("abab")
    assert list(cs.product(ColourSet(["x"]))) == [("b", "x"), ("a", "x")]
    assert lex_word_product(("b", "a"), ("x", "y")) == (("b", "x"), ("b", "y"), ("a", "x"), ("a", "y"))
    with pytest.raises(ValueError):
        ColourSet(["a", "a"])
