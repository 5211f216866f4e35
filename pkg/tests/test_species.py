import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symseqkit.arithprod import boxtimes
from symseqkit.species import (analytic_eval, boxtimes_zero_count, composite_analytic_check,
                               dwyer_hess_count, random_species, rectangle_oracle, rectangles,
                               species_E, species_E2, species_L, species_X)


def test_rectangle_counts():
    # ordered pairs of transversal partitions into equal blocks
    assert [sum(1 for _ in rectangles(n)) for n in range(7)] == [1, 1, 2, 2, 8, 2, 122]


def test_analytic_values():
    assert analytic_eval(species_E(5), 2) == sum(n + 1 for n in range(6))
    assert analytic_eval(species_L(3), 3) == sum(3 ** n for n in range(4))
    assert analytic_eval(species_X(), 7) == 7
    assert analytic_eval(species_E2(), 4) == math.comb(5, 2)


@pytest.mark.parametrize("F,G", [(species_E(4), species_E(4)), (species_L(4), species_X()),
                                 (species_E2(), species_L(4))])
def test_oracles_agree(F, G):
    for n in range(1, 9):
        assert rectangle_oracle(F, G, n) == dwyer_hess_count(F, G, n)


def test_zero_arity_count_matches_engine():
    F, G = species_E(2), species_L(2)
    P = boxtimes(F, G)
    assert len(P.elements_at(((), ("*", "*")))) == boxtimes_zero_count(F, G)


def test_composite_of_sets_with_sets():
    res = composite_analytic_check(species_E(2), species_E(2), 2)
    assert res.status == "pass"
    assert res.composite == res.nested


def test_composite_check_refuses_large_bounds():
    res = composite_analytic_check(species_E(4), species_E(4), 2, max_arity=9)
    assert res.status == "inconclusive"
    assert not res


@settings(max_examples=25)
@given(st.integers(0, 2 ** 20), st.integers(1, 3))
def test_random_composites(seed, k):
    rng = random.Random(seed)
    F, G = random_species(rng, 3, 2), random_species(rng, 3, 2)
    res = composite_analytic_check(G, F, k)
    assert res.status in ("pass", "inconclusive")

