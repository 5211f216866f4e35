import json
import random
from pathlib import Path

import pytest

from symseqkit.gset import GSet
from symseqkit.interchange import (Interchange, check_delta_iota_axioms, check_descent,
                                   check_normality, check_oplax_axioms, check_tau_associativity,
                                   check_tau_unit_axioms, check_unit_cells, find_noninvertible,
                                   identity_theta, mutation_detected, small_species)
from symseqkit.seqfile import colour_name, read_seq
from symseqkit.species import random_species, species_E, species_E2, species_L, species_X
from symseqkit.symseq import check_morphism, identity_seq, new_symseq

FIXTURE = Path(__file__).parent / "fixtures" / "noninvertible"
ID = identity_seq(["*"])
SIGNED = new_symseq(["*"], ["*"], {(("*",) * 2, "*"): GSet(("*",) * 2, ["+", "-"], {0: (1, 0)}),
                                   ((), "*"): ["u"]})


def normality_pairs():
    rng = random.Random(11)
    pool = [species_E(2), species_E2(), species_X(), species_L(2), SIGNED, ID]
    pool += [random_species(rng, 2, 2) for _ in range(4)]
    return [(pool[i], pool[(3 * i + 1) % len(pool)]) for i in range(len(pool))]


@pytest.mark.parametrize("M,N", normality_pairs())
@pytest.mark.parametrize("side", ["left", "right"])
def test_normality(M, N, side):
    r = check_normality(M, N, side, max_arity=3)
    assert r.status == "pass", r.line()


def test_normality_rejects_bad_side():
    with pytest.raises(ValueError):
        check_normality(ID, ID, "middle")


def test_unit_cells_are_invertible():
    reports = check_unit_cells([("a",), ("a", "b"), ("a", "b", "c")]) + check_delta_iota_axioms()
    assert reports and all(r.status == "pass" for r in reports)


@pytest.mark.parametrize("M1,M2", [(species_E2(), species_E(2)), (SIGNED, species_L(2)), (ID, SIGNED)])
def test_unit_axioms(M1, M2):
    for r in check_tau_unit_axioms(M1, M2, 3):
        assert r.status == "pass", r.line()


def test_associativity_small_instance():
    E2, E3 = species_E2(), species_E(3)
    r = check_tau_associativity(ID, E2, E3, E2, ID, E2, 4)
    assert r.status == "pass", r.line()


def test_associativity_detects_corrupted_theta():
    E2, E3 = species_E2(), species_E(3)
    r = check_tau_associativity(ID, E2, ID, E3, ID, E2, 4, theta_fn=identity_theta)
    assert r.status == "fail"
    assert r.witness


def test_mutation_is_detected():
    assert mutation_detected().status == "pass"


def descent_quadruples():
    rng = random.Random(5)
    pool = [species_L(2), SIGNED, species_E(2), species_E2(), ID]
    pool += [random_species(rng, 2, 2) for _ in range(3)]
    return [tuple(rng.choice(pool) for _ in range(4)) for _ in range(8)]


@pytest.mark.parametrize("quad", descent_quadruples())
def test_tau_descends_and_is_equivariant(quad):
    T = Interchange(*quad, 3)
    rng = random.Random(0)
    assert check_descent(T, rng, tries=4) == []
    assert check_morphism(T.morphism, T.keys()[0]) == []


def test_naturality_on_a_richer_sample():
    sample = [("L", species_L(2)), ("sign", SIGNED), ("E", species_E(2)), ("id", ID)]
    reports = check_oplax_axioms(sample, max_arity=3, axioms=("naturality",), naturality=10)
    assert len(reports) == 10
    assert all(r.status == "pass" for r in reports), [r.line() for r in reports if r.status != "pass"]


def test_small_species_enumeration():
    sample = small_species(2, 2)
    # three choices at arities 0 and 1, four at arity 2, minus the empty one
    assert len(sample) == 3 * 3 * 4 - 1
    assert len({name for name, _ in sample}) == len(sample)


def test_noninvertible_fixture_reproduces():
    expected = json.loads((FIXTURE / "expected.json").read_text())
    quad = [read_seq(FIXTURE / f"{n}.seq") for n in ("M1", "N1", "M2", "N2")]
    T = Interchange(*quad, expected["search"]["cap"])
    bad, _ = T.non_bijective_points()
    assert bad
    key, dn, cn = bad[0]
    assert [colour_name(c) for c in key[0]] == expected["point"]["word"]
    assert colour_name(key[1]) == expected["point"]["output"]
    assert (dn, cn) == (expected["domain"], expected["codomain"])


def test_search_finds_the_frozen_witness():
    expected = json.loads((FIXTURE / "expected.json").read_text())
    s = expected["search"]
    names, _, key, dn, cn = find_noninvertible(s["max_arity"], s["max_elements"], s["cap"])
    assert list(names) == expected["names"]
    assert (dn, cn) == (expected["domain"], expected["codomain"])
