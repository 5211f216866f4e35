import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symseqkit.gset import GSet, GSetError, orbit_quotient, validate_gset
from symseqkit.perm import Permutation, all_permutations, compose, stabilizer
from symseqkit.symseq import burnside_orbits, regular_gset


def bfs_components(nodes, edges):
    """Plain breadth-first components, the reference for orbit_quotient."""
    adj = {v: set() for v in nodes}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, comps = set(), []
    for v in sorted(nodes):
        if v in seen:
            continue
        comp, queue = [], [v]
        seen.add(v)
        while queue:
            u = queue.pop(0)
            comp.append(u)
            for x in sorted(adj[u]):
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        comps.append(sorted(comp))
    return sorted(comps)


@given(st.integers(1, 30), st.lists(st.tuples(st.integers(0, 29), st.integers(0, 29)), max_size=40))
def test_orbit_quotient_matches_bfs(n, pairs):
    edges = [(a % n, b % n) for a, b in pairs]
    moves = [{a: b} for a, b in edges]
    q = orbit_quotient(range(n), moves)
    assert sorted(sorted(c) for c in q.classes().values()) == bfs_components(range(n), edges)
    assert all(rep == min(c) for rep, c in q.classes().items())


def test_orbit_quotient_rejects_escaping_moves():
    with pytest.raises(GSetError):
        orbit_quotient([1, 2], [lambda r: r + 5])


def test_orbit_quotient_partial_moves():
    q = orbit_quotient(range(6), [lambda r: r + 2 if r < 4 else None])
    assert q.representatives == [0, 1]


def test_regular_action_is_valid_and_free():
    g = regular_gset(("*",) * 3)
    assert validate_gset(g) == []
    assert len(g) == 6 and len(g.orbits()) == 1
    for s in all_permutations(3):
        if s != tuple(range(3)):
            assert all(g.act(s, e) != e for e in g.elements)


def test_action_is_a_right_action():
    g = regular_gset(("a", "a", "a", "b", "b"))
    group = list(stabilizer(g.base_word))
    rng = random.Random(0)
    for _ in range(40):
        s, t = rng.choice(group), rng.choice(group)
        e = rng.choice(g.elements)
        assert g.act(compose(s, t), e) == g.act(t, g.act(s, e))


def _sign(n_elems=2):
    return GSet(("*", "*", "*"), ["p", "m"], {0: (1, 0), 1: (1, 0)})


def test_seeded_violations_are_caught():
    assert validate_gset(_sign()) == []
    # not an involution: a 3-cycle as a generator
    g = GSet(("*", "*"), "abc", {0: (1, 2, 0)})
    assert {v.relation for v in validate_gset(g)} == {"involution s^2 = id"}
    # braid relation broken: s1 and s2 swap disjoint pairs
    g = GSet(("*",) * 3, "abcd", {0: (1, 0, 2, 3), 1: (0, 1, 3, 2)})
    assert "braid" in {v.relation for v in validate_gset(g)}
    # commutation broken at distance two
    g = GSet(("*",) * 4, "abcd", {0: (1, 0, 2, 3), 2: (0, 2, 1, 3)})
    assert "commutation" in {v.relation for v in validate_gset(g)}
    # a generator that does not fix the base word
    g = GSet(("a", "b"), "x", {0: (0,)})
    assert {v.relation for v in validate_gset(g)} == {"generator outside stabilizer"}
    # not a bijection
    g = GSet(("*", "*"), "ab", {0: (0, 0)})
    assert {v.relation for v in validate_gset(g)} == {"bijectivity"}


@st.composite
def random_valid_gsets(draw):
    """Unions of trivial, sign and regular orbits on a word of one or two colours."""
    n = draw(st.integers(0, 4))
    k = draw(st.integers(0, n))
    w = ("a",) * k + ("b",) * (n - k)
    elements, gens = [], {j: [] for j in range(n - 1) if w[j] == w[j + 1]}
    for part in range(draw(st.integers(1, 3))):
        kind = draw(st.sampled_from(["trivial", "sign", "regular"]))
        if kind == "regular":
            r = regular_gset(w, prefix=f"r{part}_")
            base = len(elements)
            elements.extend(r.elements)
            for j in gens:
                gens[j].extend(base + v for v in r.gens[j])
        elif kind == "sign" and gens:
            base = len(elements)
            elements.extend([f"s{part}+", f"s{part}-"])
            for j in gens:
                gens[j].extend([base + 1, base])
        else:
            elements.append(f"t{part}")
            for j in gens:
                gens[j].append(len(elements) - 1)
    return GSet(w, elements, gens)


@given(random_valid_gsets())
def test_burnside_matches_orbits(g):
    assert validate_gset(g) == []
    assert burnside_orbits(g) == len(g.orbits())


def test_from_names_and_errors():
    g = GSet.from_names(("*", "*"), ["x", "y"], {0: {"x": "y", "y": "x"}})
    assert g.act((1, 0), "x") == "y"
    with pytest.raises(GSetError):
        GSet.from_names(("*", "*"), ["x"], {0: {"x": "z"}})
    with pytest.raises(GSetError):
        GSet(("*",), ["x", "x"])
    with pytest.raises(GSetError):
        g.act((0, 1, 2), "x")
    with pytest.raises(GSetError):
        GSet(("*", "*"), "ab", {0: (0,)})


def test_orbit_min_respects_generator_subsets():
    g = regular_gset(("*",) * 3)
    i = len(g) - 1
    assert g.orbit_min(i) == 0
    sub = g.orbit_min(i, [0])
    assert g.elements[sub] in {g.elements[i], g.act(Permutation.transposition(3, 0), g.elements[i])}
