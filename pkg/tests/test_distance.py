import itertools
import math
import random

import pytest
from hypothesis import given, settings

from conftest import dfas
from hyperdfa import (
    INF,
    Dfa,
    NotMinimalError,
    PreconditionError,
    UnknownReferenceError,
    acyclic_distance_tree,
    build_distance_forest,
    distance_table,
    forest_lca_level,
    minimise,
)
from hyperdfa.dfa import longest_accepted
from hyperdfa.generate import random_acyclic_dfa, random_minimal_dfa, random_preamble_dfa
from hyperdfa.hardness import build_kmin_instance, complete_graph
from hyperdfa.oracle import bf_distance


def _pairs(n):
    return itertools.product(range(n), repeat=2)


@settings(max_examples=100, deadline=None)
@given(dfas(max_n=6, max_k=2))
def test_table_matches_definition(d):
    tab = distance_table(d)
    for q, p in _pairs(d.num_states):
        assert tab(q, p) == bf_distance(d, q, p)


@settings(max_examples=60, deadline=None)
@given(dfas(max_n=6, max_k=2))
def test_ultrametric_and_finiteness_bound(d):
    tab = distance_table(d)
    n = d.num_states
    for q, p, r in itertools.product(range(n), repeat=3):
        assert tab(q, r) <= max(tab(q, p), tab(p, r))
    for q, p in _pairs(n):
        assert tab(q, p) == tab(p, q)
        # the empty-language state is an extra state for partial DFAs
        assert tab(q, p) == INF or tab(q, p) <= (n - 1 if d.is_total() else n)


def test_partial_bound_needs_the_extra_state(chain):
    # two states, yet distance 2: the undefined transition acts as a third state
    assert distance_table(chain)(0, 1) == 2


@pytest.mark.parametrize("mode", ["partial", "total"])
def test_forest_matches_table(mode):
    rng = random.Random(17)
    for _ in range(120):
        k = rng.randint(1, 3)
        d = random_minimal_dfa(rng, 9, k, mode, density=rng.choice([1.0, 0.6]))
        tab = distance_table(d)
        f = build_distance_forest(d)
        f.check()
        for q, p in _pairs(d.num_states):
            assert forest_lca_level(f, q, p) == tab(q, p)


def test_forest_on_dfas_with_preambles():
    rng = random.Random(23)
    for _ in range(80):
        mode = rng.choice(["partial", "total"])
        d = minimise(random_preamble_dfa(rng, rng.randint(0, 3), rng.randint(3, 30), rng.randint(1, 3),
                                         density=rng.choice([1.0, 0.7])), mode)
        tab = distance_table(d)
        forests = [build_distance_forest(d)]
        if d.is_total():
            forests.append(build_distance_forest(d, method="partial"))
        for f in forests:
            f.check()
            for q, p in _pairs(d.num_states):
                assert f.lca_level(q, p) == tab(q, p)


def test_all_infinite_gives_singleton_trees():
    # a ring of period 3 with one accepting state: every pair differs forever
    d = Dfa.build("a", 3, [(0, 0, 1), (1, 0, 2), (2, 0, 0)], 0, [0])
    f = build_distance_forest(d)
    assert len(f.roots()) == 3 and len(f) == 3


def test_leaves_biject_with_states():
    rng = random.Random(2)
    d = random_minimal_dfa(rng, 8, 2)
    f = build_distance_forest(d)
    assert sorted(f.leaf_state[v] for v in f.leaf_of) == list(range(d.num_states))


def test_forest_needs_minimal_input():
    d = Dfa.build("a", 2, [(0, 0, 1), (1, 0, 1)], 0, [0, 1])
    with pytest.raises(NotMinimalError):
        build_distance_forest(d)
    with pytest.raises(PreconditionError):
        build_distance_forest(Dfa.build("ab", 2, [(0, 0, 1), (1, 0, 0)], 0, [1]), method="total")


def test_lca_level_rejects_unknown_state():
    d = Dfa.build("a", 1, [(0, 0, 0)], 0, [0])
    f = build_distance_forest(d)
    assert f.lca_level(0, 0) == 0
    with pytest.raises(UnknownReferenceError):
        f.lca_level(0, 5)


def test_rewrites_stay_logarithmic():
    rng = random.Random(5)
    for _ in range(40):
        d = random_minimal_dfa(rng, 200, rng.randint(1, 3), "total")
        n = d.num_states
        f = build_distance_forest(d)
        assert f.stats["max_rewrites"] <= max(0, math.ceil(math.log2(n)))


def test_dump_format():
    d = Dfa.build("a", 2, [(0, 0, 1)], 0, [1], names=["p", "q"])
    f = build_distance_forest(d)
    lines = f.dump(d.names).splitlines()
    assert len(lines) == len(f)
    for line in lines:
        fields = line.split()
        assert 4 <= len(fields) <= 5
        assert all(x.lstrip("-").isdigit() for x in fields[:4])


# ------------------------------------------------------------ acyclic trees

def test_single_accepting_state_and_bottom():
    d = Dfa.build("a", 1, [], 0, [0])
    f = acyclic_distance_tree(d)
    assert f.bottom is not None
    root = f.roots()[0]
    assert f.level[root] == 1
    assert sorted(f.children()[root]) == sorted([f.leaf_of[0], f.bottom])


def test_acyclic_tree_matches_table_and_longest_word_rule():
    rng = random.Random(31)
    for _ in range(150):
        n = rng.randint(1, 12)
        d = random_acyclic_dfa(rng, n, rng.randint(1, 3))
        tab = distance_table(d)
        m = longest_accepted(d)
        f = acyclic_distance_tree(d)
        f.check()
        for q, p in _pairs(n):
            assert f.lca_level(q, p) == tab(q, p)
            if m[q] != m[p]:
                assert tab(q, p) == max(m[q], m[p]) + 1


def test_acyclic_tree_rejects_cycles():
    with pytest.raises(PreconditionError):
        acyclic_distance_tree(Dfa.build("a", 1, [(0, 0, 0)], 0, [0]))


def test_gadget_instance_distance():
    inst = build_kmin_instance(complete_graph(3), 4, 17)
    d = inst.dfa
    idx = d.state_index
    tab = distance_table(d)
    assert tab(idx["smiley_0"], idx["frown"]) == 5
    for i in range(5):
        assert tab(idx[f"smiley_{i}"], idx["frown"]) == 4 - i + 1
