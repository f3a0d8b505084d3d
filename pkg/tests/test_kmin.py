import itertools

import pytest
from hypothesis import given, settings

from conftest import dfas, mixed_kmin_corpus
from hyperdfa import INF, build_distance_forest, count_symdiff, minimise, similarity_bound, state_meta
from hyperdfa.dfa import TOTAL
from hyperdfa.errors import DfaError
from hyperdfa.hardness import build_kmin_instance, complete_graph
from hyperdfa.kmin import (
    all_k_sweep,
    compute_values,
    hyper_minimise,
    k_minimise,
    k_minimise_naive,
    k_similar,
    sizes_for_all_k,
)
from hyperdfa.oracle import bf_k_similar, greedy_max_dissimilar
from hyperdfa.product import agrees_from


@settings(max_examples=80, deadline=None)
@given(dfas(max_n=6))
def test_k_similar_matches_definition(d):
    m = minimise(d)
    n = m.num_states
    for k in range(2 * n + 1):
        for q, p in itertools.product(range(n), repeat=2):
            assert k_similar(m, q, p, k) == bf_k_similar(m, q, p, k)


def test_sizes_agree_across_methods():
    for d, mode in mixed_kmin_corpus(41, 80):
        m = minimise(d, mode)
        n = m.num_states
        sizes = sizes_for_all_k(d, mode)
        assert sizes[0] == n
        assert all(x >= y for x, y in zip(sizes, sizes[1:]))
        phases = [(k, ph.num_states, ph.to_dfa()) for k, ph in all_k_sweep(d, mode)]
        for k in range(2 * n + 1):
            fast = k_minimise(d, k, mode)
            row = {fast.num_states, k_minimise_naive(d, k, mode).num_states, sizes[k],
                   len(greedy_max_dissimilar(m, k)), phases[k][1], phases[k][2].num_states}
            assert row == {sizes[k]}
            assert similarity_bound(d, fast) <= k
            assert agrees_from(d, phases[k][2], k)


def test_k_zero_is_plain_minimisation():
    for d, mode in mixed_kmin_corpus(3, 30):
        assert k_minimise(d, 0, mode).structurally_equal(minimise(d, mode))


def test_hyper_minimise_is_finite_and_smallest():
    for d, mode in mixed_kmin_corpus(8, 60):
        h = hyper_minimise(d, mode)
        assert similarity_bound(d, h) < INF
        assert h.num_states == sizes_for_all_k(d, mode)[-1]


def test_values_table_invariants():
    for d, mode in mixed_kmin_corpus(13, 60):
        m = minimise(d, mode)
        f = build_distance_forest(m)
        vt = compute_values(m, f)
        roots = {vt.label[r] for r in f.roots()}
        assert {q for q, v in enumerate(vt.values) if v == INF} == roots
        for k in range(2 * m.num_states + 1):
            for q in range(m.num_states):
                if vt.values[q] <= k:
                    # q is k-similar to every label on the way up from its submit node
                    r = vt.submit_state[q]
                    while True:
                        assert k_similar(m, q, r, k)
                        if vt.submit_state[r] is None:
                            break
                        r = vt.submit_state[r]


def test_preamble_counterexample_sizes(preamble_example):
    d = preamble_example
    assert k_minimise(d, 8).num_states == 2
    assert sizes_for_all_k(d)[8] == 2


def test_sweep_phase_expires():
    d = build_kmin_instance(complete_graph(3), 4, 17).dfa
    sweep = all_k_sweep(d)
    _, first = next(sweep)
    next(sweep)
    with pytest.raises(DfaError):
        first.to_dfa()


def test_gadget_instance_similarity_structure():
    # k-similarity among the core states of the k-min instance
    d = build_kmin_instance(complete_graph(3), 4, 17).dfa
    idx = d.state_index
    k = 17
    roots = ["1_0", "2_0", "3_0"]
    verts = ["v1", "v2", "v3"]
    for i, v in itertools.product(roots, verts):
        assert k_similar(d, idx[i], idx[v], k)
    for v, w in itertools.product(verts, repeat=2):
        assert k_similar(d, idx[v], idx[w], k)
    for i, j in itertools.combinations(roots, 2):
        assert not k_similar(d, idx[i], idx[j], k)
    assert k_similar(d, idx["bsmiley"], idx["smiley_0"], k)
    assert k_similar(d, idx["bsmiley"], idx["frown"], k)
    meta = state_meta(d)
    assert meta.in_level[idx["bsmiley"]] == 12


def test_kmin_error_count_on_small_case():
    d = build_kmin_instance(complete_graph(3), 4, 17).dfa
    out = k_minimise(d, 17, TOTAL)
    assert similarity_bound(d, out) <= 17
    assert count_symdiff(d, out).errors > 0


def test_states_above_horizon_are_pairwise_dissimilar():
    for d, mode in mixed_kmin_corpus(17, 60):
        m = minimise(d, mode)
        vt = compute_values(m, build_distance_forest(m))
        for k in range(2 * m.num_states + 1):
            kept = [q for q, v in enumerate(vt.values) if v > k]
            for q, p in itertools.combinations(kept, 2):
                assert not k_similar(m, q, p, k)
