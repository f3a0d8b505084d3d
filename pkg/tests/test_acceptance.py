"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected into ``RESULTS`` and echoed in the pytest
terminal summary (see conftest.py), so ``pytest -v`` shows them without -s.
"""

import itertools
import math
import random
import time

import pytest

import test_hardness as gadgets
from hyperdfa import (
    INF,
    acyclic_distance_tree,
    build_distance_forest,
    count_symdiff,
    distance_table,
    forest_lca_level,
    minimise,
    similarity_bound,
    trim,
)
from hyperdfa.dfa import TOTAL, is_minimal, longest_accepted
from hyperdfa.generate import (
    random_acyclic_dfa,
    random_dfa,
    random_heap_dfa,
    random_minimal_dfa,
    random_preamble_dfa,
    random_reachable_dfa,
)
from hyperdfa.hardness import (
    build_hyper_colored,
    build_hyper_instance,
    build_kmin_colored,
    build_kmin_instance,
    check_kmin_params,
    complete_graph,
    cycle_graph,
    kmin_error_bounds,
    pairwise_dissimilar,
    petersen_graph,
)
from hyperdfa.kmin import k_minimise, k_minimise_naive, sizes_for_all_k
from hyperdfa.oracle import bf_distance, bf_minimal_size, count_symdiff_words, greedy_max_dissimilar
from hyperdfa.product import agrees_from

RESULTS: list[str] = []


def report(num, ok, detail):
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _distance_corpus():
    rng = random.Random(2002)
    out = []
    for _ in range(500):
        mode = rng.choice(["partial", "total"])
        out.append(random_minimal_dfa(rng, 10, rng.randint(1, 3), mode, density=rng.choice([1.0, 0.7])))
    return out


def _kmin_corpus():
    # minimal sizes spread evenly over 1..8; half the DFAs have a preamble
    rng = random.Random(5005)
    out = []
    while len(out) < 300:
        target = len(out) % 8 + 1
        mode = rng.choice(["partial", "total"])
        k, density = rng.randint(1, 2), rng.choice([1.0, 0.7])
        if rng.random() < 0.5:
            d = random_dfa(rng, rng.randint(target, 10), k, density=density)
        else:
            d = random_preamble_dfa(rng, rng.randint(1, 3), rng.randint(1, 7), k, density=density)
        if minimise(d, mode).num_states == target:
            out.append((d, mode))
    return out


def test_criterion_01_minimisation_oracle():
    rng = random.Random(1001)
    start = time.perf_counter()
    bad = 0
    for _ in range(500):
        d = trim(random_dfa(rng, rng.randint(1, 8), rng.randint(1, 3), density=rng.choice([1.0, 0.7])))
        bad += minimise(d).num_states != bf_minimal_size(d)
    secs = time.perf_counter() - start
    report(1, bad == 0 and secs < 30, f"500 trimmed DFAs, {bad} mismatches, {secs:.1f}s (limit 30s)")


def test_criterion_02_distance_forest():
    start = time.perf_counter()
    bad = pairs = inf_pairs = 0
    for d in _distance_corpus():
        tab = distance_table(d)
        f = build_distance_forest(d)
        for q, p in itertools.product(range(d.num_states), repeat=2):
            a, b, c = forest_lca_level(f, q, p), tab(q, p), bf_distance(d, q, p)
            pairs += 1
            inf_pairs += c == INF
            bad += not (a == b == c)
    secs = time.perf_counter() - start
    report(2, bad == 0 and secs < 60,
           f"500 minimal DFAs, {pairs} pairs ({inf_pairs} infinite), {bad} mismatches, {secs:.1f}s (limit 60s)")


def test_criterion_03_finiteness_bound():
    # the bound n - 1 holds for total DFAs; a partial DFA has the empty-language
    # state as an extra class, so there the bound is n (see the chain example)
    total_bad = partial_bad = at_n = 0
    for d in _distance_corpus():
        n = d.num_states
        tab = distance_table(d)
        limit = n - 1 if d.is_total() else n
        for q, p in itertools.combinations(range(n), 2):
            dist = tab(q, p)
            if dist == INF:
                continue
            if d.is_total():
                total_bad += dist > limit
            else:
                partial_bad += dist > limit
                at_n += dist == n
    report(3, total_bad == partial_bad == 0,
           f"total DFAs: {total_bad} distances > n-1; partial DFAs: {partial_bad} distances > n "
           f"({at_n} pairs reach exactly n)")


def test_criterion_04_acyclic_tree():
    rng = random.Random(4004)
    bad = 0
    for _ in range(300):
        d = random_acyclic_dfa(rng, rng.randint(1, 12), rng.randint(1, 3))
        tab = distance_table(d)
        m = longest_accepted(d)
        f = acyclic_distance_tree(d)
        for q, p in itertools.product(range(d.num_states), repeat=2):
            lvl = f.lca_level(q, p)
            bad += lvl != tab(q, p)
            if m[q] != m[p]:
                bad += lvl != max(m[q], m[p]) + 1
    report(4, bad == 0, f"300 acyclic DFAs, {bad} mismatches")


def test_criterion_05_four_way_sizes():
    start = time.perf_counter()
    bad = rows = 0
    for d, mode in _kmin_corpus():
        m = minimise(d, mode)
        sizes = sizes_for_all_k(d, mode)
        for k in range(2 * m.num_states + 1):
            got = (k_minimise(d, k, mode).num_states, k_minimise_naive(d, k, mode).num_states,
                   sizes[k], len(greedy_max_dissimilar(m, k)))
            rows += 1
            bad += len(set(got)) != 1
    secs = time.perf_counter() - start
    report(5, bad == 0 and secs < 120, f"300 DFAs, {rows} (DFA, k) rows, {bad} disagreements, {secs:.1f}s (limit 120s)")


def test_criterion_06_outputs_are_k_similar():
    bad = rows = 0
    for d, mode in _kmin_corpus():
        for k in range(2 * minimise(d, mode).num_states + 1):
            out = k_minimise(d, k, mode)
            rows += 1
            bad += not agrees_from(d, out, k) or similarity_bound(d, out) > k
    report(6, bad == 0, f"{rows} outputs, {bad} not k-similar")


HYPER_CASES = [
    ("K3", complete_graph(3), {"1": 1, "2": 2, "3": 3}),
    ("C5", cycle_graph(5), {"1": 1, "2": 2, "3": 1, "4": 2, "5": 3}),
    ("Petersen", petersen_graph(),
     {"1": 1, "2": 2, "3": 1, "4": 2, "5": 3, "6": 2, "7": 1, "8": 3, "9": 3, "10": 2}),
]


def test_criterion_07_hyper_family():
    start = time.perf_counter()
    notes, ok = [], True
    for name, g, c in HYPER_CASES:
        inst = build_hyper_instance(g)
        colored = build_hyper_colored(g, c)
        count = count_symdiff(inst.dfa, colored)
        expected = len(g.edges) * (len(g.vertices) - 2)
        ok &= (inst.dfa.num_states == 14 + len(g.vertices) and is_minimal(inst.dfa, TOTAL)
               and colored.num_states == 14 and count.errors == expected
               and count.finite and count.max_error_len is not None)
        notes.append(f"{name} {count.errors}/{expected}")
    secs = time.perf_counter() - start
    report(7, ok and secs < 10, f"errors {', '.join(notes)}, {secs:.1f}s (limit 10s)")


def test_criterion_08_kmin_family():
    start = time.perf_counter()
    g, s, k = complete_graph(3), 4, 17
    check_kmin_params(g, s, k)
    lo, hi = kmin_error_bounds(g, s)
    inst = build_kmin_instance(g, s, k)
    colored = build_kmin_colored(g, {"1": 1, "2": 2, "3": 3}, s, k)
    bound = similarity_bound(inst.dfa, colored)
    errors = count_symdiff(inst.dfa, colored).errors
    # independent count over all words up to the longest possible error
    independent = count_symdiff_words(inst.dfa, colored, bound + 2)
    dissimilar = pairwise_dissimilar(colored, k)
    secs = time.perf_counter() - start
    ok = (lo, hi) == (456, 552) and bound <= k and lo <= errors <= hi and errors == independent and dissimilar
    report(8, ok and secs < 30,
           f"bounds [{lo}, {hi}], errors {errors} (independent {independent}), similarity bound {bound}, "
           f"pairwise dissimilar {dissimilar}, {secs:.1f}s (limit 30s)")


def test_criterion_09_gadget_contracts():
    gadgets.test_congruence_gadget_contracts()
    gadgets.test_inlevel_gadget_contracts()
    report(9, True, "congruence ring (i), (ii), (iv) and in-level chain on 50 hosts each")


def _log_bound_corpus(rng):
    # uniform DFAs rarely rewrite anything; trees and preambles feeding a core do
    n, k = rng.randint(2, 256), rng.randint(1, 3)
    return rng.choice([
        lambda: random_dfa(rng, n, k),
        lambda: random_heap_dfa(rng, n, k, core=rng.randint(1, 6)),
        lambda: random_preamble_dfa(rng, rng.randint(1, 4), n - 4, k) if n > 5 else random_dfa(rng, n, k),
        lambda: random_acyclic_dfa(rng, n, k, density=1.0),
    ])()


def test_criterion_10_log_bound():
    rng = random.Random(1010)
    bad = worst = 0
    for _ in range(120):
        d = minimise(_log_bound_corpus(rng), TOTAL)
        n = d.num_states
        f = build_distance_forest(d)
        rewrites = f.stats["max_rewrites"]
        worst = max(worst, rewrites)
        bad += rewrites > max(0, math.ceil(math.log2(n)))
    report(10, bad == 0, f"120 total DFAs up to 256 states, {bad} violations, max rewrites {worst}")


@pytest.mark.slow
def test_criterion_11_performance():
    d = minimise(random_reachable_dfa(random.Random(11), 100_000, 2), TOTAL)
    start = time.perf_counter()
    out = k_minimise(d, 10, TOTAL)
    secs = time.perf_counter() - start
    report(11, secs < 60, f"n={d.num_states}, k=10 -> {out.num_states} states in {secs:.1f}s (limit 60s)")
