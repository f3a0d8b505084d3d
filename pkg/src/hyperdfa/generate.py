"""Random DFA generators for tests and benchmarks."""

from __future__ import annotations

import random

from .dfa import PARTIAL, Dfa, minimise


def _alphabet(k: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(k)] if k <= 26 else [f"s{i}" for i in range(k)]


def random_dfa(rng: random.Random, n: int, k: int, density: float = 1.0,
               accept_prob: float = 0.5) -> Dfa:
    """Uniform random DFA; each transition is defined with probability ``density``."""
    trans = [(q, a, rng.randrange(n)) for q in range(n) for a in range(k) if rng.random() < density]
    acc = [q for q in range(n) if rng.random() < accept_prob]
    return Dfa.build(_alphabet(k), n, trans, 0, acc)


def random_acyclic_dfa(rng: random.Random, n: int, k: int, density: float = 0.7,
                       accept_prob: float = 0.5) -> Dfa:
    """Random DFA whose transitions only go from lower to higher ids (no cycles)."""
    trans = [(q, a, rng.randrange(q + 1, n)) for q in range(n - 1) for a in range(k)
             if rng.random() < density]
    acc = [q for q in range(n) if rng.random() < accept_prob]
    return Dfa.build(_alphabet(k), n, trans, 0, acc)


def random_minimal_dfa(rng: random.Random, max_n: int, k: int, mode: str = PARTIAL,
                       density: float = 1.0, tries: int = 50) -> Dfa:
    """Minimise random DFAs until one with at least two states turns up."""
    d = None
    for _ in range(tries):
        n = rng.randint(1, max_n)
        d = minimise(random_dfa(rng, n, k, density), mode)
        if d.num_states >= 2:
            return d
    return d


def random_reachable_dfa(rng: random.Random, n: int, k: int = 2, accept_prob: float = 0.5) -> Dfa:
    """Random total DFA in which every state is reachable.

    A k-ary heap over the ids provides a spanning tree from state 0; all
    other transitions are uniform.
    """
    trans = []
    for q in range(n):
        for a in range(k):
            child = q * k + a + 1
            trans.append((q, a, child if child < n else rng.randrange(n)))
    acc = [q for q in range(n) if rng.random() < accept_prob]
    return Dfa.build(_alphabet(k), n, trans, 0, acc)


def random_graph(rng: random.Random, nv: int, p: float = 0.5) -> list[tuple[str, str]]:
    return [(str(i), str(j)) for i in range(1, nv + 1) for j in range(i + 1, nv + 1) if rng.random() < p]


def random_preamble_dfa(rng: random.Random, core: int, extra: int, k: int,
                        density: float = 1.0, accept_prob: float = 0.5) -> Dfa:
    """Small random core plus an acyclic layer of ``extra`` states feeding into it.

    Extra state ``i`` only moves to states with smaller ids, and the start
    is the last state, so many pairs end up at finite distance.
    """
    n = core + extra
    trans = []
    for q in range(n):
        hi = core if q < core else q
        for a in range(k):
            if hi and rng.random() < density:
                trans.append((q, a, rng.randrange(hi)))
    acc = [q for q in range(n) if rng.random() < accept_prob]
    return Dfa.build(_alphabet(k), n, trans, n - 1, acc)


def random_heap_dfa(rng: random.Random, n: int, k: int = 2, core: int = 4,
                    accept_prob: float = 0.5) -> Dfa:
    """Total DFA: a complete k-ary tree of states whose leaves fall into a small random core.

    Every state is reachable and most tree states have pairwise distinct
    right-languages, while the tiny core makes finite distances common.
    """
    core = max(1, min(core, n - 1))
    trans = [(q, a, rng.randrange(core)) for q in range(core) for a in range(k)]
    for i in range(core, n):
        h = i - core
        for a in range(k):
            child = h * k + a + 1 + core
            trans.append((i, a, child if child < n else rng.randrange(core)))
    acc = [q for q in range(n) if rng.random() < accept_prob]
    return Dfa.build(_alphabet(k), n, trans, core if n > core else 0, acc)
