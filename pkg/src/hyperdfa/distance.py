"""State distances and distance forests.

``d(q, p)`` is 0 for equivalent states and otherwise
``1 + max_a d(delta(q, a), delta(p, a))``; an undefined transition leads
to the implicit empty-language state.  Equivalently ``d(q, p)`` is the
least ``l`` such that the right-languages agree on all words of length
at least ``l`` (infinity if there is none).
"""

from __future__ import annotations

from .acyclic import acyclic_distance_tree, build_acyclic
from .dfa import (
    INF,
    PARTIAL,
    TOTAL,
    Dfa,
    equivalence_classes,
    has_distinct_equivalent_states,
    live_states,
    longest_accepted,
)
from .errors import NotMinimalError, PreconditionError
from .forest import DistanceForest, compress
from .trie import TrieEngine

__all__ = [
    "DistanceTable",
    "DistanceForest",
    "distance_table",
    "build_distance_forest",
    "acyclic_distance_tree",
    "forest_lca_level",
]


class DistanceTable:
    """Symmetric matrix of distances; ``to_bottom[q]`` is d(q, empty language)."""

    def __init__(self, rows: list[list[float]], to_bottom: list[float], rounds: int):
        self.rows = rows
        self.to_bottom = to_bottom
        self.rounds = rounds

    def __call__(self, q: int, p: int) -> float:
        return self.rows[q][p]

    def __len__(self):
        return len(self.rows)

    def max_finite(self) -> int:
        return max((x for row in self.rows for x in row if x != INF), default=0)


def _union_find(n):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        x, y = find(x), find(y)
        if x != y:
            parent[max(x, y)] = min(x, y)

    return find, union


def distance_table(d: Dfa) -> DistanceTable:
    """All pairwise distances by iterated coarsening.

    Round ``l`` joins two states iff they are equivalent or their successor
    vectors agree on the classes of round ``l - 1``; the first round in
    which a pair is joined is its distance.  Works on any DFA (minimal or
    not); an extra empty-language state stands for undefined transitions.
    """
    n = d.num_states
    k = len(d.alphabet)
    bot = n
    ec = equivalence_classes(d)
    live = live_states(d)
    dead_ids = {ec[q] for q in range(n) if not live[q]}
    ec.append(dead_ids.pop() if dead_ids else max(ec, default=-1) + 1)
    succ = [[d.delta[q].get(a, bot) for a in range(k)] for q in range(n)] + [[bot] * k]

    size = n + 1
    rows = [[INF] * size for _ in range(size)]
    cls = ec
    members: dict[int, list[int]] = {}
    for q in range(size):
        members.setdefault(cls[q], []).append(q)
    for group in members.values():
        for q in group:
            for p in group:
                rows[q][p] = 0
    count = len(members)
    rounds = 0
    level = 0
    while True:
        level += 1
        find, union = _union_find(size)
        first_by_key: dict[tuple, int] = {}
        first_by_eq: dict[int, int] = {}
        for q in range(size):
            key = tuple(cls[t] for t in succ[q])
            r = first_by_key.setdefault(key, q)
            if r != q:
                union(r, q)
            r = first_by_eq.setdefault(ec[q], q)
            if r != q:
                union(r, q)
        new_cls = [find(q) for q in range(size)]
        new_members: dict[int, dict[int, list[int]]] = {}
        for q in range(size):
            new_members.setdefault(new_cls[q], {}).setdefault(cls[q], []).append(q)
        new_count = len(new_members)
        if new_count == count:
            break
        for parts in new_members.values():
            groups = list(parts.values())
            for i, g in enumerate(groups):
                for h in groups[i + 1:]:
                    for q in g:
                        for p in h:
                            rows[q][p] = rows[p][q] = level
        cls, count = new_cls, new_count
        rounds = level
    to_bottom = [rows[q][bot] for q in range(n)]
    return DistanceTable([row[:n] for row in rows[:n]], to_bottom, rounds)


def forest_lca_level(f: DistanceForest, q: int, p: int) -> float:
    return f.lca_level(q, p)


# ------------------------------------------------------------------ forests

def _total_forest(d: Dfa) -> DistanceForest:
    n, k = d.num_states, len(d.alphabet)
    eng = TrieEngine()
    for q in range(n):
        eng.add_key(q)
    for q in range(n):
        for a in range(k):
            eng.add_entry(d.delta[q][a])
    root = eng.new_trie(k)
    for q in range(n):
        eng.insert(root, [d.delta[q][a] for a in range(k)], q)
    eng.run()
    f = DistanceForest(eng.parent, eng.level, eng.leaf_state, n)
    f.stats.update(method=TOTAL, max_rewrites=eng.max_rewrites(), rewrites=eng.rewrites,
                   phases=eng.phases, trie_merges=eng.merges)
    return f


def _partial_forest(d: Dfa) -> DistanceForest:
    n = d.num_states
    m = longest_accepted(d)
    infinite = [x == INF for x in m]

    # finite part: every infinite state q is replaced by a copy q' that keeps
    # only the transitions into finite states; the copies are the $-keys
    finite_delta = tuple(
        {a: t for a, t in row.items() if not infinite[t]} for row in d.delta
    )
    finite_acc = frozenset(q for q in d.accepting if not infinite[q])
    aux = Dfa(d.alphabet, finite_delta, d.start, finite_acc, d.names)
    tree = build_acyclic(aux)

    eng = TrieEngine()
    for q in range(n):
        if infinite[q]:
            eng.add_key(q)
            eng.add_key(n + q)

    # key cell of every tree vertex; level-0 vertices merge before anything is inserted
    cell: list[int | None] = [None] * len(tree)
    events: dict[int, list] = {}
    ch = tree.children()
    order = tree.topological()
    for v in reversed(order):
        q = tree.leaf_state[v]
        if q is not None:
            cell[v] = n + q if infinite[q] else None
            continue
        if tree.level[v] == 0:
            cell[v] = eng.merge_keys(cell[c] for c in ch[v] if cell[c] is not None)
        else:
            def fire(v=v):
                cell[v] = eng.merge_keys(cell[c] for c in ch[v] if cell[c] is not None)
            events.setdefault(tree.level[v], []).append(fire)

    dollar = {}
    for q in range(n):
        if infinite[q]:
            v = tree.leaf_of[q]
            p = tree.parent[v]
            dollar[q] = cell[p] if p >= 0 and tree.level[p] == 0 else cell[v]

    by_sig: dict[tuple[int, ...], list[int]] = {}
    for q in range(n):
        if infinite[q]:
            sig = tuple(sorted(a for a, t in d.delta[q].items() if infinite[t]))
            by_sig.setdefault(sig, []).append(q)
    for sig, states in by_sig.items():
        root = eng.new_trie(len(sig) + 1)
        for q in states:
            vec = [d.delta[q][a] for a in sig] + [dollar[q]]
            for key in vec:
                eng.add_entry(key)
            eng.insert(root, vec, q)
    eng.run(events)

    keep_finite = compress(tree.parent, tree.level, tree.leaf_state,
                           lambda v: tree.leaf_state[v] is not None and not infinite[tree.leaf_state[v]])
    parent, level, leaf, _ = keep_finite
    off = len(parent)
    parent = parent + [p + off if p >= 0 else -1 for p in eng.parent]
    level = level + eng.level
    leaf = leaf + eng.leaf_state
    f = DistanceForest(parent, level, leaf, n)
    f.stats.update(method=PARTIAL, max_rewrites=eng.max_rewrites(), rewrites=eng.rewrites,
                   phases=getattr(eng, "phases", 0), trie_merges=eng.merges,
                   signatures=len(by_sig), finite_states=n - sum(infinite))
    return f


def build_distance_forest(d: Dfa, method: str = "auto") -> DistanceForest:
    """Distance forest of a DFA without distinct equivalent states.

    ``method`` is ``"total"`` (one trie over full successor vectors; the
    DFA must be total), ``"partial"`` (per-signature tries plus the
    finite-language tree) or ``"auto"`` (total iff the DFA is total).
    """
    if has_distinct_equivalent_states(d):
        raise NotMinimalError("distance forest needs a DFA without distinct equivalent states")
    if method == "auto":
        method = TOTAL if d.is_total() else PARTIAL
    if method == TOTAL:
        if not d.is_total():
            raise PreconditionError("method 'total' needs a total DFA")
        return _total_forest(d)
    if method == PARTIAL:
        return _partial_forest(d)
    raise ValueError(f"unknown method {method!r}")
