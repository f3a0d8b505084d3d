"""k-similarity, k-minimisation and hyper-minimisation.

Two states q, p are k-similar when
``d(q, p) + min(k, in_level(q), in_level(p)) <= k``.
A k-minimal DFA is a smallest DFA whose language differs from the input
only on words shorter than k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .dfa import INF, PARTIAL, TOTAL, Dfa, live_states, minimise, renumber_bfs, state_meta
from .distance import DistanceForest, DistanceTable, build_distance_forest, distance_table
from .errors import DfaError


def _sink(d: Dfa) -> int | None:
    """The empty-language state of a minimal total DFA, if there is one."""
    live = live_states(d)
    dead = [q for q in range(d.num_states) if not live[q]]
    return dead[0] if dead else None


def k_similar(d: Dfa, q: int, p: int, k: int, table: DistanceTable | None = None,
              levels=None) -> bool:
    if table is None:
        table = distance_table(d)
    if levels is None:
        levels = state_meta(d).in_level
    dist = table(q, p)
    if dist == INF:
        return False
    return dist + min(k, levels[q], levels[p]) <= k


def _rank(levels, sink):
    # merge order: larger in-level survives, the sink always survives, then lower id
    return lambda q: (q == sink, levels[q], -q)


def k_minimise_naive(d: Dfa, k: int, mode: str = PARTIAL) -> Dfa:
    """Merge k-similar pairs (relation computed once) until none remain."""
    m = minimise(d, mode)
    n = m.num_states
    table = distance_table(m)
    levels = state_meta(m).in_level
    sink = _sink(m) if mode == TOTAL else None
    rank = _rank(levels, sink)
    sim = [[k_similar(m, q, p, k, table, levels) for p in range(n)] for q in range(n)]
    target = list(range(n))
    alive = set(range(n))
    changed = True
    while changed:
        changed = False
        for q in sorted(alive):
            for p in sorted(alive):
                if q != p and sim[q][p]:
                    lo, hi = (q, p) if rank(q) < rank(p) else (p, q)
                    for r in range(n):
                        if target[r] == lo:
                            target[r] = hi
                    alive.discard(lo)
                    changed = True
                    break
            if changed:
                break
    return _quotient_onto(m, target)


def _quotient_onto(m: Dfa, target: list[int]) -> Dfa:
    """Keep the states with target[q] == q and redirect every transition through target."""
    keep = [q for q in range(m.num_states) if target[q] == q]
    new = {q: i for i, q in enumerate(keep)}
    delta = tuple({a: new[target[t]] for a, t in m.delta[q].items()} for q in keep)
    out = Dfa(m.alphabet, delta, new[target[m.start]],
              frozenset(new[q] for q in keep if q in m.accepting), tuple(m.names[q] for q in keep))
    return renumber_bfs(out)


# ------------------------------------------------------------ values table

@dataclass
class ValuesTable:
    label: list[int]  # per forest vertex
    submit_state: list[int | None]  # per state, None for root labels
    submit_depth: list[float]  # per state, INF for root labels
    values: list[float]  # per state
    in_level: tuple

    def size(self, k: int) -> int:
        return sum(1 for v in self.values if v > k)

    def k_ancestors(self, k: int) -> list[int]:
        """k-ancestor state of every state (itself when values(q) > k)."""
        n = len(self.values)
        anc = [-1] * n
        for q in range(n):
            chain = []
            r = q
            while anc[r] == -1 and self.values[r] <= k:
                chain.append(r)
                r = self.submit_state[r]
            top = anc[r] if anc[r] != -1 else r
            for x in chain:
                anc[x] = top
            anc[r] = top
        return anc


def compute_values(d: Dfa, f: DistanceForest, meta=None, sink: int | None = None) -> ValuesTable:
    if f.num_states != d.num_states:
        raise DfaError("forest and DFA disagree on the number of states")
    if meta is None:
        meta = state_meta(d)
    levels = meta.in_level
    rank = _rank(levels, sink)
    nv = len(f)
    label = [-1] * nv
    order = f.topological()
    # bottom-up: an inner vertex takes the best label among its children
    for v in reversed(order):
        q = f.leaf_state[v]
        if q is not None:
            label[v] = q
        p = f.parent[v]
        if p >= 0 and label[v] != -1 and (label[p] == -1 or rank(label[v]) > rank(label[p])):
            label[p] = label[v]
    n = d.num_states
    submit_state: list[int | None] = [None] * n
    submit_depth: list[float] = [INF] * n
    for v in order:
        p = f.parent[v]
        if p >= 0 and label[p] != label[v]:
            q = label[v]
            submit_state[q] = label[p]
            submit_depth[q] = f.level[p]
    values = [levels[q] + submit_depth[q] for q in range(n)]
    return ValuesTable(label, submit_state, submit_depth, values, levels)


def _prepare(d: Dfa, mode: str):
    m = minimise(d, mode)
    meta = state_meta(m)
    f = build_distance_forest(m)
    sink = _sink(m) if mode == TOTAL else None
    return m, meta, f, compute_values(m, f, meta, sink)


def sizes_for_all_k(d: Dfa, mode: str = PARTIAL) -> list[int]:
    """Size of a k-minimal DFA for every k in 0..2n (n = states of the minimal DFA)."""
    m, _, _, vt = _prepare(d, mode)
    n = m.num_states
    top = 2 * n
    bucket = [0] * (top + 2)  # counting sort on values, INF in the last slot
    for v in vt.values:
        bucket[top + 1 if v == INF or v > top else int(v)] += 1
    sizes = []
    remaining = n
    for k in range(top + 1):
        remaining -= bucket[k]
        sizes.append(remaining)
    return sizes


def merge_to_ancestors(m: Dfa, vt: ValuesTable, k: int) -> Dfa:
    anc = vt.k_ancestors(k)
    return _quotient_onto(m, anc)


def k_minimise(d: Dfa, k: int, mode: str = PARTIAL) -> Dfa:
    """k-minimal DFA k-similar to d: merge every state into its k-ancestor."""
    m, _, _, vt = _prepare(d, mode)
    return merge_to_ancestors(m, vt, k)


def hyper_minimise(d: Dfa, mode: str = PARTIAL) -> Dfa:
    m = minimise(d, mode)
    return k_minimise(m, 2 * m.num_states, mode)


# ------------------------------------------------------------ all-k sweep

class _Row:
    """One live state of the sweep: outgoing transitions plus incoming entries."""

    __slots__ = ("name", "out", "incoming", "rank")

    def __init__(self, name):
        self.name = name
        self.out: dict[int, "_Row"] = {}
        self.incoming: list[tuple[dict, int]] = []
        self.rank = 1


class SweepPhase:
    def __init__(self, sweep: "_Sweep", k: int):
        self._sweep = sweep
        self.k = k
        self.num_states = len(sweep.rows)

    def to_dfa(self) -> Dfa:
        if self._sweep.k != self.k:
            raise DfaError("phase is no longer current; materialise before advancing")
        return self._sweep.to_dfa()


class _Sweep:
    def __init__(self, m: Dfa, vt: ValuesTable):
        self.m = m
        self.vt = vt
        self.rows: dict[int, _Row] = {q: _Row(q) for q in range(m.num_states)}
        for q, row in enumerate(m.delta):
            src = self.rows[q].out
            for a, t in row.items():
                tgt = self.rows[t]
                src[a] = tgt
                tgt.incoming.append((src, a))
        self.start = self.rows[m.start]
        self.k = 0
        self.rewrites = 0
        self.up: dict[int, int] = {}  # merged state -> state it went to

    def merge(self, p: int, q: int):
        """Merge state p into state q."""
        rp, rq = self.rows.pop(p), self.rows[q]
        if rp.rank <= rq.rank:
            for src, a in rp.incoming:
                src[a] = rq
            self.rewrites += len(rp.incoming)
            rq.incoming.extend(rp.incoming)
            rq.rank += rp.rank
            if self.start is rp:
                self.start = rq
            return
        # p's record is larger: point q's incoming entries at it and let it carry q
        for src, a in rq.incoming:
            src[a] = rp
        self.rewrites += len(rq.incoming)
        rp.incoming.extend(rq.incoming)
        rp.out = rq.out
        # the outgoing dict now belongs to rp, entries keyed by (dict, a) stay valid
        rp.name = q
        rp.rank += rq.rank
        self.rows[q] = rp
        if self.start is rq:
            self.start = rp

    def advance(self, k: int):
        """Merge every state with values(q) == k into its k-ancestor."""
        self.k = k
        values, submit, up = self.vt.values, self.vt.submit_state, self.up

        def find(s):
            path = []
            while values[s] <= k:
                path.append(s)
                s = up.get(s, submit[s])
            for x in path:
                up[x] = s
            return s

        for q in [q for q in self.rows if values[q] == k]:
            self.merge(q, find(q))

    def to_dfa(self) -> Dfa:
        m = self.m
        keep = sorted(self.rows)
        new = {q: i for i, q in enumerate(keep)}
        delta = tuple({a: new[t.name] for a, t in self.rows[q].out.items()} for q in keep)
        out = Dfa(m.alphabet, delta, new[self.start.name],
                  frozenset(new[q] for q in keep if q in m.accepting), tuple(m.names[q] for q in keep))
        return renumber_bfs(out)


def all_k_sweep(d: Dfa, mode: str = PARTIAL) -> Iterator[tuple[int, SweepPhase]]:
    """Yield ``(k, phase)`` for k = 0..2n; ``phase.to_dfa()`` materialises the k-minimal DFA.

    One DFA is updated in place from phase to phase, so a phase must be
    materialised before the generator is advanced.
    """
    m, _, _, vt = _prepare(d, mode)
    sweep = _Sweep(m, vt)
    for k in range(2 * m.num_states + 1):
        if k:
            sweep.advance(k)
        yield k, SweepPhase(sweep, k)
