"""Deterministic finite automata with partial transition functions.

States are dense integers ``0..n-1``; every state also carries a display
name used by the text format.  Symbols are addressed by their index into
``Dfa.alphabet``.  All operations return new objects.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    DeterminismError,
    DfaError,
    DfaFormatError,
    PreconditionError,
    UnknownReferenceError,
)

INF = math.inf

PARTIAL = "partial"
TOTAL = "total"


@dataclass(frozen=True, eq=False)
class Dfa:
    alphabet: tuple[str, ...]
    delta: tuple[dict[int, int], ...]
    start: int
    accepting: frozenset[int]
    names: tuple[str, ...]

    def __post_init__(self):
        n = len(self.delta)
        if len(self.names) != n:
            raise DfaError("one name per state required")
        if len(set(self.names)) != n:
            raise DfaError("state names must be unique")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise DfaError("alphabet symbols must be unique")
        if not 0 <= self.start < n:
            raise UnknownReferenceError(f"start state {self.start} out of range")
        for q in self.accepting:
            if not 0 <= q < n:
                raise UnknownReferenceError(f"accepting state {q} out of range")
        k = len(self.alphabet)
        for row in self.delta:
            for a, t in row.items():
                if not 0 <= a < k or not 0 <= t < n:
                    raise UnknownReferenceError("transition endpoint out of range")

    @classmethod
    def build(cls, alphabet: Sequence[str], n: int, transitions: Iterable[tuple[int, int, int]],
              start: int = 0, accepting: Iterable[int] = (), names: Sequence[str] | None = None) -> "Dfa":
        """Build from ``(src, symbol_index, dst)`` triples."""
        delta: list[dict[int, int]] = [{} for _ in range(n)]
        for src, a, dst in transitions:
            if a in delta[src] and delta[src][a] != dst:
                raise DeterminismError(f"two targets for ({src}, {alphabet[a]})")
            delta[src][a] = dst
        if names is None:
            names = [f"q{i}" for i in range(n)]
        return cls(tuple(alphabet), tuple(delta), start, frozenset(accepting), tuple(names))

    @property
    def num_states(self) -> int:
        return len(self.delta)

    @property
    def size(self) -> int:
        """Number of defined transitions."""
        return sum(len(row) for row in self.delta)

    @cached_property
    def symbol_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.alphabet)}

    @cached_property
    def state_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.names)}

    def is_total(self) -> bool:
        k = len(self.alphabet)
        return all(len(row) == k for row in self.delta)

    def transitions(self) -> Iterator[tuple[int, int, int]]:
        for q, row in enumerate(self.delta):
            for a in sorted(row):
                yield q, a, row[a]

    def run(self, word: Sequence[str], state: int | None = None) -> int | None:
        """State reached from ``state`` (default: start) by ``word``, or None."""
        q = self.start if state is None else state
        idx = self.symbol_index
        for sym in word:
            a = idx.get(sym)
            if a is None:
                return None
            q = self.delta[q].get(a)
            if q is None:
                return None
        return q

    def accepts(self, word: Sequence[str], state: int | None = None) -> bool:
        q = self.run(word, state)
        return q is not None and q in self.accepting

    def with_start(self, q: int) -> "Dfa":
        return Dfa(self.alphabet, self.delta, q, self.accepting, self.names)

    def predecessors(self) -> list[list[tuple[int, int]]]:
        preds: list[list[tuple[int, int]]] = [[] for _ in self.delta]
        for q, row in enumerate(self.delta):
            for a, t in row.items():
                preds[t].append((q, a))
        return preds

    def structurally_equal(self, other: "Dfa") -> bool:
        return (self.alphabet == other.alphabet and self.names == other.names
                and self.delta == other.delta and self.start == other.start
                and self.accepting == other.accepting)

    def __repr__(self):
        return (f"Dfa(states={self.num_states}, alphabet={len(self.alphabet)}, "
                f"transitions={self.size})")


# ---------------------------------------------------------------- text I/O

def parse_dfa(text: str) -> Dfa:
    alphabet: list[str] | None = None
    states: list[str] | None = None
    start: tuple[str, int] | None = None
    accept: list[tuple[str, int]] = []
    trans: list[tuple[str, str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, rest = body.partition(":")
        if not sep:
            raise DfaFormatError(f"expected 'key: value', got {body!r}", lineno)
        key = key.strip()
        toks = rest.split()
        if key == "alphabet":
            if alphabet is not None:
                raise DfaFormatError("duplicate alphabet line", lineno)
            alphabet = toks
        elif key == "states":
            if states is not None:
                raise DfaFormatError("duplicate states line", lineno)
            states = toks
        elif key == "start":
            if len(toks) != 1:
                raise DfaFormatError("start needs exactly one state", lineno)
            if start is not None:
                raise DfaFormatError("duplicate start line", lineno)
            start = (toks[0], lineno)
        elif key == "accept":
            accept.extend((t, lineno) for t in toks)
        elif key == "trans":
            if len(toks) != 3:
                raise DfaFormatError("trans needs 'src symbol dst'", lineno)
            trans.append((toks[0], toks[1], toks[2], lineno))
        else:
            raise DfaFormatError(f"unknown section {key!r}", lineno)
    if alphabet is None:
        raise DfaFormatError("missing alphabet line")
    if states is None:
        raise DfaFormatError("missing states line")
    if start is None:
        raise DfaFormatError("missing start line")
    if len(set(states)) != len(states):
        raise DfaFormatError("duplicate state name")
    if len(set(alphabet)) != len(alphabet):
        raise DfaFormatError("duplicate alphabet symbol")
    sidx = {s: i for i, s in enumerate(states)}
    aidx = {a: i for i, a in enumerate(alphabet)}

    def state(name, lineno):
        try:
            return sidx[name]
        except KeyError:
            raise UnknownReferenceError(f"unknown state {name!r}", lineno) from None

    delta: list[dict[int, int]] = [{} for _ in states]
    for src, sym, dst, lineno in trans:
        q, t = state(src, lineno), state(dst, lineno)
        if sym not in aidx:
            raise UnknownReferenceError(f"unknown symbol {sym!r}", lineno)
        a = aidx[sym]
        if a in delta[q]:
            raise DeterminismError(f"second transition for ({src}, {sym})", lineno)
        delta[q][a] = t
    acc = frozenset(state(name, lineno) for name, lineno in accept)
    return Dfa(tuple(alphabet), tuple(delta), state(*start), acc, tuple(states))


def _line(key: str, toks: Iterable[str]) -> str:
    return " ".join([key + ":", *toks])


def serialize_dfa(d: Dfa) -> str:
    lines = [
        _line("alphabet", d.alphabet),
        _line("states", d.names),
        _line("start", [d.names[d.start]]),
        _line("accept", (d.names[q] for q in sorted(d.accepting))),
    ]
    lines.extend(f"trans: {d.names[q]} {d.alphabet[a]} {d.names[t]}" for q, a, t in d.transitions())
    return "\n".join(lines) + "\n"


def to_dot(d: Dfa) -> str:
    out = ["digraph dfa {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q, name in enumerate(d.names):
        shape = "doublecircle" if q in d.accepting else "circle"
        out.append(f'  n{q} [shape={shape}, label="{name}"];')
    out.append(f"  __start -> n{d.start};")
    edges: dict[tuple[int, int], list[str]] = {}
    for q, a, t in d.transitions():
        edges.setdefault((q, t), []).append(d.alphabet[a])
    for (q, t), syms in sorted(edges.items()):
        out.append(f'  n{q} -> n{t} [label="{",".join(syms)}"];')
    out.append("}")
    return "\n".join(out) + "\n"


# -------------------------------------------------------- structural ops

def reachable_states(d: Dfa) -> list[bool]:
    seen = [False] * d.num_states
    seen[d.start] = True
    stack = [d.start]
    while stack:
        q = stack.pop()
        for t in d.delta[q].values():
            if not seen[t]:
                seen[t] = True
                stack.append(t)
    return seen


def live_states(d: Dfa) -> list[bool]:
    """States whose right-language is non-empty."""
    preds = d.predecessors()
    live = [False] * d.num_states
    stack = list(d.accepting)
    for q in stack:
        live[q] = True
    while stack:
        q = stack.pop()
        for p, _ in preds[q]:
            if not live[p]:
                live[p] = True
                stack.append(p)
    return live


def restrict(d: Dfa, keep: Sequence[bool]) -> Dfa:
    """Sub-automaton on the kept states (start must be kept), order preserved."""
    new_id = {}
    for q in range(d.num_states):
        if keep[q]:
            new_id[q] = len(new_id)
    delta = []
    for q in range(d.num_states):
        if keep[q]:
            delta.append({a: new_id[t] for a, t in d.delta[q].items() if t in new_id})
    return Dfa(d.alphabet, tuple(delta), new_id[d.start],
               frozenset(new_id[q] for q in d.accepting if q in new_id),
               tuple(d.names[q] for q in range(d.num_states) if keep[q]))


def trim(d: Dfa, drop_dead: bool = False) -> Dfa:
    keep = reachable_states(d)
    if drop_dead:
        live = live_states(d)
        keep = [k and (lv or q == d.start) for q, (k, lv) in enumerate(zip(keep, live))]
        if not live[d.start]:
            # empty language: a lone rejecting start state
            return Dfa(d.alphabet, ({},), 0, frozenset(), (d.names[d.start],))
    return restrict(d, keep)


def merge_state(d: Dfa, q: int, p: int) -> Dfa:
    """Redirect every transition into ``q`` to ``p`` and delete ``q``."""
    n = d.num_states
    if not (0 <= q < n and 0 <= p < n):
        raise UnknownReferenceError(f"unknown state in merge ({q}, {p})")
    if q == p:
        raise DfaError("cannot merge a state into itself")

    def ren(t):
        t = p if t == q else t
        return t - 1 if t > q else t

    delta = tuple({a: ren(t) for a, t in row.items()} for s, row in enumerate(d.delta) if s != q)
    return Dfa(d.alphabet, delta, ren(d.start),
               frozenset(ren(s) for s in d.accepting if s != q),
               d.names[:q] + d.names[q + 1:])


def bfs_order(d: Dfa) -> list[int]:
    """Reachable states in BFS order from the start, symbols in alphabet order."""
    seen = {d.start}
    order = [d.start]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for a in sorted(d.delta[q]):
            t = d.delta[q][a]
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def renumber_bfs(d: Dfa) -> Dfa:
    order = bfs_order(d)
    new_id = {q: i for i, q in enumerate(order)}
    delta = tuple({a: new_id[t] for a, t in d.delta[q].items()} for q in order)
    return Dfa(d.alphabet, delta, 0, frozenset(new_id[q] for q in d.accepting if q in new_id),
               tuple(d.names[q] for q in order))


# ---------------------------------------------------------- minimisation

def equivalence_classes(d: Dfa) -> list[int]:
    """Myhill-Nerode class id per state (undefined transitions lead to the empty language).

    Hopcroft-style refinement over inverse transitions, so work is
    proportional to the defined transitions.  All states with an empty
    right-language share one class that never acts as a splitter.
    """
    n = d.num_states
    live = live_states(d)
    k = len(d.alphabet)
    inv: list[dict[int, list[int]]] = [dict() for _ in range(k)]
    for q, row in enumerate(d.delta):
        if not live[q]:
            continue
        for a, t in row.items():
            if live[t]:
                inv[a].setdefault(t, []).append(q)

    acc = [q for q in range(n) if live[q] and q in d.accepting]
    rej = [q for q in range(n) if live[q] and q not in d.accepting]
    blocks: list[set[int]] = []
    block_of = [-1] * n
    for part in (acc, rej):
        if part:
            for q in part:
                block_of[q] = len(blocks)
            blocks.append(set(part))
    waiting = deque(range(len(blocks)))
    in_waiting = [True] * len(blocks)
    while waiting:
        b = waiting.popleft()
        in_waiting[b] = False
        splitter = list(blocks[b])
        for a in range(k):
            touched: dict[int, list[int]] = {}
            inv_a = inv[a]
            for t in splitter:
                for p in inv_a.get(t, ()):
                    touched.setdefault(block_of[p], []).append(p)
            for bid, members in touched.items():
                if len(members) == len(blocks[bid]):
                    continue
                new = set(members)
                blocks[bid] -= new
                nid = len(blocks)
                blocks.append(new)
                in_waiting.append(False)
                for p in members:
                    block_of[p] = nid
                if in_waiting[bid] or len(new) <= len(blocks[bid]):
                    waiting.append(nid)
                    in_waiting[nid] = True
                else:
                    waiting.append(bid)
                    in_waiting[bid] = True
    dead_class = len(blocks)
    return [block_of[q] if live[q] else dead_class for q in range(n)]


def _quotient(d: Dfa, cls: list[int]) -> Dfa:
    rep: dict[int, int] = {}
    for q in range(d.num_states):
        rep.setdefault(cls[q], q)
    ids = {c: i for i, c in enumerate(sorted(rep, key=rep.get))}
    delta = [dict() for _ in ids]
    for c, q in rep.items():
        delta[ids[c]] = {a: ids[cls[t]] for a, t in d.delta[q].items()}
    return Dfa(d.alphabet, tuple(delta), ids[cls[d.start]],
               frozenset(ids[cls[q]] for q in d.accepting),
               tuple(d.names[rep[c]] for c in sorted(rep, key=rep.get)))


def complete(d: Dfa, sink_name: str = "bot") -> Dfa:
    """Total version of ``d``; adds a sink only when some transition is undefined."""
    if d.is_total():
        return d
    name = sink_name
    while name in d.state_index:
        name += "_"
    n = d.num_states
    k = len(d.alphabet)
    delta = tuple({a: row.get(a, n) for a in range(k)} for row in d.delta)
    delta += ({a: n for a in range(k)},)
    return Dfa(d.alphabet, delta, d.start, d.accepting, d.names + (name,))


def minimise(d: Dfa, mode: str = PARTIAL) -> Dfa:
    """The minimal DFA for L(d), states numbered in BFS order from the start."""
    if mode not in (PARTIAL, TOTAL):
        raise ValueError(f"mode must be {PARTIAL!r} or {TOTAL!r}")
    if mode == PARTIAL:
        d = trim(d, drop_dead=True)
    else:
        d = complete(trim(d))
    return renumber_bfs(_quotient(d, equivalence_classes(d)))


def is_minimal(d: Dfa, mode: str = PARTIAL) -> bool:
    if not all(reachable_states(d)):
        return False
    if mode == PARTIAL:
        live = live_states(d)
        if not all(live) and d.num_states > 1:
            return False
    elif not d.is_total():
        return False
    cls = equivalence_classes(d)
    return len(set(cls)) == d.num_states


def has_distinct_equivalent_states(d: Dfa) -> bool:
    cls = equivalence_classes(d)
    return len(set(cls)) != d.num_states


def equivalent(a: Dfa, b: Dfa) -> bool:
    from .product import discrepancy_witness

    return discrepancy_witness(a, b) is None


# ----------------------------------------------------------- state meta

def strongly_connected_components(n: int, succ: Sequence[Iterable[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def _cyclic_nodes(comps: list[list[int]], succ) -> set[int]:
    cyc = set()
    for comp in comps:
        if len(comp) > 1 or comp[0] in succ[comp[0]]:
            cyc.update(comp)
    return cyc


@dataclass(frozen=True)
class StateMeta:
    in_level: tuple[float, ...]
    is_kernel: tuple[bool, ...]
    m: tuple[float, ...]
    signature: tuple[frozenset[int], ...]

    def in_level_of(self, q: int) -> float:
        return self.in_level[q]


def in_levels(d: Dfa) -> list[float]:
    """Longest word length leading to each state (INF on cycle-fed states)."""
    n = d.num_states
    succ = [set(row.values()) for row in d.delta]
    comps = strongly_connected_components(n, succ)
    cyclic = _cyclic_nodes(comps, succ)
    level: list[float] = [-1] * n
    level[d.start] = 0
    # reverse Tarjan order is a topological order of the condensation
    for comp in reversed(comps):
        q = comp[0]
        if all(level[r] == -1 for r in comp):
            continue  # unreachable
        if q in cyclic:
            for r in comp:
                level[r] = INF
        base = level[q]
        for r in comp:
            for t in d.delta[r].values():
                if t in cyclic or base == INF:
                    level[t] = INF
                elif level[t] != INF and base + 1 > level[t]:
                    level[t] = base + 1
    return level


def longest_accepted(d: Dfa) -> list[float]:
    """m(q): longest word accepted from q; INF if infinite, -1 for the empty language."""
    n = d.num_states
    live = live_states(d)
    succ = [{t for t in row.values() if live[t]} if live[q] else set() for q, row in enumerate(d.delta)]
    comps = strongly_connected_components(n, succ)
    cyclic = _cyclic_nodes(comps, succ)
    m: list[float] = [-1] * n
    for comp in comps:  # sinks first
        if comp[0] in cyclic:
            for q in comp:
                m[q] = INF
            continue
        q = comp[0]
        if not live[q]:
            continue
        best: float = 0 if q in d.accepting else -1
        for t in succ[q]:
            if m[t] == INF:
                best = INF
                break
            best = max(best, m[t] + 1)
        m[q] = best
    return m


def state_meta(d: Dfa) -> StateMeta:
    if not all(reachable_states(d)):
        raise PreconditionError("state_meta needs a trimmed DFA (unreachable states present)")
    il = in_levels(d)
    m = longest_accepted(d)
    sig = tuple(frozenset(a for a, t in row.items() if m[t] == INF) for row in d.delta)
    return StateMeta(tuple(il), tuple(x == INF for x in il), tuple(m), sig)
