"""Brute-force reference implementations.

Nothing here uses the partition refinement, the product module or the
distance forests; only the ``Dfa`` type is shared.  Oracles refuse work
beyond their budget instead of truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .dfa import INF, Dfa
from .errors import BudgetExceededError

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class WordList:
    words: tuple[tuple[str, ...], ...]
    max_len: int

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def _check_budget(k: int, max_len: int, budget: int):
    total = sum(k**i for i in range(max_len + 1))
    if total > budget:
        raise BudgetExceededError(f"{total} words exceed the budget of {budget}")


def _words(alphabet, max_len):
    for length in range(max_len + 1):
        yield from product(alphabet, repeat=length)


def _step(d: Dfa, q, sym):
    if q is None:
        return None
    a = d.alphabet.index(sym) if sym in d.alphabet else None
    return None if a is None else d.delta[q].get(a)


def _accepts(d: Dfa, q, word) -> bool:
    for sym in word:
        q = _step(d, q, sym)
        if q is None:
            return False
    return q in d.accepting


def bf_language(d: Dfa, max_len: int, budget: int = DEFAULT_BUDGET) -> WordList:
    """L(d) restricted to words of length <= max_len, by enumeration."""
    _check_budget(len(d.alphabet), max_len, budget)
    alphabet = sorted(d.alphabet)
    return WordList(tuple(w for w in _words(alphabet, max_len) if _accepts(d, d.start, w)), max_len)


def bf_symdiff(a: Dfa, b: Dfa, max_len: int, budget: int = DEFAULT_BUDGET) -> WordList:
    """Words of length <= max_len accepted by exactly one of the DFAs."""
    alphabet = sorted(set(a.alphabet) | set(b.alphabet))
    _check_budget(len(alphabet), max_len, budget)
    return WordList(tuple(w for w in _words(alphabet, max_len)
                          if _accepts(a, a.start, w) != _accepts(b, b.start, w)), max_len)


def bf_distance(d: Dfa, q: int, p: int) -> float:
    """Distance of two states from the lengths on which their right-languages differ.

    For every length ``j`` the set of state pairs reached from ``(q, p)``
    by words of length ``j`` is enumerated.  The distance is one more
    than the largest length with a disagreeing pair.  With N = n + 1
    states (counting the empty-language state) a finite distance is at
    most N - 1, and an infinite distance shows a disagreement at some
    length in [N - 1, 2N - 3]; so lengths up to 2n - 1 settle the answer.
    """
    n = d.num_states
    pairs = {(q, p)}
    worst = -1
    for j in range(2 * n):
        if any((x in d.accepting) != (y in d.accepting) for x, y in pairs):
            if j >= n:
                return INF
            worst = j
        nxt = set()
        for x, y in pairs:
            for sym in d.alphabet:
                pair = (_step(d, x, sym), _step(d, y, sym))
                if pair != (None, None):
                    nxt.add(pair)
        pairs = nxt
        if not pairs:
            break
    return worst + 1


def bf_in_level(d: Dfa, q: int) -> float:
    """Longest word leading from the start to q (INF if unbounded, -1 if unreachable)."""
    n = d.num_states
    reach = {d.start}
    best = -1
    for j in range(2 * n):
        if q in reach:
            if j >= n:
                return INF
            best = j
        reach = {t for x in reach for t in d.delta[x].values()}
        if not reach:
            break
    return best


def bf_k_similar(d: Dfa, q: int, p: int, k: int) -> bool:
    dist = bf_distance(d, q, p)
    if dist == INF:
        return False
    return dist + min(k, bf_in_level(d, q), bf_in_level(d, p)) <= k


def greedy_max_dissimilar(d: Dfa, k: int, order=None) -> list[int]:
    """A maximal set of pairwise k-dissimilar states, built greedily.

    The default order visits states by decreasing in-level (ties by id).
    Maximality alone does not pin down the size: a state of in-level 0
    may be k-similar to two states that are k-dissimilar to each other,
    so picking it first yields a smaller set.  Visiting high in-levels
    first avoids this.
    """
    if order is None:
        levels = [bf_in_level(d, q) for q in range(d.num_states)]
        order = sorted(range(d.num_states), key=lambda q: (-levels[q], q))
    chosen: list[int] = []
    for q in order:
        if all(not bf_k_similar(d, q, p, k) for p in chosen):
            chosen.append(q)
    return chosen


def bf_equivalence_classes(d: Dfa) -> list[int]:
    """Table-filling: mark pairs told apart by some word, then number the classes.

    Index ``n`` stands for the empty-language state.
    """
    n = d.num_states
    states = list(range(n + 1))

    def acc(x):
        return x < n and x in d.accepting

    def step(x, sym):
        if x == n:
            return n
        t = _step(d, x, sym)
        return n if t is None else t

    marked = {(x, y) for x in states for y in states if acc(x) != acc(y)}
    changed = True
    while changed:
        changed = False
        for x in states:
            for y in states:
                if (x, y) in marked:
                    continue
                if any((step(x, s), step(y, s)) in marked for s in d.alphabet):
                    marked.add((x, y))
                    changed = True
    cls = [-1] * (n + 1)
    nxt = 0
    for x in states:
        if cls[x] == -1:
            for y in states:
                if (x, y) not in marked:
                    cls[y] = nxt
            nxt += 1
    return cls[:n]


def bf_reachable(d: Dfa) -> set[int]:
    seen = {d.start}
    frontier = [d.start]
    while frontier:
        frontier = [t for x in frontier for t in d.delta[x].values() if t not in seen]
        seen.update(frontier)
    return seen


def bf_minimal_size(d: Dfa, total: bool = False) -> int:
    """Number of Myhill-Nerode classes of the reachable states.

    Partial convention: the empty-language class is not counted (unless
    the language is empty, which still needs one state).  Total
    convention: it is counted whenever some reachable word leads to it.
    """
    cls = bf_equivalence_classes(d)
    n = d.num_states
    reach = bf_reachable(d)
    # class of the empty language: any state equivalent to the sink
    marked_empty = {cls[q] for q in range(n) if not _nonempty(d, q)}
    live_classes = {cls[q] for q in reach if cls[q] not in marked_empty}
    if not total:
        return max(1, len(live_classes))
    reaches_empty = any(cls[q] in marked_empty for q in reach) or any(
        len(d.delta[q]) < len(d.alphabet) for q in reach)
    return len(live_classes) + (1 if reaches_empty else 0)


def _nonempty(d: Dfa, q: int) -> bool:
    seen = {q}
    frontier = [q]
    while frontier:
        if any(x in d.accepting for x in frontier):
            return True
        frontier = [t for x in frontier for t in d.delta[x].values() if t not in seen]
        seen.update(frontier)
    return False


def count_words(d: Dfa, max_len: int) -> int:
    """|L(d) restricted to length <= max_len| by a length-indexed count over states."""
    counts = {d.start: 1}
    total = 0
    for _ in range(max_len + 1):
        total += sum(c for q, c in counts.items() if q in d.accepting)
        nxt: dict[int, int] = {}
        for q, c in counts.items():
            for t in d.delta[q].values():
                nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return total


def count_symdiff_words(a: Dfa, b: Dfa, max_len: int) -> int:
    """Words of length <= max_len accepted by exactly one DFA, by a length-indexed count over pairs.

    A missing transition moves to ``None`` on that side, which accepts nothing.
    """
    index_b = {s: i for i, s in enumerate(b.alphabet)}
    letters = [(i, index_b.get(s)) for i, s in enumerate(a.alphabet)]
    letters += [(None, j) for j, s in enumerate(b.alphabet) if s not in set(a.alphabet)]
    counts = {(a.start, b.start): 1}
    total = 0
    for _ in range(max_len + 1):
        total += sum(c for (p, q), c in counts.items()
                     if (p in a.accepting if p is not None else False)
                     != (q in b.accepting if q is not None else False))
        nxt: dict = {}
        for (p, q), c in counts.items():
            for x, y in letters:
                pp = a.delta[p].get(x) if p is not None and x is not None else None
                qq = b.delta[q].get(y) if q is not None and y is not None else None
                if pp is None and qq is None:
                    continue
                nxt[(pp, qq)] = nxt.get((pp, qq), 0) + c
        counts = nxt
    return total
