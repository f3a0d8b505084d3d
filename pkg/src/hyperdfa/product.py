"""Product automaton of two DFAs and the error counts derived from it.

A product state is a pair ``(p, q)`` where either side may be ``None``
(the implicit empty-language state reached through an undefined
transition).  A pair is a *discrepancy* when exactly one side accepts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .dfa import INF, Dfa, strongly_connected_components
from .errors import InfiniteDifferenceError

AUTO = "auto"


class Product:
    def __init__(self, a: Dfa, b: Dfa):
        self.a, self.b = a, b
        symbols = list(a.alphabet)
        symbols += [s for s in b.alphabet if s not in a.symbol_index]
        self.symbols = symbols
        ia = [a.symbol_index.get(s) for s in symbols]
        ib = [b.symbol_index.get(s) for s in symbols]

        start = (a.start, b.start)
        self.pairs = [start]
        index = {start: 0}
        self.succ: list[list[tuple[int, int]]] = []
        i = 0
        while i < len(self.pairs):
            p, q = self.pairs[i]
            row_a = a.delta[p] if p is not None else None
            row_b = b.delta[q] if q is not None else None
            out = []
            for x, (sa, sb) in enumerate(zip(ia, ib)):
                tp = row_a.get(sa) if row_a is not None and sa is not None else None
                tq = row_b.get(sb) if row_b is not None and sb is not None else None
                if tp is None and tq is None:
                    continue
                key = (tp, tq)
                j = index.get(key)
                if j is None:
                    j = index[key] = len(self.pairs)
                    self.pairs.append(key)
                out.append((x, j))
            self.succ.append(out)
            i += 1
        self.bad = [(p is not None and p in a.accepting) != (q is not None and q in b.accepting)
                    for p, q in self.pairs]

    def __len__(self):
        return len(self.pairs)

    def useful(self) -> list[bool]:
        """Pairs from which a discrepancy pair is reachable (all pairs are reachable)."""
        n = len(self.pairs)
        preds: list[list[int]] = [[] for _ in range(n)]
        for i, out in enumerate(self.succ):
            for _, j in out:
                preds[j].append(i)
        mark = list(self.bad)
        stack = [i for i in range(n) if mark[i]]
        while stack:
            j = stack.pop()
            for i in preds[j]:
                if not mark[i]:
                    mark[i] = True
                    stack.append(i)
        return mark


def discrepancy_witness(a: Dfa, b: Dfa) -> tuple[str, ...] | None:
    """A shortest word in L(a) symmetric-difference L(b), or None when equivalent."""
    prod = Product(a, b)
    parent: dict[int, tuple[int, int] | None] = {0: None}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        if prod.bad[i]:
            word = []
            while parent[i] is not None:
                i, x = parent[i]
                word.append(prod.symbols[x])
            return tuple(reversed(word))
        for x, j in prod.succ[i]:
            if j not in parent:
                parent[j] = (i, x)
                queue.append(j)
    return None


@dataclass(frozen=True)
class SymdiffCount:
    errors: int
    max_error_len: int | None  # None when there is no error word
    finite: bool


def _useful_dag(prod: Product):
    useful = prod.useful()
    succ = [[(x, j) for x, j in out if useful[j]] if useful[i] else [] for i, out in enumerate(prod.succ)]
    plain = [[j for _, j in out] for out in succ]
    comps = strongly_connected_components(len(succ), plain)
    for comp in comps:
        if len(comp) > 1 or comp[0] in plain[comp[0]]:
            if useful[comp[0]]:
                return useful, succ, comps, False
    return useful, succ, comps, True


def count_symdiff(a: Dfa, b: Dfa, max_len: int | str = AUTO) -> SymdiffCount:
    """Exact number of words in L(a) symmetric-difference L(b).

    With ``max_len="auto"`` all error words are counted (the difference
    must be finite); with an integer only words of length <= max_len.
    """
    prod = Product(a, b)
    useful, succ, comps, finite = _useful_dag(prod)
    if max_len == AUTO:
        if not finite:
            raise InfiniteDifferenceError("symmetric difference is infinite")
        if not useful[0]:
            return SymdiffCount(0, None, True)
        # paths[i] = number of words from the start to pair i; processed in topological order
        paths = [0] * len(prod)
        longest = [-1] * len(prod)
        paths[0], longest[0] = 1, 0
        errors, max_err = 0, -1
        for comp in reversed(comps):
            i = comp[0]
            if not paths[i]:
                continue
            if prod.bad[i]:
                errors += paths[i]
                max_err = max(max_err, longest[i])
            for _, j in succ[i]:
                paths[j] += paths[i]
                if longest[i] + 1 > longest[j]:
                    longest[j] = longest[i] + 1
        return SymdiffCount(errors, max_err if errors else None, True)

    if max_len < 0:
        return SymdiffCount(0, None, finite)
    counts = {0: 1} if useful[0] else {}
    errors, max_err = 0, -1
    for length in range(max_len + 1):
        if not counts:
            break
        nxt: dict[int, int] = {}
        for i, c in counts.items():
            if prod.bad[i]:
                errors += c
                max_err = length
            for _, j in succ[i]:
                nxt[j] = nxt.get(j, 0) + c
        counts = nxt
    return SymdiffCount(errors, max_err if errors else None, finite)


def similarity_bound(a: Dfa, b: Dfa) -> float:
    """Least k with L(a) and L(b) agreeing on all words of length >= k (INF if none)."""
    prod = Product(a, b)
    useful, succ, comps, finite = _useful_dag(prod)
    if not finite:
        return INF
    if not useful[0]:
        return 0
    longest = [-1] * len(prod)
    longest[0] = 0
    best = -1
    for comp in reversed(comps):
        i = comp[0]
        if longest[i] < 0:
            continue
        if prod.bad[i]:
            best = max(best, longest[i])
        for _, j in succ[i]:
            longest[j] = max(longest[j], longest[i] + 1)
    return best + 1


def agrees_from(a: Dfa, b: Dfa, k: int) -> bool:
    """True iff no error word has length in [k, k + |pairs|].

    Any longer error path repeats a pair and can be shortened into this
    window, so the check decides whether L(a) and L(b) agree on all words
    of length >= k.  Works by tracking the set of pairs reachable at each
    length, independent of the DAG analysis above.
    """
    prod = Product(a, b)
    horizon = k + len(prod)
    current = {0}
    for length in range(horizon + 1):
        if length >= k and any(prod.bad[i] for i in current):
            return False
        current = {j for i in current for _, j in prod.succ[i]}
        if not current:
            return True
    return True
