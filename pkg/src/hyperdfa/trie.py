"""Phase engine that groups states by successor vectors stored in tries.

Each active forest vertex sits in a trie leaf reached by the current
successor vector of the state it represents.  In phase ``l`` every trie
leaf holding two or more vertices becomes a new forest vertex of level
``l``.  The representative state of the group is the one with the
largest counter; every other state of the group is then replaced by it,
both in the explicit transition entries and as a key inside the tries.
Replacing a key can make two trie paths coincide, in which case the
sub-tries are merged (smaller into larger) and the merged leaf is grouped
in the next phase.

Besides plain state keys a trie may hold external keys whose merges are
scheduled by level (``events``); they model the transitions into states
with a finite right-language.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence


class _Leaf:
    __slots__ = ("nodes",)

    def __init__(self):
        self.nodes: list[int] = []

    def size(self):
        return len(self.nodes)


class _Bucket:
    """Inner trie node; ``children`` is the linear dictionary key -> child."""

    __slots__ = ("children",)

    def __init__(self):
        self.children: dict = {}

    def size(self):
        return len(self.children)


class TrieEngine:
    def __init__(self):
        # key -> buckets holding it; dicts double as insertion-ordered sets
        # so that runs are reproducible
        self.occ: dict[int, dict] = {}
        self.pending: dict = {}
        self.count: dict[int, int] = {}  # c(key), the number of keys it stands for
        self.incoming: dict[int, list[int]] = {}  # key -> explicit entries pointing at it
        self.rewrites: list[int] = []  # per explicit entry
        self.parent: list[int] = []
        self.level: list[int] = []
        self.leaf_state: list[int | None] = []
        self.state_of: list[int] = []  # representative key of each forest vertex
        self.roots: list = []
        self.merges = 0

    # --------------------------------------------------------- set-up

    def add_key(self, key: int, count: int = 1):
        self.count[key] = count
        self.incoming.setdefault(key, [])

    def add_entry(self, key: int) -> int:
        """Register one explicit transition entry currently pointing at ``key``."""
        e = len(self.rewrites)
        self.rewrites.append(0)
        self.incoming[key].append(e)
        return e

    def new_trie(self, depth: int):
        root = _Leaf() if depth == 0 else _Bucket()
        self.roots.append(root)
        return root

    def insert(self, root, vector: Sequence[int], state: int) -> int:
        v = self._vertex(-1, 0, state, state)
        node = root
        last = len(vector) - 1
        for i, key in enumerate(vector):
            child = node.children.get(key)
            if child is None:
                child = _Leaf() if i == last else _Bucket()
                node.children[key] = child
                self.occ.setdefault(key, {})[node] = None
            node = child
        node.nodes.append(v)
        if len(node.nodes) > 1:
            self.pending[node] = None
        return v

    def _vertex(self, parent, level, leaf_state, key):
        self.parent.append(parent)
        self.level.append(level)
        self.leaf_state.append(leaf_state)
        self.state_of.append(key)
        return len(self.parent) - 1

    # ---------------------------------------------------- replacement

    def replace(self, old: int, new: int):
        """Substitute key ``new`` for ``old`` everywhere."""
        moved = self.incoming.pop(old, [])
        for e in moved:
            self.rewrites[e] += 1
        self.incoming.setdefault(new, []).extend(moved)
        occ = self.occ
        target = occ.setdefault(new, {})
        holders = occ.get(old)
        while holders:
            b, _ = holders.popitem()
            child = b.children.pop(old)
            other = b.children.get(new)
            if other is None:
                b.children[new] = child
                target[b] = None
            else:
                b.children[new] = self._merge(child, other)
        occ.pop(old, None)

    def _merge(self, x, y):
        if x.size() > y.size():
            x, y = y, x
        self.merges += 1
        if isinstance(x, _Leaf):
            y.nodes.extend(x.nodes)
            self.pending.pop(x, None)
            if len(y.nodes) > 1:
                self.pending[y] = None
            return y
        occ = self.occ
        for key, child in x.children.items():
            holders = occ[key]
            holders.pop(x, None)
            other = y.children.get(key)
            if other is None:
                y.children[key] = child
            else:
                y.children[key] = self._merge(child, other)
            holders[y] = None
        return y

    # ------------------------------------------------------------ run

    def merge_keys(self, keys: Iterable[int]) -> int | None:
        """Merge a set of external keys into the one with the largest counter."""
        keys = list(keys)
        if not keys:
            return None
        best = max(keys, key=lambda k: (self.count[k], -k))
        for k in keys:
            if k != best:
                self.count[best] += self.count.pop(k)
                self.replace(k, best)
        return best

    def run(self, events: dict[int, list[Callable[[], None]]] | None = None):
        """Run phases 1, 2, ...; the callbacks in ``events[l]`` fire when phase l starts."""
        events = dict(events or {})
        phase = 0
        while self.pending or events:
            phase += 1
            if not self.pending:
                phase = max(phase, min(events))
            for fire in events.pop(phase, ()):
                fire()
            groups = [leaf for leaf in self.pending if len(leaf.nodes) > 1]
            self.pending = {}
            replacements = []
            for leaf in groups:
                nodes = leaf.nodes
                best = max(nodes, key=lambda v: (self.count[self.state_of[v]], -self.state_of[v]))
                p = self.state_of[best]
                v = self._vertex(-1, phase, None, p)
                total = 0
                for u in nodes:
                    self.parent[u] = v
                    q = self.state_of[u]
                    total += self.count[q]
                    if q != p:
                        replacements.append((q, p))
                self.count[p] = total
                leaf.nodes = [v]
            for q, p in replacements:
                self.count.pop(q, None)
                self.replace(q, p)
        self.phases = phase

    def max_rewrites(self) -> int:
        return max(self.rewrites, default=0)
