"""Weighted forests whose leaf-pair LCA levels encode state distances."""

from __future__ import annotations

from typing import Callable, Sequence

from .dfa import INF
from .errors import DfaError, UnknownReferenceError


class DistanceForest:
    """Compressed distance forest.

    ``parent[v]`` is -1 for roots, ``level[v]`` is the vertex level and
    ``leaf_state[v]`` is the state a leaf stands for (None for inner
    vertices and for the extra empty-language leaf ``bottom``).
    """

    def __init__(self, parent: Sequence[int], level: Sequence[int],
                 leaf_state: Sequence[int | None], num_states: int, bottom: int | None = None):
        self.parent = list(parent)
        self.level = list(level)
        self.leaf_state = list(leaf_state)
        self.num_states = num_states
        self.bottom = bottom
        self.leaf_of = [-1] * num_states
        for v, q in enumerate(self.leaf_state):
            if q is not None:
                if self.leaf_of[q] != -1:
                    raise DfaError(f"state {q} has two leaves")
                self.leaf_of[q] = v
        if -1 in self.leaf_of:
            raise DfaError("some state has no leaf")
        self.stats: dict = {}
        self._depth: list[int] | None = None
        self._up: list[list[int]] | None = None

    def __len__(self):
        return len(self.parent)

    def weight(self, v: int) -> int:
        p = self.parent[v]
        return 0 if p < 0 else self.level[p] - self.level[v]

    def roots(self) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p < 0]

    def children(self) -> list[list[int]]:
        ch: list[list[int]] = [[] for _ in self.parent]
        for v, p in enumerate(self.parent):
            if p >= 0:
                ch[p].append(v)
        return ch

    def topological(self) -> list[int]:
        """Vertices with every parent before its children."""
        ch = self.children()
        order = self.roots()
        i = 0
        while i < len(order):
            order.extend(ch[order[i]])
            i += 1
        return order

    # ------------------------------------------------------------- lca

    def _prepare(self):
        n = len(self.parent)
        depth = [0] * n
        order = self.topological()
        if len(order) != n:
            raise DfaError("parent links contain a cycle")
        for v in order:
            p = self.parent[v]
            depth[v] = 0 if p < 0 else depth[p] + 1
        up = [[p if p >= 0 else v for v, p in enumerate(self.parent)]]
        span = max(depth, default=0)
        while (1 << len(up)) <= span:
            prev = up[-1]
            up.append([prev[prev[v]] for v in range(n)])
        self._depth, self._up = depth, up

    def lca(self, u: int, v: int) -> int | None:
        """Lowest common ancestor of two vertices, None across trees."""
        if self._up is None:
            self._prepare()
        depth, up = self._depth, self._up
        if depth[u] < depth[v]:
            u, v = v, u
        diff = depth[u] - depth[v]
        j = 0
        while diff:
            if diff & 1:
                u = up[j][u]
            diff >>= 1
            j += 1
        if u == v:
            return u
        for j in range(len(up) - 1, -1, -1):
            if up[j][u] != up[j][v]:
                u, v = up[j][u], up[j][v]
        pu, pv = self.parent[u], self.parent[v]
        if pu < 0 or pu != pv:
            return None
        return pu

    def lca_level(self, q: int, p: int) -> float:
        if not (0 <= q < self.num_states and 0 <= p < self.num_states):
            raise UnknownReferenceError(f"unknown state in query ({q}, {p})")
        if q == p:
            return 0
        z = self.lca(self.leaf_of[q], self.leaf_of[p])
        return INF if z is None else self.level[z]

    # ------------------------------------------------------ validation

    def check(self) -> None:
        """Raise if structural invariants fail (levels, leaves, parents)."""
        ch = self.children()
        for v, p in enumerate(self.parent):
            if p >= 0 and self.level[p] < self.level[v]:
                raise DfaError(f"level decreases from {v} to parent {p}")
            if not ch[v] and self.leaf_state[v] is None and v != self.bottom:
                raise DfaError(f"inner vertex {v} has no children")
            if ch[v] and self.leaf_state[v] is not None:
                raise DfaError(f"leaf {v} has children")
        if len(self.topological()) != len(self.parent):
            raise DfaError("parent links contain a cycle")

    # ---------------------------------------------------------- output

    def dump(self, names: Sequence[str] | None = None) -> str:
        """One line per vertex: ``id parent edge_weight level [state-name]``."""
        out = []
        for v in range(len(self.parent)):
            fields = [str(v), str(self.parent[v]), str(self.weight(v)), str(self.level[v])]
            q = self.leaf_state[v]
            if q is not None:
                fields.append(names[q] if names else str(q))
            elif v == self.bottom:
                fields.append("<bot>")
            out.append(" ".join(fields))
        return "\n".join(out) + "\n"

    def to_dot(self, names: Sequence[str] | None = None) -> str:
        out = ["digraph forest {", "  rankdir=BT;"]
        for v in range(len(self.parent)):
            q = self.leaf_state[v]
            if q is not None:
                label = names[q] if names else str(q)
                out.append(f'  v{v} [shape=box, label="{label}"];')
            elif v == self.bottom:
                out.append(f'  v{v} [shape=box, label="bot"];')
            else:
                out.append(f'  v{v} [shape=circle, label="{self.level[v]}"];')
        for v, p in enumerate(self.parent):
            if p >= 0:
                out.append(f'  v{v} -> v{p} [label="{self.weight(v)}"];')
        out.append("}")
        return "\n".join(out) + "\n"


def compress(parent: Sequence[int], level: Sequence[int], leaf_state: Sequence[int | None],
             keep: Callable[[int], bool]):
    """Induced forest on the leaves ``v`` with ``keep(v)``.

    Inner vertices left with a single child are spliced out, so every
    kept pair keeps its LCA level.  Returns new (parent, level, leaf_state)
    lists plus the old-to-new vertex map.
    """
    n = len(parent)
    ch: list[list[int]] = [[] for _ in range(n)]
    roots = []
    for v, p in enumerate(parent):
        (ch[p] if p >= 0 else roots).append(v)
    # post-order: number of kept leaves below each vertex, then the
    # representative vertex (itself or its single surviving child chain)
    order = []
    stack = list(roots)
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(ch[v])
    alive_children: list[list[int]] = [[] for _ in range(n)]
    rep = [-1] * n
    for v in reversed(order):
        if not ch[v]:
            rep[v] = v if keep(v) else -1
        else:
            live = [rep[c] for c in ch[v] if rep[c] != -1]
            if not live:
                rep[v] = -1
            elif len(live) == 1:
                rep[v] = live[0]
            else:
                rep[v] = v
                alive_children[v] = live
    new_id: dict[int, int] = {}
    new_parent: list[int] = []
    new_level: list[int] = []
    new_leaf: list[int | None] = []
    stack = [(rep[r], -1) for r in reversed(roots) if rep[r] != -1]
    while stack:
        v, p = stack.pop()
        new_id[v] = len(new_parent)
        new_parent.append(p)
        new_level.append(level[v])
        new_leaf.append(leaf_state[v])
        for c in reversed(alive_children[v]):
            stack.append((c, new_id[v]))
    return new_parent, new_level, new_leaf, new_id
