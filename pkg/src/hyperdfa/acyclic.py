"""Distance tree for automata whose states all have finite right-languages.

States are processed in layers ``Q_t = {p : m(p) = t}``.  Every layer is
hung below the spine vertex of level ``t + 1`` (the spine being the
uncompressed path from the root down to the empty-language leaf).  Inside
a layer the tree is found by divide and conquer over levels: successor
vectors are lifted ``h`` levels up, grouped by the lifted vectors, and
both the groups (bottom blocks) and the set of distinct lifted vectors
(upper block) are handled recursively.  Two-vector blocks are resolved
directly from LCA queries.

A vertex of the uncompressed tree at level ``lam`` is addressed by the
highest explicit vertex at level ``<= lam`` below it; vectors always
hold such canonical vertices for one common level.
"""

from __future__ import annotations

from .dfa import INF, Dfa, longest_accepted
from .errors import PreconditionError
from .forest import DistanceForest


class _Tree:
    """Explicit tree grown top-down with power-of-two ancestor lists."""

    def __init__(self):
        self.parent: list[int] = []
        self.level: list[int] = []
        self.leaf_state: list[int | None] = []
        self.depth: list[int] = []
        self.jumps: list[list[int]] = []
        self.spine_level: list[int] = []  # level of the lowest spine ancestor
        self.on_spine: list[bool] = []

    def add(self, parent: int, level: int, leaf_state=None, spine=False, spine_level=0) -> int:
        v = len(self.parent)
        self.parent.append(parent)
        self.level.append(level)
        self.leaf_state.append(leaf_state)
        self.on_spine.append(spine)
        self.spine_level.append(level if spine else spine_level)
        if parent < 0:
            self.depth.append(0)
            self.jumps.append([])
        else:
            self.depth.append(self.depth[parent] + 1)
            jumps = [parent]
            while len(self.jumps[jumps[-1]]) >= len(jumps):
                jumps.append(self.jumps[jumps[-1]][len(jumps) - 1])
            self.jumps.append(jumps)
        return v

    def ancestor(self, x: int, lam: int) -> int:
        """Highest explicit ancestor of ``x`` whose level is at most ``lam``."""
        level, jumps = self.level, self.jumps
        j = len(jumps[x]) - 1
        while j >= 0:
            if j < len(jumps[x]) and level[jumps[x][j]] <= lam:
                x = jumps[x][j]
                j = len(jumps[x]) - 1
            else:
                j -= 1
        return x

    def lca(self, x: int, y: int) -> int:
        depth, jumps = self.depth, self.jumps
        if depth[x] < depth[y]:
            x, y = y, x
        diff = depth[x] - depth[y]
        j = 0
        while diff:
            if diff & 1:
                x = jumps[x][j]
            diff >>= 1
            j += 1
        if x == y:
            return x
        for j in range(len(jumps[x]) - 1, -1, -1):
            if j < len(jumps[x]) and jumps[x][j] != jumps[y][j]:
                x, y = jumps[x][j], jumps[y][j]
        return self.parent[x]


class _Node:
    __slots__ = ("level", "children")

    def __init__(self, level, children):
        self.level = level
        self.children = children


class _Builder:
    def __init__(self, dfa: Dfa, m: list[float]):
        self.dfa = dfa
        self.m = m
        self.tree = _Tree()
        self.leaf: list[int] = [-1] * dfa.num_states
        self.stats = {"two_vector_bases": 0, "lifts": 0}

    # ------------------------------------------------------------ helpers

    def canon(self, q: int, lam: int) -> int:
        return self.tree.ancestor(self.leaf[q], lam)

    def lift(self, vec, lam):
        tree = self.tree
        out = []
        for a, x in vec:
            y = tree.ancestor(x, lam)
            if not tree.on_spine[y]:
                out.append((a, y))
        self.stats["lifts"] += 1
        return tuple(out)

    def meet(self, u, v, lam0):
        """Least level at which two canonical vectors (at level lam0) agree."""
        tree = self.tree
        best = lam0
        i = j = 0
        while i < len(u) or j < len(v):
            if j == len(v) or (i < len(u) and u[i][0] < v[j][0]):
                best = max(best, tree.spine_level[u[i][1]])
                i += 1
            elif i == len(u) or v[j][0] < u[i][0]:
                best = max(best, tree.spine_level[v[j][1]])
                j += 1
            else:
                x, y = u[i][1], v[j][1]
                if x != y:
                    best = max(best, tree.level[tree.lca(x, y)])
                i += 1
                j += 1
        return best

    def cluster(self, items, lam0, height):
        """Tree over distinct vectors that all agree at level lam0 + height."""
        if len(items) == 1:
            return items[0]
        if len(items) == 2:
            self.stats["two_vector_bases"] += 1
            return _Node(self.meet(items[0], items[1], lam0), list(items))
        if height <= 1:
            return _Node(lam0 + 1, list(items))
        h = 1 << ((height - 1).bit_length() - 1)
        up = lam0 + h
        groups: dict[tuple, list] = {}
        for it in items:
            groups.setdefault(self.lift(it, up), []).append(it)
        bottom = {key: self.cluster(grp, lam0, h) for key, grp in groups.items()}
        top = self.cluster(list(groups), up, height - h)
        return self._substitute(top, bottom)

    @staticmethod
    def _substitute(top, bottom):
        if not isinstance(top, _Node):
            return bottom[top]
        stack = [top]
        while stack:
            node = stack.pop()
            kids = []
            for c in node.children:
                if isinstance(c, _Node):
                    stack.append(c)
                    kids.append(c)
                else:
                    kids.append(bottom[c])
            node.children = kids
        return top

    # ------------------------------------------------------------ build

    def build(self):
        d, m, tree = self.dfa, self.m, self.tree
        n = d.num_states
        top = int(max(m, default=-1))
        layers: list[list[int]] = [[] for _ in range(top + 1)]
        dead = []
        for q in range(n):
            if m[q] < 0:
                dead.append(q)
            else:
                layers[int(m[q])].append(q)

        # spine S_{top+1} .. S_1, then S_0
        spine = [-1] * (top + 2)
        parent = -1
        for lam in range(top + 1, 0, -1):
            parent = spine[lam] = tree.add(parent, lam, spine=True)
        if dead:
            spine[0] = tree.add(parent, 0, spine=True)
            self.bottom = tree.add(spine[0], 0, spine=True)
            for q in dead:
                self.leaf[q] = tree.add(spine[0], 0, q, spine=True)
        else:
            self.bottom = spine[0] = tree.add(parent, 0, spine=True)

        for t, layer in enumerate(layers):
            by_vec: dict[tuple, list[int]] = {}
            for p in layer:
                vec = []
                for a in sorted(d.delta[p]):
                    x = self.canon(d.delta[p][a], 0)
                    if not tree.on_spine[x]:
                        vec.append((a, x))
                by_vec.setdefault(tuple(vec), []).append(p)
            shape = self.cluster(list(by_vec), 0, t)
            self._attach(shape, by_vec, spine[t + 1], t + 1)
        return DistanceForest(tree.parent, tree.level, tree.leaf_state, n, bottom=self.bottom)

    def _attach(self, shape, by_vec, anchor, anchor_level):
        tree, acc = self.tree, self.dfa.accepting

        def resolve(s):
            # a vector key stands for its states: equal acceptance gives
            # distance 0, different acceptance distance 1
            if isinstance(s, tuple):
                states = by_vec[s]
                parts = [[q for q in states if q in acc], [q for q in states if q not in acc]]
                subs = [_Node(-1, part) if len(part) > 1 else part[0] for part in parts if part]
                s = subs[0] if len(subs) == 1 else _Node(0, subs)
            return s

        root = resolve(shape)
        if isinstance(root, _Node) and root.level + 1 == anchor_level:
            stack = [(c, anchor) for c in reversed(root.children)]
        else:
            stack = [(root, anchor)]
        while stack:
            s, par = stack.pop()
            s = resolve(s)
            if isinstance(s, _Node):
                v = tree.add(par, s.level + 1, spine_level=anchor_level)
                stack.extend((c, v) for c in reversed(s.children))
            else:
                self.leaf[s] = tree.add(par, 0, s, spine_level=anchor_level)


def build_acyclic(d: Dfa, m: list[float] | None = None) -> DistanceForest:
    if m is None:
        m = longest_accepted(d)
    if any(x == INF for x in m):
        raise PreconditionError("acyclic distance tree needs finite right-languages everywhere")
    b = _Builder(d, m)
    f = b.build()
    f.stats.update(b.stats)
    return f


def acyclic_distance_tree(d: Dfa) -> DistanceForest:
    """Single distance tree over all states of ``d`` plus the empty-language leaf."""
    return build_acyclic(d)
