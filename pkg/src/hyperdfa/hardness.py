"""Gadget DFAs from graphs for the two error-bounded minimisation problems.

The hyper family turns a graph into a total DFA in which all vertex
states are hyper-equivalent; collapsing them along a proper
3-colouring gives a 14-state DFA with exactly |E|(|V|-2) errors.  The
k-min family does the same for k-similarity, with two gadgets that
raise in-levels (a letter chain) and forbid merges (a ring per class of
a congruence).  Builders produce the instance and the collapsed DFA;
``verify_hardness`` counts the errors between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .dfa import INF, TOTAL, Dfa, in_levels, is_minimal, reachable_states, restrict
from .distance import distance_table
from .errors import (
    ColoringError,
    ConstraintError,
    DfaFormatError,
    PreconditionError,
    UnknownReferenceError,
)
from .product import count_symdiff, similarity_bound

HYPER = "hyper"
KMIN = "kmin"


# ------------------------------------------------------------------ graphs

def _vertex_key(v: str):
    return (0, int(v), v) if v.lstrip("-").isdigit() else (1, 0, v)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; vertices in canonical order, edges as ordered pairs."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[str, str]], vertices: Iterable[str] = ()) -> "Graph":
        vs = {str(v) for v in vertices}
        seen = set()
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise DfaFormatError(f"self-loop at vertex {u!r}")
            pair = tuple(sorted((u, v), key=_vertex_key))
            if pair in seen:
                raise DfaFormatError(f"duplicate edge {u} {v}")
            seen.add(pair)
            vs.update(pair)
        order = tuple(sorted(vs, key=_vertex_key))
        rank = {v: i for i, v in enumerate(order)}
        return cls(order, tuple(sorted(seen, key=lambda e: (rank[e[0]], rank[e[1]]))))

    def isolated(self) -> list[str]:
        touched = {v for e in self.edges for v in e}
        return [v for v in self.vertices if v not in touched]


def parse_graph(text: str) -> Graph:
    """One edge per line (two vertex tokens), '#' starts a comment."""
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if len(toks) != 2:
            raise DfaFormatError("an edge line needs exactly two vertices", lineno)
        if toks[0] == toks[1]:
            raise DfaFormatError(f"self-loop at vertex {toks[0]!r}", lineno)
        edges.append((toks[0], toks[1]))
    try:
        return Graph.from_edges(edges)
    except DfaFormatError as exc:
        raise DfaFormatError(str(exc)) from None


def serialize_graph(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges((str(i), str(j)) for i in range(1, n + 1) for j in range(i + 1, n + 1))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges((str(i), str(i % n + 1)) for i in range(1, n + 1))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges((str(u + 1), str(v + 1)) for u, v in outer + spokes + inner)


# --------------------------------------------------------------- colourings

def parse_coloring(text: str) -> dict[str, int]:
    """Lines ``vertex colour`` with colour in {1, 2, 3}."""
    c: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if len(toks) != 2 or toks[1] not in ("1", "2", "3"):
            raise DfaFormatError("expected 'vertex colour' with colour 1, 2 or 3", lineno)
        if toks[0] in c:
            raise DfaFormatError(f"vertex {toks[0]!r} coloured twice", lineno)
        c[toks[0]] = int(toks[1])
    return c


def serialize_coloring(g: Graph, c: Mapping[str, int]) -> str:
    return "".join(f"{v} {c[v]}\n" for v in g.vertices)


def monochromatic_edges(g: Graph, c: Mapping[str, int]) -> list[tuple[str, str]]:
    return [e for e in g.edges if c[e[0]] == c[e[1]]]


def check_coloring(g: Graph, c: Mapping[str, int], proper: bool = True):
    for v in g.vertices:
        if v not in c:
            raise ColoringError(f"vertex {v!r} has no colour")
        if c[v] not in (1, 2, 3):
            raise ColoringError(f"vertex {v!r} has colour {c[v]!r}, expected 1, 2 or 3")
    extra = set(c) - set(g.vertices)
    if extra:
        raise ColoringError(f"colour given for unknown vertex {sorted(extra)[0]!r}")
    if proper:
        bad = monochromatic_edges(g, c)
        if bad:
            raise ColoringError(f"edge {bad[0][0]} {bad[0][1]} is monochromatic", bad[0])


# ---------------------------------------------------------------- building

class _Draft:
    """Named states and letters collected before the Dfa is frozen."""

    def __init__(self, alphabet: Iterable[str] = ()):
        self.alphabet: list[str] = list(alphabet)
        self.names: list[str] = []
        self.index: dict[str, int] = {}
        self.delta: list[dict[int, int]] = []
        self.accepting: set[int] = set()

    def state(self, name: str) -> int:
        if name not in self.index:
            self.index[name] = len(self.names)
            self.names.append(name)
            self.delta.append({})
        return self.index[name]

    def letter(self, sym: str) -> int:
        if sym not in self.alphabet:
            self.alphabet.append(sym)
        return self.alphabet.index(sym)

    def arc(self, src: str, sym: str, dst: str):
        q, a, t = self.state(src), self.letter(sym), self.state(dst)
        old = self.delta[q].get(a)
        if old is not None and old != t:
            raise ConstraintError(f"conflicting transitions for ({src}, {sym})")
        self.delta[q][a] = t

    def fill(self, sink: str):
        """Send every undefined transition over the current alphabet to ``sink``."""
        t = self.state(sink)
        for row in self.delta:
            for a in range(len(self.alphabet)):
                row.setdefault(a, t)

    def freeze(self, start: str, accepting: Iterable[str]) -> Dfa:
        return Dfa(tuple(self.alphabet), tuple(self.delta), self.index[start],
                   frozenset(self.index[q] for q in accepting), tuple(self.names))

    @classmethod
    def of(cls, d: Dfa) -> "_Draft":
        dr = cls(d.alphabet)
        for name in d.names:
            dr.state(name)
        for q, row in enumerate(d.delta):
            dr.delta[q] = dict(row)
        dr.accepting = set(d.accepting)
        return dr


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def _vletter(v: str) -> str:
    return f"v{v}"


def _eletter(e: tuple[str, str]) -> str:
    return f"e{e[0]}-{e[1]}"


@dataclass
class HardnessInstance:
    dfa: Dfa
    family: str
    graph: Graph
    params: dict = field(default_factory=dict)
    expected_errors: tuple[int, int] = (0, 0)  # inclusive bounds for a proper colouring
    core_states: int = 0


# -------------------------------------------------------------- hyper family

_RINGS = ("smiley", "frown")


def build_hyper_instance(g: Graph) -> HardnessInstance:
    """Total DFA with 14 + |V| states whose vertex states are pairwise hyper-equivalent."""
    lonely = g.isolated()
    if lonely:
        raise PreconditionError(f"vertex {lonely[0]!r} has no incident edge")
    dr = _Draft(["a", "b"] + [_vletter(v) for v in g.vertices] + [_eletter(e) for e in g.edges])
    for name in ("top", "bot", "inf", "smiley", "frown"):
        dr.state(name)
    for v in g.vertices:
        dr.state(_vletter(v))
    for ring in ("smiley", "bsmiley", "frown"):
        for j in (1, 2, 3):
            dr.state(f"{ring}_{j}")
    for v in g.vertices:
        dr.arc("top", _vletter(v), _vletter(v))
        for e in g.edges:
            if v == e[0]:
                dst = "smiley_1"
            elif v == e[1]:
                dst = "frown_1"
            else:
                dst = "bsmiley_1"
            dr.arc(_vletter(v), _eletter(e), dst)
    dr.arc("inf", "a", "smiley_1")
    dr.arc("inf", "b", "frown_1")
    _hyper_tail(dr, with_black=True)
    dr.fill("bot")
    d = dr.freeze("top", ["inf", "smiley"])
    nv, ne = len(g.vertices), len(g.edges)
    errors = ne * (nv - 2)
    return HardnessInstance(d, HYPER, g, {}, (errors, errors), d.num_states)


def _hyper_tail(dr: _Draft, with_black: bool):
    if with_black:
        dr.arc("bsmiley_1", "a", "bsmiley_2")
        dr.arc("bsmiley_2", "a", "bsmiley_3")
        dr.arc("bsmiley_3", "a", "smiley")
        dr.arc("bsmiley_3", "b", "frown")
    for ring in _RINGS:
        dr.arc(f"{ring}_1", "a", f"{ring}_2")
        dr.arc(f"{ring}_2", "a", f"{ring}_3")
        dr.arc(f"{ring}_3", "a", ring)
        dr.arc(f"{ring}_3", "b", ring)
        dr.arc(ring, "b", "inf")


def build_hyper_colored(g: Graph, c: Mapping[str, int], strict: bool = True) -> Dfa:
    """The 14-state collapse of the hyper instance along the colouring ``c``.

    With ``strict=False`` an improper colouring is accepted, which models
    a collapse that merges the endpoints of an edge.
    """
    check_coloring(g, c, proper=strict)
    dr = _Draft(["a", "b"] + [_vletter(v) for v in g.vertices] + [_eletter(e) for e in g.edges])
    for name in ("top", "bot", "inf", "smiley", "frown", "col1", "col2", "col3"):
        dr.state(name)
    for ring in _RINGS:
        for j in (1, 2, 3):
            dr.state(f"{ring}_{j}")
    for v in g.vertices:
        dr.arc("top", _vletter(v), f"col{c[v]}")
    for i in (1, 2, 3):
        for e in g.edges:
            dr.arc(f"col{i}", _eletter(e), "smiley_1" if c[e[1]] != i else "frown_1")
    dr.arc("inf", "a", "smiley_1")
    dr.arc("inf", "b", "frown_1")
    _hyper_tail(dr, with_black=False)
    dr.fill("bot")
    return dr.freeze("top", ["inf", "smiley"])


# ----------------------------------------------------------------- gadgets

def _resolve(d: Dfa, q) -> int:
    if isinstance(q, int):
        if not 0 <= q < d.num_states:
            raise UnknownReferenceError(f"unknown state {q}")
        return q
    return d.state_index[q] if q in d.state_index else _missing(q)


def _missing(q):
    raise UnknownReferenceError(f"unknown state {q!r}")


def congruence_classes(d: Dfa, partition: Iterable[Iterable]) -> list[int]:
    """Class id per state; states not mentioned form singleton classes.

    Classes are numbered by their smallest state.  Raises ConstraintError
    with a ``(state, letter)`` witness if the partition is not closed
    under the transitions (an undefined transition is its own class).
    """
    n = d.num_states
    cls = [-1] * n
    groups = []
    for block in partition:
        ids = [_resolve(d, q) for q in block]
        for q in ids:
            if cls[q] != -1:
                raise ConstraintError(f"state {d.names[q]} appears in two classes")
            cls[q] = len(groups)
        groups.append(ids)
    for q in range(n):
        if cls[q] == -1:
            cls[q] = len(groups)
            groups.append([q])
    order = sorted(range(len(groups)), key=lambda i: min(groups[i], default=n))
    renum = {old: new for new, old in enumerate(order)}
    cls = [renum[x] for x in cls]
    first: dict[int, int] = {}
    for q in range(n):
        r = first.setdefault(cls[q], q)
        for a in range(len(d.alphabet)):
            x, y = d.delta[q].get(a), d.delta[r].get(a)
            if (x is None) != (y is None) or (x is not None and cls[x] != cls[y]):
                raise ConstraintError(
                    f"not a congruence: {d.names[q]} and {d.names[r]} disagree on {d.alphabet[a]}",
                    (d.names[q], d.alphabet[a]))
    return cls


def gadget_congruence(d: Dfa, partition: Iterable[Iterable]) -> Dfa:
    """Add one ring state per class so that states of different classes become hyper-inequivalent.

    A fresh letter ``t`` leads every state to the ring state of its class;
    a fresh letter ``x`` steps around the ring, and the last ring state
    accepts.  Right-languages restricted to the old alphabet, incoming
    transitions of old states and the differences inside a class are
    unchanged.
    """
    cls = congruence_classes(d, partition)
    n = max(cls) + 1
    dr = _Draft.of(d)
    t = _fresh("t", dr.alphabet)
    x = _fresh("x", set(dr.alphabet) | {t})
    ring = [_fresh(f"g{i}", dr.index) for i in range(1, n + 1)]
    for name in ring:
        dr.state(name)
    for q, name in enumerate(d.names):
        dr.arc(name, t, ring[cls[q]])
    for i in range(n):
        dr.arc(ring[i], x, ring[(i + 1) % n])
    return dr.freeze(d.names[d.start], [d.names[q] for q in d.accepting] + [ring[-1]])


def gadget_inlevel(d: Dfa, minlevel: Mapping) -> Dfa:
    """Raise in-levels with a chain of fresh ``d`` transitions from the start.

    Chain state i is reached only by d^i.  For every target s with
    minlevel(s) >= 2 a fresh letter ``d_s`` leads from chain state
    minlevel(s) - 1 to s, so s gains exactly one incoming transition.
    """
    levels = {_resolve(d, q): int(v) for q, v in minlevel.items()}
    if d.start in levels:
        raise ConstraintError("the start state cannot get a minimum in-level")
    if any(v < 0 for v in levels.values()):
        raise ConstraintError("minimum in-levels must be non-negative")
    top = max(levels.values(), default=0)
    if top == 0:
        return d
    dr = _Draft.of(d)
    step = _fresh("d", dr.alphabet)
    chain = [d.names[d.start]] + [_fresh(f"d{i}", dr.index) for i in range(1, top + 1)]
    for i in range(top):
        dr.arc(chain[i], step, chain[i + 1])
    taken = set(dr.alphabet)
    for q, lvl in sorted(levels.items()):
        if lvl >= 2:
            sym = _fresh(f"d_{d.names[q]}", taken)
            taken.add(sym)
            dr.arc(chain[lvl - 1], sym, d.names[q])
    return dr.freeze(d.names[d.start], [d.names[q] for q in d.accepting])


# ------------------------------------------------------------ k-min family

def check_kmin_params(g: Graph, s: int, k: int):
    nv = len(g.vertices)
    if not s > math.log2(max(nv, 1)) + 2:
        raise ConstraintError(f"need s > log(|V|) + 2, got s={s} with |V|={nv}")
    if not k > 4 * s:
        raise ConstraintError(f"need k > 4s, got k={k} with s={s}")


def kmin_error_bounds(g: Graph, s: int) -> tuple[int, int]:
    """Error bounds for the collapse along a proper colouring (exact integers)."""
    nv, ne = len(g.vertices), len(g.edges)
    lo = 2 ** (2 * s - 1) * ne * (nv - 2) + 3 * 2 ** (s - 1) * ne
    return lo, lo + 2 ** (s + 1) * nv


def _kmin_core(g: Graph, s: int, ell: int) -> _Draft:
    dr = _Draft(["a", "b"] + [_vletter(v) for v in g.vertices] + [_eletter(e) for e in g.edges])
    for name in ("bot", "bsmiley", "frown", "1_0", "2_0", "3_0"):
        dr.state(name)
    for i in (1, 2):
        for j in range(1, ell + 1):
            dr.state(f"{i}_{j}")
    for v in g.vertices:
        dr.state(_vletter(v))
    for i in range(s + 1):
        dr.state(str(i))
    for i in range(s + 1):
        dr.state(f"smiley_{i}")
    for i in range(1, s + 1):
        for sym in ("a", "b"):
            dr.arc(str(i - 1), sym, str(i))
            dr.arc(f"smiley_{i - 1}", sym, f"smiley_{i}")
    dr.arc("bsmiley", "a", "smiley_1")
    for v in g.vertices:
        dr.arc(str(s), _vletter(v), _vletter(v))
        dr.arc(_vletter(v), "a", "1_1")
        for e in g.edges:
            dst = "smiley_0" if v == e[0] else "frown" if v == e[1] else "bsmiley"
            dr.arc(_vletter(v), _eletter(e), dst)
    for i in (1, 2, 3):
        for e in g.edges:
            dr.arc(f"{i}_0", _eletter(e), "bsmiley")
    for i in (1, 2):
        dr.arc(f"{i}_0", "a", f"{i}_1")
        for j in range(2, ell + 1):
            dr.arc(f"{i}_{j - 1}", "b", f"{i}_{j}")
        dr.arc(f"{i}_{ell}", "b", f"smiley_{s}")
    dr.fill("bot")
    dr.accepting = {dr.index[f"smiley_{s}"], dr.index[f"1_{ell}"]}
    return dr


def kmin_partition(g: Graph, s: int, ell: int) -> list[list[str]]:
    sink_side = ["bot", "bsmiley", "frown"] + [f"smiley_{i}" for i in range(s + 1)]
    sink_side += [f"{i}_{j}" for i in (1, 2) for j in range(1, ell + 1)]
    vertex_side = [_vletter(v) for v in g.vertices] + ["1_0", "2_0", "3_0"]
    return [sink_side, vertex_side]


def kmin_minlevels(s: int, k: int) -> dict[str, int]:
    out = {f"{i}_0": 3 * s - 1 for i in (1, 2, 3)}
    out.update({name: k + 1 for name in ("smiley_0", "frown", "1_1", "2_1")})
    return out


def build_kmin_instance(g: Graph, s: int, k: int) -> HardnessInstance:
    """Core DFA over {a, b} + V + E, then the in-level gadget, then the congruence gadget."""
    check_kmin_params(g, s, k)
    ell = k - 2 * s
    dr = _kmin_core(g, s, ell)
    core = dr.freeze("0", [dr.names[q] for q in dr.accepting])
    d = gadget_inlevel(core, kmin_minlevels(s, k))
    d = gadget_congruence(d, kmin_partition(g, s, ell))
    return HardnessInstance(d, KMIN, g, {"s": s, "k": k, "ell": ell},
                            kmin_error_bounds(g, s), core.num_states)


def build_kmin_colored(g: Graph, c: Mapping[str, int], s: int, k: int, strict: bool = True) -> Dfa:
    """Collapse of the k-min instance along ``c``.

    Every vertex state is merged into the root of its colour, whose edge
    transitions copy the endpoint they stand for (others go to smiley_0);
    frown merges into the equivalent bot, and bsmiley becomes unreachable
    and is dropped.  Gadget states are kept.
    """
    check_coloring(g, c, proper=strict)
    inst = build_kmin_instance(g, s, k)
    d = inst.dfa
    idx = d.state_index
    sym = d.symbol_index
    target = list(range(d.num_states))
    for v in g.vertices:
        target[idx[_vletter(v)]] = idx[f"{c[v]}_0"]
    target[idx["frown"]] = idx["bot"]
    delta = [dict(row) for row in d.delta]
    for i in (1, 2, 3):
        row = delta[idx[f"{i}_0"]]
        for e in g.edges:
            # the endpoint coloured i keeps its own target; on a clash the second endpoint wins
            row[sym[_eletter(e)]] = idx["frown" if c[e[1]] == i else "smiley_0"]
    delta = tuple({a: target[t] for a, t in row.items()} for row in delta)
    merged = Dfa(d.alphabet, delta, target[d.start], d.accepting, d.names)
    out = restrict(merged, [target[q] == q for q in range(d.num_states)])
    return restrict(out, reachable_states(out))


def core_state_count(d: Dfa) -> int:
    """States that are not gadget states (chain d1.., ring g1..)."""
    return sum(1 for name in d.names if not _is_gadget_name(name))


def _is_gadget_name(name: str) -> bool:
    base = name.rstrip("'")
    return len(base) > 1 and base[0] in "dg" and base[1:].isdigit()


# ------------------------------------------------------------ verification

@dataclass
class Report:
    family: str
    instance_states: int
    colored_states: int
    colored_core_states: int
    errors: int
    expected_errors: tuple[int, int]
    max_error_len: int | None
    similarity_bound: float
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "instance_states": self.instance_states,
            "colored_states": self.colored_states,
            "colored_core_states": self.colored_core_states,
            "errors": self.errors,
            "expected_errors": list(self.expected_errors),
            "max_error_len": self.max_error_len,
            "similarity_bound": None if self.similarity_bound == INF else self.similarity_bound,
            "checks": dict(self.checks),
            "pass": self.passed,
        }


def pairwise_dissimilar(d: Dfa, k: int) -> bool:
    """Every two distinct states of ``d`` are k-dissimilar."""
    table = distance_table(d)
    levels = in_levels(d)
    n = d.num_states
    for q in range(n):
        for p in range(q + 1, n):
            dist = table(q, p)
            if dist != INF and dist + min(k, levels[q], levels[p]) <= k:
                return False
    return True


def verify_hardness(inst: HardnessInstance, colored: Dfa) -> Report:
    if set(colored.alphabet) != set(inst.dfa.alphabet):
        raise ConstraintError("colored DFA was built over a different alphabet")
    d = inst.dfa
    bound = similarity_bound(d, colored)
    count = count_symdiff(d, colored) if bound != INF else None
    errors = count.errors if count else -1
    lo, hi = inst.expected_errors
    checks: dict[str, bool] = {"finite_difference": bound != INF}
    if inst.family == HYPER:
        nv = len(inst.graph.vertices)
        checks["instance_states"] = d.num_states == 14 + nv
        checks["instance_minimal"] = is_minimal(d, TOTAL)
        checks["colored_states"] = colored.num_states == 14
        checks["errors_exact"] = errors == lo
    else:
        k = inst.params["k"]
        checks["errors_in_range"] = lo <= errors <= hi
        checks["k_similar"] = bound <= k
        checks["pairwise_dissimilar"] = pairwise_dissimilar(colored, k)
    return Report(inst.family, d.num_states, colored.num_states, core_state_count(colored),
                  errors, inst.expected_errors, count.max_error_len if count else None, bound, checks)
