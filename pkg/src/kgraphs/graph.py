"""Finite k-graphs presented by their coordinate matrices.

Orientation convention used everywhere: ``A[i][v][w]`` counts the edges of
color ``i`` with range ``v`` and source ``w``. Colors are numbered from 1 in
every public signature; ``KGraph.matrices`` is an ordinary 0-based tuple.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import networkx as nx

from .errors import (BoxTooLarge, IterationBoundExceeded, NegativeEntry, NonCommuting,
                     ParseError, ShapeMismatch, StructureContradiction, UnknownVertex,
                     ValidationError, ZeroRow)
from .linalg.intmat import identity, matmul, matpow

Mat = tuple[tuple[int, ...], ...]

DEFAULT_ORBIT_CAP = 4096
DEFAULT_SKEW_CAP = 1_000_000


@dataclass(frozen=True)
class KGraph:
    k: int
    vertices: tuple[str, ...]
    matrices: tuple[Mat, ...]

    @property
    def N(self) -> int:
        return len(self.vertices)

    def matrix(self, color: int) -> Mat:
        return self.matrices[color - 1]

    def index(self, v: str | int) -> int:
        if isinstance(v, int) and not isinstance(v, bool):
            if 0 <= v < self.N:
                return v
            raise UnknownVertex(f"vertex index {v} out of range")
        try:
            return self.vertices.index(v)
        except ValueError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def transposes(self) -> list[list[list[int]]]:
        return [[list(col) for col in zip(*A)] for A in self.matrices]

    def to_json(self) -> dict:
        return {"k": self.k, "vertices": list(self.vertices),
                "matrices": [[list(row) for row in A] for A in self.matrices]}


def _as_int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{where}: boolean is not an integer")
    if isinstance(x, int):
        return x
    if isinstance(x, float) and x.is_integer():
        return int(x)
    if isinstance(x, str):
        try:
            return int(x.strip(), 10)
        except ValueError:
            pass
    raise ParseError(f"{where}: expected an integer, got {x!r}")


def validate(raw: Mapping[str, Any]) -> KGraph:
    """Check a parsed graph description and build a :class:`KGraph`.

    Every violated invariant is collected before raising
    :class:`~kgraphs.errors.ValidationError`.
    """
    if not isinstance(raw, Mapping):
        raise ParseError("graph description must be a JSON object")
    try:
        k = _as_int(raw["k"], "k")
        vertices = raw["vertices"]
        mats = raw["matrices"]
    except KeyError as exc:
        raise ParseError(f"missing field {exc.args[0]!r}") from None
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ParseError("vertices must be a list of strings")
    if not isinstance(mats, list):
        raise ParseError("matrices must be a list")

    problems: list = []
    if k < 1:
        problems.append(ShapeMismatch(f"k must be >= 1, got {k}"))
    if len(set(vertices)) != len(vertices):
        problems.append(ShapeMismatch("vertex ids are not distinct"))
    N = len(vertices)
    if N == 0:
        problems.append(ShapeMismatch("vertex list is empty"))
    if len(mats) != k:
        problems.append(ShapeMismatch(f"expected {k} matrices, got {len(mats)}"))
    parsed = []
    for c, A in enumerate(mats, start=1):
        if not isinstance(A, list) or len(A) != N or any(
                not isinstance(row, list) or len(row) != N for row in A):
            problems.append(ShapeMismatch(f"matrix {c} is not {N}x{N}"))
            continue
        parsed.append(tuple(tuple(_as_int(x, f"matrix {c}") for x in row) for row in A))
    if problems:
        raise ValidationError(problems)

    for c, A in enumerate(parsed, start=1):
        for v, row in enumerate(A):
            for w, x in enumerate(row):
                if x < 0:
                    problems.append(NegativeEntry(c, v, w, x))
    for i, j in itertools.combinations(range(k), 2):
        AB = matmul(parsed[i], parsed[j])
        BA = matmul(parsed[j], parsed[i])
        pos = next(((r, s) for r in range(N) for s in range(N) if AB[r][s] != BA[r][s]), None)
        if pos is not None:
            problems.append(NonCommuting(i + 1, j + 1, pos))
    for c, A in enumerate(parsed, start=1):
        for v, row in enumerate(A):
            if not any(row):
                problems.append(ZeroRow(c, vertices[v]))
    if problems:
        raise ValidationError(problems)
    return KGraph(k=k, vertices=tuple(vertices), matrices=tuple(parsed))


def make_kgraph(matrices: Sequence[Sequence[Sequence[int]]],
                vertices: Sequence[str] | None = None) -> KGraph:
    N = len(matrices[0]) if matrices else 0
    if vertices is None:
        vertices = [f"v{i}" for i in range(N)]
    return validate({"k": len(matrices), "vertices": list(vertices),
                     "matrices": [[list(r) for r in A] for A in matrices]})


def degree_matrix(g: KGraph, n: Sequence[int]) -> list[list[int]]:
    """``A_n = A_1^{n_1} ... A_k^{n_k}`` (order is irrelevant since the A_i commute)."""
    if len(n) != g.k or any(x < 0 for x in n):
        raise ValueError(f"degree must be a length-{g.k} vector in N^k")
    result = identity(g.N)
    for A, e in zip(g.matrices, n):
        if e:
            result = matmul(result, matpow(A, e))
    return result


# -- reachability -----------------------------------------------------------

def _sources(g: KGraph, S: Iterable[int], colors: Iterable[int] | None = None) -> set[int]:
    out = set()
    for c in (range(g.k) if colors is None else colors):
        A = g.matrices[c]
        for u in S:
            out.update(w for w, x in enumerate(A[u]) if x)
    return out


def reachable_into(g: KGraph, v: str | int) -> frozenset[str]:
    """``H = s(v Lambda)``: vertices that are sources of paths with range ``v``."""
    start = g.index(v)
    seen = {start}
    todo = deque([start])
    while todo:
        u = todo.popleft()
        for w in _sources(g, [u]):
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return frozenset(g.vertices[i] for i in seen)


def is_hereditary(g: KGraph, members: Iterable[str]) -> bool:
    idx = {g.index(v) for v in members}
    return _sources(g, idx) <= idx


def _diagonal_step(g: KGraph, S: frozenset[int]) -> frozenset[int]:
    # support of the rows S under A_1 A_2 ... A_k
    for c in range(g.k):
        S = frozenset(_sources(g, S, [c]))
    return S


def diagonal_landing(g: KGraph, w: int, target: frozenset[int],
                     cap: int = DEFAULT_ORBIT_CAP) -> int | None:
    """Least t with supp(row w of (A_1...A_k)^t) inside ``target``.

    Returns None once the orbit of support sets repeats without landing.
    """
    S = frozenset([w])
    seen = set()
    t = 0
    while S not in seen:
        if S <= target:
            return t
        if len(seen) >= cap:
            raise IterationBoundExceeded(
                f"support orbit of {g.vertices[w]!r} exceeded {cap} states")
        seen.add(S)
        S = _diagonal_step(g, S)
        t += 1
    return None


def is_cofinal(g: KGraph, cap: int = DEFAULT_ORBIT_CAP) -> bool:
    H = [frozenset(g.index(u) for u in reachable_into(g, v)) for v in range(g.N)]
    for w in range(g.N):
        # one orbit per w serves every v
        orbit = []
        S = frozenset([w])
        seen = set()
        while S not in seen:
            if len(seen) >= cap:
                raise IterationBoundExceeded(
                    f"support orbit of {g.vertices[w]!r} exceeded {cap} states")
            seen.add(S)
            orbit.append(S)
            S = _diagonal_step(g, S)
        for v in range(g.N):
            if not any(St <= H[v] for St in orbit):
                return False
    return True


# -- cycles -----------------------------------------------------------------

@dataclass(frozen=True)
class Entrance:
    vertex: str   # cycle vertex receiving the extra edge
    source: str   # source of one extra edge with that range
    excess: int   # row sum at ``vertex`` minus one


@dataclass(frozen=True)
class CycleReport:
    """A simple cycle ``v_1 ... v_n`` with ``A[color][v_t][v_{t+1}] > 0`` (cyclically)."""

    color: int
    cycle: tuple[str, ...]
    entrance: Entrance | None = None

    def to_json(self) -> dict:
        ent = None
        if self.entrance is not None:
            ent = {"vertex": self.entrance.vertex, "source": self.entrance.source,
                   "excess": self.entrance.excess}
        return {"color": self.color, "cycle": list(self.cycle), "entrance": ent}


@dataclass(frozen=True)
class CycleAnalysis:
    color: int
    has_cycle: bool
    cycle: CycleReport | None
    entrance_cycle: CycleReport | None
    cycle_vertices: frozenset[str] = field(default_factory=frozenset)


def color_digraph(g: KGraph, color: int) -> nx.DiGraph:
    A = g.matrix(color)
    G = nx.DiGraph()
    G.add_nodes_from(range(g.N))
    G.add_edges_from((v, w) for v in range(g.N) for w in range(g.N) if A[v][w])
    return G


def _cycle_vertex_set(g: KGraph, color: int) -> set[int]:
    A = g.matrix(color)
    G = color_digraph(g, color)
    on_cycle = set()
    for comp in nx.strongly_connected_components(G):
        if len(comp) > 1:
            on_cycle |= comp
        else:
            (u,) = comp
            if A[u][u]:
                on_cycle.add(u)
    return on_cycle


def shortest_cycle_through(g: KGraph, color: int, v: int) -> list[int] | None:
    """Lexicographically least among the shortest cycles starting at ``v``."""
    A = g.matrix(color)
    N = g.N
    # dist[u] = length of the shortest walk u -> ... -> v along u -> w, A[u][w] > 0
    dist = {v: 0}
    todo = deque([v])
    while todo:
        w = todo.popleft()
        for u in range(N):
            if A[u][w] and u not in dist:
                dist[u] = dist[w] + 1
                todo.append(u)
    succ = [w for w in range(N) if A[v][w] and w in dist]
    if not succ:
        return None
    length = 1 + min(dist[w] for w in succ)
    cycle = [v]
    u, remaining = v, length
    while remaining > 1:
        u = min(w for w in range(N) if A[u][w] and dist.get(w) == remaining - 1)
        cycle.append(u)
        remaining -= 1
    return cycle


def _entrance_at(g: KGraph, color: int, cycle: Sequence[int]) -> Entrance | None:
    A = g.matrix(color)
    n = len(cycle)
    for t, v in enumerate(cycle):
        nxt = cycle[(t + 1) % n]
        total = sum(A[v])
        if total > 1:
            src = next(w for w in range(g.N) if A[v][w] - (w == nxt) > 0)
            return Entrance(g.vertices[v], g.vertices[src], total - 1)
    return None


def cycle_report(g: KGraph, color: int, cycle: Sequence[int]) -> CycleReport:
    return CycleReport(color=color, cycle=tuple(g.vertices[i] for i in cycle),
                       entrance=_entrance_at(g, color, cycle))


def coordinate_cycle_analysis(g: KGraph, color: int) -> CycleAnalysis:
    """Find a canonical cycle of one color, preferring one with an entrance.

    A cycle has an entrance iff some vertex on it receives more than one edge
    of that color. The entrance cycle reported starts at the first such vertex
    (input order) and is the lexicographically least shortest cycle there.
    """
    if not 1 <= color <= g.k:
        raise ValueError(f"color must be in 1..{g.k}")
    A = g.matrix(color)
    on_cycle = sorted(_cycle_vertex_set(g, color))
    names = frozenset(g.vertices[i] for i in on_cycle)
    if not on_cycle:
        return CycleAnalysis(color, False, None, None, names)
    first = cycle_report(g, color, shortest_cycle_through(g, color, on_cycle[0]))
    hub = next((v for v in on_cycle if sum(A[v]) > 1), None)
    if hub is None:
        return CycleAnalysis(color, True, first, None, names)
    rep = cycle_report(g, color, shortest_cycle_through(g, color, hub))
    return CycleAnalysis(color, True, first, rep, names)


def entrance_free_cycle(g: KGraph, color: int, v: int) -> list[int] | None:
    """The cycle through ``v`` if every vertex on it receives exactly one edge."""
    A = g.matrix(color)
    cycle = [v]
    u = v
    while True:
        if sum(A[u]) != 1:
            return None
        u = next(w for w in range(g.N) if A[u][w])
        if u == v:
            return cycle
        if u in cycle:
            return None
        cycle.append(u)


@dataclass(frozen=True)
class T2Data:
    vertex: str
    zeta: CycleReport  # blue (color 1)
    xi: CycleReport    # red (color 2)

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "zeta": self.zeta.to_json(), "xi": self.xi.to_json()}


def find_t2_data(g: KGraph) -> T2Data | None:
    """First vertex lying on an entrance-free blue cycle and an entrance-free red cycle."""
    if g.k != 2:
        raise ValueError("find_t2_data needs a 2-graph")
    for v in range(g.N):
        blue = entrance_free_cycle(g, 1, v)
        if blue is None:
            continue
        red = entrance_free_cycle(g, 2, v)
        if red is not None:
            return T2Data(g.vertices[v], cycle_report(g, 1, blue), cycle_report(g, 2, red))
    if (coordinate_cycle_analysis(g, 1).entrance_cycle is None
            and coordinate_cycle_analysis(g, 2).entrance_cycle is None
            and is_cofinal(g)):
        raise StructureContradiction(
            "cofinal 2-graph without entrance cycles has no vertex on both an "
            "entrance-free blue cycle and an entrance-free red cycle")
    return None


# -- skew product ---------------------------------------------------------

Box = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SkewWindow:
    box: Box
    layers: dict[tuple[int, ...], tuple[str, ...]]
    # (color, (range vertex, stage), (source vertex, stage + e_color), multiplicity)
    edges: tuple[tuple[int, tuple[str, tuple[int, ...]], tuple[str, tuple[int, ...]], int], ...]
    omitted: int  # edges whose source stage leaves the box

    @property
    def vertex_count(self) -> int:
        return sum(len(vs) for vs in self.layers.values())

    @property
    def edge_count(self) -> int:
        return sum(e[3] for e in self.edges)

    def union_graph(self) -> nx.MultiDiGraph:
        G = nx.MultiDiGraph()
        for m, vs in self.layers.items():
            G.add_nodes_from((v, m) for v in vs)
        for _, rng, src, mult in self.edges:
            for _ in range(mult):
                G.add_edge(src, rng)
        return G

    def topological_order(self) -> list | None:
        try:
            return list(nx.topological_sort(self.union_graph()))
        except nx.NetworkXUnfeasible:
            return None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None


def parse_box(text: str, k: int) -> Box:
    """``"0:3"`` (same range in every coordinate) or ``"0:3,-1:2,..."``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) == 1:
        parts = parts * k
    if len(parts) != k:
        raise ParseError(f"box needs 1 or {k} ranges, got {len(parts)}")
    box = []
    for p in parts:
        try:
            lo, hi = (int(x) for x in p.split(":"))
        except ValueError:
            raise ParseError(f"bad box range {p!r}; expected lo:hi") from None
        box.append((lo, hi))
    return tuple(box)


def skew_product_window(g: KGraph, box: Box, cap: int = DEFAULT_SKEW_CAP) -> SkewWindow:
    if len(box) != g.k or any(lo > hi for lo, hi in box):
        raise ValueError("box must give a nonempty lo:hi range for each of the k coordinates")
    stages = list(itertools.product(*(range(lo, hi + 1) for lo, hi in box)))
    if len(stages) * g.N > cap:
        raise BoxTooLarge(f"window has {len(stages) * g.N} vertices, cap is {cap}")
    inside = set(stages)
    edges, omitted = [], 0
    for m in stages:
        for c, A in enumerate(g.matrices):
            m2 = tuple(x + (i == c) for i, x in enumerate(m))
            for v in range(g.N):
                for w in range(g.N):
                    mult = A[v][w]
                    if not mult:
                        continue
                    if m2 not in inside:
                        omitted += mult
                        continue
                    edges.append((c + 1, (g.vertices[v], m), (g.vertices[w], m2), mult))
    layers = {m: g.vertices for m in stages}
    return SkewWindow(box=tuple(box), layers=layers, edges=tuple(edges), omitted=omitted)
