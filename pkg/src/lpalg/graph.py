"""Finite directed multigraphs and the graph predicates used by the classifier."""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

from .errors import ParseError

NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*$")


class Edge(NamedTuple):
    name: str
    source: str
    range: str


@dataclass(frozen=True, order=True)
class Path:
    """A vertex (length 0) or a composable edge sequence.

    Ordering is by length, then edge names, then endpoints, which is the
    canonical order used everywhere in the package.
    """

    length: int = field(init=False, repr=False)
    edges: tuple[str, ...]
    source: str
    range: str

    def __init__(self, edges: tuple[str, ...], source: str, range: str):
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "range", range)
        object.__setattr__(self, "length", len(self.edges))

    @classmethod
    def vertex(cls, v: str) -> "Path":
        return cls((), v, v)

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else self.source

    def is_prefix_of(self, other: "Path") -> bool:
        if self.source != other.source:
            return False
        return other.edges[: self.length] == self.edges


class Graph:
    def __init__(self, vertices, edges):
        self.vertices: tuple[str, ...] = tuple(vertices)
        self.edges: tuple[Edge, ...] = tuple(Edge(*e) for e in edges)
        if not self.vertices:
            raise ValueError("graph must have at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex name")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise ValueError("duplicate edge name")
        vs = set(self.vertices)
        for e in self.edges:
            if e.source not in vs or e.range not in vs:
                raise ValueError(f"edge {e.name} has an endpoint that is not a vertex")
        self._edge = {e.name: e for e in self.edges}
        self._out: dict[str, list[str]] = {v: [] for v in self.vertices}
        self._in: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            self._out[e.source].append(e.name)
            self._in[e.range].append(e.name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and (self.vertices, self.edges) == (other.vertices, other.edges)

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self.vertices)}, edges={[tuple(e) for e in self.edges]})"

    def has_vertex(self, v: str) -> bool:
        return v in self._out

    def has_edge(self, f: str) -> bool:
        return f in self._edge

    def s(self, f: str) -> str:
        return self._edge[f].source

    def r(self, f: str) -> str:
        return self._edge[f].range

    def out_edges(self, v: str) -> list[str]:
        return self._out[v]

    def in_edges(self, v: str) -> list[str]:
        return self._in[v]

    def is_sink(self, v: str) -> bool:
        return not self._out[v]

    def special_edge(self, v: str) -> str | None:
        """First outgoing edge of ``v`` in declaration order; fixes the normal form."""
        out = self._out[v]
        return out[0] if out else None

    @cached_property
    def special_edges(self) -> frozenset[str]:
        return frozenset(out[0] for out in self._out.values() if out)

    def path(self, edges) -> Path:
        edges = tuple(edges)
        if not edges:
            raise ValueError("use Path.vertex for length-0 paths")
        for a, b in zip(edges, edges[1:]):
            if self.r(a) != self.s(b):
                raise ValueError(f"edges {a} and {b} are not composable")
        return Path(edges, self.s(edges[0]), self.r(edges[-1]))

    def to_text(self) -> str:
        lines = ["vertices: " + " ".join(self.vertices)]
        lines += [f"edge {e.name}: {e.source} -> {e.range}" for e in self.edges]
        return "\n".join(lines) + "\n"

    # -- path enumeration ----------------------------------------------------

    def paths_ending_at(self, n: int, v: str) -> list[Path]:
        if n == 0:
            return [Path.vertex(v)]
        out = []
        stack = [((f,), self.s(f)) for f in self._in[v]]
        while stack:
            edges, start = stack.pop()
            if len(edges) == n:
                out.append(Path(edges, start, v))
                continue
            for f in self._in[start]:
                stack.append(((f,) + edges, self.s(f)))
        return sorted(out)

    def paths_of_length(self, n: int) -> list[Path]:
        out = []
        for v in self.vertices:
            out.extend(self.paths_ending_at(n, v))
        return sorted(out)

    def paths_from(self, v: str, max_length: int) -> list[Path]:
        """All paths starting at ``v`` of length at most ``max_length``."""
        out = [Path.vertex(v)]
        frontier = [Path.vertex(v)]
        for _ in range(max_length):
            nxt = []
            for p in frontier:
                for f in self._out[p.range]:
                    nxt.append(Path(p.edges + (f,), v, self.r(f)))
            out.extend(nxt)
            frontier = nxt
        return out

    def paths_up_to(self, max_length: int) -> list[Path]:
        out = []
        for v in self.vertices:
            out.extend(self.paths_from(v, max_length))
        return sorted(out)


def enumerate_paths(g: Graph, n: int, v: str) -> list[Path]:
    """Paths of length ``n`` with range ``v``, in lexicographic edge order."""
    if n < 0:
        raise ValueError("path length must be non-negative")
    if not g.has_vertex(v):
        raise ValueError(f"unknown vertex {v!r}")
    return g.paths_ending_at(n, v)


# -- parsing -----------------------------------------------------------------

_EDGE_LINE = re.compile(r"^edge\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$")


def parse_graph(text: str) -> Graph:
    """Parse the line-based graph format (``vertices:`` line plus ``edge`` lines)."""
    vertices: list[str] | None = None
    edges: list[tuple[str, str, str]] = []
    seen_edges: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("vertices:"):
            if vertices is not None:
                raise ParseError("second 'vertices:' line", lineno)
            vertices = line[len("vertices:"):].split()
            if not vertices:
                raise ParseError("empty vertex list (the empty graph has no identity)", lineno)
            for v in vertices:
                if not NAME.match(v):
                    raise ParseError(f"bad vertex name {v!r}", lineno)
            if len(set(vertices)) != len(vertices):
                dup = next(v for v in vertices if vertices.count(v) > 1)
                raise ParseError(f"duplicate vertex name {dup!r}", lineno)
            continue
        m = _EDGE_LINE.match(line)
        if not m:
            raise ParseError(f"cannot parse {line!r}", lineno)
        if vertices is None:
            raise ParseError("edge declared before the 'vertices:' line", lineno)
        name, src, dst = m.groups()
        if not NAME.match(name):
            raise ParseError(f"bad edge name {name!r}", lineno)
        if name in seen_edges:
            raise ParseError(f"duplicate edge name {name!r}", lineno)
        for end in (src, dst):
            if end not in vertices:
                raise ParseError(f"edge {name} refers to unknown vertex {end!r}", lineno)
        seen_edges.add(name)
        edges.append((name, src, dst))
    if vertices is None:
        raise ParseError("missing 'vertices:' line")
    return Graph(vertices, edges)


# -- analysis ----------------------------------------------------------------


@dataclass(frozen=True)
class GraphReport:
    condition_ne: bool
    ne_witness: tuple[tuple[str, ...], str] | None  # (cycle edges, exit edge)
    acyclic: bool
    cycle_witness: tuple[str, ...] | None
    sinks: tuple[str, ...]
    max_path_length: float  # an int, or math.inf when a cycle exists
    regular_vertices: tuple[str, ...]


def strongly_connected_components(g: Graph) -> list[list[str]]:
    """Tarjan's algorithm, iterative."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            out = g.out_edges(v)
            if i < len(out):
                work.append((v, i + 1))
                w = g.r(out[i])
                if w not in index:
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def _cyclic_vertices(g: Graph) -> set[str]:
    on_cycle: set[str] = set()
    for comp in strongly_connected_components(g):
        if len(comp) > 1:
            on_cycle.update(comp)
        elif any(g.r(f) == comp[0] for f in g.out_edges(comp[0])):
            on_cycle.add(comp[0])
    return on_cycle


def cycle_through(g: Graph, v: str, first_edge: str | None = None) -> tuple[str, ...] | None:
    """A shortest (hence simple) cycle based at ``v``, optionally forced to
    leave ``v`` along ``first_edge``."""
    starts = [first_edge] if first_edge else g.out_edges(v)
    best = None
    for f in starts:
        if g.r(f) == v:
            return (f,)
        prev: dict[str, str] = {}
        seen = {v, g.r(f)}
        queue = deque([g.r(f)])
        found = False
        while queue and not found:
            u = queue.popleft()
            for e in g.out_edges(u):
                w = g.r(e)
                if w == v:
                    prev[v] = e
                    found = True
                    break
                if w not in seen:
                    seen.add(w)
                    prev[w] = e
                    queue.append(w)
        if found:
            path = []
            w = v
            while True:
                e = prev[w]
                path.append(e)
                w = g.s(e)
                if w == g.r(f):
                    break
            cyc = (f,) + tuple(reversed(path))
            if best is None or len(cyc) < len(best):
                best = cyc
    return best


def normalize_cycle(g: Graph, cycle: tuple[str, ...]) -> tuple[str, ...]:
    """Rotate so that the lexicographically least base vertex comes first."""
    k = min(range(len(cycle)), key=lambda i: g.s(cycle[i]))
    return cycle[k:] + cycle[:k]


def rotate_cycle_to(g: Graph, cycle: tuple[str, ...], v: str) -> tuple[str, ...]:
    for k in range(len(cycle)):
        if g.s(cycle[k]) == v:
            return cycle[k:] + cycle[:k]
    raise ValueError(f"vertex {v} is not on the cycle")


def is_cycle(g: Graph, cycle: tuple[str, ...]) -> bool:
    if not cycle or not all(g.has_edge(f) for f in cycle):
        return False
    n = len(cycle)
    if any(g.r(cycle[i]) != g.s(cycle[(i + 1) % n]) for i in range(n)):
        return False
    bases = [g.s(f) for f in cycle]
    return len(set(bases)) == n


def analyze(g: Graph) -> GraphReport:
    on_cycle = _cyclic_vertices(g)
    acyclic = not on_cycle
    cycle_witness = None
    ne_witness = None
    if not acyclic:
        first = next(v for v in g.vertices if v in on_cycle)
        cycle_witness = normalize_cycle(g, cycle_through(g, first))
        # an exit from a cycle through v exists iff v has a second outgoing edge
        bad = [v for v in g.vertices if v in on_cycle and len(g.out_edges(v)) != 1]
        if bad:
            v = bad[0]
            cyc = cycle_through(g, v)
            exit_edge = next(f for f in g.out_edges(v) if f != cyc[0])
            ne_witness = (normalize_cycle(g, cyc), exit_edge)
    return GraphReport(
        condition_ne=ne_witness is None,
        ne_witness=ne_witness,
        acyclic=acyclic,
        cycle_witness=cycle_witness,
        sinks=tuple(v for v in g.vertices if g.is_sink(v)),
        max_path_length=_longest_path(g) if acyclic else math.inf,
        regular_vertices=tuple(v for v in g.vertices if not g.is_sink(v)),
    )


def _longest_path(g: Graph) -> int:
    """Longest path length on a DAG (longest path *ending* at each vertex)."""
    indeg = {v: len(g.in_edges(v)) for v in g.vertices}
    order = [v for v in g.vertices if indeg[v] == 0]
    best = {v: 0 for v in g.vertices}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for f in g.out_edges(v):
            w = g.r(f)
            best[w] = max(best[w], best[v] + 1)
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
    return max(best.values())


def topological_order(g: Graph) -> list[str] | None:
    indeg = {v: len(g.in_edges(v)) for v in g.vertices}
    order = [v for v in g.vertices if indeg[v] == 0]
    i = 0
    while i < len(order):
        for f in g.out_edges(order[i]):
            w = g.r(f)
            indeg[w] -= 1
            if indeg[w] == 0:
                order.append(w)
        i += 1
    return order if len(order) == len(g.vertices) else None
