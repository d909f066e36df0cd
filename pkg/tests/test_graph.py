import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpalg.errors import ParseError
from lpalg.graph import Graph, analyze, enumerate_paths, is_cycle, parse_graph, topological_order

A2 = parse_graph("vertices: v1 v2\nedge e: v1 -> v2\n")
R1 = parse_graph("vertices: v\nedge x: v -> v\n")
T = parse_graph("vertices: u w\nedge g: u -> u\nedge a: u -> w\n")


def test_declaration_order_preserved():
    g = parse_graph("vertices: b a\nedge y: b -> a\nedge x: b -> a\n")
    assert g.vertices == ("b", "a") or list(g.vertices) == ["b", "a"]
    assert g.out_edges("b") == ["y", "x"]
    assert g.special_edge("b") == "y"
    assert g.special_edge("a") is None


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("vertices: a\nedge e: a -> b\n", 2, "unknown vertex"),
        ("vertices: a a\n", 1, "duplicate vertex"),
        ("vertices: a\nedge e: a -> a\nedge e: a -> a\n", 3, "duplicate edge"),
        ("edge e: a -> a\n", 1, "before"),
        ("vertices: a\nedge e a -> a\n", 2, "cannot parse"),
        ("# only a comment\nvertices:\n", 2, "empty vertex list"),
        ("vertices: 1a\n", 1, "bad vertex name"),
    ],
)
def test_parse_errors_carry_line(text, line, fragment):
    with pytest.raises(ParseError, match=fragment) as info:
        parse_graph(text)
    assert info.value.line == line


def test_missing_vertices_line():
    with pytest.raises(ParseError):
        parse_graph("# nothing here\n")


def test_reports():
    r = analyze(A2)
    assert r.acyclic and r.condition_ne and r.sinks == ("v2",) and r.max_path_length == 1
    r = analyze(R1)
    assert not r.acyclic and r.condition_ne and r.cycle_witness == ("x",)
    assert r.max_path_length == float("inf")
    r = analyze(T)
    assert not r.condition_ne and r.ne_witness == (("g",), "a")


def test_enumerate_paths_examples():
    assert [str(p) for p in enumerate_paths(A2, 0, "v2")] == ["v2"]
    assert [str(p) for p in enumerate_paths(A2, 1, "v2")] == ["e"]
    assert enumerate_paths(A2, 1, "v1") == []


def test_path_composability_checked():
    with pytest.raises(ValueError):
        T.path(("a", "g"))
    assert len(T.path(("g", "g", "a"))) == 3


# -- exhaustive cross-checks ----------------------------------------------------


def _all_graphs(max_vertices=4, max_edges=5):
    for n in range(1, max_vertices + 1):
        verts = [f"v{i}" for i in range(n)]
        pairs = list(itertools.product(verts, repeat=2))
        for m in range(max_edges + 1):
            for ends in itertools.combinations_with_replacement(pairs, m):
                yield Graph(verts, [(f"f{j}", s, t) for j, (s, t) in enumerate(ends)])


def _simple_cycles(g):
    """Every cycle as an edge tuple, by brute-force search from each edge."""
    out = []
    n = len(g.edges)

    def walk(path, seen):
        last = g.r(path[-1])
        if last == g.s(path[0]):
            out.append(tuple(path))
        if len(path) >= n:
            return
        for f in g.out_edges(last):
            if g.r(f) not in seen or g.r(f) == g.s(path[0]):
                if f not in path:
                    walk(path + [f], seen | {g.r(f)})

    for e in g.edges:
        walk([e.name], {e.source, e.range})
    return out


def _brute_ne(g):
    for cyc in _simple_cycles(g):
        on = {g.s(f) for f in cyc}
        for f in g.edges:
            if f.source in on and f.name not in cyc:
                return False
    return True


def test_condition_ne_matches_brute_force():
    count = 0
    for g in _all_graphs():
        r = analyze(g)
        assert r.condition_ne == _brute_ne(g), g
        assert r.acyclic == (not _simple_cycles(g)) == (topological_order(g) is not None)
        if r.acyclic:
            assert r.condition_ne
        if r.cycle_witness:
            assert is_cycle(g, r.cycle_witness)
        if r.ne_witness:
            cyc, ex = r.ne_witness
            assert is_cycle(g, cyc) and g.s(ex) in {g.s(f) for f in cyc} and ex not in cyc
        count += 1
    assert count > 15000


def _adjacency_power_count(g, n, v):
    counts = {u: 1 for u in g.vertices}  # walks of length 0 from u
    for _ in range(n):
        nxt = {u: 0 for u in g.vertices}
        for f in g.edges:
            nxt[f.source] += counts[f.range]
        counts = nxt
    # walks of length n ending at v: count by reversing the direction
    ending = {u: int(u == v) for u in g.vertices}
    for _ in range(n):
        nxt = {u: 0 for u in g.vertices}
        for f in g.edges:
            nxt[f.source] += ending[f.range]
        ending = nxt
    return sum(ending.values())


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_path_counts_match_adjacency_powers(seed, n):
    import random

    rng = random.Random(seed)
    verts = [f"v{i}" for i in range(rng.randint(1, 4))]
    edges = [(f"f{j}", rng.choice(verts), rng.choice(verts)) for j in range(rng.randint(0, 5))]
    g = Graph(verts, edges)
    for v in verts:
        paths = enumerate_paths(g, n, v)
        assert len(paths) == _adjacency_power_count(g, n, v)
        assert all(len(p) == n and p.range == v for p in paths)
        assert paths == sorted(paths, key=lambda p: p.edges)
