"""Independent reference implementations used to check the package.

* ``rewrite_normal_form`` reduces formal words over {v, e, e^*} with the
  defining relations, choosing redexes at random, and never touches the
  package's monomial arithmetic.
* ``MatrixModel`` realises an acyclic-graph algebra as block matrices indexed
  by paths ending at sinks and evaluates words there.
"""

from __future__ import annotations

import random
from fractions import Fraction

from lpalg.graph import Graph
from lpalg.rings import RingDescriptor

Word = tuple  # of (kind, name) with kind in "v", "e", "g"


def random_word(g: Graph, rng: random.Random, max_len: int = 6) -> Word:
    gens = [("v", v) for v in g.vertices]
    gens += [("e", f.name) for f in g.edges] + [("g", f.name) for f in g.edges]
    return tuple(rng.choice(gens) for _ in range(rng.randint(1, max_len)))


def random_walk_word(g: Graph, rng: random.Random, max_len: int = 6) -> Word:
    """A word whose consecutive generators are composable, so it is usually nonzero."""
    gens = [("v", v) for v in g.vertices]
    gens += [("e", f.name) for f in g.edges] + [("g", f.name) for f in g.edges]
    word = [rng.choice(gens)]
    for _ in range(rng.randint(0, max_len - 1)):
        here = _end(g, *word[-1])
        word.append(rng.choice([x for x in gens if _start(g, *x) == here]))
    return tuple(word)


def _start(g: Graph, kind: str, name: str) -> str:
    return name if kind == "v" else (g.s(name) if kind == "e" else g.r(name))


def _end(g: Graph, kind: str, name: str) -> str:
    return name if kind == "v" else (g.r(name) if kind == "e" else g.s(name))


def _pair_rule(g: Graph, x, y):
    """Rewrite of the adjacent pair xy: None if irreducible, else a list of
    (integer coefficient, replacement tuple)."""
    (kx, nx), (ky, ny) = x, y
    s, r = g.s, g.r
    if _end(g, kx, nx) != _start(g, ky, ny):
        return [(0, ())]
    if kx == "v":
        return [(1, (y,))]
    if ky == "v":
        return [(1, (x,))]
    if kx == "g" and ky == "e":
        return [(1, (("v", r(nx)),))] if nx == ny else [(0, ())]
    if kx == "e" and ky == "g" and nx == ny and g.special_edge(s(nx)) == nx:
        u = s(nx)
        out = [(1, (("v", u),))]
        for f in g.out_edges(u):
            if f != nx:
                out.append((-1, (("e", f), ("g", f))))
        return out
    return None


def _redexes(g: Graph, word: Word) -> list[int]:
    return [i for i in range(len(word) - 1) if _pair_rule(g, word[i], word[i + 1]) is not None]


def rewrite_normal_form(g: Graph, ring: RingDescriptor, terms, rng: random.Random | None = None) -> dict:
    """Reduce ``[(coeff, word), ...]`` to ``{monomial key: payload}``.

    With ``rng`` the redex (term and position) is chosen at random; without it
    the leftmost redex of the first reducible term is used.
    """
    pending: dict = {}
    for c, w in terms:
        c = ring.coerce(c)
        pending[tuple(w)] = ring.add(pending.get(tuple(w), ring.zero()), c)
    while True:
        pending = {w: c for w, c in pending.items() if not ring.is_zero(c)}
        reducible = [w for w in pending if _redexes(g, w)]
        if not reducible:
            break
        w = rng.choice(reducible) if rng else reducible[0]
        spots = _redexes(g, w)
        i = rng.choice(spots) if rng else spots[0]
        c = pending.pop(w)
        for k, rep in _pair_rule(g, w[i], w[i + 1]):
            if k == 0:
                continue
            nw = w[:i] + rep + w[i + 2:]
            pending[nw] = ring.add(pending.get(nw, ring.zero()), ring.scale_int(k, c))
    out = {}
    for w, c in pending.items():
        key = _word_key(g, w)
        out[key] = ring.add(out.get(key, ring.zero()), c)
    return {k: c for k, c in out.items() if not ring.is_zero(c)}


def _word_key(g: Graph, w: Word):
    if len(w) == 1 and w[0][0] == "v":
        return ((), (), w[0][1])
    alpha = tuple(n for k, n in w if k == "e")
    ghosts = [n for k, n in w if k == "g"]
    assert all(k != "v" for k, _ in w), w
    assert [k for k, _ in w] == ["e"] * len(alpha) + ["g"] * len(ghosts), w
    beta = tuple(reversed(ghosts))
    v = g.r(alpha[-1]) if alpha else g.r(beta[-1])
    return (alpha, beta, v)


class MatrixModel:
    """Faithful matrix representation of L_R(E) for acyclic E.

    Rows and columns are indexed by all paths that end at a sink; a vertex v
    acts as the projection onto paths starting at v, an edge e sends p to e.p.
    """

    def __init__(self, g: Graph):
        self.g = g
        # grow backwards from each sink: (edges, start vertex)
        out = [((), v) for v in g.vertices if g.is_sink(v)]
        stack = list(out)
        while stack:
            edges, start = stack.pop()
            for f in g.in_edges(start):
                item = ((f,) + edges, g.s(f))
                out.append(item)
                stack.append(item)
        self.paths = sorted(out, key=lambda t: (len(t[0]), t))
        self.index = {p: i for i, p in enumerate(self.paths)}
        self.n = len(self.paths)

    def dimension(self) -> int:
        """Sum over sinks of (number of paths ending there) squared."""
        counts: dict = {}
        for edges, start in self.paths:
            end = self.g.r(edges[-1]) if edges else start
            counts[end] = counts.get(end, 0) + 1
        return sum(n * n for n in counts.values())

    def generator(self, kind: str, name: str) -> dict:
        m = {}
        g = self.g
        for (edges, start), i in self.index.items():
            if kind == "v" and start == name:
                m[(i, i)] = 1
            elif kind == "e" and start == g.r(name):
                j = self.index[((name,) + edges, g.s(name))]
                m[(j, i)] = 1
        if kind == "g":
            m = {(j, i): c for (i, j), c in self.generator("e", name).items()}
        return m

    @staticmethod
    def mul(a: dict, b: dict) -> dict:
        out: dict = {}
        for (i, k), x in a.items():
            for (k2, j), y in b.items():
                if k == k2:
                    out[(i, j)] = out.get((i, j), 0) + x * y
        return {k: v for k, v in out.items() if v != 0}

    @staticmethod
    def add(a: dict, b: dict, c=1) -> dict:
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v != 0}

    def word(self, w: Word) -> dict:
        m = None
        for kind, name in w:
            x = self.generator(kind, name)
            m = x if m is None else self.mul(m, x)
        return m or {}

    def key(self, key) -> dict:
        a, b, v = key
        w = [("e", f) for f in a] + [("g", f) for f in reversed(b)]
        return self.word(w or [("v", v)])

    def element(self, x) -> dict:
        out: dict = {}
        for key, c in x.terms():
            out = self.add(out, self.key(key), Fraction(c))
        return out

    def combination(self, terms) -> dict:
        out: dict = {}
        for c, w in terms:
            out = self.add(out, self.word(w), Fraction(c))
        return out


def rank(vectors: list[dict]) -> int:
    """Rank over Q of sparse vectors, by plain Gaussian elimination."""
    rows = [{k: Fraction(v) for k, v in vec.items() if v} for vec in vectors]
    r = 0
    pivots: list = []
    for row in rows:
        for pk, prow in pivots:
            c = row.get(pk)
            if c:
                for k, v in prow.items():
                    row[k] = row.get(k, 0) - c * v
                row = {k: v for k, v in row.items() if v}
        if row:
            pk = min(row)
            inv = 1 / row[pk]
            pivots.append((pk, {k: v * inv for k, v in row.items()}))
            r += 1
    return r
