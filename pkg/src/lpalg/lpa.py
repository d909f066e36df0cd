"""Leavitt path algebras of finite graphs over exact coefficient rings.

Elements are kept in a canonical normal form: finite combinations of
*reduced* monomials ``alpha beta^*``.  At every regular vertex the first
outgoing edge (declaration order) is *special*; a monomial is reduced unless
``alpha`` and ``beta`` both end in the same special edge ``e``, in which case

    alpha' e e^* beta'^*  =  alpha' beta'^*  -  sum_{f != e, s(f) = s(e)} alpha' f (beta' f)^*

rewrites it.  Reduced monomials form a free basis over any unital ring, so
equality of elements is coefficient-wise equality of normal forms.

A monomial is stored as a key ``(alpha_edges, beta_edges, v)`` with
``v = r(alpha) = r(beta)``; the vertex carries the endpoint for length-0 paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Iterable, Iterator, Sequence

from .errors import PreconditionError
from .graph import Graph, Path, analyze, is_cycle, rotate_cycle_to
from .rings import RingDescriptor

Key = tuple  # (tuple[str, ...], tuple[str, ...], str)


class UnknownGenerator(ValueError):
    pass


def render_key(key: Key) -> str:
    a, b, v = key
    parts = list(a) + [f + "^*" for f in reversed(b)]
    return ".".join(parts) if parts else v


def key_degree(key: Key) -> int:
    return len(key[0]) - len(key[1])


def _term_order(key: Key):
    a, b, v = key
    return (len(a), len(b), a, b, v)


class NormalElement:
    """An element of a Leavitt path algebra in reduced normal form. Immutable."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: "LeavittPathAlgebra", terms: dict):
        self.algebra = algebra
        self._terms = terms
        self._hash = None

    # -- inspection ------------------------------------------------------------

    @property
    def ring(self) -> RingDescriptor:
        return self.algebra.ring

    def terms(self) -> list[tuple[Key, Any]]:
        return sorted(self._terms.items(), key=lambda kv: _term_order(kv[0]))

    def coefficient(self, key: Key) -> Any:
        return self._terms.get(key, self.ring.zero())

    def keys(self) -> set:
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Key, Any]]:
        return iter(self.terms())

    def degrees(self) -> set[int]:
        return {key_degree(k) for k in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "NormalElement") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "NormalElement") -> "NormalElement":
        self._check(other)
        R = self.ring
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = R.add(out.get(k, R.zero()), c)
            if R.is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return NormalElement(self.algebra, out)

    def __neg__(self) -> "NormalElement":
        R = self.ring
        return NormalElement(self.algebra, {k: R.neg(c) for k, c in self._terms.items()})

    def __sub__(self, other: "NormalElement") -> "NormalElement":
        return self + (-other)

    def scale(self, c: Any) -> "NormalElement":
        R = self.ring
        c = R.coerce(c)
        out = {}
        for k, x in self._terms.items():
            y = R.mul(c, x)
            if not R.is_zero(y):
                out[k] = y
        return NormalElement(self.algebra, out)

    def __mul__(self, other: Any) -> "NormalElement":
        if isinstance(other, NormalElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other: Any) -> "NormalElement":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NormalElement):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return self.algebra.render(self)

    def __repr__(self) -> str:
        return f"NormalElement({self})"


@dataclass(frozen=True)
class EpsilonUnit:
    """The unit of the ideal S_i S_{-i}, written as a sum of projections mu mu^*."""

    degree: int
    value: NormalElement
    projections: tuple[Path, ...]


@dataclass(frozen=True)
class FiltrationResult:
    k: int
    generators: tuple[tuple[tuple[Path, Path], ...], ...]  # generators of C_0 .. C_k


@dataclass(frozen=True)
class MatrixFactor:
    kind: str  # "sink" or "top"
    level: int
    vertex: str
    paths: tuple[Path, ...]

    @property
    def size(self) -> int:
        return len(self.paths)

    @property
    def label(self) -> str:
        return f"{self.kind}({self.level},{self.vertex})"


class MatrixDecomposition:
    """Explicit isomorphism D_n -> product of full matrix rings.

    Matrices are sparse: ``{factor index: {(row, col): payload}}``.
    """

    def __init__(self, algebra: "LeavittPathAlgebra", n: int, factors: Sequence[MatrixFactor]):
        self.algebra = algebra
        self.n = n
        self.factors = tuple(factors)
        self._by_label = {(f.kind, f.level, f.vertex): i for i, f in enumerate(self.factors)}
        self._pindex = [{(p.edges, p.source): j for j, p in enumerate(f.paths)} for f in self.factors]

    @property
    def sizes(self) -> list[int]:
        return [f.size for f in self.factors]

    @property
    def dimension(self) -> int:
        return sum(f.size ** 2 for f in self.factors)

    def units(self) -> Iterator[tuple[int, int, int]]:
        for fi, f in enumerate(self.factors):
            for a in range(f.size):
                for b in range(f.size):
                    yield fi, a, b

    def unit(self, fi: int, a: int, b: int) -> NormalElement:
        f = self.factors[fi]
        p, q = f.paths[a], f.paths[b]
        return self.algebra.monomial(p, q)

    def forward(self, mats: dict) -> NormalElement:
        alg = self.algebra
        x = alg.zero()
        for fi, m in mats.items():
            for (a, b), c in m.items():
                x = x + self.unit(fi, a, b).scale(c)
        return x

    def backward(self, x: NormalElement) -> dict:
        R = self.algebra.ring
        out: dict = {}
        for key, c in x._terms.items():
            a, b, v = key
            if self.n >= 0 and len(a) != len(b):
                raise ValueError(f"{render_key(key)} has nonzero degree; not in D_{self.n}")
            if 0 <= self.n < len(a):
                raise ValueError(f"{render_key(key)} is longer than {self.n}; not in D_{self.n}")
            for (fi, i, j), n in self._expand(a, b, v):
                m = out.setdefault(fi, {})
                s = R.add(m.get((i, j), R.zero()), R.scale_int(n, c))
                if R.is_zero(s):
                    m.pop((i, j), None)
                else:
                    m[(i, j)] = s
        return {fi: m for fi, m in out.items() if m}

    def _expand(self, a, b, v):
        g = self.algebra.graph
        i = len(a)
        if i == self.n or g.is_sink(v):
            if self.n < 0:
                fi = self._by_label[("sink", -1, v)]
            else:
                fi = self._by_label[("top" if i == self.n else "sink", i, v)]
            sa = g.s(a[0]) if a else v
            sb = g.s(b[0]) if b else v
            return [((fi, self._pindex[fi][(a, sa)], self._pindex[fi][(b, sb)]), 1)]
        out = []
        for f in g.out_edges(v):
            out.extend(self._expand(a + (f,), b + (f,), g.r(f)))
        return out

    def matmul(self, m1: dict, m2: dict) -> dict:
        R = self.algebra.ring
        out: dict = {}
        for fi in set(m1) & set(m2):
            prod: dict = {}
            for (i, j), c in m1[fi].items():
                for (j2, k), d in m2[fi].items():
                    if j != j2:
                        continue
                    s = R.add(prod.get((i, k), R.zero()), R.mul(c, d))
                    if R.is_zero(s):
                        prod.pop((i, k), None)
                    else:
                        prod[(i, k)] = s
            if prod:
                out[fi] = prod
        return out


@dataclass(frozen=True)
class TraceInverseSystem:
    """The trace sum n_v v + n'_alpha alpha alpha^* and the solved inverse coefficients."""

    vertices: tuple[str, ...]
    vertex_coeffs: tuple[int, ...]
    paths: tuple[Path, ...]
    path_coeffs: tuple[int, ...]
    start: tuple[int, ...]  # index of s(alpha_i) in ``vertices``
    prefix_triples: frozenset  # (i, j, t): alpha_i, alpha_j comparable, t the longer
    m_vertex: tuple[Any, ...]
    m_path: tuple[Any, ...]


class LeavittPathAlgebra:
    def __init__(self, graph: Graph, ring: RingDescriptor):
        self.graph = graph
        self.ring = ring
        self._specials = graph.special_edges
        self._reduce_cache: dict = {}
        self._mul_cache: dict = {}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LeavittPathAlgebra) and (self.graph, self.ring) == (other.graph, other.ring)

    def __hash__(self) -> int:
        return hash((self.graph, self.ring))

    def __repr__(self) -> str:
        return f"L_{self.ring}({self.graph!r})"

    @cached_property
    def report(self):
        return analyze(self.graph)

    # -- monomial kernel -----------------------------------------------------

    def is_reduced(self, key: Key) -> bool:
        a, b, _ = key
        return not (a and b and a[-1] == b[-1] and a[-1] in self._specials)

    def reduce_key(self, key: Key) -> dict:
        """Integer combination of reduced monomials equal to the monomial ``key``."""
        hit = self._reduce_cache.get(key)
        if hit is not None:
            return hit
        a, b, v = key
        if not (a and b and a[-1] == b[-1] and a[-1] in self._specials):
            out = {key: 1}
        else:
            g = self.graph
            e = a[-1]
            u = g.s(e)
            a0, b0 = a[:-1], b[:-1]
            out = dict(self.reduce_key((a0, b0, u)))
            for f in g.out_edges(u):
                if f != e:
                    k = (a0 + (f,), b0 + (f,), g.r(f))
                    n = out.get(k, 0) - 1
                    if n:
                        out[k] = n
                    else:
                        out.pop(k, None)
        self._reduce_cache[key] = out
        return out

    def _src(self, edges: tuple, v: str) -> str:
        return self.graph.s(edges[0]) if edges else v

    def mul_keys(self, k1: Key, k2: Key) -> dict:
        """(alpha beta^*)(gamma delta^*) as an integer combination of reduced monomials."""
        ck = (k1, k2)
        hit = self._mul_cache.get(ck)
        if hit is not None:
            return hit
        a, b, v = k1
        c, d, w = k2
        res = None
        if len(c) >= len(b):
            ok = c[: len(b)] == b if b else self._src(c, w) == v
            if ok:
                res = (a + c[len(b):], d, w)
        else:
            ok = b[: len(c)] == c if c else self._src(b, v) == w
            if ok:
                res = (a, d + b[len(c):], v)
        out = self.reduce_key(res) if res is not None else {}
        self._mul_cache[ck] = out
        return out

    # -- element construction -----------------------------------------------

    def element(self, terms: Iterable[tuple[Key, Any]]) -> NormalElement:
        """Build an element from (possibly unreduced) monomial keys and coefficients."""
        R = self.ring
        out: dict = {}
        for key, c in terms:
            c = R.coerce(c)
            if R.is_zero(c):
                continue
            for k, n in self.reduce_key(key).items():
                s = R.add(out.get(k, R.zero()), R.scale_int(n, c))
                if R.is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
        return NormalElement(self, out)

    def zero(self) -> NormalElement:
        return NormalElement(self, {})

    def one(self) -> NormalElement:
        return self.element((((), (), v), 1) for v in self.graph.vertices)

    def vertex(self, v: str) -> NormalElement:
        if not self.graph.has_vertex(v):
            raise UnknownGenerator(f"unknown vertex {v!r}")
        return self.element([(((), (), v), 1)])

    def edge(self, f: str) -> NormalElement:
        if not self.graph.has_edge(f):
            raise UnknownGenerator(f"unknown edge {f!r}")
        return self.element([(((f,), (), self.graph.r(f)), 1)])

    def ghost(self, f: str) -> NormalElement:
        if not self.graph.has_edge(f):
            raise UnknownGenerator(f"unknown edge {f!r}")
        return self.element([(((), (f,), self.graph.r(f)), 1)])

    def monomial(self, alpha: Path, beta: Path, coeff: Any = 1) -> NormalElement:
        """Normal form of ``coeff * alpha beta^*``."""
        if alpha.range != beta.range:
            raise ValueError("alpha and beta must have the same range")
        return self.element([((alpha.edges, beta.edges, alpha.range), coeff)])

    def generator(self, kind: str, name: str) -> NormalElement:
        if kind == "v":
            return self.vertex(name)
        if kind == "e":
            return self.edge(name)
        if kind == "g":
            return self.ghost(name)
        raise ValueError(f"unknown generator kind {kind!r}")

    # -- core operations -----------------------------------------------------

    def multiply(self, x: NormalElement, y: NormalElement) -> NormalElement:
        if x.algebra != self or y.algebra != self:
            raise ValueError("context mismatch: elements from a different algebra")
        R = self.ring
        out: dict = {}
        zero = R.zero()
        for k1, c1 in x._terms.items():
            for k2, c2 in y._terms.items():
                prod = self.mul_keys(k1, k2)
                if not prod:
                    continue
                c = R.mul(c1, c2)
                if R.is_zero(c):
                    continue
                for k, n in prod.items():
                    s = R.add(out.get(k, zero), c if n == 1 else R.scale_int(n, c))
                    if R.is_zero(s):
                        out.pop(k, None)
                    else:
                        out[k] = s
        return NormalElement(self, out)

    def normal_form(self, raw: Any) -> NormalElement:
        """Normal form of a formal sum of words over the generators.

        ``raw`` is a NormalElement (returned unchanged), an expression string,
        or an iterable of ``(coefficient, word)`` where a word is a sequence of
        ``(kind, name)`` with kind ``"v"`` (vertex), ``"e"`` (edge) or ``"g"``
        (ghost edge).
        """
        if isinstance(raw, NormalElement):
            if raw.algebra != self:
                raise ValueError("context mismatch")
            return raw
        if isinstance(raw, str):
            from .expr import parse_element

            return parse_element(self, raw)
        total = self.zero()
        for coeff, word in raw:
            word = list(word)
            if not word:
                term = self.one()
            else:
                term = self.generator(*word[0])
                for gen in word[1:]:
                    term = term * self.generator(*gen)
            total = total + term.scale(coeff)
        return total

    def degree_decompose(self, x: NormalElement) -> dict[int, NormalElement]:
        parts: dict[int, dict] = {}
        for k, c in x._terms.items():
            parts.setdefault(key_degree(k), {})[k] = c
        return {d: NormalElement(self, t) for d, t in sorted(parts.items())}

    def parse(self, text: str) -> NormalElement:
        from .expr import parse_element

        return parse_element(self, text)

    def render(self, x: NormalElement) -> str:
        from .expr import render_element

        return render_element(x)

    # -- bases -----------------------------------------------------------------

    def _length_bound(self, max_len: int | None) -> int:
        if max_len is not None:
            return max_len
        if not self.report.acyclic:
            raise PreconditionError("graph has a cycle: a length bound is required")
        return int(self.report.max_path_length)

    def reduced_monomials(self, max_len: int | None = None) -> list[Key]:
        """All reduced monomials with both path lengths at most ``max_len``."""
        L = self._length_bound(max_len)
        by_range: dict[str, list[Path]] = {}
        for p in self.graph.paths_up_to(L):
            by_range.setdefault(p.range, []).append(p)
        out = []
        for v, ps in by_range.items():
            for p in ps:
                for q in ps:
                    key = (p.edges, q.edges, v)
                    if self.is_reduced(key):
                        out.append(key)
        return sorted(out, key=_term_order)

    def degree_basis(self, i: int, max_len: int | None = None) -> list[Key]:
        return [k for k in self.reduced_monomials(max_len) if key_degree(k) == i]

    def basis_element(self, key: Key) -> NormalElement:
        return NormalElement(self, {key: self.ring.one()})

    # -- epsilon units ---------------------------------------------------------

    def epsilon_paths(self, i: int) -> list[Path]:
        """Minimal paths mu admitting a path of length len(mu) - i into r(mu).

        The unit of S_i S_{-i} is the sum of mu mu^* over these paths.
        """
        g = self.graph
        if i >= 0:
            return g.paths_of_length(i)
        n = -i
        nv = len(g.vertices)
        reach = [set(g.vertices)]
        for _ in range(nv + n + 1):
            reach.append({f.range for f in g.edges if f.source in reach[-1]} if g.edges else set())
        out = []
        for v in g.vertices:
            stack = [Path.vertex(v)]
            while stack:
                mu = stack.pop()
                if mu.range in reach[mu.length + n]:
                    out.append(mu)
                    continue
                # minimal paths are simple and avoid cycles, hence have length <= |E^0|
                if mu.length >= nv:
                    continue
                for f in g.out_edges(mu.range):
                    stack.append(Path(mu.edges + (f,), v, g.r(f)))
        return sorted(out)

    def epsilon(self, i: int, window: int | None = None) -> EpsilonUnit:
        if not self.report.acyclic:
            if window is None:
                raise PreconditionError("graph has a cycle: epsilon needs a degree window (--window)")
            if abs(i) > window:
                raise PreconditionError(f"degree {i} outside the window [-{window}, {window}]")
        paths = tuple(self.epsilon_paths(i))
        value = self.element(((p.edges, p.edges, p.range), 1) for p in paths)
        return EpsilonUnit(i, value, paths)

    def epsilon_by_solving(self, i: int, max_len: int | None = None) -> NormalElement | None:
        """Unit of the (truncated) ideal S_i S_{-i} found by linear solving.

        Independent of :meth:`epsilon_paths`; used to cross-check it.
        """
        from .linalg import Span, combine

        R = self.ring
        pos = [self.basis_element(k) for k in self.degree_basis(i, max_len)]
        neg = [self.basis_element(k) for k in self.degree_basis(-i, max_len)]
        seen = {}
        for x in pos:
            for y in neg:
                p = x * y
                if not p.is_zero():
                    seen.setdefault(p, None)
        gens = list(seen)
        if not gens:
            return self.zero()
        # u x = x on S_i and y u = y on S_{-i}
        cols = []
        for u in gens:
            vec = {}
            for j, x in enumerate(pos):
                for k, c in (u * x)._terms.items():
                    vec[("L", j, k)] = c
            for j, y in enumerate(neg):
                for k, c in (y * u)._terms.items():
                    vec[("R", j, k)] = c
            cols.append(vec)
        target = {}
        for j, x in enumerate(pos):
            for k, c in x._terms.items():
                target[("L", j, k)] = c
        for j, y in enumerate(neg):
            for k, c in y._terms.items():
                target[("R", j, k)] = c
        sol = Span(R, cols).solve(target)
        if sol is None:
            return None
        terms = combine(R, sol, [u._terms for u in gens])
        return NormalElement(self, terms)

    # -- filtrations and structure --------------------------------------------

    def cm_filtration(self) -> FiltrationResult:
        """Least k with C_{k+1} inside C_0 + ... + C_k.

        C_0 + ... + C_k is the free module on reduced degree-0 monomials of
        length <= k, so inclusion is decided by the lengths appearing in the
        normal forms of the generators of C_{k+1}.
        """
        if not self.report.condition_ne:
            cyc, ex = self.report.ne_witness
            raise PreconditionError(
                f"Condition (NE) fails (cycle {'.'.join(cyc)} has exit {ex}): "
                "the filtration need not stabilize; see ne_witness_idempotents"
            )
        g = self.graph
        gens = []
        for k in range(len(g.vertices) + 2):
            gens.append(self._c_generators(k))
            nxt = self._c_generators(k + 1)
            if all(
                len(t[0]) <= k
                for p, q in nxt
                for t in self.reduce_key((p.edges, q.edges, p.range))
            ):
                return FiltrationResult(k, tuple(gens))
        raise AssertionError("filtration did not stabilize on a graph satisfying (NE)")

    def _c_generators(self, m: int) -> tuple[tuple[Path, Path], ...]:
        by_range: dict[str, list[Path]] = {}
        for p in self.graph.paths_of_length(m):
            by_range.setdefault(p.range, []).append(p)
        return tuple((p, q) for v in sorted(by_range) for p in by_range[v] for q in by_range[v])

    def dn_structure(self, n: int) -> MatrixDecomposition:
        if n < 0:
            raise ValueError("level must be non-negative")
        g = self.graph
        factors = []
        for i in range(n):
            for v in g.vertices:
                if g.is_sink(v):
                    ps = g.paths_ending_at(i, v)
                    if ps:
                        factors.append(MatrixFactor("sink", i, v, tuple(ps)))
        for v in g.vertices:
            ps = g.paths_ending_at(n, v)
            if ps:
                factors.append(MatrixFactor("top", n, v, tuple(ps)))
        return MatrixDecomposition(self, n, factors)

    def full_matrix_decomposition(self) -> MatrixDecomposition:
        """For an acyclic graph, the whole algebra as a product of matrix rings
        (one factor per sink, indexed by the paths ending there)."""
        if not self.report.acyclic:
            raise PreconditionError("graph has a cycle: the algebra is not a finite matrix product")
        g = self.graph
        L = int(self.report.max_path_length)
        factors = []
        for v in g.vertices:
            if g.is_sink(v):
                ps = [p for i in range(L + 1) for p in g.paths_ending_at(i, v)]
                factors.append(MatrixFactor("sink", -1, v, tuple(ps)))
        return MatrixDecomposition(self, -1, factors)

    # -- non-noetherian witnesses ------------------------------------------------

    def ne_witness_idempotents(self, cycle: Sequence[str], exit: str | Sequence[str], count: int) -> list[NormalElement]:
        """gamma^n alpha alpha^* (gamma^*)^n for n = 0 .. count - 1."""
        g = self.graph
        cycle = tuple(cycle)
        exit_path = (exit,) if isinstance(exit, str) else tuple(exit)
        if not is_cycle(g, cycle):
            raise PreconditionError(f"{'.'.join(cycle)} is not a cycle of this graph")
        try:
            alpha = g.path(exit_path)
        except (KeyError, ValueError) as exc:
            raise PreconditionError(f"invalid exit path: {exc}") from None
        try:
            gamma = rotate_cycle_to(g, cycle, alpha.source)
        except ValueError:
            raise PreconditionError("the exit does not start on the cycle") from None
        if alpha.edges[0] == gamma[0]:
            raise PreconditionError("the exit must leave the cycle along a different edge")
        out = []
        for k in range(count):
            mu = gamma * k + alpha.edges
            out.append(self.element([((mu, mu, alpha.range), 1)]))
        return out

    # -- trace and its inverse -------------------------------------------------

    def _require_acyclic(self, what: str) -> int:
        if not self.report.acyclic:
            raise PreconditionError(f"graph has a cycle: {what} undefined (infinite support)")
        return int(self.report.max_path_length)

    def trace_unit(self) -> NormalElement:
        L = self._require_acyclic("trace")
        total = self.zero()
        for i in range(-L, L + 1):
            total = total + self.epsilon(i).value
        return total

    def trace_system(self) -> TraceInverseSystem:
        L = self._require_acyclic("trace")
        R = self.ring
        if not R.flags().all_nonzero_integers_invertible:
            raise PreconditionError(
                f"nonzero integers are not all invertible in {R}: "
                "invertibility of the trace cannot be established"
            )
        g = self.graph
        vcount = {v: 0 for v in g.vertices}
        pcount: dict[Path, int] = {}
        for i in range(-L, L + 1):
            for mu in self.epsilon_paths(i):
                if mu.length == 0:
                    vcount[mu.source] += 1
                else:
                    pcount[mu] = pcount.get(mu, 0) + 1
        verts = g.vertices
        vindex = {v: i for i, v in enumerate(verts)}
        paths = tuple(sorted(pcount))
        n_v = tuple(vcount[v] for v in verts)
        n_p = tuple(pcount[p] for p in paths)
        start = tuple(vindex[p.source] for p in paths)
        triples = set()
        for i, p in enumerate(paths):
            for j, q in enumerate(paths):
                if p.is_prefix_of(q):
                    triples.add((i, j, j))
                elif q.is_prefix_of(p):
                    triples.add((i, j, i))
        inv = R.invert
        m_v = tuple(inv(R.from_int(n)) for n in n_v)
        m_p: list[Any] = [None] * len(paths)
        # paths sorted by length: every strict prefix is solved before its extensions
        for t, p in enumerate(paths):
            denom = n_v[start[t]] + sum(n_p[i] for (i, j, tt) in triples if j == t and tt == t)
            rhs = R.mul(R.from_int(n_p[t]), m_v[start[t]])
            for (i, j, tt) in triples:
                if i == t and tt == t and j != t:
                    rhs = R.add(rhs, R.mul(R.from_int(n_p[t]), m_p[j]))
            m_p[t] = R.neg(R.mul(inv(R.from_int(denom)), rhs))
        return TraceInverseSystem(verts, n_v, paths, n_p, start, frozenset(triples), m_v, tuple(m_p))

    def trace_inverse(self) -> NormalElement:
        sys_ = self.trace_system()
        terms = [(((), (), v), m) for v, m in zip(sys_.vertices, sys_.m_vertex)]
        terms += [((p.edges, p.edges, p.range), m) for p, m in zip(sys_.paths, sys_.m_path)]
        return self.element(terms)

    # -- export ------------------------------------------------------------------

    def to_graded_algebra(self):
        """The whole (finite) algebra of an acyclic graph as structure constants."""
        from .grading import GradedAlgebra, IntegerGroup

        L = self._require_acyclic("finite basis")
        keys = self.reduced_monomials(L)
        names = [render_key(k) for k in keys]
        name_of = dict(zip(keys, names))
        R = self.ring
        table = {}
        for k1 in keys:
            for k2 in keys:
                prod = self.mul_keys(k1, k2)
                if prod:
                    table[(name_of[k1], name_of[k2])] = {name_of[k]: R.from_int(n) for k, n in prod.items()}
        degrees = {name_of[k]: key_degree(k) for k in keys}
        return GradedAlgebra(R, names, degrees, table, IntegerGroup(), window=L, total=True)
