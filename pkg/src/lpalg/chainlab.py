"""Exhaustive chain-condition experiments on small finite Z-graded rings.

A :class:`FiniteRingInstance` lists every element of a finite ring given by
structure constants over Z/n.  Right ideals are enumerated by closure, and the
leading-coefficient sets Id_n(I) -- the degree-0 parts of elements of I whose
support lies in [-n+1, 0] -- are computed by scanning.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import CapExceeded, PreconditionError
from .grading import GradedAlgebra, IntegerGroup
from .graph import Graph
from .rings import MODULAR, modular

DEFAULT_CAP = 4096

Element = tuple  # coefficient tuple in basis order


class FiniteRingInstance:
    def __init__(self, algebra: GradedAlgebra, cap: int = DEFAULT_CAP):
        ring = algebra.ring
        if ring.kind != MODULAR:
            raise PreconditionError(f"finite instances need Z/n coefficients, not {ring}")
        if not algebra.total:
            raise PreconditionError("the algebra has unknown products (windowed); a finite ring needs a full table")
        if not isinstance(algebra.group, IntegerGroup):
            raise PreconditionError("leading ideals need a Z-grading")
        self.algebra = algebra
        self.modulus = ring.modulus
        self.basis = algebra.basis
        self.dim = len(self.basis)
        self.size = self.modulus ** self.dim
        if self.size > cap:
            raise CapExceeded(f"ring has {self.size} elements, above the cap of {cap}")
        self.degrees = [algebra.degrees[b] for b in self.basis]
        self.elements: list[Element] = list(itertools.product(range(self.modulus), repeat=self.dim))
        self.zero: Element = (0,) * self.dim
        index = {b: i for i, b in enumerate(self.basis)}
        # structure constants as dense coefficient tuples
        self._const = {}
        for (a, b), vec in algebra.table.items():
            v = [0] * self.dim
            for k, c in vec.items():
                v[index[k]] = c % self.modulus
            self._const[(index[a], index[b])] = v
        self._mul_cache: dict = {}
        one = algebra.identity()
        self.unital = one is not None
        self.principal = [x for x in self.elements if all(c == 0 or d == 0 for c, d in zip(x, self.degrees))]

    @classmethod
    def from_lpa(cls, graph: Graph, p: int, cap: int = DEFAULT_CAP) -> "FiniteRingInstance":
        from .lpa import LeavittPathAlgebra

        return cls(LeavittPathAlgebra(graph, modular(p)).to_graded_algebra(), cap)

    @classmethod
    def trivially_graded(cls, n: int, idempotents: int = 1, cap: int = DEFAULT_CAP) -> "FiniteRingInstance":
        """(Z/n)^k in degree 0."""
        R = modular(n)
        basis = [f"u{i + 1}" for i in range(idempotents)]
        table = {(b, b): {b: 1} for b in basis}
        alg = GradedAlgebra(R, basis, {b: 0 for b in basis}, table, IntegerGroup(), window=0, total=True)
        return cls(alg, cap)

    # -- arithmetic --------------------------------------------------------------

    def add(self, x: Element, y: Element) -> Element:
        n = self.modulus
        return tuple((a + b) % n for a, b in zip(x, y))

    def mul(self, x: Element, y: Element) -> Element:
        key = (x, y)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        n = self.modulus
        out = [0] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                v = self._const.get((i, j))
                if v is None:
                    continue
                ab = a * b
                for k, c in enumerate(v):
                    if c:
                        out[k] = (out[k] + ab * c) % n
        res = tuple(out)
        self._mul_cache[key] = res
        return res

    def degree_part(self, x: Element, d: int) -> Element:
        return tuple(c if deg == d else 0 for c, deg in zip(x, self.degrees))

    def support(self, x: Element) -> set[int]:
        return {deg for c, deg in zip(x, self.degrees) if c}

    @property
    def degree_width(self) -> int:
        """Smallest n with [-n+1, 0] covering every non-positive degree."""
        return max(1, 1 - min(self.degrees, default=0))

    def render(self, x: Element) -> str:
        return self.algebra.render({b: c for b, c in zip(self.basis, x) if c})

    # -- ideals ----------------------------------------------------------------------

    def _add_closure(self, base: frozenset, gens) -> frozenset:
        result = set(base)
        for y in gens:
            if y in result:
                continue
            while True:
                shifted = {self.add(r, y) for r in result}
                if shifted <= result:
                    break
                result |= shifted
        return frozenset(result)

    def cyclic_right_ideal(self, x: Element) -> frozenset:
        """The right ideal generated by ``x``."""
        xs = frozenset(self.mul(x, s) for s in self.elements)
        if self.unital:
            return xs  # contains x = x * 1 and is an additive subgroup
        return self._add_closure(xs, [x])

    def ideal_sum(self, I: frozenset, J: frozenset) -> frozenset:
        return frozenset(self.add(a, b) for a in I for b in J)

    def is_right_ideal(self, I: frozenset) -> bool:
        if self.zero not in I:
            return False
        return all(self.add(a, b) in I for a in I for b in I) and all(self.mul(a, s) in I for a in I for s in self.elements)


def _ideal_order(I: frozenset):
    return (len(I), sorted(I))


def enumerate_right_ideals(s: FiniteRingInstance) -> list[frozenset]:
    """Every right ideal, smallest first."""
    # every right ideal of a finite ring is a sum of cyclic ones
    cyclic = sorted({s.cyclic_right_ideal(x) for x in s.elements}, key=_ideal_order)
    zero = frozenset([s.zero])
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for I in frontier:
            for C in cyclic:
                if C <= I:
                    continue
                J = s.ideal_sum(I, C)
                if J not in seen:
                    seen.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(seen, key=_ideal_order)


@dataclass(frozen=True)
class LeadingIdeal:
    n: int
    elements: frozenset
    is_right_ideal: bool


def leading_ideal(s: FiniteRingInstance, I: frozenset, n: int) -> LeadingIdeal:
    if n < 1:
        raise ValueError("n must be at least 1")
    lo = -n + 1
    out = frozenset(s.degree_part(x, 0) for x in I if all(lo <= d <= 0 for d in s.support(x)))
    closed = all(s.add(a, b) in out for a in out for b in out) and all(
        s.mul(a, r) in out for a in out for r in s.principal
    )
    return LeadingIdeal(n, out, closed)


@dataclass
class SeparationReport:
    passed: bool
    ideal_count: int
    pairs_checked: int
    max_discriminating_n: int
    monotone: bool
    leading_ideals_valid: bool
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "ideal_count": self.ideal_count,
            "pairs_checked": self.pairs_checked,
            "max_discriminating_n": self.max_discriminating_n,
            "monotone": self.monotone,
            "leading_ideals_valid": self.leading_ideals_valid,
            "failures": [[len(j), len(i)] for j, i in self.failures],
        }


def verify_separation(s: FiniteRingInstance, ideals: list[frozenset] | None = None) -> SeparationReport:
    """Check Id_n monotonicity and that distinct nested right ideals J < I
    differ in some Id_n."""
    if ideals is None:
        ideals = enumerate_right_ideals(s)
    N = s.degree_width
    lead = {}
    monotone = valid = True
    for k, I in enumerate(ideals):
        chain = [leading_ideal(s, I, n) for n in range(1, N + 1)]
        valid &= all(c.is_right_ideal for c in chain)
        monotone &= all(a.elements <= b.elements for a, b in zip(chain, chain[1:]))
        lead[k] = [c.elements for c in chain]
    pairs = 0
    worst = 0
    failures = []
    for j, J in enumerate(ideals):
        for i, I in enumerate(ideals):
            if i == j or not J < I:
                continue
            pairs += 1
            n = next((n for n in range(1, N + 1) if lead[j][n - 1] != lead[i][n - 1]), None)
            if n is None:
                failures.append((J, I))
            else:
                worst = max(worst, n)
    return SeparationReport(not failures and monotone and valid, len(ideals), pairs, worst, monotone, valid, failures)
