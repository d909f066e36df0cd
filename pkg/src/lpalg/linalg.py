"""Exact spans and linear solving over the supported coefficient rings.

Two echelon engines do all the work: Gaussian elimination over Q and an
integer echelon form (Euclid row operations) over Z.  Z/n is handled by
lifting to Z and adding the relations ``n * e_i``; product rings split into
their factors because the coordinate idempotents live in the ring.

Vectors are sparse dicts ``{coordinate label: payload}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Hashable, Sequence

from .rings import INTEGERS, MODULAR, RATIONALS, RingDescriptor

Vector = dict


class _Echelon:
    """Row echelon form of integer or rational rows, remembering how each row
    was built from the original generators."""

    def __init__(self, rows: list[list[Any]], ncols: int, field: bool, ntracked: int):
        self.field = field
        self.ncols = ncols
        work = []
        for k, row in enumerate(rows):
            t = [0] * ntracked
            if k < ntracked:
                t[k] = 1
            work.append((list(row), t))
        self.pivots: list[tuple[int, list[Any], list[Any]]] = []
        col = 0
        while work and col < ncols:
            live = [w for w in work if w[0][col] != 0]
            if not live:
                col += 1
                continue
            dead = [w for w in work if w[0][col] == 0]
            if field:
                piv = live[0]
                rest = []
                for row, t in live[1:]:
                    q = row[col] / piv[0][col]
                    rest.append(_axpy(row, t, -q, piv))
            else:
                rest = []
                while True:
                    live.sort(key=lambda w: abs(w[0][col]))
                    piv = live[0]
                    carry = []
                    for row, t in live[1:]:
                        r = _axpy(row, t, -(row[col] // piv[0][col]), piv)
                        (carry if r[0][col] != 0 else rest).append(r)
                    if not carry:
                        break
                    live = [piv] + carry
            self.pivots.append((col, piv[0], piv[1]))
            work = dead + [w for w in rest if any(x != 0 for x in w[0])]
            col += 1

    def solve(self, target: list[Any]) -> list[Any] | None:
        b = list(target)
        ntracked = len(self.pivots[0][2]) if self.pivots else 0
        coeffs = [0] * ntracked
        for col, row, t in self.pivots:
            for c in range(col):
                if b[c] != 0:
                    return None
            if b[col] == 0:
                continue
            if self.field:
                q = b[col] / row[col]
            else:
                if b[col] % row[col]:
                    return None
                q = b[col] // row[col]
            for c in range(col, self.ncols):
                b[c] -= q * row[c]
            for k in range(ntracked):
                coeffs[k] += q * t[k]
        if any(x != 0 for x in b):
            return None
        return coeffs

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _axpy(row, t, q, piv):
    prow, pt = piv
    return ([a + q * b for a, b in zip(row, prow)], [a + q * b for a, b in zip(t, pt)])


class Span:
    """The submodule of ``ring^coords`` generated by ``generators``.

    ``solve(target)`` returns ring coefficients ``c`` with
    ``sum c_k * generators[k] == target``, or ``None`` when target is outside.
    """

    def __init__(self, ring: RingDescriptor, generators: Sequence[Vector], coords: Sequence[Hashable] | None = None):
        self.ring = ring
        self.generators = list(generators)
        if coords is None:
            seen: dict[Hashable, None] = {}
            for g in self.generators:
                for k in g:
                    seen.setdefault(k, None)
            coords = list(seen)
        self.coords = list(coords)
        self._index = {c: i for i, c in enumerate(self.coords)}
        self._engines = [self._build(i, atom) for i, atom in enumerate(ring.atoms)]

    def _component(self, payload: Any, i: int) -> Any:
        return payload[i] if self.ring.is_product else payload

    def _dense(self, vec: Vector, i: int) -> list[Any] | None:
        row = [0] * len(self.coords)
        for k, v in vec.items():
            x = self._component(v, i)
            if x == 0:
                continue
            j = self._index.get(k)
            if j is None:
                return None
            row[j] = x
        return row

    def _build(self, i: int, atom: RingDescriptor) -> _Echelon:
        rows = [self._dense(g, i) for g in self.generators]
        n = len(self.coords)
        field = atom.kind == RATIONALS
        if field:
            rows = [[Fraction(x) for x in r] for r in rows]
        ntracked = len(rows)
        if atom.kind == MODULAR:
            for j in range(n):
                rel = [0] * n
                rel[j] = atom.modulus
                rows.append(rel)
        return _Echelon(rows, n, field, ntracked)

    def solve(self, target: Vector) -> list[Any] | None:
        parts = []
        for i, (atom, eng) in enumerate(zip(self.ring.atoms, self._engines)):
            b = self._dense(target, i)
            if b is None:
                return None
            if atom.kind == RATIONALS:
                b = [Fraction(x) for x in b]
            if not self.generators:
                if any(x != 0 for x in b):
                    return None
                parts.append([])
                continue
            c = eng.solve(b)
            if c is None:
                return None
            if len(c) < len(self.generators):
                c = c + [0] * (len(self.generators) - len(c))
            parts.append([atom.coerce(x) for x in c])
        if self.ring.is_product:
            return [tuple(p[k] for p in parts) for k in range(len(self.generators))]
        return parts[0]

    def contains(self, target: Vector) -> bool:
        return self.solve(target) is not None

    def contains_all(self, targets: Sequence[Vector]) -> bool:
        return all(self.contains(t) for t in targets)

    def rank(self) -> int:
        """Rank of the span; only meaningful over a field."""
        if not self.ring.is_field:
            raise ValueError(f"rank is only defined here over fields, not {self.ring}")
        return self._engines[0].rank if self.ring.kind == RATIONALS else self._prime_rank()

    def _prime_rank(self) -> int:
        p = self.ring.modulus
        rows = [self._dense(g, 0) for g in self.generators]
        rank, col, n = 0, 0, len(self.coords)
        rows = [[x % p for x in r] for r in rows]
        while col < n and rows:
            piv = next((r for r in rows if r[col]), None)
            if piv is None:
                col += 1
                continue
            rows.remove(piv)
            inv = pow(piv[col], -1, p)
            rows = [[(a - r[col] * inv * b) % p for a, b in zip(r, piv)] for r in rows]
            rows = [r for r in rows if any(r)]
            rank += 1
            col += 1
        return rank


def span_equal(ring: RingDescriptor, a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    return Span(ring, a).contains_all(b) and Span(ring, b).contains_all(a)


def combine(ring: RingDescriptor, coeffs: Sequence[Any], vectors: Sequence[Vector]) -> Vector:
    out: Vector = {}
    for c, v in zip(coeffs, vectors):
        if ring.is_zero(c):
            continue
        for k, x in v.items():
            y = ring.add(out.get(k, ring.zero()), ring.mul(c, x))
            if ring.is_zero(y):
                out.pop(k, None)
            else:
                out[k] = y
    return out


def is_zero_vector(ring: RingDescriptor, v: Vector) -> bool:
    return all(ring.is_zero(x) for x in v.values())


def vectors_equal(ring: RingDescriptor, a: Vector, b: Vector) -> bool:
    keys = set(a) | set(b)
    z = ring.zero()
    return all(a.get(k, z) == b.get(k, z) for k in keys)
