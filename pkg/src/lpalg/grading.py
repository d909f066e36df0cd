"""Group-graded algebras given by structure constants.

A :class:`GradedAlgebra` has a finite named basis, each basis element sitting
in one degree.  Models of infinite algebras (Laurent rings, LPAs of cyclic
graphs) carry a degree window; a product whose value lies outside the window is
*unknown*, never zero, and every check that would depend on an unknown product
returns ``None`` (inconclusive) instead of a guessed verdict.

Elements are sparse dicts ``{basis name: payload}``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Sequence

from .errors import ParseError, PreconditionError
from .linalg import Span, combine
from .rings import RingDescriptor, parse_literal, parse_ring

Vector = dict


class IndeterminateProduct(ValueError):
    """A product falls outside the window of a truncated algebra."""


# -- groups -------------------------------------------------------------------


class FiniteGroup:
    """A finite group given by its full multiplication table (validated)."""

    def __init__(self, elements: Sequence[Hashable], table: dict, identity: Hashable | None = None):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("duplicate group elements")
        if not self.elements:
            raise ValueError("a group needs at least one element")
        self.table = dict(table)
        self.identity = self.elements[0] if identity is None else identity
        self._validate()
        self._inv = {g: next(h for h in self.elements if self.mul(g, h) == self.identity) for g in self.elements}

    def _validate(self) -> None:
        els = set(self.elements)
        if self.identity not in els:
            raise ValueError(f"identity {self.identity!r} is not a group element")
        for a in self.elements:
            for b in self.elements:
                c = self.table.get((a, b))
                if c is None:
                    raise ValueError(f"table entry {a!r}*{b!r} missing")
                if c not in els:
                    raise ValueError(f"table entry {a!r}*{b!r} = {c!r} is not a group element")
        for a in self.elements:
            if self.mul(self.identity, a) != a or self.mul(a, self.identity) != a:
                raise ValueError(f"{self.identity!r} is not an identity for {a!r}")
            if not any(self.mul(a, b) == self.identity for b in self.elements):
                raise ValueError(f"{a!r} has no inverse")
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ValueError(f"table is not associative at ({a!r}, {b!r}, {c!r})")

    def mul(self, a: Hashable, b: Hashable) -> Hashable:
        return self.table[(a, b)]

    def inv(self, a: Hashable) -> Hashable:
        return self._inv[a]

    def contains(self, g: Hashable) -> bool:
        return g in self._inv

    def window_elements(self, window: int | None = None) -> list:
        return list(self.elements)

    def in_window(self, g: Hashable, window: int | None = None) -> bool:
        return self.contains(g)

    def is_subgroup(self, H: Iterable[Hashable]) -> bool:
        H = set(H)
        if self.identity not in H or not H <= set(self.elements):
            return False
        return all(self.mul(a, b) in H for a in H for b in H) and all(self.inv(a) in H for a in H)

    def is_normal(self, N: Iterable[Hashable]) -> bool:
        N = set(N)
        if not self.is_subgroup(N):
            return False
        return all(self.mul(self.mul(g, n), self.inv(g)) in N for g in self.elements for n in N)

    def subgroup(self, H: Iterable[Hashable]) -> "FiniteGroup":
        H = [g for g in self.elements if g in set(H)]
        if not self.is_subgroup(H):
            raise PreconditionError(f"{H} is not a subgroup")
        return FiniteGroup(H, {(a, b): self.mul(a, b) for a in H for b in H}, self.identity)

    def quotient(self, N: Iterable[Hashable]) -> tuple["FiniteGroup", dict]:
        """G/N with cosets labelled by their first element; also returns the projection."""
        N = set(N)
        if not self.is_normal(N):
            raise PreconditionError(f"{sorted(map(str, N))} is not a normal subgroup")
        proj: dict = {}
        reps = []
        for g in self.elements:
            if g in proj:
                continue
            reps.append(g)
            for n in N:
                proj[self.mul(g, n)] = g
        table = {(a, b): proj[self.mul(a, b)] for a in reps for b in reps}
        return FiniteGroup(reps, table, proj[self.identity]), proj

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and (self.elements, self.table, self.identity) == (
            other.elements, other.table, other.identity)

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({list(self.elements)})"


def cyclic_group(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError("order must be positive")
    return FiniteGroup(range(k), {(a, b): (a + b) % k for a in range(k) for b in range(k)}, 0)


@dataclass(frozen=True)
class IntegerGroup:
    """The subgroup ``step * Z`` of the integers (``step = 1`` is Z itself)."""

    step: int = 1
    identity: int = field(default=0, init=False)

    def __post_init__(self) -> None:
        if self.step < 1:
            raise ValueError("step must be positive")

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a

    def contains(self, g: Any) -> bool:
        return isinstance(g, int) and g % self.step == 0

    def window_elements(self, window: int | None) -> list[int]:
        if window is None:
            raise PreconditionError("an integer grading needs a degree window")
        out = [0]
        for k in range(self.step, window + 1, self.step):
            out += [k, -k]
        return out

    def in_window(self, g: int, window: int | None) -> bool:
        return self.contains(g) and (window is None or abs(g) <= window)


Group = FiniteGroup | IntegerGroup


# -- graded algebras ----------------------------------------------------------


class GradedAlgebra:
    """Structure constants ``table[(a, b)] = {c: coeff}`` over a named basis.

    Missing pairs mean zero when ``total`` is true and *unknown* otherwise.
    """

    def __init__(
        self,
        ring: RingDescriptor,
        basis: Sequence[str],
        degrees: dict,
        table: dict,
        group: Group,
        window: int | None = None,
        total: bool = False,
        validate: bool = True,
    ):
        self.ring = ring
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("duplicate basis names")
        self.degrees = dict(degrees)
        self.group = group
        self.window = window
        self.total = total
        self.table = {
            k: {c: ring.coerce(x) for c, x in v.items() if not ring.is_zero(ring.coerce(x))}
            for k, v in table.items()
        }
        if validate:
            self.validate()

    # -- products ---------------------------------------------------------------

    def basis_product(self, a: str, b: str) -> Vector | None:
        """Product of two basis elements, or ``None`` when unknown."""
        hit = self.table.get((a, b))
        if hit is not None:
            return hit
        return {} if self.total else None

    def mul(self, x: Vector, y: Vector) -> Vector:
        """Product of two elements; raises IndeterminateProduct if any needed
        basis product is unknown."""
        out = self.try_mul(x, y)
        if out is None:
            raise IndeterminateProduct("product leaves the degree window")
        return out

    def try_mul(self, x: Vector, y: Vector) -> Vector | None:
        R = self.ring
        out: Vector = {}
        for a, c in x.items():
            for b, d in y.items():
                p = self.basis_product(a, b)
                if p is None:
                    return None
                cd = R.mul(c, d)
                for k, v in p.items():
                    s = R.add(out.get(k, R.zero()), R.mul(cd, v))
                    if R.is_zero(s):
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def add(self, x: Vector, y: Vector) -> Vector:
        return combine(self.ring, [self.ring.one(), self.ring.one()], [x, y])

    def unit_vector(self, name: str) -> Vector:
        return {name: self.ring.one()}

    def degree_of(self, x: Vector) -> set:
        return {self.degrees[k] for k in x}

    # -- structure --------------------------------------------------------------

    def component(self, g: Hashable) -> list[str]:
        return [b for b in self.basis if self.degrees[b] == g]

    @property
    def support(self) -> list:
        seen: dict = {}
        for b in self.basis:
            seen.setdefault(self.degrees[b], None)
        return list(seen)

    def degrees_in_scope(self) -> list:
        if isinstance(self.group, IntegerGroup):
            return self.group.window_elements(self.window)
        return list(self.group.elements)

    def validate(self) -> None:
        G = self.group
        for b in self.basis:
            if b not in self.degrees:
                raise ValueError(f"basis element {b} has no degree")
            g = self.degrees[b]
            if not G.contains(g):
                raise ValueError(f"degree {g!r} of {b} is not in the group")
            if not G.in_window(g, self.window):
                raise ValueError(f"degree {g!r} of {b} lies outside the window")
        names = set(self.basis)
        for (a, b), v in self.table.items():
            if a not in names or b not in names:
                raise ValueError(f"product {a}*{b} uses an unknown basis name")
            want = G.mul(self.degrees[a], self.degrees[b])
            for c in v:
                if c not in names:
                    raise ValueError(f"product {a}*{b} mentions unknown basis name {c}")
                if self.degrees[c] != want:
                    raise ValueError(
                        f"grading violated: {a}*{b} has a term {c} of degree {self.degrees[c]!r}, expected {want!r}"
                    )
        bad = self.associativity_failure()
        if bad is not None:
            raise ValueError(f"not associative on basis triple {bad}")

    def associativity_failure(self) -> tuple | None:
        """First basis triple with (ab)c != a(bc); triples touching unknown products are skipped."""
        for a, b, c in itertools.product(self.basis, repeat=3):
            ab = self.basis_product(a, b)
            bc = self.basis_product(b, c)
            if ab is None or bc is None:
                continue
            left = self.try_mul(ab, {c: self.ring.one()})
            right = self.try_mul({a: self.ring.one()}, bc)
            if left is None or right is None:
                continue
            if left != right:
                return (a, b, c)
        return None

    def is_associative(self) -> bool:
        return self.associativity_failure() is None

    def identity(self) -> Vector | None:
        """The multiplicative identity if one exists in the principal component."""
        e = self.group.identity
        comp = self.component(e)
        gens = []
        for u in comp:
            vec = {}
            ok = True
            for b in self.basis:
                l = self.basis_product(u, b)
                r = self.basis_product(b, u)
                if l is None or r is None:
                    ok = False
                    break
                for k, x in l.items():
                    vec[("L", b, k)] = x
                for k, x in r.items():
                    vec[("R", b, k)] = x
            if not ok:
                return None
            gens.append(vec)
        target = {}
        for b in self.basis:
            target[("L", b, b)] = self.ring.one()
            target[("R", b, b)] = self.ring.one()
        sol = Span(self.ring, gens).solve(target)
        if sol is None:
            return None
        return combine(self.ring, sol, [{u: self.ring.one()} for u in comp])

    def render(self, x: Vector) -> str:
        R = self.ring
        if not x:
            return "0"
        order = {b: i for i, b in enumerate(self.basis)}
        parts = []
        for k in sorted(x, key=order.__getitem__):
            c = x[k]
            parts.append(k if R.is_one(c) else f"{R.render(c)}*{k}")
        return " + ".join(parts)


# -- checks -------------------------------------------------------------------


@dataclass
class GradingReport:
    symmetric: bool | None
    strong: bool | None
    epsilon_strong: bool | None
    support: list
    symmetric_witness: Any = None  # failing degree
    strong_witness: Any = None  # failing pair (g, h)
    epsilon_units: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self, algebra: GradedAlgebra | None = None) -> dict:
        units = {
            str(g): (algebra.render(u) if algebra is not None else u) for g, u in self.epsilon_units.items()
        }
        return {
            "symmetric": self.symmetric,
            "symmetric_witness": self.symmetric_witness,
            "strong": self.strong,
            "strong_witness": list(self.strong_witness) if self.strong_witness else None,
            "epsilon_strong": self.epsilon_strong,
            "epsilon_units": units,
            "support": [str(g) for g in self.support],
            "notes": list(self.notes),
        }


def _products(a: GradedAlgebra, *factors: list[str]) -> tuple[list[Vector], bool]:
    """All products of basis elements drawn from the given lists; the flag
    reports whether some product was unknown."""
    unknown = False
    one = a.ring.one()
    # partial products are deduplicated stage by stage; only the span matters
    current = {((name, one),): None for name in factors[0]}
    for names in factors[1:]:
        nxt: dict = {}
        for key in current:
            v = dict(key)
            for name in names:
                p = a.try_mul(v, {name: one})
                if p is None:
                    unknown = True
                elif p:
                    nxt.setdefault(tuple(sorted(p.items(), key=lambda t: t[0])), None)
        current = nxt
    return [dict(k) for k in current], unknown


def _spans(a: GradedAlgebra, gens: list[Vector], names: list[str]) -> bool:
    return Span(a.ring, gens).contains_all([{n: a.ring.one()} for n in names])


def _tri(covered: bool, unknown: bool) -> bool | None:
    if covered:
        return True
    return None if unknown else False


def check_symmetric(a: GradedAlgebra) -> tuple[bool | None, Any, list[str]]:
    G = a.group
    notes = []
    verdict: bool | None = True
    witness = None
    for g in a.support:
        gi = G.inv(g)
        comp = a.component(g)
        if not G.in_window(gi, a.window):
            notes.append(f"degree {g}: inverse degree outside the window")
            verdict = None
            continue
        prods, unknown = _products(a, comp, a.component(gi), comp)
        t = _tri(_spans(a, prods, comp), unknown)
        if t is False:
            return False, g, notes
        if t is None:
            notes.append(f"degree {g}: S_g S_g^-1 S_g depends on products outside the window")
            verdict = None
    return verdict, witness, notes


def check_strong(a: GradedAlgebra) -> tuple[bool | None, Any, list[str]]:
    G = a.group
    scope = a.degrees_in_scope()
    pairs = [(g, G.inv(g)) for g in scope if G.in_window(G.inv(g), a.window)]
    pairs += [(g, h) for g in scope for h in scope if (g, h) not in set(pairs)]
    notes = []
    verdict: bool | None = True
    for g, h in pairs:
        gh = G.mul(g, h)
        if not G.in_window(gh, a.window):
            continue
        target = a.component(gh)
        if not target:
            continue
        prods, unknown = _products(a, a.component(g), a.component(h))
        t = _tri(_spans(a, prods, target), unknown)
        if t is False:
            return False, (g, h), notes
        if t is None:
            notes.append(f"pair ({g}, {h}): depends on products outside the window")
            verdict = None
    return verdict, None, notes


def epsilon_unit(a: GradedAlgebra, g: Hashable) -> tuple[Vector | None, bool]:
    """Solve for e in S_g S_{g^-1} with e x = x (x in S_g) and y e = y (y in S_{g^-1}).

    Returns ``(unit, inconclusive)``.  Generators whose required products are
    unknown are dropped, so a found unit is always verified.
    """
    G = a.group
    R = a.ring
    one = R.one()
    comp = a.component(g)
    if not comp:
        return {}, False
    gi = G.inv(g)
    inv_comp = a.component(gi)
    gens, unknown = _products(a, comp, inv_comp)
    usable = []
    cols = []
    for u in gens:
        vec = {}
        ok = True
        for x in comp:
            p = a.try_mul(u, {x: one})
            if p is None:
                ok = False
                break
            for k, c in p.items():
                vec[("L", x, k)] = c
        if ok:
            for y in inv_comp:
                p = a.try_mul({y: one}, u)
                if p is None:
                    ok = False
                    break
                for k, c in p.items():
                    vec[("R", y, k)] = c
        if ok:
            usable.append(u)
            cols.append(vec)
        else:
            unknown = True
    target = {("L", x, x): one for x in comp}
    target.update({("R", y, y): one for y in inv_comp})
    sol = Span(R, cols).solve(target) if cols else None
    if sol is None:
        return None, unknown
    return combine(R, sol, usable), False


def grading_check(a: GradedAlgebra) -> GradingReport:
    sym, sym_w, notes = check_symmetric(a)
    strong, strong_w, notes2 = check_strong(a)
    notes += notes2
    units: dict = {}
    eps: bool | None = sym
    if sym is not False:
        for g in a.support:
            if not a.group.in_window(a.group.inv(g), a.window):
                eps = None
                continue
            u, inconclusive = epsilon_unit(a, g)
            if u is None:
                if inconclusive:
                    notes.append(f"degree {g}: local unit not determinable inside the window")
                    eps = None
                else:
                    eps = False
                    break
            else:
                units[g] = u
    if eps is False:
        units = {}
    else:
        # degrees with a zero component have epsilon unit 0
        for g in a.degrees_in_scope():
            units.setdefault(g, {})
    support = a.support
    if isinstance(a.group, IntegerGroup):
        support = sorted(support)
    return GradingReport(sym, strong, eps, support, sym_w, strong_w, units, notes)


# -- constructions --------------------------------------------------------------


def restrict_subgroup(a: GradedAlgebra, H: Any) -> GradedAlgebra:
    """The subring of components with degree in H.

    ``H`` is an iterable of elements for a finite group, or an
    :class:`IntegerGroup` / positive int ``k`` for ``kZ``.
    """
    if isinstance(a.group, IntegerGroup):
        k = H.step if isinstance(H, IntegerGroup) else int(H)
        if k < 1 or k % a.group.step:
            raise PreconditionError(f"{k}Z is not a subgroup of {a.group.step}Z")
        sub = IntegerGroup(k)
    else:
        sub = a.group.subgroup(H)
    keep = [b for b in a.basis if sub.contains(a.degrees[b])]
    ks = set(keep)
    table = {(x, y): v for (x, y), v in a.table.items() if x in ks and y in ks}
    # structure constants are inherited from a validated algebra
    return GradedAlgebra(a.ring, keep, {b: a.degrees[b] for b in keep}, table, sub, a.window, a.total, validate=False)


def induce_quotient(a: GradedAlgebra, N: Any) -> GradedAlgebra:
    """The same algebra graded by G/N."""
    if isinstance(a.group, IntegerGroup):
        k = N.step if isinstance(N, IntegerGroup) else int(N)
        if k < 1 or k % a.group.step:
            raise PreconditionError(f"{k}Z is not a subgroup of {a.group.step}Z")
        if not a.total and a.window is not None and a.window % k:
            raise PreconditionError(f"window {a.window} is not a multiple of {k}")
        Q = cyclic_group(k)
        degrees = {b: a.degrees[b] % k for b in a.basis}
        # Q-grading of a windowed model: everything known stays known, the rest stays unknown
        return GradedAlgebra(a.ring, a.basis, degrees, a.table, Q, None, a.total, validate=False)
    Q, proj = a.group.quotient(N)
    degrees = {b: proj[a.degrees[b]] for b in a.basis}
    return GradedAlgebra(a.ring, a.basis, degrees, a.table, Q, None, a.total, validate=False)


def laurent_name(n: int) -> str:
    return f"X^{n}"


def laurent_even_example(B: int, ring: RingDescriptor) -> GradedAlgebra:
    """R[X^2, X^-2] graded by Z, truncated to degrees [-B, B]."""
    if B < 2 or B % 2:
        raise ValueError("window bound must be an even integer >= 2")
    degs = list(range(-B, B + 1, 2))
    basis = [laurent_name(n) for n in degs]
    table = {}
    for i in degs:
        for j in degs:
            if abs(i + j) <= B:
                table[(laurent_name(i), laurent_name(j))] = {laurent_name(i + j): ring.one()}
    return GradedAlgebra(ring, basis, dict(zip(basis, degs)), table, IntegerGroup(), window=B, total=False)


# -- file format ------------------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_]*(?:\^-?\d+)?"
_TERM = re.compile(rf"\s*([+-]?)\s*(?:(\([^()]*\)|\d+(?:\s*/\s*\d+)?)\s*\*\s*)?({_NAME})\s*")


def parse_lincomb(text: str, ring: RingDescriptor, names: Iterable[str], line: int | None = None) -> Vector:
    """Parse ``[coeff*]NAME (+|- [coeff*]NAME)*`` or ``0``."""
    names = set(names)
    if text.strip() == "0":
        return {}
    out: Vector = {}
    pos = 0
    first = True
    while pos < len(text.rstrip()):
        m = _TERM.match(text, pos)
        if not m or (not first and not m.group(1)):
            raise ParseError(f"bad linear combination {text.strip()!r}", line=line, column=pos + 1)
        first = False
        coeff = ring.coerce(parse_literal(m.group(2))) if m.group(2) else ring.one()
        name = m.group(3)
        if name not in names:
            raise ParseError(f"unknown basis element {name!r}", line=line)
        if m.group(1) == "-":
            coeff = ring.neg(coeff)
        s = ring.add(out.get(name, ring.zero()), coeff)
        if ring.is_zero(s):
            out.pop(name, None)
        else:
            out[name] = s
        pos = m.end()
    return out


def parse_group_element(text: str, group: Group, line: int) -> Any:
    text = text.strip()
    if isinstance(group, IntegerGroup) or (isinstance(group, FiniteGroup) and all(isinstance(g, int) for g in group.elements)):
        try:
            g = int(text)
        except ValueError:
            raise ParseError(f"bad group element {text!r}", line=line) from None
        if isinstance(group, FiniteGroup):
            g %= len(group.elements)
        return g
    if not group.contains(text):
        raise ParseError(f"unknown group element {text!r}", line=line)
    return text


def build_table_group(elements: list[str], rows: dict, identity: str | None) -> FiniteGroup:
    """Group from ``elements:`` and ``table g: ...`` lines (rows map g -> (entries, line))."""
    if not elements:
        raise ParseError("group table needs an 'elements:' line")
    tbl = {}
    for a in elements:
        if a not in rows:
            raise ParseError(f"missing table row for {a}")
        row, ln = rows[a]
        if len(row) != len(elements):
            raise ParseError(f"table row {a} has {len(row)} entries, expected {len(elements)}", line=ln)
        for b, c in zip(elements, row):
            tbl[(a, b)] = c
    try:
        return FiniteGroup(elements, tbl, identity)
    except ValueError as exc:
        raise ParseError(f"invalid group table: {exc}") from None


def parse_group_spec(spec: str, line: int | None = None) -> Group | None:
    """``Z`` or ``Z/n``; ``None`` for ``table`` (rows follow)."""
    spec = spec.strip()
    if spec == "Z":
        return IntegerGroup()
    if re.fullmatch(r"Z/\d+", spec):
        n = int(spec[2:])
        if n < 1:
            raise ParseError("group order must be positive", line=line)
        return cyclic_group(n)
    if spec == "table":
        return None
    raise ParseError(f"unknown group {spec!r} (expected Z, Z/n or table)", line=line)


def parse_graded(text: str) -> GradedAlgebra:
    """Read the graded-algebra text format.

    ::

        ring: Q
        group: Z            # or Z/n, or "table" with elements/table lines
        window: 4
        total: yes
        basis: a b c
        deg a = 0
        mul a a = a
    """
    ring = group = None
    window = None
    total = False
    basis: list[str] = []
    degrees: dict = {}
    table: dict = {}
    pending_group = False
    elements: list[str] = []
    rows: dict = {}
    identity = None
    muls = []
    degs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "ring:":
            ring = parse_ring(line[len("ring:"):])
        elif head == "group:":
            group = parse_group_spec(line[len("group:"):], lineno)
            pending_group = group is None
        elif head == "elements:":
            elements = line.split()[1:]
        elif head == "identity:":
            identity = line.split()[1]
        elif head == "table":
            m = re.fullmatch(rf"table\s+({_NAME})\s*:\s*(.*)", line)
            if not m:
                raise ParseError("expected 'table g: products...'", line=lineno)
            rows[m.group(1)] = (m.group(2).split(), lineno)
        elif head == "window:":
            try:
                window = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError("window must be an integer", line=lineno) from None
        elif head == "total:":
            total = line.split()[1:] == ["yes"]
        elif head == "basis:":
            basis = line.split()[1:]
        elif head == "deg":
            m = re.fullmatch(rf"deg\s+({_NAME})\s*=\s*(\S+)", line)
            if not m:
                raise ParseError("expected 'deg NAME = g'", line=lineno)
            degs.append((m.group(1), m.group(2), lineno))
        elif head == "mul":
            m = re.fullmatch(rf"mul\s+({_NAME})\s+({_NAME})\s*=\s*(.+)", line)
            if not m:
                raise ParseError("expected 'mul A B = combination'", line=lineno)
            muls.append((m.group(1), m.group(2), m.group(3), lineno))
        else:
            raise ParseError(f"unrecognized line {line!r}", line=lineno)
    if ring is None:
        raise ParseError("missing 'ring:' line")
    if pending_group:
        group = build_table_group(elements, rows, identity)
    if group is None:
        raise ParseError("missing 'group:' line")
    names = set(basis)
    for name, g, ln in degs:
        if name not in names:
            raise ParseError(f"unknown basis element {name!r}", line=ln)
        degrees[name] = parse_group_element(g, group, ln)
    for a, b, body, ln in muls:
        for n in (a, b):
            if n not in names:
                raise ParseError(f"unknown basis element {n!r}", line=ln)
        try:
            table[(a, b)] = parse_lincomb(body, ring, names, ln)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), line=ln) from None
    try:
        return GradedAlgebra(ring, basis, degrees, table, group, window, total)
    except ValueError as exc:
        raise PreconditionError(f"invalid graded algebra: {exc}") from None
