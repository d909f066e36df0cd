"""Unital twisted partial actions on R = K^d and their crossed products.

R is a finite product of copies of one built-in ring K with coordinate
idempotents e_1..e_d.  Every ideal D_g is generated by a central idempotent 1_g,
which here is a 0/1 vector, so D_g is spanned by the e_i with 1_g[i] = 1.
A map alpha_g : D_{g^-1} -> D_g is given by the images of those e_i.

Over the integers either a finite support is declared (D_g = 0 elsewhere) or
the action is *global*: D_n = R for all n and alpha_n = alpha_1^n.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Any, Hashable

from .classify import NO, UNKNOWN, YES, ClassificationReport
from .errors import ParseError, PreconditionError
from .grading import (
    FiniteGroup,
    GradedAlgebra,
    Group,
    IntegerGroup,
    build_table_group,
    parse_group_element,
    parse_group_spec,
)
from .linalg import Span
from .rings import RingDescriptor, parse_literal, parse_ring, product

Elem = tuple  # payload tuple of length d


@dataclass
class AxiomReport:
    """Verdict per axiom with the first failing instance (g, h, l, basis element)."""

    verdicts: dict[str, bool]
    failures: dict[str, tuple]
    scope: list
    windowed: bool = False

    AXIOMS = (
        "maps_are_isomorphisms",
        "twists_invertible",
        "identity_map",
        "domain_compatibility",
        "composition",
        "twist_normalization",
        "cocycle",
    )

    @property
    def all_pass(self) -> bool:
        return all(self.verdicts.values())

    def first_failure(self) -> tuple[str, tuple] | None:
        for name in self.AXIOMS:
            if not self.verdicts.get(name, True):
                return name, self.failures[name]
        return None

    def to_dict(self) -> dict:
        return {
            "all_pass": self.all_pass,
            "verdicts": dict(self.verdicts),
            "failures": {k: [str(x) for x in v] for k, v in self.failures.items()},
            "windowed": self.windowed,
        }


def _fmt_degree(g: Hashable) -> str:
    if isinstance(g, int) and g < 0:
        return f"m{-g}"
    return str(g)


class PartialActionSystem:
    def __init__(
        self,
        group: Group,
        atom: RingDescriptor,
        dim: int,
        units: dict | None = None,
        alpha: dict | None = None,
        twists: dict | None = None,
        global_action: bool = False,
        window: int = 3,
    ):
        if atom.is_product:
            raise ValueError("the coefficient atom must be Z, Q or Z/n")
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.group = group
        self.atom = atom
        self.dim = dim
        self.ring = product([atom] * dim)
        self.global_action = global_action
        self.window = window
        self._units = {g: tuple(1 if x else 0 for x in u) for g, u in (units or {}).items()}
        for g, u in self._units.items():
            if len(u) != dim:
                raise ValueError(f"unit for {g} has length {len(u)}, expected {dim}")
        self._alpha = {g: {i: self.coerce(v) for i, v in m.items()} for g, m in (alpha or {}).items()}
        self._twists = {k: (self.coerce(w), self.coerce(wi)) for k, (w, wi) in (twists or {}).items()}
        if global_action:
            if not isinstance(group, IntegerGroup):
                raise ValueError("global mode is only for the integers; give all units for finite groups")
            if 1 not in self._alpha:
                raise ValueError("a global integer action needs alpha 1")
        self._power_cache: dict = {}

    # -- ring helpers ------------------------------------------------------------

    def coerce(self, v: Any) -> Elem:
        if not isinstance(v, tuple):
            v = (v,) if self.dim == 1 else None
        if v is None or len(v) != self.dim:
            raise ValueError(f"expected a {self.dim}-tuple")
        return tuple(self.atom.coerce(x) for x in v)

    def zero(self) -> Elem:
        return (self.atom.zero(),) * self.dim

    def one(self) -> Elem:
        return (self.atom.one(),) * self.dim

    def basis_vector(self, i: int) -> Elem:
        return tuple(self.atom.one() if j == i else self.atom.zero() for j in range(self.dim))

    def mul(self, a: Elem, b: Elem) -> Elem:
        return tuple(self.atom.mul(x, y) for x, y in zip(a, b))

    def add(self, a: Elem, b: Elem) -> Elem:
        return tuple(self.atom.add(x, y) for x, y in zip(a, b))

    def scale(self, c: Any, a: Elem) -> Elem:
        return tuple(self.atom.mul(c, x) for x in a)

    def support_of(self, a: Elem) -> set[int]:
        return {i for i, x in enumerate(a) if not self.atom.is_zero(x)}

    # -- the action ----------------------------------------------------------------

    def unit_indices(self, g: Hashable) -> frozenset[int]:
        if self.global_action:
            return frozenset(range(self.dim))
        u = self._units.get(g)
        if u is None:
            return frozenset(range(self.dim)) if g == self.group.identity else frozenset()
        return frozenset(i for i, x in enumerate(u) if x)

    def unit(self, g: Hashable) -> Elem:
        idx = self.unit_indices(g)
        return tuple(self.atom.one() if i in idx else self.atom.zero() for i in range(self.dim))

    def alpha_image(self, g: Hashable, i: int) -> Elem | None:
        """alpha_g(e_i) for e_i in D_{g^-1}; ``None`` outside the domain."""
        if i not in self.unit_indices(self.group.inv(g)):
            return None
        if self.global_action:
            return self._global_power(g)[i]
        if g == self.group.identity and g not in self._alpha:
            return self.basis_vector(i)
        return self._alpha.get(g, {}).get(i, self.zero())

    def _global_power(self, n: int) -> list[Elem]:
        if n in self._power_cache:
            return self._power_cache[n]
        if n == 0:
            imgs = [self.basis_vector(i) for i in range(self.dim)]
        elif n > 0:
            prev = self._global_power(n - 1)
            imgs = [self._apply_matrix(self._alpha[1], prev[i]) for i in range(self.dim)]
        else:
            prev = self._global_power(n + 1)
            inv = self._inverse_of_alpha1()
            imgs = [self._apply_matrix(inv, prev[i]) for i in range(self.dim)]
        self._power_cache[n] = imgs
        return imgs

    def _apply_matrix(self, images: dict, x: Elem) -> Elem:
        out = self.zero()
        for i, c in enumerate(x):
            if not self.atom.is_zero(c):
                out = self.add(out, self.scale(c, images.get(i, self.zero())))
        return out

    def _inverse_of_alpha1(self) -> dict:
        if -1 in self._alpha:
            return self._alpha[-1]
        cols = [{j: v for j, v in enumerate(self._alpha[1].get(i, self.zero()))} for i in range(self.dim)]
        span = Span(self.atom, cols, coords=list(range(self.dim)))
        inv = {}
        for i in range(self.dim):
            sol = span.solve({i: self.atom.one()})
            if sol is None:
                raise PreconditionError("alpha 1 is not invertible")
            inv[i] = tuple(self.atom.coerce(x) for x in sol)
        return inv

    def apply_alpha(self, g: Hashable, x: Elem) -> Elem | None:
        """alpha_g(x); ``None`` when x is not in D_{g^-1}."""
        dom = self.unit_indices(self.group.inv(g))
        if not self.support_of(x) <= dom:
            return None
        out = self.zero()
        for i in self.support_of(x):
            out = self.add(out, self.scale(x[i], self.alpha_image(g, i)))
        return out

    def twist(self, g: Hashable, h: Hashable) -> tuple[Elem, Elem]:
        if (g, h) in self._twists and not self.global_action:
            return self._twists[(g, h)]
        w = self.mul(self.unit(g), self.unit(self.group.mul(g, h)))
        return w, w

    # -- scope ---------------------------------------------------------------------

    @property
    def support(self) -> list:
        """Degrees with D_g != 0 (inside the window for a global integer action)."""
        return [g for g in self.scope() if self.unit_indices(g)]

    @property
    def has_finite_support(self) -> bool:
        return not self.global_action

    def scope(self) -> list:
        """Group elements over which the axioms are quantified."""
        G = self.group
        if isinstance(G, FiniteGroup):
            return list(G.elements)
        if self.global_action:
            m = self.window
        else:
            declared = [g for g, u in self._units.items() if any(u)]
            m = 2 * max([abs(g) for g in declared] + [0])
        return IntegerGroup().window_elements(m)

    # -- axioms ----------------------------------------------------------------------

    def check_axioms(self) -> AxiomReport:
        G = self.group
        e = G.identity
        scope = self.scope()
        verdicts: dict[str, bool] = {}
        failures: dict[str, tuple] = {}

        def fail(name: str, *where: Any) -> None:
            if verdicts.get(name, True):
                verdicts[name] = False
                failures[name] = where

        for name in AxiomReport.AXIOMS:
            verdicts[name] = True

        def ename(i: int) -> str:
            return f"e{i + 1}"

        def in_scope(g: Hashable) -> bool:
            return not (self.global_action and abs(g) > self.window)

        # alpha_g is a ring isomorphism D_{g^-1} -> D_g
        for g in scope:
            dom = sorted(self.unit_indices(G.inv(g)))
            cod = self.unit_indices(g)
            imgs = [self.alpha_image(g, i) for i in dom]
            if len(dom) != len(cod):
                fail("maps_are_isomorphisms", g)
                continue
            bad = next((i for i, v in zip(dom, imgs) if not self.support_of(v) <= cod), None)
            if bad is not None:
                fail("maps_are_isomorphisms", g, ename(bad))
                continue
            for (i, a), (j, b) in itertools.product(zip(dom, imgs), repeat=2):
                want = a if i == j else self.zero()
                if self.mul(a, b) != want:
                    fail("maps_are_isomorphisms", g, ename(i), ename(j))
                    break
            cols = [dict(enumerate(v)) for v in imgs]
            span = Span(self.atom, cols, coords=list(range(self.dim)))
            if not all(span.contains({j: self.atom.one()}) for j in cod):
                fail("maps_are_isomorphisms", g)

        # twists are units of D_g D_{gh}
        for g, h in itertools.product(scope, repeat=2):
            gh = G.mul(g, h)
            w, wi = self.twist(g, h)
            ideal = self.unit_indices(g) & self.unit_indices(gh)
            target = self.mul(self.unit(g), self.unit(gh))
            if not (self.support_of(w) <= ideal and self.support_of(wi) <= ideal and self.mul(w, wi) == target):
                fail("twists_invertible", g, h)

        # alpha_e is the identity
        if self.unit_indices(e) != frozenset(range(self.dim)):
            fail("identity_map", e)
        for i in range(self.dim):
            if self.alpha_image(e, i) != self.basis_vector(i):
                fail("identity_map", e, ename(i))
                break

        # alpha_g(D_{g^-1} D_h) = D_g D_{gh}
        for g in scope:
            for h in scope:
                if not in_scope(G.mul(g, h)):
                    continue
                src = self.unit_indices(G.inv(g)) & self.unit_indices(h)
                dst = self.unit_indices(g) & self.unit_indices(G.mul(g, h))
                imgs = [self.alpha_image(g, i) for i in src]
                inside = all(self.support_of(v) <= dst for v in imgs)
                span = Span(self.atom, [dict(enumerate(v)) for v in imgs], coords=list(range(self.dim)))
                if not inside or not all(span.contains({j: self.atom.one()}) for j in dst):
                    fail("domain_compatibility", g, h)

        # alpha_g alpha_h (r) = w_{g,h} alpha_{gh}(r) w_{g,h}^{-1} on D_{h^-1} D_{(gh)^-1}
        for g in scope:
            for h in scope:
                gh = G.mul(g, h)
                if not in_scope(gh):
                    continue
                w, wi = self.twist(g, h)
                for i in sorted(self.unit_indices(G.inv(h)) & self.unit_indices(G.inv(gh))):
                    r = self.basis_vector(i)
                    ah = self.apply_alpha(h, r)
                    left = self.apply_alpha(g, ah) if ah is not None else None
                    agh = self.apply_alpha(gh, r)
                    right = self.mul(self.mul(w, agh), wi) if agh is not None else None
                    if left is None or right is None or left != right:
                        fail("composition", g, h, ename(i))
                        break

        # w_{e,g} = w_{g,e} = 1_g
        for g in scope:
            if self.twist(e, g)[0] != self.unit(g) or self.twist(g, e)[0] != self.unit(g):
                fail("twist_normalization", g)

        # alpha_g(r w_{h,l}) w_{g,hl} = alpha_g(r) w_{g,h} w_{gh,l} on D_{g^-1} D_h D_{hl}
        for g, h, l in itertools.product(scope, repeat=3):
            hl, gh = G.mul(h, l), G.mul(g, h)
            if not (in_scope(hl) and in_scope(gh) and in_scope(G.mul(gh, l))):
                continue
            idx = self.unit_indices(G.inv(g)) & self.unit_indices(h) & self.unit_indices(hl)
            for i in sorted(idx):
                r = self.basis_vector(i)
                a1 = self.apply_alpha(g, self.mul(r, self.twist(h, l)[0]))
                a2 = self.apply_alpha(g, r)
                if a1 is None or a2 is None:
                    fail("cocycle", g, h, l, ename(i))
                    break
                left = self.mul(a1, self.twist(g, hl)[0])
                right = self.mul(self.mul(a2, self.twist(g, h)[0]), self.twist(gh, l)[0])
                if left != right:
                    fail("cocycle", g, h, l, ename(i))
                    break

        return AxiomReport(verdicts, failures, scope, windowed=self.global_action)

    # -- crossed product ------------------------------------------------------------

    def basis_name(self, i: int, g: Hashable) -> str:
        return f"e{i + 1}_d{_fmt_degree(g)}"

    def crossed_product(self, check: bool = True) -> GradedAlgebra:
        """The algebra sum_g D_g delta_g with (r d_g)(r' d_h) = r alpha_g(r' 1_{g^-1}) w_{g,h} d_{gh}."""
        if check:
            rep = self.check_axioms()
            if not rep.all_pass:
                name, where = rep.first_failure()
                raise PreconditionError(f"not a unital twisted partial action: {name} fails at {where}")
        G = self.group
        degs = self.support
        basis, degrees = [], {}
        for g in degs:
            for i in sorted(self.unit_indices(g)):
                n = self.basis_name(i, g)
                basis.append(n)
                degrees[n] = g
        table = {}
        window = None
        if isinstance(G, IntegerGroup):
            window = self.window if self.global_action else max([abs(g) for g in degs] + [0])
        for g in degs:
            for h in degs:
                gh = G.mul(g, h)
                if isinstance(G, IntegerGroup) and self.global_action and abs(gh) > self.window:
                    continue  # unknown outside the window
                w = self.twist(g, h)[0]
                for i in sorted(self.unit_indices(g)):
                    for j in sorted(self.unit_indices(h)):
                        rp = self.mul(self.basis_vector(j), self.unit(G.inv(g)))
                        a = self.apply_alpha(g, rp)
                        val = self.mul(self.mul(self.basis_vector(i), a), w)
                        vec = {self.basis_name(k, gh): val[k] for k in self.support_of(val)}
                        table[(self.basis_name(i, g), self.basis_name(j, h))] = vec
        return GradedAlgebra(
            self.atom, basis, degrees, table, IntegerGroup() if isinstance(G, IntegerGroup) else G,
            window=window, total=not self.global_action,
        )

    def epsilon_units(self) -> dict:
        """epsilon_g = 1_g delta_e, as crossed-product vectors."""
        e = self.group.identity
        return {
            g: {self.basis_name(i, e): self.atom.one() for i in sorted(self.unit_indices(g))}
            for g in self.scope()
        }

    def identity_element(self) -> dict:
        e = self.group.identity
        return {self.basis_name(i, e): self.atom.one() for i in range(self.dim)}

    # -- classification -------------------------------------------------------------

    def classify(self) -> ClassificationReport:
        rep = self.check_axioms()
        if not rep.all_pass:
            name, where = rep.first_failure()
            raise PreconditionError(f"not a unital twisted partial action: {name} fails at {where}")
        flags = self.ring.flags()
        G = self.group
        rules = ["crossed-noetherian"]
        reasons: dict[str, str] = {}
        wit: dict[str, Any] = {}
        verdict = {}
        for side in ("left", "right"):
            verdict[f"noetherian_{side}"] = YES if flags.noetherian(side) else NO
            if not flags.noetherian(side):
                reasons[f"noetherian_{side}"] = f"{self.ring} is not {side} noetherian"
        if isinstance(G, IntegerGroup):
            rules.append("crossed-artinian-torsion-free")
            finite = not self.global_action
            if finite:
                wit["support"] = [str(g) for g in sorted(self.support)]
            else:
                wit["support"] = "all of Z (global action)"
            for side in ("left", "right"):
                ok = flags.artinian(side) and finite
                verdict[f"artinian_{side}"] = YES if ok else NO
                if not finite:
                    reasons[f"artinian_{side}"] = "D_g != 0 for infinitely many g"
                elif not flags.artinian(side):
                    reasons[f"artinian_{side}"] = f"{self.ring} is not {side} artinian"
        else:
            rules += ["graded-artinian-sufficient", "graded-artinian-necessary"]
            wit["support"] = [str(g) for g in self.support]
            for side in ("left", "right"):
                verdict[f"artinian_{side}"] = YES if flags.artinian(side) else NO
                if not flags.artinian(side):
                    reasons[f"artinian_{side}"] = f"{self.ring} is not {side} artinian"
        if not flags.semisimple:
            semi = NO
            rules.append("graded-semisimple-necessary")
            reasons["semisimple"] = f"{self.ring} is not semisimple"
        else:
            semi = UNKNOWN
            reasons["semisimple"] = "not decided for crossed products"
        wit["epsilon_units"] = {
            str(g): " + ".join(sorted(u)) or "0" for g, u in self.epsilon_units().items() if g in set(self.support)
        }
        return ClassificationReport(
            subject=f"crossed product of {self.ring} by {'Z' if isinstance(G, IntegerGroup) else 'a finite group'}",
            noetherian_left=verdict["noetherian_left"],
            noetherian_right=verdict["noetherian_right"],
            artinian_left=verdict["artinian_left"],
            artinian_right=verdict["artinian_right"],
            semisimple=semi,
            rules=rules,
            witnesses=wit,
            reasons=reasons,
        )


def check_axioms(s: PartialActionSystem) -> AxiomReport:
    return s.check_axioms()


def crossed_product(s: PartialActionSystem) -> GradedAlgebra:
    return s.crossed_product()


def classify_crossed(s: PartialActionSystem) -> ClassificationReport:
    return s.classify()


# -- file format ------------------------------------------------------------------

_BASIS = re.compile(r"e(\d+)$")


def parse_partial(text: str) -> PartialActionSystem:
    """Read the partial-action text format.

    ::

        ring: Q x Q x Q
        group: Z
        unit 1 = (1,0,0)
        unit -1 = (0,1,0)
        alpha 1: e2 -> (1,0,0)
        alpha -1: e1 -> (0,1,0)
        twist 1 -1 = (1,0,0) inverse (1,0,0)
        global: yes        # integers only: D_n = R, alpha_n = alpha_1^n
        window: 3          # degree window used for global actions
    """
    ring = group = None
    pending = False
    elements: list[str] = []
    rows: dict = {}
    identity = None
    units_raw, alpha_raw, twist_raw = [], [], []
    global_action = False
    window = 3
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "ring:":
            ring = parse_ring(line[5:])
        elif head == "group:":
            group = parse_group_spec(line[6:], ln)
            pending = group is None
        elif head == "elements:":
            elements = line.split()[1:]
        elif head == "identity:":
            identity = line.split()[1]
        elif head == "table":
            m = re.fullmatch(r"table\s+(\S+)\s*:\s*(.*)", line)
            if not m:
                raise ParseError("expected 'table g: products...'", line=ln)
            rows[m.group(1)] = (m.group(2).split(), ln)
        elif head == "global:":
            global_action = line.split()[1:] == ["yes"]
        elif head == "window:":
            try:
                window = int(line.split()[1])
            except (IndexError, ValueError):
                raise ParseError("window must be an integer", line=ln) from None
        elif head == "unit":
            m = re.fullmatch(r"unit\s+(\S+)\s*=\s*(.+)", line)
            if not m:
                raise ParseError("expected 'unit g = element'", line=ln)
            units_raw.append((m.group(1), m.group(2), ln))
        elif head == "alpha":
            m = re.fullmatch(r"alpha\s+(\S+)\s*:\s*(.*)", line)
            if not m:
                raise ParseError("expected 'alpha g: eI -> element, ...'", line=ln)
            alpha_raw.append((m.group(1), m.group(2), ln))
        elif head == "twist":
            m = re.fullmatch(r"twist\s+(\S+)\s+(\S+)\s*=\s*(.+?)\s+inverse\s+(.+)", line)
            if not m:
                raise ParseError("expected 'twist g h = element inverse element'", line=ln)
            twist_raw.append((m.group(1), m.group(2), m.group(3), m.group(4), ln))
        else:
            raise ParseError(f"unrecognized line {line!r}", line=ln)
    if ring is None:
        raise ParseError("missing 'ring:' line")
    if pending:
        group = build_table_group(elements, rows, identity)
    if group is None:
        raise ParseError("missing 'group:' line")
    atoms = ring.atoms
    if len(set(atoms)) != 1:
        raise ParseError(f"ring {ring} must be a power of a single ring")
    atom, dim = atoms[0], len(atoms)

    def elem(text: str, ln: int) -> tuple:
        try:
            v = parse_literal(text)
        except ParseError as exc:
            raise ParseError(str(exc), line=ln) from None
        if not isinstance(v, tuple):
            v = (v,)
        if len(v) != dim:
            raise ParseError(f"expected {dim} components, got {len(v)}", line=ln)
        try:
            return tuple(atom.coerce(x) for x in v)
        except ValueError as exc:
            raise ParseError(str(exc), line=ln) from None

    units = {}
    for g, body, ln in units_raw:
        gg = parse_group_element(g, group, ln)
        u = elem(body, ln)
        if any(x not in (0, 1) for x in u):
            raise ParseError("unit vectors must have 0/1 entries", line=ln)
        units[gg] = u
    alpha: dict = {}
    for g, body, ln in alpha_raw:
        gg = parse_group_element(g, group, ln)
        m = alpha.setdefault(gg, {})
        for piece in re.split(r",\s*(?=e\d)", body.strip()):
            if not piece:
                continue
            mm = re.fullmatch(r"e(\d+)\s*->\s*(.+)", piece.strip())
            if not mm:
                raise ParseError(f"bad image {piece.strip()!r} (expected eI -> element)", line=ln)
            i = int(mm.group(1)) - 1
            if not 0 <= i < dim:
                raise ParseError(f"basis index e{i + 1} out of range", line=ln)
            m[i] = elem(mm.group(2), ln)
    twists = {}
    for g, h, w, wi, ln in twist_raw:
        twists[(parse_group_element(g, group, ln), parse_group_element(h, group, ln))] = (elem(w, ln), elem(wi, ln))
    try:
        return PartialActionSystem(group, atom, dim, units, alpha, twists, global_action, window)
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
