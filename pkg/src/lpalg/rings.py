"""Exact coefficient rings: Z, Q, Z/n and finite products of those.

A :class:`RingDescriptor` does the arithmetic on *payloads* (``int`` for Z and
Z/n, :class:`fractions.Fraction` for Q, ``tuple`` for products).  Hot loops in
the algebra code work on payloads directly; :class:`RingValue` wraps a payload
together with its ring for the public API.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any, Iterator

from .errors import ParseError

INTEGERS = "integers"
RATIONALS = "rationals"
MODULAR = "modular"
PRODUCT = "product"


def is_squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        if n % d == 0:
            n //= d
        d += 1
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingFlags:
    noetherian_left: bool
    noetherian_right: bool
    artinian_left: bool
    artinian_right: bool
    semisimple: bool
    all_nonzero_integers_invertible: bool

    def noetherian(self, side: str) -> bool:
        return self.noetherian_left if side == "left" else self.noetherian_right

    def artinian(self, side: str) -> bool:
        return self.artinian_left if side == "left" else self.artinian_right


@dataclass(frozen=True)
class RingDescriptor:
    kind: str
    modulus: int | None = None
    components: tuple["RingDescriptor", ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind == MODULAR:
            if self.modulus is None or self.modulus < 2:
                raise ValueError(
                    f"Z/{self.modulus} rejected: modulus must be at least 2 (the ring needs 1 != 0)"
                )
        elif self.kind == PRODUCT:
            if not self.components:
                raise ValueError("a product ring needs at least one factor")
            if any(c.kind == PRODUCT for c in self.components):
                raise ValueError("product rings must be flat; use product() to build them")
        elif self.kind not in (INTEGERS, RATIONALS):
            raise ValueError(f"unknown ring kind {self.kind!r}")

    # -- structure -----------------------------------------------------------

    @property
    def is_product(self) -> bool:
        return self.kind == PRODUCT

    @property
    def atoms(self) -> tuple["RingDescriptor", ...]:
        return self.components if self.kind == PRODUCT else (self,)

    @property
    def is_field(self) -> bool:
        if self.kind == RATIONALS:
            return True
        return self.kind == MODULAR and is_prime(self.modulus)

    @property
    def is_finite(self) -> bool:
        return all(a.kind == MODULAR for a in self.atoms)

    @property
    def size(self) -> int | None:
        if not self.is_finite:
            return None
        return reduce(lambda acc, a: acc * a.modulus, self.atoms, 1)

    def flags(self) -> RingFlags:
        return ring_flags(self)

    def __str__(self) -> str:
        if self.kind == INTEGERS:
            return "Z"
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == MODULAR:
            return f"Z/{self.modulus}"
        return " x ".join(str(c) for c in self.components)

    # -- payload arithmetic --------------------------------------------------

    def zero(self) -> Any:
        if self.kind == PRODUCT:
            return tuple(c.zero() for c in self.components)
        return Fraction(0) if self.kind == RATIONALS else 0

    def one(self) -> Any:
        return self.from_int(1)

    def from_int(self, n: int) -> Any:
        if self.kind == PRODUCT:
            return tuple(c.from_int(n) for c in self.components)
        if self.kind == RATIONALS:
            return Fraction(n)
        if self.kind == MODULAR:
            return n % self.modulus
        return n

    def add(self, a: Any, b: Any) -> Any:
        if self.kind == PRODUCT:
            return tuple(c.add(x, y) for c, x, y in zip(self.components, a, b))
        if self.kind == MODULAR:
            return (a + b) % self.modulus
        return a + b

    def neg(self, a: Any) -> Any:
        if self.kind == PRODUCT:
            return tuple(c.neg(x) for c, x in zip(self.components, a))
        if self.kind == MODULAR:
            return (-a) % self.modulus
        return -a

    def sub(self, a: Any, b: Any) -> Any:
        return self.add(a, self.neg(b))

    def mul(self, a: Any, b: Any) -> Any:
        if self.kind == PRODUCT:
            return tuple(c.mul(x, y) for c, x, y in zip(self.components, a, b))
        if self.kind == MODULAR:
            return (a * b) % self.modulus
        return a * b

    def scale_int(self, n: int, a: Any) -> Any:
        return self.mul(self.from_int(n), a)

    def is_zero(self, a: Any) -> bool:
        if self.kind == PRODUCT:
            return all(c.is_zero(x) for c, x in zip(self.components, a))
        return a == 0

    def is_one(self, a: Any) -> bool:
        return a == self.one()

    def invert(self, a: Any) -> Any | None:
        """Multiplicative inverse of ``a``, or ``None`` when none exists."""
        if self.kind == PRODUCT:
            parts = [c.invert(x) for c, x in zip(self.components, a)]
            return None if any(p is None for p in parts) else tuple(parts)
        if self.kind == RATIONALS:
            return None if a == 0 else 1 / Fraction(a)
        if self.kind == INTEGERS:
            return a if a in (1, -1) else None
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            return None

    def coerce(self, x: Any) -> Any:
        """Bring an int, Fraction or tuple into this ring's canonical payload form."""
        if self.kind == PRODUCT:
            if isinstance(x, tuple):
                if len(x) != len(self.components):
                    raise ValueError(f"expected a {len(self.components)}-tuple for ring {self}")
                return tuple(c.coerce(y) for c, y in zip(self.components, x))
            return tuple(c.coerce(x) for c in self.components)
        if isinstance(x, tuple):
            raise ValueError(f"tuple coefficient given for non-product ring {self}")
        x = Fraction(x)
        if self.kind == RATIONALS:
            return x
        if x.denominator == 1:
            return self.from_int(x.numerator)
        if self.kind == INTEGERS:
            raise ValueError(f"{x} is not an integer")
        inv = self.invert(x.denominator % self.modulus)
        if inv is None:
            raise ValueError(f"denominator {x.denominator} is not invertible in {self}")
        return (x.numerator * inv) % self.modulus

    def elements(self) -> Iterator[Any]:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        if self.kind == PRODUCT:
            yield from itertools.product(*(range(a.modulus) for a in self.components))
        else:
            yield from range(self.modulus)

    # -- text ----------------------------------------------------------------

    def render(self, a: Any) -> str:
        if self.kind == PRODUCT:
            return "(" + ",".join(c.render(x) for c, x in zip(self.components, a)) + ")"
        return str(a)

    def parse_value(self, text: str) -> Any:
        return self.coerce(parse_literal(text))

    def value(self, x: Any) -> "RingValue":
        return RingValue(self, self.coerce(x))


def integers() -> RingDescriptor:
    return RingDescriptor(INTEGERS)


def rationals() -> RingDescriptor:
    return RingDescriptor(RATIONALS)


def modular(n: int) -> RingDescriptor:
    return RingDescriptor(MODULAR, modulus=n)


def product(factors: list[RingDescriptor] | tuple[RingDescriptor, ...]) -> RingDescriptor:
    flat: list[RingDescriptor] = []
    for f in factors:
        flat.extend(f.atoms)
    if len(flat) == 1:
        return flat[0]
    return RingDescriptor(PRODUCT, components=tuple(flat))


_FLAG_TABLE = {
    INTEGERS: (True, False, False, False),
    RATIONALS: (True, True, True, True),
}


def ring_flags(r: RingDescriptor) -> RingFlags:
    if r.kind == PRODUCT:
        parts = [ring_flags(c) for c in r.components]
        return RingFlags(*(all(getattr(p, f) for p in parts) for f in RingFlags.__dataclass_fields__))
    if r.kind == MODULAR:
        noeth, artin, semi, inv = True, True, is_squarefree(r.modulus), False
    else:
        noeth, artin, semi, inv = _FLAG_TABLE[r.kind]
    return RingFlags(noeth, noeth, artin, artin, semi, inv)


_ATOM = re.compile(r"\s*(Z/(-?\d+)|Z|Q)\s*$")


def parse_ring(text: str) -> RingDescriptor:
    """Parse ``atom (" x " atom)*`` with atoms ``Z``, ``Q`` or ``Z/n``."""
    text = text.strip()
    if not text:
        raise ParseError("empty ring descriptor")
    atoms = []
    for i, piece in enumerate(re.split(r"\s+x\s+", text)):
        m = _ATOM.match(piece)
        if not m:
            raise ParseError(f"bad ring atom {piece.strip()!r} (expected Z, Q or Z/n)", column=i + 1)
        if m.group(2) is not None:
            n = int(m.group(2))
            if n < 2:
                raise ParseError(f"Z/{n} rejected: modulus must be at least 2 (the ring needs 1 != 0)")
            atoms.append(modular(n))
        elif m.group(1) == "Z":
            atoms.append(integers())
        else:
            atoms.append(rationals())
    return product(atoms)


_SCALAR = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_literal(text: str) -> Any:
    """Parse an integer, a fraction ``p/q`` or a tuple ``(a,b,...)`` of those."""
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        inner = t[1:-1]
        if not inner.strip():
            raise ParseError("empty tuple literal")
        return tuple(parse_literal(p) for p in inner.split(","))
    m = _SCALAR.match(t)
    if not m:
        raise ParseError(f"bad coefficient literal {text!r}")
    if m.group(2) is None:
        return int(m.group(1))
    q = int(m.group(2))
    if q == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), q)


@dataclass(frozen=True)
class RingValue:
    ring: RingDescriptor
    payload: Any

    def _other(self, other: Any) -> Any:
        if isinstance(other, RingValue):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other.payload
        return self.ring.coerce(other)

    def __add__(self, other: Any) -> "RingValue":
        return RingValue(self.ring, self.ring.add(self.payload, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "RingValue":
        return RingValue(self.ring, self.ring.sub(self.payload, self._other(other)))

    def __neg__(self) -> "RingValue":
        return RingValue(self.ring, self.ring.neg(self.payload))

    def __mul__(self, other: Any) -> "RingValue":
        return RingValue(self.ring, self.ring.mul(self.payload, self._other(other)))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RingValue):
            return self.ring == other.ring and self.payload == other.payload
        try:
            return self.payload == self.ring.coerce(other)
        except (ValueError, TypeError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, self.payload))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.payload)

    def __str__(self) -> str:
        return self.ring.render(self.payload)


def invert(x: RingValue) -> RingValue | None:
    """Inverse of ``x``; ``None`` is the non-invertible outcome, not an error."""
    y = x.ring.invert(x.payload)
    return None if y is None else RingValue(x.ring, y)
