"""Exact arithmetic in Z, Z[phi] and their fraction fields Q, Q(phi).

A :class:`GoldenScalar` stores ``(A + B*phi) / D`` with integers ``A``, ``B`` and a
positive denominator ``D`` in lowest terms, where ``phi**2 == phi + 1``.  The
integers and rationals are the ``b == 0`` slice of the same type, so one code
path serves every coefficient ring used by the orders.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

RING_TAGS = ("Z", "Zphi", "Q", "Qphi")


class RingMismatchError(TypeError):
    """Raised when an operand is not an exact element of Q(phi)."""


class GoldenScalar:
    __slots__ = ("_A", "_B", "_D")

    def __init__(self, a: int | Fraction = 0, b: int | Fraction = 0) -> None:
        a = _as_fraction(a)
        b = _as_fraction(b)
        den = a.denominator * b.denominator // math.gcd(a.denominator, b.denominator)
        self._set(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den)

    def _set(self, A: int, B: int, D: int) -> None:
        g = math.gcd(math.gcd(A, B), D)
        if g != 1:
            A //= g
            B //= g
            D //= g
        self._A = A
        self._B = B
        self._D = D

    @classmethod
    def _raw(cls, A: int, B: int, D: int) -> GoldenScalar:
        out = object.__new__(cls)
        out._set(A, B, D)
        return out

    @classmethod
    def coerce(cls, x: object) -> GoldenScalar:
        if isinstance(x, GoldenScalar):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls(x)
        if isinstance(x, Rational):
            return cls(Fraction(x.numerator, x.denominator))
        raise RingMismatchError(f"cannot use {type(x).__name__} {x!r} as an exact golden scalar")

    # -- components -------------------------------------------------------
    @property
    def a(self) -> Fraction:
        return Fraction(self._A, self._D)

    @property
    def b(self) -> Fraction:
        return Fraction(self._B, self._D)

    @property
    def ring_tag(self) -> str:
        if self._D == 1:
            return "Z" if self._B == 0 else "Zphi"
        return "Q" if self._B == 0 else "Qphi"

    def is_integral(self) -> bool:
        """True iff the value lies in Z[phi]."""
        return self._D == 1

    def is_rational(self) -> bool:
        return self._B == 0

    def in_ring(self, ring_tag: str) -> bool:
        if ring_tag == "Z":
            return self._D == 1 and self._B == 0
        if ring_tag == "Zphi":
            return self._D == 1
        if ring_tag == "Q":
            return self._B == 0
        if ring_tag == "Qphi":
            return True
        raise ValueError(f"unknown ring tag {ring_tag!r}")

    def as_ints(self) -> tuple[int, int]:
        """Return ``(a, b)`` for an element of Z[phi]."""
        if self._D != 1:
            raise ValueError(f"{self} is not in Z[phi]")
        return self._A, self._B

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: object) -> GoldenScalar:
        try:
            o = GoldenScalar.coerce(other)
        except RingMismatchError:
            return NotImplemented
        if self._D == o._D:
            return GoldenScalar._raw(self._A + o._A, self._B + o._B, self._D)
        return GoldenScalar._raw(
            self._A * o._D + o._A * self._D, self._B * o._D + o._B * self._D, self._D * o._D
        )

    __radd__ = __add__

    def __neg__(self) -> GoldenScalar:
        return GoldenScalar._raw(-self._A, -self._B, self._D)

    def __sub__(self, other: object) -> GoldenScalar:
        try:
            o = GoldenScalar.coerce(other)
        except RingMismatchError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> GoldenScalar:
        return GoldenScalar.coerce(other) - self

    def __mul__(self, other: object) -> GoldenScalar:
        try:
            o = GoldenScalar.coerce(other)
        except RingMismatchError:
            return NotImplemented
        bd = self._B * o._B
        return GoldenScalar._raw(
            self._A * o._A + bd, self._A * o._B + self._B * o._A + bd, self._D * o._D
        )

    __rmul__ = __mul__

    def field_norm(self) -> Fraction:
        """x * galois(x), a rational number."""
        A, B, D = self._A, self._B, self._D
        return Fraction(A * A + A * B - B * B, D * D)

    def inverse(self) -> GoldenScalar:
        n = self.field_norm()
        if n == 0:
            raise ZeroDivisionError("golden scalar division by zero")
        return galois(self) * GoldenScalar(1 / n)

    def __truediv__(self, other: object) -> GoldenScalar:
        try:
            o = GoldenScalar.coerce(other)
        except RingMismatchError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: object) -> GoldenScalar:
        return GoldenScalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> GoldenScalar:
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        try:
            o = GoldenScalar.coerce(other)
        except RingMismatchError:
            return NotImplemented
        return self._A == o._A and self._B == o._B and self._D == o._D

    def __hash__(self) -> int:
        if self._B == 0:
            return hash(Fraction(self._A, self._D))
        return hash((self._A, self._B, self._D))

    def __lt__(self, other: object) -> bool:
        return sign_exact(self - GoldenScalar.coerce(other)) < 0

    def __le__(self, other: object) -> bool:
        return sign_exact(self - GoldenScalar.coerce(other)) <= 0

    def __gt__(self, other: object) -> bool:
        return sign_exact(self - GoldenScalar.coerce(other)) > 0

    def __ge__(self, other: object) -> bool:
        return sign_exact(self - GoldenScalar.coerce(other)) >= 0

    def __bool__(self) -> bool:
        return self._A != 0 or self._B != 0

    def __float__(self) -> float:
        return (self._A + self._B * PHI_FLOAT) / self._D

    # -- text -------------------------------------------------------------
    def __repr__(self) -> str:
        return f"GoldenScalar({self.a}, {self.b})"

    def __str__(self) -> str:
        if self._B == 0:
            return str(self.a)
        if self._A == 0:
            return f"{self.b}*phi"
        return f"{self.a}{'+' if self._B > 0 else '-'}{abs(self.b)}*phi"

    def serialize(self) -> list[int] | str:
        """Certificate form: ``[a, b]`` in ring mode, ``"p/q+r/s*phi"`` otherwise."""
        if self._D == 1:
            return [self._A, self._B]
        return self.field_string()

    def field_string(self) -> str:
        a, b = self.a, self.b
        return f"{a.numerator}/{a.denominator}+{b.numerator}/{b.denominator}*phi"


_FIELD_RE = re.compile(r"^(-?\d+)/(\d+)\+(-?\d+)/(\d+)\*phi$")


def parse(text: str | list[int]) -> GoldenScalar:
    """Inverse of :meth:`GoldenScalar.serialize`; also reads short forms like ``"2"``, ``"1/2"``, ``"2-phi"``."""
    if isinstance(text, (list, tuple)):
        a, b = text
        return GoldenScalar(int(a), int(b))
    s = text.replace(" ", "")
    m = _FIELD_RE.match(s)
    if m:
        p, q, r, t = (int(g) for g in m.groups())
        return GoldenScalar(Fraction(p, q), Fraction(r, t))
    m = _SHORT_RE.match(s)
    if not s or not m:
        raise ValueError(f"cannot parse golden scalar {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(0)
    if m.group("phi") and m.group("a") and not m.group("sign") and not m.group("b"):
        # "3/2*phi": the leading number is the phi coefficient
        return GoldenScalar(0, a)
    if m.group("phi"):
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("sign") == "-":
            b = -b
    elif m.group("sign") or m.group("b"):
        raise ValueError(f"cannot parse golden scalar {text!r}")
    return GoldenScalar(a, b)


_SHORT_RE = re.compile(
    r"^(?P<a>[-+]?\d+(?:/\d+)?)?(?:(?P<sign>[-+])?(?P<b>\d+(?:/\d+)?)?\*?(?P<phi>phi))?$"
)


def _as_fraction(x: object) -> Fraction:
    if isinstance(x, bool):
        raise RingMismatchError("bool is not a golden scalar coefficient")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise RingMismatchError(f"cannot use {type(x).__name__} {x!r} as an exact coefficient")


ZERO = GoldenScalar(0)
ONE = GoldenScalar(1)
PHI = GoldenScalar(0, 1)
PHI_FLOAT = (1 + math.sqrt(5)) / 2


def gmul(x: GoldenScalar | int, y: GoldenScalar | int) -> GoldenScalar:
    return GoldenScalar.coerce(x) * GoldenScalar.coerce(y)


def galois(x: GoldenScalar | int) -> GoldenScalar:
    """The nontrivial automorphism a + b*phi -> (a + b) - b*phi."""
    x = GoldenScalar.coerce(x)
    return GoldenScalar._raw(x._A + x._B, -x._B, x._D)


def trace(x: GoldenScalar | int) -> Fraction:
    """Sum over both real embeddings: 2a + b."""
    x = GoldenScalar.coerce(x)
    return Fraction(2 * x._A + x._B, x._D)


def sign_exact(x: GoldenScalar | int) -> int:
    """Sign of a + b*phi as a real number, with no floating point.

    With p = 2a + b the value is (p + b*sqrt5)/2; mixed-sign cases are decided
    by comparing p**2 with 5*b**2 (never equal unless both vanish).
    """
    x = GoldenScalar.coerce(x)
    p = 2 * x._A + x._B
    b = x._B
    if p >= 0 and b >= 0:
        return 0 if p == 0 and b == 0 else 1
    if p <= 0 and b <= 0:
        return -1
    if p > 0:
        return 1 if p * p > 5 * b * b else -1
    return 1 if 5 * b * b > p * p else -1


def is_totally_nonneg(x: GoldenScalar | int) -> bool:
    return sign_exact(x) >= 0 and sign_exact(galois(x)) >= 0


def is_totally_positive(x: GoldenScalar | int) -> bool:
    return sign_exact(x) > 0 and sign_exact(galois(x)) > 0


def one_decompositions(ring_tag: str, search_bound: int) -> set[tuple[GoldenScalar, GoldenScalar]]:
    """All ``(a, 1 - a)`` with both parts totally nonnegative and |coefficients of a| <= bound."""
    if search_bound < 1:
        raise ValueError("search_bound must be >= 1")
    if ring_tag == "Z":
        candidates = (GoldenScalar(a0) for a0 in range(-search_bound, search_bound + 1))
    elif ring_tag == "Zphi":
        candidates = (
            GoldenScalar(a0, a1)
            for a0 in range(-search_bound, search_bound + 1)
            for a1 in range(-search_bound, search_bound + 1)
        )
    else:
        raise ValueError(f"one_decompositions needs ring tag Z or Zphi, got {ring_tag!r}")
    out = set()
    for a in candidates:
        b = ONE - a
        if is_totally_nonneg(a) and is_totally_nonneg(b):
            out.add((a, b))
    return out
