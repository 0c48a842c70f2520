"""Real composition algebras as structure-constant algebras over Q(phi).

Every registered algebra has a monomial multiplication table
``e_i * e_j = s_ij * e_k(i, j)`` and a diagonal norm
``N(sum x_i e_i) = sum n_i * x_i**2``.  Complex-type algebras whose natural
coordinates are irrational over Q(phi) (the Eisenstein and cyclotomic
orders) are registered with a scaled imaginary unit ``t**2 = -c`` so every
order keeps exact coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .golden import ONE, PHI, ZERO, GoldenScalar, galois, sign_exact

FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))


class AlgebraMismatchError(TypeError):
    pass


class AlgebraRegistrationError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    name: str
    dimension: int
    # table[i][j] = (k, s): e_i e_j = s e_k
    table: tuple[tuple[tuple[int, GoldenScalar], ...], ...]
    norm_diagonal: tuple[GoldenScalar, ...]
    associative: bool
    _terms: tuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        terms = tuple(
            (i, j, k, s)
            for i, row in enumerate(self.table)
            for j, (k, s) in enumerate(row)
            if s
        )
        object.__setattr__(self, "_terms", terms)

    def __repr__(self) -> str:
        return f"AlgebraSpec({self.name!r}, dim={self.dimension})"

    def element(self, coords: Iterable[object]) -> AlgebraElement:
        return AlgebraElement(tuple(GoldenScalar.coerce(c) for c in coords), self)

    def basis_element(self, i: int, scale: object = 1) -> AlgebraElement:
        coords = [ZERO] * self.dimension
        coords[i] = GoldenScalar.coerce(scale)
        return AlgebraElement(tuple(coords), self)

    def zero(self) -> AlgebraElement:
        return AlgebraElement((ZERO,) * self.dimension, self)

    def one(self) -> AlgebraElement:
        return self.basis_element(0)


class AlgebraElement:
    __slots__ = ("coords", "algebra", "_key")

    def __init__(self, coords: tuple[GoldenScalar, ...], algebra: AlgebraSpec) -> None:
        if len(coords) != algebra.dimension:
            raise ValueError(
                f"{algebra.name} needs {algebra.dimension} coordinates, got {len(coords)}"
            )
        self.coords = coords
        self.algebra = algebra
        self._key = None

    def key(self) -> tuple[str, ...]:
        """Serialized coordinates; the canonical sort key for shells."""
        if self._key is None:
            self._key = tuple(c.field_string() for c in self.coords)
        return self._key

    def serialize(self) -> list[str]:
        return list(self.key())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        _check_same(self, other)
        return AlgebraElement(tuple(x + y for x, y in zip(self.coords, other.coords)), self.algebra)

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        _check_same(self, other)
        return AlgebraElement(tuple(x - y for x, y in zip(self.coords, other.coords)), self.algebra)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(tuple(-x for x in self.coords), self.algebra)

    def __mul__(self, other: object) -> AlgebraElement:
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        s = GoldenScalar.coerce(other)
        return AlgebraElement(tuple(s * x for x in self.coords), self.algebra)

    def __rmul__(self, other: object) -> AlgebraElement:
        s = GoldenScalar.coerce(other)
        return AlgebraElement(tuple(s * x for x in self.coords), self.algebra)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self) -> str:
        return f"{self.algebra.name}({', '.join(str(c) for c in self.coords)})"


def _check_same(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.algebra is not b.algebra:
        raise AlgebraMismatchError(f"{a.algebra.name} vs {b.algebra.name}")


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same(a, b)
    alg = a.algebra
    out = [ZERO] * alg.dimension
    ac, bc = a.coords, b.coords
    for i, j, k, s in alg._terms:
        x = ac[i]
        if not x:
            continue
        y = bc[j]
        if not y:
            continue
        out[k] = out[k] + s * x * y
    return AlgebraElement(tuple(out), alg)


def conj(a: AlgebraElement) -> AlgebraElement:
    c = a.coords
    return AlgebraElement((c[0],) + tuple(-x for x in c[1:]), a.algebra)


def norm(a: AlgebraElement) -> GoldenScalar:
    total = ZERO
    for n, x in zip(a.algebra.norm_diagonal, a.coords):
        if x:
            total = total + n * x * x
    return total


def polar(a: AlgebraElement, b: AlgebraElement) -> GoldenScalar:
    """B(a, b) = N(a + b) - N(a) - N(b)."""
    _check_same(a, b)
    total = ZERO
    for n, x, y in zip(a.algebra.norm_diagonal, a.coords, b.coords):
        if x and y:
            total = total + n * x * y
    return total * 2


def inverse(u: AlgebraElement) -> AlgebraElement:
    n = norm(u)
    if not n:
        raise ZeroDivisionError(f"{u!r} has zero norm")
    return conj(u) * n.inverse()


def associator(a: AlgebraElement, b: AlgebraElement, c: AlgebraElement) -> AlgebraElement:
    return mul(mul(a, b), c) - mul(a, mul(b, c))


def moufang_check(a: AlgebraElement, b: AlgebraElement, c: AlgebraElement) -> bool:
    """((ab)a)c == a(b(ac))."""
    return mul(mul(mul(a, b), a), c) == mul(a, mul(b, mul(a, c)))


def alternative_check(a: AlgebraElement, b: AlgebraElement) -> bool:
    return mul(mul(a, a), b) == mul(a, mul(a, b)) and mul(mul(b, a), a) == mul(b, mul(a, a))


# -- construction -----------------------------------------------------------


def _quaternion_table(a: GoldenScalar, b: GoldenScalar):
    """Quaternion algebra with i^2 = -a, j^2 = -b, k = ij."""
    ab = a * b
    t = [[None] * 4 for _ in range(4)]
    for x in range(4):
        t[0][x] = (x, ONE)
        t[x][0] = (x, ONE)
    t[1][1] = (0, -a)
    t[2][2] = (0, -b)
    t[3][3] = (0, -ab)
    t[1][2] = (3, ONE)
    t[2][1] = (3, -ONE)
    t[1][3] = (2, -a)
    t[3][1] = (2, a)
    t[2][3] = (1, b)
    t[3][2] = (1, -b)
    return tuple(tuple(r) for r in t), (ONE, a, b, ab)


def _octonion_table():
    t = [[None] * 8 for _ in range(8)]
    for x in range(8):
        t[0][x] = (x, ONE)
        t[x][0] = (x, ONE)
    for x in range(1, 8):
        t[x][x] = (0, -ONE)
    for p, q, r in FANO_TRIPLES:
        for x, y, z in ((p, q, r), (q, r, p), (r, p, q)):
            t[x][y] = (z, ONE)
            t[y][x] = (z, -ONE)
    return tuple(tuple(r) for r in t), (ONE,) * 8


def _complex_table(c: GoldenScalar):
    t = (((0, ONE), (1, ONE)), ((1, ONE), (0, -c)))
    return t, (ONE, c)


def _sample_element(alg: AlgebraSpec, rng: random.Random, golden: bool) -> AlgebraElement:
    coords = []
    for _ in range(alg.dimension):
        a = rng.randint(-4, 4)
        b = rng.randint(-3, 3) if golden else 0
        den = rng.choice((1, 1, 2, 3))
        coords.append(GoldenScalar(a, b) / den)
    return alg.element(coords)


def _verify_registration(alg: AlgebraSpec, golden: bool) -> None:
    one = alg.one()
    for i in range(alg.dimension):
        e = alg.basis_element(i)
        if mul(one, e) != e or mul(e, one) != e:
            raise AlgebraRegistrationError(f"{alg.name}: e0 is not a two-sided unit")
    for n in alg.norm_diagonal:
        if sign_exact(n) <= 0 or sign_exact(galois(n)) <= 0:
            raise AlgebraRegistrationError(f"{alg.name}: norm not positive definite in both embeddings")
    rng = random.Random(f"register:{alg.name}")
    for _ in range(100):
        x = _sample_element(alg, rng, golden)
        y = _sample_element(alg, rng, golden)
        if norm(mul(x, y)) != norm(x) * norm(y):
            raise AlgebraRegistrationError(f"{alg.name}: norm is not multiplicative")


def _build(name: str, table, diag, associative: bool, golden: bool = False) -> AlgebraSpec:
    alg = AlgebraSpec(name, len(diag), table, tuple(diag), associative)
    _verify_registration(alg, golden)
    return alg


R = _build("R", (((0, ONE),),), (ONE,), True)
C = _build("C", *_complex_table(ONE), True)
# Eisenstein coordinates: omega = -1/2 + s with s^2 = -3/4
CEIS = _build("Ceis", *_complex_table(GoldenScalar(3) / 4), True)
# cyclotomic coordinates: zeta10 = phi/2 + t with t^2 = -(3 - phi)/4
CGOLDEN = _build("Cgolden", *_complex_table((3 - PHI) / 4), True, golden=True)
H = _build("H", *_quaternion_table(ONE, ONE), True, golden=True)
# Cayley-Dickson double of Ceis, for the 2A2 hybrid order
HEIS = _build("Heis", *_quaternion_table(GoldenScalar(3) / 4, ONE), True)
O = _build("O", *_octonion_table(), False, golden=True)

ALGEBRAS: dict[str, AlgebraSpec] = {a.name: a for a in (R, C, CEIS, CGOLDEN, H, HEIS, O)}


def get_algebra(name: str) -> AlgebraSpec:
    try:
        return ALGEBRAS[name]
    except KeyError:
        raise KeyError(f"unknown algebra {name!r}; known: {sorted(ALGEBRAS)}") from None


def element(algebra: AlgebraSpec | str, coords: Sequence[object]) -> AlgebraElement:
    if isinstance(algebra, str):
        algebra = get_algebra(algebra)
    return algebra.element(coords)
