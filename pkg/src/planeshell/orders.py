"""Named integral orders with explicit bases.

An :class:`Order` is given by a ring tag (``Z`` or ``Zphi``), an ambient
algebra and a ring basis.  Besides the exact Gram matrix it caches an integer
description on the Z-basis (``basis`` for Z-orders, ``basis + phi*basis`` for
Z[phi]-orders): multiplication tensor, conjugation matrix and the polar form
split as ``G0 + phi*G1``.  The enumeration and sweep kernels work on that
integer description; the exact element path is kept as the reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import algebra as alg
from .algebra import AlgebraElement, AlgebraSpec, conj, mul, norm, polar
from .golden import ONE, PHI, ZERO, GoldenScalar, is_totally_positive


class OrderInvariantError(ValueError):
    pass


class UnknownOrderError(KeyError):
    pass


@dataclass(frozen=True)
class Membership:
    found: bool
    coefficients: tuple[GoldenScalar, ...] | None = None

    def __bool__(self) -> bool:
        return self.found


def _solve_setup(columns: Sequence[AlgebraElement]):
    """Pick pivot rows of the d x r coordinate matrix and invert that r x r block."""
    r = len(columns)
    d = columns[0].algebra.dimension
    mat = [[columns[j].coords[i] for j in range(r)] for i in range(d)]
    # row echelon on a copy to find independent rows
    work = [row[:] + [GoldenScalar(int(i == k)) for k in range(d)] for i, row in enumerate(mat)]
    rowi = 0
    for col in range(r):
        piv = next((i for i in range(rowi, d) if work[i][col]), None)
        if piv is None:
            raise OrderInvariantError("basis is linearly dependent")
        work[rowi], work[piv] = work[piv], work[rowi]
        inv = work[rowi][col].inverse()
        work[rowi] = [v * inv for v in work[rowi]]
        for i in range(d):
            if i != rowi and work[i][col]:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rowi])]
        rowi += 1
    # rows 0..r-1 of work now hold [I | E] where E*mat = [I; *]
    left = [row[r:] for row in work[:r]]
    return left


class Order:
    def __init__(
        self,
        name: str,
        ring_tag: str,
        algebra: AlgebraSpec,
        basis: Sequence[AlgebraElement],
        *,
        title: str | None = None,
        display_basis: Sequence[AlgebraElement] | None = None,
        hybrid: bool = False,
    ) -> None:
        if ring_tag not in ("Z", "Zphi"):
            raise OrderInvariantError(f"ring tag must be Z or Zphi, got {ring_tag!r}")
        self.name = name
        self.title = title or name
        self.ring_tag = ring_tag
        self.algebra = algebra
        self.basis = tuple(basis)
        self.display_basis = tuple(display_basis) if display_basis else None
        self.hybrid = hybrid
        if any(b.algebra is not algebra for b in self.basis):
            raise OrderInvariantError("basis elements must live in the order's algebra")
        self._left = _solve_setup(self.basis)
        for row in self.gram:
            for g in row:
                if not g.in_ring(ring_tag):
                    raise OrderInvariantError(f"{name}: polar value {g} not in {ring_tag}")
        for b in self.basis:
            if not norm(b).in_ring(ring_tag):
                raise OrderInvariantError(f"{name}: norm {norm(b)} of {b!r} not in {ring_tag}")
        if not contains(self, algebra.one()):
            raise OrderInvariantError(f"{name}: 1 is not in the span of the basis")
        if not _det(self.gram):
            raise OrderInvariantError(f"{name}: degenerate Gram matrix")

    def __repr__(self) -> str:
        return f"Order({self.name!r}, {self.ring_tag}, rank={self.rank}, z_rank={self.z_rank})"

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def z_rank(self) -> int:
        return self.rank * (2 if self.ring_tag == "Zphi" else 1)

    # -- exact data -------------------------------------------------------
    @cached_property
    def gram(self) -> tuple[tuple[GoldenScalar, ...], ...]:
        return tuple(tuple(polar(x, y) for y in self.basis) for x in self.basis)

    @cached_property
    def zbasis(self) -> tuple[AlgebraElement, ...]:
        if self.ring_tag == "Z":
            return self.basis
        return self.basis + tuple(PHI * b for b in self.basis)

    def solve(self, x: AlgebraElement) -> tuple[GoldenScalar, ...] | None:
        """Coefficients over the fraction field, or None if x is outside the span."""
        if x.algebra is not self.algebra:
            raise alg.AlgebraMismatchError(f"{x.algebra.name} vs {self.algebra.name}")
        coeffs = tuple(
            sum((e * v for e, v in zip(row, x.coords) if e and v), ZERO) for row in self._left
        )
        back = self.algebra.zero()
        for c, b in zip(coeffs, self.basis):
            if c:
                back = back + b * c
        return coeffs if back == x else None

    def zcoords(self, x: AlgebraElement) -> tuple[int, ...] | None:
        """Integer coordinates on :attr:`zbasis`, or None when x is not in the order."""
        coeffs = self.solve(x)
        if coeffs is None or not all(c.in_ring(self.ring_tag) for c in coeffs):
            return None
        if self.ring_tag == "Z":
            return tuple(int(c.a) for c in coeffs)
        pairs = [c.as_ints() for c in coeffs]
        return tuple(p for p, _ in pairs) + tuple(q for _, q in pairs)

    def from_zcoords(self, c: Sequence[int]) -> AlgebraElement:
        d = self.algebra.dimension
        out = [ZERO] * d
        zc = self._zbasis_coords
        for ci, row in zip(c, zc):
            ci = int(ci)
            if ci:
                for k in range(d):
                    if row[k]:
                        out[k] = out[k] + row[k] * ci
        return AlgebraElement(tuple(out), self.algebra)

    @cached_property
    def _zbasis_coords(self):
        return [z.coords for z in self.zbasis]

    # -- integer description on the Z-basis --------------------------------
    @cached_property
    def polar_parts(self) -> tuple[np.ndarray, np.ndarray]:
        """Integer matrices G0, G1 with B(z_i, z_j) = G0[i, j] + phi * G1[i, j]."""
        n = self.z_rank
        g0 = np.zeros((n, n), dtype=np.int64)
        g1 = np.zeros((n, n), dtype=np.int64)
        for i, x in enumerate(self.zbasis):
            for j, y in enumerate(self.zbasis):
                a, b = polar(x, y).as_ints()
                g0[i, j] = a
                g1[i, j] = b
        return g0, g1

    @cached_property
    def trace_gram(self) -> np.ndarray:
        """Gram matrix of the sum of B over the real embeddings."""
        g0, g1 = self.polar_parts
        if self.ring_tag == "Z":
            return g0.copy()
        return 2 * g0 + g1

    @cached_property
    def mult_tensor(self) -> np.ndarray:
        n = self.z_rank
        t = np.zeros((n, n, n), dtype=np.int64)
        for i, x in enumerate(self.zbasis):
            for j, y in enumerate(self.zbasis):
                c = self.zcoords(mul(x, y))
                if c is None:
                    raise OrderInvariantError(f"{self.name}: basis product z{i}*z{j} leaves the order")
                t[i, j] = c
        return t

    @cached_property
    def conj_matrix(self) -> np.ndarray:
        """Row i holds the Z-coordinates of conj(z_i)."""
        rows = []
        for z in self.zbasis:
            c = self.zcoords(conj(z))
            if c is None:
                raise OrderInvariantError(f"{self.name}: not stable under conjugation")
            rows.append(c)
        return np.array(rows, dtype=np.int64)

    @cached_property
    def phi_matrix(self) -> np.ndarray:
        """Row i holds the Z-coordinates of phi * z_i (identity pattern unused for Z-orders)."""
        if self.ring_tag == "Z":
            return np.zeros((self.z_rank, self.z_rank), dtype=np.int64)
        return np.array([self.zcoords(PHI * z) for z in self.zbasis], dtype=np.int64)

    def zmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Products of Z-coordinate vectors; broadcasts over leading axes."""
        return np.einsum("...i,...j,ijk->...k", x, y, self.mult_tensor, optimize=True)

    def znorm(self, c: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Norm of Z-coordinate rows as integer pairs (a, b), value a + b*phi."""
        g0, g1 = self.polar_parts
        c = np.asarray(c, dtype=np.int64)
        q0 = np.einsum("...i,ij,...j->...", c, g0, c)
        q1 = np.einsum("...i,ij,...j->...", c, g1, c)
        return q0 // 2, q1 // 2

    def fingerprint(self) -> list:
        """Serialized basis, recorded in certificates."""
        return [b.serialize() for b in self.basis]


def _det(m) -> GoldenScalar:
    m = [list(r) for r in m]
    n = len(m)
    det = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def gram(order: Order) -> tuple[tuple[GoldenScalar, ...], ...]:
    return order.gram


def gram_determinant(order: Order) -> GoldenScalar:
    return _det(order.gram)


def contains(order: Order, x: AlgebraElement) -> Membership:
    coeffs = order.solve(x)
    if coeffs is None or not all(c.in_ring(order.ring_tag) for c in coeffs):
        return Membership(False, None)
    return Membership(True, coeffs)


def verify_order_axioms(order: Order) -> dict[str, object]:
    basis = order.basis
    unit = contains(order, order.algebra.one()).found
    conj_ok = all(contains(order, conj(b)).found for b in basis)
    products = [contains(order, mul(x, y)).found for x in basis for y in basis]
    norms_ok = all(norm(b).in_ring(order.ring_tag) for b in basis)
    polar_ok = all(g.in_ring(order.ring_tag) for row in order.gram for g in row)
    return {
        "unit": unit,
        "conjugation_stable": conj_ok,
        "multiplicative_closure": all(products),
        "product_checks": len(products),
        "norms_in_ring": norms_ok,
        "polar_in_ring": polar_ok,
        "pass": unit and conj_ok and all(products) and norms_ok and polar_ok,
    }


# -- the builtin orders ------------------------------------------------------

HALF = Fraction(1, 2)

# Coxeter-Dickson order: Z^8 + (1/2)C for the doubly-even code C below, one of
# the seven such codes whose lattice is closed under the Fano-triple product.
# Weight-4 words through coordinate 0; the rest are their complements.
CD_CODE_WORDS_THROUGH_0 = (
    (0, 1, 2, 4), (0, 1, 3, 5), (0, 1, 6, 7), (0, 2, 3, 6), (0, 2, 5, 7), (0, 3, 4, 7), (0, 4, 5, 6),
)
# Z-basis: a simple system of the 240 unit elements (Gram = E8 Cartan matrix).
CD_BASIS = (
    (0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, -HALF, -HALF, -HALF, HALF, 0, 0),
    (0, 0, 1, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, 0, 0, 0),
    (HALF, 0, 0, 0, -HALF, -HALF, -HALF, 0),
    (0, -HALF, -HALF, 0, 0, -HALF, HALF, 0),
    (0, 0, 0, 0, 1, 0, 0, 0),
    (-HALF, -HALF, 0, 0, 0, 0, -HALF, -HALF),
)


def _unit_vectors(a: AlgebraSpec, n: int | None = None) -> list[AlgebraElement]:
    return [a.basis_element(i) for i in range(n or a.dimension)]


def _make(name: str) -> Order:
    H, O = alg.H, alg.O
    h = Fraction(1, 2)
    if name == "Z":
        return Order("Z", "Z", alg.R, [alg.R.one()], title="Z")
    if name == "gaussian":
        return Order(name, "Z", alg.C, _unit_vectors(alg.C), title="Z[i] Gaussian")
    if name == "eisenstein":
        omega = alg.CEIS.element([-h, 1])
        return Order(name, "Z", alg.CEIS, [alg.CEIS.one(), omega], title="Z[omega] Eisenstein")
    if name == "cyclotomic10":
        g = alg.CGOLDEN
        zeta = g.element([PHI / 2, 1])
        powers = [g.one(), zeta, mul(zeta, zeta), mul(mul(zeta, zeta), zeta)]
        return Order(
            name, "Zphi", g, [g.one(), zeta], title="Z[zeta10] cyclotomic", display_basis=powers
        )
    if name == "hamilton":
        return Order(name, "Z", H, _unit_vectors(H), title="Hamilton")
    if name == "hurwitz":
        return Order(
            name, "Z", H,
            [H.one(), H.basis_element(1), H.basis_element(2), H.element([h, h, h, h])],
            title="Hurwitz",
        )
    if name == "icosian":
        return Order(
            name, "Zphi", H,
            [
                H.one(),
                H.basis_element(1),
                H.element([h, h, h, h]),
                H.element([-h, (PHI - 1) / 2, -PHI / 2, 0]),
            ],
            title="Icosian",
        )
    if name == "cayley_graves":
        return Order(name, "Z", O, _unit_vectors(O), title="Cayley-Graves")
    if name == "coxeter_dickson":
        return Order(name, "Z", O, [O.element(v) for v in CD_BASIS], title="Coxeter-Dickson")
    if name == "hybrid_2a2":
        q = alg.HEIS
        return Order(
            name, "Z", q,
            [q.one(), q.element([-h, 1, 0, 0]), q.basis_element(2), q.element([0, 0, -h, 1])],
            title="2A2 hybrid (Z[omega] + Z[omega]j)", hybrid=True,
        )
    if name == "hybrid_2d4":
        hw = [O.one(), O.basis_element(1), O.basis_element(2), O.element([h, h, h, h, 0, 0, 0, 0])]
        ell = O.basis_element(4)
        return Order(
            name, "Z", O, hw + [mul(x, ell) for x in hw],
            title="2D4 hybrid (Hurwitz + Hurwitz e4)", hybrid=True,
        )
    raise UnknownOrderError(name)


TABLE1_ORDERS = (
    "Z", "gaussian", "eisenstein", "hamilton", "hurwitz",
    "cayley_graves", "coxeter_dickson", "cyclotomic10", "icosian",
)
HYBRID_ORDERS = ("hybrid_2a2", "hybrid_2d4")
BUILTIN_NAMES = TABLE1_ORDERS + HYBRID_ORDERS

_CACHE: dict[str, Order] = {}


def builtin(name: str) -> Order:
    if name not in BUILTIN_NAMES:
        raise UnknownOrderError(f"unknown order {name!r}; known: {', '.join(BUILTIN_NAMES)}")
    if name not in _CACHE:
        _CACHE[name] = _make(name)
    return _CACHE[name]


def gram_det_totally_positive(order: Order) -> bool:
    return is_totally_positive(gram_determinant(order))
