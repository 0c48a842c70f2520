"""Norm shells S_m(O) = {x in O : N(x) = m} by exact short-vector search.

A Z[phi]-order is not discrete in its algebra, so the search runs on the trace
form T = sigma1(B) + sigma2(B) over the Z-basis, which is positive definite.
``N(x) = m`` forces ``c^T T c = 2 Tr(m)``; the trace-level candidates are then
filtered by the exact norm in the ring.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import AlgebraElement, norm
from .canonical import digest
from .golden import ONE, GoldenScalar, is_totally_nonneg, sign_exact, trace
from .lattice import IndefiniteFormError, leading_minors_positive, rational_inverse, short_vectors
from .orders import Order


class ShellLevelError(ValueError):
    pass


class ShellInvariantError(ValueError):
    pass


@dataclass(frozen=True)
class TraceForm:
    matrix: np.ndarray

    @property
    def rank(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True, eq=False)
class Shell:
    order: Order
    level: GoldenScalar
    elements: tuple[AlgebraElement, ...]
    zcoords: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self) -> dict[tuple[int, ...], int]:
        """Map from Z-coordinate tuples to positions in the canonical order."""
        return {tuple(int(v) for v in row): i for i, row in enumerate(self.zcoords)}

    def digest(self) -> str:
        return digest([e.serialize() for e in self.elements])


def trace_form(order: Order) -> TraceForm:
    t = order.trace_gram
    if not leading_minors_positive(t.tolist()):
        raise IndefiniteFormError(f"{order.name}: trace form is not positive definite")
    return TraceForm(t)


def trace_target(order: Order, m: GoldenScalar) -> Fraction:
    """Value of c^T T c for any x of norm m."""
    if order.ring_tag == "Z":
        return 2 * m.a
    return 2 * trace(m)


def enumerate_shell(order: Order, m: GoldenScalar | int = 1, *, workers: int = 1) -> Shell:
    m = GoldenScalar.coerce(m)
    if not is_totally_nonneg(m) or (order.ring_tag == "Z" and not m.is_rational()):
        raise ShellLevelError(f"norm level {m} is not totally nonnegative in {order.ring_tag}")
    if not m.in_ring(order.ring_tag):
        return _make_shell(order, m, [])
    tf = trace_form(order)
    target = trace_target(order, m)
    cands = short_vectors(tf.matrix, target, workers=workers)
    if not cands:
        return _make_shell(order, m, [])
    arr = np.array(cands, dtype=np.int64)
    n0, n1 = order.znorm(arr)
    a, b = m.as_ints()
    keep = (n0 == a) & (n1 == b)
    return _make_shell(order, m, [cands[i] for i in np.flatnonzero(keep)])


def _make_shell(order: Order, m: GoldenScalar, coeffs: list[tuple[int, ...]]) -> Shell:
    elems = [order.from_zcoords(c) for c in coeffs]
    pairs = sorted(zip(elems, coeffs), key=lambda p: p[0].key())
    elems = [p[0] for p in pairs]
    z = np.array([p[1] for p in pairs], dtype=np.int64).reshape(len(pairs), order.z_rank)
    shell = Shell(order, m, tuple(elems), z)
    _check_shell(shell)
    return shell


def _check_shell(shell: Shell) -> None:
    keys = {e.key() for e in shell.elements}
    if len(keys) != len(shell.elements):
        raise ShellInvariantError("duplicate shell elements")
    for e in shell.elements:
        if norm(e) != shell.level:
            raise ShellInvariantError(f"{e!r} has norm {norm(e)}, expected {shell.level}")
        if (-e).key() not in keys:
            raise ShellInvariantError(f"shell not closed under negation at {e!r}")


def unit_shell(order: Order, *, workers: int = 1) -> Shell:
    cached = _UNIT_CACHE.get(order.name)
    if cached is None or cached.order is not order:
        cached = enumerate_shell(order, ONE, workers=workers)
        _UNIT_CACHE[order.name] = cached
    return cached


_UNIT_CACHE: dict[str, Shell] = {}


def display_coordinates(shell: Shell) -> list[tuple[GoldenScalar, ...]]:
    """Coordinates used for profiling: the order's display basis if it has one."""
    order = shell.order
    if order.display_basis is None:
        return [e.coords for e in shell.elements]
    p = [order.zcoords(b) for b in order.display_basis]
    if any(row is None for row in p):
        raise ShellInvariantError("display basis is not inside the order")
    pinv = rational_inverse(p)
    out = []
    for c in shell.zcoords:
        y = [sum((int(c[i]) * pinv[i][j] for i in range(len(c))), Fraction(0)) for j in range(len(pinv))]
        out.append(tuple(GoldenScalar(v) for v in y))
    return out


def _abs(x: GoldenScalar) -> GoldenScalar:
    return -x if sign_exact(x) < 0 else x


def coordinate_type(coords) -> tuple[GoldenScalar, ...]:
    """Sorted multiset of absolute coordinate values."""
    return tuple(sorted(_abs(c) for c in coords))


def shell_profile(shell: Shell) -> dict[tuple[GoldenScalar, ...], int]:
    """Counts of elements per coordinate type, keyed by the sorted absolute values."""
    counts = Counter(coordinate_type(c) for c in display_coordinates(shell))
    return dict(sorted(counts.items(), key=lambda kv: [c.field_string() for c in kv[0]]))
