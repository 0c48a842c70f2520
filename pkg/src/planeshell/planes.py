"""The integral plane O + O with Q(x, y) = N(x) + N(y): axis, level and balanced
shells, the no-splitting comparison, doubling labels and vertex-level hull facts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraElement, AlgebraMismatchError, norm, polar
from .canonical import digest
from .golden import ONE, GoldenScalar, is_totally_nonneg
from .lattice import short_vectors
from .orders import Order
from .rootshell import VectorSystem, compose_label, decompose, identify, rank_of
from .shells import ShellLevelError, trace_target, unit_shell


class PlaneElement:
    __slots__ = ("x", "y")

    def __init__(self, x: AlgebraElement, y: AlgebraElement) -> None:
        if x.algebra is not y.algebra:
            raise AlgebraMismatchError(f"plane components in {x.algebra.name} and {y.algebra.name}")
        self.x = x
        self.y = y

    @property
    def algebra(self):
        return self.x.algebra

    @property
    def coords(self) -> tuple[GoldenScalar, ...]:
        return self.x.coords + self.y.coords

    def q(self) -> GoldenScalar:
        return norm(self.x) + norm(self.y)

    def polar(self, other: PlaneElement) -> GoldenScalar:
        return polar(self.x, other.x) + polar(self.y, other.y)

    def swap(self) -> PlaneElement:
        return PlaneElement(self.y, self.x)

    def key(self) -> tuple[str, ...]:
        return self.x.key() + self.y.key()

    def serialize(self) -> list:
        return [self.x.serialize(), self.y.serialize()]

    def __add__(self, other: PlaneElement) -> PlaneElement:
        return PlaneElement(self.x + other.x, self.y + other.y)

    def __sub__(self, other: PlaneElement) -> PlaneElement:
        return PlaneElement(self.x - other.x, self.y - other.y)

    def __neg__(self) -> PlaneElement:
        return PlaneElement(-self.x, -self.y)

    def __mul__(self, s) -> PlaneElement:
        s = GoldenScalar.coerce(s)
        return PlaneElement(self.x * s, self.y * s)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneElement) and self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __repr__(self) -> str:
        return f"PlaneElement({self.x!r}, {self.y!r})"


def plane_q(p: PlaneElement) -> GoldenScalar:
    return p.q()


SCALE_TAGS = ("unit", "inv_sqrt2")


@dataclass(frozen=True, eq=False)
class PlaneShell:
    """Plane vectors at one Q level.

    ``inv_sqrt2`` marks stored pairs as unscaled representatives of the points
    p/sqrt2; the scaling is never applied to coordinates.
    """

    order: Order
    level: GoldenScalar
    zcoords: np.ndarray = field(repr=False)
    scale_tag: str = "unit"
    name: str = ""

    def __post_init__(self) -> None:
        if self.scale_tag not in SCALE_TAGS:
            raise ValueError(f"unknown scale tag {self.scale_tag!r}")

    def __len__(self) -> int:
        return self.zcoords.shape[0]

    @property
    def elements(self) -> tuple[PlaneElement, ...]:
        n = self.order.z_rank
        f = self.order.from_zcoords
        return tuple(PlaneElement(f(r[:n]), f(r[n:])) for r in self.zcoords.tolist())

    def key_set(self) -> set[tuple[int, ...]]:
        return {tuple(r) for r in self.zcoords.tolist()}

    def q_values(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.order.z_rank
        a0, a1 = self.order.znorm(self.zcoords[:, :n])
        b0, b1 = self.order.znorm(self.zcoords[:, n:])
        return a0 + b0, a1 + b1

    def as_system(self) -> VectorSystem:
        g0, g1 = plane_polar_parts(self.order)
        pm = _block(self.order.phi_matrix)
        return VectorSystem(self.zcoords, g0, g1, pm, self.order.ring_tag, self.elements, self.name)

    def digest(self) -> str:
        return digest([p.serialize() for p in self.elements])


def _block(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=m.dtype)
    out[:n, :n] = m
    out[n:, n:] = m
    return out


def plane_polar_parts(order: Order) -> tuple[np.ndarray, np.ndarray]:
    g0, g1 = order.polar_parts
    return _block(g0), _block(g1)


def plane_basis(order: Order) -> list[PlaneElement]:
    zero = order.algebra.zero()
    return [PlaneElement(b, zero) for b in order.basis] + [PlaneElement(zero, b) for b in order.basis]


def plane_gram(order: Order) -> list[list[GoldenScalar]]:
    """Gram of B_Q on the concatenated basis; must be diag(G, G)."""
    basis = plane_basis(order)
    g = [[p.polar(q) for q in basis] for p in basis]
    r = order.rank
    base = order.gram
    for i in range(2 * r):
        for j in range(2 * r):
            expected = base[i % r][j % r] if (i < r) == (j < r) else GoldenScalar(0)
            if g[i][j] != expected:
                raise AssertionError(f"plane Gram entry ({i}, {j}) is {g[i][j]}, expected {expected}")
    return g


def _sort_rows(order: Order, rows: np.ndarray) -> np.ndarray:
    """Canonical order: by the serialized coordinates of (x, y)."""
    n = order.z_rank
    f = order.from_zcoords
    keyed = sorted(rows.tolist(), key=lambda r: f(r[:n]).key() + f(r[n:]).key())
    return np.array(keyed, dtype=np.int64).reshape(len(keyed), 2 * n)


def axis_shell(order: Order) -> PlaneShell:
    u = unit_shell(order).zcoords
    z = np.zeros_like(u)
    rows = np.vstack([np.hstack([u, z]), np.hstack([z, u])])
    return PlaneShell(order, ONE, _sort_rows(order, rows), "unit", f"{order.name}-axis")


def enumerate_plane_shell(order: Order, level: GoldenScalar | int = 1, *, workers: int = 1) -> PlaneShell:
    """Full Q-level set by short-vector search on the rank-2n plane trace form."""
    level = GoldenScalar.coerce(level)
    if not is_totally_nonneg(level) or (order.ring_tag == "Z" and not level.is_rational()):
        raise ShellLevelError(f"plane level {level} is not totally nonnegative in {order.ring_tag}")
    n = order.z_rank
    if not level.in_ring(order.ring_tag):
        return PlaneShell(order, level, np.zeros((0, 2 * n), dtype=np.int64), "unit")
    t = _block(order.trace_gram)
    cands = short_vectors(t, trace_target(order, level), workers=workers)
    arr = np.array(cands, dtype=np.int64).reshape(len(cands), 2 * n)
    shell = PlaneShell(order, level, arr, "unit")
    q0, q1 = shell.q_values()
    a, b = level.as_ints()
    keep = (q0 == a) & (q1 == b)
    return PlaneShell(order, level, _sort_rows(order, arr[keep]), "unit", f"{order.name}-plane")


def no_splitting_check(order: Order, *, workers: int = 1) -> bool:
    full = enumerate_plane_shell(order, 1, workers=workers)
    axis = axis_shell(order)
    return len(full) == len(axis) and np.array_equal(full.zcoords, axis.zcoords)


@dataclass
class DoublingReport:
    label: str
    cardinality: int
    components: list[tuple[int, int, str]]
    unit_label: str
    factors_match: bool

    @property
    def passed(self) -> bool:
        return self.factors_match


def doubling_report(order: Order) -> DoublingReport:
    """Decomposes the axis shell and checks each factor reproduces the unit-shell type.

    The unit shell may itself split (e.g. 4A1 for Hamilton), so the axis shell has
    twice its component count; what must hold is that components are confined to
    one factor, each factor's union is exactly S1, and the type multiset doubles.
    """
    u = unit_shell(order)
    unit_types = [identify(c) for c in decompose(u)]
    axis = axis_shell(order)
    comps = decompose(axis)
    n = order.z_rank
    uset = {tuple(r) for r in u.zcoords.tolist()}
    factor_rows: dict[int, set] = {0: set(), 1: set()}
    confined = True
    labels = []
    for c in comps:
        rows = c.vectors
        left = np.any(rows[:, :n] != 0, axis=1)
        right = np.any(rows[:, n:] != 0, axis=1)
        if (left & right).any() or (left.any() and right.any()):
            confined = False
            continue
        side = 0 if left.any() else 1
        part = rows[:, :n] if side == 0 else rows[:, n:]
        factor_rows[side] |= {tuple(r) for r in part.tolist()}
        labels.append((rank_of(c), len(c), identify(c)))
    types = [t for _, _, t in labels]
    factors_match = (
        confined
        and factor_rows[0] == uset
        and factor_rows[1] == uset
        and sorted(types) == sorted(unit_types * 2)
        and "unknown" not in types
    )
    return DoublingReport(compose_label(types), len(axis), labels, compose_label(unit_types), factors_match)


def balanced_shell(order: Order) -> PlaneShell:
    """All pairs (u, v) of unit-shell elements, stored unscaled at Q = 2."""
    u = unit_shell(order).zcoords
    k, n = u.shape
    rows = np.empty((k * k, 2 * n), dtype=np.int64)
    rows[:, :n] = np.repeat(u, k, axis=0)
    rows[:, n:] = np.tile(u, (k, 1))
    # u is canonically sorted, so the product order is already canonical
    return PlaneShell(order, GoldenScalar(2), rows, "inv_sqrt2", f"{order.name}-balanced")


@dataclass
class HullReport:
    vertices: int
    single_level: bool
    level: GoldenScalar
    expected_vertices: int | None
    vertex_count_ok: bool

    @property
    def passed(self) -> bool:
        return self.single_level and self.vertex_count_ok


def hull_vertex_checks(shell: PlaneShell) -> HullReport:
    """Single-sphere membership and the free-sum / product vertex counts."""
    q0, q1 = shell.q_values()
    a, b = shell.level.as_ints()
    single = bool(len(shell)) and bool(np.all(q0 == a) and np.all(q1 == b))
    s1 = len(unit_shell(shell.order))
    if shell.scale_tag == "inv_sqrt2":
        expected = s1 * s1
    elif shell.level == ONE:
        expected = 2 * s1
    else:
        expected = None
    ok = expected is None or expected == len(shell)
    # Q(p / sqrt2) = Q(p) / 2 stays exact even though the scaling is symbolic
    level = shell.level / 2 if shell.scale_tag == "inv_sqrt2" else shell.level
    return HullReport(len(shell), single, level, expected, ok)


def swap_check(shell: PlaneShell) -> bool:
    n = shell.order.z_rank
    rows = shell.zcoords
    swapped = np.hstack([rows[:, n:], rows[:, :n]])
    return {tuple(r) for r in swapped.tolist()} == shell.key_set()


def sub_shell(shell: PlaneShell, side: int) -> PlaneShell:
    """The part of the shell supported on one factor only."""
    n = shell.order.z_rank
    other = shell.zcoords[:, n:] if side == 0 else shell.zcoords[:, :n]
    keep = ~np.any(other != 0, axis=1)
    return PlaneShell(shell.order, shell.level, shell.zcoords[keep], shell.scale_tag, shell.name)
