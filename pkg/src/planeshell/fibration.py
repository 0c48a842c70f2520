"""The algebraic Hopf map h(a, b) = (2 a conj(b), N(a) - N(b)), its restriction to
balanced shells, and fiber counting for pi(u, v) = u conj(v) on a unit shell.

Bulk sweeps run on an index multiplication table of the unit shell built from
integer Z-coordinates; a seeded sample of products is re-done with exact
algebra multiplication to tie the table to the algebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .algebra import AlgebraElement, AlgebraMismatchError, AlgebraSpec, conj, mul, norm
from .golden import GoldenScalar
from .orders import Order
from .rootshell import _RowIndex
from .shells import Shell, unit_shell

MOUFANG_SAMPLES = 10_000
EXHAUSTIVE_TRIPLE_LIMIT = 24
DEFAULT_SEED = 20240601


@dataclass(frozen=True, eq=False)
class HopfImagePoint:
    first: AlgebraElement
    second: GoldenScalar
    total: GoldenScalar = field(repr=False)

    def __post_init__(self) -> None:
        if norm(self.first) + self.second * self.second != self.total * self.total:
            raise ArithmeticError("Hopf norm identity fails for this point")


def hopf(a: AlgebraElement, b: AlgebraElement) -> HopfImagePoint:
    if a.algebra is not b.algebra:
        raise AlgebraMismatchError(f"hopf over {a.algebra.name} and {b.algebra.name}")
    na, nb = norm(a), norm(b)
    return HopfImagePoint(mul(a * 2, conj(b)), na - nb, na + nb)


def norm_identity_check(a: AlgebraElement, b: AlgebraElement) -> bool:
    na, nb = norm(a), norm(b)
    lhs = norm(mul(a * 2, conj(b))) + (na - nb) * (na - nb)
    return lhs == (na + nb) * (na + nb)


def random_element(algebra: AlgebraSpec, rng: random.Random, golden: bool = False, size: int = 6) -> AlgebraElement:
    def scalar():
        a = Fraction(rng.randint(-size, size), rng.randint(1, size))
        b = Fraction(rng.randint(-size, size), rng.randint(1, size)) if golden else 0
        return GoldenScalar(a, b)

    return algebra.element([scalar() for _ in range(algebra.dimension)])


def random_norm_identity_sweep(algebra: AlgebraSpec, samples: int = 1000, seed: int = DEFAULT_SEED) -> int:
    """Number of failures of the Hopf norm identity on random exact pairs."""
    rng = random.Random(f"{seed}:{algebra.name}")
    failures = 0
    for i in range(samples):
        golden = i % 2 == 1
        a = random_element(algebra, rng, golden)
        b = random_element(algebra, rng, golden)
        failures += not norm_identity_check(a, b)
    return failures


# -- the unit shell as an indexed loop --------------------------------------------


class UnitLoop:
    """Index tables for a unit shell: products, conjugates and the unit."""

    def __init__(self, shell: Shell) -> None:
        self.shell = shell
        self.order: Order = shell.order
        self.z = shell.zcoords
        self.size = len(shell)
        self._index = _RowIndex(self.z)

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        return self._index.lookup(rows)

    @cached_property
    def table(self) -> np.ndarray:
        """table[i, j] = index of u_i u_j, or -1 when the product leaves the shell."""
        prods = self.order.zmul(self.z[:, None, :], self.z[None, :, :])
        return self.lookup(prods)

    @cached_property
    def conj_index(self) -> np.ndarray:
        return self.lookup(self.z @ self.order.conj_matrix)

    @cached_property
    def one(self) -> int:
        c = self.order.zcoords(self.order.algebra.one())
        if c is None:
            return -1
        return int(self.lookup(np.array([c], dtype=np.int64))[0])

    @property
    def closed(self) -> bool:
        return bool(np.all(self.table >= 0)) and bool(np.all(self.conj_index >= 0))

    def pi(self) -> np.ndarray:
        """pi[i, j] = index of u_i conj(u_j)."""
        return self.table[:, self.conj_index]

    def exact_agreement(self, samples: int | None = None, seed: int = DEFAULT_SEED) -> int:
        """Number of sampled (or all) pairs where the table disagrees with exact mul."""
        k = self.size
        u = self.shell.elements
        if samples is None or samples >= k * k:
            pairs = [(i, j) for i in range(k) for j in range(k)]
        else:
            rng = random.Random(f"{seed}:{self.order.name}:table")
            pairs = [(rng.randrange(k), rng.randrange(k)) for _ in range(samples)]
        bad = 0
        for i, j in pairs:
            t = int(self.table[i, j])
            if t < 0 or mul(u[i], u[j]) != u[t]:
                bad += 1
        return bad


_LOOPS: dict[str, UnitLoop] = {}


def unit_loop(order: Order) -> UnitLoop:
    loop = _LOOPS.get(order.name)
    if loop is None or loop.order is not order:
        loop = UnitLoop(unit_shell(order))
        _LOOPS[order.name] = loop
    return loop


# -- equator restriction and fibers ------------------------------------------------


@dataclass
class EquatorReport:
    pairs: int
    second_failures: int
    first_failures: int
    image_size: int
    image_is_shell: bool

    @property
    def passed(self) -> bool:
        return self.second_failures == 0 and self.first_failures == 0


def equator_restriction(order: Order) -> EquatorReport:
    """Checks h on (u/sqrt2, v/sqrt2) for every pair of units, on unscaled representatives.

    Second coordinate: N(u)/2 - N(v)/2, zero since both norms are 1.
    First coordinate: 2 (u/sqrt2) conj(v/sqrt2) = u conj(v), which must lie in U.
    """
    loop = unit_loop(order)
    k = loop.size
    n0, n1 = order.znorm(loop.z)
    unit = (n0 == 1) & (n1 == 0)
    # N(u) - N(v) over all pairs, from the per-element norms
    d0 = n0[:, None] - n0[None, :]
    d1 = n1[:, None] - n1[None, :]
    second_failures = int(np.count_nonzero((d0 != 0) | (d1 != 0))) + int(k * np.count_nonzero(~unit))
    products = order.zmul(loop.z[:, None, :], (loop.z @ order.conj_matrix)[None, :, :])
    idx = loop.lookup(products)
    first_failures = int(np.count_nonzero(idx < 0))
    image = np.unique(idx[idx >= 0])
    return EquatorReport(k * k, second_failures, first_failures, int(image.size), int(image.size) == k)


@dataclass
class FibrationProfile:
    base: list[int]
    multiplicity: dict[int, int]
    constant: bool
    structural_failures: int
    shell_size: int

    @property
    def fiber_size(self) -> int | None:
        sizes = set(self.multiplicity.values())
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def passed(self) -> bool:
        return (
            self.structural_failures == 0
            and self.constant
            and len(self.base) == self.shell_size
            and sum(self.multiplicity.values()) == self.shell_size**2
        )


def fibration_profile(order: Order) -> FibrationProfile:
    """Fiber sizes of pi(u, v) = u conj(v), which equals u v^-1 on the unit shell."""
    loop = unit_loop(order)
    k = loop.size
    conj_ok = loop.conj_index >= 0
    if not conj_ok.all():
        return FibrationProfile([], {}, False, int(np.count_nonzero(~conj_ok)) * k, k)
    pi = loop.pi()
    bad = int(np.count_nonzero(pi < 0))
    counts = np.bincount(pi[pi >= 0].ravel(), minlength=k)
    base = [int(i) for i in np.flatnonzero(counts)]
    mult = {i: int(counts[i]) for i in base}
    constant = bad == 0 and all(c == k for c in mult.values())
    return FibrationProfile(base, mult, constant, bad, k)


# -- loop identities --------------------------------------------------------------


@dataclass
class LoopReport:
    size: int
    closure: bool
    has_one: bool
    inverse_property: bool
    moufang: bool
    moufang_triples: int
    moufang_exhaustive: bool
    artin: bool
    section: bool
    fiber_membership: bool
    right_invariance: bool | None
    table_mismatches: int
    pairs_checked: int

    @property
    def passed(self) -> bool:
        return (
            self.closure
            and self.has_one
            and self.inverse_property
            and self.moufang
            and self.artin
            and self.section
            and self.fiber_membership
            and self.right_invariance is not False
            and self.table_mismatches == 0
        )


def _moufang_holds(t: np.ndarray, u: np.ndarray, v: np.ndarray, w: np.ndarray) -> bool:
    # ((uv)u)w == u(v(uw))
    lhs = t[t[t[u, v], u], w]
    rhs = t[u, t[v, t[u, w]]]
    return bool(np.array_equal(lhs, rhs))


def loop_checks(
    order: Order,
    *,
    exhaustive: bool = False,
    samples: int = MOUFANG_SAMPLES,
    seed: int = DEFAULT_SEED,
) -> LoopReport:
    loop = unit_loop(order)
    k = loop.size
    closure = loop.closed
    one = loop.one
    has_one = one >= 0
    pairs = k * k
    if not closure:
        return LoopReport(k, False, has_one, False, False, 0, False, False, False, False, None, 0, pairs)
    t = loop.table
    inv = loop.conj_index
    w = np.repeat(np.arange(k), k)
    v = np.tile(np.arange(k), k)
    inverse_property = bool(np.all(t[t[w, v], inv[v]] == w) and np.all(t[inv[v], t[v, w]] == w))
    artin = bool(np.all(t[t[w, inv[v]], v] == w))
    pi = loop.pi()
    section = has_one and bool(np.all(pi[np.arange(k), one] == np.arange(k)))
    fiber_membership = bool(np.all(pi[t[w, v], v] == w))

    full = exhaustive or k <= EXHAUSTIVE_TRIPLE_LIMIT
    moufang = True
    if full:
        triples = k**3
        for a in range(k):
            ua = np.full(pairs, a)
            if not _moufang_holds(t, ua, w, v):
                moufang = False
                break
    else:
        triples = samples
        rng = np.random.default_rng(seed)
        u3 = rng.integers(0, k, size=(3, samples))
        moufang = _moufang_holds(t, u3[0], u3[1], u3[2])

    right = None
    if order.algebra.associative:
        # pi(ug, vg) = pi(u, v); exhaustive on small shells, sampled on large ones
        if k <= EXHAUSTIVE_TRIPLE_LIMIT:
            g_all = np.arange(k)
            right = all(np.array_equal(pi[t[w, g], t[v, g]], pi[w, v]) for g in g_all)
        else:
            rng = np.random.default_rng(seed + 1)
            uu, vv, gg = rng.integers(0, k, size=(3, samples))
            right = bool(np.array_equal(pi[t[uu, gg], t[vv, gg]], pi[uu, vv]))

    mismatches = loop.exact_agreement(None if k <= EXHAUSTIVE_TRIPLE_LIMIT else 500, seed)
    return LoopReport(
        size=k,
        closure=closure,
        has_one=has_one,
        inverse_property=inverse_property,
        moufang=moufang,
        moufang_triples=triples,
        moufang_exhaustive=full,
        artin=artin,
        section=section,
        fiber_membership=fiber_membership,
        right_invariance=right,
        table_mismatches=mismatches,
        pairs_checked=pairs,
    )


def balanced_norm_identity_failures(order: Order) -> int:
    """Exact Hopf norm identity on every pair of the balanced shell."""
    u = unit_shell(order).elements
    return sum(not norm_identity_check(a, b) for a in u for b in u)
