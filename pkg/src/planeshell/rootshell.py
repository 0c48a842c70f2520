"""Root-shell axioms (R1)-(R4), decomposition, type identification, and the
finite scan behind the rank obstruction for golden root-shell systems.

Inner product convention: <x, y> = B(x, y)/2, so the Cartan coefficient
2<a, b>/<a, a> equals B(a, b)/N(a), which is B(a, b) on unit shells.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Sequence

import numpy as np

from .algebra import AlgebraElement, norm, polar
from .golden import PHI, GoldenScalar, sign_exact
from .shells import Shell


@dataclass(frozen=True, eq=False)
class VectorSystem:
    """A finite vector set on an integral Z-lattice with polar form G0 + phi*G1."""

    vectors: np.ndarray
    g0: np.ndarray
    g1: np.ndarray
    phi_matrix: np.ndarray
    ring_tag: str
    elements: tuple[Any, ...] = field(repr=False)
    name: str = ""

    def __len__(self) -> int:
        return len(self.elements)

    def subsystem(self, idx: Sequence[int], name: str = "") -> VectorSystem:
        idx = list(idx)
        return VectorSystem(
            self.vectors[idx], self.g0, self.g1, self.phi_matrix, self.ring_tag,
            tuple(self.elements[i] for i in idx), name or self.name,
        )

    def polar_tables(self) -> tuple[np.ndarray, np.ndarray]:
        x = self.vectors
        return x @ self.g0 @ x.T, x @ self.g1 @ x.T

    def norms(self) -> list[GoldenScalar]:
        p0, p1 = self.polar_tables()
        return [GoldenScalar(int(a), int(b)) / 2 for a, b in zip(np.diag(p0), np.diag(p1))]


def shell_system(shell: Shell) -> VectorSystem:
    o = shell.order
    g0, g1 = o.polar_parts
    return VectorSystem(shell.zcoords, g0, g1, o.phi_matrix, o.ring_tag, shell.elements, o.name)


def as_system(obj: Any) -> VectorSystem:
    if isinstance(obj, VectorSystem):
        return obj
    if isinstance(obj, Shell):
        return shell_system(obj)
    if hasattr(obj, "as_system"):
        return obj.as_system()
    raise TypeError(f"cannot read {type(obj).__name__} as a vector system")


# -- exact single-pair operations --------------------------------------------


def _inner2(x: Any, y: Any) -> GoldenScalar:
    """B(x, y): the algebra polar form or the plane form B_Q."""
    if isinstance(x, AlgebraElement):
        return polar(x, y)
    return x.polar(y)


def _norm(x: Any) -> GoldenScalar:
    return norm(x) if isinstance(x, AlgebraElement) else x.q()


def cartan(alpha: Any, beta: Any) -> GoldenScalar:
    """2<alpha, beta>/<alpha, alpha>."""
    n = _norm(alpha)
    if not n:
        raise ZeroDivisionError("Cartan coefficient against a zero vector")
    return _inner2(alpha, beta) / n


def reflect(alpha: Any, x: Any) -> Any:
    """r_alpha(x) = x - (2<x, alpha>/<alpha, alpha>) alpha."""
    n = _norm(alpha)
    if not n:
        raise ZeroDivisionError("reflection in a zero vector")
    return x - alpha * (_inner2(x, alpha) / n)


# -- row membership helpers ---------------------------------------------------


class _RowIndex:
    """Exact lookup of integer rows; packs rows into int64 keys when they fit."""

    def __init__(self, rows: np.ndarray) -> None:
        self.n = rows.shape[1]
        self.lo = int(rows.min()) if rows.size else 0
        self.hi = int(rows.max()) if rows.size else 0
        base = self.hi - self.lo + 1
        self.packed = base ** self.n < 2**62
        self.base = base
        if self.packed:
            keys = self._pack(rows)
            order = np.argsort(keys)
            self.keys = keys[order]
            self.pos = order
        else:
            self.table = {tuple(int(v) for v in r): i for i, r in enumerate(rows)}

    def _pack(self, rows: np.ndarray) -> np.ndarray:
        k = np.zeros(rows.shape[:-1], dtype=np.int64)
        for j in range(self.n):
            k = k * self.base + (rows[..., j] - self.lo)
        return k

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Index of each row, or -1 when absent."""
        shape = rows.shape[:-1]
        if not self.packed:
            flat = rows.reshape(-1, self.n)
            out = np.array([self.table.get(tuple(int(v) for v in r), -1) for r in flat], dtype=np.int64)
            return out.reshape(shape)
        inside = np.all((rows >= self.lo) & (rows <= self.hi), axis=-1)
        keys = self._pack(np.clip(rows, self.lo, self.hi))
        where = np.searchsorted(self.keys, keys)
        where = np.minimum(where, len(self.keys) - 1)
        hit = inside & (self.keys[where] == keys)
        return np.where(hit, self.pos[where], -1)


# -- R1-R4 --------------------------------------------------------------------


@dataclass
class RootShellReport:
    r1_central_symmetry: bool
    r2_single_sphere: bool
    r3_reflection_closed: bool
    r4_cartan_in_ring: bool
    cartan_value_set: list[GoldenScalar]
    rank: int
    components: list[tuple[int, int, str]]
    crystallographic: bool
    cardinality: int
    level: GoldenScalar | None
    reflections_checked: int

    @property
    def passed(self) -> bool:
        return (
            self.r1_central_symmetry
            and self.r2_single_sphere
            and self.r3_reflection_closed
            and self.r4_cartan_in_ring
        )

    @property
    def label(self) -> str:
        return compose_label([c[2] for c in self.components])


def _cartan_lookup(p0: np.ndarray, p1: np.ndarray, norms: list[GoldenScalar]):
    """Exact Cartan values B(a, x)/N(a) for every distinct (p0, p1, N(a)) combination."""
    table: dict[tuple[int, int, GoldenScalar], GoldenScalar] = {}
    k = p0.shape[0]
    for a in range(k):
        na = norms[a]
        pairs = set(zip(p0[a].tolist(), p1[a].tolist()))
        for u, v in pairs:
            key = (u, v, na)
            if key not in table:
                table[key] = GoldenScalar(u, v) / na
    return table


def verify_root_shell(shell: Any, ring_tag: str | None = None) -> RootShellReport:
    system = as_system(shell)
    ring = ring_tag or system.ring_tag
    x = system.vectors
    k = len(system)
    if k == 0:
        raise ValueError("empty shell")
    index = _RowIndex(x)
    r1 = bool(np.all(index.lookup(-x) >= 0))
    norms = system.norms()
    r2 = len(set(norms)) == 1 and all(sign_exact(n) > 0 for n in norms)
    # B(a, x) for all pairs; row a is the root, column x the target
    p0, p1 = system.polar_tables()
    table = _cartan_lookup(p0, p1, norms)
    values = sorted(set(table.values()))
    r4 = all(v.in_ring(ring) for v in values)
    # reflections: r_a(x) = x - c(a, x) a with c = c0 + c1 phi taken from the table
    c0 = np.zeros((k, k), dtype=np.int64)
    c1 = np.zeros((k, k), dtype=np.int64)
    integral = np.ones((k, k), dtype=bool)
    for a in range(k):
        na = norms[a]
        for j, (u, v) in enumerate(zip(p0[a].tolist(), p1[a].tolist())):
            c = table[(u, v, na)]
            if c.is_integral():
                c0[a, j], c1[a, j] = c.as_ints()
            else:
                integral[a, j] = False
    xphi = x @ system.phi_matrix
    r3 = bool(integral.all())
    if r3:
        for a in range(k):
            refl = x - c0[a][:, None] * x[a] - c1[a][:, None] * xphi[a]
            if np.any(index.lookup(refl) < 0):
                r3 = False
                break
    comps = decompose(system)
    labels = [(rank_of(c), len(c), identify(c)) for c in comps]
    return RootShellReport(
        r1_central_symmetry=r1,
        r2_single_sphere=r2,
        r3_reflection_closed=r3,
        r4_cartan_in_ring=r4,
        cartan_value_set=values,
        rank=rank_of(system),
        components=labels,
        crystallographic=all(v.in_ring("Z") for v in values),
        cardinality=k,
        level=norms[0] if r2 else None,
        reflections_checked=k * k,
    )


# -- rank, decomposition, identification ---------------------------------------


def _coords(e: Any) -> tuple[GoldenScalar, ...]:
    return e.coords


def rank_of(shell: Any) -> int:
    """Dimension of the Q(phi)-span (equal to the real span) of the vectors."""
    system = as_system(shell)
    basis: list[tuple[list[GoldenScalar], int]] = []
    for e in system.elements:
        row = list(_coords(e))
        for piv_row, piv in basis:
            f = row[piv]
            if f:
                row = [a - f * b for a, b in zip(row, piv_row)]
        piv = next((i for i, v in enumerate(row) if v), None)
        if piv is None:
            continue
        inv = row[piv].inverse()
        row = [v * inv for v in row]
        basis.append((row, piv))
    return len(basis)


def decompose(shell: Any) -> list[VectorSystem]:
    """Connected components of the non-orthogonality graph, in order of first element."""
    system = as_system(shell)
    p0, p1 = system.polar_tables()
    adj = (p0 != 0) | (p1 != 0)
    k = len(system)
    comp = np.full(k, -1, dtype=np.int64)
    out = []
    for start in range(k):
        if comp[start] >= 0:
            continue
        cid = len(out)
        frontier = np.zeros(k, dtype=bool)
        frontier[start] = True
        seen = frontier.copy()
        while frontier.any():
            nxt = adj[frontier].any(axis=0) & ~seen
            seen |= nxt
            frontier = nxt
        comp[seen] = cid
        out.append(system.subsystem(np.flatnonzero(seen), system.name))
    return out


def _dist(pairs) -> dict[GoldenScalar, int]:
    return {GoldenScalar.coerce(v): c for v, c in pairs}


P, Q = PHI, PHI - 1
# Per-root distribution of Cartan values 2<a, b>/<a, a> over all b in the system.
ROOT_TYPES: dict[str, tuple[int, int, dict[GoldenScalar, int]]] = {
    "A1": (1, 2, _dist([(2, 1), (-2, 1)])),
    "A2": (2, 6, _dist([(2, 1), (1, 2), (-1, 2), (-2, 1)])),
    "H2": (2, 10, _dist([(2, 1), (P, 2), (Q, 2), (-Q, 2), (-P, 2), (-2, 1)])),
    "A3": (3, 12, _dist([(2, 1), (1, 4), (0, 2), (-1, 4), (-2, 1)])),
    "H3": (3, 30, _dist([(2, 1), (P, 4), (1, 4), (Q, 4), (0, 4), (-Q, 4), (-1, 4), (-P, 4), (-2, 1)])),
    "D4": (4, 24, _dist([(2, 1), (1, 8), (0, 6), (-1, 8), (-2, 1)])),
    "H4": (4, 120, _dist([(2, 1), (P, 12), (1, 20), (Q, 12), (0, 30), (-Q, 12), (-1, 20), (-P, 12), (-2, 1)])),
    "E8": (8, 240, _dist([(2, 1), (1, 56), (0, 126), (-1, 56), (-2, 1)])),
}
NON_CRYSTALLOGRAPHIC = {"H2", "H3", "H4"}


def cartan_distributions(shell: Any) -> list[dict[GoldenScalar, int]]:
    system = as_system(shell)
    p0, p1 = system.polar_tables()
    norms = system.norms()
    out = []
    for a in range(len(system)):
        cnt = Counter(zip(p0[a].tolist(), p1[a].tolist()))
        out.append({GoldenScalar(u, v) / norms[a]: c for (u, v), c in cnt.items()})
    return out


def identify(component: Any) -> str:
    """Type label by (rank, cardinality), confirmed by every root's Cartan distribution."""
    system = as_system(component)
    key = (rank_of(system), len(system))
    for name, (rank, card, dist) in ROOT_TYPES.items():
        if (rank, card) == key:
            if all(d == dist for d in cartan_distributions(system)):
                return name
            return "unknown"
    return "unknown"


def compose_label(types: Sequence[str]) -> str:
    """'A1' x n -> 'nA1'; other types joined by the direct-sum sign."""
    counts = Counter(types)
    parts = []
    for t in sorted(counts, key=lambda t: (t != "A1", t)):
        n = counts[t]
        if t == "A1":
            parts.append("A1" if n == 1 else f"{n}A1")
        else:
            parts.extend([t] * n)
    return "⊕".join(parts)


# -- rank obstruction --------------------------------------------------------


def totient_table(limit: int) -> list[int]:
    """Euler's totient for 0..limit by a sieve."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for q in range(p, limit + 1, p):
                phi[q] -= phi[q] // p
    return phi


@lru_cache(maxsize=None)
def _totients(limit: int) -> tuple[int, ...]:
    return tuple(totient_table(limit))


def totient(n: int) -> int:
    limit = 1 << max(10, n.bit_length())
    return _totients(limit)[n]


def _dickson(m: int, y: GoldenScalar) -> GoldenScalar:
    """D_m(y) with D_m(2cos t) = 2cos(mt)."""
    prev, cur = GoldenScalar(2), y
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, y * cur - prev
    return cur


def two_cos_pi_over(m: int) -> GoldenScalar | None:
    """2cos(pi/m) as an element of Z[phi], or None when it lies outside Q(sqrt5)."""
    import math

    deg = totient(2 * m) // 2 if m >= 2 else 1
    x = 2 * math.cos(math.pi / m)
    if deg > 2:
        return None
    if deg == 1:
        cand = GoldenScalar(round(x))
    else:
        xc = None
        for k in range(3, 2 * m, 2):
            if math.gcd(k, 2 * m) == 1:
                xc = 2 * math.cos(k * math.pi / m)
                break
        b = round((x - xc) / math.sqrt(5))
        a = round(x - b * (1 + math.sqrt(5)) / 2)
        cand = GoldenScalar(a, b)
    # exact: cand is a root of D_m(y) + 2 and numerically the largest one
    if _dickson(m, cand) != -2 or abs(float(cand) - x) > 1e-9:
        return None
    return cand


@dataclass(frozen=True)
class DihedralVerdict:
    m: int
    admissible: bool
    crystallographic: bool
    cartan_value: GoldenScalar | None


def dihedral_admissible(m: int) -> DihedralVerdict:
    if m < 3:
        raise ValueError("dihedral scan starts at m = 3")
    ok = totient(2 * m) <= 4
    cryst = m in (3, 4, 6)
    value = two_cos_pi_over(m) if ok else None
    return DihedralVerdict(m, ok, cryst, value)


# Single-length irreducible finite reflection groups that are not crystallographic.
SINGLE_LENGTH_NONCRYSTALLOGRAPHIC = ("I2(m), m >= 5, m != 6", "H3", "H4")


def h3_subsystem(icosian_shell: Shell) -> VectorSystem:
    """Pure-imaginary unit icosians: the roots orthogonal to 1."""
    system = shell_system(icosian_shell)
    one = icosian_shell.order.algebra.one()
    idx = [i for i, e in enumerate(icosian_shell.elements) if not polar(e, one)]
    return system.subsystem(idx, "icosian-H3")


def rank_obstruction_scan(max_m: int, icosian_shell: Shell | None = None) -> dict[str, Any]:
    if max_m < 6:
        raise ValueError("max_m must be at least 6")
    verdicts = [dihedral_admissible(m) for m in range(3, max_m + 1)]
    admissible = [v for v in verdicts if v.admissible]
    golden = [v for v in admissible if not v.crystallographic]
    dihedral_ok = [v.m for v in golden if v.cartan_value is not None and v.cartan_value.in_ring("Zphi")]
    facts: dict[str, Any] = {}
    ranks = set()
    if 5 in dihedral_ok:
        ranks.add(2)
    if icosian_shell is not None:
        for label, sys_ in (("H4", shell_system(icosian_shell)), ("H3", h3_subsystem(icosian_shell))):
            rep = verify_root_shell(sys_, "Zphi")
            kind = identify(sys_)
            ok = rep.passed and kind == label and not rep.crystallographic
            facts[label] = {
                "rank": rep.rank,
                "cardinality": rep.cardinality,
                "identified": kind,
                "cartan_in_zphi": rep.r4_cartan_in_ring,
                "root_shell": rep.passed,
                "cartan_values": [v.serialize() for v in rep.cartan_value_set],
            }
            if ok:
                ranks.add(rep.rank)
    return {
        "max_m": max_m,
        "admissible_dihedral": [v.m for v in admissible],
        "crystallographic_dihedral": [v.m for v in admissible if v.crystallographic],
        "noncrystallographic_dihedral": dihedral_ok,
        "dihedral_cartan": {str(v.m): v.cartan_value.serialize() for v in golden if v.cartan_value is not None},
        "exceptional": facts,
        "ranks": sorted(ranks),
        "max_rank": max(ranks) if ranks else None,
        "rank_ge_5_admissible": any(r >= 5 for r in ranks),
        "rank_8_admissible": 8 in ranks,
    }
