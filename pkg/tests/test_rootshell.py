from __future__ import annotations

import random

import numpy as np
import pytest

from planeshell.algebra import polar
from planeshell.golden import PHI, GoldenScalar
from planeshell.orders import BUILTIN_NAMES, TABLE1_ORDERS, builtin
from planeshell.rootshell import (
    ROOT_TYPES,
    VectorSystem,
    as_system,
    cartan,
    cartan_distributions,
    compose_label,
    decompose,
    dihedral_admissible,
    h3_subsystem,
    identify,
    rank_obstruction_scan,
    reflect,
    totient,
    totient_table,
    verify_root_shell,
)
from planeshell.shells import unit_shell

UNIT_LABELS = {
    "Z": "A1", "gaussian": "2A1", "eisenstein": "A2", "hamilton": "4A1", "hurwitz": "D4",
    "cayley_graves": "8A1", "coxeter_dickson": "E8", "cyclotomic10": "H2", "icosian": "H4",
    "hybrid_2a2": "A2⊕A2", "hybrid_2d4": "D4⊕D4",
}
RANKS = {
    "Z": 1, "gaussian": 2, "eisenstein": 2, "hamilton": 4, "hurwitz": 4, "cayley_graves": 8,
    "coxeter_dickson": 8, "cyclotomic10": 2, "icosian": 4, "hybrid_2a2": 4, "hybrid_2d4": 8,
}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_unit_shells_are_root_shells(name):
    rep = verify_root_shell(unit_shell(builtin(name)))
    assert rep.passed
    assert rep.reflections_checked == len(unit_shell(builtin(name))) ** 2
    assert rep.label == UNIT_LABELS[name]
    assert rep.rank == RANKS[name]
    assert sum(c[1] for c in rep.components) == rep.cardinality
    assert rep.crystallographic == (name not in ("cyclotomic10", "icosian"))


def test_cartan_value_sets():
    hur = verify_root_shell(unit_shell(builtin("hurwitz"))).cartan_value_set
    assert set(hur) <= {GoldenScalar(v) for v in (-2, -1, 0, 1, 2)}
    ico = verify_root_shell(unit_shell(builtin("icosian"))).cartan_value_set
    allowed = {GoldenScalar(v) for v in (-2, -1, 0, 1, 2)} | {PHI, -PHI, PHI - 1, 1 - PHI}
    assert set(ico) == allowed


def test_decagon_adjacent_cartan_is_phi():
    o = builtin("cyclotomic10")
    one, zeta = o.algebra.one(), o.basis[1]
    assert cartan(one, zeta) == PHI
    image = reflect(one, zeta)
    assert image in set(unit_shell(o).elements)
    assert image == zeta - one * PHI


def test_reflect_basics():
    s = unit_shell(builtin("hurwitz")).elements
    a = s[0]
    assert reflect(a, a) == -a
    for x in s:
        if not polar(x, a):
            assert reflect(a, x) == x
    with pytest.raises(ZeroDivisionError):
        reflect(a.algebra.zero(), a)


@pytest.mark.parametrize("name", ["hurwitz", "icosian", "cyclotomic10"])
def test_cartan_symmetric_on_single_length_shells(name):
    s = unit_shell(builtin(name)).elements
    for a in s[:12]:
        for b in s:
            assert cartan(a, b) == cartan(b, a)


def test_decompose_examples():
    assert [len(c) for c in decompose(unit_shell(builtin("gaussian")))] == [2, 2]
    assert [len(c) for c in decompose(unit_shell(builtin("coxeter_dickson")))] == [240]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_decompose_partitions(name):
    s = unit_shell(builtin(name))
    comps = decompose(s)
    rows = [tuple(r) for c in comps for r in c.vectors.tolist()]
    assert len(rows) == len(set(rows)) == len(s)


@pytest.mark.parametrize("name", ["hurwitz", "icosian", "cyclotomic10", "eisenstein"])
def test_identify_permutation_stable(name):
    sys_ = as_system(unit_shell(builtin(name)))
    label = identify(sys_)
    idx = list(range(len(sys_)))
    random.Random(name).shuffle(idx)
    assert identify(sys_.subsystem(idx)) == label == UNIT_LABELS[name]


def test_identify_unknown_on_mismatch():
    ham = as_system(unit_shell(builtin("hamilton")))
    assert identify(ham) == "unknown"  # 4A1: no row for (4, 8)
    # rank 2 with 6 vectors but not A2: {+-1, +-i, +-(1+i)}
    o = builtin("gaussian")
    rows = np.array([[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]], dtype=np.int64)
    g0, g1 = o.polar_parts
    fake = VectorSystem(rows, g0, g1, o.phi_matrix, "Z", tuple(o.from_zcoords(r) for r in rows))
    assert identify(fake) == "unknown"


def test_cartan_distribution_totals():
    for name, (rank, card, dist) in ROOT_TYPES.items():
        assert sum(dist.values()) == card
        # sum of squared Cartan values per root is 4|T|/rank on an irreducible system
        assert sum(float(v) ** 2 * c for v, c in dist.items()) == pytest.approx(4 * card / rank)


def test_h3_subsystem():
    h3 = h3_subsystem(unit_shell(builtin("icosian")))
    assert len(h3) == 30
    assert identify(h3) == "H3"
    dist = cartan_distributions(h3)[0]
    assert dist == ROOT_TYPES["H3"][2]


def test_compose_label():
    assert compose_label(["A1"] * 8) == "8A1"
    assert compose_label(["A1"]) == "A1"
    assert compose_label(["E8", "E8"]) == "E8⊕E8"


def _totient_by_factoring(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def test_totient_sieve_against_factorization():
    table = totient_table(20_000)
    for n in range(1, 20_001):
        assert table[n] == _totient_by_factoring(n)


def test_dihedral_examples():
    v5 = dihedral_admissible(5)
    assert v5.admissible and not v5.crystallographic and v5.cartan_value == PHI
    assert not dihedral_admissible(7).admissible
    v6 = dihedral_admissible(6)
    assert v6.admissible and v6.crystallographic
    assert dihedral_admissible(3).cartan_value == 1
    with pytest.raises(ValueError):
        dihedral_admissible(2)


def test_dihedral_matches_totient_oracle():
    for m in range(3, 10_001):
        assert dihedral_admissible(m).admissible == (_totient_by_factoring(2 * m) <= 4)
    assert totient(14) == 6


def test_rank_obstruction_scan():
    r = rank_obstruction_scan(100, unit_shell(builtin("icosian")))
    assert r["noncrystallographic_dihedral"] == [5]
    assert r["ranks"] == [2, 3, 4]
    assert not r["rank_8_admissible"]
    assert not r["rank_ge_5_admissible"]
    small = rank_obstruction_scan(6)
    assert small["crystallographic_dihedral"] == [3, 4, 6]
    with pytest.raises(ValueError):
        rank_obstruction_scan(5)


@pytest.mark.parametrize("name", TABLE1_ORDERS)
def test_reports_are_deterministic(name):
    a = verify_root_shell(unit_shell(builtin(name)))
    b = verify_root_shell(unit_shell(builtin(name)))
    assert a.cartan_value_set == b.cartan_value_set and a.components == b.components
