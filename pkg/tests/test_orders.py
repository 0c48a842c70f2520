from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from planeshell.algebra import conj, element
from planeshell.golden import PHI, GoldenScalar, is_totally_positive
from planeshell.orders import (
    BUILTIN_NAMES,
    CD_BASIS,
    CD_CODE_WORDS_THROUGH_0,
    HYBRID_ORDERS,
    TABLE1_ORDERS,
    Order,
    OrderInvariantError,
    UnknownOrderError,
    builtin,
    contains,
    gram,
    gram_determinant,
    verify_order_axioms,
)

half = Fraction(1, 2)


def test_names():
    assert len(TABLE1_ORDERS) == 9
    assert set(BUILTIN_NAMES) == set(TABLE1_ORDERS) | set(HYBRID_ORDERS)


def test_unknown_order():
    with pytest.raises(UnknownOrderError):
        builtin("unknown")


def test_hurwitz_basis():
    b = builtin("hurwitz").basis
    assert b[3] == element("H", [half] * 4)
    assert [x.coords for x in b[:3]] == [element("H", v).coords for v in ([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0])]


def test_icosian_basis():
    b = builtin("icosian").basis
    assert b[3] == element("H", [-half, (PHI - 1) / 2, -PHI / 2, 0])
    assert builtin("icosian").ring_tag == "Zphi"
    assert builtin("icosian").z_rank == 8


def test_gaussian_basis():
    assert builtin("gaussian").basis == (element("C", [1, 0]), element("C", [0, 1]))


def as_ints(m):
    return [[int(x.a) if x.is_rational() else x for x in row] for row in m]


def test_gram_examples():
    assert as_ints(gram(builtin("eisenstein"))) == [[2, -1], [-1, 2]]
    assert as_ints(gram(builtin("gaussian"))) == [[2, 0], [0, 2]]
    assert as_ints(gram(builtin("Z"))) == [[2]]


E8_CARTAN_EDGES = {(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)}


def test_coxeter_dickson_gram_is_an_e8_cartan_matrix():
    g = as_ints(gram(builtin("coxeter_dickson")))
    degrees = [sum(1 for j in range(8) if j != i and g[i][j]) for i in range(8)]
    assert all(g[i][i] == 2 for i in range(8))
    assert all(g[i][j] in (0, -1) for i in range(8) for j in range(8) if i != j)
    # tree with one branch node of degree 3 and arms of lengths 1, 2, 4
    assert sum(degrees) == 14 and sorted(degrees).count(3) == 1
    assert gram_determinant(builtin("coxeter_dickson")) == 1


def test_coxeter_dickson_lattice_is_the_code_lattice():
    # independent description: Z^8 + (1/2)C with C spanned by the listed words and complements
    words = set()
    for w in CD_CODE_WORDS_THROUGH_0:
        v = tuple(int(i in w) for i in range(8))
        words.add(v)
        words.add(tuple(1 - x for x in v))
    # close under addition mod 2
    code = {(0,) * 8}
    changed = True
    while changed:
        changed = False
        for a in list(code):
            for b in words:
                c = tuple((x + y) % 2 for x, y in zip(a, b))
                if c not in code:
                    code.add(c)
                    changed = True
    assert len(code) == 16
    assert all(sum(c) % 4 == 0 for c in code)
    for row in CD_BASIS:
        twice = [Fraction(x) * 2 for x in row]
        assert all(t.denominator == 1 for t in twice)
        assert tuple(int(t) % 2 for t in twice) in code
    # covolume of the code lattice is 1/16
    det = Fraction(round(np.linalg.det(np.array(CD_BASIS, dtype=float)) * 16), 16)
    assert abs(det) == Fraction(1, 16)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_axioms_pass(name):
    report = verify_order_axioms(builtin(name))
    assert report["pass"], report
    assert report["product_checks"] == builtin(name).rank ** 2


def test_coxeter_dickson_product_checks():
    assert verify_order_axioms(builtin("coxeter_dickson"))["product_checks"] == 64


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_gram_determinant_totally_positive(name):
    assert is_totally_positive(gram_determinant(builtin(name)))


@pytest.mark.parametrize(
    "name, det",
    [
        ("Z", 2), ("gaussian", 4), ("eisenstein", 3), ("hamilton", 16), ("hurwitz", 4),
        ("cayley_graves", 256), ("coxeter_dickson", 1), ("cyclotomic10", 3 - PHI),
        ("icosian", 1 + PHI), ("hybrid_2a2", 9), ("hybrid_2d4", 16),
    ],
)
def test_gram_determinants(name, det):
    assert gram_determinant(builtin(name)) == det


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_gram_symmetric_and_in_ring(name):
    o = builtin(name)
    g = gram(o)
    assert all(g[i][j] == g[j][i] and g[i][j].in_ring(o.ring_tag) for i in range(o.rank) for j in range(o.rank))


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_basis_membership_witness(name):
    o = builtin(name)
    for i, b in enumerate(o.basis):
        m = contains(o, b)
        assert m.found
        assert list(m.coefficients) == [GoldenScalar(int(i == j)) for j in range(o.rank)]


def test_contains_examples():
    assert not contains(builtin("gaussian"), element("C", [half, half]))
    m = contains(builtin("hurwitz"), element("H", [half] * 4))
    assert m and list(m.coefficients) == [0, 0, 0, 1]
    for name in BUILTIN_NAMES:
        o = builtin(name)
        assert contains(o, o.algebra.one())


def test_invalid_order_rejected():
    with pytest.raises(OrderInvariantError):
        Order("bad", "Z", builtin("gaussian").algebra, [element("C", [1, 0]), element("C", [half, half])])


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_integer_tables_match_exact_arithmetic(name):
    o = builtin(name)
    z = o.zbasis
    for i, x in enumerate(z):
        assert o.from_zcoords(o.conj_matrix[i]) == conj(x)
        for j, y in enumerate(z):
            c = o.zmul(np.eye(o.z_rank, dtype=np.int64)[i], np.eye(o.z_rank, dtype=np.int64)[j])
            assert o.from_zcoords(c) == x * y
