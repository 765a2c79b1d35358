"""GL2(q) labels, censuses, character values and orthogonality."""

import pytest

from gl2rep.cyclotomic import Cyclotomic, root
from gl2rep.errors import InvalidLabel, MismatchedQ, NotPrimePower
from gl2rep.gl2 import (
    GL2Class,
    GL2Irrep,
    char_inner_product,
    char_value,
    class_inner_product,
    enumerate_classes,
    enumerate_irreps,
    params,
    parse_class,
    parse_irrep,
)


def test_params_values():
    pr = params(5)
    assert (pr.r, pr.s, pr.d, pr.order) == (4, 6, 1, 480)
    assert params(4).d == 3
    pr7 = params(7)
    assert (pr7.t, pr7.d) == (57, 3)


def test_params_rejects_non_prime_powers():
    for bad in (1, 6, 10, 12):
        with pytest.raises(NotPrimePower):
            params(bad)


def test_irrep_census_q2():
    pr = params(2)
    irreps = enumerate_irreps(pr)
    assert [pi.label() for pi in irreps] == ["U:0", "V:0", "X:1"]
    assert sorted(pi.dim() for pi in irreps) == [1, 1, 2]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_census_counts_and_dims(q):
    pr = params(q)
    irreps = enumerate_irreps(pr)
    classes = enumerate_classes(pr)
    assert len(irreps) == q * q - 1
    assert len(classes) == q * q - 1
    assert sum(pi.dim() ** 2 for pi in irreps) == pr.order
    assert sum(c.size() for c in classes) == pr.order


def test_class_counts_q5():
    pr = params(5)
    by_kind = {}
    for c in enumerate_classes(pr):
        by_kind[c.kind] = by_kind.get(c.kind, 0) + 1
    assert by_kind == {"c1": 4, "c2": 4, "c3": 6, "c4": 10}


def test_char_values_spot_checks():
    pr = params(5)
    r, rs = pr.r, pr.rs
    u = GL2Irrep.U(pr, 1)
    assert char_value(u, GL2Class.C1(pr, 1), pr) == root(r, 2)
    v = GL2Irrep.V(pr, 1)
    assert char_value(v, GL2Class.C2(pr, 1), pr) == Cyclotomic.zero()
    x = GL2Irrep.X(pr, 1)
    assert char_value(x, GL2Class.C1(pr, 0), pr) == Cyclotomic.from_int(r)
    w = GL2Irrep.W(pr, 0, 1)
    assert char_value(w, GL2Class.C4(pr, 1), pr) == Cyclotomic.zero()
    # cuspidal value on an elliptic class: -(zeta^nm + zeta^qnm)
    assert char_value(x, GL2Class.C4(pr, 1), pr) == -(root(rs, 1) + root(rs, 5))


def test_degree_column():
    pr = params(4)
    identity = GL2Class.C1(pr, 0)
    for pi in enumerate_irreps(pr):
        assert char_value(pi, identity, pr) == Cyclotomic.from_int(pi.dim())


def test_duals():
    pr = params(5)
    w = GL2Irrep.W(pr, 1, 2)
    assert w.dual() == GL2Irrep.W(pr, 2, 3)  # {-1,-2} mod 4
    assert GL2Irrep.U(pr, 0).dual() == GL2Irrep.U(pr, 0)
    for pi in enumerate_irreps(pr):
        assert pi.dual().dual() == pi


def test_dual_character_is_conjugate():
    pr = params(4)
    for pi in enumerate_irreps(pr):
        for c in enumerate_classes(pr):
            assert char_value(pi.dual(), c, pr) == char_value(pi, c, pr).conj()


def test_class_sizes():
    pr = params(3)
    assert GL2Class.C3(pr, 0, 1).size() == 12
    assert GL2Class.C2(pr, 0).size() == 8
    assert GL2Class.C4(pr, 1).size() == 6


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_row_orthogonality(q):
    pr = params(q)
    irreps = enumerate_irreps(pr)
    for i, a in enumerate(irreps):
        for b in irreps[i:]:
            expected = pr.order if a == b else 0
            assert char_inner_product(a, b, pr) == expected


@pytest.mark.parametrize("q", [2, 3, 4])
def test_column_orthogonality(q):
    pr = params(q)
    classes = enumerate_classes(pr)
    for i, c in enumerate(classes):
        for c2 in classes[i:]:
            expected = pr.order // c.size() if c == c2 else 0
            assert class_inner_product(c, c2, pr) == expected


def test_canonicalization_is_idempotent():
    pr = params(7)
    w = GL2Irrep.W(pr, 5, 2)
    assert GL2Irrep.W(pr, *w.data) == w
    x = GL2Irrep.X(pr, 11)
    assert GL2Irrep.X(pr, x.data[0]) == x
    c3 = GL2Class.C3(pr, 4, 1)
    assert GL2Class.C3(pr, *c3.data) == c3
    c4 = GL2Class.C4(pr, 33)
    assert GL2Class.C4(pr, c4.data[0]) == c4


def test_x_orbit_identification():
    pr = params(3)  # rs = 8, orbits {1,3}, {2,6}, {5,7}
    assert GL2Irrep.X(pr, 3) == GL2Irrep.X(pr, 1)
    assert GL2Irrep.X(pr, 6) == GL2Irrep.X(pr, 2)
    assert GL2Irrep.X(pr, 7) == GL2Irrep.X(pr, 5)


def test_reducible_labels_rejected():
    pr = params(5)
    with pytest.raises(InvalidLabel):
        GL2Irrep.W(pr, 2, 2)
    with pytest.raises(InvalidLabel):
        GL2Irrep.X(pr, pr.s)  # multiple of s
    with pytest.raises(InvalidLabel):
        parse_irrep("W:3,3", pr)
    with pytest.raises(InvalidLabel):
        parse_class("c4:0", pr)


def test_cross_q_comparison_raises():
    a = GL2Irrep.U(params(3), 0)
    b = GL2Irrep.U(params(5), 0)
    with pytest.raises(MismatchedQ):
        a == b


def test_parser_round_trip():
    pr = params(5)
    for pi in enumerate_irreps(pr):
        assert parse_irrep(pi.label(), pr) == pi
    for c in enumerate_classes(pr):
        assert parse_class(c.label(), pr) == c
    # non-canonical input canonicalizes
    assert parse_irrep("W:3,1", pr).label() == "W:1,3"
    with pytest.raises(InvalidLabel):
        parse_irrep("Y:1", pr)
