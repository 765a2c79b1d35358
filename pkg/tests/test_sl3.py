"""SL3(q) classes, the embedding of GL2(q) classes, and restriction witnesses."""

import pytest

from gl2rep.cyclotomic import Cyclotomic, root
from gl2rep.errors import InvalidLabel
from gl2rep.gl2 import GL2Class, GL2Irrep, enumerate_classes, enumerate_irreps, params, x_orbit_reps
from gl2rep.sl3 import (
    SL3Class,
    SL3Irrep,
    embed_class,
    expected_witness_mult,
    restriction_mult,
    sl3_char_value,
    witness_no_gelfand,
    witness_report,
)


def test_label_constraints():
    pr = params(7)  # r = 6, d = 3
    with pytest.raises(InvalidLabel):
        SL3Class.C4(pr, 2)  # 2 is a multiple of r/d = 2
    SL3Class.C4(pr, 1)
    with pytest.raises(InvalidLabel):
        SL3Class.C1(pr, 4)  # central parameter range is 1..d
    with pytest.raises(InvalidLabel):
        SL3Class.C6(pr, 1, 1)
    with pytest.raises(InvalidLabel):
        SL3Class.C7(pr, pr.s)
    with pytest.raises(InvalidLabel):
        SL3Irrep.T(pr, 0)


def test_c6_canonicalizes_by_eigenvalue_triple():
    pr = params(7)
    # {1, 2} has third exponent -3 mod 6 = 3; all three pair labels agree
    a = SL3Class.C6(pr, 1, 2)
    assert a == SL3Class.C6(pr, 1, 3) == SL3Class.C6(pr, 2, 3)
    assert a.data == (1, 2)


def test_c7_orbit_canonical():
    pr = params(3)
    assert SL3Class.C7(pr, 7) == SL3Class.C7(pr, 5)  # 7*3 = 21 = 5 mod 8


def test_embedding_rows():
    pr = params(5)  # d = 1, so r/d = r and only k = 0 is central
    assert embed_class(GL2Class.C1(pr, 0), pr) == SL3Class.C1(pr, 1)
    assert embed_class(GL2Class.C1(pr, 2), pr) == SL3Class.C4(pr, 2)
    assert embed_class(GL2Class.C2(pr, 0), pr) == SL3Class.C2(pr, 1)
    assert embed_class(GL2Class.C2(pr, 3), pr) == SL3Class.C5(pr, 3)
    assert embed_class(GL2Class.C4(pr, 7), pr) == SL3Class.C7(pr, -7)
    # split class with 2k = -l lands in C4(k)
    r = pr.r
    assert embed_class(GL2Class.C3(pr, 1, r - 2), pr) == SL3Class.C4(pr, 1)
    assert embed_class(GL2Class.C3(pr, 0, 1), pr).kind == "C6"


def test_embedding_with_d3():
    pr = params(4)  # r = 3, d = 3, r/d = 1: every scalar is a cube
    for k in range(3):
        assert embed_class(GL2Class.C1(pr, k), pr).kind == "C1"
        assert embed_class(GL2Class.C2(pr, k), pr).kind == "C2"


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_embedding_never_hits_c8_and_always_validates(q):
    pr = params(q)
    for c in enumerate_classes(pr):
        big = embed_class(c, pr)
        assert big.kind in ("C1", "C2", "C4", "C5", "C6", "C7")


def test_partial_character_values():
    pr = params(5)
    qs = SL3Irrep.QS(pr)
    assert sl3_char_value(qs, SL3Class.C1(pr, 1), pr) == Cyclotomic.from_int(pr.q * pr.s)
    assert sl3_char_value(qs, SL3Class.C8(pr, 1), pr) == Cyclotomic.from_int(-1)
    rt = SL3Irrep.RT(pr, 1)
    assert sl3_char_value(rt, SL3Class.C6(pr, 0, 1), pr) == Cyclotomic.zero()
    t = SL3Irrep.T(pr, 1)
    assert sl3_char_value(t, SL3Class.C4(pr, 1), pr) == pr.s * root(pr.r, 1) + root(pr.r, -2)
    assert sl3_char_value(t, SL3Class.C8(pr, 1), pr) == Cyclotomic.zero()
    # the corrected elliptic value of the rt family
    assert sl3_char_value(rt, SL3Class.C7(pr, 1), pr) == -(
        root(pr.rs, -1) + root(pr.rs, -pr.q)
    )


def test_dims_read_from_identity_column():
    pr = params(4)
    identity = SL3Class.C1(pr, pr.d)
    assert sl3_char_value(SL3Irrep.QS(pr), identity, pr).as_integer() == SL3Irrep.QS(pr).dim()
    assert sl3_char_value(SL3Irrep.T(pr, 1), identity, pr).as_integer() == pr.t
    assert sl3_char_value(SL3Irrep.RT(pr, 1), identity, pr).as_integer() == pr.r * pr.t


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_worked_restriction_multiplicities(q):
    pr = params(q)
    d = pr.d
    assert restriction_mult(SL3Irrep.QS(pr), GL2Irrep.U(pr, 0), pr) == 2
    for a in range(1, pr.r):
        assert restriction_mult(SL3Irrep.T(pr, -a), GL2Irrep.U(pr, a), pr) == 2
    for a in range(pr.r):
        pi, m = witness_no_gelfand(GL2Irrep.V(pr, a), pr)
        assert m == d + 1
    for n in x_orbit_reps(pr):
        assert restriction_mult(SL3Irrep.RT(pr, n), GL2Irrep.X(pr, n), pr) == d + 1


def test_w_witness_values():
    pr = params(7)  # d = 3, r/d = 2: parity of b - a decides 4 vs 5
    for (a, b), expected in [((0, 2), 5), ((0, 1), 4), ((1, 3), 5)]:
        tau = GL2Irrep.W(pr, a, b)
        pi, m = witness_no_gelfand(tau, pr)
        assert m == expected == expected_witness_mult(tau, pr)


def test_witness_q4_steinberg():
    pr = params(4)
    pi, m = witness_no_gelfand(GL2Irrep.V(pr, 1), pr)
    assert pi == SL3Irrep.RT(pr, -1)
    assert m == 4


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_all_witnesses_at_least_two(q):
    pr = params(q)
    for tau in enumerate_irreps(pr):
        pi, m = witness_no_gelfand(tau, pr)
        assert m >= 2
        assert m == expected_witness_mult(tau, pr)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_full_restriction_dimension_bookkeeping(q):
    pr = params(q)
    pis = [SL3Irrep.QS(pr), SL3Irrep.RT(pr, x_orbit_reps(pr)[0])]
    if pr.r > 1:
        pis.append(SL3Irrep.T(pr, 1))
    for pi in pis:
        total = sum(restriction_mult(pi, tau, pr) * tau.dim() for tau in enumerate_irreps(pr))
        assert total == pi.dim()


def test_witness_report_flags_d3():
    rows = witness_report(params(4))
    x_rows = [r for r in rows if r["tau"].startswith("X:")]
    assert x_rows and all("note" in r and r["multiplicity"] == 4 for r in x_rows)
    rows3 = witness_report(params(3))
    assert all("note" not in r for r in rows3)
    assert all(r["ok"] for r in rows + rows3)
