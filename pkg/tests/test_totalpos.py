import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catlike import catalog
from catlike.polyring import PolyMatrix, VarSet, parse_poly, permutation_determinant
from catlike.recmatrix import build_triangle, column_hankel, jacobi_matrix
from catlike.totalpos import (bc_jacobi, check_bc_decomposition, check_lemma_key, check_slcx,
                              check_tridiagonal_xtp, check_xtp, minor)
from catlike.weightdsl import WeightSystem, parse_weight

from _gen import VARSETS, nonneg_polys, random_lemma_key_system, rand_poly, tridiagonals

Q = VarSet(["q"])
PQ = VarSet(["p", "q"])


def test_identity_passes_any_order():
    for r in (1, 3, 5):
        rep = check_xtp(PolyMatrix.identity(Q, 5), r)
        assert rep.passed
    assert check_xtp(PolyMatrix.identity(Q, 3), 3).verdict == "pass"
    assert check_xtp(PolyMatrix.identity(Q, 5), 2).verdict == "pass-up-to-order-r"


def test_default_order_bound():
    assert check_xtp(PolyMatrix.identity(Q, 6)).order_checked == 4
    assert check_xtp(PolyMatrix.identity(Q, 2)).order_checked == 2


@pytest.mark.parametrize("ab", [(0, 0), (1, 1), (1, 2), (2, 3)])
def test_counterexample_printed_moments(ab):
    seq = catalog.displayed_counterexample_moments(*ab)
    H = PolyMatrix(Q, [[seq[i + j] for j in range(3)] for i in range(3)])
    rep = check_xtp(H, 3)
    assert rep.verdict == "fail"
    # an order-2 minor already fails on the printed values
    assert len(rep.violations[0].rows) == 2
    full = check_xtp(H, 3, exhaustive=True).violations[-1]
    assert (full.rows, full.cols) == ((0, 1, 2), (0, 1, 2))
    assert full.det == catalog.displayed_counterexample_determinant(*ab)
    assert full.det.coeff((8,)) == -1


def test_counterexample_true_column_fails_at_order_four():
    # the genuine recursion column passes at N=3 and fails once N=4
    w = catalog.counterexample_weights(0, 0)
    assert check_xtp(column_hankel(w, 3).matrix, 3).passed
    rep = check_xtp(column_hankel(w, 4).matrix, 4)
    assert rep.verdict == "fail"


def test_ex3_1_hankel_n4_exhaustive():
    rep = check_xtp(column_hankel(catalog.preset("ex3_1").weights, 4).matrix, 4, exhaustive=True)
    assert rep.verdict == "pass"
    assert rep.minors_evaluated > 0


def test_enumeration_order_and_report_json():
    q = Q.var("q")
    m = PolyMatrix(Q, [[1, -q, 1], [1, 1, -1], [0, 1, 1]])
    rep = check_xtp(m, 3, exhaustive=True)
    keys = [(len(v.rows), v.rows, v.cols) for v in rep.violations]
    assert keys == sorted(keys)
    first = check_xtp(m, 3)
    assert (first.violations[0].rows, first.violations[0].cols) == ((0,), (1,))
    j = first.to_json()
    assert j["verdict"] == "fail" and j["violations"][0]["det"] == "-q"


def test_violations_reverify_by_permutation_expansion():
    rng = random.Random(5)
    for _ in range(20):
        vs = rng.choice(VARSETS)
        m = PolyMatrix(vs, [[rand_poly(rng, vs, 1, 2, -1, 2) for _ in range(4)] for _ in range(4)])
        rep = check_xtp(m, 4, exhaustive=True)
        assert (rep.verdict == "fail") == bool(rep.violations)
        for v in rep.violations:
            d = permutation_determinant(m.submatrix(v.rows, v.cols))
            assert d == v.det
            assert not d.is_x_nonnegative()


def test_symmetric_shortcut_agrees_with_full_enumeration():
    rng = random.Random(9)
    for _ in range(10):
        vs = rng.choice(VARSETS)
        seq = [rand_poly(rng, vs, 2, 3, -1, 3) for _ in range(7)]
        H = PolyMatrix(vs, [[seq[i + j] for j in range(4)] for i in range(4)])
        a = check_xtp(H, 4, exhaustive=True, symmetric=True)
        b = check_xtp(H, 4, exhaustive=True, symmetric=False)
        assert sorted((v.rows, v.cols) for v in a.violations) == sorted((v.rows, v.cols) for v in b.violations)


def test_tridiagonal_examples():
    assert check_tridiagonal_xtp(jacobi_matrix(catalog.preset("ex3_1").weights, 6)).verdict == "pass"
    J = jacobi_matrix(catalog.preset("ex3_4", 3).weights, 6)
    assert check_tridiagonal_xtp(J).verdict == "pass"
    for k in range(1, 7):
        assert minor(J, range(k), range(k)) == catalog.pq_integer(k + 2, J.vs)
    assert check_tridiagonal_xtp(PolyMatrix(Q, [[Q.var("q")]])).verdict == "pass"


def test_tridiagonal_preconditions():
    q = Q.var("q")
    with pytest.raises(ValueError, match="tridiagonal"):
        check_tridiagonal_xtp(PolyMatrix(Q, [[1, 0, 1], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(ValueError, match="nonnegative"):
        check_tridiagonal_xtp(PolyMatrix(Q, [[1, -q], [0, 1]]))


def test_tridiagonal_failure_reports_consecutive_block():
    q = Q.var("q")
    m = PolyMatrix(Q, [[1, 1, 0], [0, q, 2], [0, 1, 1]])
    rep = check_tridiagonal_xtp(m)
    assert rep.verdict == "fail"
    v = rep.violations[0]
    assert v.rows == v.cols == (0, 1, 2)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: tridiagonals(Q, n)))
def test_tridiagonal_agrees_with_generic(m):
    n = m.nrows
    assert check_tridiagonal_xtp(m).passed == check_xtp(m, n, exhaustive=True).passed


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: tridiagonals(PQ, n)))
def test_tridiagonal_agrees_with_generic_two_vars(m):
    assert check_tridiagonal_xtp(m).passed == check_xtp(m, m.nrows, exhaustive=True).passed


def test_lemma_key_examples():
    assert check_lemma_key(catalog.preset("ex3_1").weights, 8).passed
    rep = check_lemma_key(catalog.counterexample_weights(0, 0), 4)
    assert rep.failure[:2] == ("i", 0)
    assert rep.failure[2] == parse_poly("q^2-1", Q)
    assert not check_lemma_key(catalog.preset("ex3_4", 3).weights, 4).passed
    with pytest.raises(ValueError):
        check_lemma_key(catalog.preset("ex3_1").weights, 0)


def test_lemma_key_implies_jacobi_xtp():
    rng = random.Random(21)
    for _ in range(20):
        w = random_lemma_key_system(rng)
        assert check_lemma_key(w, 6).passed
        assert check_tridiagonal_xtp(jacobi_matrix(w, 6)).passed


def test_bc_examples():
    w34 = WeightSystem.from_strings(["p", "q"], "1", "p+q", "p*q")
    assert check_bc_decomposition(parse_weight("p", PQ), parse_weight("q", PQ), w34, 6)
    pqr = VarSet(["p", "q", "r"])
    w35 = WeightSystem.from_strings(pqr, "1", "p+q+r", "q*(p+r)")
    assert check_bc_decomposition(parse_weight("p+r", pqr), parse_weight("q", pqr), w35, 6)
    w0 = WeightSystem.from_strings(["q"], "1", "1", "0")
    assert check_bc_decomposition(parse_weight("1", Q), parse_weight("0", Q), w0, 4)
    assert not check_bc_decomposition(parse_weight("q", Q), parse_weight("1", Q), w0, 4)


@settings(max_examples=30, deadline=None)
@given(st.lists(nonneg_polys(PQ), min_size=6, max_size=6), st.lists(nonneg_polys(PQ), min_size=6, max_size=6))
def test_product_lemma(bs, cs):
    def piecewise(ps):
        return "; ".join([f"k={i + 1}: {p.to_text('*')}" for i, p in enumerate(ps[:-1])]
                         + [f"else: {ps[-1].to_text('*')}"])
    b, c = parse_weight(piecewise(bs), PQ), parse_weight(piecewise(cs), PQ)
    assert check_tridiagonal_xtp(bc_jacobi(b, c, 5)).passed


def test_slcx_examples():
    q = Q.var("q")
    assert check_slcx([Q.one(), q, q ** 2, q ** 3]).passed
    assert check_slcx([Q.one(), q, q ** 2, q ** 3], displayed=True).passed
    assert check_slcx(build_triangle(catalog.preset("ex3_1").weights, 7).column(0)).passed
    consts = [Q.const(c) for c in (1, 1, 3)]
    assert check_slcx(consts).passed
    rep = check_slcx(consts, displayed=True)
    assert not rep.passed and rep.failure[:2] == (1, 1)
    with pytest.raises(ValueError):
        check_slcx(consts[:2])


def test_order_two_hankel_implies_slcx():
    for name in ("ex3_1", "ex3_2", "ex3_3", "ex3_6", "intro_bell", "intro_narayana_B"):
        col = build_triangle(catalog.preset(name).weights, 8).column(0)
        H = PolyMatrix(col[0].vs, [[col[i + j] for j in range(5)] for i in range(5)])
        if check_xtp(H, 2).passed:
            assert check_slcx(col[:9]).passed
