import itertools

import pytest

from catlike import catalog
from catlike.catalog import (PresetParameterError, UnknownPreset, closed_form_column,
                             counterexample_regression, displayed_counterexample_determinant,
                             displayed_counterexample_moments, eulerian_oracle, nuk_identity_check,
                             pk_recursion_check, pq_integer, preset, run_preset_suite,
                             stirling_oracle)
from catlike.homog import homogenize_sequence
from catlike.polyring import PolyMatrix, VarSet, parse_poly
from catlike.recmatrix import build_triangle, column_hankel, jacobi_matrix
from catlike.totalpos import check_xtp

PQ = VarSet(["p", "q"])
Q = VarSet(["q"])


def col(name, N, *args):
    return build_triangle(preset(name, *args).weights, N).column(0)


def test_registry_and_parsing():
    assert "ex3_1" in catalog.preset_names()
    assert catalog.parse_preset_name("ex3_4(5)") == ("ex3_4", (5,))
    assert preset("ex3_8").name == preset("ex3_8_bell").name
    with pytest.raises(UnknownPreset):
        preset("nope")
    with pytest.raises(PresetParameterError):
        preset("ex3_4", 2)
    with pytest.raises(PresetParameterError):
        preset("counterexample", -1, 0)


def test_preset_weight_listings():
    w = preset("ex3_1").weights
    assert str(w.s_formula) == "k=0: 1; else: 1+q" and str(w.t_formula) == "q"
    w = preset("ex3_4", 3).weights
    p, q = w.varset.gens()
    assert w.s(0) == p * p + p * q + q * q and w.s(4) == p + q
    assert w.t(1) == p * p * q + p * q * q and w.t(2) == p * q
    w = preset("counterexample", 1, 2).weights
    q = w.varset.var("q")
    assert w.s(0) == q ** 2 and w.s(3) == 1 + 2 * q ** 2
    assert w.t(1) == q ** 4 and w.t(2) == q ** 2 + q ** 4


def test_stirling_oracle():
    assert stirling_oracle(3, 2) == 3
    assert all(stirling_oracle(n, n) == 1 for n in range(8))
    assert all(stirling_oracle(n, 0) == 0 for n in range(1, 8))


def test_eulerian_oracle():
    assert eulerian_oracle(1) == PQ.one()
    assert eulerian_oracle(2) == parse_poly("p+q", PQ)
    assert eulerian_oracle(3) == parse_poly("p^2+4pq+q^2", PQ)
    with pytest.raises(ValueError):
        eulerian_oracle(0)


def test_closed_forms():
    assert closed_form_column("ex3_6", 2) == parse_poly("p^2+4pq+q^2", PQ)
    assert closed_form_column("ex3_7", 3) == parse_poly("p^2q+3pq^2+q^3", PQ)
    assert closed_form_column("ex3_8", 3) == parse_poly("qp^2+3q^2p+q^3", PQ)


def test_pq_integer():
    assert pq_integer(1) == PQ.one()
    assert pq_integer(3) == parse_poly("p^2+pq+q^2", PQ)
    p, q = PQ.gens()
    for n in range(2, 9):
        assert p * pq_integer(n) == p ** n + p * q * pq_integer(n - 1)
    with pytest.raises(ValueError):
        pq_integer(0)


def test_nuk_and_pk():
    J = jacobi_matrix(preset("ex3_4", 3).weights, 2)
    from catlike.polyring import determinant
    assert determinant(J.submatrix([0], [0])) == pq_integer(3, J.vs)
    assert determinant(J) == pq_integer(4, J.vs)
    for u in (3, 4, 5, 6):
        assert nuk_identity_check(u, 8)
    J5 = jacobi_matrix(preset("ex3_4", 5).weights, 6)
    assert determinant(J5) == pq_integer(10, J5.vs)
    assert pk_recursion_check(10)
    with pytest.raises(PresetParameterError):
        nuk_identity_check(2, 3)


def test_ex3_5_n4_value():
    pqr = VarSet(["p", "q", "r"])
    want = parse_poly("p^3q+6p^2q^2+6pq^3+q^4+5p^2qr+20pq^2r+10q^3r+10pqr^2+20q^2r^2+10qr^3+r^4", pqr)
    assert col("ex3_5", 4)[4] == want


def test_bell_against_stirling():
    c = col("intro_bell", 10)
    for n in range(11):
        want = sum((stirling_oracle(n, k) * Q.var("q") ** k for k in range(n + 1)), Q.zero())
        assert c[n] == want


def test_eulerian_alignment_and_homogenization():
    c = col("intro_eulerian", 8)
    assert catalog.detect_eulerian_alignment(c) == "q*E_n"
    q = Q.var("q")
    for n in range(1, 9):
        assert c[n] == q * eulerian_oracle(n).specialize({"p": 1}).to_varset(Q)
    c9 = col("ex3_9", 7)
    for n in range(8):
        assert c9[n] == eulerian_oracle(n + 1)
    # E_n(1,q) homogenized by p reproduces E_n(p,q)
    e1 = [eulerian_oracle(n + 1).specialize({"p": 1}).to_varset(Q) for n in range(8)]
    for n, h in enumerate(homogenize_sequence(e1, "p")):
        assert h == eulerian_oracle(n + 1)


def test_ex3_6_closed_form_n10():
    c = col("ex3_6", 10)
    for n in range(11):
        assert c[n] == catalog.narayana_W(n, c[0].vs)


@pytest.mark.parametrize("s", [1, 2, 3])
def test_threshold_degenerate_specialization(s):
    c = col("ex3_3_threshold", 8, s)
    vs = c[0].vs
    spec = [x.specialize({"p": 0}).to_varset(Q) for x in c]
    for n in range(9):
        assert spec[n] == catalog.two_colored_motzkin(s, n)
    H = PolyMatrix(Q, [[spec[i + j] for j in range(4)] for i in range(4)])
    assert check_xtp(H, 4).passed


def test_counterexample_shift_in_printed_column():
    # the printed m_{2,0}, m_{3,0}, m_{4,0} are the true m_{3,0}, m_{4,0}, m_{5,0}
    for a, b in [(0, 0), (1, 1), (1, 2), (2, 3)]:
        true = col("counterexample", 5, a, b)
        shown = displayed_counterexample_moments(a, b)
        assert shown[:2] == true[:2]
        assert shown[2:] == true[3:6]


def test_counterexample_printed_determinant_is_printed_matrix():
    from catlike.polyring import determinant
    for a, b in [(0, 0), (1, 1), (1, 2), (2, 3)]:
        m = displayed_counterexample_moments(a, b)
        H = PolyMatrix(Q, [[m[i + j] for j in range(3)] for i in range(3)])
        assert determinant(H) == displayed_counterexample_determinant(a, b)


def test_counterexample_true_determinant():
    q = Q.var("q")
    for a, b in [(0, 0), (1, 1), (1, 2), (2, 3)]:
        assert counterexample_regression(a, b) == q ** 10 + q ** 12


def test_counterexample_fails_at_n4():
    verdicts = {ab: check_xtp(column_hankel(catalog.counterexample_weights(*ab), 4).matrix, 4).passed
                for ab in [(0, 0), (1, 1), (1, 2), (2, 3)]}
    assert verdicts == {(0, 0): False, (1, 1): False, (1, 2): True, (2, 3): False}


def test_ex3_3_display_corrected_vs_printed():
    pr = preset("ex3_3")
    ok, bad = catalog.check_display(pr)
    assert not ok and len(bad) == 3
    assert catalog.check_display(pr, corrected=True)[0]


def test_ex3_7_and_ex3_8_remark4_differ():
    pt = {"p": 2, "q": 2}
    a = [x.evaluate(pt) for x in col("ex3_7", 7)]
    b = [x.evaluate(pt) for x in col("ex3_8", 7)]
    assert a == [1, 2, 8, 40, 224, 1344, 8448, 54912]
    assert b == [1, 2, 8, 40, 240, 1664, 12992, 112256]


@pytest.mark.parametrize("name", [n for n in catalog.preset_names() if n != "counterexample"])
def test_suite_passes(name):
    rep = run_preset_suite(name, 6)
    assert rep.passed, [c.to_json() for c in rep.checks if not c.passed]


def test_counterexample_suite_fails_only_on_printed_determinant():
    rep = run_preset_suite("counterexample", 6)
    failed = [c.name for c in rep.checks if not c.passed]
    assert failed and all("printed" in n for n in failed)


def test_strict_listed_flags_misprints():
    rep = run_preset_suite("ex3_7", 8, strict_listed=True)
    assert [c.name for c in rep.checks if not c.passed] == ["specialization[p=2,q=1]"]
