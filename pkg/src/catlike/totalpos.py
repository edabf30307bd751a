"""Certification of x-total positivity for polynomial matrices."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from . import polyring
from .polyring import PolyMatrix, Polynomial, determinant, geq_x
from .weightdsl import WeightFormula, WeightSystem, eval_weight


@dataclass
class Violation:
    rows: tuple
    cols: tuple
    det: Polynomial

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols), "det": self.det.to_text()}


@dataclass
class TPReport:
    verdict: str  # "pass" | "fail" | "pass-up-to-order-r"
    order_checked: int
    violations: list = field(default_factory=list)
    minors_evaluated: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "order_checked": self.order_checked,
                "violations": [v.to_json() for v in self.violations],
                "minors_evaluated": self.minors_evaluated}


def _verdict(violations, order, full_order):
    if violations:
        return "fail"
    return "pass" if order >= full_order else "pass-up-to-order-r"


def check_xtp(m: PolyMatrix, r: int | None = None, *, exhaustive: bool = False,
              symmetric: bool | None = None) -> TPReport:
    """Check every minor of order ``<= r`` for nonnegative coefficients.

    Minors are visited by increasing order, then lexicographic row set, then
    lexicographic column set.  Each order-k minor is expanded along its first
    row over cached order-(k-1) minors.  For symmetric input only row sets
    ``R <= C`` are computed (``det[R,C] = det[C,R]``); mirrored violations are
    still reported in exhaustive mode.
    """
    nr, nc = m.shape
    full = min(nr, nc)
    if r is None:
        r = min(4, full)
    if r < 1:
        raise ValueError("order bound must be >= 1")
    order = min(r, full)
    if symmetric is None:
        symmetric = m.is_symmetric()
    K = polyring.K
    vs = m.vs
    t = [[x._t for x in row] for row in m.rows]
    violations: list[Violation] = []
    count = 0
    prev: dict = {}
    for k in range(1, order + 1):
        cur: dict = {}
        row_sets = list(itertools.combinations(range(nr), k))
        col_sets = list(itertools.combinations(range(nc), k))
        for R in row_sets:
            top = t[R[0]]
            rest = R[1:]
            for C in col_sets:
                if symmetric and C < R:
                    d = cur[(R, C)] = cur[(C, R)]
                    if d and not K.all_nonnegative(d) and exhaustive:
                        violations.append(Violation(R, C, Polynomial(vs, d)))
                    continue
                if k == 1:
                    d = dict(top[C[0]])
                else:
                    acc: dict = {}
                    for pos, j in enumerate(C):
                        a = top[j]
                        if not a:
                            continue
                        sub = prev.get((rest, C[:pos] + C[pos + 1:]))
                        if sub:
                            K.addmul_into(acc, a, sub, -1 if pos & 1 else 1)
                    d = K.prune(acc)
                count += 1
                cur[(R, C)] = d
                if d and not K.all_nonnegative(d):
                    violations.append(Violation(R, C, Polynomial(vs, d)))
                    if not exhaustive:
                        return TPReport("fail", k, violations, count)
        prev = cur
    return TPReport(_verdict(violations, order, full), order, violations, count)


def check_tridiagonal_xtp(j: PolyMatrix, N: int | None = None) -> TPReport:
    """x-TP test for a tridiagonal matrix via its consecutive principal minors.

    ``det J[s..s+k-1]`` obeys the three-term recurrence
    ``D_{k} = a_{k,k} D_{k-1} - a_{k,k-1} a_{k-1,k} D_{k-2}`` along each block.
    """
    n, c = j.shape
    if n != c:
        raise ValueError("tridiagonal check needs a square matrix")
    if not j.is_tridiagonal():
        raise ValueError("matrix is not tridiagonal")
    for i, row in enumerate(j.rows):
        for jj, x in enumerate(row):
            if not x.is_x_nonnegative():
                raise ValueError(f"entry ({i},{jj}) = {x} is not x-nonnegative")
    if N is not None:
        if N > n:
            raise ValueError(f"N={N} exceeds matrix order {n}")
        n = N
    vs = j.vs
    one = vs.one()
    violations = []
    count = 0
    for s in range(n):
        d2, d1 = None, one
        for e in range(s, n):
            if e == s:
                d = j.rows[e][e]
            else:
                d = j.rows[e][e] * d1 - j.rows[e][e - 1] * j.rows[e - 1][e] * (d2 if d2 is not None else one)
            count += 1
            d2, d1 = d1, d
            if not d.is_x_nonnegative():
                violations.append(Violation(tuple(range(s, e + 1)), tuple(range(s, e + 1)), d))
                return TPReport("fail", e - s + 1, violations, count)
    return TPReport("pass", n, violations, count)


@dataclass
class LemmaKeyReport:
    passed: bool
    failure: tuple | None = None  # (condition, index, polynomial)

    def to_json(self) -> dict:
        if self.passed:
            return {"verdict": "pass"}
        cond, idx, poly = self.failure
        return {"verdict": "fail", "condition": cond, "index": idx, "value": poly.to_text()}


def check_lemma_key(w: WeightSystem, K: int) -> LemmaKeyReport:
    """Sufficient conditions (i)-(iii) for a tridiagonal Jacobi matrix to be x-TP.

    (i)   s_0 - 1 >= 0
    (ii)  s_i s_{i+1} - t_{i+1} r_{i+1} >= 0
    (iii) s_{i+1} - t_{i+1} r_{i+1} - 1 >= 0          for 0 <= i < K
    """
    if K < 1:
        raise ValueError("depth must be >= 1")
    one = w.varset.one()
    c1 = w.s(0) - one
    if not c1.is_x_nonnegative():
        return LemmaKeyReport(False, ("i", 0, c1))
    for i in range(K):
        tr = w.t(i + 1) * w.r(i + 1)
        c2 = w.s(i) * w.s(i + 1) - tr
        if not c2.is_x_nonnegative():
            return LemmaKeyReport(False, ("ii", i, c2))
        c3 = w.s(i + 1) - tr - one
        if not c3.is_x_nonnegative():
            return LemmaKeyReport(False, ("iii", i, c3))
    return LemmaKeyReport(True)


def check_bc_decomposition(b: WeightFormula, c: WeightFormula, w: WeightSystem, K: int) -> bool:
    """True iff ``s_n = b_{n+1} + c_{n+1}``, ``t_n = c_n b_{n+1}``, ``r_n = 1`` for ``n <= K``."""
    bv = [None] + [eval_weight(b, i) for i in range(1, K + 2)]
    cv = [None] + [eval_weight(c, i) for i in range(1, K + 2)]
    for n in range(K + 1):
        if w.s(n) != bv[n + 1] + cv[n + 1]:
            return False
        if n >= 1:
            if w.t(n) != cv[n] * bv[n + 1]:
                return False
            if w.r(n) != 1:
                return False
    return True


def bc_jacobi(b: WeightFormula, c: WeightFormula, N: int) -> PolyMatrix:
    """The ``N x N`` matrix ``J^{b,c}``: diagonal ``b_i + c_i``, super 1, sub ``b_{i+1} c_i``."""
    vs = b.varset
    z = vs.zero()
    bv = [None] + [eval_weight(b, i) for i in range(1, N + 1)]
    cv = [None] + [eval_weight(c, i) for i in range(1, N + 1)]
    rows = []
    for i in range(1, N + 1):
        row = [z] * N
        row[i - 1] = bv[i] + cv[i]
        if i < N:
            row[i] = vs.one()
        if i > 1:
            row[i - 2] = bv[i] * cv[i - 1]
        rows.append(row)
    return PolyMatrix(vs, rows)


@dataclass
class SLCXReport:
    passed: bool
    failure: tuple | None = None  # (n, m, difference)

    def to_json(self) -> dict:
        if self.passed:
            return {"verdict": "pass"}
        n, m, d = self.failure
        return {"verdict": "fail", "n": n, "m": m, "difference": d.to_text()}


def check_slcx(seq: Sequence[Polynomial], *, displayed: bool = False) -> SLCXReport:
    """Strong q-log-convexity: ``f_{m-1} f_{n+1} - f_m f_n >= 0`` for ``n >= m >= 1``.

    This is the convex orientation (Catalan numbers pass, and it follows from
    order-2 Hankel positivity).  ``displayed=True`` tests the literal form
    ``f_n f_m - f_{n-1} f_{m+1} >= 0`` instead, which is a concavity condition.
    """
    if len(seq) < 3:
        raise ValueError("need at least three terms")
    last = len(seq) - 1
    for m in range(1, last):
        for n in range(m, last + 1):
            if displayed:
                big, small = seq[n] * seq[m], seq[n - 1] * seq[m + 1]
            elif n + 1 <= last:
                big, small = seq[m - 1] * seq[n + 1], seq[m] * seq[n]
            else:
                continue
            if not geq_x(big, small):
                return SLCXReport(False, (n, m, big - small))
    return SLCXReport(True)


def minor(m: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    return determinant(m.submatrix(rows, cols))
