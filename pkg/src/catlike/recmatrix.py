"""Recursive triangles, Jacobi and Hankel matrices, and the Motzkin-path oracle."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import polyring
from .polyring import PolyMatrix, Polynomial, VarSet
from .weightdsl import WeightSystem


@dataclass(frozen=True)
class RecursiveTriangle:
    """Rows ``0..size`` of ``m_{n,k}``; ``rows[n]`` holds ``m_{n,0..n}``."""

    weights: WeightSystem
    size: int
    rows: tuple

    @property
    def varset(self) -> VarSet:
        return self.weights.varset

    def entry(self, n: int, k: int) -> Polynomial:
        if 0 <= k <= n <= self.size:
            return self.rows[n][k]
        if n > self.size or n < 0:
            raise IndexError(f"row {n} outside triangle of size {self.size}")
        return self.varset.zero()

    def column(self, k: int = 0) -> list[Polynomial]:
        return [self.rows[n][k] for n in range(k, self.size + 1)]

    def matrix(self, n: int | None = None) -> PolyMatrix:
        """Leading ``n x n`` block (default: the whole lower-triangular array)."""
        n = self.size + 1 if n is None else n
        if n > self.size + 1:
            raise ValueError(f"block of order {n} exceeds triangle rows 0..{self.size}")
        z = self.varset.zero()
        return PolyMatrix(self.varset, [[self.rows[i][j] if j <= i else z for j in range(n)]
                                        for i in range(n)])

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.rows]

    def to_csv(self, point: Mapping[str, int]) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for row in self.rows:
            w.writerow([x.evaluate(point) for x in row])
        return buf.getvalue()


def build_triangle(w: WeightSystem, N: int) -> RecursiveTriangle:
    """Rows ``0..N`` of ``m_{n+1,k} = r_k m_{n,k-1} + s_k m_{n,k} + t_{k+1} m_{n,k+1}``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    vs = w.varset
    K = polyring.K
    rows = [(vs.one(),)]
    for n in range(N):
        prev = rows[-1]
        row = []
        for k in range(n + 2):
            acc: dict = {}
            if k >= 1:
                K.addmul_into(acc, w.r(k)._t, prev[k - 1]._t, 1)
            if k <= n:
                K.addmul_into(acc, w.s(k)._t, prev[k]._t, 1)
            if k + 1 <= n:
                K.addmul_into(acc, w.t(k + 1)._t, prev[k + 1]._t, 1)
            row.append(Polynomial(vs, K.prune(acc)))
        rows.append(tuple(row))
    return RecursiveTriangle(w, N, tuple(rows))


def motzkin_oracle(w: WeightSystem, n: int, k: int, *, max_height: int | None = None) -> Polynomial:
    """Sum of path weights over Motzkin prefixes from (0,0) to (n,k).

    Paths are enumerated one by one (no memoization) so this shares nothing
    with ``build_triangle``.  ``max_height`` optionally bounds the path height.
    """
    vs = w.varset
    if n < 0 or k < 0 or k > n:
        return vs.zero()
    total = [vs.zero()]

    def walk(step, level, weight):
        left = n - step
        if left == 0:
            if level == k:
                total[0] = total[0] + weight
            return
        # up-step ending at level+1 weighs r_{level+1}
        if abs(level + 1 - k) <= left - 1 and (max_height is None or level + 1 <= max_height):
            walk(step + 1, level + 1, weight * w.r(level + 1))
        # level-step at this level weighs s_level
        if abs(level - k) <= left - 1:
            walk(step + 1, level, weight * w.s(level))
        # down-step ending at level-1 weighs t_level
        if level > 0 and abs(level - 1 - k) <= left - 1:
            walk(step + 1, level - 1, weight * w.t(level))

    walk(0, 0, vs.one())
    return total[0]


def jacobi_matrix(w: WeightSystem, N: int) -> PolyMatrix:
    """``N x N`` tridiagonal: diagonal ``s_0..s_{N-1}``, super ``r``, sub ``t``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    vs = w.varset
    z = vs.zero()
    rows = []
    for i in range(N):
        row = [z] * N
        row[i] = w.s(i)
        if i + 1 < N:
            row[i + 1] = w.r(i + 1)
        if i >= 1:
            row[i - 1] = w.t(i)
        rows.append(row)
    return PolyMatrix(vs, rows)


@dataclass(frozen=True)
class HankelTruncation:
    sequence: tuple
    matrix: PolyMatrix


def hankel(seq: Sequence[Polynomial], N: int) -> HankelTruncation:
    if N < 1:
        raise ValueError("N must be at least 1")
    if len(seq) < 2 * N - 1:
        raise ValueError(f"Hankel truncation of order {N} needs {2 * N - 1} terms, got {len(seq)}")
    seq = tuple(seq[:2 * N - 1])
    vs = seq[0].vs
    return HankelTruncation(seq, PolyMatrix(vs, [[seq[i + j] for j in range(N)] for i in range(N)]))


def diagonal_T(w: WeightSystem, N: int) -> PolyMatrix:
    """``diag(T_0..T_{N-1})`` with ``T_0 = 1`` and ``T_k = t_1 ... t_k``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    entries = [w.varset.one()]
    for k in range(1, N):
        entries.append(entries[-1] * w.t(k))
    return PolyMatrix.diagonal(w.varset, entries)


def column_hankel(w: WeightSystem, N: int) -> HankelTruncation:
    """Hankel truncation of the first column ``(m_{n,0})``."""
    tri = build_triangle(w, 2 * N - 2)
    return hankel(tri.column(0), N)


def verify_factorization(w: WeightSystem, N: int) -> bool:
    """Exact check of ``H = M T M^t`` on the ``N x N`` truncations.

    The identity presumes ``r_k = 1``; for other ``r`` see ``verify_dual_factorization``.
    """
    tri = build_triangle(w, 2 * N - 2)
    H = hankel(tri.column(0), N).matrix
    M = tri.matrix(N)
    return H == M @ diagonal_T(w, N) @ M.transpose()


def dual_weights(w: WeightSystem) -> WeightSystem:
    """Swap the roles of ``r`` and ``t`` (path reversal)."""
    return WeightSystem(w.varset, w.t_formula, w.s_formula, w.r_formula)


def verify_dual_factorization(w: WeightSystem, N: int) -> bool:
    """``H = M D^t`` where ``D`` is the triangle of the dual weights; holds for any ``r``."""
    tri = build_triangle(w, 2 * N - 2)
    dual = build_triangle(dual_weights(w), N - 1)
    H = hankel(tri.column(0), N).matrix
    return H == tri.matrix(N) @ dual.matrix(N).transpose()
