"""Truncated power series with polynomial coefficients, and Riordan-array checks.

The series variable is kept outside the polynomial ring: a ``PolySeries`` is
just the list ``c_0..c_T`` of coefficient polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polyring import PolyMatrix, Polynomial, VarSet
from .recmatrix import build_triangle
from .weightdsl import WeightSystem, parse_weight


class SeriesOrderMismatch(ValueError):
    pass


@dataclass(frozen=True)
class PolySeries:
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        vs = self.coeffs[0].vs
        if any(c.vs != vs for c in self.coeffs):
            raise ValueError("series coefficients must share one VarSet")

    @classmethod
    def of(cls, vs: VarSet, coeffs: Sequence, T: int | None = None) -> "PolySeries":
        """Build from polynomials/ints, zero-padding (or truncating) to order ``T``."""
        cs = [c if isinstance(c, Polynomial) else vs.const(c) for c in coeffs]
        if T is not None:
            cs = (cs + [vs.zero()] * (T + 1))[:T + 1]
        return cls(tuple(cs))

    @property
    def vs(self) -> VarSet:
        return self.coeffs[0].vs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Polynomial:
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other: "PolySeries") -> "PolySeries":
        _same_order(self, other)
        return PolySeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "PolySeries") -> "PolySeries":
        _same_order(self, other)
        return PolySeries(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, PolySeries):
            return series_mul(self, other)
        return PolySeries(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def shift(self, j: int = 1) -> "PolySeries":
        """Multiply by ``x^j`` and truncate."""
        z = self.vs.zero()
        return PolySeries(tuple(([z] * j + list(self.coeffs))[:len(self.coeffs)]))

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, obj: list, vs: VarSet | None = None) -> "PolySeries":
        return cls(tuple(Polynomial.from_json(c, vs) for c in obj))


def _same_order(f: PolySeries, g: PolySeries):
    if f.order != g.order:
        raise SeriesOrderMismatch(f"truncation orders differ: {f.order} vs {g.order}")
    if f.vs != g.vs:
        raise ValueError("series over different VarSets")


def series_mul(f: PolySeries, g: PolySeries) -> PolySeries:
    _same_order(f, g)
    T = f.order
    out = []
    for n in range(T + 1):
        acc = f.vs.zero()
        for i in range(n + 1):
            if f[i] and g[n - i]:
                acc = acc + f[i] * g[n - i]
        out.append(acc)
    return PolySeries(tuple(out))


def series_inverse(f: PolySeries) -> PolySeries:
    if f[0] != 1:
        raise ValueError(f"series inverse needs constant coefficient 1, got {f[0]}")
    g = [f.vs.one()]
    for n in range(1, f.order + 1):
        acc = f.vs.zero()
        for i in range(1, n + 1):
            if f[i]:
                acc = acc - f[i] * g[n - i]
        g.append(acc)
    return PolySeries(tuple(g))


@dataclass(frozen=True)
class RiordanSpec:
    """Parameters of the recursive matrix ``R(a,b;c,e)``."""
    a: Polynomial
    b: Polynomial
    c: Polynomial
    e: Polynomial

    def __post_init__(self):
        vs = self.a.vs
        for name in ("a", "b", "c", "e"):
            p = getattr(self, name)
            if p.vs != vs:
                raise ValueError("Riordan parameters must share one VarSet")
            if not p.is_x_nonnegative():
                raise ValueError(f"Riordan parameter {name} = {p} is not x-nonnegative")

    @property
    def vs(self) -> VarSet:
        return self.a.vs

    def weights(self) -> WeightSystem:
        """The weight system ``s_0=a, t_1=b, s_k=c, t_k=e, r=1``."""
        vs = self.vs
        a, b, c, e = (p.to_text("*") for p in (self.a, self.b, self.c, self.e))
        return WeightSystem(vs, parse_weight("1", vs),
                            parse_weight(f"k=0: {a}; else: {c}", vs),
                            parse_weight(f"k=1: {b}; else: {e}", vs))

    def to_json(self) -> dict:
        return {"vars": list(self.vs.names),
                **{n: getattr(self, n).to_text() for n in ("a", "b", "c", "e")}}


def solve_h(spec: RiordanSpec, T: int) -> PolySeries:
    """Coefficients of ``h = 1 + c x h + e x^2 h^2``."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    vs = spec.vs
    h = [vs.one()]
    for n in range(1, T + 1):
        acc = spec.c * h[n - 1]
        if n >= 2 and spec.e:
            conv = vs.zero()
            for i in range(n - 1):
                conv = conv + h[i] * h[n - 2 - i]
            acc = acc + spec.e * conv
        h.append(acc)
    return PolySeries(tuple(h))


def solve_d(spec: RiordanSpec, T: int) -> PolySeries:
    """Coefficients of ``d = 1 / (1 - x (a + b x h))``."""
    h = solve_h(spec, T)
    vs = spec.vs
    inner = PolySeries.of(vs, [spec.a], T) + (h * spec.b).shift(1)
    one = PolySeries.of(vs, [1], T)
    return series_inverse(one - inner.shift(1))


def verify_riordan_column(spec: RiordanSpec, w: WeightSystem | None, T: int) -> bool:
    """``solve_d`` coefficients agree with the triangle's first column up to ``x^T``."""
    w = spec.weights() if w is None else w
    d = solve_d(spec, T)
    col = build_triangle(w, T).column(0)
    return list(d.coeffs) == col


def verify_AZ_recurrences(m: PolyMatrix, Z: Sequence[Polynomial], A: Sequence[Polynomial]) -> bool:
    """Check ``m_{n+1,0} = sum z_j m_{n,j}`` and ``m_{n+1,k+1} = sum a_j m_{n,k+j}``."""
    n_rows, n_cols = m.shape
    vs = m.vs

    def entry(i, j):
        return m[i, j] if 0 <= j < n_cols else vs.zero()

    def lift(c):
        return c if isinstance(c, Polynomial) else vs.const(c)

    Z = [lift(z) for z in Z]
    A = [lift(a) for a in A]
    for n in range(n_rows - 1):
        want = vs.zero()
        for j, z in enumerate(Z):
            want = want + z * entry(n, j)
        if m[n + 1, 0] != want:
            return False
        for k in range(min(n + 1, n_cols - 1)):
            want = vs.zero()
            for j, a in enumerate(A):
                want = want + a * entry(n, k + j)
            if m[n + 1, k + 1] != want:
                return False
    return True


def bell_gf_series(T: int, vs: VarSet | None = None) -> PolySeries:
    """``1 + sum_{k>=1} q^k x^k / prod_{i<=k} (1 - i p x)`` truncated at ``x^T``."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    vs = vs or VarSet(["p", "q"])
    p, q = vs.var("p"), vs.var("q")
    total = PolySeries.of(vs, [1], T)
    prod = PolySeries.of(vs, [1], T)
    for k in range(1, T + 1):
        prod = prod * PolySeries.of(vs, [1, -k * p], T)
        term = series_inverse(prod).shift(k) * q ** k
        total = total + term
    return total
