"""Exact sparse multivariate polynomials over the integers.

Monomials are stored as packed integer keys::

    key = deg << (n*B) | e_0 << ((n-1)*B) | ... | e_{n-1}

with ``B = EXP_BITS`` bits per exponent field and the total degree in the top
field.  Integer order on keys is therefore graded lexicographic order (higher
total degree first, then ``x_0 > x_1 > ...``), and monomial multiplication is
key addition.  The hot loops live in ``_kernels`` (Cython) with a pure-Python
fallback in ``_kernels_py``; set ``CATLIKE_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import heapq
import itertools
import json
import os
import re
from typing import Iterable, Mapping, Sequence

if os.environ.get("CATLIKE_PURE_PYTHON") == "1":
    from . import _kernels_py as K
else:
    try:
        from . import _kernels as K
    except ImportError:  # extension not built
        from . import _kernels_py as K

KERNEL = K.IMPLEMENTATION

EXP_BITS = 32
_FIELD = (1 << EXP_BITS) - 1


class VarSetMismatch(ValueError):
    pass


class InexactDivision(ArithmeticError):
    """An exact division left a remainder.  Inside Bareiss this is a bug."""


class PolyParseError(ValueError):
    pass


class VarSet:
    """Ordered, immutable tuple of distinct variable names."""

    __slots__ = ("names", "_index", "_n", "_shift")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for nm in names:
            if not isinstance(nm, str) or not nm:
                raise ValueError(f"invalid variable name {nm!r}")
        self.names = names
        self._index = {nm: i for i, nm in enumerate(names)}
        self._n = len(names)
        self._shift = self._n * EXP_BITS

    def __len__(self):
        return self._n

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarSet({list(self.names)!r})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}; have {list(self.names)}") from None

    # -- packing -------------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self._n:
            raise ValueError(f"exponent vector {tuple(exps)} has wrong arity for {self}")
        key = 0
        deg = 0
        for e in exps:
            if e < 0 or e > _FIELD:
                raise ValueError(f"exponent {e} out of range")
            key = (key << EXP_BITS) | e
            deg += e
        if deg > _FIELD:
            raise ValueError("total degree out of range")
        return key | (deg << self._shift)

    def unpack(self, key: int) -> tuple[int, ...]:
        out = [0] * self._n
        for i in range(self._n - 1, -1, -1):
            out[i] = key & _FIELD
            key >>= EXP_BITS
        return tuple(out)

    def key_degree(self, key: int) -> int:
        return key >> self._shift

    def divides(self, kd: int, kn: int) -> bool:
        """True iff monomial ``kd`` divides monomial ``kn``."""
        for _ in range(self._n):
            if (kd & _FIELD) > (kn & _FIELD):
                return False
            kd >>= EXP_BITS
            kn >>= EXP_BITS
        return True

    # -- constructors ----------------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: 1})

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, {0: int(c)} if c else {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self._n
        e[self.index(name)] = 1
        return Polynomial(self, {self.pack(e): 1})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(nm) for nm in self.names)

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {self.pack(exps): int(coeff)} if coeff else {})

    def from_terms(self, terms: Mapping[Sequence[int], int] | Iterable[tuple[Sequence[int], int]]) -> "Polynomial":
        items = terms.items() if isinstance(terms, Mapping) else terms
        t: dict[int, int] = {}
        for exps, c in items:
            k = self.pack(exps)
            t[k] = t.get(k, 0) + int(c)
        return Polynomial(self, K.prune(t))

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)


class Polynomial:
    """Immutable polynomial; ``_t`` maps packed monomial keys to nonzero ints."""

    __slots__ = ("vs", "_t", "_hash")

    def __init__(self, vs: VarSet, table: dict[int, int]):
        self.vs = vs
        self._t = table
        self._hash = None

    # -- basic protocol --------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.vs != self.vs:
                raise VarSetMismatch(f"{self.vs} vs {other.vs}")
            return other
        if isinstance(other, int):
            return self.vs.const(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.vs, K.add(self._t, o._t))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.vs, K.sub(self._t, o._t))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.vs, K.sub(o._t, self._t))

    def __neg__(self):
        return Polynomial(self.vs, K.neg(self._t))

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.vs, K.scale(self._t, other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Polynomial(self.vs, K.mul(self._t, o._t))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        if e and self._t and self.degree() * e > _FIELD:
            raise ValueError("power exceeds exponent range")
        result = self.vs.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self._t == ({0: other} if other else {})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.vs == other.vs and self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vs.names, frozenset(self._t.items())))
        return self._hash

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    def __repr__(self):
        return f"Polynomial({self.to_text()!r}, vars={list(self.vs.names)})"

    def __str__(self):
        return self.to_text()

    # -- queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> int:
        return self._t.get(0, 0)

    def coeff(self, exps: Sequence[int]) -> int:
        return self._t.get(self.vs.pack(exps), 0)

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in canonical order: ascending total degree, then descending lex."""
        vs = self.vs
        keyed = sorted(self._t.items(), key=lambda kc: (vs.key_degree(kc[0]), -kc[0]))
        return [(vs.unpack(k), c) for k, c in keyed]

    def degree(self) -> int:
        if not self._t:
            raise ValueError("degree of the zero polynomial is undefined")
        return self.vs.key_degree(max(self._t))

    def degrees(self) -> set[int]:
        kd = self.vs.key_degree
        return {kd(k) for k in self._t}

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        k = max(self._t)
        return self.vs.unpack(k), self._t[k]

    def is_x_nonnegative(self) -> bool:
        return K.all_nonnegative(self._t)

    def negative_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [(e, c) for e, c in self.terms() if c < 0]

    # -- evaluation ------------------------------------------------------------
    def evaluate(self, point: Mapping[str, int]) -> int:
        missing = [nm for nm in self.vs.names if nm not in point]
        if missing:
            raise KeyError(f"assignment missing variables {missing}")
        vals = [int(point[nm]) for nm in self.vs.names]
        total = 0
        for k, c in self._t.items():
            term = c
            for v, e in zip(vals, self.vs.unpack(k)):
                if e:
                    term *= v ** e
            total += term
        return total

    def specialize(self, point: Mapping[str, int]) -> "Polynomial":
        """Substitute integers for some variables; result lives on the remaining ones."""
        for nm in point:
            self.vs.index(nm)
        keep = [i for i, nm in enumerate(self.vs.names) if nm not in point]
        new_vs = VarSet(self.vs.names[i] for i in keep)
        vals = [point.get(nm) for nm in self.vs.names]
        t: dict[int, int] = {}
        for k, c in self._t.items():
            exps = self.vs.unpack(k)
            for v, e in zip(vals, exps):
                if v is not None and e:
                    c *= int(v) ** e
            nk = new_vs.pack([exps[i] for i in keep])
            t[nk] = t.get(nk, 0) + c
        return Polynomial(new_vs, K.prune(t))

    def to_varset(self, vs: VarSet) -> "Polynomial":
        """Re-express over ``vs``, which must contain every variable used here."""
        if vs == self.vs:
            return self
        pos = [vs.index(nm) if nm in vs else None for nm in self.vs.names]
        t = {}
        for k, c in self._t.items():
            new = [0] * len(vs)
            for nm, p, e in zip(self.vs.names, pos, self.vs.unpack(k)):
                if e:
                    if p is None:
                        raise VarSetMismatch(f"variable {nm} not in {vs}")
                    new[p] = e
            t[vs.pack(new)] = c
        return Polynomial(vs, t)

    # -- serialization -----------------------------------------------------------
    def to_text(self, coeff_sep: str = "") -> str:
        """Compact text such as ``1+3q+q^2``; ``coeff_sep="*"`` gives ``3*q``."""
        if not self._t:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = "*".join(
                nm if e == 1 else f"{nm}^{e}"
                for nm, e in zip(self.vs.names, exps) if e
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{coeff_sep}{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("-" if c < 0 else "+") + body)
        return "".join(parts)

    def to_json(self) -> dict:
        return {
            "vars": list(self.vs.names),
            "terms": [{"e": list(e), "c": str(c)} for e, c in self.terms()],
        }

    @classmethod
    def from_json(cls, obj: dict | str, vs: VarSet | None = None) -> "Polynomial":
        if isinstance(obj, str):
            obj = json.loads(obj)
        own = VarSet(obj["vars"])
        p = own.from_terms((t["e"], int(t["c"])) for t in obj["terms"])
        return p.to_varset(vs) if vs is not None else p


def geq_x(f: Polynomial, g: Polynomial) -> bool:
    """``f >=_x g``: every coefficient of ``f - g`` is nonnegative."""
    if f.vs != g.vs:
        raise VarSetMismatch(f"{f.vs} vs {g.vs}")
    return K.all_nonnegative(K.sub(f._t, g._t))


def is_x_nonnegative(f: Polynomial) -> bool:
    return f.is_x_nonnegative()


def divexact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Exact quotient ``f / g``; raises ``InexactDivision`` on any remainder."""
    if f.vs != g.vs:
        raise VarSetMismatch(f"{f.vs} vs {g.vs}")
    if not g._t:
        raise ZeroDivisionError("division by the zero polynomial")
    if not f._t:
        return f
    vs = f.vs
    if len(g._t) == 1:
        (kg, cg), = g._t.items()
        out = {}
        for k, c in f._t.items():
            qc, rc = divmod(c, cg)
            if rc or not vs.divides(kg, k):
                raise InexactDivision(f"({f}) / ({g}) is not exact")
            out[k - kg] = qc
        return Polynomial(vs, out)
    kg = max(g._t)
    cg = g._t[kg]
    rem = dict(f._t)
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict[int, int] = {}
    gitems = list(g._t.items())
    while rem:
        k = -heapq.heappop(heap)
        c = rem.get(k)
        if not c:
            continue
        qc, rc = divmod(c, cg)
        if rc or not vs.divides(kg, k):
            raise InexactDivision(f"({f}) / ({g}) is not exact")
        qk = k - kg
        quot[qk] = qc
        for gk, gc in gitems:
            nk = qk + gk
            old = rem.get(nk)
            v = (old or 0) - qc * gc
            if v:
                if old is None:
                    heapq.heappush(heap, -nk)
                rem[nk] = v
            elif old is not None:
                del rem[nk]
    return Polynomial(vs, quot)


# -- text parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-]))")


def _split_ident(ident: str, vs: VarSet) -> list[str] | None:
    if ident in vs:
        return [ident]
    for nm in sorted(vs.names, key=len, reverse=True):
        if ident.startswith(nm):
            rest = _split_ident(ident[len(nm):], vs)
            if rest is not None:
                return [nm] + rest
    return None


def parse_poly(text: str, vs: VarSet) -> Polynomial:
    """Parse ``1 + 3q + q^2`` style text.  ``*`` and ``^1`` are optional."""
    pos = 0
    text = text.strip()
    if not text:
        raise PolyParseError("empty polynomial text")
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r} at column {pos + 1}")
        if m.group(1):
            toks.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            parts = _split_ident(m.group(2), vs)
            if parts is None:
                raise PolyParseError(f"unknown variable {m.group(2)!r} at column {m.start(2) + 1}")
            toks.extend(("var", p, m.start(2)) for p in parts)
        elif m.group(3):
            toks.append(("^", None, m.start(3)))
        elif m.group(4):
            toks.append(("*", None, m.start(4)))
        else:
            toks.append(("sign", m.group(5), m.start(5)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    result: dict[int, int] = {}
    i = 0
    n = len(toks)
    first = True
    while i < n:
        sign = 1
        if toks[i][0] == "sign":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError(f"expected '+' or '-' at column {toks[i][2] + 1}")
        first = False
        coeff = sign
        exps = [0] * len(vs)
        got = False
        while i < n and toks[i][0] in ("num", "var", "*"):
            kind, val, col = toks[i]
            if kind == "*":
                if not got:
                    raise PolyParseError(f"dangling '*' at column {col + 1}")
                i += 1
                if i >= n or toks[i][0] not in ("num", "var"):
                    raise PolyParseError(f"expected factor after '*' at column {col + 1}")
                continue
            i += 1
            power = 1
            if i < n and toks[i][0] == "^":
                i += 1
                if i >= n or toks[i][0] != "num":
                    raise PolyParseError(f"expected exponent at column {col + 1}")
                power = toks[i][1]
                i += 1
            if kind == "num":
                coeff *= val ** power
            else:
                exps[vs.index(val)] += power
            got = True
        if not got:
            col = toks[i][2] + 1 if i < n else len(text)
            raise PolyParseError(f"expected a term at column {col}")
        k = vs.pack(exps)
        result[k] = result.get(k, 0) + coeff
    return Polynomial(vs, K.prune(result))


# -- matrices ----------------------------------------------------------------


class PolyMatrix:
    """Dense rectangular matrix of Polynomials over one VarSet."""

    __slots__ = ("vs", "rows")

    def __init__(self, vs: VarSet, rows: Sequence[Sequence[Polynomial | int]]):
        self.vs = vs
        out = []
        width = None
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, int):
                    x = vs.const(x)
                elif x.vs != vs:
                    raise VarSetMismatch(f"entry over {x.vs}, matrix over {vs}")
                row.append(x)
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged matrix rows")
            out.append(tuple(row))
        self.rows = tuple(out)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.vs == other.vs and self.rows == other.rows

    def __hash__(self):
        return hash((self.vs, self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"PolyMatrix([{body}])"

    @classmethod
    def identity(cls, vs: VarSet, n: int) -> "PolyMatrix":
        return cls(vs, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, vs: VarSet, entries: Sequence[Polynomial]) -> "PolyMatrix":
        n = len(entries)
        z = vs.zero()
        return cls(vs, [[entries[i] if i == j else z for j in range(n)] for i in range(n)])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.vs, list(zip(*self.rows)) if self.rows else [])

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.vs != self.vs:
            raise VarSetMismatch(f"{self.vs} vs {other.vs}")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc: dict[int, int] = {}
                for a, b in zip(r, c):
                    if a._t and b._t:
                        K.addmul_into(acc, a._t, b._t, 1)
                row.append(Polynomial(self.vs, K.prune(acc)))
            out.append(row)
        return PolyMatrix(self.vs, out)

    def is_symmetric(self) -> bool:
        n, m = self.shape
        return n == m and all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i))

    def is_tridiagonal(self) -> bool:
        return all(not x._t for i, r in enumerate(self.rows) for j, x in enumerate(r) if abs(i - j) > 1)

    def evaluate(self, point: Mapping[str, int]) -> list[list[int]]:
        return [[x.evaluate(point) for x in r] for r in self.rows]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return submatrix(self, rows, cols)

    def to_json(self) -> dict:
        return {"vars": list(self.vs.names),
                "rows": [[x.to_json()["terms"] for x in r] for r in self.rows]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "PolyMatrix":
        if isinstance(obj, str):
            obj = json.loads(obj)
        vs = VarSet(obj["vars"])
        rows = []
        for r in obj["rows"]:
            row = []
            for x in r:
                if isinstance(x, dict):  # full Polynomial JSON
                    row.append(Polynomial.from_json(x, vs))
                elif isinstance(x, str):
                    row.append(vs.parse(x))
                else:
                    row.append(vs.from_terms((t["e"], int(t["c"])) for t in x))
            rows.append(row)
        return cls(vs, rows)


def _check_indices(idx: Sequence[int], bound: int, what: str):
    prev = -1
    for i in idx:
        if not isinstance(i, int) or i < 0 or i >= bound:
            raise IndexError(f"{what} index {i} out of range 0..{bound - 1}")
        if i <= prev:
            raise ValueError(f"{what} indices must be strictly increasing: {list(idx)}")
        prev = i


def submatrix(m: PolyMatrix, rows: Sequence[int], cols: Sequence[int]) -> PolyMatrix:
    """Rows/columns selected by strictly increasing 0-based index lists."""
    if len(rows) != len(cols):
        raise ValueError("row and column index lists differ in length")
    _check_indices(rows, m.nrows, "row")
    _check_indices(cols, m.ncols, "column")
    return PolyMatrix(m.vs, [[m.rows[i][j] for j in cols] for i in rows])


# -- determinants ----------------------------------------------------------------

def _cofactor_det(vs: VarSet, tables: list[list[dict]]) -> dict:
    """Laplace expansion along the top row, memoizing minors of the lower rows."""
    n = len(tables)
    # minors[cols] = det of the bottom len(cols) rows restricted to cols
    minors: dict[tuple[int, ...], dict] = {(j,): tables[n - 1][j] for j in range(n) if tables[n - 1][j]}
    for size in range(2, n + 1):
        row = tables[n - size]
        nxt: dict[tuple[int, ...], dict] = {}
        for cols in itertools.combinations(range(n), size):
            acc: dict = {}
            for pos, j in enumerate(cols):
                a = row[j]
                if not a:
                    continue
                sub = minors.get(cols[:pos] + cols[pos + 1:])
                if sub:
                    K.addmul_into(acc, a, sub, -1 if pos & 1 else 1)
            acc = K.prune(acc)
            if acc:
                nxt[cols] = acc
        minors = nxt
    return minors.get(tuple(range(n)), {})


def _bareiss_det(m: PolyMatrix) -> Polynomial:
    vs = m.vs
    n = m.nrows
    a = [list(r) for r in m.rows]
    sign = 1
    prev = vs.one()
    for k in range(n - 1):
        candidates = [i for i in range(k, n) if a[i][k]._t]
        if not candidates:
            return vs.zero()
        p = min(candidates, key=lambda i: (len(a[i][k]), i))
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                acc: dict = {}
                if piv._t and a[i][j]._t:
                    K.addmul_into(acc, piv._t, a[i][j]._t, 1)
                if aik._t and a[k][j]._t:
                    K.addmul_into(acc, aik._t, a[k][j]._t, -1)
                num = Polynomial(vs, K.prune(acc))
                a[i][j] = divexact(num, prev) if k else num
        prev = piv
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def determinant(m: PolyMatrix) -> Polynomial:
    """Exact determinant: cofactor expansion up to order 4, Bareiss above."""
    n, c = m.shape
    if n != c:
        raise ValueError(f"determinant of non-square {n}x{c} matrix")
    if n == 0:
        return m.vs.one()
    if n <= 4:
        return Polynomial(m.vs, _cofactor_det(m.vs, [[x._t for x in r] for r in m.rows]))
    return _bareiss_det(m)


def permutation_determinant(m: PolyMatrix) -> Polynomial:
    """Leibniz-formula determinant; an independent oracle, O(n!)."""
    n, c = m.shape
    if n != c:
        raise ValueError(f"determinant of non-square {n}x{c} matrix")
    acc: dict = {}
    vs = m.vs
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = {0: 1}
        for i, j in enumerate(perm):
            term = K.mul(term, m.rows[i][j]._t)
            if not term:
                break
        if term:
            acc = K.sub(acc, term) if inv & 1 else K.add(acc, term)
    return Polynomial(vs, acc)
