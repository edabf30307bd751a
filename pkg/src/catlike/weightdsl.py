"""Piecewise weight formulas in the index ``k``.

Grammar::

    weightdef := clause { ";" clause } ;
    clause    := [ guard ":" ] expr ;
    guard     := "k" ("="|"<="|">="|"<"|">") nat | "else" ;
    expr      := term { ("+"|"-") term } ;
    term      := factor { "*" factor } ;
    factor    := atom [ "^" nat ] ;
    atom      := nat | "k" | ident | "(" expr ")" ;

A clause without a guard is a catch-all, as is ``else``.  Exactly one
catch-all is required and it must come last.  Expressions are evaluated with
the literal ``k`` substituted, so ``k^2*q`` at ``k=3`` is ``9q``.  A leading
unary minus on an atom is also accepted so printed forms re-parse.
"""
from __future__ import annotations

import json
import operator
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .polyring import Polynomial, VarSet


class WeightSyntaxError(ValueError):
    def __init__(self, msg, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} (line {line}, column {col})")
        self.line = line
        self.column = col


class WeightValidationError(ValueError):
    """An evaluated weight has a negative coefficient."""


_GUARD_OPS = {
    "=": operator.eq, "<=": operator.le, ">=": operator.ge,
    "<": operator.lt, ">": operator.gt,
}

_LEX = re.compile(r"(?P<ws>\s+)|(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)"
                  r"|(?P<op><=|>=|[-+*^()=<>:;])")


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        if not m:
            raise WeightSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group(kind)
            toks.append((kind, int(val) if kind == "num" else val, pos))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


# AST nodes are tuples: ("num", n) ("k",) ("var", name) ("add"|"sub"|"mul", a, b)
# ("neg", a) ("pow", a, n)


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = variables

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val or t[0] not in ("op", "id"):
            raise WeightSyntaxError(f"expected {val!r}, found {t[1]!r}", self.text, t[2])
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise WeightSyntaxError(msg, self.text, tok[2])

    def weightdef(self):
        clauses = [self.clause()]
        while self.peek()[1] == ";" and self.peek()[0] == "op":
            self.take()
            if self.peek()[0] == "end":  # tolerate a trailing ';'
                break
            clauses.append(self.clause())
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return clauses

    def clause(self):
        start = self.peek()
        guard = None
        if start[0] == "id" and start[1] == "else":
            self.take()
            self.expect(":")
            guard = ("else",)
        elif start[0] == "id" and start[1] == "k":
            nxt = self.toks[self.i + 1]
            if nxt[0] == "op" and nxt[1] in _GUARD_OPS:
                self.take()
                op = self.take()[1]
                n = self.take()
                if n[0] != "num":
                    self.fail("guard bound must be a nonnegative integer", n)
                self.expect(":")
                guard = (op, n[1])
        return guard, self.expr(), start[2]

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        node = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            n = self.take()
            if n[0] != "num":
                self.fail("exponent must be a nonnegative integer literal", n)
            node = ("pow", node, n[1])
        return node

    def atom(self):
        t = self.take()
        kind, val, pos = t
        if kind == "num":
            return ("num", val)
        if kind == "id":
            if val == "k":
                return ("k",)
            if val == "else":
                self.fail("'else' is only valid as a guard", t)
            if val not in self.vars:
                self.fail(f"unknown identifier {val!r}", t)
            return ("var", val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "op" and val == "-":
            # unary minus; allowed so that printed forms like "-1+k" round-trip
            return ("neg", self.factor())
        if kind == "end":
            self.fail("unexpected end of input", t)
        self.fail(f"unexpected {val!r}", t)


def _eval(node, k, vs):
    tag = node[0]
    if tag == "num":
        return node[1]
    if tag == "k":
        return k
    if tag == "var":
        return vs.var(node[1])
    if tag == "neg":
        return -_eval(node[1], k, vs)
    if tag == "pow":
        return _eval(node[1], k, vs) ** node[2]
    a = _eval(node[1], k, vs)
    b = _eval(node[2], k, vs)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    return a * b


_PREC = {"add": 1, "sub": 1, "mul": 2, "neg": 3, "pow": 4}


def _show(node, parent=0, right=False):
    tag = node[0]
    if tag == "num":
        return str(node[1])
    if tag == "k":
        return "k"
    if tag == "var":
        return node[1]
    prec = _PREC[tag]
    if tag == "pow":
        s = f"{_show(node[1], prec + 1)}^{node[2]}"
    elif tag == "neg":
        s = f"-{_show(node[1], prec)}"
    else:
        sym = {"add": "+", "sub": "-", "mul": "*"}[tag]
        s = f"{_show(node[1], prec)}{sym}{_show(node[2], prec, right=True)}"
    if prec < parent or (right and prec == parent and tag in ("add", "sub", "mul")):
        return f"({s})"
    return s


@dataclass(frozen=True)
class WeightFormula:
    varset: VarSet
    clauses: tuple  # ((guard, ast), ...); guard None/("else",) means catch-all
    source: str = field(default="", compare=False)

    def __str__(self):
        return format_weight(self)

    def clause_for(self, k: int):
        for guard, ast in self.clauses:
            if guard is None or guard[0] == "else" or _GUARD_OPS[guard[0]](k, guard[1]):
                return ast
        raise AssertionError("catch-all clause missing")  # excluded by the parser

    def __call__(self, k: int) -> Polynomial:
        return eval_weight(self, k)


def parse_weight(text: str, varset: VarSet) -> WeightFormula:
    if "k" in varset:
        raise ValueError("'k' is reserved for the index and cannot be a variable")
    p = _Parser(text, varset)
    raw = p.weightdef()
    clauses = []
    seen_catch_all = False
    for guard, ast, pos in raw:
        if seen_catch_all:
            raise WeightSyntaxError("clause after the catch-all clause", text, pos)
        if guard is None or guard[0] == "else":
            seen_catch_all = True
            guard = None
        clauses.append((guard, ast))
    if not seen_catch_all:
        raise WeightSyntaxError("missing catch-all clause ('else:' or an unguarded expression)",
                                text, len(text))
    return WeightFormula(varset, tuple(clauses), text)


def format_weight(f: WeightFormula) -> str:
    """Canonical text; ``parse_weight(format_weight(f))`` reproduces ``f``."""
    parts = []
    for guard, ast in f.clauses:
        body = _show(ast)
        if guard is None:
            parts.append(body if len(f.clauses) == 1 else f"else: {body}")
        else:
            parts.append(f"k{guard[0]}{guard[1]}: {body}")
    return "; ".join(parts)


def eval_weight(f: WeightFormula, k: int, *, validate: bool = True) -> Polynomial:
    if k < 0:
        raise ValueError("index k must be nonnegative")
    val = _eval(f.clause_for(k), k, f.varset)
    if isinstance(val, int):
        val = f.varset.const(val)
    if validate and not val.is_x_nonnegative():
        bad = val.negative_terms()[0]
        mono = f.varset.monomial(bad[0]).to_text()
        raise WeightValidationError(
            f"weight {f.source or format_weight(f)!r} at k={k} has negative coefficient "
            f"{bad[1]} on {mono}")
    return val


class WeightSystem:
    """The triple of weight sequences: r (from k=1), s (from k=0), t (from k=1)."""

    def __init__(self, varset: VarSet, r: WeightFormula, s: WeightFormula, t: WeightFormula):
        for f in (r, s, t):
            if f.varset != varset:
                raise ValueError("weight formulas must share the system's VarSet")
        self.varset = varset
        self.r_formula = r
        self.s_formula = s
        self.t_formula = t
        self._r = lru_cache(maxsize=None)(lambda k: eval_weight(r, k))
        self._s = lru_cache(maxsize=None)(lambda k: eval_weight(s, k))
        self._t = lru_cache(maxsize=None)(lambda k: eval_weight(t, k))

    @classmethod
    def from_strings(cls, variables, r: str, s: str, t: str) -> "WeightSystem":
        vs = variables if isinstance(variables, VarSet) else VarSet(variables)
        return cls(vs, parse_weight(r, vs), parse_weight(s, vs), parse_weight(t, vs))

    @classmethod
    def from_json(cls, obj) -> "WeightSystem":
        if isinstance(obj, str):
            obj = json.loads(obj)
        missing = [key for key in ("vars", "r", "s", "t") if key not in obj]
        if missing:
            raise ValueError(f"weight-system JSON missing keys {missing}")
        return cls.from_strings(obj["vars"], obj["r"], obj["s"], obj["t"])

    def to_json(self) -> dict:
        return {"vars": list(self.varset.names), "r": format_weight(self.r_formula),
                "s": format_weight(self.s_formula), "t": format_weight(self.t_formula)}

    def r(self, k: int) -> Polynomial:
        if k < 1:
            raise ValueError("r_k is indexed from k=1")
        return self._r(k)

    def s(self, k: int) -> Polynomial:
        return self._s(k)

    def t(self, k: int) -> Polynomial:
        if k < 1:
            raise ValueError("t_k is indexed from k=1")
        return self._t(k)

    def validate(self, upto: int):
        """Evaluate every weight with index <= ``upto`` (raises on a negative one)."""
        for k in range(upto + 1):
            self.s(k)
            if k:
                self.r(k)
                self.t(k)

    def __repr__(self):
        j = self.to_json()
        return f"WeightSystem(vars={j['vars']}, r={j['r']!r}, s={j['s']!r}, t={j['t']!r})"
