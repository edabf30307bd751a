"""Homogenization by exponent padding."""
from __future__ import annotations

from typing import Sequence

from .polyring import Polynomial, VarSet


class DegreePreconditionError(ValueError):
    def __init__(self, index: int, got: int):
        super().__init__(f"sequence term {index} has degree {got}, expected {index}")
        self.index = index


def degree(f: Polynomial) -> int:
    if not f:
        raise ValueError("degree of the zero polynomial is undefined")
    return f.degree()


def is_homogeneous(f: Polynomial) -> bool:
    if not f:
        raise ValueError("homogeneity of the zero polynomial is undefined")
    return len(f.degrees()) == 1


def _pad(f: Polynomial, x0: str, target: int, position: int | None) -> Polynomial:
    vs = f.vs
    if x0 in vs:
        raise ValueError(f"homogenizing variable {x0!r} already belongs to {list(vs.names)}")
    names = list(vs.names)
    pos = 0 if position is None else position
    names.insert(pos, x0)
    out_vs = VarSet(names)
    terms = {}
    for exps, c in f.terms():
        e = list(exps)
        e.insert(pos, target - sum(exps))
        terms[tuple(e)] = c
    return out_vs.from_terms(terms)


def homogenize(f: Polynomial, x0: str = "x0", *, position: int | None = None) -> Polynomial:
    """``x0^deg(f) f(x/x0)``; ``x0`` is inserted first unless ``position`` is given."""
    if not f:
        raise ValueError("cannot homogenize the zero polynomial")
    return _pad(f, x0, f.degree(), position)


def homogenize_sequence(seq: Sequence[Polynomial], x0: str = "x0", *,
                        position: int | None = None) -> list[Polynomial]:
    """Homogenize ``a_n`` to degree ``n``; requires ``deg a_n = n`` exactly."""
    out = []
    for n, f in enumerate(seq):
        if not f:
            raise DegreePreconditionError(n, -1)
        d = f.degree()
        if d != n:
            raise DegreePreconditionError(n, d)
        out.append(_pad(f, x0, n, position))
    return out
