"""Pure-Python term-table kernels.

A term table is a ``dict`` mapping a packed monomial key (``int``) to a
nonzero ``int`` coefficient.  Packed keys add under monomial multiplication,
so every kernel here is plain integer/dict work.  ``_kernels.pyx`` compiles the
same loops; both modules expose an identical surface.
"""

IMPLEMENTATION = "python"


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    get = out.get
    for k, c in b.items():
        v = get(k, 0) + c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def sub(a, b):
    out = dict(a)
    get = out.get
    for k, c in b.items():
        v = get(k, 0) - c
        if v:
            out[k] = v
        else:
            del out[k]
    return out


def neg(a):
    return {k: -c for k, c in a.items()}


def scale(a, s):
    if not s:
        return {}
    return {k: c * s for k, c in a.items()}


def shift(a, m):
    """Multiply every monomial by the packed monomial ``m``."""
    return {k + m: c for k, c in a.items()}


def mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return {}
    if len(b) == 1:
        (kb, cb), = b.items()
        if cb == 1:
            return {k + kb: c for k, c in a.items()}
        return {k + kb: c * cb for k, c in a.items()}
    out = {}
    get = out.get
    bitems = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def addmul_into(acc, a, b, sign):
    """``acc += sign * a * b`` in place; zero entries may remain (see ``prune``)."""
    get = acc.get
    if sign < 0:
        for ka, ca in a.items():
            ca = -ca
            for kb, cb in b.items():
                k = ka + kb
                acc[k] = get(k, 0) + ca * cb
    else:
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                acc[k] = get(k, 0) + ca * cb
    return acc


def prune(a):
    return {k: c for k, c in a.items() if c}


def all_nonnegative(a):
    for c in a.values():
        if c < 0:
            return False
    return True
