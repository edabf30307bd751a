# cython: language_level=3
"""Compiled term-table kernels; same surface as ``_kernels_py``.

Keys and coefficients stay Python ints (coefficients are unbounded), so the
gain comes from C-level dict iteration and avoiding bytecode dispatch in the
double loop of ``mul`` / ``addmul_into``.
"""

from cpython.dict cimport PyDict_Next, PyDict_GetItem, PyDict_SetItem, PyDict_DelItem
from cpython.ref cimport PyObject

IMPLEMENTATION = "cython"


cdef inline object _get0(dict d, object k):
    cdef PyObject* v = PyDict_GetItem(d, k)
    if v == NULL:
        return 0
    return <object>v


def add(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = a.copy()
    cdef Py_ssize_t pos = 0
    cdef PyObject* pk
    cdef PyObject* pc
    cdef object k, v
    while PyDict_Next(b, &pos, &pk, &pc):
        k = <object>pk
        v = _get0(out, k) + <object>pc
        if v:
            PyDict_SetItem(out, k, v)
        else:
            PyDict_DelItem(out, k)
    return out


def sub(dict a, dict b):
    cdef dict out = a.copy()
    cdef Py_ssize_t pos = 0
    cdef PyObject* pk
    cdef PyObject* pc
    cdef object k, v
    while PyDict_Next(b, &pos, &pk, &pc):
        k = <object>pk
        v = _get0(out, k) - <object>pc
        if v:
            PyDict_SetItem(out, k, v)
        else:
            PyDict_DelItem(out, k)
    return out


def neg(dict a):
    return {k: -c for k, c in a.items()}


def scale(dict a, s):
    if not s:
        return {}
    return {k: c * s for k, c in a.items()}


def shift(dict a, m):
    return {k + m: c for k, c in a.items()}


cdef void _accumulate(dict out, dict a, list bk, list bc, bint negate):
    cdef Py_ssize_t pos = 0, j, nb = len(bk)
    cdef PyObject* pk
    cdef PyObject* pc
    cdef object ka, ca, k
    while PyDict_Next(a, &pos, &pk, &pc):
        ka = <object>pk
        ca = <object>pc
        if negate:
            ca = -ca
        for j in range(nb):
            k = ka + <object>(<PyObject*>bk[j])
            PyDict_SetItem(out, k, _get0(out, k) + ca * <object>(<PyObject*>bc[j]))


def mul(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return {}
    cdef dict out = {}
    _accumulate(out, a, list(b.keys()), list(b.values()), False)
    return {k: c for k, c in out.items() if c}


def addmul_into(dict acc, dict a, dict b, int sign):
    if len(a) < len(b):
        a, b = b, a
    _accumulate(acc, a, list(b.keys()), list(b.values()), sign < 0)
    return acc


def prune(dict a):
    return {k: c for k, c in a.items() if c}


def all_nonnegative(dict a):
    cdef Py_ssize_t pos = 0
    cdef PyObject* pk
    cdef PyObject* pc
    while PyDict_Next(a, &pos, &pk, &pc):
        if <object>pc < 0:
            return False
    return True
