"""The compiled and pure-Python kernels must be interchangeable."""
import importlib
import random

import pytest

from catlike import catalog, polyring
from catlike import _kernels_py as PY
from catlike.recmatrix import build_triangle, column_hankel
from catlike.totalpos import check_xtp

try:
    CY = importlib.import_module("catlike._kernels")
except ImportError:  # extension not built
    CY = None

needs_cython = pytest.mark.skipif(CY is None, reason="compiled kernel not built")


def rand_table(rng, n=30):
    return {rng.randrange(1 << 20): rng.choice([-1, 1]) * rng.randrange(1, 1 << 70)
            for _ in range(rng.randrange(n))}


@needs_cython
@pytest.mark.parametrize("seed", range(20))
def test_primitives_agree(seed):
    rng = random.Random(seed)
    a, b = rand_table(rng), rand_table(rng)
    for name in ("add", "sub", "mul"):
        assert getattr(PY, name)(a, b) == getattr(CY, name)(a, b)
    assert PY.neg(a) == CY.neg(a)
    assert PY.scale(a, -3) == CY.scale(a, -3)
    assert PY.scale(a, 0) == CY.scale(a, 0)
    assert PY.shift(a, 17) == CY.shift(a, 17)
    assert PY.all_nonnegative(a) == CY.all_nonnegative(a)
    acc1, acc2 = dict(a), dict(a)
    PY.addmul_into(acc1, a, b, -1)
    CY.addmul_into(acc2, a, b, -1)
    assert PY.prune(acc1) == CY.prune(acc2)
    assert 0 not in PY.mul(a, b).values()


@needs_cython
def test_cancellation_leaves_no_zero_terms():
    a = {5: 2, 7: -3}
    for K in (PY, CY):
        assert K.add(a, K.neg(a)) == {}
        assert K.sub(a, a) == {}


def _workload():
    tri = build_triangle(catalog.preset("ex3_5").weights, 8)
    rep = check_xtp(column_hankel(catalog.counterexample_weights(1, 2), 4).matrix, 4, exhaustive=True)
    return [x.to_text() for x in tri.column(0)], rep.to_json()


@needs_cython
def test_whole_pipeline_agrees():
    saved = polyring.K
    try:
        polyring.K = PY
        slow = _workload()
        polyring.K = CY
        fast = _workload()
    finally:
        polyring.K = saved
    assert slow == fast


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    env = dict(os.environ, CATLIKE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import catlike; print(catlike.KERNEL)"],
                         env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
