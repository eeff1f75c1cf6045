import random
from fractions import Fraction

import pytest

from hpcolor import kernels
from hpcolor._kernels_py import orient as orient_py
from hpcolor.bench import run_bench


def test_selection_round_trip():
    previous = kernels.ACTIVE
    try:
        assert kernels.select("python") == "python"
        assert kernels.ACTIVE == "python"
        name = kernels.select("auto")
        assert name in ("c", "python")
    finally:
        kernels.select(previous)


def test_python_kernel_signs():
    assert orient_py(0, 0, 1, 0, 0, 1) == 1
    assert orient_py(0, 0, 1, 0, 2, 0) == 0
    assert orient_py(0, 0, 1, 1, 2, 1) == -1


@pytest.mark.skipif("c" not in kernels.available(), reason="no compiled kernel")
def test_compiled_matches_python():
    from hpcolor import _kernels

    rng = random.Random(1)
    scalars = []
    for _ in range(4000):
        kind = rng.randrange(3)
        if kind == 0:
            scalars.append(rng.randint(-10**6, 10**6))
        elif kind == 1:
            scalars.append(rng.randint(-(2**70), 2**70))  # exceeds the fast path
        else:
            scalars.append(Fraction(rng.randint(-99, 99), rng.randint(1, 99)))
    for i in range(0, len(scalars) - 6, 6):
        a = scalars[i : i + 6]
        assert _kernels.orient(*a) == orient_py(*a)


@pytest.mark.skipif("c" not in kernels.available(), reason="no compiled kernel")
def test_bench_compares_kernels():
    rows_c = run_bench([256], seed=2, repeats=1, kernel="c")
    rows_py = run_bench([256], seed=2, repeats=1, kernel="python")
    assert rows_c[0].kernel == "c" and rows_py[0].kernel == "python"
    # identical instance and engine: the case path must not depend on the kernel
    assert rows_c[0].case_path == rows_py[0].case_path
