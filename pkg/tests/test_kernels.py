import numpy as np
import pytest

from krh import kernels, library
from krh.builtins import builtin_algebra
from krh.evaluator import evaluate
from krh.network import primes_for

P = 67108837


@pytest.fixture
def restore_backend():
    old = kernels.backend()
    yield
    kernels.set_backend(old)


@pytest.mark.parametrize("shape", [(3, 5, 2), (8, 3000, 4), (1, 1, 1)])
def test_backends_agree_with_python_ints(shape, restore_backend):
    m, k, n = shape
    rng = np.random.default_rng(1)
    a = rng.integers(0, P, (m, k), dtype=np.int64)
    b = rng.integers(0, P, (k, n), dtype=np.int64)
    exact = (a.astype(object) @ b.astype(object)) % P
    for name in ("numba", "numpy"):
        kernels.set_backend(name)
        assert (kernels.matmul_mod(a, b, P).astype(object) == exact).all()


def test_rejects_large_modulus():
    with pytest.raises(ValueError):
        kernels.matmul_mod(np.zeros((1, 1), np.int64), np.zeros((1, 1), np.int64), 1 << 27)


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.set_backend("cuda")


def test_primes_are_one_mod_n():
    for n in (1, 4, 12):
        ps = primes_for(n, 4)
        assert len(set(ps)) == 4
        assert all((p - 1) % n == 0 and p < 1 << 26 for p in ps)


def test_evaluation_identical_across_backends(uq, restore_backend):
    T = library.trefoil_string()
    kernels.set_backend("numpy")
    a = evaluate(T, uq)
    kernels.set_backend("numba")
    b = evaluate(T, uq)
    assert a == b
