"""The compiled and pure kernels must agree bit-for-bit."""

import random
from fractions import Fraction

import pytest

from ncroots import _pykernels
from ncroots.backend import available_backends, kernels, use_backend

compiled = available_backends().get("compiled")
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def random_flat(rng, n):
    return [Fraction(rng.randint(-8, 8), rng.randint(1, 8)) for _ in range(n * n)]


@needs_compiled
@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_mul_agreement(n):
    rng = random.Random(n)
    for _ in range(20):
        a, b = random_flat(rng, n), random_flat(rng, n)
        assert compiled.mul(a, b, n, n, n) == _pykernels.mul(a, b, n, n, n)


@needs_compiled
@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_inv_agreement(n):
    rng = random.Random(100 + n)
    for _ in range(20):
        a = random_flat(rng, n)
        assert compiled.inv(a, n) == _pykernels.inv(a, n)


@needs_compiled
def test_inv_agreement_singular():
    flat = [Fraction(0), Fraction(1), Fraction(0), Fraction(0)]
    assert compiled.inv(flat, 2) is None
    assert _pykernels.inv(flat, 2) is None


@needs_compiled
def test_rectangular_mul_agreement():
    rng = random.Random(7)
    a = [Fraction(rng.randint(-8, 8)) for _ in range(2 * 6)]
    b = [Fraction(rng.randint(-8, 8)) for _ in range(6 * 2)]
    assert compiled.mul(a, b, 2, 6, 2) == _pykernels.mul(a, b, 2, 6, 2)


def test_backend_swap():
    original = kernels.name
    try:
        prev = use_backend("pure")
        assert prev == original
        assert kernels.name == "pure"
    finally:
        use_backend(original)
    with pytest.raises(ValueError):
        use_backend("nonsense")
