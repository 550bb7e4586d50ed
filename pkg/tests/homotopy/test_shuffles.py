from math import comb

import pytest

from core.sampling import Sampler
from homotopy.shuffles import (
    apply_permutation,
    compose_permutations,
    enumerate_shuffles,
    koszul_sign,
    permutation_sign,
)


def test_small_shuffles():
    assert enumerate_shuffles(1, 1) == (((0, 1), 1), ((1, 0), -1))
    assert enumerate_shuffles(0, 3) == (((0, 1, 2), 1),)
    assert enumerate_shuffles(2, 1) == (
        ((0, 1, 2), 1),
        ((0, 2, 1), -1),
        ((1, 2, 0), 1),
    )


@pytest.mark.parametrize("p,q", [(0, 0), (1, 2), (2, 2), (3, 1), (2, 3)])
def test_shuffle_counts(p, q):
    """
    C(p+q, p) shuffles, both blocks kept in order
    """
    shuffles = enumerate_shuffles(p, q)
    assert len(shuffles) == comb(p + q, p)
    for perm, sign in shuffles:
        assert list(perm[:p]) == sorted(perm[:p])
        assert list(perm[p:]) == sorted(perm[p:])
        assert sign == permutation_sign(perm)


def test_koszul_examples():
    assert koszul_sign((0, 1, 2), [1, 1, 1]) == 1
    assert koszul_sign((1, 0), [1, 1]) == -1
    assert koszul_sign((1, 0), [0, 1]) == 1
    assert koszul_sign((2, 0, 1), [1, 0, 1]) == -1


@pytest.mark.parametrize("seed", range(10))
def test_koszul_cocycle(seed):
    """
    Reordering in two steps gives the sign of reordering in one
    """
    sampler = Sampler(seed)
    size = sampler.choice([2, 3, 4, 5])
    degrees = [sampler.random.randint(-2, 3) for _ in range(size)]
    sigma = sampler.random.sample(range(size), size)
    tau = sampler.random.sample(range(size), size)
    composite = compose_permutations(sigma, tau)
    assert apply_permutation(composite, degrees) == apply_permutation(sigma, apply_permutation(tau, degrees))
    assert koszul_sign(composite, degrees) == koszul_sign(
        sigma, apply_permutation(tau, degrees)
    ) * koszul_sign(tau, degrees)
