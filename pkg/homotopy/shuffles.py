import threading
from collections.abc import Sequence
from itertools import combinations

from cachetools import LRUCache, cached


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


@cached(cache=LRUCache(maxsize=128), lock=threading.Lock())
def enumerate_shuffles(p: int, q: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """
    The (p, q)-shuffles of 0..p+q-1 with their permutation signs.

    A shuffle is written as the new order of the original positions: its
    first p entries increase, and so do its last q.
    """
    if p < 0 or q < 0:
        raise ValueError("shuffle block sizes are non-negative")
    total = p + q
    shuffles = []
    for front in combinations(range(total), p):
        chosen = set(front)
        perm = front + tuple(i for i in range(total) if i not in chosen)
        shuffles.append((perm, permutation_sign(perm)))
    return tuple(shuffles)


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """
    Sign of reordering homogeneous elements of the given degrees into the
    order `perm`; every pair that changes order contributes (-1)^(d·e).
    """
    if len(perm) != len(degrees):
        raise ValueError("one degree per permuted element")
    exponent = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                exponent += degrees[perm[a]] * degrees[perm[b]]
    return -1 if exponent % 2 else 1


def apply_permutation(perm: Sequence[int], items: Sequence) -> list:
    return [items[i] for i in perm]


def compose_permutations(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """
    Reordering by tau and then by sigma, as a single reordering.
    """
    return tuple(tau[i] for i in sigma)
