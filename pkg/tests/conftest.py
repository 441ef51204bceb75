import itertools

import numpy as np
import pytest

from bentcat.boolcore import TruthTable
from bentcat.permutmap import PointMap


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)


def random_table(rng, n):
    return TruthTable(n, rng.integers(0, 2, 1 << n, dtype=np.uint8))


def random_perm(rng, m):
    return PointMap(m, rng.permutation(1 << m))


def dot(a, b):
    return (a & b).bit_count() & 1


# brute-force oracles, kept free of the butterfly / Moebius code they check


def walsh_direct(t):
    size = 1 << t.n
    return [sum((-1) ** (t[x] ^ dot(a, x)) for x in range(size)) for a in range(size)]


def anf_direct(t):
    """Coefficient of x^u is the sum of f over all x below u."""
    size = 1 << t.n
    out = set()
    for u in range(size):
        acc = 0
        for x in range(size):
            if x & ~u == 0:
                acc ^= t[x]
        if acc:
            out.add(u)
    return out


def eval_anf(monomials, x):
    return sum(1 for mono in monomials if x & mono == mono) & 1


def subsets(n):
    return itertools.product((0, 1), repeat=n)
