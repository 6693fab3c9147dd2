"""Shared random generators and small oracles for the test suite."""

import itertools
import random

from minorforge import (
    GF,
    QQ,
    ZZ,
    GroupElement,
    MinorVector,
    MultiPoly,
    SL2Element,
    SymMatrix,
    principal_minors,
    sl2_identity,
)
from fractions import Fraction


def rand_value(ring, rng, lo=-4, hi=4):
    if ring is ZZ:
        return rng.randint(lo, hi)
    if ring is QQ:
        return Fraction(rng.randint(lo, hi), rng.randint(1, 4))
    return rng.randrange(ring.p)


def rand_sym_matrix(ring, rng, n, lo=-5, hi=5):
    rows = [[rand_value(ring, rng, lo, hi) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[j][i] = rows[i][j]
    return SymMatrix(ring, n, rows)


def rand_multiaffine(ring, rng, n, lo=-4, hi=4, density=0.8):
    terms = {}
    for exp in itertools.product((0, 1), repeat=n):
        if rng.random() < density:
            c = rand_value(ring, rng, lo, hi)
            if not ring.is_zero(c):
                terms[exp] = c
    return MultiPoly(ring, n, terms)


def rand_minor_vector(ring, rng, n, lo=-4, hi=4, unit_empty=True):
    entries = [rand_value(ring, rng, lo, hi) for _ in range(1 << n)]
    if unit_empty:
        entries[0] = ring.one
    return MinorVector(ring, n, entries)


def image_vector(ring, rng, n, lo=-4, hi=4):
    return principal_minors(rand_sym_matrix(ring, rng, n, lo, hi))


def rand_sl2(ring, rng, depth=3, lo=-3, hi=3):
    # product of elementary unimodular matrices, so the determinant is 1
    m = sl2_identity(ring)
    for _ in range(depth):
        r = ring.of(rng.randint(lo, hi))
        if rng.random() < 0.5:
            e = SL2Element(ring, ring.one, r, ring.zero, ring.one)
        else:
            e = SL2Element(ring, ring.one, ring.zero, r, ring.one)
        m = m.matmul(e)
    return m


def rand_group_element(ring, rng, n, depth=3):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return GroupElement(tuple(perm), tuple(rand_sl2(ring, rng, depth) for _ in range(n)))


def equal_up_to_sign_conjugation(A, B):
    """Search the 2^(n-1) diagonal sign patterns (first sign fixed)."""
    if A.ring != B.ring or A.n != B.n:
        return False
    n = A.n
    ring = A.ring
    for signs in itertools.product((1, -1), repeat=n - 1):
        d = (1,) + signs
        ok = True
        for i in range(n):
            for j in range(n):
                v = B.rows[i][j]
                if d[i] * d[j] == -1:
                    v = ring.neg(v)
                if v != A.rows[i][j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def poly_from_coeffs(ring, n, pairs):
    """pairs: iterable of (exponent tuple, python int) for quick literals."""
    return MultiPoly(ring, n, {tuple(e): ring.of(c) for e, c in pairs})
