import random
from fractions import Fraction

import pytest

from minorforge import GF, QQ, ZZ, InputError, ring_from_string


def test_integer_sqrt_examples():
    assert ZZ.sqrt(9) == 3
    assert ZZ.sqrt(10) is None
    assert ZZ.sqrt(0) == 0
    assert ZZ.sqrt(-4) is None


def test_fp7_sqrt_against_enumeration():
    F7 = GF(7)
    # oracle: exhaustive residue search, smaller root wins
    table = {}
    for r in range(7):
        sq = r * r % 7
        table.setdefault(sq, r)
    assert table[2] == 3  # 3*3 = 9 = 2 mod 7
    for v in range(7):
        expect = min((r for r in range(7) if r * r % 7 == v), default=None)
        assert F7.sqrt(v) == expect


def test_rational_sqrt_componentwise():
    assert QQ.sqrt(Fraction(4, 9)) == Fraction(2, 3)
    assert QQ.sqrt(Fraction(2, 9)) is None
    assert QQ.sqrt(Fraction(-4, 9)) is None
    assert QQ.sqrt(Fraction(0)) == Fraction(0)


def test_exact_div_examples():
    assert ZZ.exact_div(12, 4) == 3
    assert ZZ.exact_div(12, 5) is None
    with pytest.raises(ZeroDivisionError):
        ZZ.exact_div(1, 0)
    F7 = GF(7)
    # oracle: the unique q in [0, 7) with 5*q = 3 mod 7
    expect = next(q for q in range(7) if 5 * q % 7 == 3)
    assert expect == 2
    assert F7.exact_div(3, 5) == 2


@pytest.mark.parametrize("ring", [ZZ, QQ, GF(2), GF(5), GF(7), GF(65537)])
def test_sqrt_of_square_is_canonical(ring):
    rng = random.Random(1)
    for _ in range(300):
        if ring is ZZ:
            v = rng.randint(-50, 50)
        elif ring is QQ:
            v = Fraction(rng.randint(-20, 20), rng.randint(1, 12))
        else:
            v = rng.randrange(ring.p)
        sq = ring.mul(v, v)
        r = ring.sqrt(sq)
        assert r is not None
        assert ring.mul(r, r) == sq
        assert ring.is_canonical_root(r)


def test_exact_div_roundtrip():
    rng = random.Random(2)
    for ring in (ZZ, QQ, GF(5), GF(11)):
        for _ in range(300):
            if ring is ZZ:
                a, b = rng.randint(-30, 30), rng.randint(1, 9)
            elif ring is QQ:
                a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                b = Fraction(rng.randint(1, 9), rng.randint(1, 5))
            else:
                a, b = rng.randrange(ring.p), rng.randrange(1, ring.p)
            q = ring.exact_div(a, b)
            if q is not None:
                assert ring.mul(q, b) == a


def test_prime_field_matches_integers_mod_p():
    rng = random.Random(3)
    for p in (2, 3, 5, 101):
        F = GF(p)
        for _ in range(1000):
            x, y = rng.randint(-200, 200), rng.randint(-200, 200)
            fx, fy = F.of(x), F.of(y)
            assert F.add(fx, fy) == (x + y) % p
            assert F.sub(fx, fy) == (x - y) % p
            assert F.mul(fx, fy) == (x * y) % p
            assert F.neg(fx) == (-x) % p


def test_tonelli_shanks_large_prime():
    p = (1 << 61) - 1  # Mersenne prime, beyond the lookup-table range
    F = GF(p)
    rng = random.Random(4)
    for _ in range(25):
        v = rng.randrange(p)
        sq = v * v % p
        r = F.sqrt(sq)
        assert r is not None and r * r % p == sq
        assert r <= p - r
    # a known non-residue: p = 2^61 - 1 is 7 mod 8, so 2 is a QR; use Euler
    non_residues = [v for v in range(2, 50) if pow(v, (p - 1) // 2, p) != 1]
    assert F.sqrt(non_residues[0]) is None


def test_prime_validation():
    with pytest.raises(InputError):
        GF(1)
    with pytest.raises(InputError):
        GF(4)
    with pytest.raises(InputError):
        GF(91)  # 7 * 13
    GF(2)
    GF(3)
    GF(9223372036854775783)  # largest prime below 2**63


def test_ring_strings_and_value_serialization():
    assert ring_from_string("int") is ZZ
    assert ring_from_string("rat") is QQ
    assert ring_from_string("fp:7") == GF(7)
    assert ring_from_string("fp:7").to_string() == "fp:7"
    with pytest.raises(InputError):
        ring_from_string("gf:7")
    assert ZZ.parse("-12") == -12
    assert ZZ.format(-12) == "-12"
    assert QQ.parse("-3/6") == Fraction(-1, 2)
    assert QQ.format(Fraction(-1, 2)) == "-1/2"
    assert QQ.format(QQ.parse("3")) == "3/1"
    assert GF(7).parse("-1") == 6


def test_mixing_rings_is_an_error():
    from minorforge import MultiPoly, RingMismatchError

    f = MultiPoly.constant(ZZ, 2, 1)
    g = MultiPoly.constant(GF(7), 2, 1)
    with pytest.raises(RingMismatchError):
        f + g
    with pytest.raises(RingMismatchError):
        f * g
