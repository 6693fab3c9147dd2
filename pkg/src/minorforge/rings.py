"""Exact coefficient domains: the integers, the rationals, and prime fields.

A domain is a small stateless object; elements are plain Python values
(``int`` for ZZ, ``fractions.Fraction`` for QQ, canonical residues in
``[0, p)`` stored as ``int`` for GF(p)).  All arithmetic goes through the
domain object, which keeps payloads canonical: fractions stay reduced with
a positive denominator, residues stay in ``[0, p)``.  Containers carry the
domain next to their payloads and refuse to mix domains.

Ring selection strings: ``"int"``, ``"rat"``, ``"fp:<p>"``.
Value serialization: decimal strings for ZZ / GF(p), ``"a/b"`` for QQ.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputError, RingMismatchError

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    """Exact primality test.

    Trial division below 2**32; deterministic Miller-Rabin witnesses above
    (exact for every p below 3.3e24, far past the 64-bit contract).
    """
    if p < 2:
        return False
    for q in _MR_WITNESSES:
        if p % q == 0:
            return p == q
    if p < 41 * 41:
        return True
    if p < 1 << 32:
        for q in range(41, math.isqrt(p) + 1, 2):
            if p % q == 0:
                return False
        return True
    d, r = p - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, p)
        if x == 1 or x == p - 1:
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Ring:
    """Common interface of the three supported domains."""

    kind: str = ""

    # -- descriptor ---------------------------------------------------------

    def characteristic(self) -> int:
        raise NotImplementedError

    def to_string(self) -> str:
        raise NotImplementedError

    def same(self, other: "Ring") -> bool:
        return self == other

    def require_same(self, other: "Ring") -> None:
        if self != other:
            raise RingMismatchError(
                "cannot mix %s and %s" % (self.to_string(), other.to_string())
            )

    # -- element construction / canonical form -------------------------------

    def of(self, n):
        """Embed a Python int (ring image of n)."""
        raise NotImplementedError

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)

    def validate(self, v):
        """Check v is a canonical element; return it."""
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, v) -> str:
        raise NotImplementedError

    # -- arithmetic -----------------------------------------------------------

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def exact_div(self, a, b):
        """q with q*b == a when b divides a, else None.  b == 0 is an error."""
        raise NotImplementedError

    def sqrt(self, v):
        """Canonical square root of v, or None if v is not a square.

        Canonical means nonnegative over ZZ/QQ and the smaller of the two
        residues over GF(p) (0 for v = 0).
        """
        raise NotImplementedError

    def is_square(self, v) -> bool:
        return self.sqrt(v) is not None

    def is_canonical_root(self, v) -> bool:
        """True when v is the preferred representative of {v, -v}."""
        raise NotImplementedError

    def __repr__(self):
        return self.to_string()


class IntegerRing(Ring):
    kind = "int"

    def characteristic(self):
        return 0

    def to_string(self):
        return "int"

    def of(self, n):
        return int(n)

    def validate(self, v):
        if type(v) is not int:
            raise InputError("integer element expected, got %r" % (v,))
        return v

    def parse(self, text):
        try:
            return int(text.strip())
        except ValueError:
            raise InputError("cannot parse %r as an integer" % (text,)) from None

    def format(self, v):
        return str(v)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("exact division by zero")
        q, r = divmod(a, b)
        return q if r == 0 else None

    def sqrt(self, v):
        if v < 0:
            return None
        r = math.isqrt(v)
        return r if r * r == v else None

    def is_canonical_root(self, v):
        return v >= 0

    def is_nonnegative(self, v):
        return v >= 0

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("int")


class RationalRing(Ring):
    kind = "rat"

    def characteristic(self):
        return 0

    def to_string(self):
        return "rat"

    def of(self, n):
        return Fraction(n)

    def validate(self, v):
        if not isinstance(v, Fraction):
            raise InputError("rational element expected, got %r" % (v,))
        return v

    def parse(self, text):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        except (ValueError, ZeroDivisionError):
            raise InputError("cannot parse %r as a rational" % (text,)) from None

    def format(self, v):
        return "%d/%d" % (v.numerator, v.denominator)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("exact division by zero")
        return a / b

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def sqrt(self, v):
        if v < 0:
            return None
        rn = math.isqrt(v.numerator)
        rd = math.isqrt(v.denominator)
        if rn * rn == v.numerator and rd * rd == v.denominator:
            return Fraction(rn, rd)
        return None

    def is_canonical_root(self, v):
        return v >= 0

    def is_nonnegative(self, v):
        return v >= 0

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("rat")


class PrimeField(Ring):
    kind = "prime_field"

    _instances: dict = {}
    _SQRT_TABLE_LIMIT = 1 << 16

    def __new__(cls, p):
        inst = cls._instances.get(p)
        if inst is None:
            if not isinstance(p, int) or p < 2:
                raise InputError("prime field modulus must be an integer >= 2")
            if p >= 1 << 64:
                raise InputError("prime field modulus must fit in 64 bits")
            if not is_prime(p):
                raise InputError("%d is not prime" % p)
            inst = super().__new__(cls)
            inst.p = p
            inst._sqrt_table = None
            cls._instances[p] = inst
        return inst

    def characteristic(self):
        return self.p

    def to_string(self):
        return "fp:%d" % self.p

    def of(self, n):
        return n % self.p

    def validate(self, v):
        if type(v) is not int or not 0 <= v < self.p:
            raise InputError("GF(%d) element expected in [0, p), got %r" % (self.p, v))
        return v

    def parse(self, text):
        try:
            return int(text.strip()) % self.p
        except ValueError:
            raise InputError("cannot parse %r as a GF(%d) element" % (text, self.p)) from None

    def format(self, v):
        return str(v)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def is_zero(self, a):
        return a == 0

    def exact_div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("exact division by zero")
        return a * pow(b, self.p - 2, self.p) % self.p

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a * pow(b, self.p - 2, self.p) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def sqrt(self, v):
        p = self.p
        if v == 0:
            return 0
        if p == 2:
            return v
        if p < self._SQRT_TABLE_LIMIT:
            if self._sqrt_table is None:
                table = {}
                for r in range((p - 1) // 2, -1, -1):
                    table[r * r % p] = r
                self._sqrt_table = table
            return self._sqrt_table.get(v)
        if pow(v, (p - 1) // 2, p) != 1:
            return None
        r = self._tonelli_shanks(v)
        return min(r, p - r)

    def _tonelli_shanks(self, v):
        p = self.p
        if p % 4 == 3:
            return pow(v, (p + 1) // 4, p)
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(v, q, p), pow(v, (q + 1) // 2, p)
        while t != 1:
            t2, i = t * t % p, 1
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def is_canonical_root(self, v):
        return v <= self.p - v

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


ZZ = IntegerRing()
QQ = RationalRing()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def ring_from_string(text: str) -> Ring:
    """Parse a ring selection string: "int", "rat", or "fp:<p>"."""
    text = text.strip()
    if text == "int":
        return ZZ
    if text == "rat":
        return QQ
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise InputError("bad prime field selector %r" % text) from None
        return GF(p)
    raise InputError("unknown ring %r (expected int, rat, or fp:<p>)" % text)
