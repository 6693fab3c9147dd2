"""Action of n-fold unimodular 2x2 substitutions combined with variable
permutations, on degree-bounded polynomials and on minor vectors.

The action is computed through per-variable homogenization followed by a
linear change of each (x_i, y_i) pair, never through rational-function
substitution, so everything stays inside polynomial arithmetic.  The degree
bound vector is an explicit argument because the action genuinely depends
on it (acting with weight 1 on h is not the same map as acting with weight
2 on h squared).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from .errors import InputError, InternalInconsistencyError
from .minor_map import MinorVector, minor_polynomial, vector_from_polynomial
from .multipoly import MultiPoly, P1Point
from .rings import Ring


@dataclass(frozen=True)
class SL2Element:
    """Unimodular 2x2 matrix (a b; c d) with ad - bc = 1, checked on
    construction."""

    ring: Ring
    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        r = self.ring
        for v in (self.a, self.b, self.c, self.d):
            r.validate(v)
        det = r.sub(r.mul(self.a, self.d), r.mul(self.b, self.c))
        if det != r.one:
            raise InputError("2x2 block must have determinant 1")

    def matmul(self, other: "SL2Element") -> "SL2Element":
        self.ring.require_same(other.ring)
        r = self.ring
        return SL2Element(
            r,
            r.add(r.mul(self.a, other.a), r.mul(self.b, other.c)),
            r.add(r.mul(self.a, other.b), r.mul(self.b, other.d)),
            r.add(r.mul(self.c, other.a), r.mul(self.d, other.c)),
            r.add(r.mul(self.c, other.b), r.mul(self.d, other.d)),
        )

    def is_identity(self) -> bool:
        r = self.ring
        return (
            self.a == r.one
            and r.is_zero(self.b)
            and r.is_zero(self.c)
            and self.d == r.one
        )


def sl2_identity(ring: Ring) -> SL2Element:
    return SL2Element(ring, ring.one, ring.zero, ring.zero, ring.one)


@dataclass(frozen=True)
class GroupElement:
    """A permutation of [n] together with one unimodular block per
    coordinate.  perm[i-1] is the image of i."""

    perm: Tuple[int, ...]
    locals: Tuple[SL2Element, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise InputError("perm must be a bijection on 1..n")
        if len(self.locals) != n or n == 0:
            raise InputError("need one 2x2 block per coordinate")
        ring = self.locals[0].ring
        for m in self.locals:
            ring.require_same(m.ring)

    @property
    def ring(self) -> Ring:
        return self.locals[0].ring

    @property
    def n(self) -> int:
        return len(self.perm)

    def perm_inverse(self) -> Tuple[int, ...]:
        inv = [0] * self.n
        for i, img in enumerate(self.perm, start=1):
            inv[img - 1] = i
        return tuple(inv)


def identity_element(ring: Ring, n: int) -> GroupElement:
    return GroupElement(tuple(range(1, n + 1)), tuple(sl2_identity(ring) for _ in range(n)))


def permutation_element(ring: Ring, perm) -> GroupElement:
    return GroupElement(tuple(perm), tuple(sl2_identity(ring) for _ in perm))


def translation_element(ring: Ring, shifts) -> GroupElement:
    """Upper-triangular blocks (1 r_i; 0 1): the substitution x_i -> x_i + r_i."""
    shifts = list(shifts)
    locals_ = tuple(
        SL2Element(ring, ring.one, r, ring.zero, ring.one) for r in shifts
    )
    return GroupElement(tuple(range(1, len(shifts) + 1)), locals_)


def p1_to_sl2(point: P1Point) -> SL2Element:
    """(1, 0) -> (0 1; -1 0) and (r, 1) -> (1 r; 0 1)."""
    r = point.ring
    if point.is_infinity():
        return SL2Element(r, r.zero, r.one, r.neg(r.one), r.zero)
    return SL2Element(r, r.one, point.x, r.zero, r.one)


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """The element whose action equals acting with g2 first, then g1:
    act(g1, act(g2, f)) == act(compose(g1, g2), f)."""
    if g1.n != g2.n:
        raise InputError("group elements act on different variable counts")
    g1.ring.require_same(g2.ring)
    n = g1.n
    perm = tuple(g1.perm[g2.perm[i] - 1] for i in range(n))
    inv1 = g1.perm_inverse()
    locals_ = tuple(
        g2.locals[inv1[j] - 1].matmul(g1.locals[j]) for j in range(n)
    )
    return GroupElement(perm, locals_)


def act_on_poly(gamma: GroupElement, f: MultiPoly, d) -> MultiPoly:
    """Homogenize f to the bound d, rewrite each pair (x_i, y_i) through the
    block attached to the permuted coordinate, restore y = 1."""
    d = tuple(d)
    gamma.ring.require_same(f.ring)
    if gamma.n != f.nvars:
        raise InputError("group element size does not match the polynomial")
    if len(d) != f.nvars:
        raise InputError("degree-bound vector has wrong length")
    ring = f.ring
    n = f.nvars
    hom = f.multi_homogenize(d)
    # slot i of the homogenized polynomial receives the pair perm(i), pushed
    # through the block attached to perm(i)
    lin_x, lin_y = [], []
    for i in range(1, n + 1):
        t = gamma.perm[i - 1]
        m = gamma.locals[t - 1]
        xt = MultiPoly.variable(ring, 2 * n, t)
        yt = MultiPoly.variable(ring, 2 * n, n + t)
        lin_x.append(xt.scale(m.a) + yt.scale(m.b))
        lin_y.append(xt.scale(m.c) + yt.scale(m.d))
    power_cache = {}

    def power(base_idx, which, e):
        key = (base_idx, which, e)
        got = power_cache.get(key)
        if got is None:
            base = lin_x[base_idx] if which == 0 else lin_y[base_idx]
            got = base ** e
            power_cache[key] = got
        return got

    acc = MultiPoly.zero(ring, 2 * n)
    for exp, c in hom.terms.items():
        term = MultiPoly.constant(ring, 2 * n, c)
        for i in range(n):
            if exp[i]:
                term = term * power(i, 0, exp[i])
            if exp[n + i]:
                term = term * power(i, 1, exp[n + i])
        acc = acc + term
    out = acc.restrict_ys_to_one()
    if any(out.degree(i) > d[i - 1] for i in range(1, n + 1)):
        raise InternalInconsistencyError("action broke the degree bound")
    return out


def act_on_minor_vector(gamma: GroupElement, a: MinorVector) -> MinorVector:
    """Transport of the action through the polynomial encoding, with
    multiaffine weight."""
    acted = act_on_poly(gamma, minor_polynomial(a), (1,) * a.n)
    return vector_from_polynomial(acted)
