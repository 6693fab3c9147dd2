"""Membership via the quartic hyperdeterminant orbit equations.

Each equation is indexed by a triple of coordinates and a grid point for
the remaining ones: specialize the Rayleigh difference of the first two
coordinates at the grid point and require the discriminant in the third to
vanish.  Five affine grid values per free coordinate suffice in general;
in characteristic two the discriminant degenerates to the square of the
middle coefficient and a three-point projective grid on that coefficient
suffices.  GF(3) admits no adequate grid, so exact mode refuses it and
points callers to the Rayleigh-difference method, which works over every
base ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import InputError, UnsupportedRingError
from .minor_map import (
    MembershipCertificate,
    Failure,
    MinorVector,
    minor_polynomial,
    reconstruct,
)
from .multipoly import MultiPoly, P1Point, affine_point, infinity_point
from .rings import QQ, ZZ, Ring
from .squares import rayleigh_delta


def hypdet_222(a: MinorVector):
    """Cayley's 2x2x2 hyperdeterminant of an 8-entry vector (n = 3)."""
    if a.n != 3:
        raise InputError("the 2x2x2 hyperdeterminant needs n = 3")
    r = a.ring
    e = a.entries
    a0, a1, a2, a12, a3, a13, a23, a123 = (
        e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7],
    )
    m = r.mul

    def m4(x, y, z, w):
        return m(m(x, y), m(z, w))

    total = r.zero
    for term in (
        m4(a0, a0, a123, a123),
        m4(a1, a1, a23, a23),
        m4(a2, a2, a13, a13),
        m4(a3, a3, a12, a12),
        m(r.of(4), m4(a0, a23, a13, a12)),
        m(r.of(4), m4(a123, a1, a2, a3)),
    ):
        total = r.add(total, term)
    for term in (
        m4(a0, a1, a23, a123),
        m4(a0, a2, a13, a123),
        m4(a0, a3, a12, a123),
        m4(a1, a2, a13, a23),
        m4(a1, a3, a12, a23),
        m4(a2, a3, a12, a13),
    ):
        total = r.sub(total, m(r.of(2), term))
    return total


def evaluation_points(ring: Ring):
    """The per-coordinate grid: images of 0..4 as affine points in general;
    {(0,1), (1,1), (1,0)} in characteristic two.  GF(3) is refused."""
    ch = ring.characteristic()
    if ch == 2:
        return [
            affine_point(ring, ring.zero),
            affine_point(ring, ring.one),
            infinity_point(ring),
        ]
    if ch == 3:
        raise UnsupportedRingError(
            "no adequate evaluation grid exists over GF(3); the equivalence of the "
            "hyperdeterminant criterion is unresolved there, use the delta method"
        )
    return [affine_point(ring, ring.of(v)) for v in range(5)]


@dataclass(frozen=True)
class OrbitEquationId:
    """One orbit equation: a triple i < j < k plus one grid point per
    coordinate outside the triple (ascending coordinate order)."""

    triple: Tuple[int, int, int]
    gridpoint: Tuple[P1Point, ...]


def orbit_equation_ids(n: int, ring: Ring):
    """All equations for n coordinates: triples in lexicographic order,
    grid points in odometer order.  Empty for n < 3."""
    if n < 3:
        return []
    points = evaluation_points(ring)
    ids = []
    for triple in itertools.combinations(range(1, n + 1), 3):
        for combo in itertools.product(points, repeat=n - 3):
            ids.append(OrbitEquationId(triple, tuple(combo)))
    return ids


def _discriminant_at(delta: MultiPoly, k: int, assignments, ring: Ring):
    """Value of the pair-discriminant of the degree-2 homogeneous form in
    (x_k, y_k) obtained from delta by substituting projective points for
    every other coordinate.  assignments maps coordinate -> P1Point.
    Returns the middle coefficient instead in characteristic two."""
    buckets = [ring.zero, ring.zero, ring.zero]
    mul, add = ring.mul, ring.add
    for exp, c in delta.terms.items():
        w = c
        for pos, pt in assignments.items():
            e = exp[pos - 1]
            u, v = pt.x, pt.y
            for _ in range(e):
                w = mul(w, u)
            for _ in range(2 - e):
                w = mul(w, v)
        ek = exp[k - 1]
        buckets[ek] = add(buckets[ek], w)
    c0, c1, c2 = buckets
    if ring.characteristic() == 2:
        return c1
    return ring.sub(mul(c1, c1), mul(ring.of(4), mul(c2, c0)))


def evaluate_orbit_equation(a: MinorVector, eq: OrbitEquationId):
    """Evaluate one orbit equation on a vector (no realizability
    assumptions; the empty-set entry may be anything)."""
    f = minor_polynomial(a)
    return _evaluate_equation(f, a.ring, a.n, eq)


def _evaluate_equation(f: MultiPoly, ring: Ring, n: int, eq: OrbitEquationId, delta_cache=None):
    i, j, k = eq.triple
    if not (1 <= i < j < k <= n):
        raise InputError("orbit equation triple %r out of range" % (eq.triple,))
    others = [t for t in range(1, n + 1) if t not in eq.triple]
    if len(eq.gridpoint) != len(others):
        raise InputError("grid point has wrong length for the triple")
    if delta_cache is None:
        delta = rayleigh_delta(f, i, j)
    else:
        delta = delta_cache.get((i, j))
        if delta is None:
            delta = rayleigh_delta(f, i, j)
            delta_cache[(i, j)] = delta
    assignments = dict(zip(others, eq.gridpoint))
    return _discriminant_at(delta, k, assignments, ring)


@dataclass
class HypdetReport:
    verdict: str  # "pass" | "fail"
    failed_equation: Optional[OrbitEquationId] = None
    failed_value: object = None
    pair_failures: Optional[list] = None

    @property
    def passed(self):
        return self.verdict == "pass"


def decide_membership_hypdet(a: MinorVector, mode: str = "exact", with_witness: bool = True):
    """Realizability via pair squares plus orbit equations.

    exact mode: every a_i * a_j - a_ij must be a ring square and every orbit
    equation must vanish; on pass the witness is produced through the delta
    reconstruction.  real mode (int/rat vectors only): the pair values must
    be nonnegative and the equations must vanish; this decides realizability
    over the reals for rational data, and no witness is reported.

    Returns (report, certificate); the certificate is None in real mode and
    on witnessless passes.
    """
    ring, n = a.ring, a.n
    if mode == "real":
        if ring not in (ZZ, QQ):
            raise InputError("real mode needs an int or rat vector")
    elif mode == "exact":
        if ring.characteristic() == 3:
            raise UnsupportedRingError(
                "the hyperdeterminant criterion is unresolved over GF(3); "
                "use the delta method, which applies over every base ring"
            )
    else:
        raise InputError("mode must be 'exact' or 'real'")
    if a.entries[0] != ring.one:
        report = HypdetReport("fail")
        cert = MembershipCertificate(
            "not_in_image", failure=Failure("a_empty_not_one", {"value": a.entries[0]})
        )
        return report, cert
    pair_failures = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        v = ring.sub(
            ring.mul(a.entries[1 << (i - 1)], a.entries[1 << (j - 1)]),
            a.entries[(1 << (i - 1)) | (1 << (j - 1))],
        )
        if mode == "real":
            ok = ring.is_nonnegative(v)
        else:
            ok = ring.is_square(v)
        if not ok:
            pair_failures.append(((i, j), v))
    if pair_failures:
        kind = "pair_negative" if mode == "real" else "pair_not_square"
        first = pair_failures[0]
        report = HypdetReport("fail", pair_failures=pair_failures)
        cert = MembershipCertificate(
            "not_in_image", failure=Failure(kind, {"pair": first[0], "value": first[1]})
        )
        return report, cert
    if n >= 3:
        f = minor_polynomial(a)
        points = evaluation_points(ring)
        cache = {}
        for triple in itertools.combinations(range(1, n + 1), 3):
            for combo in itertools.product(points, repeat=n - 3):
                eq = OrbitEquationId(triple, tuple(combo))
                val = _evaluate_equation(f, ring, n, eq, cache)
                if not ring.is_zero(val):
                    report = HypdetReport("fail", failed_equation=eq, failed_value=val)
                    cert = MembershipCertificate(
                        "not_in_image",
                        failure=Failure(
                            "hypdet_equation_nonzero",
                            {"triple": eq.triple, "gridpoint": eq.gridpoint, "value": val},
                        ),
                    )
                    return report, cert
    report = HypdetReport("pass")
    cert = None
    if mode == "exact" and with_witness:
        cert = MembershipCertificate("in_image", witness=reconstruct(a))
    return report, cert


def f3_conditions(a: MinorVector):
    """The natural GF(3) analog of the hyperdeterminant conditions: pair
    values must be squares and every pair-discriminant must vanish on the
    full projective-line grid (only four points exist, one short of an
    adequate grid, which is exactly why the criterion is unproven there).
    Returns (holds, first_witness)."""
    ring, n = a.ring, a.n
    if ring.characteristic() != 3:
        raise InputError("f3_conditions applies to GF(3) vectors")
    if a.entries[0] != ring.one:
        return False, ("a_empty_not_one", a.entries[0])
    for i, j in itertools.combinations(range(1, n + 1), 2):
        v = ring.sub(
            ring.mul(a.entries[1 << (i - 1)], a.entries[1 << (j - 1)]),
            a.entries[(1 << (i - 1)) | (1 << (j - 1))],
        )
        if not ring.is_square(v):
            return False, ("pair_not_square", (i, j), v)
    if n < 3:
        return True, None
    points = [affine_point(ring, ring.of(t)) for t in range(3)]
    points.append(infinity_point(ring))
    f = minor_polynomial(a)
    cache = {}
    for triple in itertools.combinations(range(1, n + 1), 3):
        for combo in itertools.product(points, repeat=n - 3):
            eq = OrbitEquationId(triple, tuple(combo))
            val = _evaluate_equation(f, ring, n, eq, cache)
            if not ring.is_zero(val):
                return False, ("equation_nonzero", eq, val)
    return True, None


def f3_search(n: int, samples: int, seed: int, exhaustive: bool = False):
    """Compare the delta decision with the unproven GF(3) conditions on
    sampled (or exhaustively enumerated) vectors with empty-set entry 1.
    Any vector the two classify differently is a candidate counterexample
    to extending the hyperdeterminant criterion to GF(3)."""
    import random

    from .minor_map import decide_membership_delta
    from .rings import GF

    field = GF(3)
    if n < 1:
        raise InputError("need n >= 1")
    size = (1 << n) - 1
    rng = random.Random(seed)

    def tails():
        if exhaustive:
            yield from itertools.product(range(3), repeat=size)
        else:
            for _ in range(samples):
                yield tuple(rng.randrange(3) for _ in range(size))

    agreements = 0
    checked = 0
    disagreements = []
    in_image_count = 0
    for tail in tails():
        a = MinorVector(field, n, (1,) + tail)
        dv = decide_membership_delta(a, with_witness=False).in_image
        hv, _witness = f3_conditions(a)
        checked += 1
        if dv:
            in_image_count += 1
        if dv == hv:
            agreements += 1
        else:
            disagreements.append({"entries": list(a.entries), "delta": dv, "f3_conditions": hv})
    return {
        "n": n,
        "checked": checked,
        "agreements": agreements,
        "in_image": in_image_count,
        "disagreements": disagreements,
    }
