"""Squared Pluecker vectors, membership in the coordinatewise-square image
of the Grassmannian, and general multiaffine determinantal representations
f = scale * det(sum_i x_i v_i v_i^T + W) over a field.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Tuple

from .errors import (
    InputError,
    InternalInconsistencyError,
    NoRepresentationError,
    UnsupportedRingError,
)
from .hyperdet import HypdetReport, OrbitEquationId, _evaluate_equation, evaluation_points
from .minor_map import (
    MinorVector,
    SymMatrix,
    _canonical_sign_vector,
    conjugate_by_signs,
    det,
    determinantal_pencil,
    minor_polynomial,
)
from .multipoly import MultiPoly, poly_det
from .rings import QQ, Ring
from .squares import poly_sqrt, rayleigh_delta


def _require_field(ring: Ring):
    if ring is QQ or ring.kind == "prime_field":
        return
    raise InputError("this operation needs a field (rat or fp:<p>)")


@dataclass
class PluckerSquareVector:
    """Squares of the maximal minors of a full-rank d x n matrix, indexed by
    the size-d subsets of [n] (sorted tuples); projective data, so at least
    one entry is nonzero."""

    ring: Ring
    d: int
    n: int
    entries: dict

    def __post_init__(self):
        if not 1 <= self.d <= self.n:
            raise InputError("need 1 <= d <= n")
        subsets = list(itertools.combinations(range(1, self.n + 1), self.d))
        clean = {}
        nonzero = False
        for s in subsets:
            v = self.entries.get(s, self.ring.zero)
            self.ring.validate(v)
            clean[s] = v
            if not self.ring.is_zero(v):
                nonzero = True
        extra = set(self.entries) - set(subsets)
        if extra:
            raise InputError("unexpected subset keys: %r" % (sorted(extra),))
        if not nonzero:
            raise InputError("projective vector cannot be all zero")
        self.entries = clean

    def value(self, subset):
        return self.entries[tuple(sorted(subset))]


def squared_plucker(ring: Ring, rows, n: int) -> PluckerSquareVector:
    """Squares of all d x d column minors of a d x n matrix of rank d."""
    _require_field(ring)
    rows = [list(r) for r in rows]
    d = len(rows)
    if d == 0 or any(len(r) != n for r in rows):
        raise InputError("expected a nonempty d x %d matrix" % n)
    for r in rows:
        for v in r:
            ring.validate(v)
    entries = {}
    nonzero = False
    for subset in itertools.combinations(range(1, n + 1), d):
        sub = [[rows[r][c - 1] for c in subset] for r in range(d)]
        minor = det(ring, sub)
        if not ring.is_zero(minor):
            nonzero = True
        entries[subset] = ring.mul(minor, minor)
    if not nonzero:
        raise InputError("matrix has rank below %d" % d)
    return PluckerSquareVector(ring, d, n, entries)


def gr2_membership(q: PluckerSquareVector) -> HypdetReport:
    """Decide whether q is a squared Pluecker vector.

    Conditions: every product q_{S+i} * q_{S+j} (|S| = d-1, S disjoint from
    {i, j}) is a square in the field, and the orbit equations on n-1
    coordinates vanish for the auxiliary vector that places q on the two
    relevant subset sizes (its empty-set entry is 0; the equations are
    evaluated on the raw vector, no normalization).
    """
    ring, d, n = q.ring, q.d, q.n
    _require_field(ring)
    if ring.characteristic() == 3:
        raise UnsupportedRingError(
            "the hyperdeterminant criterion is unresolved over GF(3)"
        )
    pair_failures = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        rest = [t for t in range(1, n + 1) if t not in (i, j)]
        for s in itertools.combinations(rest, d - 1):
            v = ring.mul(q.value(s + (i,)), q.value(s + (j,)))
            if not ring.is_square(v):
                pair_failures.append(((i, j, s), v))
    if pair_failures:
        return HypdetReport("fail", pair_failures=pair_failures)
    m = n - 1
    entries = [ring.zero] * (1 << m)
    for mask in range(1 << m):
        subset = tuple(t for t in range(1, m + 1) if mask >> (t - 1) & 1)
        if len(subset) == d:
            entries[mask] = q.value(subset)
        elif len(subset) == d - 1:
            entries[mask] = q.value(subset + (n,))
    aux = MinorVector(ring, m, entries)
    if m >= 3:
        f = minor_polynomial(aux)
        points = evaluation_points(ring)
        cache = {}
        for triple in itertools.combinations(range(1, m + 1), 3):
            for combo in itertools.product(points, repeat=m - 3):
                eq = OrbitEquationId(triple, tuple(combo))
                val = _evaluate_equation(f, ring, m, eq, cache)
                if not ring.is_zero(val):
                    return HypdetReport("fail", failed_equation=eq, failed_value=val)
    return HypdetReport("pass")


@dataclass
class DetRep:
    """A representation f = scale * det(sum_i x_i v_i v_i^T + W): the
    columns of V are the v_i and W is symmetric of the same size."""

    scale: object
    V: Tuple[Tuple[object, ...], ...]  # m rows, n columns
    W: SymMatrix

    @property
    def m(self):
        return self.W.n

    @property
    def n(self):
        return len(self.V[0]) if self.V else 0


def _pencil_matrix_polys(ring, V, W, n):
    m = W.n
    entries = []
    for r in range(m):
        row = []
        for c in range(m):
            terms = {}
            const = W.rows[r][c]
            if not ring.is_zero(const):
                terms[(0,) * n] = const
            for i in range(n):
                coeff = ring.mul(V[r][i], V[c][i])
                if not ring.is_zero(coeff):
                    exp = [0] * n
                    exp[i] = 1
                    terms[tuple(exp)] = coeff
            row.append(MultiPoly(ring, n, terms))
        entries.append(row)
    return entries


def expand_detrep(ring: Ring, rep: DetRep, n: int) -> MultiPoly:
    """Symbolic expansion of the represented polynomial in n variables."""
    if rep.m == 0:
        return MultiPoly.constant(ring, n, rep.scale)
    entries = _pencil_matrix_polys(ring, rep.V, rep.W, n)
    return poly_det(entries).scale(rep.scale)


def verify_detrep(f: MultiPoly, rep: DetRep) -> bool:
    """Exact check of the identity by cofactor expansion over the polynomial
    ring, plus the rank condition: v_i vanishes exactly when f does not
    involve x_i."""
    ring = f.ring
    _require_field(ring)
    n = f.nvars
    if rep.m and (len(rep.V) != rep.m or any(len(row) != n for row in rep.V)):
        raise InputError("V must be m x n")
    if ring.is_zero(rep.scale):
        return False
    if expand_detrep(ring, rep, n) != f:
        return False
    for i in range(n):
        col_zero = all(ring.is_zero(rep.V[r][i]) for r in range(rep.m))
        want = 0 if col_zero else 1
        if f.degree(i + 1) != want:
            return False
    return True


def _rank_one_column(ring, mat):
    d = len(mat)
    if all(ring.is_zero(mat[r][c]) for r in range(d) for c in range(d)):
        return [ring.zero] * d
    pivot = None
    for t in range(d):
        if not ring.is_zero(mat[t][t]):
            pivot = t
            break
    if pivot is None:
        raise InternalInconsistencyError(
            "rank-one coefficient matrix with zero diagonal"
        )
    root = ring.sqrt(mat[pivot][pivot])
    if root is None:
        raise InternalInconsistencyError("rank-one diagonal entry is not a square")
    col = [ring.div(mat[s][pivot], root) for s in range(d)]
    col[pivot] = root
    for r in range(d):
        for c in range(d):
            if mat[r][c] != ring.mul(col[r], col[c]):
                raise InternalInconsistencyError("rank-one factorization failed")
    return col


def multiaffine_detrep(f: MultiPoly) -> DetRep:
    """Construct a representation of size m = deg(f) for a multiaffine f
    over a field, provided every Rayleigh difference of f is a square
    (raises NoRepresentationError otherwise, naming the first bad pair).

    The top-degree monomial support is permuted to the front, the input is
    scaled monic there and homogenized, the pencil construction runs with
    the trailing variables as parameters, and the parameter matrices are
    split into rank-one factors; the permutation is undone on output.
    """
    ring = f.ring
    _require_field(ring)
    if not f.is_multiaffine():
        raise InputError("determinantal representations here require multiaffine input")
    if f.is_zero():
        raise InputError("the zero polynomial has no degree; nothing to represent")
    n = f.nvars
    for i, j in itertools.combinations(range(1, n + 1), 2):
        delta = rayleigh_delta(f, i, j)
        if not poly_sqrt(delta).is_square:
            raise NoRepresentationError((i, j), delta)
    d = f.total_degree()
    if d == 0:
        return DetRep(f.constant_value(), tuple(), SymMatrix.zeros(ring, 0))
    support = None
    for subset in itertools.combinations(range(1, n + 1), d):
        exp = [0] * n
        for i in subset:
            exp[i - 1] = 1
        if not ring.is_zero(f.coeff(exp)):
            support = subset
            scale = f.coeff(exp)
            break
    if support is None:
        raise InternalInconsistencyError("no top-degree multiaffine monomial found")
    others = [i for i in range(1, n + 1) if i not in support]
    mapping = {}
    for pos, var in enumerate(support, start=1):
        mapping[var] = pos
    for pos, var in enumerate(others, start=d + 1):
        mapping[var] = pos
    monic = f.permute_variables(mapping).scale(ring.inv(scale))
    fbar = monic.total_homogenize(d)
    mats = determinantal_pencil(fbar, d)
    # the diag(x_1..x_d) part is invariant under a common diagonal +-1
    # conjugation, so all parameter matrices can be canonicalized together
    sign = _canonical_sign_vector(ring, [mats[z] for z in sorted(mats)], d)
    mats = {z: conjugate_by_signs(ring, m, sign) for z, m in mats.items()}
    W = SymMatrix(ring, d, mats[n + 1])
    columns = {}
    for pos, var in enumerate(support, start=1):
        col = [ring.zero] * d
        col[pos - 1] = ring.one
        columns[var] = col
    for pos, var in enumerate(others, start=d + 1):
        columns[var] = _rank_one_column(ring, mats[pos])
    V = tuple(tuple(columns[var][r] for var in range(1, n + 1)) for r in range(d))
    rep = DetRep(scale, V, W)
    if not verify_detrep(f, rep):
        raise InternalInconsistencyError("constructed representation failed verification")
    return rep
