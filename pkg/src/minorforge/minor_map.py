"""The principal minor map, its membership decision, and constructive
reconstruction of a realizing symmetric matrix.

A length-2^n vector indexed by subsets of [n] (bitmask order, bit i-1 for
element i) is realizable by a symmetric matrix over the ring exactly when
its empty-set entry is 1 and every Rayleigh difference of the associated
multiaffine polynomial is a polynomial square.  Reconstruction follows the
constructive route: homogenize, split into irreducible blocks via the
vanishing pattern of the Rayleigh differences, rebuild each block from the
square roots through an adjugate, and glue block-diagonally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    DegenerateOrbitError,
    InputError,
    InternalInconsistencyError,
    RingMismatchError,
)
from .multipoly import MultiPoly, divide_exact, poly_det, poly_det_adjugate
from .rings import QQ, ZZ, Ring
from .squares import poly_sqrt, rayleigh_delta


class SymMatrix:
    """Symmetric n x n matrix over one ring; symmetry is enforced on
    construction and entries are immutable afterwards."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: Ring, n: int, rows):
        if n < 0:
            raise InputError("matrix size must be nonnegative")
        rows = [list(r) for r in rows]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError("expected an %d x %d entry grid" % (n, n))
        for i in range(n):
            for j in range(n):
                ring.validate(rows[i][j])
                if rows[i][j] != rows[j][i]:
                    raise InputError("matrix is not symmetric at (%d, %d)" % (i + 1, j + 1))
        self.ring = ring
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def zeros(cls, ring, n):
        z = ring.zero
        return cls(ring, n, [[z] * n for _ in range(n)])

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls(ring, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    def entry(self, i, j):
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return self.ring == other.ring and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.rows))

    def __repr__(self):
        return "SymMatrix(%s, %r)" % (self.ring, [list(r) for r in self.rows])


def det(ring: Ring, rows) -> object:
    """Determinant over any supported domain: cofactor expansion for tiny
    sizes, fraction-free (Bareiss) elimination beyond."""
    k = len(rows)
    if k <= 3:
        return _det_cofactor(ring, rows)
    return _det_bareiss(ring, rows)


def _det_cofactor(ring, rows):
    k = len(rows)
    if k == 0:
        return ring.one
    if k == 1:
        return rows[0][0]
    mul, sub = ring.mul, ring.sub
    if k == 2:
        return sub(mul(rows[0][0], rows[1][1]), mul(rows[0][1], rows[1][0]))
    if k == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        t1 = mul(a, sub(mul(e, i), mul(f, h)))
        t2 = mul(b, sub(mul(d, i), mul(f, g)))
        t3 = mul(c, sub(mul(d, h), mul(e, g)))
        return ring.add(sub(t1, t2), t3)
    total = ring.zero
    sign = 1
    tail = [r[1:] for r in rows]
    for i in range(k):
        if not ring.is_zero(rows[i][0]):
            minor = [tail[r] for r in range(k) if r != i]
            term = mul(rows[i][0], _det_cofactor(ring, minor))
            total = ring.add(total, term if sign > 0 else ring.neg(term))
        sign = -sign
    return total


def _det_bareiss(ring, rows):
    # Fraction-free elimination: every division is exact over an integral
    # domain by the Sylvester identity.
    k = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = ring.one
    for col in range(k - 1):
        if ring.is_zero(m[col][col]):
            for r in range(col + 1, k):
                if not ring.is_zero(m[r][col]):
                    m[col], m[r] = m[r], m[col]
                    sign = -sign
                    break
            else:
                return ring.zero
        for i in range(col + 1, k):
            for j in range(col + 1, k):
                num = ring.sub(
                    ring.mul(m[col][col], m[i][j]), ring.mul(m[i][col], m[col][j])
                )
                q = ring.exact_div(num, prev)
                if q is None:
                    raise InternalInconsistencyError("fraction-free elimination lost exactness")
                m[i][j] = q
            m[i][col] = ring.zero
        prev = m[col][col]
    d = m[k - 1][k - 1]
    return d if sign > 0 else ring.neg(d)


def matrix_rank(ring: Ring, rows) -> int:
    """Rank via fraction-free elimination with full pivoting."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    prev = ring.one
    row = 0
    for col in range(nc):
        piv = None
        for r in range(row, nr):
            if not ring.is_zero(m[r][col]):
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        for i in range(row + 1, nr):
            for j in range(col + 1, nc):
                num = ring.sub(ring.mul(m[row][col], m[i][j]), ring.mul(m[i][col], m[row][j]))
                q = ring.exact_div(num, prev)
                if q is None:
                    raise InternalInconsistencyError("fraction-free elimination lost exactness")
                m[i][j] = q
            m[i][col] = ring.zero
        prev = m[row][col]
        rank += 1
        row += 1
        if row == nr:
            break
    return rank


class MinorVector:
    """All 2^n principal minors, indexed by subset bitmask (bit i-1 is
    element i); entry 0 is the empty-set minor."""

    __slots__ = ("ring", "n", "entries")

    def __init__(self, ring: Ring, n: int, entries):
        if n < 1:
            raise InputError("minor vectors need n >= 1")
        entries = list(entries)
        if len(entries) != 1 << n:
            raise InputError("expected %d entries, got %d" % (1 << n, len(entries)))
        for v in entries:
            ring.validate(v)
        self.ring = ring
        self.n = n
        self.entries = tuple(entries)

    def by_subset(self, subset):
        mask = 0
        for i in subset:
            if not 1 <= i <= self.n:
                raise InputError("subset element %d out of range" % i)
            mask |= 1 << (i - 1)
        return self.entries[mask]

    def __eq__(self, other):
        if not isinstance(other, MinorVector):
            return NotImplemented
        return self.ring == other.ring and self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.entries))

    def __repr__(self):
        return "MinorVector(%s, n=%d, %r)" % (self.ring, self.n, list(self.entries))


@dataclass
class Failure:
    kind: str  # a_empty_not_one | delta_not_square | hypdet_equation_nonzero | pair_not_square | pair_negative
    detail: dict = field(default_factory=dict)


@dataclass
class MembershipCertificate:
    verdict: str  # "in_image" | "not_in_image"
    witness: Optional[SymMatrix] = None
    square_roots: Optional[dict] = None
    failure: Optional[Failure] = None

    @property
    def in_image(self):
        return self.verdict == "in_image"


def principal_minors(a: SymMatrix) -> MinorVector:
    """Forward map: the determinant of every principal submatrix; the empty
    set contributes 1."""
    ring, n = a.ring, a.n
    if n < 1:
        raise InputError("principal_minors needs n >= 1")
    out = []
    for mask in range(1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        sub = [[a.rows[r][c] for c in idx] for r in idx]
        out.append(det(ring, sub))
    return MinorVector(ring, n, out)


def minor_polynomial(a: MinorVector) -> MultiPoly:
    """The multiaffine polynomial whose coefficient on the monomial of the
    complement of S is the S-entry of the vector."""
    n = a.n
    full = (1 << n) - 1
    terms = {}
    for mask, c in enumerate(a.entries):
        if a.ring.is_zero(c):
            continue
        comp = full ^ mask
        exp = tuple(comp >> i & 1 for i in range(n))
        terms[exp] = c
    return MultiPoly(a.ring, n, terms)


def vector_from_polynomial(f: MultiPoly) -> MinorVector:
    """Inverse of minor_polynomial; requires a multiaffine input."""
    if not f.is_multiaffine():
        raise InputError("coefficient vectors exist only for multiaffine polynomials")
    n = f.nvars
    full = (1 << n) - 1
    entries = [f.ring.zero] * (1 << n)
    for exp, c in f.terms.items():
        mono = 0
        for i, e in enumerate(exp):
            if e:
                mono |= 1 << i
        entries[full ^ mono] = c
    return MinorVector(f.ring, n, entries)


def decide_membership_delta(a: MinorVector, with_witness: bool = True) -> MembershipCertificate:
    """Realizability test: empty-set entry 1 plus squareness of every
    Rayleigh difference.  On success the witness matrix is reconstructed
    (unless suppressed) and the square roots are attached; on failure the
    first offending pair and its non-square polynomial are reported."""
    ring = a.ring
    if a.entries[0] != ring.one:
        return MembershipCertificate(
            "not_in_image",
            failure=Failure("a_empty_not_one", {"value": a.entries[0]}),
        )
    f = minor_polynomial(a)
    roots = {}
    for i, j in itertools.combinations(range(1, a.n + 1), 2):
        delta = rayleigh_delta(f, i, j)
        w = poly_sqrt(delta)
        if not w.is_square:
            return MembershipCertificate(
                "not_in_image",
                failure=Failure(
                    "delta_not_square",
                    {"pair": (i, j), "polynomial": delta},
                ),
            )
        roots[(i, j)] = w.root
    witness = reconstruct(a) if with_witness else None
    return MembershipCertificate("in_image", witness=witness, square_roots=roots)


def factor_blocks(fbar: MultiPoly, n: int):
    """Split a homogenized realizable polynomial into its irreducible
    factors, without general factorization machinery.

    fbar must be multiaffine in the first n variables with the coefficient
    of their full product equal to 1 (further variables act as parameters).
    Variables i, j lie in a common irreducible factor exactly when the
    Rayleigh difference does not vanish, so the connected components of the
    nonvanishing graph are the factor supports; the factor on a component is
    the derivative of fbar by every variable outside it.  The factorization
    is verified by multiplying back.
    """
    ring = fbar.ring
    full = [0] * fbar.nvars
    for i in range(n):
        full[i] = 1
    if fbar.coeff(full) != ring.one:
        raise InputError("leading coefficient on the full product must be 1")
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in itertools.combinations(range(1, n + 1), 2):
        if not rayleigh_delta(fbar, i, j).is_zero():
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i)
    blocks = [tuple(sorted(g)) for g in groups.values()]
    blocks.sort(key=lambda b: b[0])
    result = []
    product = MultiPoly.constant(ring, fbar.nvars, ring.one)
    for block in blocks:
        p = fbar
        for j in range(1, n + 1):
            if j not in block:
                p = p.partial_derivative(j)
        exp = [0] * fbar.nvars
        for i in block:
            exp[i - 1] = 1
        if p.coeff(exp) != ring.one:
            raise InternalInconsistencyError("block factor is not monic on its support")
        product = product * p
        result.append((block, p))
    if product != fbar:
        raise InternalInconsistencyError("block factors do not multiply back to the input")
    return result


def _block_entry_polys(p: MultiPoly, block):
    """Entries of the block's symbolic matrix: derivatives on the diagonal,
    sign-consistent square roots of the Rayleigh differences elsewhere;
    for blocks of size >= 3 the off-pivot signs are fixed by divisibility
    against the block factor, then the adjugate is divided down."""
    ring = p.ring
    d = len(block)
    g = {}
    for i in block:
        g[(i, i)] = p.partial_derivative(i)
    for i, j in itertools.combinations(block, 2):
        w = poly_sqrt(rayleigh_delta(p, i, j))
        if not w.is_square:
            raise InternalInconsistencyError(
                "Rayleigh difference of an irreducible block factor is not a square"
            )
        g[(i, j)] = w.root

    def ge(i, j):
        return g[(i, j) if i <= j else (j, i)]

    t = block[0]
    for i, j in itertools.combinations(block[1:], 2):
        base = ge(t, j) * ge(t, i)
        plus = ge(t, t) * ge(i, j) - base
        if divide_exact(plus, p) is None:
            minus = -(ge(t, t) * ge(i, j)) - base
            if divide_exact(minus, p) is None:
                raise InternalInconsistencyError("no consistent sign for a block square root")
            g[(i, j)] = -g[(i, j)]
    G = [[ge(i, j) for j in block] for i in block]
    # Cofactor expansion with memoized minors, with the exact division pulled
    # inside: every k x k minor of G is divisible by p**(k-1) (the 2 x 2
    # minors vanish modulo p by the sign fixing above), so each memo node
    # stores minor / p**(k-1).  The top node then equals det(G) / p**(d-1),
    # which must be 1, and the adjugate divided by p**(d-2) is read off the
    # (d-1)-size reduced minors with cofactor signs.
    memo = {}

    def reduced_minor(rows, cols):
        if len(rows) == 1:
            return G[rows[0]][cols[0]]
        key = (rows, cols)
        cached = memo.get(key)
        if cached is not None:
            return cached
        r0 = rows[0]
        rest = rows[1:]
        acc = MultiPoly.zero(p.ring, p.nvars)
        for idx, c in enumerate(cols):
            term = G[r0][c] * reduced_minor(rest, cols[:idx] + cols[idx + 1:])
            acc = acc + term if idx % 2 == 0 else acc - term
        out = divide_exact(acc, p)
        if out is None:
            raise InternalInconsistencyError(
                "block minor not divisible by the expected factor power"
            )
        memo[key] = out
        return out

    full = tuple(range(d))
    if reduced_minor(full, full) != MultiPoly.constant(p.ring, p.nvars, p.ring.one):
        raise InternalInconsistencyError("block matrix determinant mismatch")
    entries = {}
    for r in range(d):
        for c in range(r, d):
            rows = tuple(x for x in full if x != c)
            cols = tuple(x for x in full if x != r)
            m = reduced_minor(rows, cols)
            entries[(block[r], block[c])] = m if (r + c) % 2 == 0 else -m
    return entries


def determinantal_pencil(fbar: MultiPoly, n: int):
    """Coefficient matrices of a pencil representation of fbar.

    fbar is homogeneous, multiaffine in variables 1..n with unit coefficient
    on their product; the remaining variables are parameters.  Returns
    {param index: n x n symmetric value matrix} so that fbar equals the
    determinant of diag(x_1..x_n) plus the parameter-weighted sum.
    """
    ring = fbar.ring
    params = list(range(n + 1, fbar.nvars + 1))
    mats = {z: [[ring.zero] * n for _ in range(n)] for z in params}
    for block, p in factor_blocks(fbar, n):
        if len(block) == 1:
            entries = {(block[0], block[0]): p}
        else:
            entries = _block_entry_polys(p, block)
        for (i, j), form in entries.items():
            saw_diag_var = False
            for exp, c in form.terms.items():
                if sum(exp) != 1:
                    raise InternalInconsistencyError("pencil entry is not a linear form")
                v = exp.index(1) + 1
                if v == i and i == j:
                    if c != ring.one:
                        raise InternalInconsistencyError("diagonal entry is not monic in its own variable")
                    saw_diag_var = True
                elif v in mats:
                    mats[v][i - 1][j - 1] = c
                    mats[v][j - 1][i - 1] = c
                else:
                    raise InternalInconsistencyError(
                        "pencil entry involves a foreign matrix variable"
                    )
            if i == j and not saw_diag_var:
                raise InternalInconsistencyError("diagonal entry misses its own variable")
    return mats


def _canonical_sign_vector(ring: Ring, mats, n):
    """Signs of the diagonal +-1 conjugation making the breadth-first tree
    entries carry the canonical ring orientation.  With several coefficient
    matrices sharing one conjugation, the first matrix with a nonzero entry
    on a tree edge decides that edge's sign."""
    sign = [0] * n
    for root in range(n):
        if sign[root]:
            continue
        sign[root] = 1
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in range(n):
                if v == u or sign[v]:
                    continue
                val = None
                for mat in mats:
                    if not ring.is_zero(mat[u][v]):
                        val = mat[u][v]
                        break
                if val is None:
                    continue
                if sign[u] == -1:
                    val = ring.neg(val)
                sign[v] = 1 if ring.is_canonical_root(val) else -1
                queue.append(v)
    return sign


def conjugate_by_signs(ring: Ring, mat, sign):
    n = len(mat)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = mat[i][j]
            out[i][j] = v if sign[i] * sign[j] == 1 else ring.neg(v)
    return out


def reconstruct(a: MinorVector) -> SymMatrix:
    """Build a symmetric matrix whose principal minors are the given vector.

    The realizability conditions are re-verified, the homogenized polynomial
    is split into blocks, each block is rebuilt through the adjugate of its
    square-root matrix, and the result is canonicalized inside its diagonal
    +-1 conjugation class.  The forward map of the output is checked against
    the input before returning.
    """
    ring, n = a.ring, a.n
    if a.entries[0] != ring.one:
        raise InputError("vector is not realizable: empty-set minor differs from 1")
    f = minor_polynomial(a)
    for i, j in itertools.combinations(range(1, n + 1), 2):
        if not poly_sqrt(rayleigh_delta(f, i, j)).is_square:
            raise InputError(
                "vector is not realizable: Rayleigh difference (%d, %d) is not a square" % (i, j)
            )
    fbar = f.total_homogenize(n)
    mats = determinantal_pencil(fbar, n)
    sign = _canonical_sign_vector(ring, [mats[n + 1]], n)
    witness = SymMatrix(ring, n, conjugate_by_signs(ring, mats[n + 1], sign))
    if principal_minors(witness) != a:
        raise InternalInconsistencyError("reconstructed matrix fails the forward check")
    return witness


@dataclass
class RescaleResult:
    scale: object  # leading coefficient of the acted polynomial, in the base ring
    rescaled: MinorVector  # (1/scale) * (gamma . a), over the rationals
    witness: SymMatrix  # rational matrix realizing the rescaled vector


def sl2_rescale_check(a: MinorVector, gamma) -> RescaleResult:
    """Act on a realizable vector over ZZ or QQ, rescale by the new leading
    coefficient, and realize the rescaled vector over the rationals.  When
    the base ring is ZZ, integrality of scale * witness is verified."""
    ring, n = a.ring, a.n
    if ring not in (ZZ, QQ):
        raise InputError("rescaling is defined over int or rat vectors")
    from .group_action import act_on_poly  # deferred: group_action imports this module

    f = minor_polynomial(a)
    acted = act_on_poly(gamma, f, (1,) * n)
    lam = acted.coeff((1,) * n)
    if ring.is_zero(lam):
        raise DegenerateOrbitError("acted polynomial has zero leading coefficient")
    lam_q = QQ.of(lam) if ring is ZZ else lam
    scaled_terms = {exp: QQ.exact_div(QQ.of(c) if ring is ZZ else c, lam_q)
                    for exp, c in acted.terms.items()}
    rescaled = vector_from_polynomial(MultiPoly(QQ, n, scaled_terms))
    witness = reconstruct(rescaled)
    if ring is ZZ:
        for row in witness.rows:
            for v in row:
                if (lam_q * v).denominator != 1:
                    raise InternalInconsistencyError(
                        "scale times the rational witness left the integers"
                    )
    return RescaleResult(lam, rescaled, witness)
