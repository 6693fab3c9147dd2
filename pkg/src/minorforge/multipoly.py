"""Sparse multivariate polynomials with exact coefficients.

Terms are a dict from exponent tuples (length ``nvars``) to nonzero
coefficients of one ring; the zero polynomial has an empty term map.
Instances are treated as immutable and every operation returns a new
polynomial.  Variable indices in the public API are 1-based.

Two layout conventions are used by callers and never enforced by a type:

* plain polynomials in x_1..x_n;
* paired polynomials in 2m variables read as (x_1..x_m, y_1..y_m), used for
  per-pair homogeneous forms.

The canonical term order is graded lexicographic (total degree first, then
exponent tuples with earlier variables weighing more); serialization and
leading-term queries use it.
"""

from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass

from .errors import InputError, InternalInconsistencyError, RingMismatchError
from .rings import Ring


def _grlex(exp):
    return (sum(exp), exp)


def _mul_terms(ring, t1, t2):
    """Raw term-map product.  The coefficient arithmetic is specialized per
    ring kind; the exponent sum via map/operator.add is the fastest tuple
    combination available without changing the storage format."""
    add_e = operator.add
    out = {}
    kind = ring.kind
    if kind == "prime_field":
        p = ring.p
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                c = c1 * c2 % p
                if not c:
                    continue
                e = tuple(map(add_e, e1, e2))
                prev = out.get(e)
                if prev is None:
                    out[e] = c
                else:
                    s = (prev + c) % p
                    if s:
                        out[e] = s
                    else:
                        del out[e]
    elif kind == "int":
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                e = tuple(map(add_e, e1, e2))
                prev = out.get(e)
                if prev is None:
                    out[e] = c1 * c2
                else:
                    s = prev + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        del out[e]
    else:
        mul, radd, is_zero = ring.mul, ring.add, ring.is_zero
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                c = mul(c1, c2)
                if is_zero(c):
                    continue
                e = tuple(map(add_e, e1, e2))
                prev = out.get(e)
                if prev is None:
                    out[e] = c
                else:
                    s = radd(prev, c)
                    if is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
    return out


def _add_terms_inplace(ring, acc, terms, negate=False):
    kind = ring.kind
    if kind == "prime_field":
        p = ring.p
        for e, c in terms.items():
            if negate:
                c = -c % p
            prev = acc.get(e)
            if prev is None:
                acc[e] = c
            else:
                s = (prev + c) % p
                if s:
                    acc[e] = s
                else:
                    del acc[e]
    elif kind == "int":
        for e, c in terms.items():
            if negate:
                c = -c
            prev = acc.get(e)
            if prev is None:
                acc[e] = c
            else:
                s = prev + c
                if s:
                    acc[e] = s
                else:
                    del acc[e]
    else:
        radd, neg, is_zero = ring.add, ring.neg, ring.is_zero
        for e, c in terms.items():
            if negate:
                c = neg(c)
            prev = acc.get(e)
            if prev is None:
                acc[e] = c
            else:
                s = radd(prev, c)
                if is_zero(s):
                    del acc[e]
                else:
                    acc[e] = s


class MultiPoly:
    __slots__ = ("ring", "nvars", "terms")

    def __init__(self, ring: Ring, nvars: int, terms=None):
        if nvars < 0:
            raise InputError("nvars must be nonnegative")
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise InputError("bad exponent vector %r" % (exp,))
                if not ring.is_zero(c):
                    clean[exp] = c
        self.ring = ring
        self.nvars = nvars
        self.terms = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, ring, nvars):
        return cls(ring, nvars, {})

    @classmethod
    def constant(cls, ring, nvars, value):
        return cls(ring, nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, ring, nvars, i):
        if not 1 <= i <= nvars:
            raise InputError("variable index %d out of range" % i)
        exp = [0] * nvars
        exp[i - 1] = 1
        return cls(ring, nvars, {tuple(exp): ring.one})

    @classmethod
    def monomial(cls, ring, nvars, exp, coeff):
        return cls(ring, nvars, {tuple(exp): coeff})

    # -- basic queries ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.ring.zero)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.ring.zero)

    def degree(self, i):
        """Degree in variable i (0 for the zero polynomial)."""
        if not 1 <= i <= self.nvars:
            raise InputError("variable index %d out of range" % i)
        return max((e[i - 1] for e in self.terms), default=0)

    def degrees(self):
        return tuple(self.degree(i) for i in range(1, self.nvars + 1))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def is_multiaffine(self):
        return all(all(x <= 1 for x in e) for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_term(self):
        """(exponent, coefficient) maximal in the canonical order."""
        if not self.terms:
            raise InputError("the zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex)
        return exp, self.terms[exp]

    def canonical_items(self):
        """Terms sorted leading-first in the canonical order."""
        return sorted(self.terms.items(), key=lambda kv: _grlex(kv[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------------

    def _like(self, other):
        if not isinstance(other, MultiPoly):
            raise InputError("expected a polynomial, got %r" % (other,))
        self.ring.require_same(other.ring)
        if self.nvars != other.nvars:
            raise RingMismatchError(
                "variable-count mismatch: %d vs %d" % (self.nvars, other.nvars)
            )

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        self._like(other)
        ring = self.ring
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = ring.add(out.get(exp, ring.zero), c)
            if ring.is_zero(s):
                out.pop(exp, None)
            else:
                out[exp] = s
        res = MultiPoly.__new__(MultiPoly)
        res.ring, res.nvars, res.terms = ring, self.nvars, out
        return res

    def __neg__(self):
        neg = self.ring.neg
        res = MultiPoly.__new__(MultiPoly)
        res.ring, res.nvars = self.ring, self.nvars
        res.terms = {exp: neg(c) for exp, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._like(other)
        res = MultiPoly.__new__(MultiPoly)
        res.ring, res.nvars = self.ring, self.nvars
        res.terms = _mul_terms(self.ring, self.terms, other.terms)
        return res

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError("polynomial powers must use nonnegative integers")
        result = MultiPoly.constant(self.ring, self.nvars, self.ring.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c):
        ring = self.ring
        if ring.is_zero(c):
            return MultiPoly.zero(ring, self.nvars)
        mul = ring.mul
        res = MultiPoly.__new__(MultiPoly)
        res.ring, res.nvars = ring, self.nvars
        res.terms = {e: v for e, v in ((e, mul(c, v)) for e, v in self.terms.items())
                     if not ring.is_zero(v)}
        return res

    # -- calculus and substitution ---------------------------------------------

    def partial_derivative(self, i):
        """Formal derivative in x_i; exponent multipliers live in the ring,
        so characteristic-p cancellation happens on its own."""
        if not 1 <= i <= self.nvars:
            raise InputError("variable index %d out of range" % i)
        ring = self.ring
        out = {}
        k = i - 1
        for exp, c in self.terms.items():
            e = exp[k]
            if e == 0:
                continue
            c2 = ring.mul(c, ring.of(e))
            if ring.is_zero(c2):
                continue
            nexp = exp[:k] + (e - 1,) + exp[k + 1:]
            prev = out.get(nexp)
            out[nexp] = c2 if prev is None else ring.add(prev, c2)
        return MultiPoly(ring, self.nvars, out)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise InputError(
                "point length %d does not match nvars %d" % (len(point), self.nvars)
            )
        ring = self.ring
        total = ring.zero
        for exp, c in self.terms.items():
            w = c
            for v, e in zip(point, exp):
                for _ in range(e):
                    w = ring.mul(w, v)
            total = ring.add(total, w)
        return total

    def specialize(self, i, value):
        """Substitute the ring constant value for x_i (keeps nvars)."""
        if not 1 <= i <= self.nvars:
            raise InputError("variable index %d out of range" % i)
        ring = self.ring
        k = i - 1
        out = {}
        for exp, c in self.terms.items():
            w = c
            for _ in range(exp[k]):
                w = ring.mul(w, value)
            if ring.is_zero(w):
                continue
            nexp = exp[:k] + (0,) + exp[k + 1:]
            prev = out.get(nexp)
            s = w if prev is None else ring.add(prev, w)
            if ring.is_zero(s):
                out.pop(nexp, None)
            else:
                out[nexp] = s
        return MultiPoly(ring, self.nvars, out)

    def split_by_variable(self, i):
        """{d: coefficient polynomial of x_i**d}, each with degree 0 in x_i."""
        if not 1 <= i <= self.nvars:
            raise InputError("variable index %d out of range" % i)
        k = i - 1
        buckets = {}
        for exp, c in self.terms.items():
            d = exp[k]
            nexp = exp[:k] + (0,) + exp[k + 1:]
            buckets.setdefault(d, {})[nexp] = c
        return {
            d: MultiPoly(self.ring, self.nvars, t) for d, t in buckets.items()
        }

    def permute_variables(self, mapping):
        """Relabel variables; mapping[old] = new, both 1-based, a bijection."""
        if sorted(mapping) != list(range(1, self.nvars + 1)) or sorted(
            mapping.values()
        ) != list(range(1, self.nvars + 1)):
            raise InputError("mapping must be a bijection on 1..nvars")
        out = {}
        for exp, c in self.terms.items():
            nexp = [0] * self.nvars
            for old, e in enumerate(exp, start=1):
                nexp[mapping[old] - 1] = e
            out[tuple(nexp)] = c
        return MultiPoly(self.ring, self.nvars, out)

    # -- homogenization ----------------------------------------------------------

    def multi_homogenize(self, d):
        """Per-variable homogenization: a polynomial in 2*nvars variables
        (x_1..x_n, y_1..y_n), homogeneous of degree d_i in each pair; setting
        every y_i = 1 restores the original."""
        d = tuple(d)
        if len(d) != self.nvars:
            raise InputError("degree-bound vector has wrong length")
        for i in range(1, self.nvars + 1):
            if d[i - 1] < self.degree(i):
                raise InputError("degree bound %r too small in variable %d" % (d, i))
        n = self.nvars
        out = {}
        for exp, c in self.terms.items():
            nexp = exp + tuple(b - e for b, e in zip(d, exp))
            out[nexp] = c
        return MultiPoly(self.ring, 2 * n, out)

    def restrict_ys_to_one(self):
        """Inverse direction of multi_homogenize: drop the second half of the
        variables (substituting 1), merging coefficients."""
        if self.nvars % 2:
            raise InputError("paired polynomial must have an even variable count")
        n = self.nvars // 2
        ring = self.ring
        out = {}
        for exp, c in self.terms.items():
            nexp = exp[:n]
            prev = out.get(nexp)
            s = c if prev is None else ring.add(prev, c)
            if ring.is_zero(s):
                out.pop(nexp, None)
            else:
                out[nexp] = s
        return MultiPoly(ring, n, out)

    def total_homogenize(self, d):
        """Homogenize to total degree d with one fresh last variable."""
        if d < self.total_degree():
            raise InputError("total degree bound %d too small" % d)
        out = {}
        for exp, c in self.terms.items():
            out[exp + (d - sum(exp),)] = c
        return MultiPoly(self.ring, self.nvars + 1, out)

    def restrict_last_to_one(self):
        """Substitute 1 for the last variable and drop it."""
        if self.nvars == 0:
            raise InputError("no variable to restrict")
        ring = self.ring
        out = {}
        for exp, c in self.terms.items():
            nexp = exp[:-1]
            prev = out.get(nexp)
            s = c if prev is None else ring.add(prev, c)
            if ring.is_zero(s):
                out.pop(nexp, None)
            else:
                out[nexp] = s
        return MultiPoly(ring, self.nvars - 1, out)

    def homogenize_into(self, i, d):
        """Raise every term to total degree d using powers of x_i; the input
        must have degree 0 in x_i already."""
        if not 1 <= i <= self.nvars:
            raise InputError("variable index %d out of range" % i)
        k = i - 1
        out = {}
        for exp, c in self.terms.items():
            if exp[k] != 0:
                raise InputError("input already involves variable %d" % i)
            t = sum(exp)
            if t > d:
                raise InputError("degree bound %d too small" % d)
            out[exp[:k] + (d - t,) + exp[k + 1:]] = c
        return MultiPoly(self.ring, self.nvars, out)

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exp, c in self.canonical_items():
            mono = "*".join(
                "x%d" % (i + 1) if e == 1 else "x%d^%d" % (i + 1, e)
                for i, e in enumerate(exp)
                if e
            )
            cs = self.ring.format(c)
            bits.append(cs if not mono else ("%s*%s" % (cs, mono)))
        return " + ".join(bits)


@dataclass(frozen=True)
class P1Point:
    """Projective line point in normal form: (r, 1) with r in the ring,
    or the point at infinity (1, 0)."""

    ring: Ring
    x: object
    y: object

    def __post_init__(self):
        r = self.ring
        ok = self.y == r.one or (r.is_zero(self.y) and self.x == r.one)
        if not ok:
            raise InputError("projective point must be (r, 1) or (1, 0)")

    def is_infinity(self):
        return self.ring.is_zero(self.y)


def affine_point(ring, value) -> P1Point:
    return P1Point(ring, value, ring.one)


def infinity_point(ring) -> P1Point:
    return P1Point(ring, ring.one, ring.zero)


def projective_line(field) -> list[P1Point]:
    """All points of the projective line over GF(p), affine first."""
    p = field.characteristic()
    if p == 0:
        raise InputError("projective_line needs a finite field")
    pts = [affine_point(field, field.of(r)) for r in range(p)]
    pts.append(infinity_point(field))
    return pts


def grid_is_zero(g: MultiPoly, d, pointsets) -> bool:
    """Whether a paired-form polynomial vanishes on a full evaluation grid.

    g has 2m variables read as pairs (x_i, y_i) and must be homogeneous of
    degree d_i in each pair; pointsets[i] supplies the P1 points for pair i.
    When every pointset has at least d_i + 1 distinct points, vanishing on
    the grid is equivalent to g being structurally zero, and that agreement
    is asserted.  Smaller pointsets are allowed (the equivalence then fails
    in general, e.g. over GF(3)) and only the grid verdict is returned.
    """
    if g.nvars % 2:
        raise InputError("paired polynomial must have an even variable count")
    m = g.nvars // 2
    d = tuple(d)
    if len(d) != m or len(pointsets) != m:
        raise InputError("need one degree bound and one pointset per pair")
    for exp in g.terms:
        for i in range(m):
            if exp[i] + exp[m + i] != d[i]:
                raise InputError("polynomial is not homogeneous of the stated pair degrees")
    ring = g.ring
    for i, pts in enumerate(pointsets):
        if not pts:
            raise InputError("empty pointset for pair %d" % (i + 1))
        seen = set()
        for pt in pts:
            ring.require_same(pt.ring)
            key = (ring.format(pt.x), ring.format(pt.y))
            if key in seen:
                raise InputError("duplicate point in pointset %d" % (i + 1))
            seen.add(key)
    vanishes = True
    for combo in itertools.product(*pointsets):
        point = [pt.x for pt in combo] + [pt.y for pt in combo]
        if not ring.is_zero(g.evaluate(point)):
            vanishes = False
            break
    if all(len(pts) >= d[i] + 1 for i, pts in enumerate(pointsets)):
        if vanishes != g.is_zero():
            raise InternalInconsistencyError(
                "grid vanishing disagrees with structural zero on an adequate grid"
            )
    return vanishes


def divide_exact(f: MultiPoly, g: MultiPoly):
    """Quotient q with q*g == f when g divides f exactly, else None.

    Single-divisor multivariate division in the canonical order.  Over an
    integral domain this decides divisibility whenever the leading
    coefficient of g divides every coefficient it must cancel (always true
    for the unit-leading divisors used here, and for fields).
    """
    f._like(g)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    ring = f.ring
    gl_exp, gl_c = g.leading_term()
    rem = dict(f.terms)
    quo = {}
    while rem:
        exp = max(rem, key=_grlex)
        c = rem[exp]
        diff = tuple(a - b for a, b in zip(exp, gl_exp))
        if any(x < 0 for x in diff):
            return None
        qc = ring.exact_div(c, gl_c)
        if qc is None:
            return None
        quo[diff] = qc
        for ge, gc in g.terms.items():
            e = tuple(a + b for a, b in zip(diff, ge))
            s = ring.sub(rem.get(e, ring.zero), ring.mul(qc, gc))
            if ring.is_zero(s):
                rem.pop(e, None)
            else:
                rem[e] = s
    return MultiPoly(ring, f.nvars, quo)


_PACK_SHIFT = 8
_PACK_MASK = (1 << _PACK_SHIFT) - 1


def _packable(entries, n):
    # exponents of any k-fold entry product must stay below the field width
    maxd = 0
    for row in entries:
        for e in row:
            for exp in e.terms:
                m = max(exp, default=0)
                if m > maxd:
                    maxd = m
    return maxd * n <= _PACK_MASK


def _pack_terms(terms):
    out = {}
    for exp, c in terms.items():
        key = 0
        for i, e in enumerate(exp):
            key |= e << (_PACK_SHIFT * i)
        out[key] = c
    return out


def _unpack_terms(packed, nvars):
    out = {}
    for key, c in packed.items():
        out[tuple((key >> (_PACK_SHIFT * i)) & _PACK_MASK for i in range(nvars))] = c
    return out


def _mul_terms_packed(ring, t1, t2):
    out = {}
    kind = ring.kind
    if kind == "prime_field":
        p = ring.p
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                c = c1 * c2 % p
                if not c:
                    continue
                e = e1 + e2
                prev = out.get(e)
                if prev is None:
                    out[e] = c
                else:
                    s = (prev + c) % p
                    if s:
                        out[e] = s
                    else:
                        del out[e]
    elif kind == "int":
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                e = e1 + e2
                prev = out.get(e)
                if prev is None:
                    out[e] = c1 * c2
                else:
                    s = prev + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        del out[e]
    else:
        mul, radd, is_zero = ring.mul, ring.add, ring.is_zero
        for e1, c1 in t1.items():
            for e2, c2 in t2.items():
                c = mul(c1, c2)
                if is_zero(c):
                    continue
                e = e1 + e2
                prev = out.get(e)
                if prev is None:
                    out[e] = c
                else:
                    s = radd(prev, c)
                    if is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
    return out


def _pdet_packed(rows, cols, packed, memo, ring):
    if len(rows) == 1:
        return packed[rows[0]][cols[0]]
    key = (rows, cols)
    cached = memo.get(key)
    if cached is not None:
        return cached
    r0 = rows[0]
    rest = rows[1:]
    acc = {}
    for idx, c in enumerate(cols):
        e = packed[r0][c]
        if not e:
            continue
        sub = _pdet_packed(rest, cols[:idx] + cols[idx + 1:], packed, memo, ring)
        _add_terms_inplace(ring, acc, _mul_terms_packed(ring, e, sub), negate=idx % 2 == 1)
    memo[key] = acc
    return acc


def poly_det(entries):
    """Determinant of a square matrix of polynomials, by first-row expansion
    with memoized minors (fine for the small symbolic matrices used here)."""
    n = len(entries)
    if n == 0:
        raise InputError("empty matrix has no defined entry ring; use size >= 1")
    ring = entries[0][0].ring
    nvars = entries[0][0].nvars
    if _packable(entries, n):
        packed = [[_pack_terms(e.terms) for e in row] for row in entries]
        full = tuple(range(n))
        res = MultiPoly.__new__(MultiPoly)
        res.ring, res.nvars = ring, nvars
        res.terms = dict(_unpack_terms(_pdet_packed(full, full, packed, {}, ring), nvars))
        return res
    memo = {}
    return _pdet(tuple(range(n)), tuple(range(n)), entries, memo, ring, nvars)


def _pdet(rows, cols, entries, memo, ring, nvars):
    if len(rows) == 1:
        return entries[rows[0]][cols[0]]
    key = (rows, cols)
    cached = memo.get(key)
    if cached is not None:
        return cached
    r0 = rows[0]
    rest = rows[1:]
    acc = {}
    for idx, c in enumerate(cols):
        e = entries[r0][c]
        if e.is_zero():
            continue
        sub = _pdet(rest, cols[:idx] + cols[idx + 1:], entries, memo, ring, nvars)
        _add_terms_inplace(ring, acc, _mul_terms(ring, e.terms, sub.terms), negate=idx % 2 == 1)
    res = MultiPoly.__new__(MultiPoly)
    res.ring, res.nvars, res.terms = ring, nvars, acc
    memo[key] = res
    return res


def poly_adjugate(entries, symmetric=False):
    """Adjugate of a square polynomial matrix: adj[i][j] is the (j, i)
    cofactor, so M @ adj(M) = det(M) * Id."""
    _, adj = poly_det_adjugate(entries, symmetric=symmetric)
    return adj


def poly_det_adjugate(entries, symmetric=False):
    """Determinant and adjugate in one pass over a shared minor cache; with
    symmetric=True only the upper triangle of the adjugate is expanded."""
    n = len(entries)
    ring = entries[0][0].ring
    nvars = entries[0][0].nvars
    if n == 1:
        return entries[0][0], [[MultiPoly.constant(ring, nvars, ring.one)]]
    full = tuple(range(n))
    if _packable(entries, n):
        packed = [[_pack_terms(e.terms) for e in row] for row in entries]
        memo = {}

        def mk(terms):
            res = MultiPoly.__new__(MultiPoly)
            res.ring, res.nvars = ring, nvars
            res.terms = _unpack_terms(terms, nvars)
            return res

        d = mk(_pdet_packed(full, full, packed, memo, ring))
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i if symmetric else 0, n):
                rows = tuple(r for r in full if r != j)
                cols = tuple(c for c in full if c != i)
                m = mk(_pdet_packed(rows, cols, packed, memo, ring))
                adj[i][j] = m if (i + j) % 2 == 0 else -m
                if symmetric:
                    adj[j][i] = adj[i][j]
        return d, adj
    memo = {}
    d = _pdet(full, full, entries, memo, ring, nvars)
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i if symmetric else 0, n):
            rows = tuple(r for r in full if r != j)
            cols = tuple(c for c in full if c != i)
            m = _pdet(rows, cols, entries, memo, ring, nvars)
            adj[i][j] = m if (i + j) % 2 == 0 else -m
            if symmetric:
                adj[j][i] = adj[i][j]
    return d, adj
