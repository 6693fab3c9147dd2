"""Rayleigh differences, binary discriminants, and exact polynomial square
roots.

The square-root routine targets the polynomials that arise from Rayleigh
differences of multiaffine inputs: degree at most two in every variable, or
homogeneous forms whose dehomogenizations are.  Detection is complete on
that class; a non-homogeneous polynomial of degree > 2 in some variable is
reported non-square without further analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import InputError, InternalInconsistencyError
from .multipoly import MultiPoly


@dataclass
class SquareWitness:
    """Outcome of a squareness test.  When is_square holds, root * root
    equals the tested polynomial exactly; otherwise failure_variable names
    the first variable (1-based) at which the recursion failed, or None for
    a constant-level failure."""

    is_square: bool
    root: Optional[MultiPoly]
    failure_variable: Optional[int]


def rayleigh_delta(f: MultiPoly, i: int, j: int) -> MultiPoly:
    """df/dx_i * df/dx_j - f * d2f/dx_i dx_j.

    For multiaffine f the result does not involve x_i or x_j and has degree
    at most two in every other variable; that contract is asserted.
    """
    if i == j:
        raise InputError("rayleigh_delta needs two distinct variables")
    fi = f.partial_derivative(i)
    fj = f.partial_derivative(j)
    fij = fi.partial_derivative(j)
    out = fi * fj - f * fij
    if f.is_multiaffine():
        degs = out.degrees()
        if degs[i - 1] != 0 or degs[j - 1] != 0 or any(d > 2 for d in degs):
            raise InternalInconsistencyError(
                "Rayleigh difference of a multiaffine polynomial has the wrong shape"
            )
    return out


def discriminant(g: MultiPoly, k: int) -> MultiPoly:
    """b^2 - 4ac for g = a*x_k^2 + b*x_k + c with a, b, c free of x_k."""
    if g.degree(k) > 2:
        raise InputError("degree in x_%d exceeds 2" % k)
    parts = g.split_by_variable(k)
    zero = MultiPoly.zero(g.ring, g.nvars)
    a = parts.get(2, zero)
    b = parts.get(1, zero)
    c = parts.get(0, zero)
    four = MultiPoly.constant(g.ring, g.nvars, g.ring.of(4))
    return b * b - four * a * c


def discriminant_pair(g: MultiPoly, k: int) -> MultiPoly:
    """b^2 - 4ac for a paired-form g = a*x_k^2 + b*x_k*y_k + c*y_k^2,
    homogeneous of degree two in the pair (x_k, y_k).  In characteristic two
    the same formula applies and equals b^2."""
    if g.nvars % 2:
        raise InputError("paired polynomial must have an even variable count")
    m = g.nvars // 2
    if not 1 <= k <= m:
        raise InputError("pair index %d out of range" % k)
    xi, yi = k - 1, m + k - 1
    buckets = {(2, 0): {}, (1, 1): {}, (0, 2): {}}
    for exp, c in g.terms.items():
        key = (exp[xi], exp[yi])
        if key not in buckets:
            if exp[xi] + exp[yi] > 2:
                raise InputError("degree in pair %d exceeds 2" % k)
            raise InputError("polynomial is not homogeneous of degree 2 in pair %d" % k)
        nexp = list(exp)
        nexp[xi] = nexp[yi] = 0
        buckets[key][tuple(nexp)] = c
    a = MultiPoly(g.ring, g.nvars, buckets[(2, 0)])
    b = MultiPoly(g.ring, g.nvars, buckets[(1, 1)])
    c = MultiPoly(g.ring, g.nvars, buckets[(0, 2)])
    four = MultiPoly.constant(g.ring, g.nvars, g.ring.of(4))
    return b * b - four * a * c


def poly_sqrt(g: MultiPoly) -> SquareWitness:
    """Exact square root with a mandatory verification of the result.

    Recursion on the lowest-index variable present: strip even monomial
    content, then split g = g2*x_k^2 + g1*x_k + g0 and stitch the roots of
    g2 and g0 (in characteristic != 2 the cross term must match +-2*h2*h0;
    in characteristic two it must vanish).  Homogeneous inputs of higher
    degree in one variable are dehomogenized at that variable first.  The
    returned root is sign-normalized so its leading coefficient is the
    canonical ring orientation, and root*root == g is always re-checked.
    """
    root, failvar = _sqrt(g)
    if root is None:
        return SquareWitness(False, None, failvar)
    if root * root != g:
        raise InternalInconsistencyError("square-root verification failed")
    if not g.is_zero():
        _, lead = root.leading_term()
        if not g.ring.is_canonical_root(lead):
            root = -root
    return SquareWitness(True, root, None)


def _sqrt(g: MultiPoly):
    ring = g.ring
    if g.is_zero():
        return g, None
    if g.is_constant():
        r = ring.sqrt(g.constant_value())
        if r is None:
            return None, None
        return MultiPoly.constant(ring, g.nvars, r), None
    k = next(
        i for i in range(1, g.nvars + 1) if any(e[i - 1] > 0 for e in g.terms)
    )
    val = min(e[k - 1] for e in g.terms)
    if val > 0:
        if val % 2:
            return None, k
        shifted = {}
        for exp, c in g.terms.items():
            shifted[exp[:k - 1] + (exp[k - 1] - val,) + exp[k:]] = c
        inner, failvar = _sqrt(MultiPoly(ring, g.nvars, shifted))
        if inner is None:
            return None, failvar
        half = [0] * g.nvars
        half[k - 1] = val // 2
        return inner * MultiPoly.monomial(ring, g.nvars, half, ring.one), None
    d = g.degree(k)
    if d % 2:
        return None, k
    if d > 2:
        total = g.total_degree()
        if g.is_homogeneous() and total % 2 == 0:
            inner, failvar = _sqrt(g.specialize(k, ring.one))
            if inner is None:
                return None, failvar
            return inner.homogenize_into(k, total // 2), None
        return None, k
    parts = g.split_by_variable(k)
    zero = MultiPoly.zero(ring, g.nvars)
    g2 = parts.get(2, zero)
    g1 = parts.get(1, zero)
    g0 = parts.get(0, zero)
    h2, failvar = _sqrt(g2)
    if h2 is None:
        return None, failvar
    h0, failvar = _sqrt(g0)
    if h0 is None:
        return None, failvar
    two = MultiPoly.constant(ring, g.nvars, ring.of(2))
    cross = two * h2 * h0
    xk = MultiPoly.variable(ring, g.nvars, k)
    if g1 == cross:
        return h2 * xk + h0, None
    if g1 == -cross:
        return h2 * xk - h0, None
    return None, k
