import itertools
import random

import pytest

from helpers import (
    image_vector,
    poly_from_coeffs,
    rand_multiaffine,
    rand_sl2,
    rand_sym_matrix,
)
from minorforge import (
    GF,
    QQ,
    ZZ,
    GroupElement,
    InputError,
    MultiPoly,
    act_on_poly,
    discriminant,
    discriminant_pair,
    grid_is_zero,
    minor_polynomial,
    permutation_element,
    poly_sqrt,
    principal_minors,
    projective_line,
    rayleigh_delta,
    sl2_identity,
)

# Generic-coefficient setup for n = 3: variables 1..3 are x1..x3 and
# variables 4..11 carry the eight coefficients indexed by subset bitmask
# (4 + mask).  The generic multiaffine cubic is sum over masks of
# a_mask * prod_{i not in mask} x_i.


def generic_cubic():
    terms = {}
    for mask in range(8):
        exp = [0] * 11
        for i in range(3):
            if not mask >> i & 1:
                exp[i] = 1
        exp[3 + mask] = 1
        terms[tuple(exp)] = 1
    return MultiPoly(ZZ, 11, terms)


def coeff_var(mask):
    exp = [0] * 11
    exp[3 + mask] = 1
    return MultiPoly(ZZ, 11, {tuple(exp): 1})


def test_rayleigh_delta_generic_quadratic_in_third_variable():
    f = generic_cubic()
    delta = rayleigh_delta(f, 1, 2)
    assert delta.degree(1) == 0 and delta.degree(2) == 0 and delta.degree(3) == 2
    a0, a1, a2, a12 = coeff_var(0), coeff_var(1), coeff_var(2), coeff_var(3)
    a3, a13, a23, a123 = coeff_var(4), coeff_var(5), coeff_var(6), coeff_var(7)
    x3 = MultiPoly.variable(ZZ, 11, 3)
    expect = (
        (a1 * a2 - a0 * a12) * x3 * x3
        + (a1 * a23 + a2 * a13 - a3 * a12 - a0 * a123) * x3
        + (a13 * a23 - a3 * a123)
    )
    assert delta == expect


def test_rayleigh_delta_trivial_and_errors():
    f = poly_from_coeffs(ZZ, 2, [((1, 1), 1)])
    assert rayleigh_delta(f, 1, 2).is_zero()
    with pytest.raises(InputError):
        rayleigh_delta(f, 1, 1)


def test_rayleigh_delta_symmetric_quartic():
    # f = x1x2x3x4 - e2(x) + 2 e1(x) - 3 has all six differences equal to
    # (x_k - 1)^2 (x_l - 1)^2
    terms = {(1, 1, 1, 1): 1, (0, 0, 0, 0): -3}
    for i, j in itertools.combinations(range(4), 2):
        e = [0] * 4
        e[i] = e[j] = 1
        terms[tuple(e)] = -1
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        terms[tuple(e)] = 2
    f = MultiPoly(ZZ, 4, terms)
    one = MultiPoly.constant(ZZ, 4, 1)
    for i, j in itertools.combinations(range(1, 5), 2):
        k, l = [t for t in range(1, 5) if t not in (i, j)]
        xk = MultiPoly.variable(ZZ, 4, k)
        xl = MultiPoly.variable(ZZ, 4, l)
        expect = (xk - one) ** 2 * (xl - one) ** 2
        assert rayleigh_delta(f, i, j) == expect


def test_discriminant_pair_examples():
    # one pair: variables (x, y)
    g = MultiPoly(ZZ, 2, {(2, 0): 1, (0, 2): -1})
    assert discriminant_pair(g, 1) == MultiPoly.constant(ZZ, 2, 4)
    h = MultiPoly(ZZ, 2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})  # (x + y)^2
    assert discriminant_pair(h, 1).is_zero()
    with pytest.raises(InputError):
        discriminant_pair(MultiPoly(ZZ, 2, {(3, 0): 1}), 1)


def test_discriminant_of_generic_delta_equals_hyperdeterminant():
    f = generic_cubic()
    delta = rayleigh_delta(f, 1, 2)
    disc = discriminant(delta, 3)
    a0, a1, a2, a12 = coeff_var(0), coeff_var(1), coeff_var(2), coeff_var(3)
    a3, a13, a23, a123 = coeff_var(4), coeff_var(5), coeff_var(6), coeff_var(7)

    def sq(p):
        return p * p

    two = MultiPoly.constant(ZZ, 11, 2)
    four = MultiPoly.constant(ZZ, 11, 4)
    hypdet = (
        sq(a0 * a123) + sq(a1 * a23) + sq(a2 * a13) + sq(a3 * a12)
        - two * (a0 * a1 * a23 * a123)
        - two * (a0 * a2 * a13 * a123)
        - two * (a0 * a3 * a12 * a123)
        - two * (a1 * a2 * a13 * a23)
        - two * (a1 * a3 * a12 * a23)
        - two * (a2 * a3 * a12 * a13)
        + four * (a0 * a23 * a13 * a12)
        + four * (a123 * a1 * a2 * a3)
    )
    assert disc == hypdet


def test_three_discriminant_orderings_agree_symbolically():
    f = generic_cubic()
    d1 = discriminant(rayleigh_delta(f, 1, 2), 3)
    d2 = discriminant(rayleigh_delta(f, 1, 3), 2)
    d3 = discriminant(rayleigh_delta(f, 2, 3), 1)
    assert d1 == d2 == d3


def test_poly_sqrt_examples():
    one = MultiPoly.constant(ZZ, 2, 1)
    x1 = MultiPoly.variable(ZZ, 2, 1)
    x2 = MultiPoly.variable(ZZ, 2, 2)
    g = (x1 - one) ** 2 * (x2 - one) ** 2
    w = poly_sqrt(g)
    assert w.is_square
    assert w.root * w.root == g
    assert w.root == (x1 - one) * (x2 - one)  # canonical sign: leading +1

    w4 = poly_sqrt(MultiPoly.constant(ZZ, 1, 4))
    assert w4.is_square and w4.root == MultiPoly.constant(ZZ, 1, 2)

    bad = MultiPoly(ZZ, 1, {(2,): 1, (0,): 1})  # x^2 + 1
    wb = poly_sqrt(bad)
    assert not wb.is_square and wb.failure_variable == 1

    assert poly_sqrt(MultiPoly.zero(ZZ, 2)).is_square


def f3weird_form():
    """The characteristic-three multiquadratic form in pairs (x_i, y_i),
    variables ordered (x1, x2, x3, y1, y2, y3)."""
    F3 = GF(3)

    def v(i):
        return MultiPoly.variable(F3, 6, i)

    x1, x2, x3, y1, y2, y3 = v(1), v(2), v(3), v(4), v(5), v(6)
    two = MultiPoly.constant(F3, 6, F3.of(2))
    return (
        x1 * x1 * (x2 * y3 - x3 * y2) ** 2
        - two * (x1 * y1) * (x2 * y3 + x3 * y2) * (x2 * x3 - y2 * y3)
        + y1 * y1 * (x2 * x3 + y2 * y3) ** 2
    )


def test_f3_form_is_not_a_square_although_grid_conditions_hold():
    # The pair discriminant is structurally nonzero, which already rules out
    # squareness, yet it vanishes at all 16 points of the projective grid;
    # the square test must therefore reject the form.
    F3 = GF(3)
    g = f3weird_form()
    disc = discriminant_pair(g, 1)
    assert not disc.is_zero()
    # known closed form: 16 * x2 y2 (x2^2 - y2^2) * x3 y3 (x3^2 - y3^2)
    def v(i):
        return MultiPoly.variable(F3, 6, i)

    x2, x3, y2, y3 = v(2), v(3), v(5), v(6)
    sixteen = MultiPoly.constant(F3, 6, F3.of(16))
    expect = sixteen * x2 * y2 * (x2 * x2 - y2 * y2) * x3 * y3 * (x3 * x3 - y3 * y3)
    assert disc == expect
    # repackage on pairs (x2, y2), (x3, y3) and evaluate the full grid
    terms = {}
    for exp, c in disc.terms.items():
        assert exp[0] == 0 and exp[3] == 0
        terms[(exp[1], exp[2], exp[4], exp[5])] = c
    packed = MultiPoly(F3, 4, terms)
    pts = projective_line(F3)
    assert len(pts) == 4
    assert grid_is_zero(packed, (4, 4), [pts, pts])
    w = poly_sqrt(g)
    assert not w.is_square
    # the candidate root obtained by pairing the outer squares differently
    # does not square back to g
    x1, y1 = v(1), v(4)
    candidate = x1 * (x2 * y3 - x3 * y2) - y1 * (x2 * x3 + y2 * y3)
    assert candidate * candidate != g


@pytest.mark.parametrize("ring", [ZZ, QQ, GF(2), GF(5), GF(7)])
def test_poly_sqrt_roundtrip_random(ring):
    rng = random.Random(11)
    for _ in range(250):
        n = rng.randint(1, 3)
        h = rand_multiaffine(ring, rng, n, density=0.7)
        g = h * h
        w = poly_sqrt(g)
        assert w.is_square
        assert w.root * w.root == g


def test_dodgson_squares_for_matrix_polynomials():
    rng = random.Random(12)
    for ring in (ZZ, QQ, GF(5), GF(7)):
        for _ in range(25):
            n = rng.randint(2, 5)
            a = image_vector(ring, rng, n, -3, 3)
            f = minor_polynomial(a)
            for i, j in itertools.combinations(range(1, n + 1), 2):
                assert poly_sqrt(rayleigh_delta(f, i, j)).is_square


def test_single_coordinate_action_on_delta():
    rng = random.Random(13)
    for ring in (ZZ, GF(7)):
        for _ in range(40):
            n = rng.randint(2, 4)
            f = rand_multiaffine(ring, rng, n)
            k = rng.randint(1, n)
            blocks = [sl2_identity(ring)] * n
            blocks[k - 1] = rand_sl2(ring, rng)
            gamma = GroupElement(tuple(range(1, n + 1)), tuple(blocks))
            i, j = sorted(rng.sample(range(1, n + 1), 2))
            lhs = rayleigh_delta(act_on_poly(gamma, f, (1,) * n), i, j)
            if k in (i, j):
                assert lhs == rayleigh_delta(f, i, j)
            else:
                rhs = act_on_poly(gamma, rayleigh_delta(f, i, j), (2,) * n)
                assert lhs == rhs


def test_homogenization_robustness_of_squareness():
    rng = random.Random(14)
    for ring in (ZZ, QQ, GF(5), GF(7)):
        for trial in range(25):
            n = rng.randint(2, 4)
            if trial % 2 == 0:
                f = minor_polynomial(image_vector(ring, rng, n, -3, 3))
            else:
                f = rand_multiaffine(ring, rng, n)
            i, j = sorted(rng.sample(range(1, n + 1), 2))
            delta = rayleigh_delta(f, i, j)
            va = poly_sqrt(delta).is_square
            vb = poly_sqrt(rayleigh_delta(f.total_homogenize(f.total_degree()), i, j)).is_square
            vc = poly_sqrt(delta.total_homogenize(delta.total_degree())).is_square
            vd = poly_sqrt(delta.multi_homogenize((2,) * n)).is_square
            assert va == vb == vc == vd


def test_discriminant_triple_symmetry_random():
    rng = random.Random(15)
    for ring in (ZZ, GF(7)):
        for _ in range(30):
            n = rng.randint(3, 4)
            f = rand_multiaffine(ring, rng, n)
            i, j, k = sorted(rng.sample(range(1, n + 1), 3))
            d1 = discriminant(rayleigh_delta(f, i, j), k)
            d2 = discriminant(rayleigh_delta(f, i, k), j)
            d3 = discriminant(rayleigh_delta(f, j, k), i)
            assert d1 == d2 == d3


def test_permutation_action_on_delta():
    rng = random.Random(16)
    for _ in range(30):
        n = rng.randint(2, 4)
        f = rand_multiaffine(ZZ, rng, n)
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        gamma = permutation_element(ZZ, perm)
        inv = [0] * n
        for idx, img in enumerate(perm, start=1):
            inv[img - 1] = idx
        i, j = sorted(rng.sample(range(1, n + 1), 2))
        lhs = rayleigh_delta(act_on_poly(gamma, f, (1,) * n), i, j)
        inner = rayleigh_delta(f, inv[i - 1], inv[j - 1])
        rhs = act_on_poly(gamma, inner, (2,) * n)
        assert lhs == rhs
