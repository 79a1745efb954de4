import random
from fractions import Fraction

import pytest

from logchern import (ArityMismatchError, InputError, MultiPoly,
                      NonUnitError, TruncatedPoly, UniPolyQ)
from logchern.rings import binomial_poly, poly_product, vec_primitive


def _vars(arity):
    return [MultiPoly.variable(arity, i) for i in range(arity)]


def test_rational_arithmetic_is_exact():
    rng = random.Random(20240811)
    for _ in range(1000):
        a, c = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        b, d = rng.randint(1, 10**6), rng.randint(1, 10**6)
        lhs = Fraction(a, b) + Fraction(c, d)
        assert lhs == Fraction(a * d + c * b, b * d)
        assert lhs.denominator > 0
        g = (Fraction(a, b) + Fraction(c, d)) * b * d
        assert g == a * d + c * b  # exactness survives clearing denominators


def test_product_of_difference():
    x, y = _vars(2)
    assert (x + y) * (x - y) == x * x - y * y


def test_multiplicative_identity():
    x, y = _vars(2)
    f = 3 * x * y + y ** 2 - 7
    assert f * MultiPoly.one(2) == f


def test_octic_defining_polynomial_degree():
    # the octic arrangement xyzw(x-w)(y-w)(x+y+z)(x-y+z)
    normals = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1),
               (1, 0, 0, -1), (0, 1, 0, -1), (1, 1, 1, 0), (1, -1, 1, 0)]
    f = poly_product([MultiPoly.linear_form(n) for n in normals])
    assert f.total_degree() == 8
    assert f.is_homogeneous()


def test_arity_mismatch_rejected():
    with pytest.raises(ArityMismatchError):
        MultiPoly.variable(2, 0) + MultiPoly.variable(3, 0)


def test_homogeneous_multiplication_preserves_grading():
    rng = random.Random(7)
    for _ in range(25):
        arity = rng.randint(1, 4)
        da, db = rng.randint(0, 3), rng.randint(0, 3)
        a = _random_homogeneous(rng, arity, da)
        b = _random_homogeneous(rng, arity, db)
        p = a * b
        if not p.is_zero():
            assert p.is_homogeneous()
            assert p.homogeneous_degree() == da + db


def _random_homogeneous(rng, arity, degree):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        exps = [0] * arity
        for _ in range(degree):
            exps[rng.randrange(arity)] += 1
        terms[tuple(exps)] = rng.randint(-4, 4)
    p = MultiPoly(arity, terms)
    if p.is_zero():
        return MultiPoly.constant(arity, 1) if degree == 0 \
            else MultiPoly.variable(arity, 0) ** degree
    return p


def test_multiplication_associative_commutative():
    rng = random.Random(99)
    for _ in range(20):
        arity = rng.randint(1, 4)
        a = _random_homogeneous(rng, arity, rng.randint(0, 4))
        b = _random_homogeneous(rng, arity, rng.randint(0, 4))
        c = _random_homogeneous(rng, arity, rng.randint(0, 4))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)


def test_serialization_deterministic():
    x, y, z = _vars(3)
    p = 5 * x * y ** 2 - z ** 3 + Fraction(7, 3) * x - 1
    q = MultiPoly(3, dict(reversed(list(p.terms.items()))))
    assert p.render() == q.render()
    assert list(p.sorted_terms()) == list(q.sorted_terms())


def test_partial_derivative():
    x, y = _vars(2)
    f = x ** 2 * y + 3 * y
    assert f.partial(0) == 2 * x * y
    assert f.partial(1) == x ** 2 + 3


def test_exact_division():
    x, y = _vars(2)
    f = (x + y) * (x - y)
    assert f.divide_exact(x + y) == x - y
    with pytest.raises(InputError):
        (x * x + y).divide_exact(x + y)


# ----- truncated ring -----

def test_truncated_inverse_geometric_series():
    t = TruncatedPoly(4, [1, -3])
    assert t.inverse().coeffs == (1, 3, 9, 27)


def test_truncated_inverse_identity():
    one = TruncatedPoly.one(5)
    assert one.inverse() == one


def test_truncated_octic_ratio():
    # (1-2t)^5 / (1-3t)^2 mod t^4
    val = TruncatedPoly(4, [1, -2]) ** 5 * TruncatedPoly(4, [1, -3]) ** -2
    assert val.coeffs == (1, -4, 7, -2)


def test_truncated_inverse_property_random():
    rng = random.Random(5)
    for _ in range(200):
        l = rng.randint(1, 6)
        unit = rng.choice([1, -1])
        coeffs = [unit] + [rng.randint(-5, 5) for _ in range(l - 1)]
        a = TruncatedPoly(l, coeffs)
        assert (a * a.inverse()).coeffs == TruncatedPoly.one(l).coeffs
        assert a.inverse().is_integral
    # rational fallback
    a = TruncatedPoly(4, [Fraction(2, 3), 1, 0, 5])
    assert (a * a.inverse()) == TruncatedPoly.one(4)
    assert not a.inverse().is_integral


def test_truncated_nonunit_rejected():
    with pytest.raises(NonUnitError):
        TruncatedPoly(3, [0, 1]).inverse()


def test_truncated_discards_high_degrees():
    a = TruncatedPoly(3, [1, 1, 1])
    assert (a * a).coeffs == (1, 2, 3)


# ----- univariate rationals -----

def test_substitute_negate_on_poincare_shape():
    p = UniPolyQ([1, 7, 18, 17])
    assert p.substitute_negate() == UniPolyQ([1, -7, 18, -17])


def test_substitute_negate_involution_and_edges():
    p = UniPolyQ([Fraction(2, 3), 0, -5, 1])
    assert p.substitute_negate().substitute_negate() == p
    assert UniPolyQ.constant(4).substitute_negate() == UniPolyQ.constant(4)
    assert UniPolyQ.t().substitute_negate() == UniPolyQ([0, -1])


def test_binomial_poly_matches_comb():
    from math import comb
    for a in range(-3, 4):
        for k in range(0, 4):
            p = binomial_poly(a, k)
            for t in range(a, a + 6):
                assert p.evaluate(t) == comb(t - a + k, k)


def test_vec_primitive():
    assert vec_primitive((2, 0)) == (1, 0)
    assert vec_primitive((-2, 4)) == (1, -2)
    assert vec_primitive((0, 0)) == (0, 0)
