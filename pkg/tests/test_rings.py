"""Ring layer: Laurent arithmetic, the rational subring, series windows."""

import pytest

from nk.rings import (
    DEFAULT_PRECISION,
    Direction,
    LaurentPoly,
    NotAUnit,
    NotInRationalSubring,
    RationalFunction,
    TruncatedSeries,
    divexact,
    expand,
    invert_as_series,
    is_novikov_unit,
    normalize,
    reverse_variable,
    truncate_poly,
)

from domains import random_laurent, random_rational, rng_for

z = LaurentPoly({1: 1})
one = LaurentPoly({0: 1})


def L(coeffs):
    return LaurentPoly(coeffs)


# --- normalize -------------------------------------------------------------

def test_normalize_drops_zero_coefficients():
    assert normalize({0: 1, 1: 0, 2: 3}) == L({0: 1, 2: 3})


def test_normalize_empty_is_zero():
    p = normalize({})
    assert p.is_zero
    assert p == LaurentPoly()


def test_normalize_already_normal():
    assert normalize({-1: 2, 0: -2}) == L({-1: 2, 0: -2})


# --- is_novikov_unit ---------------------------------------------------------

def test_one_minus_z_is_plus_unit():
    assert is_novikov_unit(one - z, Direction.PLUS)


def test_z_minus_two_is_not_plus_unit():
    assert not is_novikov_unit(z - 2, Direction.PLUS)


def test_monomial_with_unit_coefficient():
    assert is_novikov_unit(L({3: -1}), Direction.PLUS)


def test_z_minus_two_is_minus_unit():
    # substitute w = z^-1: z - 2 = w^-1 (1 - 2w), a unit of Z((w))
    w_side = reverse_variable(z - 2)
    assert is_novikov_unit(w_side, Direction.PLUS)
    assert is_novikov_unit(z - 2, Direction.MINUS)


def test_zero_is_never_a_unit():
    assert not is_novikov_unit(LaurentPoly(), Direction.PLUS)
    assert not is_novikov_unit(LaurentPoly(), Direction.MINUS)


# --- invert_as_series --------------------------------------------------------

def test_geometric_series():
    assert invert_as_series(one - z, precision=3) == \
        TruncatedSeries(0, [1, 1, 1, 1])


def test_invert_one_minus_two_z_multiplies_back():
    q = invert_as_series(one - 2 * z, precision=3)
    assert q == TruncatedSeries(0, [1, 2, 4, 8])
    # oracle: multiply back and check == 1 through z^3
    prod = q * (one - 2 * z)
    assert prod.truncate(3) == TruncatedSeries.of_poly(one, 3)


def test_invert_monomial():
    assert invert_as_series(L({2: 1}), precision=5) == \
        TruncatedSeries(-2, [1, 0, 0, 0, 0, 0])


def test_invert_nonunit_raises():
    with pytest.raises(NotAUnit):
        invert_as_series(z - 2, Direction.PLUS, 4)


def test_invert_multiply_back_property():
    rng = rng_for("invert")
    checked = 0
    while checked < 60:
        p = random_laurent(rng)
        if not is_novikov_unit(p, Direction.PLUS):
            continue
        checked += 1
        for k in (0, 1, 5, 11):
            q = invert_as_series(p, Direction.PLUS, k)
            assert q * p == TruncatedSeries.of_poly(one, k)


def test_invert_minus_side_delegates_by_reversal():
    p = z - 2
    k = 6
    assert invert_as_series(p, Direction.MINUS, k) == \
        invert_as_series(reverse_variable(p), Direction.PLUS, k)


# --- expand ------------------------------------------------------------------

def test_expand_geometric():
    r = RationalFunction(z, one - z)
    assert expand(r, precision=3) == TruncatedSeries(1, [1, 1, 1])


def test_expand_one_over_one_minus_two_z():
    r = RationalFunction(one, one - 2 * z)
    assert expand(r, precision=2) == TruncatedSeries(0, [1, 2, 4])


def test_expand_cancellation():
    r = RationalFunction(one - z, one - z)
    assert expand(r, precision=0) == TruncatedSeries(0, [1])


def test_expand_polynomial_exactness():
    p = L({-3: 1, 2: 5})
    w = expand(RationalFunction(p), precision=2)
    assert w == TruncatedSeries.of_poly(p, 2)
    assert w.coeffs == (1, 0, 0, 0, 0, 5)


def test_expand_minus_requires_minus_unit_denominator():
    with pytest.raises(NotAUnit):
        expand(RationalFunction(one, one - 2 * z), Direction.MINUS, 4)


def test_expand_minus_side():
    # 1 - z has highest coefficient -1, so it is a Z((z^-1))-unit
    r = RationalFunction(z, one - z)
    w = expand(r, Direction.MINUS, 4)
    assert w == expand(reverse_variable(r), Direction.PLUS, 4)


def test_expand_additive_and_multiplicative():
    rng = rng_for("expand")
    for _ in range(40):
        a, b = random_rational(rng), random_rational(rng)
        k = rng.randint(0, 8)
        wa, wb = expand(a, precision=k), expand(b, precision=k)
        ws = expand(a + b, precision=k)
        cut = min((wa + wb).cutoff, ws.cutoff) - 1
        assert (wa + wb).truncate(cut) == ws.truncate(cut)
        wp = expand(a * b, precision=k)
        cut = min((wa * wb).cutoff, wp.cutoff) - 1
        assert (wa * wb).truncate(cut) == wp.truncate(cut)


# --- reverse_variable ---------------------------------------------------------

def test_reverse_examples():
    assert reverse_variable(one - 2 * z) == L({0: 1, -1: -2})
    assert reverse_variable(z - 2) == L({-1: 1, 0: -2})
    assert reverse_variable(LaurentPoly()).is_zero


def test_reverse_involution_and_unit_swap():
    rng = rng_for("reverse")
    for _ in range(80):
        p = random_laurent(rng)
        assert reverse_variable(reverse_variable(p)) == p
        assert is_novikov_unit(p, Direction.MINUS) == \
            is_novikov_unit(reverse_variable(p), Direction.PLUS)


# --- ring axioms ---------------------------------------------------------------

def test_ring_axioms_on_random_triples():
    rng = rng_for("axioms")
    for _ in range(60):
        a, b, c = (random_laurent(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + LaurentPoly() == a
        assert a * one == a


def test_divexact_roundtrip():
    rng = rng_for("divexact")
    for _ in range(40):
        a, b = random_laurent(rng), random_laurent(rng)
        if b.is_zero:
            continue
        assert divexact(a * b, b) == a
    with pytest.raises(ValueError):
        divexact(one + z, 2 * one)


# --- RationalFunction canonical form -------------------------------------------

def test_canonical_denominator_in_S():
    r = RationalFunction(one, one - z)
    assert r.denominator == one - z
    assert r.denominator.coeff(0) == 1


def test_canonical_strips_monomial_and_sign():
    # 1/(z - z^2) = z^-1/(1 - z)
    r = RationalFunction(one, z - z ** 2)
    assert r.denominator == one - z
    assert r.numerator == L({-1: -1}) * -1


def test_canonical_gcd_cancellation_preserves_content():
    r = RationalFunction(2 - 2 * z ** 2, one + z)
    assert r == RationalFunction(2 - 2 * z)
    assert r.numerator == 2 - 2 * z and r.denominator == one


def test_not_in_subring_raises():
    with pytest.raises(NotInRationalSubring):
        RationalFunction(one, LaurentPoly({0: 2}))
    with pytest.raises(NotInRationalSubring):
        RationalFunction(one, 2 - z)
    # but content can cancel first
    assert RationalFunction(4 * z, LaurentPoly({0: 2})) == RationalFunction(2 * z)


def test_canonicalization_idempotent():
    rng = rng_for("canon")
    for _ in range(60):
        r = random_rational(rng)
        again = RationalFunction(r.numerator, r.denominator)
        assert (again.numerator, again.denominator) == \
            (r.numerator, r.denominator)


def test_division_as_divisibility_probe():
    # Fatou: 1/(1-2z) expands integrally, (z-2)/2 does not
    assert RationalFunction(one, one - 2 * z)
    with pytest.raises(NotInRationalSubring):
        _ = RationalFunction(z - 2) / RationalFunction(LaurentPoly({0: 2}))


def test_rational_field_ops():
    rng = rng_for("ratops")
    for _ in range(30):
        a, b = random_rational(rng), random_rational(rng)
        assert a + b - b == a
        if b:
            assert (a * b) / b == a
    u = RationalFunction(one - z, one + z)
    assert u.is_unit()
    assert u * u.inverse() == RationalFunction(one)


def test_rational_arithmetic_against_evaluation_oracle():
    # independent check: compare every operation with exact Fraction
    # evaluation at sample points away from denominator roots
    from fractions import Fraction
    rng = rng_for("rat-eval")

    def value(r, x):
        return Fraction(r.numerator.evaluate(x)) / r.denominator.evaluate(x)

    points = [Fraction(p, q) for p, q in
              ((2, 1), (3, 2), (-5, 3), (7, 4), (-1, 6))]
    for _ in range(40):
        a, b = random_rational(rng), random_rational(rng)
        results = [(a + b, lambda x: value(a, x) + value(b, x)),
                   (a - b, lambda x: value(a, x) - value(b, x)),
                   (a * b, lambda x: value(a, x) * value(b, x))]
        for got, expect in results:
            for x in points:
                if a.denominator.evaluate(x) and b.denominator.evaluate(x) \
                        and got.denominator.evaluate(x):
                    assert value(got, x) == expect(x)
        if b:
            try:
                q = a / b
            except NotInRationalSubring:
                continue
            for x in points:
                if (a.denominator.evaluate(x) and b.denominator.evaluate(x)
                        and q.denominator.evaluate(x)
                        and b.numerator.evaluate(x)):
                    assert value(q, x) == value(a, x) / value(b, x)


# --- TruncatedSeries precision bookkeeping --------------------------------------

def test_window_normalizes_leading_zeros():
    w = TruncatedSeries(0, [0, 1, 1])
    assert w.lowest == 1 and w.coeffs == (1, 1) and w.cutoff == 3


def test_zero_window():
    w = TruncatedSeries(0, [0, 0, 0])
    assert w.is_zero_window and w.lowest == 3 and w.cutoff == 3


def test_addition_min_rule():
    a = TruncatedSeries(0, [1, 1, 1, 1])   # known through z^3
    b = TruncatedSeries(1, [2, 2])         # known through z^2
    s = a + b
    assert s.cutoff == 3
    assert s == TruncatedSeries(0, [1, 3, 3])


def test_multiplication_order_shift_rule():
    a = TruncatedSeries(1, [1, 1])   # z + z^2 + O(z^3)
    b = TruncatedSeries(2, [1])      # z^2 + O(z^3)
    p = a * b
    # surviving window: min(1+3, 2+3) = 4
    assert p.cutoff == 4
    assert p == TruncatedSeries(3, [1])


def test_multiplication_by_exact_polynomial_keeps_window():
    a = TruncatedSeries(0, [1, 1, 1])
    p = a * (one - z)
    assert p.cutoff == 3
    assert p == TruncatedSeries(0, [1, 0, 0])


def test_truncate_poly_helper():
    p = L({-1: 1, 0: 2, 4: 7})
    assert truncate_poly(p, 2) == L({-1: 1, 0: 2})


def test_default_precision_is_32():
    assert DEFAULT_PRECISION == 32
    w = expand(RationalFunction(one, one - z))
    assert w.cutoff == 33
