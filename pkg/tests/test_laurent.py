"""
Tests for Laurent polynomials, exact determinants, Newton widths and root moduli.
"""

from fractions import Fraction

import pytest

from l2alex.services.groupring import GroupRingElem, HomToZk, Word
from l2alex.services.laurent import (
    LaurentMatrix,
    LaurentPoly,
    abelianize,
    alexander_normalize,
    det,
    exact_div,
    kappa_scale,
    newton_width,
    one_var_roots,
    parse_poly,
)
from l2alex.utils.errors import ExponentOverflowError, ParseError, ZeroPolynomialError


def _poly(text):
    return parse_poly(text)[0]


def _random_poly(rng, nvars, terms=3, span=2):
    return LaurentPoly(nvars, {tuple(rng.randint(-span, span) for _ in range(nvars)): rng.randint(-3, 3)
                               for _ in range(terms)})


def _random_matrix(rng, n, nvars):
    return LaurentMatrix([[_random_poly(rng, nvars, rng.randint(1, 3)) for _ in range(n)] for _ in range(n)],
                         nvars, cols=n)


def test_parse_poly():
    p, names = parse_poly("3*x^2*y^-1 - 2 + x")
    assert names == ["x", "y"]
    assert p.terms == {(2, -1): 3, (0, 0): -2, (1, 0): 1}
    q, names = parse_poly("1/2 - z")
    assert names == ["z"]
    assert q == LaurentPoly.from_coeffs([Fraction(1, 2), -1])
    assert parse_poly("5")[1] == ["z"]


def test_parse_poly_errors():
    with pytest.raises(ParseError):
        parse_poly("1 + t")
    with pytest.raises(ParseError):
        parse_poly("")
    with pytest.raises(ParseError):
        parse_poly("1 + * z")
    with pytest.raises(ParseError):
        parse_poly("x + y", names=["x"])


def test_exponent_limit():
    LaurentPoly.monomial((10 ** 6,))
    with pytest.raises(ExponentOverflowError):
        LaurentPoly.monomial((10 ** 6 + 1,))


def test_ring_operations():
    z = LaurentPoly.monomial((1,))
    one = LaurentPoly.constant(1)
    assert (one - z) * (one + z) == one - z * z
    assert z.power(-2) * z.power(2) == one
    assert (one + z).power(3) == LaurentPoly.from_coeffs([1, 3, 3, 1])
    with pytest.raises(ValueError):
        (one + z).power(-1)


def test_format_round_trip():
    p = _poly("3*x^2*y^-1 - 2 + x")
    assert parse_poly(p.format(["x", "y"]), names=["x", "y"])[0] == p
    assert LaurentPoly.zero(1).format() == "0"


def test_abelianize():
    h = HomToZk([[1], [1]])
    e = GroupRingElem.from_word(Word([(0, 1), (1, -1)]), 2) + GroupRingElem.from_word(Word.generator(1), 3)
    assert abelianize(e, h) == LaurentPoly.from_coeffs([2, 3])
    e2 = GroupRingElem.one() - GroupRingElem.from_word(Word.generator(0))
    assert abelianize(e2, HomToZk([[1, 0], [0, 1]])) == parse_poly("1 - x", names=["x", "y"])[0]


def test_kappa_scale():
    assert kappa_scale(_poly("1 - z"), [1], 3) == _poly("1 - 3*z")
    p = parse_poly("x + y")[0]
    assert kappa_scale(p, [1, 0], 2) == parse_poly("2*x + y")[0]
    assert kappa_scale(p, [1, 0], 1) == p
    with pytest.raises(ValueError):
        kappa_scale(p, [1], 2)
    with pytest.raises(ValueError):
        kappa_scale(p, [1, 0], 0)


def test_kappa_scale_is_a_ring_homomorphism(rng):
    for _ in range(30):
        a, b = _random_poly(rng, 2), _random_poly(rng, 2)
        psi = [rng.randint(-2, 2), rng.randint(-2, 2)]
        t = Fraction(rng.randint(1, 5), rng.randint(1, 5))
        assert kappa_scale(a * b, psi, t) == kappa_scale(a, psi, t) * kappa_scale(b, psi, t)
        assert kappa_scale(a + b, psi, t) == kappa_scale(a, psi, t) + kappa_scale(b, psi, t)


def test_kappa_scale_keeps_float_t_exact():
    p = kappa_scale(_poly("1 - z"), [1], 0.5)
    assert p.is_exact()
    assert p == _poly("1 - 1/2*z")


def test_exact_div():
    a = _poly("1 - z^6")
    assert exact_div(a, _poly("1 - z")) == _poly("1 + z + z^2 + z^3 + z^4 + z^5")
    with pytest.raises(ArithmeticError):
        exact_div(_poly("1 + z^2"), _poly("1 + z"))
    with pytest.raises(ZeroDivisionError):
        exact_div(a, LaurentPoly.zero(1))


def test_det_small_cases():
    z = LaurentPoly.monomial((1,))
    one = LaurentPoly.constant(1)
    assert det(LaurentMatrix.identity(3, 1)) == one
    m = LaurentMatrix([[one - z, z], [LaurentPoly.zero(1), LaurentPoly.constant(1, 2)]], 1)
    assert det(m) == _poly("2 - 2*z")
    swapped = LaurentMatrix([[LaurentPoly.zero(1), one], [one, LaurentPoly.zero(1)]], 1)
    assert det(swapped) == -one
    singular = LaurentMatrix([[one, z], [z, z * z]], 1)
    assert det(singular).is_zero()


def test_det_with_negative_exponents():
    z = LaurentPoly.monomial((1,))
    zi = z.power(-1)
    m = LaurentMatrix([[zi, zi - z], [z, LaurentPoly.constant(1, 3)]], 1)
    expected = zi.scale(3) - (zi - z) * z
    assert det(m) == expected


def test_det_is_multiplicative(rng):
    for _ in range(30):
        n = rng.randint(1, 3)
        nvars = rng.randint(1, 2)
        a, b = _random_matrix(rng, n, nvars), _random_matrix(rng, n, nvars)
        assert det(a @ b) == det(a) * det(b)


def test_det_transpose(rng):
    for _ in range(20):
        m = _random_matrix(rng, rng.randint(1, 3), 2)
        assert det(m.transpose()) == det(m)


def test_newton_width():
    p = parse_poly("1 + x + y + x*y")[0]
    assert newton_width(p, [1, 0]) == 1
    assert newton_width(p, [1, 1]) == 2
    assert newton_width(p, [1, -1]) == 2
    with pytest.raises(ZeroPolynomialError):
        newton_width(LaurentPoly.zero(2), [1, 0])


def test_newton_width_is_additive(rng):
    for _ in range(30):
        a, b = _random_poly(rng, 2), _random_poly(rng, 2)
        if a.is_zero() or b.is_zero():
            continue
        psi = [rng.randint(-3, 3), rng.randint(-3, 3)]
        assert newton_width(a * b, psi) == newton_width(a, psi) + newton_width(b, psi)


def test_alexander_normalize():
    p = _poly("-z^-3 + 3*z^-2 - z^-1")
    assert alexander_normalize(p) == _poly("1 - 3*z + z^2")


def test_one_var_roots_on_unit_circle():
    roots = one_var_roots(_poly("z^2 - z + 1"))
    assert roots.degree == 2
    assert all(abs(m - 1.0) < 1e-12 for m in roots.moduli)
    assert roots.product_exact == "1"


def test_one_var_roots_golden():
    roots = one_var_roots(_poly("z^-1 - 3 + z"))
    assert roots.shift == -1
    assert sorted(roots.moduli)[1] == pytest.approx((3 + 5 ** 0.5) / 2, rel=1e-12)
    assert sorted(roots.moduli)[0] == pytest.approx((3 - 5 ** 0.5) / 2, rel=1e-12)
    assert all(err < 1e-12 for err in roots.errors)


def test_one_var_roots_leading_coefficient():
    roots = one_var_roots(_poly("2*z^2 - 5*z + 2"))
    assert roots.leading_abs == 2.0
    assert roots.leading_exact == "2"
    assert sorted(roots.moduli) == pytest.approx([0.5, 2.0], rel=1e-12)
    assert roots.product_exact == "1"


def test_one_var_roots_multiplicities():
    roots = one_var_roots(_poly("1 - 2*z + z^2"))
    assert roots.moduli == [1.0]
    assert roots.multiplicities == [2]
    cubed = one_var_roots(LaurentPoly.from_coeffs([-2, 1]).power(3) * LaurentPoly.from_coeffs([1, 1]))
    assert sorted(zip(cubed.moduli, cubed.multiplicities)) == [(1.0, 1), (2.0, 3)]


def test_one_var_roots_rejects_zero():
    with pytest.raises(ZeroPolynomialError):
        one_var_roots(LaurentPoly.zero(1))
