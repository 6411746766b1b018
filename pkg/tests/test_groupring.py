"""
Tests for free-group words, the integral group ring and growth-rate bounds.
"""

import math
from fractions import Fraction

import pytest

from l2alex.services.fox import FreeGroupEndo, monodromy_jacobian
from l2alex.services.groupring import (
    GroupRingElem,
    GroupRingMatrix,
    HomToZk,
    Word,
    free_reduce,
    growth_rate_upper,
    log_fraction,
    parse_word,
    ring_mul,
)
from l2alex.utils.errors import ParseError


def _random_word(rng, n_gens, max_len):
    return Word([(rng.randrange(n_gens), rng.choice([-1, 1])) for _ in range(rng.randint(0, max_len))])


def _random_elem(rng, n_gens=2, terms=4):
    return GroupRingElem({_random_word(rng, n_gens, 5): rng.randint(-3, 3) for _ in range(terms)})


def test_free_reduce_cancels_and_merges():
    assert free_reduce([(0, 1), (0, -1)]).is_identity()
    assert free_reduce([(0, 1), (1, 2), (1, -2), (0, 1)]) == Word.generator(0, 2)
    assert free_reduce([(0, 0), (1, 3), (1, -1)]).letters == ((1, 2),)


def test_parse_word():
    gens = ["x", "y"]
    assert parse_word("x y^2 y^-2 x", gens) == Word.generator(0, 2)
    assert parse_word("1", gens).is_identity()
    assert parse_word("x^-1 y", gens).letters == ((0, -1), (1, 1))
    with pytest.raises(ParseError):
        parse_word("z", gens)
    with pytest.raises(ParseError):
        parse_word("x^", gens)


def test_word_inverse_and_power(rng):
    for _ in range(50):
        w = _random_word(rng, 3, 12)
        assert (w * w.inverse()).is_identity()
        assert w.power(3) == w * w * w
        assert w.power(-2) == w.inverse() * w.inverse()


def test_ring_mul_small_cases():
    one = GroupRingElem.one()
    x = GroupRingElem.from_word(Word.generator(0))
    y = GroupRingElem.from_word(Word.generator(1))
    x_sq = GroupRingElem.from_word(Word.generator(0, 2))
    assert ring_mul(one + x, one - x) == one - x_sq

    a = x.scale(2) + y.scale(3)
    x_inv = GroupRingElem.from_word(Word.generator(0, -1))
    product = ring_mul(a, x_inv)
    expected = one.scale(2) + GroupRingElem.from_word(Word([(1, 1), (0, -1)]), 3)
    assert product == expected
    assert product.l1_norm() == 5


def test_ring_mul_identity_and_zero(rng):
    for _ in range(20):
        a = _random_elem(rng)
        assert ring_mul(a, GroupRingElem.one()) == a
        assert ring_mul(GroupRingElem.one(), a) == a
        assert ring_mul(a, GroupRingElem.zero()).is_zero()


def test_l1_norm_submultiplicative(rng):
    for _ in range(500):
        a = _random_elem(rng, 3, rng.randint(1, 5))
        b = _random_elem(rng, 3, rng.randint(1, 5))
        assert ring_mul(a, b).l1_norm() <= a.l1_norm() * b.l1_norm()


def test_augmentation_is_multiplicative(rng):
    for _ in range(50):
        a, b = _random_elem(rng), _random_elem(rng)
        assert ring_mul(a, b).augmentation() == a.augmentation() * b.augmentation()


def test_matrix_norm_submultiplicative(rng):
    for _ in range(30):
        a = GroupRingMatrix([[_random_elem(rng, 2, 2) for _ in range(2)] for _ in range(2)])
        b = GroupRingMatrix([[_random_elem(rng, 2, 2) for _ in range(2)] for _ in range(2)])
        assert (a @ b).l1_norm() <= a.l1_norm() * b.l1_norm()


def test_matrix_norm_uses_row_count():
    x = GroupRingElem.from_word(Word.generator(0))
    one = GroupRingElem.one()
    m = GroupRingMatrix([[one + x, GroupRingElem.zero()], [one, x.scale(-3)]])
    assert m.l1_norm() == 2 * 3


def test_growth_rate_of_scalars():
    unit = GroupRingMatrix([[GroupRingElem.from_word(Word.generator(0))]])
    report = growth_rate_upper(unit, 8)
    assert report.values == [1.0] * 8
    assert report.upper == 1.0

    two = GroupRingMatrix([[GroupRingElem.one().scale(2)]])
    report = growth_rate_upper(two, 5)
    assert all(abs(v - 2.0) < 1e-12 for v in report.values)


def test_growth_rate_survives_norms_beyond_float_range():
    # 2^2048 has no float representation
    two = GroupRingMatrix([[GroupRingElem.one().scale(2)]])
    report = growth_rate_upper(two, 2048)
    assert len(report.values) == 2048
    assert all(abs(v - 2.0) < 1e-9 for v in report.values)
    assert report.upper == pytest.approx(2.0)


def test_log_fraction():
    assert log_fraction(Fraction(2) ** 4000) == pytest.approx(4000 * math.log(2))
    assert log_fraction(Fraction(1, 3 ** 900)) == pytest.approx(-900 * math.log(3))
    assert log_fraction(Fraction(0)) == -math.inf


def test_growth_rate_running_min_and_sources():
    endo = FreeGroupEndo(["x", "y"], [parse_word("x y", ["x", "y"]), parse_word("y x y", ["x", "y"])])
    mu = Word.generator(2)
    report = growth_rate_upper(monodromy_jacobian(endo).left_word(mu), 32)
    assert len(report.values) == 32
    assert all(a >= b for a, b in zip(report.running_min, report.running_min[1:]))
    assert all(v >= m for v, m in zip(report.values, report.running_min))
    assert set(report.sources) <= {"exact", "majorant", "submultiplicative"}
    assert report.sources[0] == "exact"
    assert 2.618 <= report.upper <= 3.2


def test_growth_rate_majorant_fallback_is_an_upper_bound():
    endo = FreeGroupEndo(["x", "y"], [parse_word("x y", ["x", "y"]), parse_word("y x y", ["x", "y"])])
    a = monodromy_jacobian(endo).left_word(Word.generator(2))
    capped = growth_rate_upper(a, 16, max_terms=10)
    exact = growth_rate_upper(a, 16)
    assert "majorant" in capped.sources
    assert all(c >= e - 1e-12 for c, e in zip(capped.values, exact.values))


def test_growth_rate_rejects_bad_input():
    with pytest.raises(ValueError):
        growth_rate_upper(GroupRingMatrix([[GroupRingElem.one(), GroupRingElem.one()]]), 4)
    with pytest.raises(ValueError):
        growth_rate_upper(GroupRingMatrix.identity(2), 0)


def test_hom_to_zk():
    h = HomToZk([[1, 0], [0, 1]])
    commutator = parse_word("x y x^-1 y^-1", ["x", "y"])
    assert h.of_word(commutator) == (0, 0)
    assert h.kills([commutator])
    assert not h.kills([parse_word("x y", ["x", "y"])])
    assert h.compose_linear([2, -1]) == [2, -1]
    assert HomToZk([[3], [2]]).of_word(Word([(0, 2), (1, -3)])) == (0,)


def test_fraction_coefficients_survive():
    half = GroupRingElem.from_word(Word.generator(0), Fraction(1, 2))
    assert ring_mul(half, half).l1_norm() == Fraction(1, 4)
