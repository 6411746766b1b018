"""
Tests for Fox calculus, Wirtinger presentations and mapping-torus complexes.
"""

import pytest

from l2alex.models.inputs import PDInput, PresentationInput
from l2alex.services.fox import (
    FreeGroupEndo,
    Presentation,
    crossing_sign,
    fox_derivative,
    fox_row,
    generator_names,
    jacobian,
    mapping_torus_matrices,
    monodromy_jacobian,
    punctured_mapping_torus_matrices,
    torus_chain_complex,
    torus_presentation,
    wirtinger_from_pd,
)
from l2alex.services.groupring import GroupRingElem, HomToZk, Word, parse_word, ring_mul
from l2alex.services.laurent import LaurentMatrix, LaurentPoly, alexander_normalize, det
from l2alex.utils.errors import PresentationError


def _elem(text, gens=("x", "y")):
    return GroupRingElem.from_word(parse_word(text, list(gens)))


def test_fox_derivative_of_generators():
    x = Word.generator(0)
    assert fox_derivative(x, 0) == GroupRingElem.one()
    assert fox_derivative(x, 1).is_zero()
    assert fox_derivative(Word.generator(0, -1), 0) == -_elem("x^-1")


def test_fox_derivative_of_powers():
    # d(x^3)/dx = 1 + x + x^2
    assert fox_derivative(Word.generator(0, 3), 0) == GroupRingElem.one() + _elem("x") + _elem("x^2")
    # d(x^-2)/dx = -x^-1 - x^-2
    assert fox_derivative(Word.generator(0, -2), 0) == -_elem("x^-1") - _elem("x^-2")


def test_fox_derivative_of_commutator():
    w = parse_word("x y x^-1 y^-1", ["x", "y"])
    assert fox_derivative(w, 0) == GroupRingElem.one() - _elem("x y x^-1")
    assert fox_derivative(w, 1) == _elem("x") - _elem("x y x^-1 y^-1")


def test_fundamental_identity(rng):
    for _ in range(200):
        n = rng.randint(1, 4)
        letters = [(rng.randrange(n), rng.choice([-2, -1, 1, 2])) for _ in range(rng.randint(0, 30))]
        w = Word(letters)
        total = GroupRingElem.zero()
        for g, d in enumerate(fox_row(w, n)):
            total = total + ring_mul(d, GroupRingElem.from_word(Word.generator(g)) - GroupRingElem.one())
        assert total == GroupRingElem.from_word(w) - GroupRingElem.one()


def test_product_rule(rng):
    for _ in range(50):
        u = Word([(rng.randrange(3), rng.choice([-1, 1])) for _ in range(rng.randint(0, 10))])
        v = Word([(rng.randrange(3), rng.choice([-1, 1])) for _ in range(rng.randint(0, 10))])
        for g in range(3):
            expected = fox_derivative(u, g) + ring_mul(GroupRingElem.from_word(u), fox_derivative(v, g))
            assert fox_derivative(u * v, g) == expected


def test_jacobian_shape():
    p = Presentation(["x", "y"], [parse_word("x y x^-1 y^-1", ["x", "y"])])
    jac = jacobian(p)
    assert (jac.rows, jac.cols) == (1, 2)
    free = Presentation(["x"], [])
    assert (jacobian(free).rows, jacobian(free).cols) == (0, 1)


def test_generator_names():
    assert generator_names(3) == ["a", "b", "c"]
    assert generator_names(27)[0] == "a1"
    assert len(generator_names(27)) == 27


def test_presentation_rejects_bad_phi():
    with pytest.raises(PresentationError):
        Presentation(["x", "y"], [parse_word("x y", ["x", "y"])], phi=HomToZk([[1], [1]]))
    with pytest.raises(PresentationError):
        Presentation(["x"], [], phi=HomToZk([[1], [1]]))


def test_presentation_input_round_trip():
    data = PresentationInput(generators=["a", "b"], relators=["a b a b^-1 a^-1 b^-1"], phi={"a": [1], "b": [1]})
    p = Presentation.from_input(data)
    assert p.is_deficiency_one()
    assert Presentation.from_input(p.to_input()).relators == p.relators
    with pytest.raises(PresentationError):
        Presentation.from_input(PresentationInput(generators=["a", "b"], relators=[], phi={"a": [1]}))


def test_crossing_sign():
    assert crossing_sign([1, 2, 3, 1], 6) == 1
    assert crossing_sign([1, 4, 2, 5], 6) == -1
    assert crossing_sign([3, 6, 4, 1], 6) == -1
    with pytest.raises(PresentationError):
        crossing_sign([1, 2, 3, 5], 6)


def test_malformed_crossing_is_rejected():
    # labels pair up correctly but the over-strand of the second crossing jumps from 6 to 3
    with pytest.raises(PresentationError):
        wirtinger_from_pd(PDInput(pd=[[1, 4, 2, 5], [2, 6, 4, 3], [5, 3, 6, 1]]))


def test_trefoil_wirtinger(trefoil_pd):
    p = wirtinger_from_pd(trefoil_pd)
    assert p.generators == ("a", "b", "c")
    assert len(p.relators) == 2
    assert p.phi.images == ((1,), (1,), (1,))
    d = det(LaurentMatrix.from_group_ring(jacobian(p), p.phi).delete_col(0))
    assert alexander_normalize(d) == LaurentPoly.from_coeffs([1, -1, 1])


def test_figure_eight_wirtinger(figure_eight_pd):
    p = wirtinger_from_pd(figure_eight_pd)
    assert p.rank == 4
    assert p.is_deficiency_one()
    jac = LaurentMatrix.from_group_ring(jacobian(p), p.phi)
    # the rows of the abelianized Jacobian vanish at z = 1
    for row in jac.entries:
        total = sum((sum(e.terms.values()) for e in row), 0)
        assert total == 0
    d = det(jac.delete_col(0))
    assert alexander_normalize(d) == LaurentPoly.from_coeffs([1, -3, 1])


def test_alexander_polynomial_by_cofactor_expansion(figure_eight_pd):
    p = wirtinger_from_pd(figure_eight_pd)
    m = LaurentMatrix.from_group_ring(jacobian(p), p.phi).delete_col(0)

    def expand(rows, cols):
        if len(rows) == 1:
            return m[rows[0], cols[0]]
        total = LaurentPoly.zero(1)
        for idx, c in enumerate(cols):
            minor = expand(rows[1:], cols[:idx] + cols[idx + 1:])
            term = m[rows[0], c] * minor
            total = total + term if idx % 2 == 0 else total - term
        return total

    assert expand(list(range(m.rows)), list(range(m.cols))) == det(m)


def test_unknot_pd(unknot_pd):
    p = wirtinger_from_pd(unknot_pd)
    assert p.generators == ("a",)
    assert p.relators == ()


def test_pd_validation():
    with pytest.raises(PresentationError):
        wirtinger_from_pd(PDInput(pd=[[1, 2, 2, 1], [1, 3, 4, 5]]))
    # the Hopf link has two components
    with pytest.raises(PresentationError):
        wirtinger_from_pd(PDInput(pd=[[4, 1, 3, 2], [2, 3, 1, 4]]))
    with pytest.raises(ValueError):
        PDInput(pd=[[1, 2, 3]])


def test_torus_presentation():
    p = torus_presentation(2, 3)
    assert p.relators[0].letters == ((0, 2), (1, -3))
    assert p.phi.images == ((3,), (2,))
    assert p.torus == (2, 3)
    with pytest.raises(ValueError):
        torus_presentation(4, 6)
    with pytest.raises(ValueError):
        torus_presentation(1, 3)


def test_free_group_endo():
    gens = ["x", "y"]
    f = FreeGroupEndo(gens, [parse_word("x y", gens), parse_word("y x y", gens)])
    assert f.apply(parse_word("x", gens)) == parse_word("x y", gens)
    assert f.compose(f).images[0] == parse_word("x y y x y", gens)
    assert f.iterate(2).images == f.compose(f).images
    assert f.iterate(0).images == FreeGroupEndo.identity(gens).images
    assert f.abelianized() == [[1, 1], [1, 2]]
    estimates = f.growth_estimates(6)
    assert len(estimates) == 6
    assert 2.0 < estimates[-1] < 3.5


def test_endo_is_a_homomorphism_on_long_words(rng):
    gens = ["x", "y"]
    f = FreeGroupEndo(gens, [parse_word("x y", gens), parse_word("y^-1 x y^2", gens)])
    for _ in range(20):
        u = Word([(rng.randrange(2), rng.choice([-2, -1, 1, 2])) for _ in range(200)])
        v = Word([(rng.randrange(2), rng.choice([-1, 1])) for _ in range(200)])
        assert f.apply(u * v) == f.apply(u) * f.apply(v)
        assert f.apply(u.inverse()) == f.apply(u).inverse()
        assert f.image_length_bound(u) >= f.apply(u).length()


def test_growth_estimates_stop_at_length_cap():
    gens = ["x", "y"]
    f = FreeGroupEndo(gens, [parse_word("x y", gens), parse_word("y x y", gens)])
    capped = f.growth_estimates(12, max_length=100)
    assert 1 <= len(capped) < 12
    assert capped == f.growth_estimates(len(capped))
    assert len(f.growth_estimates(12)) == 12


def test_abelianization_without_phi_projects_to_free_part():
    gens = ["a", "b"]
    trefoil = Presentation(gens, [parse_word("a b a b^-1 a^-1 b^-1", gens)])
    h = trefoil.abelianization_map()
    assert h.rank == 1
    assert h.images == ((1,), (1,))
    assert h.kills(trefoil.relators)

    torus = Presentation(["x", "y"], [parse_word("x y x^-1 y^-1", ["x", "y"])])
    assert torus.abelianization_map().images == ((1, 0), (0, 1))

    # Z + Z/2: only the first generator survives in the free part
    mixed = Presentation(["x", "y"], [parse_word("y^2", ["x", "y"]), parse_word("x y x^-1 y^-1", ["x", "y"])])
    assert mixed.abelianization_map().images == ((1,), (0,))


def test_abelianization_of_finite_group_has_rank_zero():
    p = Presentation(["a"], [parse_word("a^3", ["a"])])
    h = p.abelianization_map()
    assert h.rank == 0
    assert h.images == ((),)


def test_monodromy_jacobian():
    gens = ["x", "y"]
    f = FreeGroupEndo(gens, [parse_word("x y", gens), parse_word("y x y", gens)])
    a = monodromy_jacobian(f)
    assert a[0, 0] == GroupRingElem.one()
    assert a[0, 1] == _elem("x")
    assert a[1, 0] == _elem("y")
    assert a[1, 1] == GroupRingElem.one() + _elem("y x")

    swap = FreeGroupEndo(gens, [parse_word("y", gens), parse_word("x", gens)])
    s = monodromy_jacobian(swap)
    assert s[0, 1] == GroupRingElem.one() and s[0, 0].is_zero()


def test_mapping_torus_matrices_shapes():
    gens = ["x", "y"]
    f = FreeGroupEndo(gens, [parse_word("x y", gens), parse_word("y x y", gens)])
    b3, b2, b1 = mapping_torus_matrices(f)
    assert (b3.rows, b3.cols) == (1, 3)
    assert (b2.rows, b2.cols) == (3, 3)
    assert (b1.rows, b1.cols) == (3, 1)
    one_minus_mu = GroupRingElem.one() - GroupRingElem.from_word(Word.generator(2))
    assert b3[0, 0] == one_minus_mu
    assert b1[2, 0] == one_minus_mu
    assert all(e.is_zero() for e in b2.entries[0])


def test_identity_mapping_torus():
    f = FreeGroupEndo.identity(["x"])
    _, b2, _ = mapping_torus_matrices(f)
    assert b2[1, 0] == GroupRingElem.one() - GroupRingElem.from_word(Word.generator(1))

    pb2, pb1 = punctured_mapping_torus_matrices(f)
    assert (pb2.rows, pb2.cols) == (1, 2)
    assert pb1[0, 0] == GroupRingElem.one() - GroupRingElem.from_word(Word.generator(0))
    assert pb1[1, 0] == GroupRingElem.one() - GroupRingElem.from_word(Word.generator(1))


def test_torus_chain_complex_is_a_complex():
    b, a = torus_chain_complex()
    h = HomToZk([[1, 0], [0, 1]])
    product = LaurentMatrix.from_group_ring(b, h) @ LaurentMatrix.from_group_ring(a, h)
    assert product[0, 0].is_zero()
