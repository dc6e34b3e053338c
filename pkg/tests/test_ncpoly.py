from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus
from ybsegre.errors import PreconditionError
from ybsegre.ncpoly import (
    NcPolynomial,
    QuadraticPresentation,
    compare_deglex,
    leading_monomial,
    multiply,
    yb_presentation,
)
from ybsegre.solution import classify, flip, from_mapping, orbit_report

words = st.lists(st.integers(0, 2), max_size=4).map(tuple)
polys = st.dictionaries(words, st.integers(-3, 3), max_size=4).map(lambda d: NcPolynomial(3, d))


def P(*terms, n=3):
    return NcPolynomial(n, [(w, c) for c, w in terms])


# -- order -------------------------------------------------------------------


def test_deglex_examples():
    assert compare_deglex((0, 2), (2, 1)) == -1
    assert compare_deglex((0,), (0, 0)) == -1
    assert compare_deglex((1, 0), (1, 0)) == 0
    assert compare_deglex((), (0,)) == -1


def test_deglex_rejects_foreign_letters():
    with pytest.raises(ValueError):
        compare_deglex((0, 3), (1, 1), nvars=3)


@given(words, words)
def test_deglex_antisymmetric_and_total(u, v):
    assert compare_deglex(u, v) == -compare_deglex(v, u)
    assert (compare_deglex(u, v) == 0) == (u == v)


@given(words, words, words)
def test_deglex_transitive(u, v, w):
    if compare_deglex(u, v) <= 0 and compare_deglex(v, w) <= 0:
        assert compare_deglex(u, w) <= 0


@given(words, words, words)
def test_deglex_is_monomial_order(u, v, w):
    # compatible with multiplication on both sides
    if compare_deglex(u, v) < 0:
        assert compare_deglex(w + u, w + v) < 0
        assert compare_deglex(u + w, v + w) < 0


# -- arithmetic --------------------------------------------------------------


def test_multiply_examples():
    x1, x2 = P((1, (0,))), P((1, (1,)))
    assert multiply(x1, x2).terms == {(0, 1): 1}
    lhs = multiply(x1 - x2, x1 + x2)
    assert lhs == P((1, (0, 0)), (1, (0, 1)), (-1, (1, 0)), (-1, (1, 1)))
    assert multiply(x1, NcPolynomial.zero(3)) == 0


def test_zero_coefficients_dropped():
    f = P((1, (0,)), (-1, (0,)), (2, (1,)))
    assert f.terms == {(1,): 2}


def test_letters_validated():
    with pytest.raises(ValueError):
        P((1, (5,)))


def test_alphabet_mismatch():
    with pytest.raises(ValueError):
        NcPolynomial(2, {(0,): 1}) + NcPolynomial(3, {(0,): 1})


@settings(max_examples=60)
@given(polys, polys, polys)
def test_multiply_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


@settings(max_examples=60)
@given(polys, polys, polys)
def test_multiply_distributive(f, g, h):
    assert f * (g + h) == f * g + f * h
    assert (g + h) * f == g * f + h * f


@given(polys)
def test_subtraction_inverse(f):
    assert f - f == 0
    assert f + NcPolynomial.zero(3) == f


@given(polys, st.fractions(max_denominator=5))
def test_scalar_multiplication(f, c):
    g = f * c
    assert all(g.terms[w] == f.terms[w] * c for w in g.terms)


@given(polys)
def test_json_round_trip(f):
    assert NcPolynomial.from_json(3, f.to_json()) == f


def test_leading_monomial_examples():
    assert leading_monomial(P((1, (2, 1)), (-1, (0, 2)))) == (2, 1)
    assert leading_monomial(P((1, (1, 0, 2)))) == (1, 0, 2)
    assert leading_monomial(P((1, (0, 1)), (1, (1, 0)))) == (1, 0)
    with pytest.raises(ValueError):
        leading_monomial(NcPolynomial.zero(3))


def test_format_and_coefficients():
    f = P((1, (2, 1)), (Fraction(-3, 2), (0, 2)), (1, ()))
    assert f.format() == "x3x2 - 3/2*x1x3 + 1"
    assert f.monic() == f
    assert (f * 2).leading_coefficient() == 2
    assert not f.is_homogeneous()


def test_binomial_requires_ordered_words():
    with pytest.raises(ValueError):
        NcPolynomial.binomial(3, (0, 1), (1, 0))


# -- presentations -----------------------------------------------------------


def test_presentation_validation():
    good = NcPolynomial.binomial(2, (1, 0), (0, 1))
    QuadraticPresentation.build(("a", "b"), [good])
    with pytest.raises(ValueError, match="monic"):
        QuadraticPresentation.build(("a", "b"), [good * 2])
    with pytest.raises(ValueError, match="quadratic"):
        QuadraticPresentation.build(("a", "b"), [P((1, (1, 0, 0)), n=2)])
    with pytest.raises(ValueError, match="duplicate"):
        QuadraticPresentation.build(("a", "b"), [good, good])


def test_presentation_json_round_trip(X):
    p = yb_presentation(X)
    assert QuadraticPresentation.from_json(p.to_json()) == p


def test_yb_presentation_x(X):
    assert yb_presentation(X).format_relations() == ["x3x2 - x1x3", "x3x1 - x2x3", "x2x1 - x1x2"]


def test_yb_presentation_y(Y):
    assert yb_presentation(Y).format_relations() == ["y2y2 - y1y1"]


def test_yb_presentation_flip():
    assert yb_presentation(flip(3)).format_relations() == ["x3x2 - x2x3", "x3x1 - x1x3", "x2x1 - x1x2"]


def test_yb_presentation_needs_nondegenerate():
    with pytest.raises(PreconditionError):
        yb_presentation(from_mapping(2, {}))


def test_yb_presentation_matches_orbits_on_corpus():
    for qs in corpus(4):
        p = yb_presentation(qs)
        orbits = {frozenset(o) for o in orbit_report(qs).nontrivial_orbits}
        assert len(p.relations) == len(orbits)
        sq = classify(qs).is_square_free
        for f in p.relations:
            u, v = f.words()
            assert f.terms == {u: 1, v: -1}
            assert frozenset((u, v)) in orbits
            assert qs(*u) == v
            assert compare_deglex(u, v) == 1
            if sq:
                # u = x_j x_i, v = x_i' x_j' with j > i'
                assert u[0] > v[0]
