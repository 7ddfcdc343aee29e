from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crdeform.exact import (
    CScalar,
    QuadExt,
    RadicandMismatch,
    format_quad,
    format_scalar,
    is_squarefree,
    sqrt,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)
radicands = st.sampled_from([2, 3, 5])


@st.composite
def quads(draw, d=None):
    d = draw(radicands) if d is None else d
    return QuadExt(draw(rationals), draw(rationals), d)


@st.composite
def cscalars_over(draw, d):
    return CScalar(draw(quads(d)), draw(quads(d)))


@st.composite
def cscalar_pairs(draw):
    d = draw(radicands)
    return draw(cscalars_over(d)), draw(cscalars_over(d))


def test_sqrt_squares_to_radicand():
    assert sqrt(2) * sqrt(2) == 2
    assert sqrt(3) ** 2 == CScalar(3)


def test_rational_values_forget_the_radicand():
    assert QuadExt(Fraction(1, 2), 0, 7) == Fraction(1, 2)
    assert QuadExt(Fraction(1, 2), 0, 7) + QuadExt(0, 1, 3) == QuadExt(Fraction(1, 2), 1, 3)


def test_incompatible_radicands_are_rejected():
    with pytest.raises(RadicandMismatch):
        QuadExt(0, 1, 2) + QuadExt(0, 1, 3)


def test_squarefree():
    assert is_squarefree(2) and is_squarefree(30)
    assert not is_squarefree(12)


def test_sign_of_quadratic_irrationals():
    assert QuadExt(-1, 1, 2).sign() == 1          # sqrt 2 - 1 > 0
    assert QuadExt(3, -2, 2).sign() == 1          # 3 - 2 sqrt 2 > 0
    assert QuadExt(-3, 2, 2).sign() == -1
    assert QuadExt(Fraction(7, 5), -1, 2).sign() == -1


def test_inverse_and_division():
    x = QuadExt(1, 1, 2)
    assert x * x.inverse() == 1
    c = CScalar(QuadExt(1, 1, 2), 3)
    assert c / c == 1
    with pytest.raises(ZeroDivisionError):
        CScalar(0).inverse()


def test_formatting():
    # the radicand is implicit: "sqrt" is the session's square root
    assert format_quad(QuadExt(Fraction(1, 2), -3, 2)) == "1/2-3*sqrt"
    assert format_scalar(CScalar(0, 1)) == "i"
    assert format_scalar(CScalar(QuadExt(1, 1, 2), Fraction(-2, 3))) == "1+sqrt-2/3*i"
    assert format_scalar(CScalar(0)) == "0"


@settings(max_examples=1000)
@given(cscalar_pairs())
def test_conjugation_is_an_involutive_ring_morphism(pair):
    a, b = pair
    assert a.conjugate().conjugate() == a
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a * a.conjugate()).is_real()
    assert a.abs2() == (a * a.conjugate()).re


@settings(max_examples=1000)
@given(radicands.flatmap(lambda d: st.tuples(quads(d), quads(d), quads(d))))
def test_quadratic_field_axioms(t):
    a, b, c = t
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if a:
        assert a * a.inverse() == 1
        assert a.norm() != 0
    assert a.conjugate_radical().conjugate_radical() == a
    assert (a * b).conjugate_radical() == a.conjugate_radical() * b.conjugate_radical()
