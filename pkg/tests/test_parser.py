from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crdeform.exact import CScalar, QuadExt, sqrt
from crdeform.parser import ParseError, format_poly, parse_poly, parse_scalar
from crdeform.poly import MPoly

from conftest import coords

NAMES = ["z", "w"]
z, w, zb, wb = coords()

small = st.fractions(min_value=-9, max_value=9, max_denominator=7)
quad = st.builds(lambda a, b: QuadExt(a, b, 2), small, st.sampled_from([0, 0, 1, -1, Fraction(3, 2)]))
coefficients = st.builds(CScalar, quad, quad)


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(st.tuples(*[st.integers(0, 3)] * 4), coefficients, max_size=6))
    return MPoly(4, terms)


def test_sphere_text():
    assert parse_poly("z*~z + w*~w - 1", NAMES) == z * zb + w * wb - 1


def test_sqrt_token_uses_session_radicand():
    assert parse_poly("sqrt*z*w", NAMES, d=2) == sqrt(2) * z * w
    with pytest.raises(ParseError):
        parse_poly("sqrt*z", NAMES)


def test_quartic_source_text():
    p = parse_poly("z^2*~z^2 + z*~z*w^2*~w^2 + w*~w - 1", NAMES)
    assert p == z * z * zb * zb + z * zb * w * w * wb * wb + w * wb - 1


def test_precedence_and_unary_minus():
    assert parse_poly("-z^2", NAMES) == -(z * z)
    assert parse_poly("2*(z + w)^2 - 3/4", NAMES) == 2 * (z + w) ** 2 - Fraction(3, 4)
    assert parse_poly("i*z - -w", NAMES) == CScalar(0, 1) * z + w


def test_scalar():
    assert parse_scalar("3/5+4/5*i") == CScalar(Fraction(3, 5), Fraction(4, 5))
    assert parse_scalar("2*sqrt", 3) == 2 * sqrt(3)


@pytest.mark.parametrize(
    "src, message, column",
    [
        ("z^", "exponent must be a natural number", 3),
        ("z^1/2", "exponent must be a natural number", 3),
        ("z + u", "unknown identifier 'u'", 5),
        ("(z + w", "expected ')'", 7),
        ("z $ w", "unexpected character '$'", 3),
        ("", "empty expression", 1),
        ("~3", "'~' must be followed by a declared variable", 2),
    ],
)
def test_diagnostics_carry_positions(src, message, column):
    with pytest.raises(ParseError) as info:
        parse_poly(src, NAMES)
    assert info.value.message.startswith(message)
    assert info.value.line == 1 and info.value.column == column


def test_multiline_position():
    with pytest.raises(ParseError) as info:
        parse_poly("z +\n  q", NAMES)
    assert (info.value.line, info.value.column) == (2, 3)


def test_conjugates_can_be_disabled():
    assert parse_poly("x*y", ["x", "y"], conjugates=False).nvars == 2
    with pytest.raises(ParseError):
        parse_poly("~x", ["x"], conjugates=False)


def test_reserved_names_rejected():
    with pytest.raises(ValueError):
        parse_poly("i", ["i"])


@settings(max_examples=1000)
@given(polys())
def test_format_parse_round_trip(p):
    text = format_poly(p, NAMES)
    assert parse_poly(text, NAMES, d=2) == p
    assert format_poly(parse_poly(text, NAMES, d=2), NAMES) == text
