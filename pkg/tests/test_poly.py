from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crdeform.exact import CScalar
from crdeform.poly import ArityMismatch, MPoly, circle_grading, homogeneous_parts, poly_reduce

from conftest import coords

z, w, zb, wb = coords()
SPHERE = z * zb + w * wb - 1
QUARTIC = z * z * zb * zb + z * zb * w * w * wb * wb + w * wb - 1
# a Heisenberg-type defining function (w - wbar)/(2i) - z zbar
HEIS = (w - wb) * CScalar(0, Fraction(-1, 2)) - z * zb

small = st.fractions(min_value=-6, max_value=6, max_denominator=6)
coefficients = st.builds(CScalar, small, small)
exponents = st.tuples(*[st.integers(0, 2)] * 4)


@st.composite
def polys(draw, max_terms=5):
    terms = draw(st.dictionaries(exponents, coefficients, max_size=max_terms))
    return MPoly(4, terms)


divisors = st.sampled_from([SPHERE, QUARTIC, HEIS])


def divides(rho: MPoly, p: MPoly) -> bool:
    """Plain textbook long division used as an independent oracle."""
    lm, lc = rho.leading_term()
    rest = p
    for _ in range(500):
        if rest.is_zero():
            return True
        e, c = rest.leading_term()
        if any(a < b for a, b in zip(e, lm)):
            return False
        q = MPoly.monomial(tuple(a - b for a, b in zip(e, lm)), c / lc)
        rest = rest - q * rho
    raise AssertionError("division did not terminate")


def test_arithmetic_and_degree():
    p = (z + w) ** 2
    assert p == z * z + 2 * z * w + w * w
    assert p.degree() == 2
    assert (p - p).is_zero()
    assert p.diff(0) == 2 * z + 2 * w


def test_conjugation_swaps_slots():
    p = CScalar(0, 1) * z * wb + 2
    assert p.conj() == CScalar(0, -1) * zb * w + 2
    assert (z * zb).is_real()


def test_spec_reduction_examples():
    assert poly_reduce(SPHERE * (z + 1), SPHERE).is_zero()
    assert poly_reduce(w * wb, SPHERE) == w * wb
    assert poly_reduce(z * z * zb + z * w * wb - z, SPHERE).is_zero()


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        poly_reduce(MPoly.variable(2, 0), SPHERE)
    with pytest.raises(ValueError):
        poly_reduce(z, MPoly.zero(4))


def test_gradings():
    assert homogeneous_parts(z * z + z * wb + 1) == {0: MPoly.constant(4, 1), 2: z * z + z * wb}
    assert homogeneous_parts(MPoly.zero(4)) == {}
    assert homogeneous_parts(SPHERE) == {0: MPoly.constant(4, -1), 2: z * zb + w * wb}
    assert circle_grading(z * z * zb) == {1: z * z * zb}
    assert circle_grading(SPHERE) == {0: SPHERE}
    assert circle_grading(z * z + zb * zb) == {-2: zb * zb, 2: z * z}


def test_evaluate_and_substitute():
    p = z * zb + w
    assert p.evaluate([2, 3, 5, 7]) == 13
    assert p.substitute([w, z, wb, zb]) == w * wb + z


@settings(max_examples=1000)
@given(polys(), polys(), polys(max_terms=3), divisors, coefficients)
def test_reduction_is_a_linear_idempotent_projection(p, q, f, rho, c):
    r = poly_reduce(p, rho)
    assert poly_reduce(r, rho) == r
    assert poly_reduce(p + q.scale(c), rho) == r + poly_reduce(q, rho).scale(c)
    assert poly_reduce(f * rho, rho).is_zero()
    assert poly_reduce(p + f * rho, rho) == r
    # the difference lies in the ideal and the remainder is fully reduced
    assert divides(rho, p - r)
    lm = rho.leading_term()[0]
    assert all(any(a < b for a, b in zip(e, lm)) for e in r.terms)


@settings(max_examples=300)
@given(polys(), polys())
def test_ring_axioms(p, q):
    assert p * q == q * p
    assert (p + q).conj() == p.conj() + q.conj()
    assert (p * q).conj() == p.conj() * q.conj()
    assert p.conj().conj() == p
