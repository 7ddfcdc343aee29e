import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crdeform.exact import CScalar
from crdeform.geometry import HoloMap
from crdeform.parser import parse_poly
from crdeform.poly import MPoly
from crdeform.segre import (
    NormalComplexification,
    QAxiomError,
    build_segre,
    compose_with_segre,
    generic_rank,
    minimality,
)

I = CScalar(0, 1)
NAMES = ["z", "chi", "tau"]


def normal(text, n=1, names=NAMES):
    return NormalComplexification(n, parse_poly(text, names, conjugates=False))


HEIS = normal("tau + 2*i*z*chi")
FLAT = normal("tau")
PERTURBED = normal("tau + 2*i*z*chi + z^2*chi^2")


def xs(q):
    return [MPoly.variable(q, j) for j in range(q)]


def test_heisenberg_segre_maps():
    x1, = xs(1)
    assert build_segre(HEIS, 1).components == (x1, MPoly.zero(1))
    a, b = xs(2)
    assert build_segre(HEIS, 2).components == (a, 2 * I * a * b)
    a, b, c = xs(3)
    assert build_segre(HEIS, 3).components == (a, 2 * I * a * b - 2 * I * b * c)


def test_base_case_for_any_q():
    for Qc in (HEIS, FLAT, PERTURBED):
        x1, = xs(1)
        assert build_segre(Qc, 1).components == (x1, MPoly.zero(1))


def test_ranks():
    assert generic_rank(build_segre(HEIS, 1)).rank == 1
    assert generic_rank(build_segre(HEIS, 2)).rank == 2
    for q in range(1, 5):
        r = generic_rank(build_segre(FLAT, q))
        assert r.rank == 1
        # for q >= 2 the deficiency is certified by vanishing minors, not by one evaluation
        assert r.certified_by == ("evaluation" if q == 1 else "symbolic minors")


def test_minimality_reports():
    r = minimality(HEIS, 3)
    assert r.ranks == [1, 2, 2] and r.t == 2 and r.minimal
    assert r.summary() == "minimal, t = 2"
    assert r.jet_order == 4 and r.involution_ok
    flat = minimality(FLAT, 4)
    assert not flat.minimal and flat.summary() == "not minimal up to 4"
    p = minimality(PERTURBED, 3)
    assert p.t == 2 and p.ranks == [1, 2, 2]


def test_involution_defect():
    assert HEIS.satisfies_involution()
    assert FLAT.satisfies_involution()
    # passes both normal-form identities but is not the complexification of a real equation
    assert not PERTURBED.satisfies_involution()
    assert PERTURBED.involution_defect(4) == parse_poly("2*z^2*chi^2", NAMES, conjugates=False)


def test_axioms_are_enforced():
    with pytest.raises(QAxiomError):
        normal("tau + z")
    with pytest.raises(QAxiomError):
        normal("tau + chi^2")


def test_composition():
    a, b = xs(2)
    S = build_segre(HEIS, 2)
    y = [MPoly.variable(4, j) for j in range(4)]
    assert compose_with_segre(HoloMap.identity(2), S) == S.components
    H = HoloMap(2, (y[0] * y[0], y[1]))
    assert compose_with_segre(H, S) == (a * a, 2 * I * a * b)


def test_two_dimensional_model():
    names = ["z1", "z2", "c1", "c2", "tau"]
    Qc = normal("tau + 2*i*(z1*c1 + z2*c2)", n=2, names=names)
    r = minimality(Qc, 3)
    assert r.N == 3 and r.t == 2


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(-2, 2), st.integers(-2, 2)),
                max_size=3),
       st.integers(0, 5))
def test_rank_is_monotone_and_degrees_bounded(terms, seed):
    z, chi, tau = (MPoly.variable(3, j) for j in range(3))
    Q = tau
    for a, b, re, im in terms:
        Q = Q + CScalar(re, im) * z**a * chi**b
    Qc = NormalComplexification(1, Q)
    ranks = minimality(Qc, 3, seed=seed).ranks
    assert ranks == sorted(ranks)
    assert all(1 <= r <= 2 for r in ranks)
    S = build_segre(Qc, 2)
    y = [MPoly.variable(4, j) for j in range(4)]
    H = HoloMap(2, (y[0] * y[1], y[0] ** 2))
    deg_s = max(c.degree() for c in S.components)
    assert all(c.degree() <= 2 * deg_s for c in compose_with_segre(H, S))
