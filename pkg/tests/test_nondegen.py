from fractions import Fraction

import pytest

from crdeform.exact import sqrt
from crdeform.geometry import GeometryError
from crdeform.nondegen import (
    MultiindexEnumerator,
    det,
    k0_at_point,
    k0_generic,
    k0_uniform,
    nondeg_determinant,
    unit_certificate,
)
from crdeform.poly import poly_reduce

from conftest import coords

F = Fraction


def test_identity_determinant(S2, ident):
    z, w, zb, wb = coords()
    s = nondeg_determinant(ident, S2, S2, [(0,), (1,)], [1, 1])
    assert s == -(z * zb + w * wb)
    assert poly_reduce(s, S2.rho) == -1 + 0 * z


def test_repeated_rows_vanish(S2, H1, S3):
    assert nondeg_determinant(H1, S2, S3, [(1,), (1,), (0,)]).is_zero()


def test_quadratic_order_two_determinant(S2, S3, H1):
    s = nondeg_determinant(H1, S2, S3, [(0,), (1,), (2,)])
    assert not poly_reduce(s, S2.rho).is_zero()


def test_bad_multiindices(S2, S3, H1):
    with pytest.raises(GeometryError):
        nondeg_determinant(H1, S2, S3, [(0,), (1,)])
    with pytest.raises(GeometryError):
        nondeg_determinant(H1, S2, S3, [(0,), (1,), (2,)], [1, 2, 1])


def test_enumerator_order():
    en = MultiindexEnumerator(1, 3)
    assert en.multiindices(2) == [(0,), (1,), (2,)]
    assert list(en.candidates(2)) == [(((0,), (1,), (2,)), (1, 1, 1))]
    assert len(list(en.pairs(1))) == 2**3 - 1


def test_det_small():
    assert det([[1, 2], [3, 4]]) == -2
    assert det([[2]]) == 2


def test_pointwise_orders(S2, S3, H1, H2, ident):
    assert k0_at_point(ident, S2, S2, (1, 0)).order == 1
    assert k0_at_point(H1, S2, S3, (F(3, 5), F(4, 5))).order == 2
    # the cubic map is 3-nondegenerate only where z w = 0
    assert k0_at_point(H2, S2, S3, (1, 0)).order == 3
    assert k0_at_point(H2, S2, S3, (0, 1)).order == 3
    assert k0_at_point(H2, S2, S3, (F(3, 5), F(4, 5))).order == 2


def test_pointwise_rejects_points_off_m(S2, ident):
    with pytest.raises(GeometryError):
        k0_at_point(ident, S2, S2, (1, 1))


def test_generic_orders(S2, S3, H1, H2, ident):
    assert k0_generic(ident, S2, S2).order == 1
    assert k0_generic(H1, S2, S3).order == 2
    c = k0_generic(H2, S2, S3)
    assert c.order == 2
    z, w, zb, wb = coords()
    assert c.determinant == -6 * sqrt(3) * zb * wb


def test_unit_certificate(S2):
    z, w, zb, wb = coords()
    assert unit_certificate([z, w, zb, wb], S2.rho, 1)        # zzbar + wwbar = 1 on M
    assert not unit_certificate([z, zb], S2.rho, 3)          # common zeros (0, w), |w| = 1


def test_uniform_orders(S2, S3, H1, H2, ident):
    assert k0_uniform(ident, S2, S2).order == 1
    assert k0_uniform(H1, S2, S3).order == 2
    u = k0_uniform(H2, S2, S3)
    assert (u.lower, u.upper) == (3, 3) and u.exact
    assert u.lower_reason == "exact point"
    assert u.generic.order == 2
