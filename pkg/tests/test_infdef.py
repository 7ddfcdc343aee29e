import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crdeform.exact import CScalar, sqrt, to_cscalar
from crdeform.geometry import GeometryError, HoloMap, PolyVectorField, VectorSection, maps_into, sphere, transform_map
from crdeform.infdef import (
    DeformationOperator,
    SectionSpace,
    compute_aut,
    default_degree_cap,
    graded_hol_dimension,
    hol_generators,
    is_infinitesimal_deformation,
    pushforward_field,
    restrict_field,
    real_rank,
    rigidity_verdict,
    solve_hol,
    sphere_hol_generators,
)
from crdeform.poly import MPoly

from conftest import coords, cubic_map, quadratic_map
from unitary import as_biholomorphism, unitaries

I = CScalar(0, 1)
ZERO4 = MPoly.zero(4)


def printed_generators():
    """Real basis of the S_1, S_2, S_3 families as printed for the 3-sphere."""
    z, w, _, _ = coords()
    out = []
    for alpha, beta in ((1, 0), (I, 0), (0, 1), (0, I)):
        a, b = to_cscalar(alpha), to_cscalar(beta)
        ab, bb = a.conjugate(), b.conjugate()
        out.append(PolyVectorField((a - ab * z * z - bb * z * w, b - ab * z * w - bb * w * w)))
    for gamma in (CScalar(1), I):
        out.append(PolyVectorField((-gamma.conjugate() * w, gamma * z)))
    out.append(PolyVectorField((I * z, ZERO4)))
    out.append(PolyVectorField((ZERO4, I * w)))
    return out


def y_generators():
    """The eight real generators of the printed complement, middle column over sqrt 2."""
    z, w, _, _ = coords()
    r = sqrt(2).inverse()
    gens = []
    for slot in range(4):
        for u in (CScalar(1), I):
            a = [CScalar(0)] * 4
            a[slot] = u
            a, b, c, d = a
            ab, bb, cb, db = (x.conjugate() for x in (a, b, c, d))
            rows = [
                (a * w, -ab * z**3, -ab * z * z * w),
                (-bb * z * z * w, b * z - bb * z * w * w, ZERO4),
                (-cb * z * w * w, -cb * w**3, c * z),
                (ZERO4, d * w - db * z * z * w, -db * z * w * w),
            ]
            cols = [sum((row[j] for row in rows), ZERO4) for j in range(3)]
            gens.append(VectorSection((cols[0], cols[1] * r, cols[2])))
    return gens


def test_section_space_round_trip():
    sp = SectionSpace(2, 3, 2)
    assert len(sp) == 2 * 3 * 6
    vec = [0] * len(sp)
    vec[5] = 1
    vec[7] = -2
    assert sp.vector(sp.section(vec)) == vec


@pytest.mark.parametrize("n, count", [(1, 3), (2, 8), (3, 15)])
def test_sphere_generator_counts(n, count):
    gens = sphere_hol_generators(n)
    assert len(gens) == count
    assert real_rank([g.as_section() for g in gens]) == count


def test_printed_sphere_fields_lie_in_span():
    gens = [g.as_section() for g in sphere_hol_generators(2)]
    printed = [g.as_section() for g in printed_generators()]
    assert real_rank(printed) == 8
    assert real_rank(gens + printed) == 8


def test_identity_deformations_are_the_sphere_algebra(S2, ident):
    basis = solve_hol(ident, S2, S2, 2)
    assert basis.dimension == 8 and basis.exact
    gens = [g.as_section() for g in sphere_hol_generators(2)]
    assert real_rank(list(basis.sections) + gens) == 8


def test_quadratic_map_dimension(S2, S3, H1):
    basis = solve_hol(H1, S2, S3, 4)
    assert basis.dimension == 27 and basis.exact
    assert all(is_infinitesimal_deformation(V, H1, S2, S3) for V in basis.sections)
    assert graded_hol_dimension(H1, S2, S3, 4) == 27


def test_dimension_is_stable_beyond_the_complete_cap(S2, S3, H1, H2):
    assert solve_hol(H1, S2, S3, 6).dimension == 27
    assert solve_hol(H2, S2, S3, 8).dimension == 21


def test_cubic_default_cap(S2, S3, H2):
    assert default_degree_cap(H2) == 6
    basis = solve_hol(H2, S2, S3)
    assert basis.dimension == 21
    assert not basis.exact  # the map is not homogeneous, so no completeness certificate


def test_graded_solve_needs_homogeneous_map(S2, S3, H2):
    with pytest.raises(GeometryError):
        graded_hol_dimension(H2, S2, S3, 6)


def test_y_generators(S2, S3, H1):
    ys = y_generators()
    assert all(is_infinitesimal_deformation(Y, H1, S2, S3) for Y in ys)
    aut = compute_aut(H1, S2, S3)
    assert real_rank(ys) == 8
    assert real_rank(list(aut.aut_basis) + ys) == 27


def test_map_itself_is_not_a_deformation(S2, S3, H1):
    assert not is_infinitesimal_deformation(VectorSection(H1.components), H1, S2, S3)


def test_aut_decomposition(S2, S3, H1, H2, ident):
    a1 = compute_aut(H1, S2, S3)
    assert (a1.aut_dim, a1.stabilizer_dim) == (19, 4)
    a2 = compute_aut(H2, S2, S3)
    assert (a2.aut_dim, a2.stabilizer_dim) == (21, 2)
    a0 = compute_aut(ident, S2, S2)
    assert (a0.aut_dim, a0.stabilizer_dim) == (8, 8)


def test_stabilizer_pairs_cancel(S2, S3, H1):
    aut = compute_aut(H1, S2, S3)
    for S, Sp in aut.stabilizer:
        total = pushforward_field(S, H1) + restrict_field(Sp, H1)
        assert total.is_zero()


def test_verdicts(S2, S3, H1, H2):
    v1 = rigidity_verdict(H1, S2, S3, 4)
    assert not v1.rigid and v1.complement_dim == 8
    assert v1.verdict.startswith("inconclusive")
    v2 = rigidity_verdict(H2, S2, S3)
    assert v2.rigid and v2.complement_dim == 0
    assert "rigid (sufficient condition)" in v2.verdict


def test_quartic_source(M3, S3, H3):
    gens, complete = hol_generators(M3, 6)
    assert len(gens) == 2 and not complete
    v = rigidity_verdict(H3, M3, S3)
    assert v.rigid and v.hol_dim == 15 and v.stabilizer_dim == 2


def test_rejects_maps_outside(S2, S3):
    z, w, _, _ = coords()
    bad = HoloMap(2, (z, w, z))
    with pytest.raises(GeometryError):
        solve_hol(bad, S2, S3, 2)


def test_operator_solve_reports_residual(S2, S3, H1):
    op = DeformationOperator(H1, S2, S3, 2)
    z, w, zb, wb = coords()
    sec, residual = op.solve(z * zb * zb + 0)
    assert sec is None and residual


def _transformed(H, U, V):
    return transform_map(H, as_biholomorphism(U), as_biholomorphism(V))


@settings(max_examples=1000)
@given(st.sampled_from(["quadratic", "cubic"]), unitaries(2), unitaries(3))
def test_deformation_dimension_is_unitarily_invariant(which, U, V):
    # unitary changes of coordinates preserve degrees, so the truncated
    # dimension at a fixed cap is already an invariant
    H, expected = (quadratic_map(), 27) if which == "quadratic" else (cubic_map(), 15)
    Hn = _transformed(H, U, V)
    S2, S3 = sphere(2), sphere(3)
    assert maps_into(Hn, S2, S3)
    assert solve_hol(Hn, S2, S3, 4).dimension == expected


@settings(max_examples=6)
@given(unitaries(2), unitaries(3))
def test_cubic_full_dimension_is_unitarily_invariant(U, V):
    assert solve_hol(_transformed(cubic_map(), U, V), sphere(2), sphere(3), 6).dimension == 21
