"""Higher-order infinitesimal deformations.

A jet curve ``h(t) = H + V^1 t + ... + V^k t^k`` is tangent to the space of
maps ``M -> M'`` to order ``k`` when ``rho'(h(t), conj h(t)) = O(t^{k+1})`` on
``M``.  Expanding in ``t`` gives coefficients

    c_l = 2 Re(sum_j V^l_j rho'_{Z'_j}) + P_l(V^1, ..., V^{l-1}),

so ``P_l`` is never written out: it is whatever remains of ``c_l`` once
``V^l`` is set to zero.  (With the Taylor convention used here ``c_l`` is the
``l``-th derivative divided by ``l!``.)  Solving ``c_{j+1} = 0`` for
``V^{j+1}`` is an affine problem whose linear part is the first-order
operator of :mod:`crdeform.infdef`; inconsistency is measured in its
cokernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exact import QuadExt, to_cscalar
from .geometry import GeometryError, HoloMap, Hypersurface, PolyVectorField, VectorSection, maps_into
from .infdef import DeformationOperator, default_degree_cap, real_combination, solve_hol
from .poly import MPoly, poly_reduce
from .series import Series, series_conj, substitute_series

__all__ = [
    "JetCurve",
    "Extended",
    "Obstructed",
    "ObstructionQuadric",
    "expand_defining_along_curve",
    "is_member_holk",
    "prolong",
    "prolongation_cap",
    "obstruction_quadric",
    "lie_series_flow",
    "compose_jets",
    "autk_sample",
    "dangelo_jet",
]


@dataclass(frozen=True)
class JetCurve:
    """``tau_k(V^1, ..., V^k) = H + sum V^l t^l``."""

    base: HoloMap
    coeffs: tuple[VectorSection, ...] = ()

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        for v in coeffs:
            if len(v) != self.base.target_dim:
                raise GeometryError("jet coefficient has the wrong number of components")
            for c in v:
                if c.nvars != 2 * self.base.source_dim or not c.is_holomorphic():
                    raise GeometryError("jet coefficients must be holomorphic in the source variables")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def truncate(self, j: int) -> "JetCurve":
        """``pi_j``: drop coefficients beyond ``t^j``."""
        if j < 0:
            raise ValueError("truncation order must be >= 0")
        return JetCurve(self.base, self.coeffs[:j])

    def extend(self, V: VectorSection) -> "JetCurve":
        return JetCurve(self.base, self.coeffs + (V,))

    def coefficient(self, l: int) -> VectorSection:
        if l == 0:
            return VectorSection(self.base.components)
        if l <= self.order:
            return self.coeffs[l - 1]
        return VectorSection.zero(2 * self.base.source_dim, self.base.target_dim)

    def component_series(self, k: int) -> list[Series]:
        """Per target coordinate, ``[H_i, V^1_i, ..., V^k_i]``."""
        return [[self.coefficient(l)[i] for l in range(k + 1)] for i in range(self.base.target_dim)]

    def is_constant(self) -> bool:
        return all(v.is_zero() for v in self.coeffs)


def expand_defining_along_curve(rho_prime: MPoly, h: JetCurve, k: int) -> list[MPoly]:
    """``[c_0, ..., c_k]`` with ``rho'(h(t), conj h(t)) = sum c_l t^l + O(t^{k+1})``.

    The parameter ``t`` is real, so the conjugate curve has the conjugated
    coefficients.  Nothing is reduced modulo ``rho``.
    """
    if rho_prime.nvars != 2 * h.base.target_dim:
        raise GeometryError("target polynomial does not match the curve's target dimension")
    if k < 0:
        raise ValueError("expansion order must be >= 0")
    ser = h.component_series(k)
    return substitute_series(rho_prime, ser + [series_conj(s) for s in ser], k)


def is_member_holk(h: JetCurve, M: Hypersurface, Mp: Hypersurface, k: int | None = None) -> bool:
    """Whether ``c_1, ..., c_k`` all vanish on ``M`` (default ``k`` = order of ``h``)."""
    k = h.order if k is None else k
    cs = expand_defining_along_curve(Mp.rho, h, k)
    return all(poly_reduce(c, M.rho).is_zero() for c in cs[1:])


# -- prolongation -------------------------------------------------------------


@dataclass
class Extended:
    """``curve`` has order ``j + 1``; ``adjusted`` means ``V^j`` was corrected."""

    particular: VectorSection
    kernel: list[VectorSection]
    curve: JetCurve
    cap: int
    adjusted: bool = False

    extended = True


@dataclass
class Obstructed:
    residual: MPoly
    cokernel: dict[tuple, QuadExt]
    cap: int

    extended = False


def prolongation_cap(h: JetCurve) -> int:
    """Degree cap for ``V^{j+1}``: ``max deg V^i + deg H``, at least the first-order default."""
    top = max((v.degree() for v in h.coeffs), default=0)
    return max(default_degree_cap(h.base), top + h.base.degree())


def prolong(
    h: JetCurve,
    M: Hypersurface,
    Mp: Hypersurface,
    cap: int | None = None,
    operator: DeformationOperator | None = None,
    adjust: bool = True,
):
    """Solve ``c_{j+1} = 0`` for ``V^{j+1}`` of degree ``<= cap``.

    Returns :class:`Extended` with a particular solution and the kernel (the
    first-order deformations of degree ``<= cap``), or :class:`Obstructed`
    with the reduced inhomogeneity and its cokernel coordinates.

    For ``j >= 2`` the coefficient ``c_{j+1}`` is affine in ``V^j`` (the
    square of ``V^j`` only appears at ``t^{2j}``), so with ``adjust`` the last
    coefficient may also move by first-order deformations; the combined
    problem is still linear.  This removes the dependence on which particular
    solution was picked one step earlier.
    """
    if not maps_into(h.base, M, Mp):
        raise GeometryError("base map does not send M into M'")
    if not is_member_holk(h, M, Mp):
        raise GeometryError("curve is not an infinitesimal deformation of its own order")
    j = h.order
    if operator is None:
        cap = prolongation_cap(h) if cap is None else cap
        operator = DeformationOperator(h.base, M, Mp, cap)
    cap = operator.space.cap
    c = expand_defining_along_curve(Mp.rho, h, j + 1)[j + 1]
    residual = poly_reduce(c, M.rho)
    # 2 Re(V . rho'_{Z'}) = -c
    sol, cok = operator.solve(residual.scale(Fraction(-1, 2)))
    if sol is not None:
        return Extended(sol, operator.kernel(), h.extend(sol), cap)
    if adjust and j >= 2:
        kern = operator.kernel()
        shifts = []
        for K in kern:
            moved = h.truncate(j - 1).extend(h.coeffs[j - 1] + K)
            c_moved = expand_defining_along_curve(Mp.rho, moved, j + 1)[j + 1]
            shifts.append(poly_reduce(c_moved, M.rho) - residual)
        cols = shifts + [img.scale(2) for img in operator.images]
        coef = real_combination(cols, -residual)
        if coef is not None:
            nk = len(kern)
            Vj = h.coeffs[j - 1]
            for a, K in zip(coef[:nk], kern):
                if a:
                    Vj = Vj + K.scale(a)
            new = operator.section_from_columns(coef[nk:])
            curve = h.truncate(j - 1).extend(Vj).extend(new)
            return Extended(new, kern, curve, cap, adjusted=True)
    return Obstructed(residual, cok, cap)


@dataclass
class ObstructionQuadric:
    """Order-two obstruction on ``V^1 = sum v_i B_i``.

    ``forms[key]`` is a symmetric matrix ``Q`` and the obstruction coordinate
    is ``v^T Q v``; ``V^1`` extends to order two (within the cap) exactly when
    all coordinates vanish.
    """

    basis: list[VectorSection]
    cap: int
    forms: dict[tuple, list[list[QuadExt]]] = field(default_factory=dict)

    def evaluate(self, v: Sequence) -> dict[tuple, QuadExt]:
        v = [QuadExt(x) if isinstance(x, (int, Fraction)) else x for x in v]
        out = {}
        for key, Q in self.forms.items():
            acc = QuadExt(0)
            for i, row in enumerate(Q):
                if not v[i]:
                    continue
                for j, q in enumerate(row):
                    if q and v[j]:
                        acc = acc + q * v[i] * v[j]
            if acc:
                out[key] = acc
        return out

    def vanishes_at(self, v: Sequence) -> bool:
        return not self.evaluate(v)

    @property
    def is_zero(self) -> bool:
        return not self.forms

    @property
    def rank_count(self) -> int:
        """Number of independent nonzero obstruction coordinates."""
        return len(self.forms)


def obstruction_quadric(
    H: HoloMap,
    M: Hypersurface,
    Mp: Hypersurface,
    cap: int | None = None,
    basis: Sequence[VectorSection] | None = None,
) -> ObstructionQuadric:
    """Quadratic forms cutting out the ``V^1`` that extend to order two.

    ``c_2`` with ``V^2 = 0`` is a real quadratic form in the real coordinates
    of ``V^1``; its polarisation ``Q_ij`` is pushed into cokernel coordinates
    of the first-order operator, which is linear.
    """
    if basis is None:
        basis = solve_hol(H, M, Mp, cap).sections
    basis = list(basis)
    top = max((b.degree() for b in basis), default=0)
    ocap = max(default_degree_cap(H), top + H.degree()) if cap is None else max(cap, top + H.degree())
    op = DeformationOperator(H, M, Mp, ocap)

    def c2(V: VectorSection) -> MPoly:
        return expand_defining_along_curve(Mp.rho, JetCurve(H, (V,)), 2)[2]

    diag = [c2(b) for b in basis]
    r = len(basis)
    forms: dict[tuple, list[list[QuadExt]]] = {}

    def put(i, j, coords):
        for key, val in coords.items():
            Q = forms.setdefault(key, [[QuadExt(0)] * r for _ in range(r)])
            Q[i][j] = Q[i][j] + val
            if i != j:
                Q[j][i] = Q[j][i] + val

    for i in range(r):
        put(i, i, op.cokernel(diag[i]))
        for j in range(i + 1, r):
            cross = c2(basis[i] + basis[j]) - diag[i] - diag[j]
            half = {k: v * Fraction(1, 2) for k, v in op.cokernel(cross).items()}
            put(i, j, half)
    forms = {k: Q for k, Q in forms.items() if any(any(x for x in row) for row in Q)}
    return ObstructionQuadric(basis, ocap, forms)


# -- flows and trivial curves ----------------------------------------------


def lie_series_flow(X: PolyVectorField, k: int) -> JetCurve:
    """Order-``k`` jet of ``exp(tX)``: coefficients ``X^l(Z) / l!``."""
    if k < 1:
        raise ValueError("flow order must be >= 1")
    n = X.dim
    nv = 2 * n
    current = [MPoly.variable(nv, j) for j in range(n)]
    coeffs = []
    for l in range(1, k + 1):
        current = [X.derive(f) for f in current]
        coeffs.append(VectorSection(tuple(f.scale(Fraction(1, factorial(l))) for f in current)))
    return JetCurve(HoloMap.identity(n), tuple(coeffs))


def compose_jets(outer: JetCurve, inner: JetCurve, k: int) -> JetCurve:
    """Truncation at ``t^k`` of ``outer(t) o inner(t)``."""
    if outer.base.source_dim != inner.base.target_dim:
        raise GeometryError("dimension mismatch in jet composition")
    ser = inner.component_series(k)
    images = ser + [series_conj(s) for s in ser]
    nv = 2 * inner.base.source_dim
    result = [[MPoly.zero(nv) for _ in range(k + 1)] for _ in range(outer.base.target_dim)]
    for l in range(k + 1):
        coeff = outer.coefficient(l)
        for i, a in enumerate(coeff):
            if a.is_zero():
                continue
            sub = substitute_series(a, images, k - l)
            for m, term in enumerate(sub):
                result[i][l + m] = result[i][l + m] + term
    base = HoloMap(inner.base.source_dim, tuple(r[0] for r in result))
    coeffs = tuple(VectorSection(tuple(r[l] for r in result)) for l in range(1, k + 1))
    return JetCurve(base, coeffs)


def autk_sample(H: HoloMap, S: PolyVectorField | None, Sp: PolyVectorField | None, k: int) -> JetCurve:
    """``pi_k(exp(tS') o H o exp(-tS))``, a trivial deformation of order ``k``."""
    if k < 1:
        raise ValueError("order must be >= 1")
    n, m = H.source_dim, H.target_dim
    zero_n = PolyVectorField(tuple(MPoly.zero(2 * n) for _ in range(n)))
    zero_m = PolyVectorField(tuple(MPoly.zero(2 * m) for _ in range(m)))
    S = zero_n if S is None else S
    Sp = zero_m if Sp is None else Sp
    inner = lie_series_flow(-S, k)
    outer = lie_series_flow(Sp, k)
    curve = compose_jets(outer, compose_jets(JetCurve(H), inner, k), k)
    if curve.base != H:
        raise AssertionError("flow composition moved the base map")  # pragma: no cover
    return JetCurve(H, curve.coeffs)


def dangelo_jet(c, s, k: int) -> JetCurve:
    """Jet at ``theta_0`` of ``(z, sin(theta) w, cos(theta) zw, cos(theta) w^2)``.

    ``(c, s) = (cos theta_0, sin theta_0)`` must lie on the unit circle.  The
    ``l``-th derivatives of sine and cosine cycle through ``s, c, -s, -c`` and
    ``c, -s, -c, s``, so all coefficients stay in the field of ``c`` and ``s``.
    """
    c, s = to_cscalar(c), to_cscalar(s)
    if c * c + s * s != 1 or not c.is_real() or not s.is_real():
        raise GeometryError("(c, s) must be a real point on the unit circle")
    if k < 0:
        raise ValueError("order must be >= 0")
    z, w = MPoly.variable(4, 0), MPoly.variable(4, 1)
    sin_cycle = [s, c, -s, -c]
    cos_cycle = [c, -s, -c, s]
    base = HoloMap(2, (z, w.scale(s), (z * w).scale(c), (w * w).scale(c)))
    coeffs = []
    for l in range(1, k + 1):
        f = Fraction(1, factorial(l))
        sn, cs = sin_cycle[l % 4] * f, cos_cycle[l % 4] * f
        coeffs.append(VectorSection((MPoly.zero(4), w.scale(sn), (z * w).scale(cs), (w * w).scale(cs))))
    return JetCurve(base, tuple(coeffs))
