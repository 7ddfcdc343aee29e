"""First-order infinitesimal deformations and the trivial ones.

A holomorphic section ``X = sum X_j(Z) d/dZ'_j`` along ``H`` is an
infinitesimal deformation when ``Re(sum X_j rho'_{Z'_j}(H, conj H))`` vanishes
on ``M``.  With a degree cap ``D`` on the components this is a real linear
condition on the real and imaginary parts of the coefficients, so
``hol_{<=D}(H)`` is a kernel of an exact matrix over ``Q(sqrt d)``.

For homogeneous maps between spheres the cap ``D = 2 deg H`` is complete: the
circle action ``Z -> e^{i theta} Z`` splits the condition by frequency and a
component of degree ``k`` pairs with frequency ``k - deg H``, which has no
partner once ``k > 2 deg H``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .exact import I, ONE, CScalar, QuadExt
from .geometry import (
    GeometryError,
    HoloMap,
    Hypersurface,
    PolyVectorField,
    VectorSection,
    is_tangent,
    maps_into,
    pullback,
    sphere_rho,
)
from .linalg import Eliminator
from .poly import MPoly, poly_reduce

log = logging.getLogger(__name__)

__all__ = [
    "SectionSpace",
    "DeformationOperator",
    "DeformationBasis",
    "AutDecomposition",
    "RigidityVerdict",
    "sphere_hol_generators",
    "solve_hol",
    "graded_hol_dimension",
    "is_infinitesimal_deformation",
    "default_degree_cap",
    "complete_cap",
    "pushforward_field",
    "restrict_field",
    "compute_aut",
    "hol_generators",
    "rigidity_verdict",
    "real_rank",
    "real_combination",
]


# -- coordinates -------------------------------------------------------------


def _holo_monomials(n: int, cap: int) -> list[tuple[int, ...]]:
    out = []
    for deg in range(cap + 1):
        layer = [a for a in product(range(deg + 1), repeat=n) if sum(a) == deg]
        layer.sort(reverse=True)
        out.extend(a + (0,) * n for a in layer)
    return out


class SectionSpace:
    """Real coordinates on sections ``C^n -> C^m`` of degree ``<= cap``.

    A coordinate is ``(component, exponent, part)`` with ``part`` 0 for the
    real and 1 for the imaginary part of the coefficient.
    """

    def __init__(self, n: int, m: int, cap: int):
        if cap < 0:
            raise ValueError("degree cap must be >= 0")
        self.n, self.m, self.cap = n, m, cap
        self.monomials = _holo_monomials(n, cap)
        self.unknowns = [(j, e, part) for j in range(m) for e in self.monomials for part in (0, 1)]
        self.index = {u: k for k, u in enumerate(self.unknowns)}

    def __len__(self):
        return len(self.unknowns)

    def basis_poly(self, k: int) -> tuple[int, MPoly]:
        j, e, part = self.unknowns[k]
        return j, MPoly.monomial(e, I if part else ONE)

    def section(self, vec: Sequence) -> VectorSection:
        comps = [dict() for _ in range(self.m)]
        for k, x in enumerate(vec):
            if not x:
                continue
            j, e, part = self.unknowns[k]
            c = CScalar(0, x) if part else CScalar(x)
            comps[j][e] = comps[j][e] + c if e in comps[j] else c
        return VectorSection(tuple(MPoly(2 * self.n, c) for c in comps))

    def vector(self, sec: VectorSection) -> list[QuadExt]:
        if len(sec) != self.m:
            raise GeometryError(f"section has {len(sec)} components, expected {self.m}")
        vec = [QuadExt(0)] * len(self.unknowns)
        for j, comp in enumerate(sec):
            for e, c in comp.terms.items():
                for part, val in ((0, c.re), (1, c.im)):
                    if val:
                        k = self.index.get((j, e, part))
                        if k is None:
                            raise GeometryError(f"monomial {e} outside the section space (cap {self.cap})")
                        vec[k] = val
        return vec


def _poly_rows(p: MPoly) -> dict[tuple, QuadExt]:
    out = {}
    for e, c in p.terms.items():
        if c.re:
            out[(e, 0)] = c.re
        if c.im:
            out[(e, 1)] = c.im
    return out


# -- the first-order operator -------------------------------------------------


def _gradient_along(H: HoloMap, Mp: Hypersurface) -> list[MPoly]:
    return [pullback(Mp.rho.diff(j), H) for j in range(Mp.dim)]


class DeformationOperator:
    """``X -> NF(Re(sum X_j rho'_{Z'_j}(H, conj H)))`` on sections of degree ``<= cap``.

    Rows are labelled by ``(exponent, part)`` of the normal form.  The
    elimination is done once; :meth:`solve` then handles any number of
    right-hand sides and reports cokernel coordinates when a right-hand side
    is out of range.
    """

    def __init__(self, H: HoloMap, M: Hypersurface, Mp: Hypersurface, cap: int,
                 unknowns: Sequence[int] | None = None):
        if H.source_dim != M.dim or H.target_dim != Mp.dim:
            raise GeometryError("dimension mismatch between map and hypersurfaces")
        self.H, self.M, self.Mp = H, M, Mp
        self.space = SectionSpace(M.dim, Mp.dim, cap)
        self.grad = _gradient_along(H, Mp)
        cols = list(range(len(self.space))) if unknowns is None else list(unknowns)
        self.columns = cols
        self.row_keys: dict[tuple, int] = {}
        self.images: list[MPoly] = []
        rows: list[dict[int, QuadExt]] = []
        for c, k in enumerate(cols):
            j, mono = self.space.basis_poly(k)
            img = poly_reduce((mono * self.grad[j]).real_part(), M.rho)
            self.images.append(img)
            for key, val in _poly_rows(img).items():
                r = self.row_keys.get(key)
                if r is None:
                    r = self.row_keys[key] = len(rows)
                    rows.append({})
                rows[r][c] = val
        self.elim = Eliminator(rows, len(cols))
        self._labels = {r: key for key, r in self.row_keys.items()}

    @property
    def rank(self) -> int:
        return self.elim.rank

    def apply(self, sec: VectorSection) -> MPoly:
        expr = MPoly.zero(2 * self.M.dim)
        for x, g in zip(sec, self.grad):
            if x:
                expr = expr + x * g
        return poly_reduce(expr.real_part(), self.M.rho)

    def _full(self, vec: Sequence) -> list[QuadExt]:
        full = [QuadExt(0)] * len(self.space)
        for c, k in enumerate(self.columns):
            full[k] = vec[c]
        return full

    def section_from_columns(self, vec: Sequence) -> VectorSection:
        return self.space.section(self._full(vec))

    def kernel(self) -> list[VectorSection]:
        return [self.space.section(self._full(v)) for v in self.elim.kernel_basis()]

    def kernel_vectors(self) -> list[list[QuadExt]]:
        return [self._full(v) for v in self.elim.kernel_basis()]

    def cokernel(self, rhs: MPoly) -> dict[tuple, QuadExt]:
        """Coordinates of ``NF(rhs)`` modulo the image; empty iff solvable."""
        return self.solve(rhs)[1]

    def solve(self, rhs: MPoly) -> tuple[VectorSection | None, dict[tuple, QuadExt]]:
        """A section ``X`` with ``apply(X) == NF(rhs)``, or ``None`` plus the residual.

        Residual keys are the labels of the non-pivot rows together with
        normal-form monomials that never occur in the image.
        """
        target = _poly_rows(poly_reduce(rhs, self.M.rho))
        b = [QuadExt(0)] * self.elim.nrows
        extra = {}
        for key, val in target.items():
            r = self.row_keys.get(key)
            if r is None:
                extra[("outside",) + key] = val
            else:
                b[r] = val
        res = self.elim.solve(b)
        residual = {("row", self._labels[r]): v
                    for r, v in zip(self.elim.residual_rows(), res.residual) if v}
        residual.update(extra)
        if residual:
            return None, residual
        return self.space.section(self._full(res.particular)), {}


def real_combination(columns: Sequence[MPoly], rhs: MPoly) -> list[QuadExt] | None:
    """Real ``a`` with ``sum a_k columns_k == rhs`` coefficientwise, or ``None``."""
    keys: dict[tuple, int] = {}
    rows: list[dict[int, QuadExt]] = []
    for c, p in enumerate(columns):
        for key, val in _poly_rows(p).items():
            r = keys.get(key)
            if r is None:
                r = keys[key] = len(rows)
                rows.append({})
            rows[r][c] = val
    target = _poly_rows(rhs)
    if any(key not in keys for key in target):
        return None
    b = [QuadExt(0)] * len(rows)
    for key, val in target.items():
        b[keys[key]] = val
    res = Eliminator(rows, len(columns)).solve(b)
    return res.particular


# -- hol(H) ------------------------------------------------------------------


@dataclass
class DeformationBasis:
    """Real basis of ``hol_{<=cap}(H)``."""

    sections: list[VectorSection]
    cap: int
    exact: bool
    vectors: list[list[QuadExt]] = field(default_factory=list, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.sections)

    def __len__(self):
        return len(self.sections)


def complete_cap(H: HoloMap) -> int:
    return 2 * H.degree()


def default_degree_cap(H: HoloMap) -> int:
    """``max(deg H + 2, 2 deg H)``; the second term is needed for completeness."""
    return max(H.degree() + 2, complete_cap(H))


def _certified(H: HoloMap, M: Hypersurface, Mp: Hypersurface, cap: int) -> bool:
    return M.is_sphere() and Mp.is_sphere() and H.is_homogeneous() and cap >= complete_cap(H)


def solve_hol(H: HoloMap, M: Hypersurface, Mp: Hypersurface, cap: int | None = None) -> DeformationBasis:
    """Exact real basis of infinitesimal deformations of degree ``<= cap``."""
    if not maps_into(H, M, Mp):
        raise GeometryError("map does not send M into M'")
    cap = default_degree_cap(H) if cap is None else cap
    if cap < 1:
        raise ValueError("degree cap must be >= 1")
    op = DeformationOperator(H, M, Mp, cap)
    vecs = op.kernel_vectors()
    exact = _certified(H, M, Mp, cap)
    log.debug("hol: %d unknowns, rank %d, dim %d", len(op.space), op.rank, len(vecs))
    return DeformationBasis([op.space.section(v) for v in vecs], cap, exact, vecs)


def graded_hol_dimension(H: HoloMap, M: Hypersurface, Mp: Hypersurface, cap: int) -> int:
    """Sum of kernel dimensions of the blocks ``{X^k, X^{2h-k}}``.

    Only meaningful for homogeneous maps between spheres, where the normal
    form preserves the circle grading and the blocks decouple.
    """
    if not (M.is_sphere() and Mp.is_sphere() and H.is_homogeneous()):
        raise GeometryError("graded solve needs a homogeneous map between spheres")
    h = H.degree()
    space = SectionSpace(M.dim, Mp.dim, cap)
    by_deg: dict[int, list[int]] = {}
    for k, (_, e, _) in enumerate(space.unknowns):
        by_deg.setdefault(sum(e), []).append(k)
    total = 0
    done = set()
    for k in sorted(by_deg):
        if k in done:
            continue
        block = {k, 2 * h - k} & set(by_deg)
        done |= block
        cols = [u for d in sorted(block) for u in by_deg[d]]
        op = DeformationOperator(H, M, Mp, cap, cols)
        total += len(cols) - op.rank
    return total


def is_infinitesimal_deformation(V: VectorSection, H: HoloMap, M: Hypersurface, Mp: Hypersurface) -> bool:
    expr = MPoly.zero(2 * M.dim)
    for x, g in zip(V, _gradient_along(H, Mp)):
        expr = expr + x * g
    return poly_reduce(expr.real_part(), M.rho).is_zero()


# -- automorphism algebras -----------------------------------------------------


def sphere_hol_generators(n: int) -> list[PolyVectorField]:
    """Real basis ``(A Z + b - <Z, b> Z) d/dZ`` of the sphere's automorphism algebra.

    ``A`` runs over ``i E_jj``, then for ``j < k`` over ``E_jk - E_kj`` and
    ``i (E_jk + E_kj)``; ``b`` runs over ``e_j`` and ``i e_j``.
    """
    if n < 1:
        raise GeometryError("sphere dimension must be >= 1")
    nv = 2 * n
    z = [MPoly.variable(nv, j) for j in range(n)]
    zero = MPoly.zero(nv)
    gens = []
    for j in range(n):
        comps = [zero] * n
        comps[j] = z[j].scale(I)
        gens.append(PolyVectorField(tuple(comps), f"i E{j + 1}{j + 1}"))
    for j in range(n):
        for k in range(j + 1, n):
            comps = [zero] * n
            comps[j], comps[k] = z[k], -z[j]
            gens.append(PolyVectorField(tuple(comps), f"E{j + 1}{k + 1}-E{k + 1}{j + 1}"))
            comps = [zero] * n
            comps[j], comps[k] = z[k].scale(I), z[j].scale(I)
            gens.append(PolyVectorField(tuple(comps), f"i(E{j + 1}{k + 1}+E{k + 1}{j + 1})"))
    for j in range(n):
        for c, tag in ((CScalar(1), ""), (I, "i ")):
            # <Z, c e_j> = Z_j conj(c)
            inner = z[j].scale(c.conjugate())
            comps = [-(inner * z[l]) for l in range(n)]
            comps[j] = comps[j] + MPoly.constant(nv, c)
            gens.append(PolyVectorField(tuple(comps), f"{tag}e{j + 1}"))
    S = Hypersurface(n, sphere_rho(n))
    for g in gens:
        if not is_tangent(g, S):
            raise AssertionError(f"generator {g.label} is not tangent")  # pragma: no cover
    return gens


def hol_generators(M: Hypersurface, cap: int | None = None) -> tuple[list[PolyVectorField], bool]:
    """Generators of ``hol(M)`` and whether the list is known to be complete.

    Spheres use the closed form.  Otherwise the identity map is deformed and
    the result is a certified subspace of polynomial fields of degree
    ``<= cap``.
    """
    if M.is_sphere():
        return sphere_hol_generators(M.dim), True
    ident = HoloMap.identity(M.dim)
    basis = solve_hol(ident, M, M, cap)
    return [PolyVectorField(s.components, f"X{k + 1}") for k, s in enumerate(basis.sections)], False


def pushforward_field(S: PolyVectorField, H: HoloMap) -> VectorSection:
    """``H_* S``: components ``sum_j S_j dH_i/dZ_j``."""
    return VectorSection(tuple(S.derive(h) for h in H.components))


def restrict_field(Sp: PolyVectorField, H: HoloMap) -> VectorSection:
    """``S' o H``."""
    imgs = H.complexified_images()
    return VectorSection(tuple(c.substitute(imgs) for c in Sp.components))


def _stack(sections: Sequence[VectorSection]) -> tuple[SectionSpace, list[list[QuadExt]]]:
    n = sections[0][0].nvars // 2
    m = len(sections[0])
    cap = max((s.degree() for s in sections), default=0)
    space = SectionSpace(n, m, max(cap, 0))
    return space, [space.vector(s) for s in sections]


def _columns_eliminator(vectors: Sequence[Sequence[QuadExt]]) -> Eliminator:
    """Eliminator whose columns are the given vectors."""
    nrows = len(vectors[0]) if vectors else 0
    rows = [dict() for _ in range(nrows)]
    for c, v in enumerate(vectors):
        for r, x in enumerate(v):
            if x:
                rows[r][c] = x
    return Eliminator(rows, len(vectors))


def real_rank(sections: Sequence[VectorSection]) -> int:
    if not sections:
        return 0
    _, vecs = _stack(sections)
    return _columns_eliminator(vecs).rank


@dataclass
class AutDecomposition:
    """``aut(H) = H_*(hol M) + hol(M')|_H`` and the infinitesimal stabilizer."""

    source_part: list[VectorSection]
    target_part: list[VectorSection]
    aut_basis: list[VectorSection]
    stabilizer: list[tuple[PolyVectorField, PolyVectorField]]
    source_rank: int
    target_rank: int

    @property
    def aut_dim(self) -> int:
        return len(self.aut_basis)

    @property
    def stabilizer_dim(self) -> int:
        return len(self.stabilizer)


def _combine_fields(fields: Sequence[PolyVectorField], coeffs: Sequence[QuadExt], nvars: int, dim: int):
    comps = [MPoly.zero(nvars) for _ in range(dim)]
    for f, c in zip(fields, coeffs):
        if c:
            comps = [a + b.scale(c) for a, b in zip(comps, f.components)]
    return PolyVectorField(tuple(comps), "stabilizer")


def compute_aut(
    H: HoloMap,
    M: Hypersurface,
    Mp: Hypersurface,
    gens_M: Sequence[PolyVectorField] | None = None,
    gens_Mp: Sequence[PolyVectorField] | None = None,
) -> AutDecomposition:
    """Trivial deformations and the stabilizer from real generator lists.

    The stabilizer is the kernel of ``(a, b) -> sum a_k H_* S_k + sum b_l S'_l o H``
    on real coefficient vectors, assuming the generator lists are linearly
    independent (as the closed-form sphere lists and solver output are).
    """
    if gens_M is None:
        gens_M = hol_generators(M)[0]
    if gens_Mp is None:
        gens_Mp = hol_generators(Mp)[0]
    for g in gens_M:
        if not is_tangent(g, M):
            raise GeometryError(f"source generator {g.label} is not tangent to M")
    for g in gens_Mp:
        if not is_tangent(g, Mp):
            raise GeometryError(f"target generator {g.label} is not tangent to M'")
    src = [pushforward_field(S, H) for S in gens_M]
    tgt = [restrict_field(S, H) for S in gens_Mp]
    allsec = src + tgt
    if not allsec:
        return AutDecomposition([], [], [], [], 0, 0)
    _, vecs = _stack(allsec)
    elim = _columns_eliminator(vecs)
    aut = [allsec[c] for c in elim.pivot_columns]
    stab = []
    ns = len(src)
    for k in elim.kernel_basis():
        S = _combine_fields(gens_M, k[:ns], 2 * M.dim, M.dim)
        Sp = _combine_fields(gens_Mp, k[ns:], 2 * Mp.dim, Mp.dim)
        stab.append((S, Sp))
    src_rank = _columns_eliminator(vecs[:ns]).rank if ns else 0
    tgt_rank = _columns_eliminator(vecs[ns:]).rank if tgt else 0
    return AutDecomposition(src, tgt, aut, stab, src_rank, tgt_rank)


# -- verdict ------------------------------------------------------------------

RIGID = "infinitesimally rigid, hence locally rigid (sufficient condition)"


@dataclass
class RigidityVerdict:
    verdict: str
    rigid: bool
    hol: DeformationBasis
    aut: AutDecomposition
    complement: list[VectorSection]
    aut_in_hol: bool
    hol_M_dim: int
    hol_Mp_dim: int
    hol_M_complete: bool
    hol_Mp_complete: bool

    @property
    def hol_dim(self) -> int:
        return self.hol.dimension

    @property
    def aut_dim(self) -> int:
        return self.aut.aut_dim

    @property
    def stabilizer_dim(self) -> int:
        return self.aut.stabilizer_dim

    @property
    def complement_dim(self) -> int:
        return len(self.complement)

    @property
    def exact(self) -> bool:
        return self.hol.exact


def _complement(aut: Sequence[VectorSection], hol: Sequence[VectorSection]) -> tuple[list[VectorSection], bool]:
    """Extend ``aut`` by elements of ``hol``; also report ``span(aut) <= span(hol)``."""
    if not hol:
        return [], not aut
    space, vecs = _stack(list(aut) + list(hol))
    na = len(aut)
    both = _columns_eliminator(vecs)
    extra = [hol[c - na] for c in both.pivot_columns if c >= na]
    hol_rank = _columns_eliminator(vecs[na:]).rank
    return extra, both.rank == hol_rank


def rigidity_verdict(H: HoloMap, M: Hypersurface, Mp: Hypersurface, cap: int | None = None,
                     source_cap: int | None = None) -> RigidityVerdict:
    """Compare ``hol(H)`` with ``aut(H)``.

    Equality is a sufficient condition for local rigidity.  A positive
    difference is reported as inconclusive together with a basis of a
    complement of ``aut(H)`` inside ``hol(H)``.
    """
    hol = solve_hol(H, M, Mp, cap)
    gM, cM = hol_generators(M, source_cap if source_cap is not None else hol.cap)
    gMp, cMp = hol_generators(Mp, hol.cap)
    aut = compute_aut(H, M, Mp, gM, gMp)
    comp, inside = _complement(aut.aut_basis, hol.sections)
    inside = inside and all(is_infinitesimal_deformation(s, H, M, Mp) for s in aut.aut_basis)
    m = len(comp)
    rigid = m == 0 and inside
    if rigid:
        verdict = RIGID
    elif not inside:
        verdict = "inconsistent: aut(H) is not contained in the computed hol(H); raise the degree cap"
    else:
        verdict = f"inconclusive: nontrivial infinitesimal deformations of dimension {m}"
    if not hol.exact:
        verdict += f" [hol truncated at degree {hol.cap}]"
    return RigidityVerdict(verdict, rigid, hol, aut, comp, inside, len(gM), len(gMp), cM, cMp)
