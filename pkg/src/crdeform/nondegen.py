"""Finite nondegeneracy of maps into a real hypersurface.

For a sequence ``iota`` of ``N'`` multiindices the matrix with rows
``L^{iota_m} rho'_{Z'}(H(Z), conj(H)(zeta))`` is formed on the
complexification, where ``L_1..L_n`` are the CR fields from
:func:`crdeform.geometry.cr_basis` acting on ``zeta``.  The order ``k0`` is
the least ``max |iota_m|`` for which some such determinant is nonzero.

Three flavours are provided.  :func:`k0_at_point` evaluates at one point,
:func:`k0_generic` asks for a determinant outside the ideal ``(rho)`` (the
order off a proper subvariety), and :func:`k0_uniform` computes the maximum
of the pointwise order over all of ``M``.  The last one needs an upper bound
valid at every point, which is certified by writing ``1`` as a polynomial
combination of the determinants, their conjugates and ``rho``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

from .exact import I, CScalar, to_cscalar
from .geometry import (
    GeometryError,
    HoloMap,
    Hypersurface,
    cr_basis,
    maps_into,
    pullback,
    rational_points,
)
from .linalg import Eliminator
from .poly import MPoly, poly_reduce

__all__ = [
    "NondegCertificate",
    "MultiindexEnumerator",
    "nondeg_determinant",
    "k0_at_point",
    "k0_generic",
    "k0_uniform",
    "UniformK0",
    "unit_certificate",
    "default_nondeg_cap",
    "det",
]

Multiindex = tuple[int, ...]


@dataclass(frozen=True)
class NondegCertificate:
    """Outcome of a nondegeneracy search.

    ``order is None`` means every determinant up to ``cap`` vanished.
    ``point is None`` marks a generic (ideal non-membership) certificate, in
    which case ``determinant`` is the reduced determinant polynomial.
    """

    order: int | None
    cap: int
    iota: tuple[Multiindex, ...] | None = None
    ell: tuple[int, ...] | None = None
    point: tuple[CScalar, ...] | None = None
    determinant: MPoly | CScalar | None = None

    @property
    def degenerate(self) -> bool:
        return self.order is None


class MultiindexEnumerator:
    """Deterministic enumeration of pairs ``(iota, ell)`` in ``J_k``.

    Row order only changes the determinant by a sign and repeated rows give
    zero, so :meth:`candidates` lists strictly increasing sequences of
    distinct multiindices; :meth:`pairs` lists all of ``J_k``.
    """

    def __init__(self, n: int, rows: int, codim: int = 1):
        self.n = n
        self.rows = rows
        self.codim = codim

    def multiindices(self, k: int) -> list[Multiindex]:
        return sorted(a for a in product(range(k + 1), repeat=self.n) if sum(a) <= k)

    def _ells(self) -> Iterator[tuple[int, ...]]:
        return product(range(1, self.codim + 1), repeat=self.rows)

    def candidates(self, k: int) -> Iterator[tuple[tuple[Multiindex, ...], tuple[int, ...]]]:
        for iota in combinations(self.multiindices(k), self.rows):
            if max(sum(a) for a in iota) == k:
                for ell in self._ells():
                    yield iota, ell

    def pairs(self, k: int) -> Iterator[tuple[tuple[Multiindex, ...], tuple[int, ...]]]:
        for iota in product(self.multiindices(k), repeat=self.rows):
            if max(sum(a) for a in iota) == k:
                for ell in self._ells():
                    yield iota, ell


def default_nondeg_cap(H: HoloMap) -> int:
    return H.degree() + 2


def det(matrix: Sequence[Sequence]):
    """Determinant by cofactor expansion along the first row (small sizes)."""
    n = len(matrix)
    if n == 0:
        return 1

    @lru_cache(maxsize=None)
    def minor(row: int, cols: tuple[int, ...]):
        if row == n - 1:
            return matrix[row][cols[0]]
        total = None
        for pos, c in enumerate(cols):
            entry = matrix[row][c]
            if not entry:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1 :])
            if not sub:
                continue
            term = entry * sub
            if pos % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            return matrix[row][cols[0]] * 0
        return total

    return minor(0, tuple(range(n)))


class _Rows:
    """Memoized rows ``L^iota rho'_{Z'_i}(H, conj H)`` reduced mod rho."""

    def __init__(self, H: HoloMap, M: Hypersurface, Mp: Hypersurface):
        self.rho = M.rho
        self.fields = cr_basis(M)
        npr = Mp.dim
        self.base = [poly_reduce(pullback(Mp.rho.diff(i), H), M.rho) for i in range(npr)]
        self.cache: dict[Multiindex, list[MPoly]] = {}

    def row(self, iota: Multiindex) -> list[MPoly]:
        hit = self.cache.get(iota)
        if hit is not None:
            return hit
        nz = [j for j, a in enumerate(iota) if a]
        if not nz:
            out = self.base
        else:
            j = nz[0]
            prev = self.row(iota[:j] + (iota[j] - 1,) + iota[j + 1 :])
            out = [poly_reduce(self.fields[j].apply(g), self.rho) for g in prev]
        self.cache[iota] = out
        return out


def _check(H: HoloMap, M: Hypersurface, Mp: Hypersurface):
    if H.source_dim != M.dim or H.target_dim != Mp.dim:
        raise GeometryError("dimension mismatch between map and hypersurfaces")


def nondeg_determinant(
    H: HoloMap,
    M: Hypersurface,
    Mp: Hypersurface,
    iota: Sequence[Multiindex],
    ell: Sequence[int] | None = None,
    max_order: int = 12,
) -> MPoly:
    """Determinant ``s^{iota,ell}_H`` as a polynomial in ``(Z, zeta)``.

    Rows are built from ``rho'_{Z'_i}(H(Z), conj(H)(zeta))`` with the CR
    fields applied as ``L_1^{i_1} o ... o L_n^{i_n}``.  The result is not
    reduced modulo ``rho``.
    """
    _check(H, M, Mp)
    iota = tuple(tuple(a) for a in iota)
    if len(iota) != Mp.dim:
        raise GeometryError(f"need {Mp.dim} multiindices, got {len(iota)}")
    if ell is not None and any(e != 1 for e in ell):
        raise GeometryError("hypersurface target: every ell entry must be 1")
    if any(len(a) != M.dim - 1 for a in iota):
        raise GeometryError(f"multiindices must have length {M.dim - 1}")
    if max(sum(a) for a in iota) > max_order:
        raise GeometryError(f"|iota| exceeds the configured cap {max_order}")
    fields = cr_basis(M)
    base = [pullback(Mp.rho.diff(i), H) for i in range(Mp.dim)]
    rows = []
    for a in iota:
        row = base
        for j in range(len(a) - 1, -1, -1):
            for _ in range(a[j]):
                row = [fields[j].apply(g) for g in row]
        rows.append(row)
    return det(rows)


def k0_at_point(
    H: HoloMap, M: Hypersurface, Mp: Hypersurface, p: Sequence, cap: int | None = None
) -> NondegCertificate:
    """Smallest ``k <= cap`` with a determinant nonzero at ``(p, conj p)``."""
    _check(H, M, Mp)
    p = tuple(to_cscalar(c) for c in p)
    if not M.contains(p):
        raise GeometryError("point is not on the source hypersurface")
    cap = default_nondeg_cap(H) if cap is None else cap
    rows = _Rows(H, M, Mp)
    z = list(p) + [c.conjugate() for c in p]
    values: dict[Multiindex, list[CScalar]] = {}
    enum = MultiindexEnumerator(M.dim - 1, Mp.dim)
    for k in range(cap + 1):
        for iota, ell in enum.candidates(k):
            mat = []
            for a in iota:
                if a not in values:
                    values[a] = [g.evaluate(z) for g in rows.row(a)]
                mat.append(values[a])
            val = det(mat)
            if val:
                return NondegCertificate(k, cap, iota, ell, p, to_cscalar(val))
    return NondegCertificate(None, cap, point=p)


def k0_generic(
    H: HoloMap, M: Hypersurface, Mp: Hypersurface, cap: int | None = None
) -> NondegCertificate:
    """Smallest ``k <= cap`` with a determinant outside the ideal ``(rho)``."""
    _check(H, M, Mp)
    if not maps_into(H, M, Mp):
        raise GeometryError("map does not send M into M'")
    cap = default_nondeg_cap(H) if cap is None else cap
    rows = _Rows(H, M, Mp)
    enum = MultiindexEnumerator(M.dim - 1, Mp.dim)
    for k in range(cap + 1):
        for iota, ell in enum.candidates(k):
            d = poly_reduce(det([rows.row(a) for a in iota]), M.rho)
            if d:
                return NondegCertificate(k, cap, iota, ell, None, d)
    return NondegCertificate(None, cap)



@dataclass(frozen=True)
class UniformK0:
    """Bounds on ``k0 = max_p k0(p)``.

    ``lower`` is always justified: by the generic order, by an exact point
    where every determinant of smaller order vanishes (``witness_point``), or
    by a sign change of a real-valued determinant on a connected ``M``
    (``sign_change``).  ``upper`` is ``None`` when no unit-ideal certificate
    was found within ``max_multiplier_degree``.
    """

    lower: int | None
    upper: int | None
    generic: NondegCertificate
    lower_reason: str
    witness_point: tuple[CScalar, ...] | None = None
    sign_change: tuple[tuple[CScalar, ...], tuple[CScalar, ...]] | None = None
    multiplier_degree: int | None = None

    @property
    def order(self) -> int | None:
        """The exact value when both bounds agree."""
        if self.lower is not None and self.lower == self.upper:
            return self.lower
        return None

    @property
    def exact(self) -> bool:
        return self.order is not None


def _monomials(nvars: int, deg: int) -> list[tuple[int, ...]]:
    return [m for m in product(range(deg + 1), repeat=nvars) if sum(m) <= deg]


def unit_certificate(polys: Sequence[MPoly], rho: MPoly, degree: int) -> bool:
    """Whether ``1 = sum c_j polys_j`` modulo ``rho`` with ``deg c_j <= degree``.

    The multipliers have complex coefficients, so every unknown is split into
    a real and an imaginary part and every coefficient equation into two real
    ones.  A positive answer means the ``polys`` have no common zero on the
    complexified hypersurface, in particular none on ``M``.
    """
    nv = rho.nvars
    cols: list[MPoly] = []
    for f in polys:
        for m in _monomials(nv, degree):
            a = poly_reduce(MPoly.monomial(m) * f, rho)
            cols.append(a)
            cols.append(a.scale(I))
    keys: dict[tuple, int] = {}
    rows: dict[int, dict[int, object]] = {}
    for j, c in enumerate(cols):
        for e, v in c.terms.items():
            for part, val in ((0, v.re), (1, v.im)):
                if val:
                    r = keys.setdefault((e, part), len(keys))
                    rows.setdefault(r, {})[j] = val
    one = poly_reduce(MPoly.constant(nv, 1), rho)
    for e, v in one.terms.items():
        for part, val in ((0, v.re), (1, v.im)):
            if val:
                keys.setdefault((e, part), len(keys))
    rhs = [0] * len(keys)
    for e, v in one.terms.items():
        for part, val in ((0, v.re), (1, v.im)):
            if val:
                rhs[keys[(e, part)]] = val
    elim = Eliminator([rows.get(i, {}) for i in range(len(keys))], len(cols))
    return elim.solve(rhs).consistent


def _radially_monotone(M: Hypersurface) -> bool:
    """``rho(0) < 0`` and every other term is ``c |Z^a|^2`` with ``c > 0``.

    Then ``t -> rho(tZ)`` increases strictly, so ``M`` is a radial graph over
    the unit sphere and in particular connected.
    """
    n = M.dim
    c0 = M.rho.constant_term()
    if not c0.is_real() or c0.re.sign() >= 0:
        return False
    for e, c in M.rho.terms.items():
        if not any(e):
            continue
        if e[:n] != e[n:] or not c.is_real() or c.re.sign() <= 0:
            return False
    return True


def _real_multiple(s: MPoly, rho: MPoly) -> MPoly | None:
    lc = s.leading_term()[1].conjugate()
    for c in (CScalar(1), I, lc, lc * I):
        t = s.scale(c)
        if poly_reduce(t - t.conj(), rho).is_zero():
            return t
    return None


def _proportional(polys: list[MPoly]) -> bool:
    base = polys[0]
    e, c = base.leading_term()
    for f in polys[1:]:
        if f.scale(c) != base.scale(f.coefficient(e)):
            return False
    return True


def k0_uniform(
    H: HoloMap,
    M: Hypersurface,
    Mp: Hypersurface,
    cap: int | None = None,
    max_multiplier_degree: int = 8,
    sample_points: int = 12,
) -> UniformK0:
    """Certified bounds on ``max_{p in M} k0(p)``.

    The pointwise order exceeds the generic one exactly on the common zero
    set of the lower-order determinants, so the maximum over ``M`` can be
    strictly larger than :func:`k0_generic`.  For each order ``K`` from the
    generic one upwards, the determinants of order ``<= K`` and their
    conjugates are tested for generating the unit ideal modulo ``rho``
    (degree-bounded multipliers, pure linear algebra).  The first success
    gives the upper bound.  Lower bounds come from exact sample points and
    from sign changes of a single real-valued determinant.
    """
    gen = k0_generic(H, M, Mp, cap)
    if gen.order is None:
        return UniformK0(None, None, gen, "degenerate up to cap")
    cap = gen.cap
    rows = _Rows(H, M, Mp)
    enum = MultiindexEnumerator(M.dim - 1, Mp.dim)
    by_order: dict[int, list[MPoly]] = {}
    for k in range(cap + 1):
        found = []
        for iota, _ in enum.candidates(k):
            d = poly_reduce(det([rows.row(a) for a in iota]), M.rho)
            if d:
                found.append(d)
        by_order[k] = found

    upper = mdeg = None
    pool: list[MPoly] = []
    for k in range(cap + 1):
        pool = pool + by_order[k] + [poly_reduce(f.conj(), M.rho) for f in by_order[k]]
        if k < gen.order or not pool:
            continue
        for b in range(max_multiplier_degree + 1):
            if unit_certificate(pool, M.rho, b):
                upper, mdeg = k, b
                break
        if upper is not None:
            break

    lower, reason = gen.order, "generic order"
    witness = sign = None
    try:
        pts = rational_points(M, sample_points)
    except GeometryError:
        pts = []
    stop = upper if upper is not None else cap
    for p in pts:
        c = k0_at_point(H, M, Mp, p, stop)
        if c.order is not None and c.order > lower:
            lower, reason, witness = c.order, "exact point", p
    if _radially_monotone(M):
        for k in range(lower + 1, stop + 1):
            below = [f for j in range(k) for f in by_order[j]]
            if not below or not _proportional(below):
                break
            s = _real_multiple(below[0], M.rho)
            if s is None:
                break
            signs: dict[int, tuple] = {}
            for p in pts:
                v = s.evaluate(list(p) + [x.conjugate() for x in p]).re.sign()
                if v:
                    signs.setdefault(v, p)
            if len(signs) < 2:
                break
            lower, reason, witness = k, "sign change", None
            sign = (signs[1], signs[-1])
    return UniformK0(lower, upper, gen, reason, witness, sign, mdeg)
