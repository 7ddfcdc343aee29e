"""Segre maps in normal coordinates and the minimality test.

In normal coordinates the complexified hypersurface is ``w = Q(z, chi, tau)``
with ``Q(z, 0, tau) = Q(0, chi, tau) = tau``.  Segre maps are defined by

    S^1(x_1) = (x_1, 0),
    S^q(x_1, ..., x_q) = (x_1, Q(x_1, conj S^{q-1}(x_2, ..., x_q))),

where ``conj`` conjugates coefficients only.  The hypersurface is minimal at
the base point exactly when some ``S^q`` has generic rank ``N = n + 1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import CScalar
from .geometry import GeometryError, HoloMap
from .linalg import rank as real_matrix_rank
from .nondegen import det
from .poly import MPoly

__all__ = [
    "NormalComplexification",
    "SegreMap",
    "MinimalityReport",
    "QAxiomError",
    "build_segre",
    "generic_rank",
    "minimality",
    "compose_with_segre",
]


class QAxiomError(GeometryError):
    """``Q(z, 0, tau) = tau`` or ``Q(0, chi, tau) = tau`` fails."""


@dataclass(frozen=True)
class NormalComplexification:
    """``Q`` over the ``2n + 1`` variables ``(z_1..z_n, chi_1..chi_n, tau)``."""

    n: int
    Q: MPoly

    def __post_init__(self):
        if self.n < 1:
            raise GeometryError("CR dimension must be >= 1")
        if self.Q.nvars != 2 * self.n + 1:
            raise GeometryError(f"Q must have {2 * self.n + 1} variables, got {self.Q.nvars}")
        tau = MPoly.variable(self.Q.nvars, 2 * self.n)
        if self._restrict(range(self.n, 2 * self.n)) != tau:
            raise QAxiomError("Q(z, 0, tau) != tau")
        if self._restrict(range(self.n)) != tau:
            raise QAxiomError("Q(0, chi, tau) != tau")

    def _restrict(self, zero_slots) -> MPoly:
        zero_slots = set(zero_slots)
        nv = self.Q.nvars
        images = [MPoly.zero(nv) if j in zero_slots else MPoly.variable(nv, j) for j in range(nv)]
        return self.Q.substitute(images)

    @property
    def N(self) -> int:
        return self.n + 1

    def involution_defect(self, degree: int) -> MPoly:
        """``Q(z, chi, conj Q(chi, z, w)) - w`` truncated at total ``degree``.

        Zero for a genuine real hypersurface; nonzero means ``Q`` is not the
        complexification of a real defining equation.
        """
        n, nv = self.n, self.Q.nvars
        v = [MPoly.variable(nv, j) for j in range(nv)]
        swapped = self.Q.conj_coeffs().substitute(v[n: 2 * n] + v[:n] + [v[2 * n]])
        composed = self.Q.substitute(v[: 2 * n] + [swapped])
        diff = composed - v[2 * n]
        return MPoly(nv, {e: c for e, c in diff.terms.items() if sum(e) <= degree})

    def satisfies_involution(self, degree: int = 8) -> bool:
        return self.involution_defect(degree).is_zero()


@dataclass(frozen=True)
class SegreMap:
    """``S^q`` as ``N`` polynomials in ``q * n`` variables (blocks ``x_1, ..., x_q``)."""

    q: int
    n: int
    components: tuple[MPoly, ...]

    @property
    def nvars(self) -> int:
        return self.q * self.n

    def jacobian(self) -> list[list[MPoly]]:
        return [[c.diff(j) for j in range(self.nvars)] for c in self.components]


def _shift(p: MPoly, nvars: int, offset: int) -> MPoly:
    return p.remap(nvars, [offset + j for j in range(p.nvars)])


def build_segre(Qc: NormalComplexification, q: int) -> SegreMap:
    """``S^q`` by the recursion; ``conj`` acts on coefficients only."""
    if q < 1:
        raise ValueError("Segre order must be >= 1")
    n = Qc.n
    nv = q * n
    xs = [MPoly.variable(nv, j) for j in range(n)]
    if q == 1:
        return SegreMap(1, n, tuple(xs) + (MPoly.zero(nv),))
    prev = build_segre(Qc, q - 1)
    tail = [_shift(c.conj_coeffs(), nv, n) for c in prev.components]
    w = Qc.Q.substitute(xs + tail)
    return SegreMap(q, n, tuple(xs) + (w,))


def _complex_rank(matrix: list[list[CScalar]]) -> int:
    """Rank over C via the real ``[[B, -C], [C, B]]`` form (twice the complex rank)."""
    rows = []
    for row in matrix:
        rows.append([x.re for x in row] + [-x.im for x in row])
    for row in matrix:
        rows.append([x.im for x in row] + [x.re for x in row])
    if not rows or not rows[0]:
        return 0
    return real_matrix_rank(rows) // 2


@dataclass
class RankResult:
    rank: int
    certified_by: str
    point: tuple[Fraction, ...] = ()


def generic_rank(S: SegreMap, seed: int = 0) -> RankResult:
    """Rank of the Jacobian over the field of rational functions.

    Evaluation at a seeded random rational point gives a lower bound; if it
    is below the maximum possible, larger minors are expanded symbolically
    until one is found to vanish identically.
    """
    jac = S.jacobian()
    rng = random.Random(seed)
    pt = tuple(Fraction(rng.randint(-97, 97), rng.randint(1, 31)) for _ in range(S.nvars))
    vals = [[e.evaluate(pt) for e in row] for row in jac]
    r = _complex_rank(vals)
    top = min(len(jac), S.nvars)
    how = "evaluation"
    while r < top:
        bigger = False
        for rows in combinations(range(len(jac)), r + 1):
            for cols in combinations(range(S.nvars), r + 1):
                m = det([[jac[i][j] for j in cols] for i in rows])
                if m:
                    bigger = True
                    break
            if bigger:
                break
        how = "symbolic minors"
        if not bigger:
            break
        r += 1
    return RankResult(r, how, pt)


@dataclass
class MinimalityReport:
    ranks: list[int]
    N: int
    bound: int
    t: int | None
    seed: int
    k0: int = 1
    involution_ok: bool = True
    certified_by: list[str] = field(default_factory=list)

    @property
    def minimal(self) -> bool:
        return self.t is not None

    @property
    def jet_order(self) -> int | None:
        """``2 t k0``, the jet order attached to the Segre order ``t``."""
        return None if self.t is None else 2 * self.t * self.k0

    def summary(self) -> str:
        if self.t is None:
            return f"not minimal up to {self.bound}"
        return f"minimal, t = {self.t}"


def minimality(Qc: NormalComplexification, bound: int, k0: int = 1, seed: int = 0) -> MinimalityReport:
    """Generic ranks of ``S^1, ..., S^bound`` and the first full-rank order."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    ranks, how = [], []
    t = None
    for q in range(1, bound + 1):
        res = generic_rank(build_segre(Qc, q), seed + q)
        ranks.append(res.rank)
        how.append(res.certified_by)
        if t is None and res.rank == Qc.N:
            t = q
    return MinimalityReport(ranks, Qc.N, bound, t, seed, k0, Qc.satisfies_involution(), how)


def compose_with_segre(H: HoloMap, S: SegreMap) -> tuple[MPoly, ...]:
    """``H o S^q`` as polynomials in the Segre variables."""
    if H.source_dim != len(S.components):
        raise GeometryError(f"map has source dimension {H.source_dim}, Segre map has {len(S.components)} components")
    images = list(S.components) + [c.conj_coeffs() for c in S.components]
    return tuple(h.substitute(images) for h in H.components)
