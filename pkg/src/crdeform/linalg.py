"""Exact sparse linear algebra over Q(sqrt d).

Rows are scaled to integer entries in Z[sqrt d] and eliminated fraction-free:
a target row is replaced by ``p*row - a*pivot_row`` and then divided by the
integer content of its entries.  Every row operation is logged, so a
right-hand side can be pushed through the same elimination later; that is how
particular solutions and cokernel coordinates are produced for many
right-hand sides without refactoring the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Hashable, Mapping, Sequence

from .exact import QuadExt, RadicandMismatch, to_quad

__all__ = [
    "LinearSystem",
    "Eliminator",
    "SolveResult",
    "InconsistentSystem",
    "kernel",
    "solve",
    "rank",
]


class InconsistentSystem(ValueError):
    """``A x = b`` has no solution; ``residual`` holds the cokernel coordinates of ``b``."""

    def __init__(self, residual):
        super().__init__("linear system is inconsistent")
        self.residual = residual


@dataclass(frozen=True)
class LinearSystem:
    """Dense system ``A x = b`` with optional column labels."""

    matrix: tuple[tuple[QuadExt, ...], ...]
    rhs: tuple[QuadExt, ...] | None = None
    labels: tuple[Hashable, ...] | None = None

    def __post_init__(self):
        m = tuple(tuple(to_quad(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        ncols = len(m[0]) if m else (len(self.labels) if self.labels else 0)
        if any(len(row) != ncols for row in m):
            raise ValueError("ragged matrix")
        if self.rhs is not None:
            rhs = tuple(to_quad(x) for x in self.rhs)
            if len(rhs) != len(m):
                raise ValueError("right-hand side length does not match row count")
            object.__setattr__(self, "rhs", rhs)
        if self.labels is not None and len(self.labels) != ncols:
            raise ValueError("label count does not match column count")

    @property
    def ncols(self) -> int:
        if self.matrix:
            return len(self.matrix[0])
        return len(self.labels) if self.labels else 0

    def sparse_rows(self) -> list[dict[int, QuadExt]]:
        return [{j: x for j, x in enumerate(row) if x} for row in self.matrix]


@dataclass
class SolveResult:
    particular: list[QuadExt] | None
    kernel: list[list[QuadExt]]
    residual: list[QuadExt] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def _zmul(x, y, d):
    return (x[0] * y[0] + d * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


class Eliminator:
    """Fraction-free Gauss-Jordan elimination of a sparse matrix.

    ``rows`` are mappings ``column -> value``.  After construction the pivot
    rows are in reduced echelon form (pivots not normalised) and the other
    rows are zero.
    """

    def __init__(self, rows: Sequence[Mapping[int, object]], ncols: int):
        self.ncols = ncols
        self.nrows = len(rows)
        d = 0
        qrows: list[dict[int, QuadExt]] = []
        for row in rows:
            qr = {}
            for j, x in row.items():
                if not 0 <= j < ncols:
                    raise IndexError(f"column {j} out of range")
                q = to_quad(x)
                if q:
                    qr[j] = q
                    if q.d:
                        if d and q.d != d:
                            raise RadicandMismatch(f"sqrt({d}) and sqrt({q.d}) in one matrix")
                        d = q.d
            qrows.append(qr)
        self.d = d
        self._log: list[tuple] = []
        self._rows = [self._integral(i, qr) for i, qr in enumerate(qrows)]
        self._eliminate()

    # -- setup -------------------------------------------------------------
    def _integral(self, i: int, qr: dict[int, QuadExt]) -> dict[int, tuple[int, int]]:
        if not qr:
            return {}
        lcm = 1
        for q in qr.values():
            lcm = lcm * q.den // gcd(lcm, q.den)
        row = {j: (q.a * (lcm // q.den), q.b * (lcm // q.den)) for j, q in qr.items()}
        g = 0
        for a, b in row.values():
            g = gcd(g, a, b)
        if g > 1:
            row = {j: (a // g, b // g) for j, (a, b) in row.items()}
        if lcm != 1 or g != 1:
            self._log.append(("s", i, lcm, g))
        return row

    def _combine(self, r: int, s: int, p, a):
        """row_r <- p*row_r - a*row_s, then strip the integer content."""
        d = self.d
        rows = self._rows
        target, src = rows[r], rows[s]
        new = {}
        for j, x in target.items():
            new[j] = _zmul(p, x, d)
        for j, y in src.items():
            ay = _zmul(a, y, d)
            x = new.get(j)
            if x is None:
                new[j] = (-ay[0], -ay[1])
            else:
                new[j] = (x[0] - ay[0], x[1] - ay[1])
        new = {j: v for j, v in new.items() if v[0] or v[1]}
        g = 0
        for x0, x1 in new.values():
            g = gcd(g, x0, x1)
            if g == 1:
                break
        if g > 1:
            new = {j: (x0 // g, x1 // g) for j, (x0, x1) in new.items()}
        rows[r] = new
        self._log.append(("c", r, s, p, a, max(g, 1)))

    def _eliminate(self):
        rows = self._rows
        remaining = [i for i in range(self.nrows) if rows[i]]
        remaining_set = set(remaining)
        pivots: list[tuple[int, int]] = []
        for col in range(self.ncols):
            cands = [r for r in remaining if col in rows[r]]
            if not cands:
                continue
            pr = min(cands, key=lambda r: (rows[r][col][1] != 0, len(rows[r]), r))
            self._rationalize(pr, col)
            for r in cands:
                if r != pr:
                    self._combine(r, pr, *self._multipliers(rows[pr][col], rows[r][col]))
            pivots.append((col, pr))
            remaining_set.discard(pr)
            remaining = [r for r in remaining if r in remaining_set and rows[r]]
        for k in range(len(pivots) - 1, -1, -1):
            col, pr = pivots[k]
            for _, r in pivots[:k]:
                if col in rows[r]:
                    self._combine(r, pr, *self._multipliers(rows[pr][col], rows[r][col]))
        self.pivots = pivots
        self._pivot_rows = {r for _, r in pivots}

    def _rationalize(self, r: int, col: int):
        """Scale row ``r`` by the conjugate of its pivot so the pivot is in Z.

        Integer content stripping cannot remove algebraic common factors
        such as ``1 + sqrt d``; with rational pivots they never build up.
        """
        a, b = self._rows[r][col]
        if b:
            self._combine(r, r, (a, -b), (0, 0))

    @staticmethod
    def _multipliers(p, a):
        g = gcd(p[0], p[1], a[0], a[1])
        if g > 1:
            p = (p[0] // g, p[1] // g)
            a = (a[0] // g, a[1] // g)
        return p, a

    # -- results -----------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def pivot_columns(self) -> list[int]:
        return sorted(c for c, _ in self.pivots)

    @property
    def free_columns(self) -> list[int]:
        piv = {c for c, _ in self.pivots}
        return [j for j in range(self.ncols) if j not in piv]

    def _q(self, x) -> QuadExt:
        return QuadExt._raw(x[0], x[1], 1, self.d)

    def kernel_basis(self) -> list[list[QuadExt]]:
        """Basis of the null space, each vector scaled so its first nonzero
        entry is 1."""
        rows = self._rows
        basis = []
        for f in self.free_columns:
            vec = {f: QuadExt(1)}
            for c, r in self.pivots:
                x = rows[r].get(f)
                if x is not None:
                    vec[c] = -self._q(x) / self._q(rows[r][c])
            lead = vec[min(vec)]
            dense = [QuadExt(0)] * self.ncols
            for j, v in vec.items():
                dense[j] = v / lead
            basis.append(dense)
        return basis

    def transform(self, rhs: Sequence) -> list[QuadExt]:
        """Push a right-hand side through the logged row operations."""
        if len(rhs) != self.nrows:
            raise ValueError(f"right-hand side has {len(rhs)} entries, expected {self.nrows}")
        b = [to_quad(x) for x in rhs]
        d = self.d
        for op in self._log:
            if op[0] == "s":
                _, i, num, den = op
                if b[i]:
                    b[i] = b[i] * Fraction(num, den)
            else:
                _, r, s, p, a, g = op
                br, bs = b[r], b[s]
                if not br and not bs:
                    continue
                val = QuadExt._raw(p[0], p[1], 1, d) * br
                if bs:
                    val = val - QuadExt._raw(a[0], a[1], 1, d) * bs
                if g != 1:
                    val = val * Fraction(1, g)
                b[r] = val
        return b

    def residual_rows(self) -> list[int]:
        """Rows that carry the cokernel coordinates of a transformed rhs."""
        return [i for i in range(self.nrows) if i not in self._pivot_rows]

    def solve(self, rhs: Sequence) -> SolveResult:
        b = self.transform(rhs)
        residual = [b[i] for i in self.residual_rows()]
        if any(residual):
            return SolveResult(None, self.kernel_basis(), residual)
        x = [QuadExt(0)] * self.ncols
        for c, r in self.pivots:
            if b[r]:
                x[c] = b[r] / self._q(self._rows[r][c])
        return SolveResult(x, self.kernel_basis(), residual)


def _eliminator(sys: LinearSystem) -> Eliminator:
    return Eliminator(sys.sparse_rows(), sys.ncols)


def kernel(sys: LinearSystem) -> list[list[QuadExt]]:
    """Normalised basis of ``{x : A x = 0}``; the right-hand side is ignored."""
    return _eliminator(sys).kernel_basis()


def solve(sys: LinearSystem) -> SolveResult:
    """Particular solution plus kernel basis; raises :class:`InconsistentSystem`."""
    rhs = sys.rhs if sys.rhs is not None else (QuadExt(0),) * len(sys.matrix)
    res = _eliminator(sys).solve(rhs)
    if not res.consistent:
        raise InconsistentSystem(res.residual)
    return res


def rank(matrix: Sequence[Sequence]) -> int:
    rows = [{j: x for j, x in enumerate(row) if x} for row in matrix]
    ncols = len(matrix[0]) if matrix else 0
    return Eliminator(rows, ncols).rank
