"""Real hypersurfaces, holomorphic polynomial maps and vector fields."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .exact import CScalar, to_cscalar
from .poly import ArityMismatch, MPoly, poly_reduce

__all__ = [
    "Hypersurface",
    "HoloMap",
    "CRField",
    "PolyVectorField",
    "VectorSection",
    "Biholomorphism",
    "GeometryError",
    "sphere",
    "sphere_rho",
    "default_names",
    "pullback",
    "maps_into",
    "rational_points",
    "cr_basis",
    "jet_at",
    "pushforward_deformation",
    "transform_map",
    "is_tangent",
]


class GeometryError(ValueError):
    pass


def default_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("z",)
    if n == 2:
        return ("z", "w")
    return tuple(f"z{j}" for j in range(1, n + 1))


def _coords(n: int) -> list[MPoly]:
    return [MPoly.variable(2 * n, j) for j in range(2 * n)]


def _point(values: Sequence) -> tuple[CScalar, ...]:
    return tuple(to_cscalar(v) for v in values)


def _complexified(p: Sequence[CScalar]) -> list[CScalar]:
    return list(p) + [c.conjugate() for c in p]


@dataclass(frozen=True)
class Hypersurface:
    """``M = {rho(Z, Zbar) = 0}`` in C^dim, ``rho`` real and nonzero."""

    dim: int
    rho: MPoly
    points: tuple[tuple[CScalar, ...], ...] = ()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.rho.nvars != 2 * self.dim:
            raise ArityMismatch(f"rho has {self.rho.nvars} variables, expected {2 * self.dim}")
        if self.rho.is_zero():
            raise GeometryError("defining polynomial is zero")
        if not self.rho.is_real():
            raise GeometryError("defining polynomial is not real: conj(rho) != rho")
        if self.names is None:
            object.__setattr__(self, "names", default_names(self.dim))
        pts = tuple(_point(p) for p in self.points)
        for p in pts:
            self._check_point(p)
        object.__setattr__(self, "points", pts)

    def _check_point(self, p):
        if len(p) != self.dim:
            raise GeometryError(f"point {p} has wrong dimension")
        z = _complexified(p)
        if self.rho.evaluate(z):
            raise GeometryError(f"point {[str(c) for c in p]} is not on the hypersurface")
        grad = [self.rho.diff(self.dim + j).evaluate(z) for j in range(self.dim)]
        if not any(grad):
            raise GeometryError(f"gradient of rho vanishes at {[str(c) for c in p]}")

    def contains(self, p: Sequence) -> bool:
        p = _point(p)
        return len(p) == self.dim and not self.rho.evaluate(_complexified(p))

    def is_sphere(self) -> bool:
        """True when rho is a nonzero rational multiple of |Z|^2 - 1."""
        c = self.rho.constant_term()
        if not c:
            return False
        return self.rho.scale(-c.inverse()) == sphere_rho(self.dim)


def sphere_rho(n: int) -> MPoly:
    v = _coords(n)
    rho = MPoly.constant(2 * n, -1)
    for j in range(n):
        rho = rho + v[j] * v[n + j]
    return rho


def sphere(n: int) -> Hypersurface:
    """Unit sphere ``sum |Z_j|^2 = 1`` in C^n with a stock of rational points."""
    if n < 1:
        raise GeometryError("sphere dimension must be >= 1")
    pts = tuple(_sphere_points(n, 12))
    return Hypersurface(n, sphere_rho(n), pts)


_GRID = [Fraction(x) for x in (1, 2, 3, "1/2", "1/3", "3/2", "2/3", -1, -2, "-1/2", 4, "1/4")]


def _inverse_stereo(u: Sequence[Fraction]) -> list[Fraction]:
    s = sum(x * x for x in u)
    return [2 * x / (s + 1) for x in u] + [(s - 1) / (s + 1)]


def _sphere_point_stream(n: int) -> Iterator[tuple]:
    for j in range(n):
        yield tuple(Fraction(int(i == j)) for i in range(n))
    # real points: rational points of S^{n-1} in R^n
    if n > 1:
        for u in product(_GRID, repeat=n - 1):
            yield tuple(_inverse_stereo(u))
    # points with Gaussian-rational coordinates: S^{2n-1} in R^{2n}
    for u in product(_GRID, repeat=2 * n - 1):
        x = _inverse_stereo(u)
        yield tuple(CScalar(x[2 * j], x[2 * j + 1]) for j in range(n))


def _sphere_points(n: int, count: int) -> list[tuple]:
    seen, out = set(), []
    for p in _sphere_point_stream(n):
        key = tuple(to_cscalar(c) for c in p)
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
        if len(out) >= count:
            break
    return out


def rational_points(M: Hypersurface, count: int) -> list[tuple[CScalar, ...]]:
    """Exact points of ``M``: Pythagorean stock for spheres, else the stored ones."""
    if M.is_sphere():
        pts = _sphere_points(M.dim, max(count, len(M.points)))
        pts = list(dict.fromkeys(list(M.points) + pts))
    else:
        pts = list(M.points)
        if not pts:
            raise GeometryError("no rational points available for this hypersurface")
    for p in pts[:count]:
        assert M.contains(p)
    return pts[:count]


@dataclass(frozen=True)
class HoloMap:
    """Polynomial map C^source_dim -> C^target_dim, holomorphic components."""

    source_dim: int
    components: tuple[MPoly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        for h in comps:
            if h.nvars != 2 * self.source_dim:
                raise ArityMismatch("map component lives in the wrong ring")
            if not h.is_holomorphic():
                raise GeometryError("map component depends on conjugate variables")

    @property
    def target_dim(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    @classmethod
    def identity(cls, n: int) -> "HoloMap":
        return cls(n, tuple(_coords(n)[:n]))

    def degree(self) -> int:
        return max((h.degree() for h in self.components), default=0)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for h in self.components for e in h.terms}
        return len(degs) == 1

    def complexified_images(self) -> list[MPoly]:
        """``(H(Z), conj(H)(Zbar))``: images for substituting into a target polynomial."""
        return list(self.components) + [h.conj() for h in self.components]

    def compose(self, inner: "HoloMap") -> "HoloMap":
        """``self o inner``."""
        if inner.target_dim != self.source_dim:
            raise GeometryError("dimension mismatch in composition")
        imgs = inner.complexified_images()
        return HoloMap(inner.source_dim, tuple(h.substitute(imgs) for h in self.components))

    def jacobian(self) -> list[list[MPoly]]:
        return [[h.diff(j) for j in range(self.source_dim)] for h in self.components]


@dataclass(frozen=True)
class VectorSection:
    """``sum_j X_j(Z) d/dZ'_j`` along a map: holomorphic polynomial components."""

    components: tuple[MPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __add__(self, other: "VectorSection") -> "VectorSection":
        return VectorSection(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "VectorSection") -> "VectorSection":
        return VectorSection(tuple(a - b for a, b in zip(self, other)))

    def scale(self, c) -> "VectorSection":
        return VectorSection(tuple(a.scale(c) for a in self))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self)

    def degree(self) -> int:
        return max((a.degree() for a in self), default=-1)

    @classmethod
    def zero(cls, nvars: int, count: int) -> "VectorSection":
        return cls(tuple(MPoly.zero(nvars) for _ in range(count)))


@dataclass(frozen=True)
class PolyVectorField:
    """Holomorphic polynomial vector field ``sum_j a_j(Z) d/dZ_j`` on C^N."""

    components: tuple[MPoly, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    @property
    def dim(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def derive(self, f: MPoly) -> MPoly:
        """Apply the field as a derivation in the holomorphic variables."""
        out = MPoly.zero(f.nvars)
        for j, a in enumerate(self.components):
            if a:
                df = f.diff(j)
                if df:
                    out = out + a * df
        return out

    def scale(self, c) -> "PolyVectorField":
        return PolyVectorField(tuple(a.scale(c) for a in self.components), self.label)

    def __add__(self, other):
        return PolyVectorField(tuple(a + b for a, b in zip(self, other)))

    def __neg__(self):
        return self.scale(-1)

    def as_section(self) -> VectorSection:
        return VectorSection(self.components)


def pullback(rho_prime: MPoly, H: HoloMap) -> MPoly:
    """``rho'(H(Z), conj(H)(Zbar))``."""
    if rho_prime.nvars != 2 * H.target_dim:
        raise GeometryError("target polynomial does not match map target dimension")
    return rho_prime.substitute(H.complexified_images())


def maps_into(H: HoloMap, M: Hypersurface, Mp: Hypersurface) -> bool:
    """Whether ``rho'(H, conj H)`` lies in the ideal ``(rho)``."""
    if H.source_dim != M.dim or H.target_dim != Mp.dim:
        raise GeometryError(
            f"map C^{H.source_dim}->C^{H.target_dim} vs hypersurfaces in C^{M.dim}, C^{Mp.dim}"
        )
    return poly_reduce(pullback(Mp.rho, H), M.rho).is_zero()


def is_tangent(X: PolyVectorField, M: Hypersurface) -> bool:
    """``Re(sum a_j rho_{Z_j})`` vanishes modulo ``(rho)``."""
    expr = MPoly.zero(M.rho.nvars)
    for j, a in enumerate(X.components):
        expr = expr + a * M.rho.diff(j)
    return poly_reduce(expr.real_part(), M.rho).is_zero()


@dataclass(frozen=True)
class CRField:
    """Tangent field ``sum_k c_k d/dzeta_k`` on the complexification.

    Coefficients are polynomials in ``(Z, zeta)``; the field differentiates
    only the conjugate (``zeta``) slots.
    """

    coeffs: tuple[MPoly, ...]

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def apply(self, f: MPoly) -> MPoly:
        n = self.dim
        out = MPoly.zero(f.nvars)
        for k, c in enumerate(self.coeffs):
            if c:
                df = f.diff(n + k)
                if df:
                    out = out + c * df
        return out


def cr_basis(M: Hypersurface) -> list[CRField]:
    """``N-1`` fields annihilating ``rho`` on the complexification.

    The pivot is the lowest-index conjugate gradient component that is not
    identically zero; for ``N = 2`` this gives
    ``rho_{zeta_2} d/dzeta_1 - rho_{zeta_1} d/dzeta_2``.
    """
    n = M.dim
    grads = [M.rho.diff(n + k) for k in range(n)]
    pivots = [k for k in range(n) if not grads[k].is_zero()]
    if not pivots:
        raise GeometryError("conjugate gradient of rho vanishes identically")
    j0 = pivots[0]
    zero = MPoly.zero(2 * n)
    fields = []
    for k in range(n):
        if k == j0:
            continue
        coeffs = [zero] * n
        coeffs[j0] = grads[k]
        coeffs[k] = -grads[j0]
        fields.append(CRField(tuple(coeffs)))
    return fields


def _multiindices(n: int, k: int) -> list[tuple[int, ...]]:
    """Multiindices of length n with |alpha| <= k, graded then lex descending."""
    out = []
    for deg in range(k + 1):
        layer = [a for a in product(range(deg + 1), repeat=n) if sum(a) == deg]
        layer.sort(reverse=True)
        out.extend(layer)
    return out


def jet_at(H: HoloMap, p: Sequence, k: int) -> list[tuple[tuple[int, ...], tuple[CScalar, ...]]]:
    """All partial derivatives ``d^alpha H(p)`` with ``|alpha| <= k``."""
    if k < 0:
        raise ValueError("jet order must be >= 0")
    n = H.source_dim
    z = _complexified(_point(p))
    out = []
    for alpha in _multiindices(n, k):
        vals = []
        for h in H.components:
            d = h
            for j, a in enumerate(alpha):
                for _ in range(a):
                    d = d.diff(j)
            vals.append(d.evaluate(z))
        out.append((alpha, tuple(vals)))
    return out


@dataclass(frozen=True)
class Biholomorphism:
    """Polynomial automorphism given together with its polynomial inverse."""

    forward: HoloMap
    inverse: HoloMap

    def __post_init__(self):
        n = self.forward.source_dim
        if self.forward.target_dim != n or self.inverse.source_dim != n or self.inverse.target_dim != n:
            raise GeometryError("automorphism must map C^n to itself")
        ident = HoloMap.identity(n)
        if self.forward.compose(self.inverse) != ident or self.inverse.compose(self.forward) != ident:
            raise GeometryError("supplied inverse does not invert the map")

    @classmethod
    def identity(cls, n: int) -> "Biholomorphism":
        return cls(HoloMap.identity(n), HoloMap.identity(n))

    @classmethod
    def linear(cls, matrix: Sequence[Sequence], inverse: Sequence[Sequence]) -> "Biholomorphism":
        n = len(matrix)
        v = _coords(n)

        def build(a):
            comps = []
            for row in a:
                c = MPoly.zero(2 * n)
                for j, x in enumerate(row):
                    if to_cscalar(x):
                        c = c + v[j].scale(x)
                comps.append(c)
            return HoloMap(n, tuple(comps))

        return cls(build(matrix), build(inverse))


def transform_map(H: HoloMap, phi: Biholomorphism, phi_prime: Biholomorphism) -> HoloMap:
    """``phi' o H o phi^{-1}``."""
    return phi_prime.forward.compose(H).compose(phi.inverse)


def pushforward_deformation(
    V: VectorSection, H: HoloMap, phi: Biholomorphism, phi_prime: Biholomorphism
) -> VectorSection:
    """``(D phi' . V) o phi^{-1}``: a deformation of ``phi' o H o phi^{-1}``."""
    if len(V) != H.target_dim or phi_prime.forward.source_dim != H.target_dim:
        raise GeometryError("section / automorphism dimension mismatch")
    if phi.forward.source_dim != H.source_dim:
        raise GeometryError("source automorphism dimension mismatch")
    imgs = H.complexified_images()
    comps = []
    for g in phi_prime.forward.components:
        acc = MPoly.zero(2 * H.source_dim)
        for j, vj in enumerate(V.components):
            dg = g.diff(j)
            if dg and vj:
                acc = acc + dg.substitute(imgs) * vj
        comps.append(acc)
    inv = phi.inverse.complexified_images()
    return VectorSection(tuple(c.substitute(inv) for c in comps))

