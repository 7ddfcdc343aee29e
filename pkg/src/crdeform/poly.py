"""Sparse multivariate polynomials with exact complex coefficients.

A polynomial on C^N is stored over ``2N`` variables: the holomorphic
coordinates ``Z_1..Z_N`` followed by their formal conjugates
``Zbar_1..Zbar_N``.  Treating the conjugates as independent variables is the
same thing as working on the complexification, so a ``Zbar`` slot doubles as
the ``zeta`` coordinate there.  Polynomials with no conjugate structure (Segre
maps, normal forms ``Q``) simply use an arbitrary variable count.

Monomials are ordered graded-lexicographically with variable priority
``Z_1 > ... > Z_N > Zbar_1 > ... > Zbar_N`` (index order).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exact import ONE, ZERO, CScalar, to_cscalar

Exponent = tuple[int, ...]

__all__ = [
    "MPoly",
    "ArityMismatch",
    "poly_reduce",
    "homogeneous_parts",
    "circle_grading",
    "monomial_key",
]


class ArityMismatch(ValueError):
    """Polynomials over different variable counts were combined."""


def monomial_key(m: Exponent):
    return (sum(m), m)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple([x + y for x, y in zip(a, b)])


class MPoly:
    """Immutable sparse polynomial ``{exponent tuple: CScalar}``."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        clean: dict[Exponent, CScalar] = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ArityMismatch(f"exponent {exp} has wrong length for {nvars} variables")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = to_cscalar(c)
                if c:
                    clean[exp] = clean[exp] + c if exp in clean else c
                    if not clean[exp]:
                        del clean[exp]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, nvars: int, terms: dict) -> "MPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls._wrap(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MPoly":
        c = to_cscalar(c)
        return cls._wrap(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls._wrap(nvars, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, exp: Exponent, c=ONE) -> "MPoly":
        c = to_cscalar(c)
        return cls._wrap(len(exp), {tuple(exp): c} if c else {})

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> Mapping[Exponent, CScalar]:
        return self._terms

    def sorted_terms(self) -> list[tuple[Exponent, CScalar]]:
        """Terms from the leading monomial downwards."""
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exp: Exponent) -> CScalar:
        return self._terms.get(tuple(exp), ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, indices: Iterable[int]) -> int:
        idx = list(indices)
        return max((sum(e[i] for i in idx) for e in self._terms), default=-1)

    def leading_term(self) -> tuple[Exponent, CScalar]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=monomial_key)
        return exp, self._terms[exp]

    def constant_term(self) -> CScalar:
        return self._terms.get((0,) * self.nvars, ZERO)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_holomorphic(self) -> bool:
        """No conjugate variable appears (layout ``Z..., Zbar...``)."""
        n = self._half()
        return all(not any(e[n:]) for e in self._terms)

    def _half(self) -> int:
        if self.nvars % 2:
            raise ArityMismatch("conjugate layout needs an even number of variables")
        return self.nvars // 2

    # -- ring operations ---------------------------------------------------
    def _check(self, other: "MPoly"):
        if other.nvars != self.nvars:
            raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")

    def _lift(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        try:
            return MPoly.constant(self.nvars, other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            big, small = o._terms, self._terms
        else:
            big, small = self._terms, o._terms
        out = dict(big)
        for exp, c in small.items():
            v = out.get(exp)
            if v is None:
                out[exp] = c
            else:
                v = v + c
                if v:
                    out[exp] = v
                else:
                    del out[exp]
        return MPoly._wrap(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._wrap(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "MPoly":
        c = to_cscalar(c)
        if not c:
            return MPoly.zero(self.nvars)
        return MPoly._wrap(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: dict[Exponent, CScalar] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MPoly._wrap(self.nvars, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        c = to_cscalar(other)
        return self.scale(c.inverse())

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = MPoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == MPoly.constant(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- involutions -------------------------------------------------------
    def conj(self) -> "MPoly":
        """Conjugate coefficients and swap ``Z_i <-> Zbar_i``."""
        n = self._half()
        return MPoly._wrap(
            self.nvars, {e[n:] + e[:n]: c.conjugate() for e, c in self._terms.items()}
        )

    def conj_coeffs(self) -> "MPoly":
        """Conjugate coefficients only (the bar-series of a holomorphic map)."""
        return MPoly._wrap(self.nvars, {e: c.conjugate() for e, c in self._terms.items()})

    def real_part(self) -> "MPoly":
        return (self + self.conj()).scale(CScalar(1, 0) / 2)

    def imag_part(self) -> "MPoly":
        return (self - self.conj()).scale(CScalar(0, -1) / 2)

    def is_real(self) -> bool:
        return self == self.conj()

    # -- calculus and substitution ----------------------------------------
    def diff(self, index: int) -> "MPoly":
        out = {}
        for e, c in self._terms.items():
            k = e[index]
            if k:
                e2 = e[:index] + (k - 1,) + e[index + 1 :]
                out[e2] = c * k
        return MPoly._wrap(self.nvars, out)

    def evaluate(self, values: Sequence) -> CScalar:
        if len(values) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} values, got {len(values)}")
        vals = [to_cscalar(v) for v in values]
        powers: dict[tuple[int, int], CScalar] = {}
        total = ZERO
        for e, c in self._terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    p = powers.get((i, k))
                    if p is None:
                        p = vals[i] ** k
                        powers[(i, k)] = p
                    t = t * p
            total = total + t
        return total

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Compose: replace variable ``j`` by ``images[j]``."""
        if len(images) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].nvars
        for im in images:
            if im.nvars != target:
                raise ArityMismatch("substitution images disagree on variable count")
        powers: dict[tuple[int, int], MPoly] = {}

        def power(i: int, k: int) -> MPoly:
            p = powers.get((i, k))
            if p is None:
                p = images[i] if k == 1 else power(i, k - 1) * images[i]
                powers[(i, k)] = p
            return p

        acc: dict[Exponent, CScalar] = {}
        for e, c in self._terms.items():
            t = MPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            for te, tc in t._terms.items():
                v = acc.get(te)
                acc[te] = tc if v is None else v + tc
        return MPoly._wrap(target, {e: c for e, c in acc.items() if c})

    def remap(self, nvars: int, positions: Sequence[int]) -> "MPoly":
        """Re-embed: variable ``j`` becomes variable ``positions[j]`` of a ring
        with ``nvars`` variables."""
        out = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for j, k in enumerate(e):
                if k:
                    ne[positions[j]] += k
            out[tuple(ne)] = c
        return MPoly._wrap(nvars, out)

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.sorted_terms()!r})"


# -- principal ideal reduction -------------------------------------------------


class _Reducer:
    """Normal forms modulo a single polynomial, memoized per monomial."""

    def __init__(self, rho: MPoly):
        lm, lc = rho.leading_term()
        self.lm = lm
        inv = -lc.inverse()
        # m * lm  ==  sum(c * m * t for t in tail)   modulo rho
        self.tail = [(e, c * inv) for e, c in rho.terms.items() if e != lm]
        self.cache: dict[Exponent, dict[Exponent, CScalar]] = {}

    def monomial(self, m: Exponent) -> dict[Exponent, CScalar]:
        hit = self.cache.get(m)
        if hit is not None:
            return hit
        lm = self.lm
        if any(a < b for a, b in zip(m, lm)):
            out = {m: ONE}
        else:
            q = tuple([a - b for a, b in zip(m, lm)])
            out = {}
            for te, tc in self.tail:
                for e, c in self.monomial(_add_exp(q, te)).items():
                    v = out.get(e)
                    out[e] = tc * c if v is None else v + tc * c
            out = {e: c for e, c in out.items() if c}
        self.cache[m] = out
        return out

    def reduce(self, p: MPoly) -> MPoly:
        acc: dict[Exponent, CScalar] = {}
        for m, c in p.terms.items():
            for e, v in self.monomial(m).items():
                w = acc.get(e)
                acc[e] = c * v if w is None else w + c * v
        return MPoly._wrap(p.nvars, {e: c for e, c in acc.items() if c})


@lru_cache(maxsize=64)
def _reducer(rho: MPoly) -> _Reducer:
    return _Reducer(rho)


def poly_reduce(p: MPoly, rho: MPoly) -> MPoly:
    """Remainder of ``p`` on division by ``rho`` (graded lex order).

    The remainder has no monomial divisible by the leading monomial of
    ``rho`` and differs from ``p`` by a multiple of ``rho``; it is zero iff
    ``p`` lies in the principal ideal ``(rho)``.
    """
    if rho.is_zero():
        raise ValueError("cannot reduce modulo the zero polynomial")
    if p.nvars != rho.nvars:
        raise ArityMismatch(f"{p.nvars} vs {rho.nvars} variables")
    return _reducer(rho).reduce(p)


# -- gradings ------------------------------------------------------------------


def homogeneous_parts(p: MPoly) -> dict[int, MPoly]:
    """Split by total degree (holomorphic and conjugate degrees together)."""
    parts: dict[int, dict] = {}
    for e, c in p.terms.items():
        parts.setdefault(sum(e), {})[e] = c
    return {k: MPoly._wrap(p.nvars, v) for k, v in sorted(parts.items())}


def circle_grading(p: MPoly) -> dict[int, MPoly]:
    """Split by ``deg_Z - deg_Zbar``: the weight under ``Z -> e^{i theta} Z``."""
    n = p._half()
    parts: dict[int, dict] = {}
    for e, c in p.terms.items():
        parts.setdefault(sum(e[:n]) - sum(e[n:]), {})[e] = c
    return {k: MPoly._wrap(p.nvars, v) for k, v in sorted(parts.items())}
