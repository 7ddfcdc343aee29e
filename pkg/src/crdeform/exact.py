"""Exact scalars: rationals, the real quadratic field Q(sqrt d), and complex
numbers over it.

``Rational`` is :class:`fractions.Fraction`.  ``QuadExt`` stores
``(a + b*sqrt(d)) / den`` with integers ``a, b, den`` and ``CScalar`` stores
``((ra + rb*sqrt(d)) + i*(ia + ib*sqrt(d))) / den``.  Both keep a common
positive denominator and a reduced gcd, so equal values have equal
representations.

The radicand ``d`` travels with each value.  A value without a radical part
carries ``d = 0`` and combines with any radicand; combining two values whose
radical parts use different radicands raises :class:`RadicandMismatch`.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "QuadExt",
    "CScalar",
    "RadicandMismatch",
    "is_squarefree",
    "sqrt",
    "I",
    "ZERO",
    "ONE",
    "to_cscalar",
    "to_quad",
]


class RadicandMismatch(ValueError):
    """Two radical parts with different radicands met in one operation."""


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _join(d1: int, d2: int) -> int:
    if d1 == d2 or d2 == 0:
        return d1
    if d1 == 0:
        return d2
    raise RadicandMismatch(f"cannot combine sqrt({d1}) with sqrt({d2})")


def _frac_parts(x) -> tuple[int, int]:
    if isinstance(x, int):
        return x, 1
    if isinstance(x, _RationalABC):
        return x.numerator, x.denominator
    raise TypeError(f"not a rational: {x!r}")


class QuadExt:
    """Element ``(a + b*sqrt(d)) / den`` of the real field Q(sqrt d)."""

    __slots__ = ("a", "b", "den", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        an, ad = _frac_parts(a)
        bn, bd = _frac_parts(b)
        if bn and not is_squarefree(d):
            raise ValueError(f"radicand must be square-free and >= 2, got {d}")
        den = ad * bd
        _set_quad(self, an * bd, bn * ad, den, d)

    @classmethod
    def _raw(cls, a: int, b: int, den: int, d: int) -> "QuadExt":
        obj = cls.__new__(cls)
        _set_quad(obj, a, b, den, d)
        return obj

    # -- views -------------------------------------------------------------
    @property
    def rational_part(self) -> Fraction:
        return Fraction(self.a, self.den)

    @property
    def radical_part(self) -> Fraction:
        return Fraction(self.b, self.den)

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def conjugate_radical(self) -> "QuadExt":
        """Galois conjugate sqrt(d) -> -sqrt(d)."""
        return QuadExt._raw(self.a, -self.b, self.den, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 - d b^2 (always rational)."""
        return Fraction(self.a * self.a - self.d * self.b * self.b, self.den * self.den)

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if (a > 0) == (b > 0):
            return 1 if a > 0 else -1
        # opposite signs: compare a^2 with d b^2
        lhs, rhs = a * a, self.d * b * b
        if lhs > rhs:
            return 1 if a > 0 else -1
        return 1 if b > 0 else -1

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = _coerce_quad(other)
        if o is None:
            return NotImplemented
        d = _join(self.d, o.d)
        return QuadExt._raw(
            self.a * o.den + o.a * self.den, self.b * o.den + o.b * self.den, self.den * o.den, d
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self.a, -self.b, self.den, self.d)

    def __sub__(self, other):
        o = _coerce_quad(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_quad(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce_quad(other)
        if o is None:
            return NotImplemented
        d = _join(self.d, o.d)
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        return QuadExt._raw(a1 * a2 + d * b1 * b2, a1 * b2 + a2 * b1, self.den * o.den, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        if not self:
            raise ZeroDivisionError("QuadExt division by zero")
        n = self.a * self.a - self.d * self.b * self.b
        return QuadExt._raw(self.a * self.den, -self.b * self.den, n, self.d)

    def __truediv__(self, other):
        o = _coerce_quad(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_quad(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QuadExt(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        o = _coerce_quad(other)
        if o is None:
            if isinstance(other, CScalar):
                return other == self
            return NotImplemented
        return (self.a, self.b, self.den) == (o.a, o.b, o.den) and (self.b == 0 or self.d == o.d)

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.den))
        return hash((self.a, self.b, self.den, self.d))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        return f"QuadExt({format_quad(self)})"


def _set_quad(obj, a, b, den, d):
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        a, b, den = -a, -b, -den
    g = gcd(a, b, den)
    if g != 1:
        a //= g
        b //= g
        den //= g
    obj.a = a
    obj.b = b
    obj.den = den
    obj.d = d if b else 0


def _coerce_quad(x):
    if isinstance(x, QuadExt):
        return x
    if isinstance(x, int):
        return QuadExt._raw(x, 0, 1, 0)
    if isinstance(x, _RationalABC):
        return QuadExt._raw(x.numerator, 0, x.denominator, 0)
    return None


def to_quad(x) -> QuadExt:
    q = _coerce_quad(x)
    if q is None:
        if isinstance(x, CScalar) and x.ia == 0 and x.ib == 0:
            return x.re
        raise TypeError(f"cannot convert {x!r} to QuadExt")
    return q


class CScalar:
    """Complex number ``re + i*im`` with ``re, im`` in Q(sqrt d)."""

    __slots__ = ("ra", "rb", "ia", "ib", "den", "d", "_hash")

    def __init__(self, re=0, im=0):
        r = to_quad(re)
        m = to_quad(im)
        d = _join(r.d, m.d)
        _set_c(self, r.a * m.den, r.b * m.den, m.a * r.den, m.b * r.den, r.den * m.den, d)

    @classmethod
    def _raw(cls, ra, rb, ia, ib, den, d) -> "CScalar":
        obj = cls.__new__(cls)
        _set_c(obj, ra, rb, ia, ib, den, d)
        return obj

    @property
    def re(self) -> QuadExt:
        return QuadExt._raw(self.ra, self.rb, self.den, self.d)

    @property
    def im(self) -> QuadExt:
        return QuadExt._raw(self.ia, self.ib, self.den, self.d)

    def __bool__(self):
        return bool(self.ra or self.rb or self.ia or self.ib)

    def is_real(self) -> bool:
        return self.ia == 0 and self.ib == 0

    def conjugate(self) -> "CScalar":
        return CScalar._raw(self.ra, self.rb, -self.ia, -self.ib, self.den, self.d)

    def abs2(self) -> QuadExt:
        """|x|^2 = re^2 + im^2, an element of Q(sqrt d) that is >= 0."""
        r, m = self.re, self.im
        return r * r + m * m

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = _coerce_c(other)
        if o is None:
            return NotImplemented
        d = _join(self.d, o.d)
        n1, n2 = self.den, o.den
        if n1 == n2:
            return CScalar._raw(
                self.ra + o.ra, self.rb + o.rb, self.ia + o.ia, self.ib + o.ib, n1, d
            )
        return CScalar._raw(
            self.ra * n2 + o.ra * n1,
            self.rb * n2 + o.rb * n1,
            self.ia * n2 + o.ia * n1,
            self.ib * n2 + o.ib * n1,
            n1 * n2,
            d,
        )

    __radd__ = __add__

    def __neg__(self):
        return CScalar._raw(-self.ra, -self.rb, -self.ia, -self.ib, self.den, self.d)

    def __sub__(self, other):
        o = _coerce_c(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_c(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce_c(other)
        if o is None:
            return NotImplemented
        d = _join(self.d, o.d)
        xa, xb, ya, yb = self.ra, self.rb, self.ia, self.ib
        ua, ub, va, vb = o.ra, o.rb, o.ia, o.ib
        # (X + iY)(U + iV) with X = xa + xb*s etc., s^2 = d
        re_a = xa * ua + d * xb * ub - ya * va - d * yb * vb
        re_b = xa * ub + xb * ua - ya * vb - yb * va
        im_a = xa * va + d * xb * vb + ya * ua + d * yb * ub
        im_b = xa * vb + xb * va + ya * ub + yb * ua
        return CScalar._raw(re_a, re_b, im_a, im_b, self.den * o.den, d)

    __rmul__ = __mul__

    def inverse(self) -> "CScalar":
        if not self:
            raise ZeroDivisionError("CScalar division by zero")
        d = self.d
        xa, xb, ya, yb = self.ra, self.rb, self.ia, self.ib
        # N = X^2 + Y^2 = n0 + n1*s
        n0 = xa * xa + d * xb * xb + ya * ya + d * yb * yb
        n1 = 2 * (xa * xb + ya * yb)
        m = n0 * n0 - d * n1 * n1
        # 1/z = den * (X - iY) * (n0 - n1 s) / m
        re_a = xa * n0 - d * xb * n1
        re_b = xb * n0 - xa * n1
        im_a = -(ya * n0 - d * yb * n1)
        im_b = -(yb * n0 - ya * n1)
        den = self.den
        return CScalar._raw(re_a * den, re_b * den, im_a * den, im_b * den, m, d)

    def __truediv__(self, other):
        o = _coerce_c(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_c(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = _coerce_c(other)
        if o is None:
            return NotImplemented
        return (
            self.ra == o.ra
            and self.rb == o.rb
            and self.ia == o.ia
            and self.ib == o.ib
            and self.den == o.den
            and (self.d == o.d or not (self.rb or self.ib))
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            if self.rb or self.ia or self.ib:
                h = hash((self.ra, self.rb, self.ia, self.ib, self.den))
            else:
                h = hash(Fraction(self.ra, self.den))
            self._hash = h
        return h

    def __repr__(self):
        return f"CScalar({format_scalar(self)})"

    def __str__(self):
        return format_scalar(self)


def _set_c(obj, ra, rb, ia, ib, den, d):
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        ra, rb, ia, ib, den = -ra, -rb, -ia, -ib, -den
    g = gcd(ra, rb, ia, ib, den)
    if g != 1:
        ra //= g
        rb //= g
        ia //= g
        ib //= g
        den //= g
    obj.ra = ra
    obj.rb = rb
    obj.ia = ia
    obj.ib = ib
    obj.den = den
    obj.d = d if (rb or ib) else 0
    obj._hash = None


def _coerce_c(x):
    if isinstance(x, CScalar):
        return x
    if isinstance(x, int):
        return CScalar._raw(x, 0, 0, 0, 1, 0)
    if isinstance(x, QuadExt):
        return CScalar._raw(x.a, x.b, 0, 0, x.den, x.d)
    if isinstance(x, _RationalABC):
        return CScalar._raw(x.numerator, 0, 0, 0, x.denominator, 0)
    return None


def to_cscalar(x) -> CScalar:
    c = _coerce_c(x)
    if c is None:
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        raise TypeError(f"cannot convert {x!r} to CScalar")
    return c


def sqrt(d: int) -> CScalar:
    """The radical sqrt(d) as a CScalar (d square-free, or a perfect square)."""
    r = isqrt(d)
    if r * r == d:
        return CScalar._raw(r, 0, 0, 0, 1, 0)
    if not is_squarefree(d):
        raise ValueError(f"radicand must be square-free: {d}")
    return CScalar._raw(0, 1, 0, 0, 1, d)


ZERO = CScalar._raw(0, 0, 0, 0, 1, 0)
ONE = CScalar._raw(1, 0, 0, 0, 1, 0)
I = CScalar._raw(0, 0, 1, 0, 1, 0)


# -- printing (parseable by crdeform.parser) ---------------------------------


def _fmt_rat(n: int, den: int) -> str:
    f = Fraction(n, den)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _join_signed(parts: list[tuple[int, int, str]], den: int) -> str:
    out = []
    for n, _, suffix in parts:
        if n == 0:
            continue
        mag = _fmt_rat(abs(n), den)
        if suffix:
            body = suffix if mag == "1" else f"{mag}*{suffix}"
        else:
            body = mag
        sign = "-" if n < 0 else "+"
        if not out:
            out.append(body if n > 0 else f"-{body}")
        else:
            out.append(f"{sign}{body}")
    return "".join(out) if out else "0"


def format_quad(q: QuadExt) -> str:
    return _join_signed([(q.a, 0, ""), (q.b, 0, "sqrt")], q.den)


def format_scalar(c: CScalar) -> str:
    """Canonical text ``a+b*sqrt+c*i+e*sqrt*i`` (zero parts omitted)."""
    return _join_signed(
        [(c.ra, 0, ""), (c.rb, 0, "sqrt"), (c.ia, 0, "i"), (c.ib, 0, "sqrt*i")], c.den
    )
