"""Truncated power series in a real parameter ``t`` with polynomial
coefficients.

A series of order ``k`` is a list ``[c_0, ..., c_k]`` of :class:`MPoly` over a
common ring; everything beyond ``t^k`` is discarded.
"""

from __future__ import annotations

from typing import Sequence

from .poly import MPoly

Series = list[MPoly]


def zero_series(nvars: int, k: int) -> Series:
    return [MPoly.zero(nvars) for _ in range(k + 1)]


def constant_series(p: MPoly, k: int) -> Series:
    return [p] + [MPoly.zero(p.nvars) for _ in range(k)]


def series_add(a: Series, b: Series) -> Series:
    return [x + y for x, y in zip(a, b)]


def series_mul(a: Series, b: Series) -> Series:
    k = min(len(a), len(b)) - 1
    nvars = a[0].nvars
    out = []
    for n in range(k + 1):
        acc = MPoly.zero(nvars)
        for i in range(n + 1):
            if a[i] and b[n - i]:
                acc = acc + a[i] * b[n - i]
        out.append(acc)
    return out


def series_conj(a: Series) -> Series:
    """Conjugate a series in a real parameter ``t``."""
    return [c.conj() for c in a]


def substitute_series(p: MPoly, images: Sequence[Series], k: int) -> Series:
    """Truncation at ``t^k`` of ``p(images[0](t), ..., images[n-1](t))``."""
    if len(images) != p.nvars:
        raise ValueError(f"expected {p.nvars} series, got {len(images)}")
    target = images[0][0].nvars if images else p.nvars
    images = [list(s[: k + 1]) + [MPoly.zero(target)] * (k + 1 - len(s)) for s in images]
    powers: dict[tuple[int, int], Series] = {}

    def power(i: int, e: int) -> Series:
        hit = powers.get((i, e))
        if hit is None:
            hit = images[i] if e == 1 else series_mul(power(i, e - 1), images[i])
            powers[(i, e)] = hit
        return hit

    acc = zero_series(target, k)
    for exp, c in p.terms.items():
        term = constant_series(MPoly.constant(target, c), k)
        for i, e in enumerate(exp):
            if e:
                term = series_mul(term, power(i, e))
        acc = series_add(acc, term)
    return acc
