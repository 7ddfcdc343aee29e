"""Loading analysis inputs from JSON documents.

An input document looks like::

    {
      "field_sqrt": 2,
      "variables": ["z", "w"],
      "source_rho": "sphere:2",
      "target": "sphere:3",
      "map": ["z^2", "sqrt*z*w", "w^2"],
      "points": [["3/5", "4/5"]],
      "caps": {"degree": 4, "nondeg": 4}
    }

``source_rho`` and ``target`` are either ``"sphere:n"`` or polynomial text;
a textual target needs ``target_variables``.  Optional blocks: ``dangelo``
(``{"c": ..., "s": ...}``) and ``segre`` (``{"n": 1, "variables": [...],
"Q": ...}``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .exact import CScalar, is_squarefree
from .geometry import GeometryError, HoloMap, Hypersurface, default_names, sphere
from .parser import parse_poly, parse_scalar
from .poly import MPoly
from .segre import NormalComplexification


class ValidationError(ValueError):
    """The input is well formed but mathematically invalid (exit code 2)."""


class InputError(ValueError):
    """The input cannot be read or parsed (exit code 1)."""


@dataclass
class Problem:
    raw: dict
    d: int
    names: tuple[str, ...]
    target_names: tuple[str, ...]
    M: Hypersurface | None = None
    Mp: Hypersurface | None = None
    H: HoloMap | None = None
    segre: NormalComplexification | None = None
    segre_names: tuple[str, ...] = ()
    dangelo: tuple[CScalar, CScalar] | None = None
    extra: dict = field(default_factory=dict)


def _hypersurface(spec: str, names, d: int, points=()) -> Hypersurface:
    spec = spec.strip()
    if spec.startswith("sphere:"):
        try:
            n = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise InputError(f"bad sphere specification {spec!r}") from exc
        if n != len(names):
            raise ValidationError(f"{spec} does not match {len(names)} variables")
        S = sphere(n)
        try:
            return Hypersurface(n, S.rho, tuple(points) + S.points, tuple(names))
        except GeometryError as exc:
            raise ValidationError(str(exc)) from exc
    rho = parse_poly(spec, names, d)
    try:
        return Hypersurface(len(names), rho, tuple(points), tuple(names))
    except GeometryError as exc:
        raise ValidationError(str(exc)) from exc


def load_problem(source, d: int | None = None) -> Problem:
    """Parse a JSON document given by its path or as an already-decoded dict."""
    if isinstance(source, dict):
        raw = source
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
            raw = json.loads(text)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read input: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputError("input must be a JSON object")
    try:
        dd = int(raw.get("field_sqrt", 0)) if d is None else int(d)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad field_sqrt: {exc}") from exc
    if dd < 0 or (dd > 1 and not is_squarefree(dd)):
        raise ValidationError(f"field_sqrt must be 0 or a square-free integer > 1, got {dd}")
    names = tuple(raw.get("variables") or ())
    prob = Problem(raw, dd, names, ())
    if "map" in raw:
        if not names:
            raise InputError("'variables' is required together with 'map'")
        try:
            points = [tuple(parse_scalar(str(c), dd) for c in p) for p in raw.get("points", [])]
        except ValueError as exc:
            raise InputError(f"bad point: {exc}") from exc
        prob.M = _hypersurface(raw.get("source_rho", f"sphere:{len(names)}"), names, dd, points)
        target = raw.get("target")
        if target is None:
            raise InputError("'target' is required together with 'map'")
        ncomp = len(raw["map"])
        if target.strip().startswith("sphere:"):
            tnames = tuple(raw.get("target_variables") or default_names(ncomp))
        else:
            tnames = tuple(raw.get("target_variables") or ())
            if not tnames:
                raise InputError("a textual target needs 'target_variables'")
        prob.target_names = tnames
        prob.Mp = _hypersurface(target, tnames, dd)
        comps = tuple(parse_poly(t, names, dd) for t in raw["map"])
        try:
            prob.H = HoloMap(len(names), comps)
        except GeometryError as exc:
            raise ValidationError(str(exc)) from exc
        if prob.H.target_dim != prob.Mp.dim:
            raise ValidationError(f"map has {prob.H.target_dim} components, target lives in C^{prob.Mp.dim}")
    if "dangelo" in raw:
        block = raw["dangelo"]
        prob.dangelo = (parse_scalar(str(block["c"]), dd), parse_scalar(str(block["s"]), dd))
    if "segre" in raw:
        block = raw["segre"]
        n = int(block.get("n", 1))
        snames = tuple(block.get("variables") or [f"z{j + 1}" for j in range(n)]
                       + [f"chi{j + 1}" for j in range(n)] + ["tau"])
        if len(snames) != 2 * n + 1:
            raise InputError(f"segre block needs {2 * n + 1} variable names")
        Q: MPoly = parse_poly(block["Q"], snames, dd, conjugates=False)
        try:
            prob.segre = NormalComplexification(n, Q)
        except GeometryError as exc:
            raise ValidationError(str(exc)) from exc
        prob.segre_names = snames
    return prob
