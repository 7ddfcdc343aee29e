"""Deterministic JSON reports.

Every value is rendered exactly (canonical polynomial text, rational and
quadratic-irrational strings), dictionaries are emitted with sorted keys and
nothing time- or machine-dependent is recorded, so identical input and seed
give byte-identical output.  The layout is described in
``docs/report_schema.json``.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Sequence

from .exact import CScalar, QuadExt, format_quad, format_scalar
from .geometry import PolyVectorField, VectorSection
from .nondegen import NondegCertificate, UniformK0
from .parser import format_poly
from .poly import MPoly

SCHEMA = "crdeform-report/1"


def scalar_text(x) -> str:
    if isinstance(x, QuadExt):
        return format_quad(x)
    if isinstance(x, CScalar):
        return format_scalar(x)
    return str(x)


def section_text(sec: VectorSection | PolyVectorField, names: Sequence[str]) -> list[str]:
    return [format_poly(c, names) for c in sec.components]


def poly_text(p: MPoly, names: Sequence[str]) -> str:
    return format_poly(p, names)


def certificate_dict(c: NondegCertificate, names: Sequence[str]) -> dict:
    out = {"order": c.order, "cap": c.cap}
    if c.iota is not None:
        out["iota"] = [list(a) for a in c.iota]
        out["ell"] = list(c.ell)
    if c.point is not None:
        out["point"] = [scalar_text(x) for x in c.point]
    else:
        out["point"] = "generic"
    if isinstance(c.determinant, MPoly):
        out["determinant"] = poly_text(c.determinant, names)
    elif c.determinant is not None:
        out["determinant"] = scalar_text(c.determinant)
    return out


def uniform_dict(u: UniformK0, names: Sequence[str]) -> dict:
    out = {
        "k0": u.order,
        "lower": u.lower,
        "upper": u.upper,
        "exact": u.exact,
        "lower_reason": u.lower_reason,
        "multiplier_degree": u.multiplier_degree,
        "generic": certificate_dict(u.generic, names),
    }
    if u.witness_point is not None:
        out["witness_point"] = [scalar_text(x) for x in u.witness_point]
    if u.sign_change is not None:
        out["sign_change"] = [[scalar_text(x) for x in p] for p in u.sign_change]
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file so a failed run never leaves partial JSON."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
