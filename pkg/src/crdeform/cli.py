"""Command line interface: ``crdeform {analyze,nondegen,holk,segre} INPUT``.

Exit codes: 0 on success, 2 when the input is mathematically invalid (for
instance the map does not send M into M', or Q violates the normal-form
identities), 1 for unreadable input, parse errors and internal failures.
A report is only written once it is complete.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import __version__
from .config import ConfigError, SessionConfig
from .geometry import GeometryError, maps_into
from .higher import (
    JetCurve,
    dangelo_jet,
    is_member_holk,
    obstruction_quadric,
    prolong,
    prolongation_cap,
)
from .infdef import DeformationOperator, real_rank, rigidity_verdict
from .nondegen import k0_at_point, k0_uniform
from .parser import ParseError, format_poly
from .poly import MPoly
from .problem import InputError, Problem, ValidationError, load_problem
from .report import (
    SCHEMA,
    certificate_dict,
    dumps,
    scalar_text,
    section_text,
    uniform_dict,
    write_atomic,
)
from .segre import build_segre, minimality

log = logging.getLogger("crdeform")


def _header(command: str, cfg: SessionConfig, prob: Problem) -> dict:
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "command": command,
        "seed": cfg.seed,
        "config": cfg.as_dict(),
        "input": prob.raw,
    }


def _require_map(prob: Problem):
    if prob.H is None:
        raise InputError("this command needs 'map', 'variables' and 'target' in the input")
    if not maps_into(prob.H, prob.M, prob.Mp):
        raise ValidationError("map does not send M into M'")


def _verdict_section(v, names, tnames) -> dict:
    return {
        "verdict": v.verdict,
        "rigid": v.rigid,
        "hol": {
            "dimension": v.hol_dim,
            "cap": v.hol.cap,
            "exact": v.hol.exact,
            "basis": [section_text(s, names) for s in v.hol.sections],
        },
        "aut": {
            "dimension": v.aut_dim,
            "source_rank": v.aut.source_rank,
            "target_rank": v.aut.target_rank,
            "aut_in_hol": v.aut_in_hol,
            "basis": [section_text(s, names) for s in v.aut.aut_basis],
        },
        "stabilizer": {
            "dimension": v.stabilizer_dim,
            "basis": [
                {"source": section_text(S, names), "target": section_text(Sp, tnames)}
                for S, Sp in v.aut.stabilizer
            ],
        },
        "complement": {
            "dimension": v.complement_dim,
            "basis": [section_text(s, names) for s in v.complement],
        },
        "hol_source": {"dimension": v.hol_M_dim, "complete": v.hol_M_complete},
        "hol_target": {"dimension": v.hol_Mp_dim, "complete": v.hol_Mp_complete},
    }


def run_analyze(cfg: SessionConfig, prob: Problem) -> dict:
    _require_map(prob)
    H, M, Mp = prob.H, prob.M, prob.Mp
    rep = _header("analyze", cfg, prob)
    rep["maps_into"] = True
    u = k0_uniform(H, M, Mp, cfg.nondeg_cap, cfg.multiplier_degree)
    rep["nondegeneracy"] = uniform_dict(u, prob.names)
    v = rigidity_verdict(H, M, Mp, cfg.degree_cap)
    rep.update(_verdict_section(v, prob.names, prob.target_names))
    return rep


def run_nondegen(cfg: SessionConfig, prob: Problem) -> dict:
    _require_map(prob)
    H, M, Mp = prob.H, prob.M, prob.Mp
    rep = _header("nondegen", cfg, prob)
    u = k0_uniform(H, M, Mp, cfg.nondeg_cap, cfg.multiplier_degree)
    rep["nondegeneracy"] = uniform_dict(u, prob.names)
    points = list(dict.fromkeys(M.points))
    rep["points"] = [certificate_dict(k0_at_point(H, M, Mp, p, u.generic.cap), prob.names) for p in points]
    return rep


def _quadric_dict(q, names) -> dict:
    forms = []
    for key in sorted(q.forms, key=repr):
        Q = q.forms[key]
        entries = [
            [i, j, scalar_text(Q[i][j])]
            for i in range(len(Q))
            for j in range(i, len(Q))
            if Q[i][j]
        ]
        kind, *rest = key
        if kind == "row":
            (exp, part), = rest
        else:
            exp, part = rest
        label = format_poly(MPoly.monomial(exp), names)
        forms.append({"coordinate": f"{kind}:{label}:{'im' if part else 're'}", "entries": entries})
    return {"cap": q.cap, "basis_size": len(q.basis), "forms": forms, "vanishes": q.is_zero}


def run_holk(cfg: SessionConfig, prob: Problem) -> dict:
    _require_map(prob)
    H, M, Mp = prob.H, prob.M, prob.Mp
    rep = _header("holk", cfg, prob)
    v = rigidity_verdict(H, M, Mp, cfg.degree_cap)
    rep["hol_dimension"] = v.hol_dim
    rep["aut_dimension"] = v.aut_dim
    ops: dict[int, DeformationOperator] = {}

    def operator(cap):
        if cap not in ops:
            ops[cap] = DeformationOperator(H, M, Mp, cap)
        return ops[cap]

    rows = []
    for idx, B in enumerate(v.hol.sections):
        in_aut = real_rank(list(v.aut.aut_basis) + [B]) == v.aut_dim
        h = JetCurve(H, (B,))
        outcomes = []
        for _ in range(2, cfg.order + 1):
            r = prolong(h, M, Mp, operator=operator(prolongation_cap(h)))
            if not r.extended:
                outcomes.append("obstructed")
                break
            outcomes.append("extended (adjusted)" if r.adjusted else "extended")
            h = r.curve
        rows.append({"index": idx, "in_aut": in_aut, "outcomes": outcomes})
    rep["rows"] = rows
    if cfg.order >= 2:
        q = obstruction_quadric(H, M, Mp, cfg.degree_cap, v.hol.sections)
        rep["obstruction_quadric"] = _quadric_dict(q, prob.names)
    if prob.dangelo is not None:
        c, s = prob.dangelo
        jet = dangelo_jet(c, s, cfg.order)
        if jet.base != H:
            raise ValidationError("the map is not the D'Angelo base map for the given (c, s)")
        rep["dangelo"] = {
            "c": scalar_text(c),
            "s": scalar_text(s),
            "first_coefficient": section_text(jet.coeffs[0], prob.names) if jet.coeffs else [],
            "outcomes": [
                "extended" if is_member_holk(jet.truncate(k), M, Mp) else "not a member"
                for k in range(1, cfg.order + 1)
            ],
        }
    return rep


def run_segre(cfg: SessionConfig, prob: Problem) -> dict:
    if prob.segre is None:
        raise InputError("this command needs a 'segre' block in the input")
    rep = _header("segre", cfg, prob)
    k0 = int(prob.raw["segre"].get("k0", 1))
    r = minimality(prob.segre, cfg.bound, k0=k0, seed=cfg.seed)
    n = prob.segre.n
    xnames = [f"x{q + 1}_{j + 1}" if n > 1 else f"x{q + 1}" for q in range(cfg.bound) for j in range(n)]
    maps = []
    for q in range(1, cfg.bound + 1):
        S = build_segre(prob.segre, q)
        maps.append([format_poly(c, xnames[: q * n], conjugates=False) for c in S.components])
    rep["segre"] = {
        "ranks": r.ranks,
        "N": r.N,
        "bound": r.bound,
        "t": r.t,
        "minimal": r.minimal,
        "summary": r.summary(),
        "jet_order": r.jet_order,
        "k0": r.k0,
        "involution_ok": r.involution_ok,
        "certified_by": r.certified_by,
        "maps": maps,
        "base_point_only": True,
    }
    return rep


COMMANDS = {
    "analyze": run_analyze,
    "nondegen": run_nondegen,
    "holk": run_holk,
    "segre": run_segre,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="crdeform",
        description="Exact infinitesimal deformation and rigidity analysis of polynomial CR maps.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "hol(H), aut(H), stabilizer, nondegeneracy and the rigidity verdict"),
        ("nondegen", "nondegeneracy order: generic, uniform and at the stored points"),
        ("holk", "higher-order prolongation table and the order-two obstruction"),
        ("segre", "Segre map ranks and the minimality test"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="JSON input document")
        p.add_argument("--degree-cap", type=int, default=None, help="degree cap for hol solves")
        p.add_argument("--nondeg-cap", type=int, default=None, help="largest nondegeneracy order tried")
        p.add_argument("--order", type=int, default=2, help="prolongation depth for holk")
        p.add_argument("--bound", type=int, default=3, help="largest Segre order for segre")
        p.add_argument("--seed", type=int, default=0, help="seed for random evaluation points")
        p.add_argument("--multiplier-degree", type=int, default=8,
                       help="multiplier degree for the uniform nondegeneracy certificate")
        p.add_argument("--json", dest="json_path", default=None, help="write the report here")
        p.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        prob = load_problem(args.input)
        cfg = SessionConfig(
            d=prob.d,
            degree_cap=args.degree_cap,
            nondeg_cap=args.nondeg_cap,
            order=args.order,
            bound=args.bound,
            seed=args.seed,
            multiplier_degree=args.multiplier_degree,
            output=args.json_path,
        ).merged(prob.raw.get("caps"))
        report = COMMANDS[args.command](cfg, prob)
        text = dumps(report)
    except (ValidationError, ConfigError, GeometryError) as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return 2
    except (ParseError, InputError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        log.debug("internal error", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.json_path:
        write_atomic(args.json_path, text)
        print(f"{args.command}: report written to {args.json_path}")
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
