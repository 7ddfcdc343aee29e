#!/usr/bin/env python3
"""Recompute the worked examples shipped in data/ and print a summary table.

Usage: python scripts/reproduce_examples.py [--skip-k0] [--data DIR]

The uniform nondegeneracy certificate of the quartic-source example takes
the longest (about ten seconds); ``--skip-k0`` leaves that column out.
"""

import argparse
import time
from pathlib import Path

from crdeform.config import SessionConfig
from crdeform.geometry import maps_into
from crdeform.infdef import rigidity_verdict
from crdeform.nondegen import k0_uniform
from crdeform.problem import load_problem
from crdeform.segre import minimality

ROOT = Path(__file__).resolve().parent.parent
MAP_EXAMPLES = ["identity_s2", "ex1_quadratic", "ex2_cubic", "ex3_quartic_source", "dangelo"]
SEGRE_EXAMPLES = ["heisenberg", "heisenberg_like", "levi_flat"]


def map_row(path, skip_k0):
    prob = load_problem(str(path))
    H, M, Mp = prob.H, prob.M, prob.Mp
    start = time.perf_counter()
    into = maps_into(H, M, Mp)
    cfg = SessionConfig(d=prob.d).merged(prob.raw.get("caps"))
    if skip_k0:
        k0 = "-"
    else:
        k0 = k0_uniform(H, M, Mp, cfg.nondeg_cap).order
        k0 = "degenerate" if k0 is None else k0
    v = rigidity_verdict(H, M, Mp, cfg.degree_cap)
    hol = f"{v.hol_dim}{'' if v.hol.exact else '*'}"
    return [path.stem, str(into), str(k0), hol, str(v.aut_dim), str(v.stabilizer_dim),
            str(v.complement_dim), "rigid" if v.rigid else "not certified", f"{time.perf_counter() - start:.1f}"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data", default=str(ROOT / "data"))
    ap.add_argument("--skip-k0", action="store_true", help="do not compute the uniform k0 column")
    args = ap.parse_args()
    data = Path(args.data)

    header = ["example", "maps_into", "k0", "dim hol", "dim aut", "stab", "compl", "verdict", "sec"]
    rows = [map_row(data / f"{name}.json", args.skip_k0) for name in MAP_EXAMPLES]
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    for r in [header] + rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    print("(* hol truncated at the degree cap; degenerate = no k0 up to the nondegeneracy cap)")
    print()
    for name in SEGRE_EXAMPLES:
        prob = load_problem(str(data / f"{name}.json"))
        k0 = int(prob.raw["segre"].get("k0", 1))
        print(f"{name:16s} {minimality(prob.segre, 3, k0=k0).summary()}")


if __name__ == "__main__":
    main()
