"""Command-line interface: rope reports, sweeps, and theorem verification.

Exit codes: 0 success, 1 mathematical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .complexes import rope_resolution
from .errors import RopelabError
from .families import Classification, classify, component_dim, dim_V_alpha, dim_W_beta, minimal_types
from .fields import make_field
from .graded import GradedMap
from .normal import double_line_formula, h0_normal
from .rope import (
    Rope,
    betti_table,
    hilbert_function,
    h0_structure,
    random_double_line,
    random_rope,
    rao_function,
    regularity,
    rope_from_B,
    rope_from_json,
    rope_to_json,
)
from .suites import SUITES


@dataclass(frozen=True)
class RunConfig:
    command: str
    characteristic: int = 0
    seed: int = 0
    samples: int = 10
    fmt: str = "pretty"
    desk_bound: int | None = None


def _parse_ints(text: str):
    return tuple(int(x) for x in text.split(",") if x != "")


def _rope_report(rope: Rope, fmt: str) -> str:
    window = range(-max(rope.alpha) - 1, max(rope.beta) + 3)
    rows = [
        (j, hilbert_function(rope, j), rao_function(rope, j), h0_structure(rope, j))
        for j in window
    ]
    bt = betti_table(rope)
    data = {
        "n": rope.n,
        "degree": rope.degree,
        "genus": rope.genus,
        "k": rope.k,
        "alpha": list(rope.alpha),
        "beta": list(rope.beta),
        "nondegenerate": rope.nondegenerate,
        "regularity": regularity(rope) if rope.nondegenerate else None,
        "tables": [
            {"j": j, "h_C": h, "rao": p, "h0_OC": s} for (j, h, p, s) in rows
        ],
        "betti": [{"i": i, "degree": d, "mult": m} for (i, d, m) in bt.rows()],
    }
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True)
    lines = [
        f"rope in P^{rope.n}: degree {rope.degree}, genus {rope.genus}, k={rope.k}",
        f"right type alpha = {rope.alpha}   left type beta = {rope.beta}",
        f"nondegenerate: {rope.nondegenerate}"
        + (f"   regularity: {data['regularity']}" if data["regularity"] is not None else ""),
        "",
        "  j   h_C  rao  h0(O_C(j))",
    ]
    for j, h, p, s in rows:
        lines.append(f"{j:3d} {h:5d} {p:4d} {s:7d}")
    lines.append("")
    lines.append("Betti table (homological index, generator degree, multiplicity):")
    for i, d, m in bt.rows():
        lines.append(f"  G_{i}: degree {d} x {m}")
    return "\n".join(lines)


def cmd_rope(args) -> int:
    field = make_field(args.char)
    if args.action == "new":
        with open(args.B) as fh:
            obj = json.load(fh)
        if "B" in obj:
            rope = rope_from_json(obj)
        else:
            B = GradedMap.from_json(field, obj)
            rope = rope_from_B(args.n, B, field)
    else:  # random
        if args.alpha is None:
            raise SystemExit("--alpha required for rope random")
        rope = random_rope(args.n, _parse_ints(args.alpha), field, seed=args.seed)
    print(_rope_report(rope, args.format))
    if args.save:
        with open(args.save, "w") as fh:
            json.dump(rope_to_json(rope), fh, indent=1)
        print(f"saved rope to {args.save}")
    if args.dump_resolution:
        c = rope_resolution(rope, bound=args.desk_bound, allow_degenerate=True)
        with open(args.dump_resolution, "w") as fh:
            json.dump(c.to_json(), fh)
        print(f"wrote resolution to {args.dump_resolution}")
    return 0


def _run_suite(name: str, kwargs) -> int:
    fn = SUITES[name]
    import inspect

    sig = inspect.signature(fn)
    accepted = {k: v for k, v in kwargs.items() if k in sig.parameters and v is not None}
    results = fn(**accepted)
    failed = 0
    for rname, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] {rname}"
        if detail and not ok:
            line += f"  ({detail})"
        print(line)
        failed += not ok
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; choose from {sorted(SUITES)}", file=sys.stderr)
        return 2
    kwargs = {}
    if args.n_max is not None:
        kwargs["n_values"] = tuple(range(3, args.n_max + 1))
        kwargs["n_max"] = args.n_max
    if args.g_min is not None:
        kwargs["g_values"] = tuple(range(-1, args.g_min - 1, -1))
    if args.chars is not None:
        kwargs["chars"] = _parse_ints(args.chars)
    kwargs["samples"] = args.samples
    kwargs["seed"] = args.seed
    return _run_suite(args.suite, kwargs)


def cmd_normal(args) -> int:
    if args.action == "h0":
        with open(args.rope) as fh:
            rope = rope_from_json(json.load(fh))
        sec = h0_normal(rope)
        print(f"h0(N_C) = {sec.h0}   (nullity {len(sec.basis)} + free {sec.free_params})")
        print(f"condition 5.8 on the basis: {sec.condition58}")
        if args.basis:
            for idx, rec in enumerate(sec.basis):
                parts = []
                for key, poly in sorted(rec.p.items()):
                    if not poly.is_zero:
                        parts.append(f"P[{key[0]}{key[1]}]={poly.text()}")
                for s, poly in sorted(rec.ps.items()):
                    if not poly.is_zero:
                        parts.append(f"P^{s + 1}={poly.text()}")
                for key, poly in sorted(rec.q.items()):
                    if not poly.is_zero:
                        parts.append(f"Q[{key[1]}{key[2]}]_{key[0]}={poly.text()}")
                print(f"  basis[{idx}]: " + ("; ".join(parts) if parts else "0"))
        return 0
    # sweep
    chars = _parse_ints(args.chars)
    rows = []
    for ch in chars:
        K = make_field(ch)
        for n in range(3, args.n + 1):
            for g in range(-1, args.g_min - 1, -1):
                for s in range(args.samples):
                    seed = args.seed + 1000 * s + 10 * n - g
                    rope = random_double_line(n, g, K, seed=seed)
                    sec = h0_normal(rope)
                    rows.append((
                        n, 2, g, ch, "|".join(str(b) for b in rope.beta), seed,
                        sec.h0, double_line_formula(n, g, ch), sec.condition58,
                    ))
    header = ("n", "d", "g", "char", "type", "seed", "h0", "expected", "cond58")
    if args.format == "json":
        print(json.dumps([dict(zip(header, r)) for r in rows], indent=1))
    else:
        print(",".join(header))
        for r in rows:
            print(",".join(str(x) for x in r))
    bad = [r for r in rows if r[6] != r[7]]
    return 1 if bad else 0


def cmd_families(args) -> int:
    if args.action == "verify":
        mapping = {"6.11": "double-lines", "6.13": "thm613", "6.9": "rho-min"}
        if args.theorem not in mapping:
            print(f"unknown theorem {args.theorem!r}; choose from {sorted(mapping)}", file=sys.stderr)
            return 2
        return _run_suite(mapping[args.theorem], {"seed": args.seed, "samples": args.samples})
    # table
    n, d, g = args.n, args.d, args.g
    k = n - d
    amin, bmin = minimal_types(n, k, g)
    cls = classify(n, d, g, args.char)
    header = ("n", "d", "g", "char", "alpha_min", "beta_min", "dim_V_alpha_min",
              "dim_W_beta_min", "component_dim", "generically_smooth", "nonreduced",
              "general_member")
    row = (
        n, d, g, args.char,
        "|".join(map(str, amin.values)), "|".join(map(str, bmin.values)),
        dim_V_alpha(n, amin.values), dim_W_beta(n, bmin.values),
        cls.component_dim, cls.generically_smooth, cls.nonreduced, cls.general_member,
    )
    if args.format == "json":
        print(json.dumps(dict(zip(header, row)), indent=1, default=str))
    else:
        print(",".join(header))
        print(",".join(str(x) for x in row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ropelab",
                                 description="exact invariants of ropes on a line")
    sub = ap.add_subparsers(dest="command", required=True)

    p_rope = sub.add_parser("rope", help="build a rope and print its invariants")
    p_rope.add_argument("action", choices=["new", "random"])
    p_rope.add_argument("--n", type=int, required=True)
    p_rope.add_argument("--B", help="JSON file with the matrix B (rope new)")
    p_rope.add_argument("--alpha", help="comma-separated right type (rope random)")
    p_rope.add_argument("--char", type=int, default=0)
    p_rope.add_argument("--seed", type=int, default=0)
    p_rope.add_argument("--save", help="write the rope as JSON")
    p_rope.add_argument("--dump-resolution", help="write the ideal resolution as JSON")
    p_rope.add_argument("--desk-bound", type=int, default=None)
    p_rope.add_argument("--format", choices=["pretty", "json"], default="pretty")
    p_rope.set_defaults(fn=cmd_rope)

    p_ver = sub.add_parser("verify", help="run a theorem-verification suite")
    p_ver.add_argument("--suite", required=True)
    p_ver.add_argument("--n-max", type=int, default=None)
    p_ver.add_argument("--g-min", type=int, default=None)
    p_ver.add_argument("--chars", default=None)
    p_ver.add_argument("--samples", type=int, default=None)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(fn=cmd_verify)

    p_nrm = sub.add_parser("normal", help="normal-sheaf sections")
    p_nrm.add_argument("action", choices=["h0", "sweep"])
    p_nrm.add_argument("--rope", help="rope JSON file (h0)")
    p_nrm.add_argument("--basis", action="store_true")
    p_nrm.add_argument("--n", type=int, default=5)
    p_nrm.add_argument("--g-min", type=int, default=-4)
    p_nrm.add_argument("--chars", default="0,2,3")
    p_nrm.add_argument("--samples", type=int, default=3)
    p_nrm.add_argument("--seed", type=int, default=0)
    p_nrm.add_argument("--format", choices=["csv", "json"], default="csv")
    p_nrm.set_defaults(fn=cmd_normal)

    p_fam = sub.add_parser("families", help="parameter spaces and classification")
    p_fam.add_argument("action", choices=["table", "verify"])
    p_fam.add_argument("--n", type=int)
    p_fam.add_argument("--d", type=int)
    p_fam.add_argument("--g", type=int)
    p_fam.add_argument("--char", type=int, default=0)
    p_fam.add_argument("--theorem")
    p_fam.add_argument("--samples", type=int, default=None)
    p_fam.add_argument("--seed", type=int, default=0)
    p_fam.add_argument("--format", choices=["csv", "json"], default="csv")
    p_fam.set_defaults(fn=cmd_families)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (RopelabError, OSError, json.JSONDecodeError, KeyError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
