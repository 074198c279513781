"""Command-line interface: ``dickinv <subcommand> ...``.

Every subcommand builds a JSON-able payload plus a list of flat rows; the
``--format`` flag picks how they are printed.  Exit status is 0 on success,
1 for usage errors and 2 when a theorem or conjecture check finds a
counterexample.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from typing import Sequence

from . import __version__
from .dickson import norm_poly
from .field import divisors, gaussian_binomial, is_prime, make_field
from .monoid import (
    CapWarning,
    ExponentVector,
    default_cap,
    enumerate_primitive,
    generating_family_tagged,
    to_tilde,
)
from .separating import (
    InvariantSpec,
    eval_invariant,
    separating_set,
    separation_check,
    uij_exponents,
    v_exponents,
    vij_exponents,
)
from .structure import (
    CONJECTURES,
    THEOREMS,
    choose_n,
    classify,
    conjecture_check,
    conjecture_requirements,
    default_jobs,
    theorem_requirements,
    verify_theorem,
)
from .subspace import Subspace, dilation_orbit_reps, enumerate_subspaces, partition_of

EXIT_OK, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# output

def _render(payload: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if not rows:
        return ""
    cols = list(rows[0].keys())
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(v) for k, v in r.items()})
        return buf.getvalue()
    cells = [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _field(args):
    if not is_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    if args.n < 1:
        raise UsageError("n must be positive")
    return make_field(args.p, args.n)


def _check_r(args, lo: int = 1):
    if not lo <= args.r <= args.n:
        raise UsageError(f"need {lo} <= r <= n, got r={args.r}, n={args.n}")


def _parse_basis(ctx, items: Sequence[str]) -> Subspace:
    try:
        codes = [ctx.from_hex(s) for s in items]
    except ValueError as e:
        raise UsageError(str(e)) from None
    V = Subspace.span(ctx, codes)
    if V.rank != len(codes):
        raise UsageError("basis elements are linearly dependent over F_p")
    return V


def _vec_row(v: ExponentVector, tag: str = "") -> dict:
    row = {f"a{i + 1}": x for i, x in enumerate(v.a)}
    row["height"] = v.height
    if tag:
        row["family"] = tag
    return row


def _tilde_row(v: ExponentVector, tag: str = "") -> dict:
    row = {f"t{i + 1}": x for i, x in enumerate(to_tilde(v))}
    if tag:
        row["family"] = tag
    return row


# ---------------------------------------------------------------------------
# subcommands

def cmd_field_info(args):
    ctx = _field(args)
    subs = [{"degree": m, "size": ctx.p ** m} for m in divisors(ctx.n)]
    payload = {
        "p": ctx.p,
        "n": ctx.n,
        "q": ctx.q,
        "modulus": list(ctx.modulus),
        "generator": ctx.hex(ctx.generator()),
        "subfields": subs,
    }
    rows = [{"degree": s["degree"], "size": s["size"]} for s in subs]
    return payload, rows, EXIT_OK


def cmd_subgroups(args):
    ctx = _field(args)
    _check_r(args)
    subs = enumerate_subspaces(ctx, args.r)
    if args.limit is not None:
        shown = subs[: args.limit]
    else:
        shown = subs
    recs = [{"rep": list(V.rows), "basis": V.hex_rows(), "dickson": V.dickson.hex()} for V in shown]
    payload = {
        "p": ctx.p,
        "n": ctx.n,
        "r": args.r,
        "count": len(subs),
        "gaussian_binomial": gaussian_binomial(ctx.n, args.r, ctx.p),
        "subgroups": recs,
    }
    rows = [{"rep": r["rep"], "dickson": r["dickson"]} for r in recs]
    return payload, rows, EXIT_OK


def cmd_orbits(args):
    ctx = _field(args)
    _check_r(args)
    table = dilation_orbit_reps(ctx, args.r)
    recs = table.to_records(with_partition=not args.no_partition)
    payload = {"p": ctx.p, "n": ctx.n, "r": args.r, "orbit_count": len(table), "orbits": recs}
    rows = [{k: v for k, v in rec.items()} for rec in recs]
    return payload, rows, EXIT_OK


def cmd_classify(args):
    ctx = _field(args)
    if args.basis:
        subs = [_parse_basis(ctx, args.basis)]
    else:
        if args.r is None:
            raise UsageError("give --r or --basis")
        _check_r(args)
        subs = dilation_orbit_reps(ctx, args.r).reps
    results = [classify(V).to_dict() for V in subs]
    payload = {"p": ctx.p, "n": ctx.n, "results": results}
    rows = [
        {"rep": r["rep"], "theorem": r["theorem_partition"], "oracle": r["oracle_partition"], "agree": r["agree"]}
        for r in results
    ]
    code = EXIT_OK if all(r["agree"] for r in results) else EXIT_COUNTEREXAMPLE
    return payload, rows, code


def _spec_from_label(p: int, r: int, label: str) -> InvariantSpec:
    label = label.strip()
    try:
        if label.startswith("u") and len(label) == 3:
            return uij_exponents(p, r, int(label[1]), int(label[2]))
        if label.startswith("v") and len(label) == 3:
            return vij_exponents(p, r, int(label[1]), int(label[2]))
        if label.startswith("v") and len(label) == 2:
            return v_exponents(p, r, int(label[1]))
    except ValueError as e:
        raise UsageError(str(e)) from None
    raise UsageError(f"cannot parse invariant label {label!r} (use v<i>, v<i><j> or u<i><j>)")


def cmd_eval(args):
    ctx = _field(args)
    V = _parse_basis(ctx, args.basis)
    r = V.rank
    if args.exponents:
        try:
            a = tuple(int(x) for x in args.exponents.split(","))
            vec = ExponentVector(ctx.p, a)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if len(a) != r:
            raise UsageError(f"exponent vector has length {len(a)} but the basis has rank {r}")
        specs = [InvariantSpec("custom", (), vec, "custom")] if vec.is_solution else None
        if specs is None:
            raise UsageError("exponent vector does not have weight zero")
    elif args.invariant:
        specs = [_spec_from_label(ctx.p, r, lab) for lab in args.invariant]
    else:
        specs = separating_set(ctx.p, r) if 2 <= r <= 11 else []
    F = norm_poly(V) if ctx.p ** r <= 4096 else None
    values = [{"label": s.label, "exponents": list(s.exponents.a), "value": eval_invariant(s, V).hex()} for s in specs]
    payload = {
        "p": ctx.p,
        "n": ctx.n,
        "basis": V.hex_rows(),
        "dickson": V.dickson.hex(),
        "norm_poly_agrees": None if F is None else list(F.dickson().codes) == list(V.dickson.codes),
        "values": values,
    }
    rows = [{"label": v["label"], "value": v["value"]} for v in values]
    return payload, rows, EXIT_OK


def cmd_primitives(args):
    if not is_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    if args.r < 2:
        raise UsageError("r must be at least 2")
    cap = args.cap
    if cap is None:
        if not 3 <= args.r <= 5:
            raise UsageError("--cap is required when r is outside 3..5")
        cap = default_cap(args.p, args.r)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", CapWarning)
        try:
            prims = enumerate_primitive(args.p, args.r, cap)
        except (ValueError, OverflowError) as e:
            raise UsageError(str(e)) from None
    msgs = [str(w.message) for w in caught if issubclass(w.category, CapWarning)]
    for m in msgs:
        print(f"warning: {m}", file=sys.stderr)
    rows = [_tilde_row(v) if args.tilde else _vec_row(v) for v in prims]
    payload = {
        "p": args.p,
        "r": args.r,
        "cap": cap,
        "count": len(prims),
        "distinguished_generator": f"d_{args.r},{args.r} t",
        "warnings": msgs,
        "primitives": [list(v.a) for v in prims],
    }
    return payload, rows, EXIT_OK


def cmd_gen_set(args):
    if not is_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    try:
        fam = generating_family_tagged(args.p, args.r)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rows = [_tilde_row(v, v.label) if args.tilde else _vec_row(v, v.label) for v in fam]
    payload = {
        "p": args.p,
        "r": args.r,
        "count": len(fam),
        "distinguished_generator": f"d_{args.r},{args.r} t",
        "family": [{"a": list(v.a), "height": v.height, "family": v.label} for v in fam],
    }
    return payload, rows, EXIT_OK


def cmd_sep_set(args):
    if not is_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    try:
        specs = separating_set(args.p, args.r)
    except ValueError as e:
        raise UsageError(str(e)) from None
    recs = [s.to_dict() for s in specs]
    payload = {"p": args.p, "r": args.r, "count": len(specs), "invariants": recs}
    rows = [{"label": s["label"], "kind": s["kind"], "exponents": s["exponents"]} for s in recs]
    return payload, rows, EXIT_OK


def cmd_separate(args):
    ctx = _field(args)
    if not 2 <= args.r <= min(ctx.n, 11):
        raise UsageError(f"need 2 <= r <= min(n, 11), got r={args.r}")
    rep = separation_check(ctx, args.r, jobs=args.jobs)
    payload = rep.to_dict()
    rows = [{"rep": rp, "values": vals} for rp, vals in rep.fingerprints]
    code = EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE
    return payload, rows, code


def cmd_verify(args):
    if not is_prime(args.p):
        raise UsageError(f"p={args.p} is not prime")
    if bool(args.theorem) == bool(args.conjecture):
        raise UsageError("give exactly one of --theorem or --conjecture")
    if args.theorem:
        n_min, divs = theorem_requirements(args.theorem)
    else:
        n_min, divs = 5, conjecture_requirements(args.conjecture)
    n = args.n if args.n is not None else choose_n(args.p, n_min, divs)
    if n < n_min or any(n % k for k in divs):
        raise UsageError(f"n={n} does not meet the requirements (n >= {n_min}, divisible by {divs})")
    ctx = make_field(args.p, n)
    if args.theorem:
        if args.sample is not None:
            raise UsageError("--sample applies to conjecture checks only")
        rep = verify_theorem(args.theorem, ctx, jobs=args.jobs)
    else:
        rep = conjecture_check(args.conjecture, ctx, jobs=args.jobs, sample=args.sample, seed=args.seed)
    payload = rep.to_dict()
    rows = [{"case": k, "count": v} for k, v in sorted(rep.tally.items())]
    return payload, rows, EXIT_OK if rep.ok else EXIT_COUNTEREXAMPLE


def load_schema(command: str) -> dict:
    """The bundled JSON schema for ``command``'s ``--format json`` output."""
    from importlib.resources import files

    return json.loads(files("dickinv").joinpath("schemas", f"{command}.json").read_text())


COMMANDS = {
    "field-info": cmd_field_info,
    "subgroups": cmd_subgroups,
    "orbits": cmd_orbits,
    "classify": cmd_classify,
    "eval": cmd_eval,
    "primitives": cmd_primitives,
    "gen-set": cmd_gen_set,
    "sep-set": cmd_sep_set,
    "separate": cmd_separate,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--out", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: $DICKINV_JOBS or 1)")
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="dickinv", description="Dickson invariants of finite subgroups of GF(p^n).")
    parser.add_argument("--version", action="version", version=f"dickinv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help, need_n=True, need_r=True, r_required=True):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.add_argument("--p", type=int, required=True)
        if need_n:
            sp.add_argument("--n", type=int, required=True)
        if need_r:
            sp.add_argument("--r", type=int, required=r_required)
        return sp

    add("field-info", "modulus, generator and subfields of GF(p^n)", need_r=False)
    sp = add("subgroups", "list all rank-r subgroups in canonical form")
    sp.add_argument("--limit", type=int, default=None)
    sp = add("orbits", "dilation orbit representatives with stabilisers and partitions")
    sp.add_argument("--no-partition", action="store_true")
    sp = add("classify", "theorem partition vs brute-force partition", r_required=False)
    sp.add_argument("--basis", nargs="+", metavar="HEX", help="little-endian digit strings")
    sp = add("eval", "evaluate invariants on a basis", need_r=False)
    sp.add_argument("--basis", nargs="+", metavar="HEX", required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--invariant", nargs="+", metavar="LABEL", help="e.g. v1 v12 u23")
    g.add_argument("--exponents", metavar="A1,...,AR")
    sp = add("primitives", "brute-force primitive solutions of the weight equation", need_n=False)
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--tilde", action="store_true")
    sp = add("gen-set", "closed-form generating family (r = 3, 4, 5)", need_n=False)
    sp.add_argument("--tilde", action="store_true")
    add("sep-set", "separating invariants for rank r", need_n=False)
    add("separate", "exhaustive separation check on orbit representatives")
    sp = sub.add_parser("verify", help="exhaustive theorem or conjecture check", parents=[common])
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--n", type=int, default=None, help="default: smallest admissible n")
    sp.add_argument("--theorem", choices=THEOREMS)
    sp.add_argument("--conjecture", choices=CONJECTURES)
    sp.add_argument("--sample", type=int, default=None, help="conjectures: seeded sample instead of all subgroups")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = default_jobs()
    try:
        payload, rows, code = COMMANDS[args.command](args)
    except (UsageError, ValueError) as e:
        print(f"dickinv {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    payload = {"command": args.command, "result": payload}
    text = _render(payload, rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
