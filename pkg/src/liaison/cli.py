"""Command-line front end.

    liaison gb FILE NAME [--order ORDER]
    liaison betti FILE NAME [--json]
    liaison link FILE NAME [--seed N] [--mode random|symbolic] [--s S]
    liaison verify (FILE NAME | --suite) [--claims C,...] [--seed N] [--json OUT]

Exit codes: 0 ok, 1 per-ideal errors during verify, 2 parse, 3 precondition,
4 resource cap, 5 bound violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import LiaisonError, ParseError
from .groebner import buchberger
from .ideals import codimension
from .idealfile import read_ideal_file
from .linkage import graded_generic_link, symbolic_residual
from .polyring import MonomialOrder
from .resolution import betti_table, minimal_free_resolution
from .verify import CLAIMS, FAMILIES, SuiteConfig, check_ideal, reports_to_json, run_suite, suite_summary


def _load(path, name):
    try:
        f = read_ideal_file(path)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")
    return f, f[name]


def cmd_gb(args, out):
    _, I = _load(args.file, args.ideal)
    order = MonomialOrder.parse(args.order)
    gb = buchberger(list(I.gens), order, ring=I.ring) if I.gens else None
    for g in (gb.elements if gb else ()):
        print(g.to_string(), file=out)
    return 0


def cmd_betti(args, out):
    _, I = _load(args.file, args.ideal)
    bt = betti_table(minimal_free_resolution(I))
    reg = bt.regularity()
    reg = None if reg == float("-inf") else reg
    if args.json:
        doc = {"ideal": args.ideal, "ring": I.ring.declaration(), "betti": bt.to_json_dict(), "regularity": reg}
        print(json.dumps(doc, sort_keys=True, indent=2), file=out)
    else:
        print(bt.to_text(), file=out)
        print(f"reg R/I = {reg}", file=out)
    return 0


def cmd_link(args, out):
    _, I = _load(args.file, args.ideal)
    if args.mode == "symbolic":
        s = args.s if args.s is not None else codimension(I)
        res = symbolic_residual(I, s)
    else:
        res = graded_generic_link(I, args.seed)
    print(res.to_json(), file=out)
    return 0


def _claims(text):
    claims = tuple(c.strip().upper() for c in text.split(",") if c.strip())
    bad = [c for c in claims if c not in CLAIMS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown claim(s) {', '.join(bad)}; choose from {', '.join(CLAIMS)}")
    return claims


def cmd_verify(args, out):
    if args.suite:
        fams = tuple(args.families) if args.families is not None else FAMILIES
        cfg = SuiteConfig(field=args.field, seed=args.seed, families=fams, claims=args.claims,
                          link_seeds=args.link_seeds)
        reports = run_suite(cfg)
    else:
        if not args.file or not args.ideal:
            raise ParseError("verify needs FILE NAME or --suite")
        f, I = _load(args.file, args.ideal)
        prov = f"lc: {f.lc[args.ideal]}" if args.ideal in f.lc else ""
        reports = [check_ideal(I, args.claims, args.ideal, args.seed, link_seeds=args.link_seeds,
                               provenance=prov)]
    for rep in reports:
        print(rep.summary(), file=out)
        for c, v in rep.verdicts.items():
            if v["status"] != "pass":
                print(f"  {c}: {v['status']} ({v['detail']})", file=out)
    if args.suite:
        print(suite_summary(reports).splitlines()[-1], file=out)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(reports_to_json(reports) + "\n")
    if any(r.violations() for r in reports):
        return 5
    if any(r.errors() for r in reports):
        return 1
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="liaison", description="Regularity bounds and generic linkage for homogeneous ideals.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gb", help="print a reduced Groebner basis")
    g.add_argument("file")
    g.add_argument("ideal")
    g.add_argument("--order", default="grevlex", help="grevlex, lex or elim(k)")
    g.set_defaults(func=cmd_gb)

    b = sub.add_parser("betti", help="print the Betti table and reg R/I")
    b.add_argument("file")
    b.add_argument("ideal")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_betti)

    l = sub.add_parser("link", help="compute a generic link or residual intersection (JSON)")
    l.add_argument("file")
    l.add_argument("ideal")
    l.add_argument("--seed", type=int, default=0)
    l.add_argument("--mode", choices=("random", "symbolic"), default="random")
    l.add_argument("--s", type=int, default=None, help="number of combinations (symbolic mode)")
    l.set_defaults(func=cmd_link)

    v = sub.add_parser("verify", help="check regularity bounds on one ideal or the built-in suite")
    v.add_argument("file", nargs="?")
    v.add_argument("ideal", nargs="?")
    v.add_argument("--suite", action="store_true")
    v.add_argument("--claims", type=_claims, default=CLAIMS)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", metavar="OUT")
    v.add_argument("--families", default=None, help="subset of 'abcde' (suite only)")
    v.add_argument("--field", default="QQ", help="QQ or GF(p) (suite only)")
    v.add_argument("--link-seeds", type=int, default=5)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except LiaisonError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
