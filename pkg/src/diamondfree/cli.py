"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 capacity
error.  Diagnostics go to stderr; data goes to stdout or to --output.
Identical argv and seed produce byte-identical stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__, bounds, chainstats, constructions, kernels
from .errors import CapacityError, DomainError, UnsupportedCaseError, ValidationError
from .lattice import (Family, family_from_json, family_from_text,
                      family_to_json, family_to_text, lubell)
from .posets import parse_poset
from .search import (SearchProblem, check_lambda_free_bound_exhaustive,
                     check_scenario_bound_random, la_exact, max_lubell)

OUTDIR_ENV = "DIAMONDFREE_OUTDIR"


def _fmt(v: float) -> str:
    return format(v, ".15g")


def _open_output(path):
    if path is None or path == "-":
        return sys.stdout, False
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(path):
        path = os.path.join(outdir, path)
    return open(path, "w"), True


def _write(path, text):
    fh, close = _open_output(path)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()


def _parse_elements(text):
    if text in ("{}", ""):
        return ()
    return tuple(int(tok) for tok in text.split(","))


def _load_family(args) -> Family:
    if args.file:
        with open(args.file) as fh:
            text = fh.read()
        if args.file.endswith(".json"):
            return family_from_json(text)
        return family_from_text(text)
    return _construct_family(args)


def _construct_family(args) -> Family:
    name = args.construct
    if name is None:
        raise DomainError("either --file or --construct is required")
    n = args.n
    if n is None:
        raise DomainError("--n is required with --construct")
    if name == "even-odd":
        return constructions.even_odd_family(n)
    if name == "two-middle-levels":
        return constructions.two_middle_levels(n)
    if name == "canonical":
        if args.a_set is None:
            raise DomainError("canonical construction needs --a-set")
        return constructions.canonical_family(n, _parse_elements(args.a_set))
    if name == "product-antichain":
        if args.x_set is None or args.c_set is None:
            raise DomainError("product-antichain needs --x-set and --c-set")
        return constructions.product_antichain(
            n, _parse_elements(args.x_set), _parse_elements(args.c_set))
    raise DomainError(f"unknown construction {name!r}")


def _family_args(sub):
    sub.add_argument("--file", help="family file (text, or .json)")
    sub.add_argument("--construct",
                     choices=["even-odd", "two-middle-levels", "canonical",
                              "product-antichain"])
    sub.add_argument("--n", type=int)
    sub.add_argument("--a-set", help="elements of A, comma separated")
    sub.add_argument("--x-set", help="elements of the first block")
    sub.add_argument("--c-set", help="elements of the second block")


def _load_scenario(path):
    with open(path) as fh:
        return chainstats.scenario_from_text(fh.read())


def _print_checks(checks, out):
    records = [ch.as_record() for ch in checks]
    ok = all(r["pass"] for r in records)
    return records, ok


def _cmd_lubell(args) -> int:
    fam = _load_family(args)
    print(lubell(fam))
    return 0


def _cmd_mnm(args) -> int:
    fam = _load_family(args)
    print(chainstats.count_mnm(fam))
    return 0


def _cmd_construct(args) -> int:
    fam = _construct_family(args)
    text = family_to_json(fam) + "\n" if args.format == "json" else family_to_text(fam)
    _write(args.output, text)
    return 0


def _cmd_verify_props(args) -> int:
    scen = _load_scenario(args.file)
    checks = chainstats.verify_counting_props(scen)
    records, ok = _print_checks(checks, sys.stdout)
    payload = {"case": chainstats.classify_case(scen).value,
               "checks": records, "pass": ok}
    _write(args.output, json.dumps(payload, indent=2) + "\n")
    print(f"{'PASS' if ok else 'FAIL'} ({len(records)} checks)", file=sys.stderr)
    return 0 if ok else 1


def _cmd_derive_children(args) -> int:
    scen = _load_scenario(args.file)
    derivation = chainstats.derive_children(scen)
    records, ok = _print_checks(derivation.checks, sys.stdout)
    payload = {
        "case": chainstats.classify_case(scen).value,
        "children": [{"element": o, "n": ch.n,
                      "family_size": len(ch.family),
                      "alpha": str(st.alpha), "mu": str(st.mu), "c": str(st.c)}
                     for o, ch, st in zip(derivation.child_elements,
                                          derivation.children,
                                          derivation.child_stats)],
        "checks": records,
        "pass": ok,
    }
    _write(args.output, json.dumps(payload, indent=2) + "\n")
    print(f"{'PASS' if ok else 'FAIL'} ({len(records)} checks)", file=sys.stderr)
    return 0 if ok else 1


def _cmd_verify_lemma(args) -> int:
    grid = bounds.GridSpec(x_steps=args.x_steps, c_steps=args.c_steps,
                           a_steps=args.a_steps, atilde_steps=args.atilde_steps)
    report = bounds.verify_bound_properties(grid)
    for r in report.results:
        loc = ",".join(_fmt(v) if isinstance(v, float) else str(v)
                       for v in r.location)
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} "
              f"worst_slack={_fmt(r.worst_slack)} at=({loc}) points={r.points}")
    print(f"{'PASS' if report.passed else 'FAIL'} "
          f"({len(report.results)} properties)", file=sys.stderr)
    return 0 if report.passed else 1


def _cmd_verify_lemma9(args) -> int:
    rep = check_lambda_free_bound_exhaustive(args.n, args.nprime,
                                             samples=args.samples,
                                             seed=args.seed)
    print(f"candidates={rep.candidates} lambda_free={rep.checked} "
          f"failures={rep.failures} worst_slack={_fmt(rep.worst_slack)} "
          f"max_lubell={rep.max_lubell}")
    print("PASS" if rep.passed else "FAIL", file=sys.stderr)
    return 0 if rep.passed else 1


def _cmd_verify_lemma12(args) -> int:
    rep = check_scenario_bound_random(range(args.nmin, args.nmax + 1),
                                      args.samples, args.seed)
    print(f"samples={rep.samples} failures={rep.failures} "
          f"worst_slack={_fmt(rep.worst_slack)}")
    print("PASS" if rep.passed else "FAIL", file=sys.stderr)
    return 0 if rep.passed else 1


def _cmd_search(args) -> int:
    pattern = parse_poset(args.pattern)
    window = None
    if args.levels:
        lo, hi = args.levels.split(":")
        window = (int(lo), int(hi))
    problem = SearchProblem(args.n, pattern, window)
    order_seed = None if args.deterministic else args.seed
    if args.objective == "lubell":
        res = max_lubell(problem, require_empty_set=args.require_empty_set,
                         order_seed=order_seed)
        optimum = str(res.optimum)
    else:
        if args.require_empty_set:
            problem = SearchProblem(args.n, pattern, window, (0,))
        res = la_exact(problem, order_seed=order_seed)
        optimum = res.optimum
    payload = {"optimum": optimum,
               "witness": [list(s) for s in res.witness.member_sets()],
               "nodes": res.nodes}
    _write(args.output, json.dumps(payload) + "\n")
    return 0


def figure_rows(which: str, points: int):
    """Rows (series id, abscissa, value) for the plot-data CSV files."""
    if points < 2:
        raise DomainError("figures need at least 2 points per sweep")
    step = lambda i, hi: hi * i / (points - 1)
    if which == "f-vs-x":
        for i in range(21):
            c = i / 80.0
            for j in range(points):
                x = step(j, 1.0)
                yield (f"c={c:g}", x, bounds.lubell_bound(x, c))
    elif which == "f-vs-c":
        for i in range(21):
            x = i / 20.0
            for j in range(points):
                c = step(j, 1.0)
                yield (f"x={x:g}", c, bounds.lubell_bound(x, c))
    elif which == "final-curve":
        for j in range(points):
            c = step(j, 0.2)
            yield ("final", c, bounds.final_curve(c))
    else:
        raise DomainError(f"unknown figure {which!r}")


def _cmd_bound_curve(args) -> int:
    if args.max:
        cstar, value = bounds.maximize_final_curve()
        agree = (abs(cstar - bounds.FINAL_CURVE_CSTAR) <= 1e-10
                 and abs(value - bounds.FINAL_CURVE_MAX) <= 1e-10)
        print(f"Cstar = {cstar:.12f}")
        print(f"max   = {value:.12f}")
        if not agree:
            print("FAIL golden-section and analytic maximum disagree",
                  file=sys.stderr)
            return 1
        return 0
    if not args.figure:
        raise DomainError("bound-curve needs --max or --figure")
    lines = ["series,abscissa,value"]
    for series, x, v in figure_rows(args.figure, args.points):
        lines.append(f"{series},{_fmt(x)},{_fmt(v)}")
    _write(args.output, "\n".join(lines) + "\n")
    return 0


def _cmd_tail_mass(args) -> int:
    val = bounds.tail_mass(args.n)
    print(f"{val} ({_fmt(float(val))})")
    return 0


def _cmd_mc(args) -> int:
    a_size = None
    if args.a is not None:
        a_size = int(round(args.a * args.n))
    est = chainstats.mc_estimate(args.construct, args.n, args.samples,
                                 args.seed, a_size=a_size)
    print(json.dumps(est))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diamondfree",
        description="Exact computations on diamond-free and related families")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--threads", type=int, default=os.cpu_count(),
                        help="reserved; kernels run single-threaded in this version")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lubell", help="exact Lubell value of a family")
    _family_args(p)
    p.set_defaults(func=_cmd_lubell)

    p = sub.add_parser("mnm", help="exact MNM chain fraction of a family")
    _family_args(p)
    p.set_defaults(func=_cmd_mnm)

    p = sub.add_parser("construct", help="emit a named family")
    _family_args(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify-props", help="check the chain-count identities")
    p.add_argument("--file", required=True, help="scenario file")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_verify_props)

    p = sub.add_parser("derive-children",
                       help="derive child scenarios and check the sum identities")
    p.add_argument("--file", required=True, help="scenario file")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_derive_children)

    p = sub.add_parser("verify-lemma",
                       help="grid verification of the bound functions")
    p.add_argument("--x-steps", type=int, default=201)
    p.add_argument("--c-steps", type=int, default=201)
    p.add_argument("--a-steps", type=int, default=51)
    p.add_argument("--atilde-steps", type=int, default=51)
    p.set_defaults(func=_cmd_verify_lemma)

    p = sub.add_parser("verify-lemma9",
                       help="exhaustive lambda-free bound check")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nprime", type=int, required=True)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify_lemma9)

    p = sub.add_parser("verify-lemma12",
                       help="random scenario bound check")
    p.add_argument("--nmin", type=int, default=3)
    p.add_argument("--nmax", type=int, default=7)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_verify_lemma12)

    p = sub.add_parser("search", help="exact extremal search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--pattern", required=True,
                   help="chain:k, v, lambda, diamond, or fork:r")
    p.add_argument("--levels", help="level window lo:hi")
    p.add_argument("--objective", choices=["card", "lubell"], default="card")
    p.add_argument("--require-empty-set", action="store_true")
    p.add_argument("--seed", type=int, help="exploration-order seed")
    p.add_argument("--deterministic", action="store_true",
                   help="force canonical exploration order")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("bound-curve",
                       help="closing-curve maximum and figure CSV data")
    p.add_argument("--max", action="store_true",
                   help="print the curve maximum and its location")
    p.add_argument("--figure", choices=["f-vs-x", "f-vs-c", "final-curve"])
    p.add_argument("--points", type=int, default=201)
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_bound_curve)

    p = sub.add_parser("tail-mass", help="exact far-level mass")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_tail_mass)

    p = sub.add_parser("mc", help="Monte Carlo chain estimates")
    p.add_argument("--construct", required=True,
                   choices=list(chainstats.MC_GENERATORS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", type=float, help="fraction |A|/n for canonical")
    p.set_defaults(func=_cmd_mc)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ValidationError, UnsupportedCaseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
