"""Command-line interface.

Subcommands: ``measure``, ``compare``, ``scan``, ``figure``, ``extremal`` and
``sample``.  Results go to standard output as one JSON object or as CSV;
diagnostics go to standard error.

Exit codes: 0 success, 2 parse error, 3 state invariant violated,
4 parameter out of range, 5 verification failure.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import measures, ordering, sampler, states
from .errors import EntanglementError, InvalidState, NotOrthogonal, NotSeparable, ParamOutOfRange

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_STATE = 3
EXIT_PARAM = 4
EXIT_VERIFY = 5

DOC_FORMAT = 1
MEASURE_COLUMNS = ("concurrence", "negativity", "eof", "log_negativity")
FAMILY_PARAMS = ("p", "q", "nprime", "cref", "nref")
FIGURE_REFERENCES = tuple(round(0.1 * k, 1) for k in range(1, 10))
GAP_TOL = 1e-6
WITNESS_TOL = 1e-9


class ParseError(Exception):
    pass


class VerificationFailure(Exception):
    pass


def fmt(x):
    """At most 9 significant digits, shortest form, no negative zero."""
    s = f"{float(x):.9g}"
    return "0" if s == "-0" else s


# -- state documents ---------------------------------------------------------

def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    return float(x)


def parse_state_document(doc):
    """Turn a decoded state document into a :class:`DensityMatrix`.

    ``{"format": 1, "rho": [[[re, im], ...], ...]}`` or
    ``{"format": 1, "family": NAME, "params": {NAME: NUMBER, ...}}``.
    """
    if not isinstance(doc, dict):
        raise ParseError("state document must be a JSON object")
    if doc.get("format") != DOC_FORMAT or isinstance(doc.get("format"), bool):
        raise ParseError(f'state document needs "format": {DOC_FORMAT}')
    has_rho, has_family = "rho" in doc, "family" in doc
    if has_rho == has_family:
        raise ParseError('state document needs exactly one of "rho" or "family"')
    if has_rho:
        if "params" in doc:
            raise ParseError('"params" only accompanies "family"')
        rows = doc["rho"]
        if not (isinstance(rows, list) and len(rows) == 4
                and all(isinstance(r, list) and len(r) == 4 for r in rows)):
            raise ParseError('"rho" must be a 4x4 nested array')
        m = np.empty((4, 4), dtype=complex)
        for i, row in enumerate(rows):
            for j, z in enumerate(row):
                if not (isinstance(z, list) and len(z) == 2):
                    raise ParseError(f"rho[{i}][{j}] must be a [re, im] pair")
                m[i, j] = complex(_number(z[0], f"rho[{i}][{j}]"), _number(z[1], f"rho[{i}][{j}]"))
        return states.DensityMatrix(m)
    family = doc["family"]
    if not isinstance(family, str):
        raise ParseError('"family" must be a string')
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ParseError('"params" must be an object')
    values = {str(k): _number(v, f"params.{k}") for k, v in params.items()}
    return states.FamilySpec(family, values).build()


def load_state(source):
    """Read a state document from a path, ``-`` (stdin) or inline JSON."""
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    return parse_state_document(doc)


def _family_params(args):
    return {k: getattr(args, k) for k in FAMILY_PARAMS if getattr(args, k, None) is not None}


def _state_from_args(args):
    if args.state and args.family:
        raise ParseError("give either --state or --family, not both")
    if args.state:
        if len(args.state) != 1:
            raise ParseError("measure takes a single --state")
        return load_state(args.state[0])
    if args.family:
        params = {}
        for k, v in _family_params(args).items():
            params[k] = _single(v, k)
        return states.FamilySpec(args.family, params).build()
    raise ParseError("need --state FILE or --family NAME")


def _single(value, name):
    lo, hi = _parse_range(value, name)
    if lo != hi:
        raise ParseError(f"--{name} takes a single value here, got {value!r}")
    return lo


def _parse_range(value, name):
    try:
        parts = [float(x) for x in str(value).split(":")]
    except ValueError as exc:
        raise ParseError(f"--{name}: cannot parse {value!r}") from exc
    if len(parts) == 1:
        return parts[0], parts[0]
    if len(parts) == 2:
        return parts[0], parts[1]
    raise ParseError(f"--{name}: expected VALUE or START:STOP, got {value!r}")


def emit_json(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def emit_csv(header, rows):
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(x) if isinstance(x, (float, int, np.floating)) else x for x in row])


# -- subcommands ---------------------------------------------------------------

def cmd_measure(args):
    rho = _state_from_args(args)
    emit_json(measures.measure_all(rho).as_dict())


def cmd_compare(args):
    if not args.state or len(args.state) != 2:
        raise ParseError("compare needs exactly two --state arguments")
    rho1, rho2 = (load_state(s) for s in args.state)
    emit_json(ordering.compare(rho1, rho2).as_dict())


def _linspace(lo, hi, steps):
    if steps < 1:
        raise ParamOutOfRange("--steps must be positive")
    if steps == 1 or lo == hi:
        return [lo]
    return [float(x) for x in np.linspace(lo, hi, steps)]


def _measure_rows(points, build):
    mats = np.array([build(pt).matrix for pt in points])
    table = measures.measure_table(mats)
    return [[table[k][i] for k in MEASURE_COLUMNS] for i in range(len(points))]


def scan_rows(family, ranges, steps):
    """Header and rows of a family sweep.

    ``ranges`` maps parameter names to ``(start, stop)``; missing swept
    parameters fall back to the family's full admissible range.
    """
    if family not in states.FAMILIES:
        raise ParamOutOfRange(f"unknown family {family!r}")
    ranges = dict(ranges)
    if family in ("werner", "horodecki", "pure"):
        axes = {"p": ranges.pop("p", (0.0, 1.0))}
    elif family == "xy":
        axes = {"p": ranges.pop("p", states.XY_RANGE)}
    elif family == "xv":
        axes = {"p": ranges.pop("p", states.XV_RANGE)}
    elif family == "xz":
        axes = {"q": ranges.pop("q", (0.0, 1.0))}
    elif "nprime" in ranges:
        n = _fixed(ranges.pop("nprime"), "nprime")
        axes = {"p": ranges.pop("p", states.q_prime_range(n)), "nprime": (n, n)}
    elif "cref" in ranges or "nref" in ranges:
        c = _fixed(ranges.pop("cref", (math.nan, math.nan)), "cref")
        n = _fixed(ranges.pop("nref", (math.nan, math.nan)), "nref")
        axes = {"p": ranges.pop("p", states.q_triple_prime_range(n, c)),
                "cref": (c, c), "nref": (n, n)}
    else:
        axes = {"p": ranges.pop("p", (0.0, 1.0)), "q": ranges.pop("q", (0.0, 1.0))}
    if ranges:
        raise ParamOutOfRange(f"family {family!r} does not take {sorted(ranges)}")
    names = list(axes)
    grids = [_linspace(*axes[n], steps) for n in names]
    points = [dict(zip(names, combo)) for combo in _product(grids)]
    specs = [states.FamilySpec(family, pt) for pt in points]
    header = list(names)
    extra_q = family == "mixture" and "q" not in names
    if extra_q:
        header.append("q")
    header += list(MEASURE_COLUMNS)
    measured = _measure_rows(specs, lambda s: s.build())
    rows = []
    for pt, spec, vals in zip(points, specs, measured):
        row = [pt[n] for n in names]
        if extra_q:
            row.append(spec.mixture_q())
        rows.append(row + vals)
    return header, rows


def _fixed(rng, name):
    lo, hi = rng
    if math.isnan(lo):
        raise ParamOutOfRange("anti-ordered scan needs both --cref and --nref")
    if lo != hi:
        raise ParamOutOfRange(f"--{name} must be a single value")
    return lo


def _product(grids):
    if not grids:
        return [()]
    head, *rest = grids
    return [(h,) + tail for h in head for tail in _product(rest)]


def cmd_scan(args):
    ranges = {k: _parse_range(v, k) for k, v in _family_params(args).items()}
    header, rows = scan_rows(args.family, ranges, args.steps)
    emit_csv(header, rows)


def figure_rows(which, resolution):
    res = int(resolution)
    if res < 2:
        raise ParamOutOfRange("--resolution must be at least 2")
    k = states.KAPPA
    if which == "1":
        c = np.linspace(0.0, 1.0, res)
        rows = [["maxneg", "", x, x] for x in c]
        rows += [["minneg", "", x, n] for x, n in zip(c, ordering.lower_bound_values(c))]
        points = {
            "separable": (0.0, 0.0),
            "Y": (k, k),
            "V": (states.SQRT2 / 4.0, states.SQRT2 / 4.0),
            "X": (0.5, k),
            "Z": (0.5, 0.5),
            "bell": (1.0, 1.0),
        }
        rows += [["point", label, x, y] for label, (x, y) in points.items()]
        return ["series", "label", "c", "n"], rows
    if which == "2":
        c = np.linspace(0.0, 1.0, res)
        grid = ordering.delta_grid(res, res)
        return ["c1", "c2", "delta"], [
            [c[i], c[j], grid[i, j]] for i in range(res) for j in range(res)
        ]
    if which in ("3a", "3b", "3c"):
        header = ["reference", "p", "q"] + list(MEASURE_COLUMNS)
        rows = []
        for ref in FIGURE_REFERENCES:
            if which == "3a":
                nprime = ordering.lower_bound_negativity(ref)
                pts = [(p, states.q_prime(nprime, p))
                       for p in _linspace(*states.q_prime_range(nprime), res)]
            elif which == "3b":
                pts = [(ref, q) for q in _linspace(0.0, 1.0, res)]
            else:
                nref = ordering.lower_bound_negativity(ref)
                pts = [(p, states.q_triple_prime(nref, ref, p))
                       for p in _linspace(*states.q_triple_prime_range(nref, ref), res)]
            measured = _measure_rows(pts, lambda pq: states.mixture(*pq))
            rows += [[ref, p, q] + vals for (p, q), vals in zip(pts, measured)]
        return header, rows
    raise ParseError(f"unknown figure {which!r}; expected 1, 2, 3a, 3b or 3c")


def cmd_figure(args):
    header, rows = figure_rows(args.which, args.resolution)
    emit_csv(header, rows)


def extremal_report(grid_steps=1000):
    closed = ordering.extremal_gaps()
    numeric = ordering.numeric_extremal_search(grid_steps)
    checks = []

    def check(name, got, want, tol):
        checks.append({
            "name": name, "value": got, "expected": want,
            "tolerance": tol, "pass": bool(abs(got - want) <= tol),
        })

    check("numeric max_dc", numeric.max_dc, closed.max_dc, GAP_TOL)
    check("numeric max_dn", numeric.max_dn, closed.max_dn, GAP_TOL)
    check("numeric max_delta", numeric.max_delta, closed.max_delta, GAP_TOL)
    witnesses = {}
    labels = {"dc": ("rho_Y", "rho_X"), "dn": ("rho_Z", "rho_X"), "delta": ("rho_V", "rho_X")}
    targets = {"dc": closed.max_dc, "dn": closed.max_dn, "delta": closed.max_delta}
    for key, (a, b) in closed.witnesses.items():
        cmp = ordering.compare(a, b)
        value = {"dc": abs(cmp.delta_c), "dn": abs(cmp.delta_n), "delta": cmp.delta}[key]
        witnesses[key] = {"pair": list(labels[key]), **cmp.as_dict(), "gap": value}
        check(f"witness {key}", value, targets[key], WITNESS_TOL)
    return {
        "closed_form": {"max_dc": closed.max_dc, "max_dn": closed.max_dn,
                        "max_delta": closed.max_delta},
        "numeric": {
            "grid_steps": int(grid_steps),
            "max_dc": numeric.max_dc, "max_dn": numeric.max_dn, "max_delta": numeric.max_delta,
            "argmax_dc": list(numeric.argmax_dc), "argmax_dn": list(numeric.argmax_dn),
            "argmax_delta": list(numeric.argmax_delta),
        },
        "witnesses": witnesses,
        "checks": checks,
        "pass": all(c["pass"] for c in checks),
    }


def cmd_extremal(args):
    report = extremal_report(args.grid_steps)
    emit_json(report)
    if not report["pass"]:
        failed = [c["name"] for c in report["checks"] if not c["pass"]]
        raise VerificationFailure(f"extremal checks failed: {', '.join(failed)}")


def cmd_sample(args):
    config = sampler.SamplerConfig(seed=args.seed, rank=args.rank, pair_count=args.pairs)
    report = sampler.sample_pairs(config, shards=args.shards, workers=args.workers)
    emit_json(report.as_dict())
    if report.band_violations:
        raise VerificationFailure(f"{report.band_violations} sampled states outside the band")


# -- argument parsing ---------------------------------------------------------

def _add_family_flags(p, ranged=False):
    help_suffix = " (VALUE or START:STOP)" if ranged else ""
    p.add_argument("--family", help=f"one of {', '.join(states.FAMILIES)}")
    for name in FAMILY_PARAMS:
        p.add_argument(f"--{name}", metavar="VALUE", help=f"{name}{help_suffix}")


def _uint64(text):
    try:
        v = int(text, 0)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"not a 64-bit unsigned integer: {text!r}")
    return v


def build_parser():
    parser = argparse.ArgumentParser(
        prog="entorder",
        description="Concurrence/negativity ordering of two-qubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="all four measures of one state (JSON)")
    p.add_argument("--state", action="append", metavar="FILE",
                   help="state document: path, '-' for stdin, or inline JSON")
    _add_family_flags(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("compare", help="ordering verdict for two states (JSON)")
    p.add_argument("--state", action="append", metavar="FILE", required=True,
                   help="give twice: first and second state")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("scan", help="family sweep (CSV)")
    _add_family_flags(p, ranged=True)
    p.add_argument("--steps", type=int, default=11)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("figure", help="plot data for the figures (CSV)")
    p.add_argument("which", help="1, 2, 3a, 3b or 3c")
    p.add_argument("--resolution", type=int, default=101)
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("extremal", help="verify the maximal ordering gaps (JSON)")
    p.add_argument("--grid-steps", type=int, default=1000)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("sample", help="Monte Carlo ordering statistics (JSON)")
    p.add_argument("--seed", type=_uint64, default=42)
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--pairs", type=int, default=10000)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "scan" and not args.family:
            parser.error("scan needs --family")
    except SystemExit as exc:
        return exc.code
    try:
        args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidState, NotOrthogonal, NotSeparable) as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return EXIT_STATE
    except ParamOutOfRange as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except EntanglementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
