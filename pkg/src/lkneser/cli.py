"""``lklab`` command line: construct, verify, color, psi, bounds.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parameter
error, 3 only budget-exceeded outcomes.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
import time
from datetime import datetime, timezone
from itertools import product
from pathlib import Path

from . import coloring, fileio, graphs, homkit, independence as ind, verify
from .errors import BudgetExceeded, InvalidInput, InvalidParameters, LabError, SchemaError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _report(command, params, seed, records, args, wall=None):
    rep = {"schema_version": verify.SCHEMA_VERSION, "command": command, "parameters": params,
           "seed": seed, "summary": verify.summarize(records), "records": records}
    if args.timestamp == "on":
        rep["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
        if wall is not None:
            rep["wall_time"] = round(wall, 4)
    return rep


def _emit(rep, out):
    text = json.dumps(rep, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args):
    fam = args.family
    if fam == graphs.KNESER:
        g = graphs.build_kneser(_need(args.m, "-m"), _need(args.n, "-n"))
    elif fam == graphs.LOCAL_COMPLETE:
        g = graphs.build_local_complete(_need(args.n, "-n"), _need(args.r, "-r"))
    else:
        g = graphs.build_local_kneser(_need(args.n, "-n"), _need(args.r, "-r"), _need(args.t, "-t"))
    prefix = args.out or "_".join([fam] + [f"{k}{v}" for k, v in g.params.items()])
    dimacs, labels = fileio.export_graph(g, prefix)
    print(f"{fam} {g.params}: {len(g)} vertices, {g.n_edges} edges")
    print(f"wrote {dimacs} and {labels}")
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise InvalidParameters(f"missing {flag}")
    return value


def cmd_verify(args):
    t0 = time.perf_counter()
    timing = args.timestamp == "on"
    if args.graph or args.labels:
        if not (args.graph and args.labels):
            raise InvalidParameters("--graph and --labels go together")
        g = fileio.load_graph(args.graph, args.labels)
        if g.family != graphs.LOCAL_KNESER:
            raise SchemaError("verify --graph expects a local-kneser file")
        p = g.params
        records = verify.run_triple((p["n"], p["r"], p["t"], args.seed, timing))
        params = {"graph": str(args.graph), "labels": str(args.labels)}
    else:
        records = verify.run_grid(args.max_n, args.max_vertices, args.seed, args.jobs, timing)
        params = {"max_n": args.max_n, "max_vertices": args.max_vertices}
    rep = _report("verify", params, args.seed, records, args, time.perf_counter() - t0)
    _emit(rep, args.out)
    s = rep["summary"]
    print(f"verify: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped, "
          f"{s['observation']} observations", file=sys.stderr)
    return verify.exit_code(records)


def cmd_color(args):
    n, r, t = args.n, args.r, args.t
    g = ind.local_kneser(n, r, t)
    records = []
    certificate = None
    if args.mode == "random":
        l = coloring.default_l(n, r, t)
        for trial in range(args.trials):
            rng = coloring.trial_rng(args.seed, trial)
            try:
                c = coloring.las_vegas_coloring(n, r, t, rng, args.retry_cap, g)
            except LabError as e:
                records.append({"trial": trial, "status": "fail", "error": str(e)})
                continue
            proper = coloring.is_proper(g, c)
            records.append({"trial": trial, "status": "pass" if proper and c.n_colors_used <= l else "fail",
                            "colors": c.n_colors_used, "bound": l, "attempts": c.meta["attempts"],
                            "uncovered_first_batch": c.meta["uncovered_per_attempt"][0],
                            "proper": proper})
            certificate = certificate or c
    elif args.mode == "projection":
        c = coloring.projection_coloring(g)
        proper = coloring.is_proper(g, c)
        records.append({"status": "pass" if proper and c.n_colors_used <= n - 2 * t + 2 else "fail",
                        "colors": c.n_colors_used, "bound": n - 2 * t + 2, "proper": proper})
        certificate = c
    else:
        c = coloring.chromatic_coloring(g)
        proper = coloring.is_proper(g, c)
        records.append({"status": "pass" if proper else "fail", "chi": c.n_colors_used,
                        "upper_projection": n - 2 * t + 2, "lower_kneser_block": r - 2 * t + 2,
                        "proper": proper})
        certificate = c
    params = {"n": n, "r": r, "t": t, "mode": args.mode, "trials": args.trials}
    rep = _report("color", params, args.seed, records, args)
    if args.format == "csv":
        buf = io.StringIO()
        if certificate is not None:
            coloring.write_coloring_csv(certificate, buf)
        text = buf.getvalue()
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        if args.out and certificate is not None:
            with open(Path(args.out).with_suffix(".csv"), "w") as fh:
                coloring.write_coloring_csv(certificate, fh)
        _emit(rep, args.out)
    return EXIT_FAIL if rep["summary"]["fail"] else EXIT_OK


def cmd_psi(args):
    n, r, t = args.n, args.r, args.t
    g = ind.local_kneser(n, r, t)
    psi, c = coloring.local_chromatic_coloring(g)
    bound = r - 2 * t + 2
    cert = coloring_from_min_star(n, r, t)
    rec = {"status": "pass" if psi <= bound else "fail", "psi": psi, "bound": bound,
           "coincide": psi == bound, "label": "open question (equality is evidence only)",
           "min_star_profile_max": cert}
    rep = _report("psi", {"n": n, "r": r, "t": t}, None, [rec], args)
    _emit(rep, args.out)
    return EXIT_OK if psi <= bound else EXIT_FAIL


def coloring_from_min_star(n, r, t):
    _, prof = homkit.coloring_from_hom(homkit.min_star_map(n, r, t))
    return prof.max


def cmd_bounds(args):
    rows = []
    for n, r, t in product(args.n, args.r, args.t):
        if t >= 1 and r >= 2 * t and n >= r:
            rows.append(coloring.bound_report(n, r, t))
    if not rows:
        raise InvalidParameters("no valid (n, r, t) with n >= r >= 2t >= 2 in the sweep")
    if args.format == "csv":
        cols = ["n", "r", "t", "projection_upper", "random_permutation_upper", "lnn_upper",
                "loglog_upper", "kneser_block_lower", "psi_upper"]
        lines = [",".join(cols)]
        for row in rows:
            lines.append(",".join("" if row.get(k) is None else str(row.get(k)) for k in cols))
        text = "\n".join(lines) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        _emit(_report("bounds", {"n": args.n, "r": args.r, "t": args.t}, None, rows, args), args.out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="lklab", description="Local Kneser graph laboratory")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--timestamp", choices=["on", "off"], default="on",
                        help="'off' drops timestamps and timings for byte-identical reruns")

    c = sub.add_parser("construct", help="write a graph as DIMACS plus a label sidecar")
    c.add_argument("family", choices=graphs.FAMILIES)
    c.add_argument("-m", type=int)
    c.add_argument("-n", type=int)
    c.add_argument("-r", type=int)
    c.add_argument("-t", type=int)
    c.add_argument("--out", help="output prefix; writes PREFIX.dimacs and PREFIX.labels")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run every check over the parameter grid")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--max-n", type=int, default=7)
    v.add_argument("--max-vertices", type=int, default=2000)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--graph", help="verify a single local-kneser DIMACS file instead of the grid")
    v.add_argument("--labels", help="label sidecar for --graph")
    v.add_argument("--format", choices=["json"], default="json")
    common(v)
    v.set_defaults(func=cmd_verify)

    col = sub.add_parser("color", help="colouring experiments on U_t(n,r)")
    for flag in ("-n", "-r", "-t"):
        col.add_argument(flag, type=int, required=True)
    col.add_argument("--mode", choices=["random", "projection", "exact"], default="random")
    col.add_argument("--seed", type=int, default=0)
    col.add_argument("--trials", type=int, default=1)
    col.add_argument("--retry-cap", type=int, default=50)
    col.add_argument("--format", choices=["json", "csv"], default="json")
    common(col)
    col.set_defaults(func=cmd_color)

    ps = sub.add_parser("psi", help="exact local chromatic number against r-2t+2")
    for flag in ("-n", "-r", "-t"):
        ps.add_argument(flag, type=int, required=True)
    common(ps)
    ps.set_defaults(func=cmd_psi)

    b = sub.add_parser("bounds", help="tabulate chromatic bound formulas over a sweep")
    for flag in ("-n", "-r", "-t"):
        b.add_argument(flag, type=int, nargs="+", required=True)
    b.add_argument("--format", choices=["json", "csv"], default="json")
    common(b)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidParameters, InvalidInput) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
