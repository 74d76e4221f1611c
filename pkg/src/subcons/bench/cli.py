"""``subcons`` command line: gen, solve, verify, report.

Exit codes: 0 ok, 1 usage or input error, 2 infeasible, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from ..errors import InfeasibleError, SchemaError, SubconsError
from ..exact import BRUTE_FORCE_LIMIT, ExactReferee
from ..generators import GENERATORS, generate
from ..instance import InstanceSpec, ProblemInstance, validate_json
from ..oracles import FunctionOracle
from ..sets import TOL
from .algorithms import REGISTRY, SolverOptions, default_algorithms, run
from .verify import VERIFY_LIMIT, verify_instance

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3
RESULTS_FORMAT = "subcons-results/1"
RANDOM_DRAWS = 100
ROW_FIELDS = [
    "instance", "seed", "problem", "algorithm", "bound", "bound_frac", "f_value", "g_value",
    "feasible", "iterations", "wall_time_ns", "sigma", "rho", "cert_flags", "solution",
    "brute_force_opt", "ratio", "error",
]


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _param(text: str) -> tuple[str, Any]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        return key, json.loads(value)
    except json.JSONDecodeError:
        return key, value


def _finite(x):
    if x is None:
        return None
    x = float(x)
    return x if np.isfinite(x) else None


def instance_id(path: str | Path) -> str:
    return Path(path).stem


# ---------------------------------------------------------------- gen

def cmd_gen(args) -> int:
    params = dict(args.param or [])
    if args.budget_frac is not None:
        params["budget_frac"] = args.budget_frac[0]
    if args.cover_frac is not None:
        params["cover_frac"] = args.cover_frac[0]
    spec = generate(args.kind, args.n, args.seed, **params)
    spec.problem_instance()  # reject degenerate bounds before writing
    if args.out:
        spec.write(args.out)
    else:
        sys.stdout.write(spec.to_json())
    return EXIT_OK


# ---------------------------------------------------------------- solve

def resolve_bounds(args, f: FunctionOracle, g: FunctionOracle, spec: InstanceSpec) -> tuple[str, list[tuple[float, float | None]]]:
    if args.budget_frac is not None and args.cover_frac is not None:
        raise UsageError("give either --budget-frac or --cover-frac, not both")
    if args.budget_frac is not None:
        top, problem, fracs = f._value(f.full), "scsk", args.budget_frac
    elif args.cover_frac is not None:
        top, problem, fracs = g._value(g.full), "scsc", args.cover_frac
    else:
        if "cover" in spec.bound:
            return "scsc", [(float(spec.bound["cover"]), None)]
        return "scsk", [(float(spec.bound["budget"]), None)]
    if not fracs:
        raise UsageError("the bound sweep is empty")
    out = []
    for frac in fracs:
        value = frac * top
        kw = {"budget": value} if problem == "scsk" else {"cover": value}
        try:
            ProblemInstance(f, g, **kw)
        except SubconsError as exc:
            raise UsageError(f"bound fraction {frac!r}: {exc}") from None
        out.append((value, frac))
    return problem, out


def _random_baseline(tag: str, row: dict, f, g, seed: int, problem: str, bound: float) -> dict:
    """Mean values of uniform random sets with the solver's cardinality."""
    k = len(row["solution"])
    key = zlib.crc32(f"{tag}|{bound!r}".encode())
    rng = np.random.default_rng([seed, key])
    t0 = time.monotonic_ns()
    fs, gs = [], []
    for _ in range(RANDOM_DRAWS):
        bits = 0
        for j in rng.choice(f.n, size=k, replace=False):
            bits |= 1 << int(j)
        fs.append(f._value(bits))
        gs.append(g._value(bits))
    fm, gm = float(np.mean(fs)), float(np.mean(gs))
    if problem == "scsk":
        feasible = bool(all(v <= bound + TOL for v in fs))
    else:
        feasible = bool(all(v >= bound - TOL for v in gs))
    return {
        **row, "algorithm": f"random:{tag}", "f_value": fm, "g_value": gm, "feasible": feasible,
        "iterations": RANDOM_DRAWS, "wall_time_ns": time.monotonic_ns() - t0, "sigma": None,
        "rho": None, "cert_flags": [], "solution": None,
    }


def solve_rows(spec: InstanceSpec, name: str, problem: str, bounds, algos: Sequence[str],
               opts: SolverOptions, seed: int, baseline: bool, threads: int = 1) -> list[dict]:
    f, g = spec.build()
    referee = ExactReferee(f, g) if f.n <= BRUTE_FORCE_LIMIT else None
    opt_values = {}
    for b, _ in bounds:
        if referee is None:
            opt_values[b] = None
        else:
            try:
                opt_values[b] = referee.scsk_value(b) if problem == "scsk" else referee.scsc_value(b)
            except InfeasibleError:
                opt_values[b] = None

    def one(tag: str, bound: float, frac: float | None) -> list[dict]:
        row = {"instance": name, "seed": spec.seed, "problem": problem, "algorithm": tag,
               "bound": bound, "bound_frac": frac, "brute_force_opt": opt_values[bound], "error": None}
        t0 = time.monotonic_ns()
        try:
            if tag == "brute_force" and referee is not None:
                rep = referee.scsk(bound) if problem == "scsk" else referee.scsc(bound)
            else:
                rep = run(tag, problem, f, g, bound, opts)
        except SubconsError as exc:
            row.update(f_value=None, g_value=None, feasible=None, iterations=None,
                       wall_time_ns=time.monotonic_ns() - t0, sigma=None, rho=None, cert_flags=[],
                       solution=None, ratio=None, error=f"{type(exc).__name__}: {exc}")
            return [row]
        row.update(
            f_value=rep.f_value, g_value=rep.g_value, feasible=rep.feasible, iterations=rep.iterations,
            wall_time_ns=time.monotonic_ns() - t0, sigma=_finite(rep.certificate.sigma),
            rho=_finite(rep.certificate.rho), cert_flags=list(rep.certificate.flags),
            solution=rep.solution.elements(),
        )
        rows = [row]
        if baseline and tag != "brute_force":
            rows.append(_random_baseline(tag, row, f, g, seed, problem, bound))
        for r in rows:
            opt = r["brute_force_opt"]
            val = r["g_value"] if problem == "scsk" else r["f_value"]
            r["ratio"] = _finite(val / opt) if opt else None
        return rows

    jobs = [(tag, b, frac) for b, frac in bounds for tag in algos]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda job: one(*job), jobs))
    else:
        chunks = [one(*job) for job in jobs]
    rows = [r for chunk in chunks for r in chunk]
    return sort_rows(rows)


def sort_rows(rows: list[dict]) -> list[dict]:
    return sorted(rows, key=lambda r: (r["instance"], r["algorithm"], r["bound"]))


def write_results(rows: list[dict], path: str | None, fmt: str, config: dict | None = None) -> None:
    doc = {"format": RESULTS_FORMAT, "config": config or {}, "rows": rows}
    validate_json(doc, "results.schema.json")
    if fmt == "json":
        text = json.dumps(doc, indent=1, allow_nan=False) + "\n"
        if path:
            Path(path).write_text(text)
        else:
            sys.stdout.write(text)
        return
    handle = open(path, "w", newline="") if path else sys.stdout
    try:
        write_csv(rows, handle)
    finally:
        if path:
            handle.close()


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, list):
        return " ".join(str(x) for x in v)
    if isinstance(v, float):
        return repr(v)
    return v


def write_csv(rows: list[dict], handle) -> None:
    w = csv.writer(handle, lineterminator="\n")
    w.writerow(ROW_FIELDS)
    for r in rows:
        w.writerow([_csv_cell(r.get(k)) for k in ROW_FIELDS])


def _threads() -> int:
    raw = os.environ.get("SUBCONS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"SUBCONS_THREADS must be an integer, got {raw!r}") from None


def cmd_solve(args) -> int:
    if not args.instance:
        raise UsageError("--instance is required")
    spec = InstanceSpec.read(args.instance)
    f, g = spec.build()
    problem, bounds = resolve_bounds(args, f, g, spec)
    algos = args.algo or default_algorithms(problem, f) + ["random"]
    baseline = "random" in algos
    algos = [a for a in algos if a != "random"]
    if not algos:
        raise UsageError("at least one algorithm is required")
    for a in algos:
        if a not in REGISTRY[problem]:
            raise UsageError(f"unknown {problem} algorithm {a!r}; choose from {sorted(REGISTRY[problem])}")
    opts = SolverOptions(args.eps, args.max_iters, args.enumeration, args.bound_variant)
    rows = solve_rows(spec, instance_id(args.instance), problem, bounds, algos, opts, args.seed,
                      baseline, _threads())
    config = {"algorithms": algos, "baseline": baseline, "eps": args.eps, "max_iters": args.max_iters,
              "enumeration": args.enumeration, "bound_variant": args.bound_variant, "seed": args.seed}
    write_results(rows, args.out, args.format, config)
    errors = [r["error"] for r in rows if r["error"]]
    for e in errors:
        print(f"warning: {e}", file=sys.stderr)
    if any(e.startswith("InfeasibleError") for e in errors):
        return EXIT_INFEASIBLE
    return EXIT_OK


# ---------------------------------------------------------------- verify

def cmd_verify(args) -> int:
    if not args.instance:
        raise UsageError("--instance is required")
    spec = InstanceSpec.read(args.instance)
    f, g = spec.build()
    if f.n > VERIFY_LIMIT:
        raise UsageError(f"verify needs n <= {VERIFY_LIMIT}, got {f.n}")
    opts = SolverOptions(args.eps, args.max_iters, args.enumeration, args.bound_variant)
    res = verify_instance(f, g, args.trials, args.seed, opts)
    if res.passed:
        print(f"PASS {instance_id(args.instance)}: {res.checked} checks")
        return EXIT_OK
    print(f"FAIL {instance_id(args.instance)}: {res.failures[0]}")
    return EXIT_VERIFY


# ---------------------------------------------------------------- report

def read_results(path: str | Path) -> list[dict]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not a JSON results file ({exc})") from None
    validate_json(doc, "results.schema.json")
    return doc["rows"]


def plot_data(rows: list[dict]) -> dict:
    """One series per (instance, problem, algorithm): x = bound, y = objective value."""
    series: dict[tuple, dict] = {}
    for r in rows:
        if r["error"]:
            continue
        key = (r["instance"], r["problem"], r["algorithm"])
        s = series.setdefault(key, {"instance": key[0], "problem": key[1], "algorithm": key[2],
                                    "y_field": "g_value" if key[1] == "scsk" else "f_value",
                                    "x": [], "y": []})
        s["x"].append(r["bound"])
        s["y"].append(r[s["y_field"]])
    return {"series": [series[k] for k in sorted(series)]}


def cmd_report(args) -> int:
    rows = []
    for path in args.results:
        rows.extend(read_results(path))
    rows = sort_rows(rows)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(rows, fh)
    else:
        write_csv(rows, sys.stdout)
    if args.plot_data:
        Path(args.plot_data).write_text(json.dumps(plot_data(rows), indent=1, allow_nan=False) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = Parser(prog="subcons", description="Submodular cover and knapsack benchmark harness")
    sub = p.add_subparsers(dest="command", required=True, parser_class=Parser)

    def common(sp):
        sp.add_argument("--config", help="JSON file of option defaults (flags override it)")
        sp.add_argument("--instance", help="instance JSON file")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--eps", type=float, default=0.05)
        sp.add_argument("--max-iters", type=int, default=50)
        sp.add_argument("--enumeration", choices=["none", "triples"], default="none")
        sp.add_argument("--bound-variant", choices=["m1", "m2"], default="m2")

    g = sub.add_parser("gen", help="write a seeded synthetic instance")
    g.add_argument("--config")
    g.add_argument("--kind", required=True, choices=sorted(GENERATORS))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--param", type=_param, action="append", metavar="KEY=VALUE",
                   help="generator parameter, e.g. alpha=0.5 or x2=5")
    g.add_argument("--budget-frac", type=_floats)
    g.add_argument("--cover-frac", type=_floats)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run algorithms over a bound sweep")
    common(s)
    s.add_argument("--algo", type=lambda t: [a for a in t.split(",") if a],
                   help="comma-separated algorithm tags; 'random' adds the random baseline")
    s.add_argument("--budget-frac", type=_floats, help="knapsack budgets as fractions of f(V)")
    s.add_argument("--cover-frac", type=_floats, help="cover levels as fractions of g(V)")
    s.add_argument("--out")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="property and certificate checks against brute force")
    common(v)
    v.add_argument("--trials", type=int, default=20)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="merge result files into CSV and plot data")
    r.add_argument("results", nargs="+")
    r.add_argument("--out", help="CSV output (default stdout)")
    r.add_argument("--plot-data", help="plot-data JSON output")
    r.set_defaults(func=cmd_report)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    path = getattr(args, "config", None)
    if not path:
        return args
    try:
        cfg = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in sub._actions}
    extra = sorted(set(k.replace("-", "_") for k in cfg) - known)
    if extra:
        raise UsageError(f"unknown config keys: {extra}")
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest in ("budget_frac", "cover_frac") and not isinstance(value, list):
            value = [value]
        if dest == "algo" and isinstance(value, str):
            value = [a for a in value.split(",") if a]
        sub.set_defaults(**{dest: value})
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config(parser, argv)
        return args.func(args)
    except UsageError as exc:
        print(f"subcons: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"subcons: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (SubconsError, OSError) as exc:
        print(f"subcons: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
