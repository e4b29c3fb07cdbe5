"""Batch command line: every run writes a JSON report that can be re-executed.

    niveau lemmas --n-cap 4
    niveau count --spec "p=2;i=1;chain=(2,1)"
    niveau construct --epsilon 0.1 --k 1,2 --seed 42
    niveau explore --p 3 --n 2 --k 1 --colors 2 --seed 7
    niveau --config reports/explore.json      # rerun a recorded report

Exit codes: 0 all PROVEN or completed, 1 a REFUTED verdict, 2 an
INCONCLUSIVE one, 3 a usage, config or cap error.
"""

from __future__ import annotations

import argparse
import secrets
import sys
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import __version__
from .construction import construct
from .counting import EXACT_COUNT_BITS, count_hamming, count_niveau, density, density_lower_bound
from .explorer import CSV_COLUMNS as PROBE_COLUMNS
from .explorer import probe_odd_prime, probe_table, table_csv, verdict_counts
from .group import DEFAULT_ENUMERATION_CAP, RandomStream
from .lemmas import lemma_suite
from .recurrence import (
    DEFAULT_NODE_BUDGET,
    INCONCLUSIVE,
    REFUTED,
    CayleyGraph,
    Verdict,
    chromatic_exceeds,
    combine,
    lovasz_census,
    verify_lovasz,
    verify_poincare,
)
from .report import (
    COMPLETED,
    EXIT_INCONCLUSIVE,
    EXIT_OK,
    EXIT_USAGE,
    ConfigError,
    RunConfig,
    build_report,
    dumps,
    exit_code,
    resolve_output_dir,
    rows_csv,
    write_outputs,
)
from .sets import HammingBallSpec, materialize, parse_set_spec
from .witness import WitnessReport

LOVASZ_BUDGET = 2 * 10**6
CHECK_COLUMNS = ("name", "status", "mode", "oracle", "certificate")
LOVASZ_COLUMNS = ("r", "k", "status", "vertices", "nodes", "certificate")
# commands that draw random numbers and therefore always record a seed
RANDOMIZED = ("construct", "explore")
# flags shared by every subcommand; SUPPRESS keeps a flag given before the
# subcommand from being reset by the subcommand's own default
GLOBAL_KEYS = ("config", "output_dir", "format", "csv", "threads", "seed", "budget", "enum_cap")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Outcome:
    status: str
    result: dict
    csv_text: Optional[str] = None
    lines: list[str] = field(default_factory=list)
    code: Optional[int] = None


# -- argument parsing ---------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fraction(text: str) -> str:
    try:
        return str(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a number such as 0.1 or 1/10, got {text!r}") from None


def _translates(text: str) -> str:
    if text == "all":
        return text
    try:
        if int(text) >= 1:
            return str(int(text))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"--translates takes 'all' or a positive count, got {text!r}")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    common.add_argument("--config", default=S, help="rerun a RunConfig JSON file or a previous report")
    common.add_argument("--output-dir", default=S, help="report directory (default: $NIVEAU_OUTPUT_DIR or ./niveau_reports)")
    common.add_argument("--format", choices=("text", "json"), default=S, help="what to print on stdout")
    common.add_argument("--csv", action="store_true", default=S, help="also write a CSV table")
    common.add_argument("--threads", type=int, default=S, help="recorded; runs are single-process")
    common.add_argument("--seed", type=int, default=S)
    common.add_argument("--budget", type=int, default=S, help="search node budget")
    common.add_argument("--enum-cap", type=int, default=S, help="largest group enumerated")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="niveau", description=__doc__.split("\n")[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("lemmas", parents=[common], help="exhaustive suite of niveau set properties")
    p.add_argument("--n-cap", type=int, default=4)

    p = sub.add_parser("count", parents=[common], help="exact size of a ball or niveau set")
    p.add_argument("--spec", required=True, help='"p=2;i=1;chain=(2,1),(4,1)" or "ball=V;p=2;n=3;k=1"')

    p = sub.add_parser("density", parents=[common], help="exact density, or a certified lower bound")
    p.add_argument("--spec", required=True)

    p = sub.add_parser("construct", parents=[common], help="density-recurrence witness pipeline")
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--k", type=_int_list, required=True, help="radii, e.g. 1,2")
    p.add_argument("--L", type=int, default=None, help="number of levels (default: all radii)")
    p.add_argument("--n-cap", type=int, default=64, help="largest scale searched")
    p.add_argument("--mode", choices=("auto", "sampled", "exhaustive"), default="auto")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--scales", type=_int_list, default=None, help="explicit scales instead of the search")

    p = sub.add_parser("chromatic", parents=[common], help="does Cayley(S) need more than k colors")
    p.add_argument("--connection", required=True, help="ball or niveau spec for S")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--method", choices=("auto", "linear", "bfs", "search"), default="auto")

    p = sub.add_parser("lovasz", parents=[common], help="Kneser graph coloring claims")
    p.add_argument("--r", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--census", action="store_true", help="every (r, k) with C(2r+k, r) <= --max-vertices")
    p.add_argument("--max-vertices", type=int, default=500)

    p = sub.add_parser("poincare", parents=[common], help="k-partitions against U(n, 2k+2)")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--relax", action="store_true", help="allow k >= n")

    p = sub.add_parser("explore", parents=[common], help="translated balls over odd primes")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True, help="ball radius")
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--translates", type=_translates, default="all", help="'all' or a sample size")
    p.add_argument("--sample", type=int, default=20, help="sample size when 'all' is over the cap")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    ns = vars(args)
    if "config" in ns:
        if ns.get("command"):
            raise UsageError("--config replaces the command; give one or the other")
        clashing = [k for k in GLOBAL_KEYS if k in ns and k not in ("config", "output_dir", "format")]
        if clashing:
            raise UsageError(f"--config cannot be combined with {', '.join('--' + k.replace('_', '-') for k in clashing)}")
        config = RunConfig.load(ns["config"])
        if "output_dir" in ns:
            config.output_dir = resolve_output_dir(ns["output_dir"])
        return config
    command = ns.get("command")
    if not command:
        raise UsageError("no command given (try --help)")
    params = {k: v for k, v in ns.items() if k not in GLOBAL_KEYS and k != "command"}
    if command == "lovasz":
        if params["census"] == (params["r"] is not None or params["k"] is not None):
            raise UsageError("lovasz takes either --census or both --r and --k")
        if not params["census"] and (params["r"] is None or params["k"] is None):
            raise UsageError("lovasz needs both --r and --k")
    seed = ns.get("seed")
    if seed is None and command in RANDOMIZED:
        seed = secrets.randbits(32)
        print(f"niveau: no --seed given; using {seed} (recorded in the report)", file=sys.stderr)
    default_budget = LOVASZ_BUDGET if command == "lovasz" else DEFAULT_NODE_BUDGET
    caps = {"node_budget": ns.get("budget", default_budget),
            "enumeration_cap": ns.get("enum_cap", DEFAULT_ENUMERATION_CAP)}
    formats = ["json", "csv"] if ns.get("csv") or command == "explore" else ["json"]
    return RunConfig(command, params, seed, caps, resolve_output_dir(ns.get("output_dir")), formats,
                     ns.get("threads", 1))


# -- commands ------------------------------------------------------------------------


def _checks_csv(report: WitnessReport) -> str:
    rows = [{**c.as_dict(), "name": c.name} for c in report.checks]
    return rows_csv(rows, CHECK_COLUMNS)


def _witness_outcome(report: WitnessReport) -> Outcome:
    lines = [f"{c.name}: {c.status} ({c.mode.lower()})" for c in report.checks]
    return Outcome(report.status, report.as_dict(), _checks_csv(report), lines)


def _verdict_outcome(verdict: Verdict) -> Outcome:
    return Outcome(verdict.status, verdict.as_dict(), rows_csv([verdict.as_dict()], ("status", "certificate")),
                   [verdict.certificate])


def run_lemmas(config: RunConfig) -> Outcome:
    return _witness_outcome(lemma_suite(config.params["n_cap"], config.caps["enumeration_cap"]))


def run_count(config: RunConfig) -> Outcome:
    spec = parse_set_spec(config.params["spec"])
    value = count_hamming(spec) if isinstance(spec, HammingBallSpec) else count_niveau(spec)
    result = {"spec": spec.format(), "set": spec.describe(), "scale": spec.scale, "count": str(value)}
    return Outcome(COMPLETED, result, rows_csv([result], ("spec", "count")), [str(value)])


def run_density(config: RunConfig) -> Outcome:
    spec = parse_set_spec(config.params["spec"])
    if isinstance(spec, HammingBallSpec):
        if 2**spec.n * spec.p.bit_length() > EXACT_COUNT_BITS:
            raise ValueError(f"ball density at scale {spec.n} needs more than {EXACT_COUNT_BITS} bits")
        value, exact = density(spec), True
    else:
        value, exact = density_lower_bound(spec)
    result = {
        "spec": spec.format(),
        "set": spec.describe(),
        "density": str(value),
        "approx": float(value),
        "exact": exact,
        "kind": "exact" if exact else "certified lower bound",
    }
    return Outcome(COMPLETED, result, rows_csv([result], ("spec", "density", "approx", "kind")),
                   [f"{_short(result['density'])} ~ {result['approx']:.6g} ({result['kind']})"])


def _short(text: str, width: int = 60) -> str:
    return text if len(text) <= width else f"{text[:20]}...{text[-20:]} ({len(text)} chars)"


def run_construct(config: RunConfig) -> Outcome:
    prm = config.params
    mode = None if prm["mode"] == "auto" else prm["mode"]
    report = construct(Fraction(prm["epsilon"]), prm["k"], prm["L"], prm["n_cap"], prm["trials"], config.seed,
                       mode=mode, n_seq=prm["scales"])
    return _witness_outcome(report)


def run_chromatic(config: RunConfig) -> Outcome:
    prm = config.params
    fs = materialize(parse_set_spec(prm["connection"]), cap=config.caps["enumeration_cap"])
    graph = CayleyGraph(fs.p, fs.n, fs)
    return _verdict_outcome(chromatic_exceeds(graph, prm["colors"], config.caps["node_budget"], prm["method"]))


def run_lovasz(config: RunConfig) -> Outcome:
    prm = config.params
    budget = config.caps["node_budget"]
    if not prm["census"]:
        return _verdict_outcome(verify_lovasz(prm["r"], prm["k"], budget))
    verdicts = lovasz_census(prm["max_vertices"], budget)
    rows = [{**v.parameters, "status": v.status, "nodes": v.budget_spent.get("nodes", 0),
             "certificate": v.certificate} for v in verdicts]
    counts = {s: sum(v.status == s for v in verdicts) for s in ("PROVEN", REFUTED, INCONCLUSIVE)}
    result = {"max_vertices": prm["max_vertices"], "counts": counts, "instances": rows}
    lines = [f"{len(rows)} instances up to {prm['max_vertices']} vertices: "
             + ", ".join(f"{k} {v}" for k, v in counts.items())]
    lines += [f"r={row['r']} k={row['k']}: {row['status']}" for row in rows if row["status"] != "PROVEN"]
    return Outcome(combine(verdicts), result, rows_csv(rows, LOVASZ_COLUMNS), lines)


def run_poincare(config: RunConfig) -> Outcome:
    prm = config.params
    return _verdict_outcome(verify_poincare(prm["p"], prm["n"], prm["k"], prm["relax"], config.caps["node_budget"]))


def run_explore(config: RunConfig) -> Outcome:
    prm = config.params
    rng = RandomStream(config.seed)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        results = probe_odd_prime(prm["p"], prm["n"], prm["k"], prm["colors"], prm["translates"],
                                  config.caps["node_budget"], rng, config.caps["enumeration_cap"], prm["sample"])
    notes = [str(w.message) for w in caught]
    for note in notes:
        print(f"niveau: warning: {note}", file=sys.stderr)
    notes.append("each row concerns one ball V(n,k) at one scale, not a union of balls; "
                 "REFUTED rows are colorings recorded as evidence")
    counts = verdict_counts(results)
    result = {
        "counts": counts,
        "rows": probe_table(results),
        "probes": [r.as_dict() for r in results],
        "columns": list(PROBE_COLUMNS),
        "notes": notes,
    }
    # a REFUTED probe is a coloring, i.e. evidence, not a failed check
    status = INCONCLUSIVE if counts[INCONCLUSIVE] else COMPLETED
    lines = [f"{len(results)} translates: " + ", ".join(f"{k} {v}" for k, v in counts.items())]
    return Outcome(status, result, table_csv(results), lines, EXIT_INCONCLUSIVE if counts[INCONCLUSIVE] else EXIT_OK)


RUNNERS: dict[str, Callable[[RunConfig], Outcome]] = {
    "lemmas": run_lemmas,
    "count": run_count,
    "density": run_density,
    "construct": run_construct,
    "chromatic": run_chromatic,
    "lovasz": run_lovasz,
    "poincare": run_poincare,
    "explore": run_explore,
}


def execute(config: RunConfig) -> tuple[dict, Outcome]:
    """Run a config and build its report; nothing is written."""
    start = time.perf_counter()
    outcome = RUNNERS[config.command](config)
    code = exit_code([outcome.status]) if outcome.code is None else outcome.code
    report = build_report(config, outcome.status, outcome.result, time.perf_counter() - start, code)
    return report, outcome


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = config_from_args(args)
    except (UsageError, ConfigError) as exc:
        print(f"niveau: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report, outcome = execute(config)
    except (ValueError, KeyError, TypeError) as exc:
        # cap violations, bad specs and malformed parameter blocks
        print(f"niveau: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        paths = write_outputs(report, config, outcome.csv_text)
    except OSError as exc:
        print(f"niveau: error: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "format", "text") == "json":
        sys.stdout.write(dumps(report))
    else:
        for line in outcome.lines:
            print(line)
        print(f"{config.command}: {report['status']} (exit {report['exit_code']})")
    for path in paths:
        print(f"niveau: wrote {path}", file=sys.stderr)
    return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
