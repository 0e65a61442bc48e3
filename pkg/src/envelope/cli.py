"""``envelope`` command line front end.

Exit codes: 0 ok, 1 unexpected failure, 2 invalid input, 3 impossible observation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ImpossibleObservation, ValidationError
from .exact import (
    ExactReport,
    conditional_gain,
    correct_open_value,
    exact_value,
    naive_value,
    posterior,
)
from .model import amount, format_decimal, format_rational
from .montecarlo import KURTOSIS_WARN, CloneResult, SimResult, run_clones, run_sim
from .scenario import ExactEngine, MonteCarloEngine, load_prior, load_scenario
from .strategy import strategy_name, switch_prob

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_IMPOSSIBLE = 0, 1, 2, 3

RESOLUTION = "X is not a constant over the envelope choice"

_REPORT_ROWS = (
    ("E[Y]", "e_y"),
    ("E[X]", "e_x"),
    ("E[V]", "e_v"),
    ("3/2*E[Y]", "baseline"),
    ("correction", "correction"),
)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    cols = [header, *rows]
    widths = [max(len(str(r[i])) for r in cols) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in cols]
    return "\n".join(lines) + "\n"


def _q(q: Fraction) -> str:
    return f"{format_rational(q)} ({format_decimal(q)})"


# -- renderers ---------------------------------------------------------------


def render_exact(report: ExactReport, fmt: str = "text") -> str:
    if fmt == "json":
        return dump_json(report.to_dict())
    if fmt == "csv":
        keys = [k for _, k in _REPORT_ROWS]
        return _csv(keys, [[format_rational(getattr(report, k)) for k in keys]])
    rows = [[label, format_rational(getattr(report, k)), format_decimal(getattr(report, k))] for label, k in _REPORT_ROWS]
    return _table(["quantity", "exact", "approx"], rows)


def render_sim(result: SimResult, fmt: str = "text") -> str:
    d = result.to_dict()
    if fmt == "json":
        return dump_json(d)
    if fmt == "csv":
        return _csv(list(d), [[("" if v is None else repr(v)) for v in d.values()]])
    return (
        f"mean      {result.mean!r}\n"
        f"stderr    {result.stderr!r}\n"
        f"ci95      [{result.ci95_low!r}, {result.ci95_high!r}]\n"
        f"trials    {result.trials}\n"
        f"seed      {result.seed}\n"
    )


def render_compare(rows: list[dict], fmt: str = "text") -> str:
    if fmt == "json":
        return dump_json(rows)
    if fmt == "csv":
        keys = ["rank", "strategy", "e_v", "correction"]
        return _csv(keys, [[r[k] for k in keys] for r in rows])
    table = [
        [str(r["rank"]), r["strategy"], r["e_v"], format_decimal(Fraction(r["e_v"])), r["correction"]]
        for r in rows
    ]
    return _table(["rank", "strategy", "E[V]", "approx", "correction"], table)


def render_posterior(d: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return dump_json(d)
    return (
        f"P(lower|x)   {_q(Fraction(d['p_lower']))}\n"
        f"P(higher|x)  {_q(Fraction(d['p_higher']))}\n"
        f"gain         {_q(Fraction(d['gain']))}\n"
        f"action       {d['action']}\n"
    )


def render_paradox(d: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return dump_json(d)
    return (
        f"naive    {_q(Fraction(d['naive']))}\n"
        f"correct  {_q(Fraction(d['correct']))}\n"
        f"delta    {_q(Fraction(d['delta']))}\n"
        f"why: {d['explanation']}\n"
    )


def render_clones(result: CloneResult, fmt: str = "text") -> str:
    if fmt == "json":
        return dump_json(result.to_dict())
    return f"mean_x     {result.mean_x!r}\nimplied_y  {result.implied_y!r}\n"


# -- commands ----------------------------------------------------------------


def cmd_exact(path: str, fmt: str = "text") -> str:
    sc = load_scenario(path)
    if not isinstance(sc.engine, ExactEngine):
        raise ValidationError("scenario engine must be 'exact' for this command")
    return render_exact(exact_value(sc.finite_prior, sc.strategy, sc.knowledge, sc.envelope_mode), fmt)


def cmd_simulate(path: str, fmt: str = "text", workers: int = 1) -> tuple[str, SimResult]:
    sc = load_scenario(path)
    if not isinstance(sc.engine, MonteCarloEngine):
        raise ValidationError("scenario engine must be 'monte_carlo' for this command")
    result = run_sim(sc.sim_config(), workers=workers)
    return render_sim(result, fmt), result


def compare_rows(path: str) -> list[dict]:
    sc = load_scenario(path)
    prior = sc.finite_prior
    scored = []
    for spec, knowledge in sc.strategies:
        rep = exact_value(prior, spec, knowledge, sc.envelope_mode)
        scored.append((strategy_name(spec), rep))
    scored.sort(key=lambda t: (-t[1].e_v, t[0]))
    return [
        {
            "rank": i,
            "strategy": name,
            "e_v": format_rational(rep.e_v),
            "correction": format_rational(rep.correction),
        }
        for i, (name, rep) in enumerate(scored, start=1)
    ]


def cmd_compare(path: str, fmt: str = "text") -> str:
    return render_compare(compare_rows(path), fmt)


def posterior_report(prior_path: str, x: Fraction) -> dict:
    prior = load_prior(prior_path)
    post = posterior(prior, x)
    gain = conditional_gain(prior, x)
    return {
        "x": format_rational(x),
        "p_lower": format_rational(post.p_lower),
        "p_higher": format_rational(post.p_higher),
        "gain": format_rational(gain),
        "action": "switch" if gain > 0 else "keep",
    }


def cmd_posterior(prior_path: str, x: Fraction, fmt: str = "text") -> str:
    return render_posterior(posterior_report(prior_path, x), fmt)


def paradox_report(x: Fraction, mean_y: Fraction, p: Fraction) -> dict:
    naive = naive_value(x, p)
    correct = correct_open_value(x, p, mean_y)
    return {
        "naive": format_rational(naive),
        "correct": format_rational(correct),
        "delta": format_rational(naive - correct),
        "explanation": RESOLUTION,
    }


def cmd_paradox(x: Fraction, mean_y: Fraction, p: Fraction, fmt: str = "text") -> str:
    return render_paradox(paradox_report(x, mean_y, p), fmt)


def cmd_clones(y: Fraction, n: int, seed: int, fmt: str = "text") -> str:
    return render_clones(run_clones(y, n, seed), fmt)


# -- argument parsing --------------------------------------------------------


def _arg(parse):
    def inner(text):
        try:
            return parse(text)
        except ValidationError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc

    inner.__name__ = parse.__name__
    return inner


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise ValidationError(f"not an integer: {text!r}") from None
    if n < 1:
        raise ValidationError(f"must be >= 1, got {n}")
    return n


def _seed(text: str) -> int:
    if not text.isdigit() or int(text) >= 2**64:
        raise ValidationError(f"seed must be a decimal integer in [0, 2^64), got {text!r}")
    return int(text)


def _add_format(p: argparse.ArgumentParser, csv_ok: bool = True) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json", help="emit JSON")
    if csv_ok:
        g.add_argument("--csv", dest="fmt", action="store_const", const="csv", help="emit CSV")
    p.set_defaults(fmt="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="envelope", description="Two-envelope game laboratory.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact expected payoff of one strategy")
    p.add_argument("scenario")
    _add_format(p)

    p = sub.add_parser("simulate", help="Monte Carlo estimate of the expected payoff")
    p.add_argument("scenario")
    p.add_argument("--workers", type=_arg(_positive_int), default=1)
    _add_format(p)

    p = sub.add_parser("compare", help="rank several strategies by exact expected payoff")
    p.add_argument("scenario")
    _add_format(p)

    p = sub.add_parser("posterior", help="which envelope are we holding, given x")
    p.add_argument("prior")
    p.add_argument("--x", type=_arg(amount), required=True)
    _add_format(p, csv_ok=False)

    p = sub.add_parser("paradox", help="naive vs correct value of switching")
    p.add_argument("--x", type=_arg(amount), required=True)
    p.add_argument("--mean-y", type=_arg(amount), required=True)
    p.add_argument("--p", type=_arg(switch_prob), required=True)
    _add_format(p, csv_ok=False)

    p = sub.add_parser("clones", help="average the observed amount over parallel copies of one game")
    p.add_argument("--y", type=_arg(amount), required=True)
    p.add_argument("--n", type=_arg(_positive_int), required=True)
    p.add_argument("--seed", type=_arg(_seed), required=True)
    _add_format(p, csv_ok=False)

    return parser


def run(args: argparse.Namespace) -> str:
    match args.command:
        case "exact":
            return cmd_exact(args.scenario, args.fmt)
        case "simulate":
            text, result = cmd_simulate(args.scenario, args.fmt, args.workers)
            if result.heavy_tailed:
                print(
                    f"warning: payoff excess kurtosis {result.excess_kurtosis:.1f} exceeds "
                    f"{KURTOSIS_WARN:g}; the confidence interval may be too narrow",
                    file=sys.stderr,
                )
            return text
        case "compare":
            return cmd_compare(args.scenario, args.fmt)
        case "posterior":
            return cmd_posterior(args.prior, args.x, args.fmt)
        case "paradox":
            return cmd_paradox(args.x, args.mean_y, args.p, args.fmt)
        case "clones":
            return cmd_clones(args.y, args.n, args.seed, args.fmt)
    raise AssertionError(args.command)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = run(args)
    except ImpossibleObservation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IMPOSSIBLE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
