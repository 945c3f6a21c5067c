"""Command-line front end: decide, oracle, conditions, pmin, restrict, fuzz.

Vertices are 1-based on input and output. Exit codes: ``decide`` returns 0/1/2
for Inherits/Fails/OutsideCharacterization, yes/no style commands return 0/1,
and any error returns 3 or more.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .conditions import check_constant_cycle_claims, check_f_conditions, check_refined_pan
from .games import MAX_SWEEP_PLAYERS, SizeMismatch, TooLarge, read_game, restricted_game
from .generators import random_connected_graph
from .graph import DEFAULT_CAP, CapExceeded, ParseError, WeightedGraph, format_graph, members, read_graph, to_mask
from .oracle import OracleResult, inheritance_convexity_bruteforce, inheritance_fconvexity_bruteforce
from .partition import min_weight_edges, p_min
from .recognizer import FAILS, INHERITS, OUTSIDE, decide

EXIT_ERROR = 3
EXIT_TOO_LARGE = 4
CHAIN_ORACLE_MAX = 10

_EXIT = {INHERITS: 0, FAILS: 1, OUTSIDE: 2}


class UnknownVertex(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors, which would read as OutsideCharacterization
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": 1, **payload}, indent=2))
    else:
        print(text)


def _oracle_json(res: OracleResult) -> dict:
    out: dict = {"holds": res.holds, "exhaustive": res.exhaustive, "checked": res.checked}
    if res.witness is not None:
        out["witness"] = res.witness.describe()
    return out


def _oracle_text(res: OracleResult) -> str:
    if res.holds:
        return "yes" if res.exhaustive else f"yes (sampled {res.checked} carriers, not exhaustive)"
    w = res.witness.describe()
    return f"no: S={w['S']} A={w['A']} B={w['B']} slack={w['amount']}"


# --------------------------------------------------------------------------
# commands


def cmd_decide(args) -> int:
    g = read_graph(args.graph)
    verdict = decide(g, mode=args.cycle_mode)
    payload = verdict.to_json()
    lines = [f"{verdict.status} ({verdict.reason}; {verdict.theorem})"]
    if verdict.witness:
        lines.append("witness: " + json.dumps(payload["witness"]))
    if verdict.note:
        lines.append("note: " + verdict.note)
    if verdict.status == OUTSIDE and not args.no_oracle and g.n <= CHAIN_ORACLE_MAX:
        res = inheritance_convexity_bruteforce(g, cap=CHAIN_ORACLE_MAX)
        payload["oracle"] = _oracle_json(res)
        lines.append("oracle: " + _oracle_text(res))
    payload.pop("schema", None)
    _emit(args, payload, "\n".join(lines))
    return _EXIT[verdict.status]


def cmd_oracle(args) -> int:
    g = read_graph(args.graph)
    cap = args.cap if args.cap is not None else MAX_SWEEP_PLAYERS
    if args.mode == "convexity":
        res = inheritance_convexity_bruteforce(g, cap=cap, sample=args.sample, seed=args.seed)
    else:
        res = inheritance_fconvexity_bruteforce(g, cap=cap)
    _emit(args, {"mode": args.mode, **_oracle_json(res)}, _oracle_text(res))
    return 0 if res.holds else 1


def cmd_conditions(args) -> int:
    g = read_graph(args.graph)
    cap = args.cap if args.cap is not None else DEFAULT_CAP
    report = check_f_conditions(g, cap, adjacency=args.adjacency)
    results = list(report.results)
    if args.extended:
        results.append(check_refined_pan(g, cap))
        results.extend(check_constant_cycle_claims(g, cap).results)
    payload = {"status": report.status, "conditions": {r.name: r.to_json() for r in results}}
    rows = []
    for r in results:
        row = f"{r.name:<24} {r.status}"
        if r.witness:
            row += "  " + json.dumps(r.to_json()["witness"])
        elif r.detail:
            row += f"  ({r.detail})"
        rows.append(row)
    _emit(args, payload, "\n".join(rows))
    return {"pass": 0, "fail": 1, "skipped": 2}[report.status]


def parse_coalition(text: str, n: int) -> int:
    text = text.strip()
    if text in ("", "-", "{}", "∅"):
        return 0
    try:
        vs = [int(t) for t in text.split(",")]
    except ValueError:
        raise UnknownVertex(f"not a vertex list: {text!r}") from None
    bad = [v for v in vs if not 1 <= v <= n]
    if bad:
        raise UnknownVertex(f"unknown vertex {bad[0]} (graph has vertices 1..{n})")
    return to_mask(v - 1 for v in vs)


def cmd_pmin(args) -> int:
    g = read_graph(args.graph)
    a = parse_coalition(args.coalition, g.n)
    part = p_min(g, a)
    sigma = [[u + 1, v + 1] for u, v in min_weight_edges(g, a)]
    blocks = part.as_lists()
    text = f"P_min: {blocks}\nSigma: {sigma}"
    _emit(args, {"coalition": [v + 1 for v in members(a)], "blocks": blocks, "sigma": sigma}, text)
    return 0


def cmd_restrict(args) -> int:
    g = read_graph(args.graph)
    v = read_game(args.game, g.n)
    vbar = restricted_game(g, v, args.correspondence)
    table = [
        {"coalition": [x + 1 for x in members(a)], "value": int(vbar.values[a])} for a in range(1 << g.n)
    ]
    rows = [f"{','.join(map(str, t['coalition'])) or '-'} {t['value']}" for t in table]
    _emit(args, {"correspondence": args.correspondence, "n": g.n, "table": table}, "\n".join(rows))
    return 0


# --------------------------------------------------------------------------
# fuzzing


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    verdict: str
    oracle: bool
    agree: bool
    graph_text: str | None = None
    detail: str | None = None


def trial_graph(seed: int, trial: int, n: int, k: int) -> WeightedGraph:
    """The graph of one fuzz trial; depends only on its arguments."""
    return random_connected_graph(random.Random(f"{seed}:{trial}"), n, k)


def run_trial(seed: int, trial: int, n: int, k: int, mode: str) -> TrialOutcome:
    g = trial_graph(seed, trial, n, k)
    verdict = decide(g)
    oracle = inheritance_convexity_bruteforce(g, cap=max(n, MAX_SWEEP_PLAYERS)).holds
    problems = []
    if verdict.status == OUTSIDE:
        problems.append("OutsideCharacterization on a connected graph")
    elif verdict.inherits != oracle:
        problems.append(f"recognizer says {verdict.status}, oracle says {oracle}")
    if mode == "f":
        f_holds = inheritance_fconvexity_bruteforce(g, cap=max(n, MAX_SWEEP_PLAYERS)).holds
        report = check_f_conditions(g)
        if report.status == "skipped" or report.passed != f_holds:
            problems.append(f"conditions report {report.status}, F-oracle says {f_holds}")
    if problems:
        return TrialOutcome(trial, verdict.status, oracle, False, format_graph(g), "; ".join(problems))
    return TrialOutcome(trial, verdict.status, oracle, True)


def cmd_fuzz(args) -> int:
    if args.n < 1 or args.trials < 0 or args.weights < 1:
        raise ValueError("--n and --weights must be positive and --trials non-negative")
    seed = args.seed if args.seed is not None else 0
    cap = args.cap if args.cap is not None else MAX_SWEEP_PLAYERS
    if args.n > cap:
        raise TooLarge(f"--n {args.n} exceeds the oracle cap of {cap}")
    jobs = args.jobs or 1
    trials = range(args.trials)
    call = (seed, args.n, args.weights, args.mode)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            # map yields in submission order, so the report is ordered by trial
            outcomes = pool.map(_run_trial_star, ((seed, t, *call[1:]) for t in trials), chunksize=64)
            outcomes = list(outcomes)
    else:
        outcomes = [run_trial(seed, t, *call[1:]) for t in trials]

    agreed = 0
    verdicts: Counter[str] = Counter()
    for out in outcomes:
        verdicts[out.verdict] += 1
        if not out.agree:
            path = os.path.join(args.dump_dir, f"fuzz-seed{seed}-trial{out.trial}.txt")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(f"# {out.detail}\n" + out.graph_text)
            payload = {"agree": agreed, "trials": args.trials, "disagreement": {"trial": out.trial,
                       "detail": out.detail, "file": path}}
            _emit(args, payload, f"disagreement at trial {out.trial}: {out.detail}\ngraph written to {path}")
            return 1
        agreed += 1
    summary = f"{agreed}/{args.trials} agree"
    if verdicts:
        summary += " (" + ", ".join(f"{k}: {v}" for k, v in sorted(verdicts.items())) + ")"
    _emit(args, {"agree": agreed, "trials": args.trials, "verdicts": dict(sorted(verdicts.items()))}, summary)
    return 0


def _run_trial_star(a):
    return run_trial(*a)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS,
                        help="player cap for oracles, item cap for enumerations")

    parser = _Parser(prog="pmingames", description="Restricted games on weighted graphs and inheritance of convexity.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=None, help="random seed")
    parser.add_argument("--cap", type=int, default=None, help="player cap for oracles, item cap for enumerations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="polynomial-time verdict")
    p.add_argument("graph")
    p.add_argument("--cycle-mode", choices=["separating", "articulation"], default="separating",
                   help="test for a second chordless cycle through the lightest edge")
    p.add_argument("--no-oracle", action="store_true", help="do not fall back to the oracle on small graphs")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("oracle", parents=[common], help="brute-force inheritance check")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["convexity", "f-convexity"], default="convexity")
    p.add_argument("--sample", type=int, default=None, help="sample this many carriers when n exceeds --cap")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("conditions", parents=[common], help="local conditions for F-convexity")
    p.add_argument("graph")
    p.add_argument("--extended", action="store_true", help="also run the further necessary conditions")
    p.add_argument("--adjacency", choices=["common-vertex", "pairwise"], default="common-vertex")
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("pmin", parents=[common], help="minimum partition of a coalition")
    p.add_argument("graph")
    p.add_argument("--coalition", required=True, help="comma-separated vertices, '-' for the empty set")
    p.set_defaults(func=cmd_pmin)

    p = sub.add_parser("restrict", parents=[common], help="restricted game table")
    p.add_argument("graph")
    p.add_argument("--game", required=True, help="game file, one 'v1,v2,... value' per line")
    p.add_argument("--correspondence", choices=["pmin", "myerson"], default="pmin")
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("fuzz", parents=[common], help="cross-check recognizer and oracle on random graphs")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--weights", type=int, default=2, help="weights are drawn from 1..k")
    p.add_argument("--mode", choices=["convexity", "f"], default="convexity")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--dump-dir", default=".", help="where a disagreeing graph is written")
    p.set_defaults(func=cmd_fuzz)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (TooLarge, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (UnknownVertex, SizeMismatch, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
