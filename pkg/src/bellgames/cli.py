"""Command-line entry point: ``bellgames <command> GAME [options]``.

GAME is a path to a game file or the name of a bundled game
(``example1``, ``example2``, ``example3``).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import GameSyntaxError, GameValidationError, ResourceLimitError
from .gamefile import BUNDLED, bundled_text, parse_game
from .report import AnalysisOptions, dumps, emit_plot_data, resource_errors, run_analysis

COMMANDS = {
    "analyze": ("classical", "quantum", "no-signaling", "equilibrium"),
    "bounds": ("classical", "quantum", "no-signaling"),
    "polytope": ("classical",),
    "equilibrium": ("equilibrium",),
    "plot-data": ("classical", "quantum", "equilibrium"),
}


def _beta(text: str) -> tuple[float, float]:
    parts = text.replace(" ", "").split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'b1,b2', got {text!r}")
    return float(parts[0]), float(parts[1])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bellgames", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("game", help=f"game file or bundled name ({', '.join(BUNDLED)})")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--restarts", type=int, default=50)
        p.add_argument("--directions", type=int, default=32,
                       help="number of directions for the quantum boundary sweep")
        p.add_argument("--beta", type=_beta, action="append",
                       help="payoff combination b1,b2 (repeatable; default 1,1)")
        p.add_argument("--out", type=Path,
                       help="output file (JSON) or directory (plot-data CSVs)")
    return parser


def _read_game(spec: str):
    if spec in BUNDLED and not Path(spec).exists():
        return parse_game(bundled_text(spec))
    return parse_game(Path(spec).read_text(encoding="utf-8"))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        game = _read_game(args.game)
    except (GameSyntaxError, GameValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    options = AnalysisOptions(
        seed=args.seed,
        restarts=args.restarts,
        directions=args.directions if args.command in ("analyze", "plot-data") else 0,
        betas=args.beta or [(1.0, 1.0)],
        equilibrium_beta=(args.beta or [(1.0, 1.0)])[0],
        sections=COMMANDS[args.command],
    )
    try:
        report = run_analysis(game, options)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    # partial results are still written; the exit code flags what was cut short
    limits = resource_errors(report)
    for msg in limits:
        print(f"error: {msg}", file=sys.stderr)
    status = 3 if limits else 0

    if args.command == "plot-data":
        tables = emit_plot_data(report)
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            for name, text in tables.items():
                (args.out / name).write_text(text, encoding="utf-8")
        else:
            for name, text in tables.items():
                sys.stdout.write(f"# {name}\n{text}")
        return status

    text = dumps(report)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
