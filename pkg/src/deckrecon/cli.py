"""deckrecon command line.

Exit codes: 0 success, 2 input error, 3 unsupported or infeasible,
4 internal contradiction or verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cliques import reconstruct_all
from .deck import deal, dumps_deck, hide, load_deck
from .degrees import reconstruct_degrees
from .errors import DeckReconError
from .graph import parse_graph6
from .oracle import verify_exhaustive, verify_random

log = logging.getLogger("deckrecon")

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED, EXIT_CONTRADICTION = 0, 2, 3, 4


def _emit(data: dict) -> None:
    sys.stdout.write(json.dumps(data, sort_keys=True, indent=2) + "\n")


def cmd_deal(args) -> int:
    g = parse_graph6(args.graph6)
    full = deal(g)
    if args.hide is not None:
        text = dumps_deck(hide(full, g, args.hide))
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8", newline="\n")
        else:
            sys.stdout.write(text)
        return EXIT_OK
    out_dir = Path(args.out_dir or ".")
    out_dir.mkdir(parents=True, exist_ok=True)
    for v in range(g.n):
        path = out_dir / f"deck_hidden{v}.txt"
        path.write_text(dumps_deck(hide(full, g, v)), encoding="utf-8", newline="\n")
        log.info("wrote %s", path)
    return EXIT_OK


def cmd_degrees(args) -> int:
    prof = reconstruct_degrees(load_deck(args.deckfile))
    _emit(
        {
            "degrees": list(prof.degrees),
            "delta": prof.max_degree,
            "ell": prof.ell,
            "hidden_degree": prof.hidden_degree,
            "holes": list(prof.holes),
            "m": prof.m,
        }
    )
    return EXIT_OK


def cmd_cliques(args) -> int:
    deck = load_deck(args.deckfile)
    outcome = reconstruct_all(deck)
    data = outcome.as_dict()
    if args.r is not None:
        if not 1 <= args.r <= deck.n:
            raise SystemExit(f"--r must lie in 1..{deck.n}")
        data["results"] = {str(args.r): data["results"][str(args.r)]}
    _emit(data)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.random is not None:
        n, samples, p, seed = args.random
        report = verify_random(
            int(n), int(samples), float(p), int(seed),
            max_r=args.max_r, max_average_degree=args.max_avg_degree, workers=args.workers,
        )
    else:
        report = verify_exhaustive(args.n, args.corpus, workers=args.workers)
    text = report.to_json()
    sys.stdout.write(text + "\n")
    if args.json:
        Path(args.json).write_text(text + "\n", encoding="utf-8")
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    return EXIT_OK if report.passed else EXIT_CONTRADICTION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deckrecon", description="Clique counts from n-1 vertex-deleted cards.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("deal", help="write partial deck files for a graph6 graph")
    p.add_argument("graph6")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--hide", type=int, metavar="V")
    which.add_argument("--hide-all", action="store_true")
    p.add_argument("-o", "--out", help="output file for --hide (default stdout)")
    p.add_argument("--out-dir", help="output directory for --hide-all (default .)")
    p.set_defaults(func=cmd_deal)

    p = sub.add_parser("degrees", help="reconstruct the degree sequence of a partial deck")
    p.add_argument("deckfile")
    p.set_defaults(func=cmd_degrees)

    p = sub.add_parser("cliques", help="reconstruct clique counts of a partial deck")
    p.add_argument("deckfile")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--r", type=int)
    which.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("verify", help="check reconstructions against brute force")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=int, help="exhaustive over all graphs of this order")
    which.add_argument("--random", nargs=4, metavar=("N", "SAMPLES", "P", "SEED"))
    p.add_argument("--corpus", help="graph6 file with one graph per isomorphism class")
    p.add_argument("--max-r", type=int)
    p.add_argument("--max-avg-degree", type=float)
    p.add_argument("--workers", type=int, help="process count (default: $DECKRECON_THREADS or 1)")
    p.add_argument("--json", help="also write the JSON report here")
    p.add_argument("--csv", help="write the CSV summary here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except DeckReconError as exc:
        print(f"deckrecon: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"deckrecon: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
