"""Command-line interface.

Exit status: 0 realizable / success, 1 not realizable, 2 invalid input,
3 size limit exceeded, 4 oracle and algebraic test disagree.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import census, oracle
from .errors import GaussCodeError, LimitExceeded
from .interlace import interlacement_graph
from .lift import LoopedGraph, decide_realizable, solve_lifts
from .word import enumerate_words, format_word, from_letters, parse

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_LIMIT, EXIT_DISAGREE = range(5)
_DART_NAMES = ("in1", "out1", "in2", "out2")


def _emit(args, text: str, payload=None):
    if args.json and payload is not None:
        print(json.dumps(payload))
    else:
        print(text)


def cmd_check(args) -> int:
    report = decide_realizable(parse(args.word))
    _emit(args, report.summary(), report.to_dict())
    return EXIT_OK if report.realizable else EXIT_NO


def cmd_lift(args) -> int:
    w = parse(args.word)
    sol = solve_lifts(interlacement_graph(w))
    if sol.failure:
        _emit(args, f"no lifts: {sol.failure.describe(w.names)}", {"word": format_word(w), "lifts": []})
        return EXIT_NO
    lifts = [[w.names[v] for v in lift.vertices] for lift in sol]
    if args.json:
        print(json.dumps({"word": format_word(w), "lifts": lifts}))
    else:
        for subset in lifts:
            print("{" + ", ".join(subset) + "}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    w = parse(args.word)
    topo = oracle.oracle_realizable(w, limit=args.limit)
    report = decide_realizable(w)
    agree = topo == report.realizable
    payload = {
        "word": format_word(w),
        "oracle": topo,
        "algebraic": report.verdict.value,
        "agree": agree,
        "planar_choices": oracle.planar_choices(w, limit=args.limit),
    }
    _emit(args, f"oracle: {'Realizable' if topo else 'NotRealizable'}; check: {report.verdict.value}; "
          f"{'agree' if agree else 'DISAGREE'}", payload)
    if not agree:
        print(f"oracle and algebraic verdicts disagree on {format_word(w)}", file=sys.stderr)
        return EXIT_DISAGREE
    return EXIT_OK if topo else EXIT_NO


def _verdict_line(letters):
    w = from_letters(letters)
    return format_word(w), decide_realizable(w).verdict.value


def cmd_enum(args) -> int:
    words = (w.letters for w in enumerate_words(args.n, canonical_only=args.canonical))
    if args.workers > 1:
        pool = ProcessPoolExecutor(args.workers)
        results = pool.map(_verdict_line, words, chunksize=256)
    else:
        pool = None
        results = map(_verdict_line, words)
    try:
        for text, verdict in results:
            if args.realizable_only and verdict != "Realizable":
                continue
            if args.json:
                print(json.dumps({"word": text, "verdict": verdict}))
            else:
                print(text, verdict)
    finally:
        if pool is not None:
            pool.shutdown()
    return EXIT_OK


def cmd_census(args) -> int:
    report = census.census_check(args.n, checkpoint=args.resume, allow_long=args.long)
    if args.json:
        print(json.dumps(report.to_dict()))
    else:
        print(f"n={report.n}: {report.orthoprojection_count} orthoprojection classes, "
              f"{report.lift_count} lifts, {len(report.non_lift_examples)} non-lifts")
        for key in report.non_lift_examples:
            print("non-lift", key)
    return EXIT_OK


def cmd_dot(args) -> int:
    w = parse(args.word)
    g = interlacement_graph(w)
    loops = 0
    if args.witness is not None:
        lifts = list(solve_lifts(g))
        if not 0 <= args.witness < len(lifts):
            print(f"witness {args.witness} out of range ({len(lifts)} available)", file=sys.stderr)
            return EXIT_INPUT
        loops = lifts[args.witness].subset
    sys.stdout.write(LoopedGraph(g, loops).to_dot())
    return EXIT_OK


def cmd_faces(args) -> int:
    w = parse(args.word)
    m = oracle.build_map(w, args.bits)
    faces = oracle.face_orbits(m)
    genus = (2 - (m.num_vertices - m.num_edges + len(faces))) // 2 if w.n else 0

    def label(d):
        return f"{w.names[d // 4]}.{_DART_NAMES[d % 4]}"

    payload = {"word": format_word(w), "bits": args.bits, "faces": [[label(d) for d in f] for f in faces],
               "genus": genus}
    lines = [f"({' '.join(label(d) for d in f)})" for f in faces]
    lines.append(f"F={len(faces)} genus={genus}")
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    rng = random.Random(args.seed)
    bad = 0
    for _ in range(args.count):
        n = rng.randint(args.min_n, args.max_n)
        letters = list(range(n)) * 2
        rng.shuffle(letters)
        w = from_letters(letters)
        if oracle.oracle_realizable(w) != decide_realizable(w).realizable:
            bad += 1
            print("DISAGREE", format_word(w))
    print(f"{args.count} random words, {bad} disagreement(s), seed={args.seed}")
    return EXIT_DISAGREE if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand default from clobbering a global --json
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p = argparse.ArgumentParser(prog="gausscode", description="Realizability of Gauss codes.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    for name, fn, help_ in [
        ("check", cmd_check, "decide realizability"),
        ("lift", cmd_lift, "list every diagonal lift"),
        ("oracle", cmd_oracle, "run the topological oracle and compare"),
    ]:
        s = command(name, help_)
        s.add_argument("word")
        s.set_defaults(func=fn)
        if name == "oracle":
            s.add_argument("--limit", type=int, default=oracle.DEFAULT_LIMIT)

    s = command("enum", "enumerate words with verdicts")
    s.add_argument("n", type=int)
    s.add_argument("--realizable-only", action="store_true")
    s.add_argument("--canonical", action="store_true")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_enum)

    s = command("census", "orthoprojection graphs versus interlacement graphs")
    s.add_argument("n", type=int)
    s.add_argument("--resume", metavar="FILE", help="checkpoint file, created if missing")
    s.add_argument("--long", action="store_true", help="allow n up to 9 (hours)")
    s.set_defaults(func=cmd_census)

    s = command("dot", "Graphviz source of the interlacement graph")
    s.add_argument("word")
    s.add_argument("--witness", type=int, metavar="K", help="draw loops of the K-th lift")
    s.set_defaults(func=cmd_dot)

    s = command("faces", "face orbits for one rotation choice")
    s.add_argument("word")
    s.add_argument("bits", help="one 0/1 per symbol")
    s.set_defaults(func=cmd_faces)

    s = command("crosscheck", "compare oracle and algebra on random words")
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--min-n", type=int, default=7)
    s.add_argument("--max-n", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_crosscheck)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except GaussCodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
