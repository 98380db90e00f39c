"""Command line entry point ``color``.

``color run`` replays or generates a stream against one colorer and writes
a JSON report; ``color gen`` writes a generated stream to a file.

Exit codes: 0 success, 2 verification failure, 3 configuration or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import (
    ALGORITHMS,
    GENERATORS,
    VERIFY_MODES,
    ConfigError,
    ExperimentConfig,
    VerificationFailure,
    emit_report,
    run_experiment,
)
from .streams import StreamError, gen_flip_stream, gen_oblivious_stream, gen_vertex_stream, serialize_stream

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_CONFIG = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2, which means "improper coloring" here
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="color", description="Dynamic graph coloring experiments.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run one colorer on one stream")
    run.add_argument("--algo", choices=ALGORITHMS, required=True)
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--stream", metavar="FILE", help="stream file to replay")
    src.add_argument("--gen", choices=GENERATORS, help="generate the stream instead")
    run.add_argument("--n", type=int, default=100, help="order of generated streams")
    run.add_argument("--t", type=int, default=1000, help="length of generated streams")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--verify", choices=VERIFY_MODES, default="end")
    run.add_argument("--out", metavar="PATH", help="JSON report path (stdout when omitted)")
    run.add_argument("--csv", metavar="PATH", help="append a summary row to this CSV file")
    run.add_argument("--trace", action="store_true", help="record per-update recolor chains")
    run.add_argument("--d", type=int, default=2, help="bucket count for a1/a2")
    run.add_argument("--n-r", type=int, default=None, help="initial N_R for a1/a2")
    run.add_argument("--static", choices=("greedy", "exact"), default="greedy")
    run.add_argument("--beta", type=int, default=4, help="level base for log")
    run.add_argument("--epsilon", type=float, default=0.3)
    run.add_argument("--theta-heavy", type=float, default=1 / 20)
    run.add_argument("--batch-override", type=int, default=None)
    run.add_argument("--recompute-every", type=int, default=None)
    run.add_argument("--track-surplus", action="store_true")
    run.add_argument("--max-degree", type=int, default=16, help="degree cap of flip streams")
    run.add_argument("--k", type=int, default=3, help="neighbors per vertex in vertex streams")
    run.add_argument("--audit", action="store_true", help="check colorer invariants after every update")
    run.add_argument("--audit-every", type=int, default=0, help="full invariant sweep period")
    run.add_argument("--lazy-deletions", action="store_true")

    gen = sub.add_parser("gen", help="write a generated stream")
    gen.add_argument("--gen", choices=("oblivious", "flip", "vertex"), required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--t", type=int, default=0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--max-degree", type=int, default=16)
    gen.add_argument("--k", type=int, default=3)
    gen.add_argument("--out", metavar="PATH", help="stream path (stdout when omitted)")
    return p


def _config(ns: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        algo=ns.algo,
        stream=ns.stream,
        gen=ns.gen,
        n=ns.n,
        t=ns.t,
        seed=ns.seed,
        verify=ns.verify,
        d=ns.d,
        n_r=ns.n_r,
        static=ns.static,
        beta=ns.beta,
        epsilon=ns.epsilon,
        theta=ns.theta_heavy,
        batch_override=ns.batch_override,
        recompute_every=ns.recompute_every,
        track_surplus=ns.track_surplus,
        max_degree=ns.max_degree,
        k=ns.k,
        audit=ns.audit,
        audit_every=ns.audit_every,
        trace=ns.trace,
        lazy_deletions=ns.lazy_deletions,
    )


def _run(ns: argparse.Namespace) -> int:
    cfg = _config(ns)
    try:
        report = run_experiment(cfg)
    except VerificationFailure as exc:
        dump = {"step": exc.step, "violations": [v.to_dict() for v in exc.violations]}
        print(f"color: {exc}", file=sys.stderr)
        print(json.dumps(dump, sort_keys=True), file=sys.stderr)
        return EXIT_VERIFY
    text = emit_report(report, ns.out, ns.csv)
    if ns.out is None:
        print(text)
    return EXIT_OK


def _gen(ns: argparse.Namespace) -> int:
    if ns.gen == "oblivious":
        s = gen_oblivious_stream(ns.n, ns.t, ns.seed)
    elif ns.gen == "flip":
        s = gen_flip_stream(ns.n, ns.t, ns.seed, ns.max_degree)
    else:
        s = gen_vertex_stream(ns.n, ns.k, ns.seed)
    for msg in s.diagnostics:
        print(f"color: {msg}", file=sys.stderr)
    text = serialize_stream(s)
    if ns.out is None:
        sys.stdout.write(text)
    else:
        Path(ns.out).write_text(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        if ns.cmd == "run":
            return _run(ns)
        return _gen(ns)
    except (ConfigError, StreamError, ValueError, OSError) as exc:
        print(f"color: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
