"""ringgraph command line.

  ringgraph compute --ring m2:gf:2^1 --kind lambda1 --format json
  ringgraph verify table1 --structure
  ringgraph info --ring "prod:(gf:2^1,gf:3^1)"

Exit status: 0 ok, 1 verification failed, 2 bad descriptor or unknown
suite, 3 ring over the size limit, 4 unital graph of a ring without 1.
"""

from __future__ import annotations

import argparse
import sys

from . import descriptor as dsc
from .cache import ResultCache, cache_key
from .compressed import commuting_graph, compressed_graph
from .errors import DEFAULT_MAX_ORDER, DescriptorError, NonUnitalError, SizeLimitError
from .graph import from_dict
from .rings import center
from .verify import SUITES, run_verification, suite_cases

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_SIZE = 3
EXIT_NONUNITAL = 4


def _summary(kind: str, graph) -> str:
    if kind == "gamma":
        return f"v={graph.n} edges={graph.edge_count}"
    key = "v1" if kind == "lambda1" else "v"
    weights = ",".join(str(w) for w in sorted(graph.weights, reverse=True))
    return f"{key}={graph.n} weights=[{weights}]"


def _compute_graph(ring_text: str, kind: str, max_order: int) -> dict:
    ring = dsc.build_ring(ring_text, max_order=max_order)
    if kind == "gamma":
        return commuting_graph(ring).to_dict()
    return compressed_graph(ring, unital=(kind == "lambda1")).to_dict()


def cmd_compute(args) -> int:
    canon = dsc.canonical(args.ring)
    key = cache_key(canon, args.kind)
    cache = None if args.no_cache else ResultCache()
    entry = cache.get(key) if cache is not None else None
    hit = entry is not None
    if not hit:
        entry = {"ring": canon, "kind": args.kind, "graph": _compute_graph(canon, args.kind, args.max_order)}
        if cache is not None:
            cache.put(key, entry)
    graph = from_dict(entry["graph"])
    text = graph.to_json() + "\n" if args.format == "json" else graph.to_dot()
    status = f"ring={canon} kind={args.kind} cache={'hit' if hit else ('miss' if cache else 'off')}"
    summary = _summary(args.kind, graph)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(summary)
        print(status)
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
        print(status, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_USAGE
    report = run_verification(suite_cases(args.suite, args.max_order), args.structure, max_order=args.max_order)
    print(report.to_json() if args.json else report.table())
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_info(args) -> int:
    ring = dsc.build_ring(args.ring, max_order=args.max_order)
    unital = "true" if ring.is_unital else "false"
    print(f"ring={ring.descriptor} order={ring.order} char={ring.characteristic} "
          f"unital={unital} center={len(center(ring))}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ringgraph", description="Compressed commuting graphs of finite rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def limit(p):
        p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                       help=f"refuse rings with more elements (default {DEFAULT_MAX_ORDER})")

    p = sub.add_parser("compute", help="build a graph and export it")
    p.add_argument("--ring", required=True, help="ring descriptor, e.g. m2:gf:2^1")
    p.add_argument("--kind", choices=("lambda", "lambda1", "gamma"), default="lambda")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--output", "-o", help="write the export here instead of stdout")
    p.add_argument("--no-cache", action="store_true", help="neither read nor write the result cache")
    limit(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="compare closed forms with computed graphs")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--structure", action="store_true", help="also check isomorphism with the predicted structure")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    limit(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("info", help="order, characteristic, unitality and center size")
    p.add_argument("--ring", required=True)
    limit(p)
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except NonUnitalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONUNITAL


if __name__ == "__main__":
    sys.exit(main())
