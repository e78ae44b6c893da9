"""Command-line entry point: ``acyclic-planar <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 no configuration found,
3 extension failed, 4 verification rejected.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .coloring import EdgeColoring, verify_acyclic
from .colorizer import ExtensionFailed, NoConfiguration, color_graph
from .configurations import check_configuration, find_configuration
from .corpus import default_corpus, default_jobs, run_corpus, summarize, write_report
from .discharging import discharge
from .fileformats import format_coloring, format_graph, parse_coloring, read_graph, write_graph
from .generators import FAMILIES, CorpusSpec, generate
from .graph import GraphError
from .oracle import OracleLimit, exact_acyclic_index

EXIT_USAGE = 1
EXIT_NO_CONFIG = 2
EXIT_EXTENSION = 3
EXIT_REJECT = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _existing(path: str) -> Path:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return p


def _writable(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    if not p.parent.exists():
        raise UsageError(f"directory does not exist: {p.parent}")
    return p


def _cmd_color(args) -> int:
    src = _existing(args.graph)
    out, trace_path = _writable(args.out), _writable(args.trace)
    g, _ = read_graph(src)
    try:
        res = color_graph(g, fallback_radius=args.fallback_radius)
    except NoConfiguration as exc:
        print(f"no configuration: {exc}", file=sys.stderr)
        return EXIT_NO_CONFIG
    except ExtensionFailed as exc:
        print(f"extension failed: {exc}", file=sys.stderr)
        if trace_path:
            trace_path.write_text("".join(json.dumps(s.as_json()) + "\n" for s in exc.trace))
        return EXIT_EXTENSION
    text = format_coloring(g, res.coloring.colors)
    if out:
        out.write_text(text)
    else:
        sys.stdout.write(text)
    if trace_path:
        trace_path.write_text("".join(json.dumps(s.as_json()) + "\n" for s in res.trace))
    st = res.stats
    print(f"colored {g.m} edges with {res.coloring.num_colors()} colors (palette {st.palette}); "
          f"fallback incidents: {len(st.incidents)}", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    g, _ = read_graph(_existing(args.graph))
    mapping = parse_coloring(_existing(args.coloring).read_text(), g)
    k = args.k if args.k is not None else g.max_degree() + 7
    verdict = verify_acyclic(g, EdgeColoring.from_mapping(g, mapping, k), k)
    if verdict:
        print(f"accept (k={k})")
        return 0
    print(f"reject: {verdict.reason}: {verdict.detail}")
    return EXIT_REJECT


def _cmd_find_config(args) -> int:
    g, _ = read_graph(_existing(args.graph))
    cfg = find_configuration(g)
    if cfg is None:
        print("none")
        return 0
    assert check_configuration(g, cfg)
    print(json.dumps(cfg.as_json(), sort_keys=True))
    return 0


def _cmd_discharge(args) -> int:
    g, emb = read_graph(_existing(args.graph))
    if emb is None:
        raise UsageError("discharge needs a graph file with a rotations block")
    print(json.dumps(discharge(g, emb).as_json(), sort_keys=True))
    return 0


def _cmd_oracle(args) -> int:
    g, _ = read_graph(_existing(args.graph))
    try:
        print(exact_acyclic_index(g, args.k_max, args.node_limit))
    except OracleLimit as exc:
        print(f"oracle limit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


def _cmd_gen(args) -> int:
    out = _writable(args.out)
    base = None
    if args.family == "subdivided":
        if not args.base:
            raise UsageError("subdivided needs --base FAMILY[:p1,p2,...]")
        fam, _, raw = args.base.partition(":")
        params = tuple(int(x) for x in raw.split(",") if x)
        base = CorpusSpec(fam, params, args.base_seed)
    g, emb = generate(CorpusSpec(args.family, tuple(args.params), args.seed, base))
    if out:
        write_graph(out, g, emb)
    else:
        sys.stdout.write(format_graph(g, emb))
    return 0


def _cmd_corpus_run(args) -> int:
    report = _writable(args.report)
    specs = default_corpus(args.seeds, args.per_seed)
    records = run_corpus(specs, jobs=args.jobs or default_jobs(), fallback_radius=args.fallback_radius)
    summary = summarize(records)
    if report:
        write_report(report, records, summary)
    print(f"{summary['verified']}/{summary['instances']} verified; "
          f"fallback incidents {summary['fallback_incidents']}; "
          f"min margin to palette {summary['min_margin_to_palette']}")
    for f in summary["failed"]:
        print(f"FAILED {f['label']}: {f['status']} {f['reason']}")
    if any(f["status"] == "no-configuration" for f in summary["failed"]):
        return EXIT_NO_CONFIG
    if any(f["status"] == "extension-failed" for f in summary["failed"]):
        return EXIT_EXTENSION
    return EXIT_REJECT if summary["failed"] else 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="acyclic-planar", description="Acyclic edge coloring of planar graphs with Δ+7 colors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("color", help="color a graph and verify the result")
    c.add_argument("graph")
    c.add_argument("--out")
    c.add_argument("--trace", help="write one JSON object per extension step")
    c.add_argument("--fallback-radius", type=int, default=6)
    c.set_defaults(func=_cmd_color)

    v = sub.add_parser("verify", help="check a coloring file")
    v.add_argument("graph")
    v.add_argument("coloring")
    v.add_argument("--k", type=int, help="palette bound (default: maximum degree + 7)")
    v.set_defaults(func=_cmd_verify)

    f = sub.add_parser("find-config", help="print the first reducible configuration as JSON")
    f.add_argument("graph")
    f.set_defaults(func=_cmd_find_config)

    d = sub.add_parser("discharge", help="run the discharging rules on an embedded graph")
    d.add_argument("graph")
    d.set_defaults(func=_cmd_discharge)

    o = sub.add_parser("oracle", help="exact acyclic chromatic index of a small graph")
    o.add_argument("graph")
    o.add_argument("--k-max", type=int, default=12)
    o.add_argument("--node-limit", type=int, default=5_000_000)
    o.set_defaults(func=_cmd_oracle)

    gn = sub.add_parser("gen", help="generate a planar graph with its rotation system")
    gn.add_argument("family", choices=FAMILIES)
    gn.add_argument("params", type=int, nargs="*")
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--base", help="base family for subdivided, e.g. wheel:8")
    gn.add_argument("--base-seed", type=int, default=0)
    gn.add_argument("--out")
    gn.set_defaults(func=_cmd_gen)

    r = sub.add_parser("corpus-run", help="color and verify the generated corpus")
    r.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3, 4])
    r.add_argument("--per-seed", type=int, default=200)
    r.add_argument("--jobs", type=int, default=0, help="worker processes (default: $ACYCLIC_PLANAR_JOBS or 1)")
    r.add_argument("--fallback-radius", type=int, default=6)
    r.add_argument("--report", help="line-delimited JSON report path")
    r.set_defaults(func=_cmd_corpus_run)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
