"""``tracemine`` command line: stats, variants, discover, evaluate, convert.

Exit codes: 0 success, 1 unreadable or invalid input, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from collections.abc import Sequence

from .conformance import METRICS, MINERS, discover, evaluate
from .discovery import MinerParams
from .log import DEFAULT_CLASSIFIER, EventLog, MissingAttributeError, log_to_json
from .petri import PetriNetError, export_dot, export_pnml, import_pnml
from .stats import filter_variants, stats_report, variants
from .xes import LENIENT, STRICT, XesParseError, parse_xes, serialize_xes

logger = logging.getLogger("tracemine")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_USAGE = 2


class InputError(Exception):
    """Input could not be read or parsed; maps to exit code 1."""


class UsageError(Exception):
    """Arguments are valid syntax but unusable; maps to exit code 2."""


def _read_bytes(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def load_log(path: str, strict: bool) -> EventLog:
    return load_log_bytes(_read_bytes(path), path, strict)


def load_log_bytes(data: bytes, name: str, strict: bool) -> EventLog:
    issues: list[str] = []
    try:
        log = parse_xes(data, mode=STRICT if strict else LENIENT, issues=issues)
    except XesParseError as exc:
        raise InputError(f"{name}: {exc}") from exc
    for msg in issues:
        logger.info("%s: %s", name, msg)
    logger.info("%s: %d traces, %d events", name, len(log), log.num_events)
    return log


def resolve_classifier(log: EventLog, spec: str | None) -> tuple[str, ...]:
    """A classifier declared in the log by name, or a comma-separated key list."""
    if not spec:
        return DEFAULT_CLASSIFIER
    if spec in log.classifiers:
        return tuple(log.classifiers[spec])
    keys = tuple(k.strip() for k in spec.split(",") if k.strip())
    if not keys:
        raise UsageError(f"empty classifier {spec!r}")
    return keys


def _split_list(text: str, valid: Sequence[str], what: str) -> list[str]:
    items = [x.strip() for x in text.split(",") if x.strip()]
    if not items or items == ["none"]:
        raise UsageError(f"no {what} selected; choose from {', '.join(valid)}")
    bad = [x for x in items if x not in valid]
    if bad:
        raise UsageError(f"unknown {what} {', '.join(bad)}; choose from {', '.join(valid)}")
    return items


def _emit(out: str | None, data: str | bytes) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
        return
    try:
        with open(out, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise InputError(f"cannot write {out}: {exc.strerror or exc}") from exc


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _counts_text(title: str, counts: dict[str, int]) -> list[str]:
    lines = [f"{title}:"]
    lines += [f"  {label}\t{n}" for label, n in counts.items()]
    return lines


def cmd_stats(args: argparse.Namespace) -> int:
    log = load_log(args.input, args.strict)
    report = stats_report(log, resolve_classifier(log, args.classifier))
    if args.format == "json":
        _emit(None, _dumps(report))
        return EXIT_OK
    lines = [
        f"traces\t{report['num_traces']}",
        f"events\t{report['num_events']}",
        f"variants\t{report['num_variants']}",
    ]
    lines += _counts_text("start activities", report["start_activities"])
    lines += _counts_text("end activities", report["end_activities"])
    lines += _counts_text("activities", report["activities"])
    _emit(None, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_variants(args: argparse.Namespace) -> int:
    if args.top is not None and args.top < 1:
        raise UsageError(f"--top must be at least 1, got {args.top}")
    log = load_log(args.input, args.strict)
    classifier = resolve_classifier(log, args.classifier)
    vs = variants(log, classifier)
    if args.count_only:
        _emit(None, f"{len(vs)}\n")
        return EXIT_OK
    shown = vs[: args.top] if args.top is not None else vs
    if args.write:
        kept = filter_variants(log, (v.sequence for v in shown), classifier)
        _emit(args.write, serialize_xes(kept, compress=args.write.endswith(".gz")))
        logger.info("wrote %d traces to %s", len(kept), args.write)
    total = len(log)
    rows = [{"sequence": list(v.sequence), "count": v.count, "share": v.count / total} for v in shown]
    if args.format == "json":
        _emit(None, _dumps(rows))
    else:
        _emit(None, "".join(f"{','.join(r['sequence'])}\t{r['count']}\t{r['share']:.2%}\n" for r in rows))
    return EXIT_OK


def _params(args: argparse.Namespace) -> MinerParams:
    try:
        return MinerParams(
            dependency_threshold=args.dependency_threshold,
            and_threshold=args.and_threshold,
            loop2_threshold=args.loop2_threshold,
            all_connected=not args.no_all_connected,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_discover(args: argparse.Namespace) -> int:
    log = load_log(args.input, args.strict)
    classifier = resolve_classifier(log, args.classifier)
    try:
        apn = discover(log, args.miner, _params(args), classifier)
    except ValueError as exc:
        raise InputError(f"discovery failed: {exc}") from exc
    if args.out == "dot":
        _emit(args.output, export_dot(apn))
    else:
        _emit(args.output, export_pnml(apn, name=args.miner))
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    miners = _split_list(args.miners, MINERS, "miner")
    metrics = _split_list(args.metrics, METRICS, "metric")
    params = _params(args)
    log = load_log(args.input, args.strict)
    report = evaluate(
        log,
        miners,
        params,
        metrics,
        classifier=resolve_classifier(log, args.classifier),
        workers=args.workers,
    )
    if args.format == "json":
        _emit(None, report.to_json(timing=args.timing) + "\n")
    else:
        _emit(None, report.to_text(timing=args.timing))
    if report.rows and all(r.error is not None for r in report.rows):
        logger.error("every miner failed")
        return EXIT_INPUT
    return EXIT_OK


def _is_pnml(data: bytes) -> bool:
    if data[:2] == b"\x1f\x8b":
        return False
    head = data[:512].lstrip()
    return b"<pnml" in head


def cmd_convert(args: argparse.Namespace) -> int:
    data = _read_bytes(args.input)
    target = args.to or _guess_target(args.output)
    if _is_pnml(data):
        if target not in ("pnml", "dot"):
            raise UsageError(f"a Petri net converts to pnml or dot, not {target}")
        try:
            apn = import_pnml(data)
        except PetriNetError as exc:
            raise InputError(f"{args.input}: {exc}") from exc
        _emit(args.output, export_dot(apn) if target == "dot" else export_pnml(apn))
        return EXIT_OK
    if target not in ("xes", "xes.gz", "json"):
        raise UsageError(f"an event log converts to xes, xes.gz or json, not {target}")
    log = load_log_bytes(data, args.input, args.strict)
    if target == "json":
        _emit(args.output, log_to_json(log, indent=2) + "\n")
    else:
        _emit(args.output, serialize_xes(log, compress=target == "xes.gz"))
    return EXIT_OK


def _guess_target(output: str | None) -> str:
    if output is None or output == "-":
        raise UsageError("--to is required when writing to standard output")
    name = output.lower()
    for ext in ("xes.gz", "xes", "json", "pnml", "dot"):
        if name.endswith("." + ext):
            return ext
    if name.endswith(".gv"):
        return "dot"
    raise UsageError(f"cannot infer output format from {output!r}; pass --to")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="input file (XES, gzip detected automatically); '-' for stdin")
    p.add_argument("--strict", action="store_true", help="fail on the first malformed construct")
    p.add_argument("--classifier", help="classifier name declared in the log or comma-separated keys")


def _add_params(p: argparse.ArgumentParser) -> None:
    d = MinerParams()
    p.add_argument("--dependency-threshold", type=float, default=d.dependency_threshold)
    p.add_argument("--and-threshold", type=float, default=d.and_threshold)
    p.add_argument("--loop2-threshold", type=float, default=d.loop2_threshold)
    p.add_argument(
        "--no-all-connected", action="store_true", help="do not force every activity into the graph"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tracemine", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress and parse notes on stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("stats", help="start/end activities, frequencies, counts")
    _add_common(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("variants", help="list or filter trace variants")
    _add_common(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--top", type=int, metavar="K", help="only the K most frequent variants")
    p.add_argument("--count-only", action="store_true", help="print the number of variants")
    p.add_argument("--write", metavar="PATH", help="write the traces of the listed variants as XES")
    p.set_defaults(func=cmd_variants)

    p = sub.add_parser("discover", help="discover a Petri net")
    _add_common(p)
    p.add_argument("--miner", required=True, choices=MINERS)
    p.add_argument("--out", choices=("pnml", "dot"), default="pnml", help="model format")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    _add_params(p)
    p.set_defaults(func=cmd_discover)

    p = sub.add_parser("evaluate", help="discover with several miners and score the models")
    _add_common(p)
    p.add_argument("--miners", default=",".join(MINERS), help="comma-separated miner names")
    p.add_argument("--metrics", default=",".join(METRICS), help="comma-separated metric names")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds per miner")
    p.add_argument("--workers", type=int, default=None, help="threads for variant replay")
    _add_params(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("convert", help="XES <-> XES.gz/JSON, PNML -> PNML/DOT")
    p.add_argument("input", help="XES log or PNML net")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument("--to", choices=("xes", "xes.gz", "json", "pnml", "dot"))
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="tracemine: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tracemine: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"tracemine: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MissingAttributeError as exc:
        print(f"tracemine: error: {exc}; check --classifier", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
