"""Command-line front end: ``wsnet extract | analyze | taxonomy``.

Exit status: 0 when every requested artifact was written, 1 on input or
build failures (the failing specs are listed on stderr, successful ones are
still written), 2 on invalid network specifications.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from .analysis import analyze
from .errors import SpecError, WsnetError
from .export import GRAPH_FORMATS, ExportFormat, graph_bytes, read_graphml, report_bytes, summary_csv
from .ingest import load_collection
from .model import (
    DEFAULT_THRESHOLD,
    Description,
    Granularity,
    Matching,
    Model,
    Network,
    NetworkSpec,
    ServiceCollection,
)
from .networks import build_network, enumerate_taxonomy

log = logging.getLogger("wsnet")


class CliError(Exception):
    def __init__(self, message: str, status: int = 1):
        super().__init__(message)
        self.status = status


def _add_extraction_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("network selection")
    g.add_argument("--collection", action="append", default=[], metavar="PATH",
                   help="manifest JSON, SAWSDL document or directory of them (repeatable)")
    g.add_argument("--ontology", action="append", default=[], metavar="PATH", help="ontology JSON (repeatable)")
    g.add_argument("--model", choices=[m.value for m in Model])
    g.add_argument("--description", choices=[d.value for d in Description])
    g.add_argument("--granularity", choices=[x.value for x in Granularity])
    g.add_argument("--mode", choices=["full", "partial"])
    g.add_argument("--matching", choices=[m.value for m in Matching])
    g.add_argument("--similarity-fn", choices=["fullsim", "partialsim", "excesssim", "relationsim"])
    g.add_argument("--threshold", type=float, default=None,
                   help=f"approximate matching threshold (default {DEFAULT_THRESHOLD})")
    g.add_argument("--service-scope", action="store_true", help="dependency arcs per service signature")
    g.add_argument("--all", action="store_true", help="every network of the 46-network taxonomy")
    g.add_argument("--lenient", action="store_true", help="skip SAWSDL documents outside the subset (with a warning)")
    g.add_argument("--jobs", type=int, default=min(8, os.cpu_count() or 1), help="concurrent builds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wsnet", description="Web-service network extraction and analysis")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="build networks and write graph files")
    _add_extraction_flags(ex)
    ex.add_argument("--format", action="append", choices=[f.value for f in GRAPH_FORMATS],
                    help="graph format (repeatable; default graphml)")
    ex.add_argument("--out-dir", type=Path, default=Path("."))

    an = sub.add_parser("analyze", help="topology reports for graph files or freshly built networks")
    an.add_argument("graphs", nargs="*", type=Path, help="GraphML files written by extract")
    _add_extraction_flags(an)
    an.add_argument("--out-dir", type=Path, default=Path("."))
    an.add_argument("--summary", action="store_true", help="also write summary.csv, one row per network")
    an.add_argument("--strong", action="store_true", help="include strongly connected component sizes")

    sub.add_parser("taxonomy", help="print the network taxonomy tree")
    return parser


# ----------------------------------------------------------------------------
# spec resolution
# ----------------------------------------------------------------------------


def resolve_specs(args: argparse.Namespace) -> list[NetworkSpec]:
    threshold = args.threshold if args.threshold is not None else DEFAULT_THRESHOLD
    if args.all:
        return enumerate_taxonomy(threshold)
    if not args.model or not args.matching:
        raise SpecError("give --all or at least --model and --matching")
    matching = Matching(args.matching)
    model = Model(args.model)
    description = args.description or (Description.SEMANTIC if matching.is_semantic else Description.SYNTACTIC)
    granularity = args.granularity
    if granularity is None:
        if model is Model.DEPENDENCY:
            granularity = Granularity.PARAMETER
        elif model is Model.SIMILARITY:
            granularity = Granularity.OPERATION
        else:
            raise SpecError("interaction networks need --granularity service|operation")
    return [NetworkSpec(
        description=description,
        granularity=granularity,
        model=model,
        matching=matching,
        mode=args.mode,
        similarity_function=args.similarity_fn,
        threshold=threshold if matching.is_approximate else args.threshold,
        service_scope=args.service_scope,
    )]


def _load(args: argparse.Namespace) -> ServiceCollection:
    try:
        return load_collection(args.collection, args.ontology, lenient=args.lenient)
    except FileNotFoundError as exc:
        raise CliError(f"file not found: {exc.filename or exc}") from exc
    except WsnetError as exc:
        raise CliError(str(exc)) from exc


def _build_all(coll: ServiceCollection, specs: Sequence[NetworkSpec], jobs: int):
    """Build concurrently; returns (built, failures) both in spec order."""

    def one(spec):
        try:
            return spec, build_network(coll, spec), None
        except WsnetError as exc:
            return spec, None, exc

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(one, specs))
    built = [(s, net) for s, net, err in results if err is None]
    failed = [(s, err) for s, net, err in results if err is not None]
    for spec, err in failed:
        log.error("%s: %s: %s", spec.name, type(err).__name__, err)
    return built, failed


def _write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)


# ----------------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------------


def cmd_extract(args: argparse.Namespace) -> int:
    specs = resolve_specs(args)
    if not args.collection:
        raise CliError("extract needs --collection")
    coll = _load(args)
    formats = [ExportFormat(f) for f in (args.format or ["graphml"])]
    built, failed = _build_all(coll, specs, args.jobs)
    for spec, net in built:
        for fmt in formats:
            _write(args.out_dir / f"{spec.name}.{fmt.extension}", graph_bytes(net, fmt))
    log.info("wrote %d networks to %s", len(built), args.out_dir)
    return 1 if failed else 0


def cmd_analyze(args: argparse.Namespace) -> int:
    networks: list[tuple[str, Network]] = []
    status = 0
    for path in args.graphs:
        try:
            net = read_graphml(str(path))
        except (OSError, WsnetError) as exc:
            log.error("cannot read graph %s: %s", path, exc)
            status = 1
            continue
        networks.append((net.spec.name if net.spec else path.stem, net))
    if args.collection:
        specs = resolve_specs(args)
        coll = _load(args)
        built, failed = _build_all(coll, specs, args.jobs)
        networks += [(spec.name, net) for spec, net in built]
        if failed:
            status = 1
    elif args.all or args.model:
        raise CliError("network selection flags need --collection")
    if not networks and status == 0:
        raise CliError("nothing to analyze: give graph files or --collection")

    rows = []
    for name, net in networks:
        rep = analyze(net, strong=args.strong)
        _write(args.out_dir / f"{name}.report.json", report_bytes(rep))
        rows.append((name, rep))
    if args.summary:
        # row order independent of how the networks were supplied
        _write(args.out_dir / "summary.csv", summary_csv(sorted(rows, key=lambda r: r[0])))
    return status


def taxonomy_lines(specs: Optional[Sequence[NetworkSpec]] = None) -> list[str]:
    """Indented tree model > description > granularity > mode > matching [> function]; leaves start with '* '."""
    specs = enumerate_taxonomy() if specs is None else specs
    lines: list[str] = []
    prev: list[str] = []
    for spec in specs:
        path = [spec.model.value, spec.description.value, spec.granularity.value]
        if spec.mode:
            path.append(spec.mode.value)
        path.append(spec.matching.value)
        if spec.similarity_function:
            path.append(spec.similarity_function.value)
        common = 0
        while common < min(len(prev), len(path) - 1) and prev[common] == path[common]:
            common += 1
        for depth in range(common, len(path) - 1):
            lines.append("  " * depth + path[depth])
        lines.append("  " * (len(path) - 1) + f"* {path[-1]}  ({spec.name})")
        prev = path
    return lines


def cmd_taxonomy(args: argparse.Namespace) -> int:
    sys.stdout.write("\n".join(taxonomy_lines()) + "\n")
    return 0


_COMMANDS = {"extract": cmd_extract, "analyze": cmd_analyze, "taxonomy": cmd_taxonomy}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("wsnet: %(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if args.verbose else logging.WARNING)
    log.propagate = False
    try:
        return _COMMANDS[args.command](args)
    except SpecError as exc:
        log.error("invalid network specification: %s", exc)
        return 2
    except CliError as exc:
        log.error("%s", exc)
        return exc.status
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
