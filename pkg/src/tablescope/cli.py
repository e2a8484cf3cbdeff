"""Command-line entry points: batch extraction and the HTTP service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import artifacts
from .config import BadConfig, EngineConfig, load_config
from .errors import TableScopeError
from .explore import build_context
from .facts import ALL_TYPE_NAMES
from .ingest import MatrixTableFile, parse_canonical, parse_matrix

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FLAGS = 3


class _Parser(argparse.ArgumentParser):
    # flag problems exit 3; argparse's default of 2 is reserved for input
    # parse errors
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="tablescope",
                     description="Hierarchical-table fact extraction and "
                                 "exploration service.")
    sub = parser.add_subparsers(dest="command", required=True)

    ex = sub.add_parser("extract", help="extract facts and pages to a directory")
    ex.add_argument("--input", required=True, help="table file (canonical or matrix JSON)")
    ex.add_argument("--out-dir", required=True, help="output directory")
    ex.add_argument("--types", default=None,
                    help="comma-separated fact types to keep (default: all)")
    ex.add_argument("--combo", default=None,
                    help="restrict to one depth combination, e.g. 1,0")
    ex.add_argument("--config", default=None, help="engine config JSON")

    sv = sub.add_parser("serve", help="run the HTTP service")
    sv.add_argument("--data-dir", default="tablescope-data",
                    help="directory for tables and session journals")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8000)
    sv.add_argument("--config", default=None, help="engine config JSON")
    sv.add_argument("--frontend", default=None,
                    help="directory with built UI assets (default: "
                         "./frontend/dist when present)")
    return parser


def _load_engine_config(path: Optional[str], parser: _Parser) -> EngineConfig:
    if path is None:
        return EngineConfig()
    try:
        return load_config(path)
    except (OSError, json.JSONDecodeError, BadConfig) as exc:
        parser.error(f"--config: {exc}")
        raise AssertionError("unreachable")


def _parse_types(raw: Optional[str], parser: _Parser) -> frozenset[str]:
    if raw is None:
        return ALL_TYPE_NAMES
    names = frozenset(t.strip() for t in raw.split(",") if t.strip())
    unknown = names - ALL_TYPE_NAMES
    if unknown:
        parser.error(f"--types: unknown fact types {sorted(unknown)}")
    if not names:
        parser.error("--types: no types given")
    return names


def _parse_combo(raw: Optional[str], parser: _Parser) -> Optional[tuple[int, int]]:
    if raw is None:
        return None
    parts = raw.split(",")
    if len(parts) != 2:
        parser.error("--combo: expected R,C")
    try:
        combo = (int(parts[0]), int(parts[1]))
    except ValueError:
        parser.error("--combo: expected two integers")
        raise AssertionError("unreachable")
    if combo[0] < 0 or combo[1] < 0 or combo == (0, 0):
        parser.error(f"--combo: {combo} is not a valid depth combination")
    return combo


def _read_table(path_text: str):
    path = Path(path_text)
    doc = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise TableScopeError("table file must hold a JSON object")
    if "cells" in doc:
        return parse_matrix(MatrixTableFile.from_dict(doc))
    return parse_canonical(doc)


def _extract(args: argparse.Namespace, parser: _Parser) -> int:
    config = _load_engine_config(args.config, parser)
    enabled = _parse_types(args.types, parser)
    combo = _parse_combo(args.combo, parser)
    try:
        table = _read_table(args.input)
    except (OSError, json.JSONDecodeError, TableScopeError) as exc:
        print(f"tablescope: cannot parse {args.input}: {exc}", file=sys.stderr)
        return EXIT_PARSE

    ctx = build_context(table, config)
    if combo is not None and not ctx.graph.has(combo):
        parser.error(f"--combo: {combo} does not exist for this table")

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    facts = artifacts.facts_document(ctx, enabled, combo)
    pages = artifacts.pages_document(ctx, enabled, combo)
    (out_dir / "facts.json").write_text(artifacts.to_json(facts),
                                        encoding="utf-8")
    (out_dir / "pages.json").write_text(artifacts.to_json(pages),
                                        encoding="utf-8")
    charts = artifacts.chart_documents(ctx, enabled, combo)
    for name, payload in charts.items():
        (out_dir / name).write_text(payload, encoding="utf-8")
    print(f"wrote {facts['count']} facts, {len(pages['pages'])} pages, "
          f"{len(charts)} charts to {out_dir}")
    return EXIT_OK


def _serve(args: argparse.Namespace, parser: _Parser) -> int:
    from .service import serve

    config = _load_engine_config(args.config, parser)
    frontend = Path(args.frontend) if args.frontend else Path("frontend/dist")
    serve(args.data_dir, host=args.host, port=args.port, config=config,
          frontend_dir=frontend if frontend.is_dir() else None)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "extract":
        return _extract(args, parser)
    return _serve(args, parser)


if __name__ == "__main__":
    sys.exit(main())
