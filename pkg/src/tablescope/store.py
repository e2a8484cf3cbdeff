"""Persistent table registry and session store.

Tables live as canonical JSON files keyed by a content hash, so the same
upload always gets the same id. Sessions are append-only JSON-lines
journals: a header line naming the table, then one line per applied action
with its recorded timestamp. Loading a journal replays the actions through
the explore module, reconstructing the exact session state.
"""

from __future__ import annotations

import hashlib
import json
import re
import time
from pathlib import Path
from typing import Optional

from .config import EngineConfig
from .errors import TableScopeError
from .explore import (
    ExplorationSession,
    TableContext,
    build_context,
    new_session,
    select,
    set_filters,
    swap_chart,
    switch_page,
    zoom,
)
from .ingest import emit_canonical, parse_canonical, parse_matrix, MatrixTableFile
from .model import HierTable


class UnknownTable(TableScopeError):
    pass


class UnknownSession(TableScopeError):
    pass


class BadAction(TableScopeError):
    pass


_SESSION_ID_RE = re.compile(r"^s(\d{6})$")


class SessionStore:
    """Single-process store; per-session mutations are applied serially."""

    def __init__(self, root: Path | str, config: Optional[EngineConfig] = None):
        self.root = Path(root)
        self.config = config or EngineConfig()
        self.tables_dir = self.root / "tables"
        self.sessions_dir = self.root / "sessions"
        self.tables_dir.mkdir(parents=True, exist_ok=True)
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self._contexts: dict[str, TableContext] = {}
        self._sessions: dict[str, ExplorationSession] = {}

    # -- tables ---------------------------------------------------------------

    def add_table(self, doc: dict) -> str:
        """Register a table from a canonical or matrix document; returns its
        content-derived id (re-uploading is idempotent)."""
        if "cells" in doc:
            table = parse_matrix(MatrixTableFile.from_dict(doc))
        else:
            table = parse_canonical(doc)
        canonical = emit_canonical(table)
        table_id = "t" + hashlib.sha1(canonical.encode("utf-8")).hexdigest()[:10]
        path = self.tables_dir / f"{table_id}.json"
        if not path.exists():
            path.write_text(canonical, encoding="utf-8")
        return table_id

    def table_ids(self) -> list[str]:
        return sorted(p.stem for p in self.tables_dir.glob("t*.json"))

    def get_table(self, table_id: str) -> HierTable:
        path = self.tables_dir / f"{table_id}.json"
        if not path.exists():
            raise UnknownTable(f"no table {table_id}")
        return parse_canonical(path.read_text(encoding="utf-8"))

    def get_context(self, table_id: str) -> TableContext:
        if table_id not in self._contexts:
            self._contexts[table_id] = build_context(self.get_table(table_id),
                                                     self.config)
        return self._contexts[table_id]

    # -- sessions -------------------------------------------------------------

    def _journal_path(self, session_id: str) -> Path:
        return self.sessions_dir / f"{session_id}.jsonl"

    def _next_session_id(self) -> str:
        top = 0
        for p in self.sessions_dir.glob("s*.jsonl"):
            m = _SESSION_ID_RE.match(p.stem)
            if m:
                top = max(top, int(m.group(1)))
        return f"s{top + 1:06d}"

    def create_session(self, table_id: str) -> tuple[str, ExplorationSession]:
        ctx = self.get_context(table_id)  # raises UnknownTable
        session_id = self._next_session_id()
        session = new_session(ctx, table_id)
        header = {"table_id": table_id, "created": time.time()}
        self._journal_path(session_id).write_text(
            json.dumps(header, ensure_ascii=False) + "\n", encoding="utf-8")
        self._sessions[session_id] = session
        return session_id, session

    def session_ids(self) -> list[str]:
        return sorted(p.stem for p in self.sessions_dir.glob("s*.jsonl"))

    def get_session(self, session_id: str) -> ExplorationSession:
        if session_id not in self._sessions:
            self._sessions[session_id] = self._replay(session_id)
        return self._sessions[session_id]

    def context_of(self, session_id: str) -> TableContext:
        return self.get_context(self.get_session(session_id).table_id)

    def _replay(self, session_id: str) -> ExplorationSession:
        path = self._journal_path(session_id)
        if not path.exists():
            raise UnknownSession(f"no session {session_id}")
        lines = path.read_text(encoding="utf-8").splitlines()
        header = json.loads(lines[0])
        ctx = self.get_context(header["table_id"])
        session = new_session(ctx, header["table_id"])
        for line in lines[1:]:
            entry = json.loads(line)
            session = _apply(ctx, session, entry["op"], entry["args"],
                             entry["ts"])
        return session

    def apply(self, session_id: str, op: str, args: dict,
              now: Optional[float] = None) -> ExplorationSession:
        """Run one action against a session and journal it on success."""
        session = self.get_session(session_id)
        ctx = self.get_context(session.table_id)
        ts = time.time() if now is None else now
        session = _apply(ctx, session, op, args, ts)
        entry = {"op": op, "args": args, "ts": ts}
        with self._journal_path(session_id).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, ensure_ascii=False) + "\n")
        self._sessions[session_id] = session
        return session


def _apply(ctx: TableContext, session: ExplorationSession, op: str,
           args: dict, ts: float) -> ExplorationSession:
    if op == "select":
        return select(ctx, session, args["block_id"], ts)
    if op == "zoom":
        return zoom(ctx, session, args["direction"], ts)
    if op == "page":
        return switch_page(ctx, session,
                           (int(args["r_depth"]), int(args["c_depth"])), ts)
    if op == "embed":
        return swap_chart(ctx, session, args["block_id"], args["fact_id"], ts)
    if op == "filters":
        return set_filters(ctx, session, args["types"], ts)
    raise BadAction(f"unknown action {op!r}")
