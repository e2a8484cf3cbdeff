"""HTTP service exposing tables, facts, pages, and live exploration
sessions. Every mutation returns the full next view state so the client
never needs a second round-trip."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import artifacts
from .charts import export_grammar_json
from .blocks import raw_cells
from .errors import TableScopeError
from .explore import TableContext, export_path
from .layout import UnknownBlock, UnknownCombo, UnknownFact
from .store import SessionStore, UnknownSession, UnknownTable

_NOT_FOUND = (UnknownTable, UnknownSession, UnknownBlock, UnknownFact,
              UnknownCombo)


def view_state(store: SessionStore, session_id: str) -> dict:
    session = store.get_session(session_id)
    ctx = store.context_of(session_id)
    page = session.current
    doc = artifacts.page_doc(ctx, page.combo, session.enabled_types)
    # reflect live swaps: page_doc builds the policy default, the session may
    # have manual embeds
    by_id = {b["id"]: b for b in doc["blocks"]}
    for block, embedded, alternatives in zip(page.blocks, page.embedded,
                                             page.alternatives):
        entry = by_id[block.id]
        entry["embedded"] = embedded
        entry["alternatives"] = list(alternatives)
        entry["chart"] = (
            json.loads(export_grammar_json(ctx.facts_by_id[embedded].chart))
            if embedded is not None else None)
    return {
        "session_id": session_id,
        "table_id": session.table_id,
        "title": ctx.table.title,
        "combo": list(page.combo),
        "s_depth": page.combo[0] + page.combo[1],
        "page": doc,
        "graph": artifacts.graph_doc(ctx, session.enabled_types),
        "filters": sorted(session.enabled_types),
        "selected_block": session.selected_block,
        "focused_fact": session.focused_fact,
        "recommendation": {
            "in": list(session.recommendation.zoom_in)
            if session.recommendation.zoom_in else None,
            "out": list(session.recommendation.zoom_out)
            if session.recommendation.zoom_out else None,
        },
        "path_length": len(session.path_log),
    }


def create_app(store: SessionStore, frontend_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="tablescope")

    @app.exception_handler(TableScopeError)
    async def _domain_error(_req: Request, exc: TableScopeError):
        status = 404 if isinstance(exc, _NOT_FOUND) else 400
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(_req: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    def _artifact(doc: dict) -> Response:
        return Response(content=artifacts.to_json(doc),
                        media_type="application/json")

    def _field(body: dict, key: str):
        if not isinstance(body, dict) or key not in body:
            raise ValueError(f"missing field {key!r}")
        return body[key]

    @app.post("/tables")
    async def post_table(request: Request):
        doc = await request.json()
        if not isinstance(doc, dict):
            return JSONResponse(status_code=400,
                                content={"detail": "body must be an object"})
        table_id = store.add_table(doc)
        return {"table_id": table_id}

    @app.get("/tables/{table_id}/facts")
    def get_facts(table_id: str):
        return _artifact(artifacts.facts_document(store.get_context(table_id)))

    @app.get("/tables/{table_id}/pages")
    def get_pages(table_id: str):
        return _artifact(artifacts.pages_document(store.get_context(table_id)))

    @app.post("/sessions")
    async def post_session(request: Request):
        body = await request.json()
        session_id, _session = store.create_session(_field(body, "table_id"))
        return view_state(store, session_id)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return view_state(store, session_id)

    @app.post("/sessions/{session_id}/select")
    async def post_select(session_id: str, request: Request):
        body = await request.json()
        store.apply(session_id, "select", {"block_id": _field(body, "block_id")})
        return view_state(store, session_id)

    @app.post("/sessions/{session_id}/zoom")
    async def post_zoom(session_id: str, request: Request):
        body = await request.json()
        before = store.get_session(session_id).current.combo
        session = store.apply(session_id, "zoom",
                              {"direction": _field(body, "direction")})
        state = view_state(store, session_id)
        state["moved"] = session.current.combo != before
        return state

    @app.post("/sessions/{session_id}/page")
    async def post_page(session_id: str, request: Request):
        body = await request.json()
        store.apply(session_id, "page", {"r_depth": _field(body, "r_depth"),
                                         "c_depth": _field(body, "c_depth")})
        return view_state(store, session_id)

    @app.post("/sessions/{session_id}/embed")
    async def post_embed(session_id: str, request: Request):
        body = await request.json()
        store.apply(session_id, "embed", {"block_id": _field(body, "block_id"),
                                          "fact_id": _field(body, "fact_id")})
        return view_state(store, session_id)

    @app.post("/sessions/{session_id}/filters")
    async def post_filters(session_id: str, request: Request):
        body = await request.json()
        store.apply(session_id, "filters", {"types": list(_field(body, "types"))})
        return view_state(store, session_id)

    @app.get("/sessions/{session_id}/block/{block_id}/alternatives")
    def get_alternatives(session_id: str, block_id: str):
        session = store.get_session(session_id)
        ctx = store.context_of(session_id)
        embedded = session.current.embedded_for(block_id)
        fact_ids = ([embedded] if embedded else []) + \
            list(session.current.alternatives_for(block_id))
        return {
            "block_id": block_id,
            "embedded": embedded,
            "facts": [_fact_summary(ctx, f) for f in fact_ids],
        }

    @app.get("/sessions/{session_id}/block/{block_id}/raw")
    def get_raw(session_id: str, block_id: str):
        session = store.get_session(session_id)
        ctx = store.context_of(session_id)
        session.current.index_of(block_id)  # 404 when not on this page
        return raw_cells(ctx.table, ctx.blocks_by_id[block_id])

    @app.get("/sessions/{session_id}/path")
    def get_path(session_id: str):
        return export_path(store.get_session(session_id))

    if frontend_dir is not None and frontend_dir.is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True),
                  name="frontend")

    return app


def _fact_summary(ctx: TableContext, fact_id: str) -> dict:
    fact = ctx.facts_by_id[fact_id]
    return {
        "id": fact.id,
        "type": fact.fact_type.name,
        "category": fact.fact_type.category,
        "score": fact.score,
        "description": fact.description,
        "attributes": sorted(fact.attributes),
        "chart": json.loads(export_grammar_json(fact.chart)),
    }


def serve(data_dir: Path | str, host: str = "127.0.0.1", port: int = 8000,
          config=None, frontend_dir: Optional[Path] = None) -> None:
    import uvicorn

    store = SessionStore(data_dir, config)
    app = create_app(store, frontend_dir)
    uvicorn.run(app, host=host, port=port)
