"""HTTP+JSON API over a review session.

Serves sentence pairs needing review, records span corrections with an
audit trail, and exports the corrected corpus.  Single-annotator desk tool:
binds to loopback by default, optional shared-token header.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

from fastapi import Depends, FastAPI, HTTPException, Request, Response
from pydantic import BaseModel

from argproj.corpus import ComponentLabel, Span, serialize_conll
from argproj.review.store import ReviewStore, UnknownItemError

TOKEN_HEADER = "X-Review-Token"


class SpanIn(BaseModel):
    start: int
    end: int
    label: Literal["Claim", "Premise", "MajorClaim"]

    def to_span(self) -> Span:
        return Span(self.start, self.end, ComponentLabel(self.label))


def create_app(store: ReviewStore, token: str | None = None,
               ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="argproj review server")

    def check_token(request: Request) -> None:
        if token is not None and request.headers.get(TOKEN_HEADER) != token:
            raise HTTPException(status_code=401, detail="missing or wrong review token")

    guarded = Depends(check_token)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "items": len(store.items)}

    @app.get("/items", dependencies=[guarded])
    def list_items(response: Response, status: str | None = None,
                   outcome: str | None = None, page: int = 0,
                   page_size: int = 50) -> dict:
        try:
            items, total = store.list_items(
                status=status, outcome=outcome, page=page, page_size=min(page_size, 500))
        except ValueError as err:
            raise HTTPException(status_code=400, detail=str(err)) from err
        response.headers["X-Total-Count"] = str(total)
        return {
            "items": [item.to_wire() for item in items],
            "total": total,
            "page": page,
            "page_size": page_size,
        }

    @app.get("/items/{item_id}", dependencies=[guarded])
    def get_item(item_id: str) -> dict:
        try:
            return store.get(item_id).to_wire()
        except UnknownItemError:
            raise HTTPException(status_code=404, detail=f"unknown item {item_id!r}") from None

    @app.post("/items/{item_id}/correction", dependencies=[guarded])
    def submit_correction(item_id: str, spans: list[SpanIn]) -> dict:
        try:
            converted = [s.to_span() for s in spans]
            return store.submit_correction(item_id, converted).to_wire()
        except UnknownItemError:
            raise HTTPException(status_code=404, detail=f"unknown item {item_id!r}") from None
        except ValueError as err:
            raise HTTPException(status_code=422, detail=str(err)) from err

    @app.post("/items/{item_id}/skip", dependencies=[guarded])
    def skip_item(item_id: str) -> dict:
        try:
            return store.skip(item_id).to_wire()
        except UnknownItemError:
            raise HTTPException(status_code=404, detail=f"unknown item {item_id!r}") from None

    @app.get("/export", dependencies=[guarded])
    def export() -> dict:
        return {"conll": serialize_conll(store.export_corpus()), "audit": store.audit()}

    @app.get("/stats", dependencies=[guarded])
    def stats() -> dict:
        return store.stats()

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def run_server(store: ReviewStore, host: str = "127.0.0.1", port: int = 8000,
               token: str | None = None, ui_dir: str | Path | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(store, token=token, ui_dir=ui_dir), host=host, port=port)
