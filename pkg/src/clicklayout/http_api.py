"""JSON HTTP facade over LayoutService.

Routes are thin: decode the request, call the service, encode the result.
All domain errors funnel through one handler that maps exception types to
status codes, so the service layer never thinks about HTTP.
"""

from __future__ import annotations

from fastapi import Body, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .errors import (
    ClickLayoutError,
    ExtractionError,
    GenerationError,
    NoMatchError,
    NotFoundError,
    ParseError,
    PreconditionError,
    ProtocolError,
    TransportError,
    UnknownPromptError,
    UnsupportedInstructionError,
    ValidationError,
)
from .instruction import instruction_from_obj, parse_instruction_text
from .scene_graph import scene_graph_from_obj, scene_graph_to_obj
from .service import ApplyResult, LayoutService

FALLBACK_HEADER = "X-Clicklayout-Fallback"

_STATUS_BY_TYPE = (
    (NotFoundError, 404),
    (PreconditionError, 409),
    (ParseError, 400),
    (ValidationError, 422),
    (NoMatchError, 422),
    (UnsupportedInstructionError, 422),
    (TransportError, 502),
    (UnknownPromptError, 502),
    (ExtractionError, 502),
    (ProtocolError, 502),
    (GenerationError, 502),
)


def _error_response(exc: ClickLayoutError) -> JSONResponse:
    status = 500
    for error_type, code in _STATUS_BY_TYPE:
        if isinstance(exc, error_type):
            status = code
            break
    payload: dict = {"error": type(exc).__name__, "detail": str(exc)}
    if isinstance(exc, ValidationError) and exc.violations:
        payload["violations"] = list(exc.violations)
    if isinstance(exc, ExtractionError) and exc.raw:
        payload["raw"] = exc.raw
    return JSONResponse(payload, status_code=status)


def create_app(service: LayoutService) -> FastAPI:
    app = FastAPI(title="clicklayout", docs_url=None, redoc_url=None)
    # The web UI is served as static files from another origin; it also needs
    # to read the fallback header, which CORS hides unless exposed.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=[FALLBACK_HEADER],
    )

    @app.exception_handler(ClickLayoutError)
    async def _handle_domain_error(request: Request, exc: ClickLayoutError):
        return _error_response(exc)

    @app.post("/sessions")
    def create_session(payload: dict = Body(...)):
        if "layout" not in payload:
            raise ValidationError("request must carry a layout")
        graph = scene_graph_from_obj(payload["layout"])
        width = _dimension(payload.get("width", 1000), "width")
        height = _dimension(payload.get("height", 1000), "height")
        session_id = service.create_session(graph, width, height)
        return {"session_id": session_id}

    @app.get("/sessions/{session_id}/layout")
    def get_layout(session_id: str):
        return scene_graph_to_obj(service.layout(session_id))

    @app.post("/sessions/{session_id}/instruction")
    def apply_instruction(session_id: str, payload: dict = Body(...)):
        if "instruction_text" in payload:
            text = payload["instruction_text"]
            if not isinstance(text, str):
                raise ValidationError("instruction_text must be a string")
            instruction = parse_instruction_text(text)
        elif "tokens" in payload:
            instruction = instruction_from_obj(payload)
        else:
            raise ValidationError("request must carry instruction_text or tokens")
        return _apply_payload(service.apply_instruction(session_id, instruction))

    @app.post("/sessions/{session_id}/reload")
    def reload_last(session_id: str):
        return _apply_payload(service.reload_last(session_id))

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str):
        return {"layout": scene_graph_to_obj(service.undo(session_id))}

    @app.get("/sessions/{session_id}/history")
    def history(session_id: str):
        return [entry.to_obj() for entry in service.history(session_id)]

    @app.get("/sessions/{session_id}/preview.svg")
    def preview(session_id: str, labels: bool = True):
        svg = service.preview_svg(session_id, show_labels=labels)
        return Response(content=svg, media_type="image/svg+xml")

    @app.post("/sessions/{session_id}/generate")
    def generate(session_id: str):
        try:
            image = service.generate(session_id)
        except GenerationError as exc:
            if exc.fallback is None:
                raise
            # Degraded mode: transport failed but the local preview exists.
            return Response(content=exc.fallback.data,
                            media_type=exc.fallback.media_type,
                            headers={FALLBACK_HEADER: "true"})
        return Response(content=image.data, media_type=image.media_type,
                        headers={FALLBACK_HEADER: "true" if image.fallback else "false"})

    return app


def _apply_payload(result: ApplyResult) -> dict:
    return {
        "layout": scene_graph_to_obj(result.after),
        "chain_of_thought": result.chain_of_thought,
        "diff": result.diff.to_obj(),
    }


def _dimension(value: object, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise ValidationError(f"{name} must be a positive integer")
    return value
