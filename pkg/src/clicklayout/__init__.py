"""Instruction-driven editing of image layouts.

A layout is a text prompt plus labeled boxes in normalized coordinates.
Instructions mix text with drawn references (boxes, points); a completion
backend (remote model, recorded fixture, or the built-in rule interpreter)
turns an instruction into an edited layout, which can be previewed as SVG
or sent to a layout-conditioned image generator.
"""

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
from .instruction import (
    BoxRef,
    MultimodalInstruction,
    NORMALIZED_UNITS,
    PIXEL_UNITS,
    PointRef,
    TextSpan,
    normalize_instruction,
    parse_instruction_text,
    serialize_instruction,
)
from .llm_backend import BackendConfig, complete, interpret_instruction
from .prompt_engine import (
    ExampleStore,
    FewShotExample,
    LlmTurn,
    build_prompt,
    load_default_store,
    load_example_store,
    parse_llm_response,
)
from .render import (
    GeneratedImage,
    RenderConfig,
    render_layout_preview,
    request_generated_image,
)
from .scene_graph import (
    Add,
    ChangeAppearance,
    Delete,
    EditDiff,
    MoveToPoint,
    MoveToRect,
    NormPoint,
    NormRect,
    ObjectBox,
    Resize,
    SceneGraph,
    apply_edit,
    diff_scene_graphs,
    iou,
    parse_scene_graph,
    resolve_reference,
    serialize_scene_graph,
    validate_scene_graph,
)
from .service import ApplyResult, HistoryEntry, LayoutService, Session

__version__ = "0.1.0"

__all__ = [
    "Add",
    "ApplyResult",
    "BackendConfig",
    "BoxRef",
    "ChangeAppearance",
    "ClickLayoutError",
    "Delete",
    "EditDiff",
    "ExampleStore",
    "ExtractionError",
    "FewShotExample",
    "GeneratedImage",
    "GenerationError",
    "HistoryEntry",
    "LayoutService",
    "LlmTurn",
    "MoveToPoint",
    "MoveToRect",
    "MultimodalInstruction",
    "NORMALIZED_UNITS",
    "NoMatchError",
    "NormPoint",
    "NormRect",
    "NotFoundError",
    "ObjectBox",
    "PIXEL_UNITS",
    "ParseError",
    "PointRef",
    "PreconditionError",
    "ProtocolError",
    "RenderConfig",
    "Resize",
    "SceneGraph",
    "Session",
    "TextSpan",
    "TransportError",
    "UnknownPromptError",
    "UnsupportedInstructionError",
    "ValidationError",
    "apply_edit",
    "build_prompt",
    "complete",
    "diff_scene_graphs",
    "interpret_instruction",
    "iou",
    "load_default_store",
    "load_example_store",
    "normalize_instruction",
    "parse_instruction_text",
    "parse_llm_response",
    "parse_scene_graph",
    "render_layout_preview",
    "request_generated_image",
    "resolve_reference",
    "serialize_instruction",
    "serialize_scene_graph",
    "validate_scene_graph",
]
