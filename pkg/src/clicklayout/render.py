"""Visual artifacts for layouts: SVG previews and generated images.

The preview is a hand-assembled SVG document so its bytes are fully
deterministic; no drawing library gets a say in formatting. Image
generation goes to an external endpoint when one is configured and
degrades to rasterizing the same preview with PIL when not.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

import requests
from PIL import Image, ImageDraw

from .errors import GenerationError, ProtocolError
from .scene_graph import ObjectBox, SceneGraph, format_coord

GEN_ENDPOINT_ENV = "CLICKLAYOUT_GEN_ENDPOINT"

# Fixed stroke palette; a box keeps its hue across edits because the key is
# its unique_id, not its list position.
PALETTE = (
    "#e6194b",  # red
    "#3cb44b",  # green
    "#4363d8",  # blue
    "#f58231",  # orange
    "#911eb4",  # purple
    "#46b8b8",  # teal
    "#c09b10",  # mustard
    "#f032e6",  # magenta
)


@dataclass(frozen=True)
class RenderConfig:
    canvas_width: int = 1000
    canvas_height: int = 1000
    show_labels: bool = True
    generation_endpoint: str | None = None
    generation_timeout: float = 30.0


@dataclass(frozen=True)
class GeneratedImage:
    data: bytes
    media_type: str
    fallback: bool = False


def box_color(unique_id: int) -> str:
    return PALETTE[unique_id % len(PALETTE)]


def _px(value: float) -> str:
    text = f"{value:.2f}".rstrip("0").rstrip(".")
    return text or "0"


def render_layout_preview(graph: SceneGraph,
                          config: RenderConfig = RenderConfig()) -> str:
    """Standalone SVG preview; byte-identical for identical inputs."""
    w, h = config.canvas_width, config.canvas_height
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'  <rect x="0" y="0" width="{w}" height="{h}" fill="#ffffff"/>',
    ]
    for box in graph.boxes:
        color = box_color(box.unique_id)
        rect = box.box
        x, y = rect.x * w, rect.y * h
        bw, bh = rect.width * w, rect.height * h
        lines.append(
            f'  <rect x="{_px(x)}" y="{_px(y)}" width="{_px(bw)}" '
            f'height="{_px(bh)}" fill={quoteattr(color)} fill-opacity="0.15" '
            f'stroke={quoteattr(color)} stroke-width="2"/>')
        if config.show_labels:
            label = f"{box.name} #{box.unique_id}"
            lines.append(
                f'  <text x="{_px(x + 4)}" y="{_px(y + 18)}" '
                f'font-family="sans-serif" font-size="16" '
                f'fill={quoteattr(color)}>{escape(label)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


# --- Image generation -----------------------------------------------------

def generation_request_body(graph: SceneGraph) -> dict:
    """Wire form sent to the generation endpoint.

    Boxes keep the graph's order and carry no unique_id; the generator only
    needs names and geometry.
    """
    return {
        "prompt": graph.prompt,
        "boxes": [
            {"name": box.name,
             "x": float(format_coord(box.box.x)),
             "y": float(format_coord(box.box.y)),
             "width": float(format_coord(box.box.width)),
             "height": float(format_coord(box.box.height))}
            for box in graph.boxes
        ],
    }


def request_generated_image(graph: SceneGraph,
                            config: RenderConfig = RenderConfig()) -> GeneratedImage:
    """Ask the configured endpoint to render the layout, or fall back locally.

    Transport failures raise GenerationError carrying the local fallback so
    callers can still show something; a non-image response is a protocol
    violation and raises without a fallback.
    """
    endpoint = config.generation_endpoint or os.environ.get(GEN_ENDPOINT_ENV)
    if not endpoint:
        return _fallback_image(graph, config)
    try:
        response = requests.post(endpoint, json=generation_request_body(graph),
                                 timeout=config.generation_timeout)
    except requests.RequestException as exc:
        raise GenerationError(f"generation request failed: {exc}",
                              fallback=_fallback_image(graph, config)) from exc
    if response.status_code != 200:
        raise GenerationError(
            f"generation endpoint returned {response.status_code}",
            fallback=_fallback_image(graph, config))
    media_type = response.headers.get("Content-Type", "").split(";")[0].strip()
    if not media_type.startswith("image/"):
        raise ProtocolError(
            f"generation endpoint returned non-image content: {media_type or 'unknown'}")
    return GeneratedImage(data=response.content, media_type=media_type,
                          fallback=False)


def _fallback_image(graph: SceneGraph, config: RenderConfig) -> GeneratedImage:
    """PNG raster of the preview, drawn directly rather than via the SVG."""
    w, h = config.canvas_width, config.canvas_height
    image = Image.new("RGB", (w, h), "#ffffff")
    draw = ImageDraw.Draw(image, "RGBA")
    for box in graph.boxes:
        _draw_box(draw, box, w, h, config.show_labels)
    buffer = io.BytesIO()
    image.save(buffer, format="PNG")
    return GeneratedImage(data=buffer.getvalue(), media_type="image/png",
                          fallback=True)


def _draw_box(draw: ImageDraw.ImageDraw, box: ObjectBox, w: int, h: int,
              show_labels: bool) -> None:
    color = box_color(box.unique_id)
    rect = box.box
    x0, y0 = rect.x * w, rect.y * h
    x1, y1 = min((rect.x + rect.width) * w, w - 1), min((rect.y + rect.height) * h, h - 1)
    fill = tuple(int(color[i:i + 2], 16) for i in (1, 3, 5)) + (38,)
    draw.rectangle((x0, y0, x1, y1), outline=color, width=2, fill=fill)
    if show_labels:
        draw.text((x0 + 4, y0 + 4), f"{box.name} #{box.unique_id}", fill=color)
