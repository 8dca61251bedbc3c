"""Scene-graph layouts: normalized boxes, canonical JSON, primitive edits.

A layout is a global text prompt plus a list of labeled bounding boxes in
normalized image coordinates. This module owns the canonical textual form of
that structure, its validation, primitive edits, diffing, and the IoU-based
resolution of drawn reference boxes to objects.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Iterable, Union

from .errors import NoMatchError, NotFoundError, ParseError, ValidationError

# Slack allowed when a box extent lands on the far edge (float ingest noise).
EDGE_EPSILON = 1e-9

# Smallest per-field rect change that diff_scene_graphs reports as a move.
MOVE_EPSILON = 1e-9

# File extension for persisted layouts.
LAYOUT_SUFFIX = ".layout.json"


@dataclass(frozen=True)
class NormRect:
    """Axis-aligned box; all fields are fractions of the image dimensions."""

    x: float
    y: float
    width: float
    height: float

    @property
    def center_x(self) -> float:
        return self.x + self.width / 2

    @property
    def center_y(self) -> float:
        return self.y + self.height / 2

    def area(self) -> float:
        return self.width * self.height


@dataclass(frozen=True)
class NormPoint:
    """A 2D point in normalized image coordinates."""

    x: float
    y: float


@dataclass(frozen=True)
class ObjectBox:
    """One labeled object in a layout."""

    unique_id: int
    name: str
    box: NormRect


@dataclass(frozen=True)
class SceneGraph:
    """A full layout: scene prompt plus ordered object boxes."""

    prompt: str = ""
    boxes: tuple[ObjectBox, ...] = ()

    def __post_init__(self):
        if not isinstance(self.boxes, tuple):
            object.__setattr__(self, "boxes", tuple(self.boxes))

    def get(self, unique_id: int) -> ObjectBox | None:
        for box in self.boxes:
            if box.unique_id == unique_id:
                return box
        return None

    def ids(self) -> tuple[int, ...]:
        return tuple(box.unique_id for box in self.boxes)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()


# --- Primitive edit operations -------------------------------------------

@dataclass(frozen=True)
class MoveToPoint:
    """Translate a box so its center lands on the target point."""

    unique_id: int
    point: NormPoint


@dataclass(frozen=True)
class MoveToRect:
    """Replace a box's rect wholesale (may move and resize)."""

    unique_id: int
    rect: NormRect


@dataclass(frozen=True)
class Add:
    """Append a new object; a fresh unique_id is assigned on application."""

    name: str
    rect: NormRect


@dataclass(frozen=True)
class Delete:
    unique_id: int


@dataclass(frozen=True)
class ChangeAppearance:
    """Replace an object's name, leaving its geometry alone."""

    unique_id: int
    name: str


@dataclass(frozen=True)
class Resize:
    """Replace width/height, keeping the box center fixed."""

    unique_id: int
    width: float
    height: float


EditOp = Union[MoveToPoint, MoveToRect, Add, Delete, ChangeAppearance, Resize]


# --- Diffs ----------------------------------------------------------------

@dataclass(frozen=True)
class MovedBox:
    unique_id: int
    before: NormRect
    after: NormRect


@dataclass(frozen=True)
class Relabeled:
    unique_id: int
    before: str
    after: str


@dataclass(frozen=True)
class EditDiff:
    """Per-object changes between two layouts, matched by unique_id."""

    moved: tuple[MovedBox, ...] = ()
    added: tuple[ObjectBox, ...] = ()
    removed: tuple[int, ...] = ()
    relabeled: tuple[Relabeled, ...] = ()
    prompt_changed: bool = False

    def is_empty(self) -> bool:
        return not (self.moved or self.added or self.removed
                    or self.relabeled or self.prompt_changed)

    def touched_ids(self) -> set[int]:
        ids = {entry.unique_id for entry in self.moved}
        ids.update(box.unique_id for box in self.added)
        ids.update(self.removed)
        ids.update(entry.unique_id for entry in self.relabeled)
        return ids

    def to_obj(self) -> dict:
        return {
            "moved": [
                {"unique_id": m.unique_id,
                 "before": _rect_to_obj(m.before),
                 "after": _rect_to_obj(m.after)}
                for m in self.moved
            ],
            "added": [_box_to_obj(b) for b in self.added],
            "removed": list(self.removed),
            "relabeled": [
                {"unique_id": r.unique_id, "before": r.before, "after": r.after}
                for r in self.relabeled
            ],
            "prompt_changed": self.prompt_changed,
        }


# --- Validation -----------------------------------------------------------

def validate_scene_graph(graph: SceneGraph) -> ValidationReport:
    """Check every type invariant; returns a report instead of raising."""
    violations: list[str] = []
    if not isinstance(graph.prompt, str):
        violations.append("prompt must be a string")
    seen: set[int] = set()
    for i, box in enumerate(graph.boxes):
        has_id = isinstance(box.unique_id, int) and not isinstance(box.unique_id, bool)
        label = f"box {box.unique_id}" if has_id else f"boxes[{i}]"
        if not has_id:
            violations.append(f"boxes[{i}]: unique_id must be an integer")
        elif box.unique_id < 0:
            violations.append(f"{label}: negative unique_id")
        elif box.unique_id in seen:
            violations.append(f"duplicate unique_id {box.unique_id}")
        else:
            seen.add(box.unique_id)
        if not isinstance(box.name, str) or not box.name.strip():
            violations.append(f"{label}: empty name")
        violations.extend(f"{label}: {v}" for v in _rect_violations(box.box))
    return ValidationReport(ok=not violations, violations=tuple(violations))


def _rect_violations(rect: NormRect) -> list[str]:
    out = []
    for field_name, value in (("x", rect.x), ("y", rect.y)):
        if not 0.0 <= value <= 1.0:
            out.append(f"{field_name} out of range")
    for field_name, value in (("width", rect.width), ("height", rect.height)):
        if value <= 0.0:
            out.append(f"non-positive {field_name}")
        elif value > 1.0:
            out.append(f"{field_name} out of range")
    if 0.0 < rect.width <= 1.0 and rect.x + rect.width > 1.0 + EDGE_EPSILON:
        out.append("extends past the right edge")
    if 0.0 < rect.height <= 1.0 and rect.y + rect.height > 1.0 + EDGE_EPSILON:
        out.append("extends past the bottom edge")
    return out


def _require_valid(graph: SceneGraph, context: str) -> None:
    report = validate_scene_graph(graph)
    if not report.ok:
        raise ValidationError(f"{context}: " + "; ".join(report.violations),
                              violations=report.violations)


def _require_valid_rect(rect: NormRect, context: str) -> None:
    problems = _rect_violations(rect)
    if problems:
        raise ValidationError(f"{context}: " + "; ".join(problems))


def _require_valid_point(point: NormPoint, context: str) -> None:
    if not (0.0 <= point.x <= 1.0 and 0.0 <= point.y <= 1.0):
        raise ValidationError(f"{context}: point out of range")


# --- Canonical serialization ---------------------------------------------

def format_coord(value: float) -> str:
    """Render a coordinate with up to 4 decimals, keeping at least one."""
    text = f"{value:.4f}".rstrip("0")
    return text + "0" if text.endswith(".") else text


def serialize_scene_graph(graph: SceneGraph) -> str:
    """Canonical single-line JSON; key order is fixed for byte-stable output."""
    _require_valid(graph, "cannot serialize invalid layout")
    parts = []
    for box in graph.boxes:
        rect = box.box
        parts.append(
            f'{{"unique_id": {box.unique_id}, "name": {json.dumps(box.name)}, '
            f'"box": {{"x": {format_coord(rect.x)}, "y": {format_coord(rect.y)}, '
            f'"width": {format_coord(rect.width)}, "height": {format_coord(rect.height)}}}}}'
        )
    return f'{{"prompt": {json.dumps(graph.prompt)}, "boxes": [{", ".join(parts)}]}}'


def parse_scene_graph(text: str) -> SceneGraph:
    """Parse layout JSON; tolerant of key order and whitespace, strict on schema."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed layout JSON at offset {exc.pos}: {exc.msg}",
                         offset=exc.pos) from exc
    return scene_graph_from_obj(obj)


def scene_graph_from_obj(obj: object) -> SceneGraph:
    """Build a validated SceneGraph from already-decoded JSON data."""
    if not isinstance(obj, dict):
        raise ValidationError("layout must be a JSON object")
    prompt = obj.get("prompt", "")
    if not isinstance(prompt, str):
        raise ValidationError("prompt must be a string")
    raw_boxes = obj.get("boxes")
    if not isinstance(raw_boxes, list):
        raise ValidationError("boxes must be an array")
    boxes = tuple(_box_from_obj(item, i) for i, item in enumerate(raw_boxes))
    graph = SceneGraph(prompt=prompt, boxes=boxes)
    report = validate_scene_graph(graph)
    if not report.ok:
        raise ValidationError("; ".join(report.violations), violations=report.violations)
    return graph


def _box_from_obj(item: object, index: int) -> ObjectBox:
    if not isinstance(item, dict):
        raise ValidationError(f"boxes[{index}] must be an object")
    unique_id = _coerce_id(item.get("unique_id"), index)
    name = item.get("name")
    if not isinstance(name, str):
        raise ValidationError(f"boxes[{index}]: name must be a string")
    rect_obj = item.get("box")
    if not isinstance(rect_obj, dict):
        raise ValidationError(f"boxes[{index}]: box must be an object")
    coords = {}
    for key in ("x", "y", "width", "height"):
        if key not in rect_obj:
            raise ValidationError(f"boxes[{index}].box missing field {key}")
        coords[key] = _coerce_coord(rect_obj[key], index, key)
    rect = NormRect(
        x=_clamp_unit(coords["x"]),
        y=_clamp_unit(coords["y"]),
        width=_clamp_upper(coords["width"]),
        height=_clamp_upper(coords["height"]),
    )
    return ObjectBox(unique_id=unique_id, name=name, box=rect)


def _coerce_id(value: object, index: int) -> int:
    if isinstance(value, bool):
        raise ValidationError(f"boxes[{index}]: unique_id must be an integer")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    if isinstance(value, str):
        try:
            return int(value.strip())
        except ValueError:
            pass
    raise ValidationError(f"boxes[{index}]: unique_id must be an integer")


def _coerce_coord(value: object, index: int, key: str) -> float:
    if isinstance(value, bool):
        raise ValidationError(f"boxes[{index}].box.{key} must be a number")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value.strip())
        except ValueError:
            pass
    raise ValidationError(f"boxes[{index}].box.{key} must be a number")


def _clamp_unit(value: float) -> float:
    if -EDGE_EPSILON <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + EDGE_EPSILON:
        return 1.0
    return value


def _clamp_upper(value: float) -> float:
    if 1.0 < value <= 1.0 + EDGE_EPSILON:
        return 1.0
    return value


def _rect_to_obj(rect: NormRect) -> dict:
    return {"x": float(format_coord(rect.x)), "y": float(format_coord(rect.y)),
            "width": float(format_coord(rect.width)),
            "height": float(format_coord(rect.height))}


def _box_to_obj(box: ObjectBox) -> dict:
    return {"unique_id": box.unique_id, "name": box.name, "box": _rect_to_obj(box.box)}


def scene_graph_to_obj(graph: SceneGraph) -> dict:
    """Canonical dict form (coordinates rounded like the textual form)."""
    return {"prompt": graph.prompt, "boxes": [_box_to_obj(b) for b in graph.boxes]}


# --- Edits ----------------------------------------------------------------

def clamp_rect(rect: NormRect) -> NormRect:
    """Pull a rect back inside the frame: translate first, shrink only if oversize."""
    width = min(rect.width, 1.0)
    height = min(rect.height, 1.0)
    x = min(max(rect.x, 0.0), 1.0 - width)
    y = min(max(rect.y, 0.0), 1.0 - height)
    return NormRect(x, y, width, height)


def apply_edit(graph: SceneGraph, op: EditOp) -> SceneGraph:
    """Apply one primitive edit; untouched boxes are reused as-is.

    The prompt is never modified here; callers that want the scene text to
    track renames use regenerate_prompt explicitly.
    """
    if isinstance(op, Add):
        _require_valid_rect(op.rect, "add")
        name = op.name.strip()
        if not name:
            raise ValidationError("add: empty name")
        fresh = max((b.unique_id for b in graph.boxes), default=-1) + 1
        return replace(graph, boxes=graph.boxes + (ObjectBox(fresh, name, op.rect),))

    index = _index_of(graph, op.unique_id)
    box = graph.boxes[index]
    if isinstance(op, Delete):
        return replace(graph, boxes=graph.boxes[:index] + graph.boxes[index + 1:])
    if isinstance(op, ChangeAppearance):
        name = op.name.strip()
        if not name:
            raise ValidationError("change appearance: empty name")
        new_box = replace(box, name=name)
    elif isinstance(op, MoveToPoint):
        _require_valid_point(op.point, "move")
        rect = box.box
        new_box = replace(box, box=clamp_rect(NormRect(
            op.point.x - rect.width / 2, op.point.y - rect.height / 2,
            rect.width, rect.height)))
    elif isinstance(op, MoveToRect):
        _require_valid_rect(op.rect, "move")
        new_box = replace(box, box=op.rect)
    elif isinstance(op, Resize):
        if op.width <= 0.0 or op.height <= 0.0:
            raise ValidationError("resize: non-positive width or height")
        if op.width > 1.0 or op.height > 1.0:
            raise ValidationError("resize: width or height out of range")
        rect = box.box
        new_box = replace(box, box=clamp_rect(NormRect(
            rect.center_x - op.width / 2, rect.center_y - op.height / 2,
            op.width, op.height)))
    else:
        raise TypeError(f"unknown edit op: {op!r}")
    return replace(graph, boxes=graph.boxes[:index] + (new_box,) + graph.boxes[index + 1:])


def _index_of(graph: SceneGraph, unique_id: int) -> int:
    for i, box in enumerate(graph.boxes):
        if box.unique_id == unique_id:
            return i
    raise NotFoundError(f"no box with unique_id {unique_id}")


def regenerate_prompt(graph: SceneGraph) -> str:
    """Deterministic scene description derived from the current object names."""
    names = [box.name for box in graph.boxes]
    if not names:
        return "An empty scene."
    return "A scene with " + ", ".join(names) + "."


# --- Diffing --------------------------------------------------------------

def diff_scene_graphs(before: SceneGraph, after: SceneGraph) -> EditDiff:
    """Changes from before to after, matched by unique_id."""
    before_by_id = {box.unique_id: box for box in before.boxes}
    after_ids = {box.unique_id for box in after.boxes}
    moved = []
    relabeled = []
    added = []
    for box in after.boxes:
        old = before_by_id.get(box.unique_id)
        if old is None:
            added.append(box)
            continue
        if _rects_differ(old.box, box.box):
            moved.append(MovedBox(box.unique_id, old.box, box.box))
        if old.name != box.name:
            relabeled.append(Relabeled(box.unique_id, old.name, box.name))
    removed = tuple(box.unique_id for box in before.boxes if box.unique_id not in after_ids)
    return EditDiff(
        moved=tuple(moved),
        added=tuple(added),
        removed=removed,
        relabeled=tuple(relabeled),
        prompt_changed=before.prompt != after.prompt,
    )


def _rects_differ(a: NormRect, b: NormRect) -> bool:
    return (abs(a.x - b.x) > MOVE_EPSILON or abs(a.y - b.y) > MOVE_EPSILON
            or abs(a.width - b.width) > MOVE_EPSILON
            or abs(a.height - b.height) > MOVE_EPSILON)


# --- Reference resolution -------------------------------------------------

def iou(a: NormRect, b: NormRect) -> float:
    """Intersection over union of two rects; 0 when they do not overlap."""
    ix = min(a.x + a.width, b.x + b.width) - max(a.x, b.x)
    iy = min(a.y + a.height, b.y + b.height) - max(a.y, b.y)
    if ix <= 0.0 or iy <= 0.0:
        return 0.0
    inter = ix * iy
    union = a.area() + b.area() - inter
    return inter / union if union > 0.0 else 0.0


def center_distance(a: NormRect, b: NormRect) -> float:
    return math.hypot(a.center_x - b.center_x, a.center_y - b.center_y)


def resolve_reference(graph: SceneGraph, ref: NormRect) -> int:
    """Resolve a drawn box to the object it most plausibly selects.

    Highest IoU wins; ties fall back to smaller center distance, then smaller
    unique_id, so the answer never depends on box list order.
    """
    if not graph.boxes:
        raise NoMatchError("the layout has no objects to match")
    scored = [(iou(box.box, ref), box) for box in graph.boxes]
    if max(score for score, _ in scored) <= 0.0:
        raise NoMatchError("reference box overlaps no object; redraw it over the target")
    scored.sort(key=lambda pair: (-pair[0], center_distance(pair[1].box, ref),
                                  pair[1].unique_id))
    return scored[0][1].unique_id


def make_graph(prompt: str, boxes: Iterable[tuple[int, str, tuple[float, float, float, float]]]) -> SceneGraph:
    """Convenience constructor used by tests and tools."""
    return SceneGraph(prompt=prompt, boxes=tuple(
        ObjectBox(uid, name, NormRect(*rect)) for uid, name, rect in boxes))
