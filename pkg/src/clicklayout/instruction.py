"""Multi-modal instructions: text interleaved with drawn boxes and points.

An instruction is an ordered token stream. Geometric tokens serialize into
the same brace form the model sees ("{x: 150, y: 400, width: 100, height:
100}"), so instructions round-trip between the UI, the CLI, and prompt text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .errors import ParseError, ValidationError

PIXEL_UNITS = "px"
NORMALIZED_UNITS = "norm"


@dataclass(frozen=True)
class TextSpan:
    text: str


@dataclass(frozen=True)
class BoxRef:
    """A drawn bounding box; coordinates follow the instruction's units."""

    x: float
    y: float
    width: float
    height: float
    # Display tag shown in the UI chip; not part of token equality.
    symbol: str = field(default="", compare=False)


@dataclass(frozen=True)
class PointRef:
    """A drawn point (star tool); coordinates follow the instruction's units."""

    x: float
    y: float
    symbol: str = field(default="", compare=False)


InstructionToken = Union[TextSpan, BoxRef, PointRef]


@dataclass(frozen=True)
class MultimodalInstruction:
    """Ordered token stream; canonicalized on construction.

    Adjacent text spans are trimmed and merged with a single space, empty
    spans dropped. units is "px" when geometry is in source-image pixels,
    "norm" when normalized.
    """

    tokens: tuple[InstructionToken, ...]
    units: str = NORMALIZED_UNITS

    def __post_init__(self):
        if self.units not in (PIXEL_UNITS, NORMALIZED_UNITS):
            raise ValidationError(f"unknown units {self.units!r}")
        object.__setattr__(self, "tokens", _canonical_tokens(self.tokens))
        if not self.tokens:
            raise ValidationError("instruction must contain at least one token")
        symbols = [t.symbol for t in self.tokens
                   if not isinstance(t, TextSpan) and t.symbol]
        if len(symbols) != len(set(symbols)):
            raise ValidationError("reference symbols must be unique within an instruction")

    def geometry(self) -> tuple[InstructionToken, ...]:
        return tuple(t for t in self.tokens if not isinstance(t, TextSpan))


def _canonical_tokens(tokens) -> tuple[InstructionToken, ...]:
    out: list[InstructionToken] = []
    pending: list[str] = []

    def flush():
        if pending:
            pieces = [piece for piece in (p.strip() for p in pending) if piece]
            if pieces:
                out.append(TextSpan(" ".join(pieces)))
            pending.clear()

    for token in tokens:
        if isinstance(token, TextSpan):
            pending.append(token.text)
        else:
            flush()
            out.append(token)
    flush()
    return tuple(out)


# --- Serialization --------------------------------------------------------

def _render_value(value: float, units: str) -> str:
    if units == PIXEL_UNITS:
        return str(int(round(value)))
    return f"{value:.2f}"


def _render_token(token: InstructionToken, units: str) -> str:
    if isinstance(token, TextSpan):
        return token.text
    if isinstance(token, BoxRef):
        return ("{x: %s, y: %s, width: %s, height: %s}"
                % (_render_value(token.x, units), _render_value(token.y, units),
                   _render_value(token.width, units), _render_value(token.height, units)))
    return "{x: %s, y: %s}" % (_render_value(token.x, units),
                               _render_value(token.y, units))


def serialize_instruction(instr: MultimodalInstruction) -> str:
    """Render the token stream as one line of text, references in drawing order.

    Pixel geometry renders as integers, normalized geometry with two decimals.
    """
    return " ".join(_render_token(t, instr.units) for t in instr.tokens)


def normalize_instruction(instr: MultimodalInstruction, image_width: float,
                          image_height: float) -> MultimodalInstruction:
    """Divide pixel geometry by the image dimensions. Idempotent."""
    if image_width <= 0 or image_height <= 0:
        raise ValueError("image dimensions must be positive")
    if instr.units == NORMALIZED_UNITS:
        return instr
    w = float(image_width)
    h = float(image_height)
    tokens: list[InstructionToken] = []
    for token in instr.tokens:
        if isinstance(token, BoxRef):
            tokens.append(BoxRef(token.x / w, token.y / h, token.width / w,
                                 token.height / h, symbol=token.symbol))
        elif isinstance(token, PointRef):
            tokens.append(PointRef(token.x / w, token.y / h, symbol=token.symbol))
        else:
            tokens.append(token)
    return MultimodalInstruction(tuple(tokens), NORMALIZED_UNITS)


# --- Parsing --------------------------------------------------------------

_REF_PATTERN = re.compile(r"\{([^{}]*)\}")
_BOX_KEYS = frozenset(("x", "y", "width", "height"))
_POINT_KEYS = frozenset(("x", "y"))


def parse_instruction_text(text: str) -> MultimodalInstruction:
    """Inverse of serialize_instruction for canonical instruction text.

    Brace groups with keys x,y,width,height become boxes; x,y alone a point.
    Units are pixels when any coordinate is written without a decimal point.
    """
    if not text.strip():
        raise ParseError("empty instruction")
    tokens: list[InstructionToken] = []
    saw_dotless = False
    saw_geometry = False
    pos = 0
    for match in _REF_PATTERN.finditer(text):
        if match.start() > pos:
            tokens.append(TextSpan(text[pos:match.start()]))
        ref, dotless = _parse_reference(match.group(1))
        saw_geometry = True
        saw_dotless = saw_dotless or dotless
        tokens.append(ref)
        pos = match.end()
    if pos < len(text):
        tokens.append(TextSpan(text[pos:]))
    units = PIXEL_UNITS if saw_geometry and saw_dotless else NORMALIZED_UNITS
    return MultimodalInstruction(tuple(tokens), units)


def _parse_reference(body: str) -> tuple[InstructionToken, bool]:
    values: dict[str, float] = {}
    dotless = False
    for part in body.split(","):
        key, sep, raw_value = part.partition(":")
        key = key.strip().lower()
        if not sep:
            raise ParseError(f"expected 'key: value' in reference, got {part.strip()!r}")
        if key not in _BOX_KEYS:
            raise ParseError(f"unknown key {key}")
        if key in values:
            raise ParseError(f"duplicate key {key}")
        raw_value = raw_value.strip()
        try:
            values[key] = float(raw_value)
        except ValueError:
            raise ParseError(f"invalid number for {key}: {raw_value!r}") from None
        if not any(c in raw_value for c in ".eE"):
            dotless = True
    keys = frozenset(values)
    if keys == _BOX_KEYS:
        return BoxRef(values["x"], values["y"], values["width"], values["height"]), dotless
    if keys == _POINT_KEYS:
        return PointRef(values["x"], values["y"]), dotless
    raise ParseError("incomplete reference keys: " + ", ".join(sorted(values)))


# --- JSON token form (service API and journals) ---------------------------

def instruction_to_obj(instr: MultimodalInstruction) -> dict:
    tokens = []
    for token in instr.tokens:
        if isinstance(token, TextSpan):
            tokens.append({"kind": "text", "text": token.text})
        elif isinstance(token, BoxRef):
            tokens.append({"kind": "box", "x": token.x, "y": token.y,
                           "width": token.width, "height": token.height,
                           "symbol": token.symbol})
        else:
            tokens.append({"kind": "point", "x": token.x, "y": token.y,
                           "symbol": token.symbol})
    return {"units": instr.units, "tokens": tokens}


def instruction_from_obj(obj: object) -> MultimodalInstruction:
    if not isinstance(obj, dict):
        raise ValidationError("instruction must be a JSON object")
    units = obj.get("units", NORMALIZED_UNITS)
    raw_tokens = obj.get("tokens")
    if not isinstance(raw_tokens, list) or not raw_tokens:
        raise ValidationError("instruction tokens must be a non-empty array")
    tokens: list[InstructionToken] = []
    for i, item in enumerate(raw_tokens):
        if not isinstance(item, dict):
            raise ValidationError(f"tokens[{i}] must be an object")
        kind = item.get("kind")
        try:
            if kind == "text":
                tokens.append(TextSpan(str(item["text"])))
            elif kind == "box":
                tokens.append(BoxRef(float(item["x"]), float(item["y"]),
                                     float(item["width"]), float(item["height"]),
                                     symbol=str(item.get("symbol", ""))))
            elif kind == "point":
                tokens.append(PointRef(float(item["x"]), float(item["y"]),
                                       symbol=str(item.get("symbol", ""))))
            else:
                raise ValidationError(f"tokens[{i}]: unknown kind {kind!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"tokens[{i}]: {exc}") from exc
    return MultimodalInstruction(tuple(tokens), units)
