"""Few-shot example store, prompt assembly, and model-response parsing.

The prompt is flat text: a preamble, then each stored example rendered as
four marked sections, then the query with an open REASONING marker for the
model to continue. Parsing goes the other way: pull the reasoning text and
the first plausible layout JSON out of whatever the model produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ExtractionError, ParseError, ValidationError
from .scene_graph import (
    SceneGraph,
    parse_scene_graph,
    scene_graph_from_obj,
    scene_graph_to_obj,
    serialize_scene_graph,
)

INPUT_MARKER = "INPUT LAYOUT:"
INSTRUCTION_MARKER = "INSTRUCTION:"
REASONING_MARKER = "REASONING:"
OUTPUT_MARKER = "OUTPUT LAYOUT:"

# Canonical reasoning question set. Golden fixtures depend on these exact
# strings (including their irregular spacing and spelling); do not edit.
OPERATION_QUESTION = "Q: Which operation is being performed?"
MOVED_QUESTION = "Q: Which objects are being moved?"
NOT_MOVED_QUESTION = "Q:Which objects are not being moved?"
DESTINATION_QUESTION = "Q: Where are they being moved to?"
SIZE_QUESTION = "Q: Does the size need to change?"
APPEARANCE_QUESTION = "Is an objects apperance changing?"


@dataclass(frozen=True)
class FewShotExample:
    """One in-context example: instruction, reasoning, and both layouts."""

    kind: str
    instruction: str
    chain_of_thought: str
    input_graph: SceneGraph
    output_graph: SceneGraph

    @classmethod
    def from_obj(cls, obj: object, index: int) -> "FewShotExample":
        if not isinstance(obj, dict):
            raise ValidationError(f"example {index}: must be an object")
        for field_name in ("type", "instruction", "chain_of_thought",
                          "input_scene_graph", "output_scene_graph"):
            if field_name not in obj:
                raise ValidationError(f"example {index}: missing field {field_name}")
        kind = obj["type"]
        instruction = obj["instruction"]
        chain = obj["chain_of_thought"]
        if not isinstance(kind, str):
            raise ValidationError(f"example {index}: type must be a string")
        if not isinstance(instruction, str) or not instruction.strip():
            raise ValidationError(f"example {index}: empty instruction")
        if not isinstance(chain, str) or OPERATION_QUESTION not in chain:
            raise ValidationError(
                f"example {index}: chain_of_thought missing operation question")
        try:
            input_graph = scene_graph_from_obj(obj["input_scene_graph"])
        except ValidationError as exc:
            raise ValidationError(f"example {index}: input_scene_graph: {exc}") from exc
        try:
            output_graph = scene_graph_from_obj(obj["output_scene_graph"])
        except ValidationError as exc:
            raise ValidationError(f"example {index}: output_scene_graph: {exc}") from exc
        return cls(kind, instruction, chain, input_graph, output_graph)

    def to_obj(self) -> dict:
        return {
            "type": self.kind,
            "instruction": self.instruction,
            "chain_of_thought": self.chain_of_thought,
            "input_scene_graph": scene_graph_to_obj(self.input_graph),
            "output_scene_graph": scene_graph_to_obj(self.output_graph),
        }


@dataclass(frozen=True)
class ExampleStore:
    """Immutable ordered collection of few-shot examples plus the preamble."""

    preamble: str
    examples: tuple[FewShotExample, ...]


@dataclass(frozen=True)
class LlmTurn:
    """A parsed model response: reasoning text plus the extracted layout."""

    chain_of_thought: str
    output_graph: SceneGraph
    raw: str


def default_preamble() -> str:
    return (resources.files("clicklayout.data") / "preamble.txt"
            ).read_text(encoding="utf-8").strip()


def default_store_path() -> Path:
    return Path(str(resources.files("clicklayout.data") / "default_examples.json"))


def load_example_store(path, preamble: str | None = None) -> ExampleStore:
    """Load and validate an example-store file (a JSON array of examples)."""
    raw = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"example store is not valid JSON at offset {exc.pos}: {exc.msg}",
                         offset=exc.pos) from exc
    if not isinstance(data, list):
        raise ValidationError("example store must be a JSON array")
    if not data:
        raise ValidationError("store must contain ≥1 example")
    examples = tuple(FewShotExample.from_obj(item, i) for i, item in enumerate(data))
    return ExampleStore(preamble if preamble is not None else default_preamble(),
                        examples)


def load_default_store() -> ExampleStore:
    return load_example_store(default_store_path())


# --- Prompt assembly ------------------------------------------------------

def estimate_tokens(text: str) -> int:
    """Cheap context-size estimate: one token per four characters."""
    return len(text) // 4


def render_example(example: FewShotExample) -> str:
    return "\n".join([
        f"{INPUT_MARKER} {serialize_scene_graph(example.input_graph)}",
        f"{INSTRUCTION_MARKER} {example.instruction}",
        f"{REASONING_MARKER} {example.chain_of_thought}",
        f"{OUTPUT_MARKER} {serialize_scene_graph(example.output_graph)}",
    ])


def render_example_completion(example: FewShotExample) -> str:
    """The REASONING + OUTPUT sections alone, as a model would complete them."""
    return (f"{REASONING_MARKER} {example.chain_of_thought}\n"
            f"{OUTPUT_MARKER} {serialize_scene_graph(example.output_graph)}")


def build_prompt(store: ExampleStore, input_graph: SceneGraph, instruction_text: str,
                 *, include_preamble: bool = True,
                 max_context_tokens: int | None = None) -> str:
    """Assemble the full prompt; deterministic for identical inputs.

    When the token estimate exceeds max_context_tokens, whole examples are
    dropped oldest-first until the prompt fits (text is never truncated).
    """
    query = "\n".join([
        f"{INPUT_MARKER} {serialize_scene_graph(input_graph)}",
        f"{INSTRUCTION_MARKER} {instruction_text}",
        REASONING_MARKER,
    ])
    examples = list(store.examples)
    while True:
        sections = [render_example(e) for e in examples]
        sections.append(query)
        prompt = "\n\n".join(sections)
        if include_preamble and store.preamble:
            prompt = f"{store.preamble}\n\n{prompt}"
        if (max_context_tokens is None
                or estimate_tokens(prompt) <= max_context_tokens
                or not examples):
            return prompt
        examples.pop(0)


# --- Response parsing -----------------------------------------------------

def _balanced_blocks(text: str, start: int = 0) -> list[tuple[int, int]]:
    """Spans of top-level balanced brace blocks, honoring JSON string quoting."""
    blocks: list[tuple[int, int]] = []
    depth = 0
    block_start = -1
    in_string = False
    escaped = False
    for i in range(start, len(text)):
        char = text[i]
        if in_string:
            if escaped:
                escaped = False
            elif char == "\\":
                escaped = True
            elif char == '"':
                in_string = False
            continue
        if char == '"' and depth > 0:
            in_string = True
        elif char == "{":
            if depth == 0:
                block_start = i
            depth += 1
        elif char == "}" and depth > 0:
            depth -= 1
            if depth == 0:
                blocks.append((block_start, i + 1))
    return blocks


def parse_llm_response(raw_text: str) -> LlmTurn:
    """Extract the reasoning and the output layout from a model response.

    With an OUTPUT LAYOUT marker, candidate blocks after it are tried in
    order; without one, blocks are tried last-first. Brace groups in
    surrounding prose are skipped as long as a valid layout block exists.
    """
    reasoning_at = raw_text.find(REASONING_MARKER)
    chain_start = reasoning_at + len(REASONING_MARKER) if reasoning_at >= 0 else 0
    output_at = raw_text.find(OUTPUT_MARKER, chain_start)
    if output_at >= 0:
        chain = raw_text[chain_start:output_at].strip()
        candidates = _balanced_blocks(raw_text, output_at + len(OUTPUT_MARKER))
    else:
        first_brace = raw_text.find("{", chain_start)
        chain_end = first_brace if first_brace >= 0 else len(raw_text)
        chain = raw_text[chain_start:chain_end].strip()
        candidates = list(reversed(_balanced_blocks(raw_text)))
    if not candidates:
        raise ExtractionError("no balanced JSON block in response", raw=raw_text)

    schema_error: ValidationError | None = None
    for begin, end in candidates:
        try:
            graph = parse_scene_graph(raw_text[begin:end])
        except ParseError:
            continue
        except ValidationError as exc:
            if schema_error is None:
                schema_error = exc
            continue
        return LlmTurn(chain_of_thought=chain, output_graph=graph, raw=raw_text)
    if schema_error is not None:
        raise ValidationError(f"response layout is invalid: {schema_error}",
                              violations=schema_error.violations)
    raise ExtractionError("no layout JSON block in response", raw=raw_text)
