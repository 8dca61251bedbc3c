"""Completion backends and the rule-based instruction interpreter.

Three interchangeable backends produce completions for a layout-editing
prompt: a remote chat-completion endpoint, a recorded-response fixture file
for offline replay, and a deterministic oracle that parses a small command
grammar and applies the edits itself. The oracle doubles as the reference
implementation the test suite checks the rest of the pipeline against.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import requests

from .errors import (
    NoMatchError,
    ParseError,
    ProtocolError,
    TransportError,
    UnknownPromptError,
    UnsupportedInstructionError,
)
from .instruction import (
    BoxRef,
    MultimodalInstruction,
    PIXEL_UNITS,
    PointRef,
    TextSpan,
    normalize_instruction,
    parse_instruction_text,
)
from .netutil import endpoint_semaphore
from .prompt_engine import (
    APPEARANCE_QUESTION,
    DESTINATION_QUESTION,
    INPUT_MARKER,
    INSTRUCTION_MARKER,
    MOVED_QUESTION,
    NOT_MOVED_QUESTION,
    OPERATION_QUESTION,
    OUTPUT_MARKER,
    REASONING_MARKER,
    SIZE_QUESTION,
)
from .scene_graph import (
    Add,
    ChangeAppearance,
    Delete,
    EditOp,
    MoveToPoint,
    MoveToRect,
    NormPoint,
    NormRect,
    SceneGraph,
    apply_edit,
    diff_scene_graphs,
    parse_scene_graph,
    regenerate_prompt,
    resolve_reference,
    serialize_scene_graph,
)

ENDPOINT_ENV = "CLICKLAYOUT_LLM_ENDPOINT"
API_KEY_ENV = "CLICKLAYOUT_LLM_API_KEY"

BACKEND_KINDS = ("oracle", "remote", "fixture")


@dataclass(frozen=True)
class BackendConfig:
    """Everything needed to obtain completions from one backend."""

    kind: str = "oracle"
    endpoint: str | None = None
    model: str = "gpt-3.5-turbo"
    temperature: float = 0.0
    regen_temperature: float = 0.7
    timeout: float = 30.0
    max_retries: int = 3
    retry_backoff: float = 0.5
    fixture_path: str | None = None
    max_in_flight: int = 4
    api_key: str | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in BACKEND_KINDS:
            raise ValueError(f"unknown backend kind: {self.kind!r}")
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be at least 1")


def complete(config: BackendConfig, prompt: str, *, system: str | None = None,
             temperature: float | None = None) -> str:
    """Return the raw completion text for a prompt from the configured backend."""
    effective = config.temperature if temperature is None else temperature
    if config.kind == "remote":
        return _complete_remote(config, prompt, system, effective)
    if config.kind == "fixture":
        return _complete_fixture(config, prompt, effective)
    return _complete_oracle(prompt)


# --- Remote backend -------------------------------------------------------

def _complete_remote(config: BackendConfig, prompt: str, system: str | None,
                     temperature: float) -> str:
    endpoint = config.endpoint or os.environ.get(ENDPOINT_ENV)
    if not endpoint:
        raise TransportError(
            f"no completion endpoint configured (set {ENDPOINT_ENV})")
    api_key = config.api_key or os.environ.get(API_KEY_ENV)
    messages = []
    if system:
        messages.append({"role": "system", "content": system})
    messages.append({"role": "user", "content": prompt})
    body = {"model": config.model, "messages": messages, "temperature": temperature}
    headers = {"Content-Type": "application/json"}
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"

    semaphore = endpoint_semaphore(endpoint, config.max_in_flight)
    last_error: TransportError | None = None
    for attempt in range(config.max_retries):
        if attempt:
            # Geometric backoff: 0.5s, 1s, 2s, ... between attempts.
            time.sleep(config.retry_backoff * (2 ** (attempt - 1)))
        try:
            with semaphore:
                response = requests.post(endpoint, json=body, headers=headers,
                                         timeout=config.timeout)
        except requests.Timeout as exc:
            last_error = TransportError(f"completion request timed out: {exc}")
            continue
        except requests.RequestException as exc:
            raise TransportError(f"completion request failed: {exc}") from exc
        if response.status_code >= 500:
            last_error = TransportError(
                f"completion endpoint returned {response.status_code}")
            continue
        if response.status_code != 200:
            raise TransportError(
                f"completion endpoint returned {response.status_code}")
        return _extract_completion(response)
    assert last_error is not None
    raise last_error


def _extract_completion(response: requests.Response) -> str:
    try:
        payload = response.json()
    except ValueError as exc:
        raise ProtocolError(f"completion response is not JSON: {exc}") from exc
    try:
        content = payload["choices"][0]["message"]["content"]
    except (KeyError, IndexError, TypeError) as exc:
        raise ProtocolError("completion response missing "
                            "choices[0].message.content") from exc
    if not isinstance(content, str):
        raise ProtocolError("completion content is not a string")
    return content


# --- Fixture backend ------------------------------------------------------

def fixture_key(prompt: str, temperature: float) -> str:
    """Lookup key for a recorded response; temperature-tagged so regeneration
    at a different temperature can map to a different recording."""
    tagged = f"temperature={temperature:g}\n{prompt}"
    return hashlib.sha256(tagged.encode("utf-8")).hexdigest()


def record_fixture(path, prompt: str, temperature: float, response: str) -> None:
    """Add one prompt/response pair to a fixture file, creating it if needed."""
    target = Path(path)
    data: dict[str, str] = {}
    if target.exists():
        data = json.loads(target.read_text(encoding="utf-8"))
    data[fixture_key(prompt, temperature)] = response
    target.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n",
                      encoding="utf-8")


def _complete_fixture(config: BackendConfig, prompt: str, temperature: float) -> str:
    if not config.fixture_path:
        raise UnknownPromptError("fixture backend has no fixture file configured")
    target = Path(config.fixture_path)
    if not target.exists():
        raise UnknownPromptError(f"fixture file not found: {target}")
    try:
        data = json.loads(target.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"fixture file is not valid JSON: {exc.msg}",
                         offset=exc.pos) from exc
    key = fixture_key(prompt, temperature)
    response = data.get(key) if isinstance(data, dict) else None
    if not isinstance(response, str):
        raise UnknownPromptError(
            f"no recorded response for this prompt (key {key[:12]}…, "
            f"temperature {temperature:g})")
    return response


# --- Oracle backend -------------------------------------------------------

# Canvas assumed when an instruction reaches the oracle still in pixel units.
# Prompts built by this package always carry normalized geometry already.
_FALLBACK_CANVAS = 1000.0

_VERBS = {"move": "Move", "add": "Add", "delete": "Delete",
          "remove": "Delete", "make": "Change", "change": "Change"}


@dataclass(frozen=True)
class OracleInterpretation:
    """Decoded edits plus the resulting layout and templated reasoning."""

    ops: tuple[EditOp, ...]
    output_graph: SceneGraph
    chain_of_thought: str


def _complete_oracle(prompt: str) -> str:
    graph, instruction_text = _query_from_prompt(prompt)
    instruction = parse_instruction_text(instruction_text)
    result = interpret_instruction(graph, instruction)
    return (f"{result.chain_of_thought}\n"
            f"{OUTPUT_MARKER} {serialize_scene_graph(result.output_graph)}")


def _query_from_prompt(prompt: str) -> tuple[SceneGraph, str]:
    """Pull the final INPUT LAYOUT / INSTRUCTION pair back out of a prompt."""
    input_at = prompt.rfind(INPUT_MARKER)
    if input_at < 0:
        raise ParseError("prompt has no INPUT LAYOUT section")
    instruction_at = prompt.find(INSTRUCTION_MARKER, input_at)
    if instruction_at < 0:
        raise ParseError("prompt has no INSTRUCTION section after the input layout")
    reasoning_at = prompt.find(REASONING_MARKER, instruction_at)
    graph_text = prompt[input_at + len(INPUT_MARKER):instruction_at].strip()
    instruction_end = reasoning_at if reasoning_at >= 0 else len(prompt)
    text = prompt[instruction_at + len(INSTRUCTION_MARKER):instruction_end].strip()
    return parse_scene_graph(graph_text), text


def interpret_instruction(graph: SceneGraph,
                          instruction: MultimodalInstruction) -> OracleInterpretation:
    """Decode a grammar-covered instruction into edits and apply them.

    Clauses (case-insensitive, joined by "and", applied left to right):
    move <box|it> to <point|box>; add a <name> at <box>; delete|remove
    <box|it>; make <box|it> a <name>; change <box|it> to a <name>. Drawn
    boxes are resolved against the input layout; "it" repeats the most
    recently resolved object.
    """
    if instruction.units == PIXEL_UNITS:
        instruction = normalize_instruction(instruction, _FALLBACK_CANVAS,
                                            _FALLBACK_CANVAS)
    parser = _ClauseParser(graph, instruction)
    clauses = parser.parse()

    output = graph
    for clause in clauses:
        for op in clause.ops:
            output = apply_edit(output, op)
    if _name_multiset(output) != _name_multiset(graph):
        output = replace(output, prompt=regenerate_prompt(output))
    chain = _build_chain(graph, output, clauses)
    return OracleInterpretation(
        ops=tuple(op for clause in clauses for op in clause.ops),
        output_graph=output,
        chain_of_thought=chain,
    )


def _name_multiset(graph: SceneGraph) -> list[str]:
    return sorted(box.name for box in graph.boxes)


@dataclass(frozen=True)
class _Clause:
    verb: str
    ops: tuple[EditOp, ...]
    moved_id: int | None = None
    destination: str | None = None


class _ClauseParser:
    """Recursive-descent reader over the instruction's word/reference stream."""

    def __init__(self, graph: SceneGraph, instruction: MultimodalInstruction):
        self.graph = graph
        self.items = _item_stream(instruction)
        self.pos = 0
        self.last_resolved: int | None = None

    def parse(self) -> list[_Clause]:
        clauses = [self._clause()]
        while self.pos < len(self.items):
            word = self._peek_word()
            if word != "and":
                raise UnsupportedInstructionError(
                    f"unexpected text after clause: {self._describe_next()}")
            self.pos += 1
            clauses.append(self._clause())
        return clauses

    def _clause(self) -> _Clause:
        verb = self._peek_word()
        if verb not in _VERBS:
            raise UnsupportedInstructionError(
                f"cannot interpret instruction near {self._describe_next()}; "
                "supported commands are move, add, delete, remove, make, change")
        self.pos += 1
        if verb == "move":
            return self._move_clause()
        if verb == "add":
            return self._add_clause()
        if verb in ("delete", "remove"):
            return self._delete_clause(verb)
        return self._rename_clause(verb)

    def _move_clause(self) -> _Clause:
        unique_id = self._object_ref("move")
        if self._peek_word() != "to":
            raise UnsupportedInstructionError("move needs a destination: "
                                              "move <box> to <point or box>")
        self.pos += 1
        target = self._take_ref("a destination point or box")
        if isinstance(target, PointRef):
            op: EditOp = MoveToPoint(unique_id, NormPoint(target.x, target.y))
            destination = f"the point ({_fmt(target.x)}, {_fmt(target.y)})"
        else:
            rect = NormRect(target.x, target.y, target.width, target.height)
            op = MoveToRect(unique_id, rect)
            destination = (f"the region ({_fmt(rect.x)}, {_fmt(rect.y)}, "
                           f"{_fmt(rect.width)}, {_fmt(rect.height)})")
        return _Clause("move", (op,), moved_id=unique_id, destination=destination)

    def _add_clause(self) -> _Clause:
        self._skip_article()
        name = self._collect_name(stop_words=("at",))
        if self._peek_word() != "at":
            raise UnsupportedInstructionError(
                "add needs a location: add a <name> at <box>")
        self.pos += 1
        ref = self._take_ref("a box for the new object")
        if not isinstance(ref, BoxRef):
            raise UnsupportedInstructionError("add requires a drawn box, not a point")
        rect = NormRect(ref.x, ref.y, ref.width, ref.height)
        return _Clause("add", (Add(name, rect),))

    def _delete_clause(self, verb: str) -> _Clause:
        unique_id = self._object_ref(verb)
        return _Clause(verb, (Delete(unique_id),))

    def _rename_clause(self, verb: str) -> _Clause:
        unique_id = self._object_ref(verb)
        if verb == "change":
            if self._peek_word() != "to":
                raise UnsupportedInstructionError(
                    "change needs a new name: change <box> to a <name>")
            self.pos += 1
        self._skip_article()
        name = self._collect_name(stop_words=())
        return _Clause(verb, (ChangeAppearance(unique_id, name),))

    def _object_ref(self, verb: str) -> int:
        """A drawn box resolved to an object id, or "it" for the previous one."""
        if self.pos < len(self.items):
            kind, value = self.items[self.pos]
            if kind == "word" and value.lower().strip(".,!?;:") == "it":
                self.pos += 1
                if self.last_resolved is None:
                    raise UnsupportedInstructionError(
                        '"it" has nothing to refer to; draw a box first')
                return self.last_resolved
        ref = self._take_ref(f"a drawn box for {verb}")
        if not isinstance(ref, BoxRef):
            raise UnsupportedInstructionError(
                f"{verb} needs a drawn box over the object, not a point")
        rect = NormRect(ref.x, ref.y, ref.width, ref.height)
        unique_id = resolve_reference(self.graph, rect)
        self.last_resolved = unique_id
        return unique_id

    def _take_ref(self, wanted: str):
        if self.pos < len(self.items) and self.items[self.pos][0] == "ref":
            token = self.items[self.pos][1]
            self.pos += 1
            return token
        raise UnsupportedInstructionError(
            f"expected {wanted}, found {self._describe_next()}")

    def _skip_article(self) -> None:
        if self._peek_word() in ("a", "an", "the"):
            self.pos += 1

    def _collect_name(self, stop_words: tuple[str, ...]) -> str:
        """Words up to the clause end; "and" only ends the name when the next
        word starts a new clause, so names like "black and white cat" survive."""
        words: list[str] = []
        while self.pos < len(self.items):
            kind, value = self.items[self.pos]
            if kind != "word":
                break
            lower = value.lower().strip(".,!?;:")
            if lower in stop_words:
                break
            if lower == "and" and self._word_at(self.pos + 1) in _VERBS:
                break
            words.append(value.strip(".,!?;:"))
            self.pos += 1
        name = " ".join(w for w in words if w)
        if not name:
            raise UnsupportedInstructionError("expected an object name")
        return name

    def _peek_word(self) -> str | None:
        return self._word_at(self.pos)

    def _word_at(self, pos: int) -> str | None:
        if pos < len(self.items) and self.items[pos][0] == "word":
            return self.items[pos][1].lower().strip(".,!?;:")
        return None

    def _describe_next(self) -> str:
        if self.pos >= len(self.items):
            return "end of instruction"
        kind, value = self.items[self.pos]
        return f"'{value}'" if kind == "word" else "a drawn reference"


def _item_stream(instruction: MultimodalInstruction) -> list[tuple[str, object]]:
    items: list[tuple[str, object]] = []
    for token in instruction.tokens:
        if isinstance(token, TextSpan):
            # Standalone punctuation (a trailing "." after a reference) is noise.
            items.extend(("word", word) for word in token.text.split()
                         if word.strip(".,!?;:"))
        else:
            items.append(("ref", token))
    return items


# --- Chain-of-thought template --------------------------------------------

def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _cap(text: str) -> str:
    return text[:1].upper() + text[1:] if text else text


def _build_chain(before: SceneGraph, after: SceneGraph,
                 clauses: list[_Clause]) -> str:
    """Instantiate the canonical Q/A reasoning template for decoded clauses."""
    operations = ", ".join(dict.fromkeys(_VERBS[c.verb] for c in clauses))
    moved_ids = [c.moved_id for c in clauses if c.moved_id is not None]
    moved_names = [_cap(box.name) for box in before.boxes
                   if box.unique_id in moved_ids]
    not_moved = [_cap(box.name) for box in before.boxes
                 if box.unique_id not in moved_ids]
    destinations = [c.destination for c in clauses if c.destination]
    diff = diff_scene_graphs(before, after)
    size_changed = any(
        abs(m.before.width - m.after.width) > 1e-9
        or abs(m.before.height - m.after.height) > 1e-9
        for m in diff.moved)
    appearance_changed = any(
        isinstance(op, ChangeAppearance) for c in clauses for op in c.ops)
    return (
        f"{OPERATION_QUESTION} A: {operations}. "
        f"{MOVED_QUESTION} A: {', '.join(moved_names) or 'None'}. "
        f"{NOT_MOVED_QUESTION} A: {', '.join(not_moved) or 'None'} "
        f"{DESTINATION_QUESTION} A: {_cap('; '.join(destinations)) or 'Nowhere'}. "
        f"{SIZE_QUESTION} A: {'Yes' if size_changed else 'No'}. "
        f"{APPEARANCE_QUESTION} {'Yes' if appearance_changed else 'No'}."
    )
