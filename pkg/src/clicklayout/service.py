"""Session orchestration: instruction application, reload, undo, history.

Sessions live in memory; each one serializes its own operations behind a
lock while separate sessions proceed in parallel. Every mutation happens
only after the backend call has succeeded, so a failing edit leaves the
session byte-identical. An optional JSON-lines journal records results
(not prompts), letting a restarted process replay state without a backend.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field, replace
from pathlib import Path

from .errors import NotFoundError, PreconditionError, ValidationError
from .instruction import (
    MultimodalInstruction,
    instruction_from_obj,
    instruction_to_obj,
    normalize_instruction,
    serialize_instruction,
)
from .llm_backend import BackendConfig, complete, interpret_instruction
from .prompt_engine import ExampleStore, build_prompt, parse_llm_response
from .render import GeneratedImage, RenderConfig, render_layout_preview, request_generated_image
from .scene_graph import (
    EditDiff,
    SceneGraph,
    diff_scene_graphs,
    scene_graph_from_obj,
    scene_graph_to_obj,
    validate_scene_graph,
)


@dataclass(frozen=True)
class HistoryEntry:
    """One applied instruction: what was asked, the reasoning, both graphs."""

    instruction_text: str
    chain_of_thought: str
    before: SceneGraph
    after: SceneGraph
    timestamp: float
    instruction: MultimodalInstruction

    def to_obj(self) -> dict:
        return {
            "instruction_text": self.instruction_text,
            "chain_of_thought": self.chain_of_thought,
            "before": scene_graph_to_obj(self.before),
            "after": scene_graph_to_obj(self.after),
            "timestamp": self.timestamp,
            "instruction": instruction_to_obj(self.instruction),
        }


@dataclass
class Session:
    id: str
    current: SceneGraph
    width: int
    height: int
    history: list[HistoryEntry] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    journal_path: Path | None = None


@dataclass(frozen=True)
class ApplyResult:
    after: SceneGraph
    chain_of_thought: str
    diff: EditDiff


def session_state_obj(session: Session) -> dict:
    """Complete serializable session state; tests snapshot this to check
    that failed operations change nothing."""
    return {
        "id": session.id,
        "width": session.width,
        "height": session.height,
        "current": scene_graph_to_obj(session.current),
        "history": [entry.to_obj() for entry in session.history],
    }


class LayoutService:
    """Owns all sessions and runs the edit pipeline against one backend."""

    def __init__(self, backend: BackendConfig, store: ExampleStore, *,
                 journal_dir: str | Path | None = None,
                 max_context_tokens: int | None = None,
                 generation_endpoint: str | None = None):
        self.backend = backend
        self.store = store
        self.journal_dir = Path(journal_dir) if journal_dir is not None else None
        self.max_context_tokens = max_context_tokens
        self.generation_endpoint = generation_endpoint
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()

    # --- Session lifecycle ------------------------------------------------

    def create_session(self, initial: SceneGraph, width: int = 1000,
                       height: int = 1000) -> str:
        report = validate_scene_graph(initial)
        if not report.ok:
            raise ValidationError("initial layout is invalid: "
                                  + "; ".join(report.violations),
                                  violations=report.violations)
        if width <= 0 or height <= 0:
            raise ValidationError("image dimensions must be positive")
        session = Session(id=uuid.uuid4().hex, current=initial,
                          width=width, height=height)
        if self.journal_dir is not None:
            self.journal_dir.mkdir(parents=True, exist_ok=True)
            session.journal_path = self.journal_dir / f"{session.id}.jsonl"
        with self._registry_lock:
            self._sessions[session.id] = session
        self._journal(session, {
            "event": "create",
            "session_id": session.id,
            "width": width,
            "height": height,
            "layout": scene_graph_to_obj(initial),
        })
        return session.id

    def get_session(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise NotFoundError(f"no session with id {session_id}")
        return session

    def session_ids(self) -> tuple[str, ...]:
        with self._registry_lock:
            return tuple(self._sessions)

    def layout(self, session_id: str) -> SceneGraph:
        return self.get_session(session_id).current

    def history(self, session_id: str) -> tuple[HistoryEntry, ...]:
        session = self.get_session(session_id)
        with session.lock:
            return tuple(session.history)

    # --- Editing ----------------------------------------------------------

    def apply_instruction(self, session_id: str,
                          instruction: MultimodalInstruction) -> ApplyResult:
        session = self.get_session(session_id)
        with session.lock:
            normalized = normalize_instruction(instruction, session.width,
                                               session.height)
            text = serialize_instruction(normalized)
            after, chain = self._run_backend(session.current, normalized, text,
                                             temperature=None)
            entry = HistoryEntry(instruction_text=text, chain_of_thought=chain,
                                 before=session.current, after=after,
                                 timestamp=time.time(), instruction=normalized)
            session.history.append(entry)
            session.current = after
            self._journal(session, {"event": "apply", **_entry_journal(entry)})
            return ApplyResult(after=after, chain_of_thought=chain,
                               diff=diff_scene_graphs(entry.before, after))

    def reload_last(self, session_id: str) -> ApplyResult:
        """Re-run the last instruction on its before-graph with the
        regeneration temperature, replacing that history entry's outcome."""
        session = self.get_session(session_id)
        with session.lock:
            if not session.history:
                raise PreconditionError("nothing to reload; no instruction applied yet")
            last = session.history[-1]
            after, chain = self._run_backend(
                last.before, last.instruction, last.instruction_text,
                temperature=self.backend.regen_temperature)
            entry = replace(last, after=after, chain_of_thought=chain,
                            timestamp=time.time())
            session.history[-1] = entry
            session.current = after
            self._journal(session, {"event": "reload", **_entry_journal(entry)})
            return ApplyResult(after=after, chain_of_thought=chain,
                               diff=diff_scene_graphs(entry.before, after))

    def undo(self, session_id: str) -> SceneGraph:
        session = self.get_session(session_id)
        with session.lock:
            if not session.history:
                raise PreconditionError("nothing to undo")
            entry = session.history.pop()
            session.current = entry.before
            self._journal(session, {"event": "undo"})
            return session.current

    def _run_backend(self, graph: SceneGraph, instruction: MultimodalInstruction,
                     text: str, temperature: float | None) -> tuple[SceneGraph, str]:
        if self.backend.kind == "oracle":
            # No prompt round-trip: the interpreter edits the graph directly.
            result = interpret_instruction(graph, instruction)
            return result.output_graph, result.chain_of_thought
        prompt = build_prompt(self.store, graph, text, include_preamble=False,
                              max_context_tokens=self.max_context_tokens)
        raw = complete(self.backend, prompt, system=self.store.preamble,
                       temperature=temperature)
        turn = parse_llm_response(raw)
        return turn.output_graph, turn.chain_of_thought

    # --- Rendering --------------------------------------------------------

    def preview_svg(self, session_id: str, show_labels: bool = True) -> str:
        session = self.get_session(session_id)
        with session.lock:
            graph = session.current
            config = RenderConfig(canvas_width=session.width,
                                  canvas_height=session.height,
                                  show_labels=show_labels)
        return render_layout_preview(graph, config)

    def generate(self, session_id: str) -> GeneratedImage:
        session = self.get_session(session_id)
        with session.lock:
            graph = session.current
            config = RenderConfig(canvas_width=session.width,
                                  canvas_height=session.height,
                                  generation_endpoint=self.generation_endpoint)
        return request_generated_image(graph, config)

    # --- Journal ----------------------------------------------------------

    def _journal(self, session: Session, event: dict) -> None:
        if session.journal_path is None:
            return
        event = {"timestamp": time.time(), **event}
        with session.journal_path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(event) + "\n")

    def restore_from_journal(self, path: str | Path) -> str:
        """Rebuild one session from its journal without touching any backend.

        The journal stores outcomes, so replay is exact even for backends
        that are nondeterministic or unavailable.
        """
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        events = [json.loads(line) for line in lines if line.strip()]
        if not events or events[0].get("event") != "create":
            raise ValidationError("journal must start with a create event")
        head = events[0]
        session = Session(
            id=head["session_id"],
            current=scene_graph_from_obj(head["layout"]),
            width=int(head["width"]),
            height=int(head["height"]),
        )
        for event in events[1:]:
            kind = event.get("event")
            if kind == "apply":
                session.history.append(_entry_from_journal(event, session.current))
                session.current = session.history[-1].after
            elif kind == "reload":
                if not session.history:
                    raise ValidationError("journal reload with empty history")
                last = session.history[-1]
                entry = _entry_from_journal(event, last.before)
                session.history[-1] = entry
                session.current = entry.after
            elif kind == "undo":
                if not session.history:
                    raise ValidationError("journal undo with empty history")
                session.current = session.history.pop().before
            else:
                raise ValidationError(f"unknown journal event: {kind!r}")
        with self._registry_lock:
            self._sessions[session.id] = session
        return session.id


def _entry_journal(entry: HistoryEntry) -> dict:
    return {
        "instruction_text": entry.instruction_text,
        "instruction": instruction_to_obj(entry.instruction),
        "chain_of_thought": entry.chain_of_thought,
        "after": scene_graph_to_obj(entry.after),
    }


def _entry_from_journal(event: dict, before: SceneGraph) -> HistoryEntry:
    return HistoryEntry(
        instruction_text=event["instruction_text"],
        chain_of_thought=event["chain_of_thought"],
        before=before,
        after=scene_graph_from_obj(event["after"]),
        timestamp=float(event.get("timestamp", 0.0)),
        instruction=instruction_from_obj(event["instruction"]),
    )
