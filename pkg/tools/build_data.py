"""Regenerate the checked-in data files from their definitions.

Outputs:
  src/clicklayout/data/default_examples.json  bundled few-shot store (20 entries)
  tests/data/oracle_cases.json                interpreter reference triples
  shared/instruction_vectors.json             serializer golden vectors (UI + lib)

Grammar-covered store entries and every oracle case are computed with the
rule interpreter and cross-checked against a hand-listed edit sequence, so
a regression in either layer fails this script before it can poison the
fixtures. Run from the repository root: python3 tools/build_data.py
"""

from __future__ import annotations

import json
import sys
from dataclasses import replace
from pathlib import Path

from clicklayout.instruction import (
    BoxRef,
    MultimodalInstruction,
    PointRef,
    TextSpan,
    parse_instruction_text,
    serialize_instruction,
)
from clicklayout.llm_backend import interpret_instruction
from clicklayout.prompt_engine import (
    APPEARANCE_QUESTION,
    DESTINATION_QUESTION,
    MOVED_QUESTION,
    NOT_MOVED_QUESTION,
    OPERATION_QUESTION,
    SIZE_QUESTION,
)
from clicklayout.scene_graph import (
    Add,
    ChangeAppearance,
    Delete,
    MoveToPoint,
    MoveToRect,
    NormPoint,
    NormRect,
    Resize,
    SceneGraph,
    apply_edit,
    make_graph,
    regenerate_prompt,
    scene_graph_from_obj,
    scene_graph_to_obj,
)

ROOT = Path(__file__).resolve().parent.parent


def chain(operation, moved, not_moved, destination, size, appearance):
    """Hand-authored reasoning in the canonical template."""
    return (f"{OPERATION_QUESTION} A: {operation}. "
            f"{MOVED_QUESTION} A: {moved}. "
            f"{NOT_MOVED_QUESTION} A: {not_moved} "
            f"{DESTINATION_QUESTION} A: {destination}. "
            f"{SIZE_QUESTION} A: {size}. "
            f"{APPEARANCE_QUESTION} {appearance}.")


def fold_ops(graph: SceneGraph, ops) -> SceneGraph:
    out = graph
    for op in ops:
        out = apply_edit(out, op)
    if sorted(b.name for b in out.boxes) != sorted(b.name for b in graph.boxes):
        out = replace(out, prompt=regenerate_prompt(out))
    return out


def check_roundtrip(graph: SceneGraph) -> SceneGraph:
    """The canonical JSON form must reproduce the graph to float noise."""
    back = scene_graph_from_obj(scene_graph_to_obj(graph))
    assert back.prompt == graph.prompt
    assert len(back.boxes) == len(graph.boxes)
    for a, b in zip(back.boxes, graph.boxes):
        assert a.unique_id == b.unique_id and a.name == b.name
        for key in ("x", "y", "width", "height"):
            delta = abs(getattr(a.box, key) - getattr(b.box, key))
            assert delta < 1e-12, (graph, key, delta)
    return graph


def oracle_entry(kind: str, graph: SceneGraph, tokens, expected_ops,
                 prompt_override: str | None = None) -> dict:
    """Store entry whose chain and output come from the interpreter."""
    instruction = MultimodalInstruction(tuple(tokens))
    text = serialize_instruction(instruction)
    reparsed = parse_instruction_text(text)
    result = interpret_instruction(graph, reparsed)
    assert result.ops == tuple(expected_ops), (text, result.ops)
    expected = fold_ops(graph, expected_ops)
    assert scene_graph_to_obj(result.output_graph) == scene_graph_to_obj(expected)
    output = result.output_graph
    if prompt_override is not None:
        output = replace(output, prompt=prompt_override)
    check_roundtrip(output)
    return {
        "type": kind,
        "instruction": text,
        "chain_of_thought": result.chain_of_thought,
        "input_scene_graph": scene_graph_to_obj(graph),
        "output_scene_graph": scene_graph_to_obj(output),
    }


def hand_entry(kind: str, instruction: str, chain_text: str, graph: SceneGraph,
               ops, output_prompt: str) -> dict:
    """Store entry for instructions outside the command grammar."""
    output = replace(fold_ops(graph, ops), prompt=output_prompt)
    check_roundtrip(output)
    return {
        "type": kind,
        "instruction": instruction,
        "chain_of_thought": chain_text,
        "input_scene_graph": scene_graph_to_obj(graph),
        "output_scene_graph": scene_graph_to_obj(output),
    }


def box(x, y, w, h):
    return BoxRef(x, y, w, h)


def pt(x, y):
    return PointRef(x, y)


def t(text):
    return TextSpan(text)


def r(x, y, w, h):
    return NormRect(x, y, w, h)


# --- Bundled few-shot store ----------------------------------------------

APPENDIX_INPUT = make_graph("A dog standing by a car.", [
    (0, "dog", (0.75, 0.8, 0.2, 0.2)),
    (1, "car", (0.1, 0.65, 0.6, 0.35)),
])

APPENDIX_OUTPUT = make_graph("A dog standing on a car.", [
    (1, "car", (0.1, 0.65, 0.6, 0.35)),
    (0, "dog", (0.35, 0.45, 0.2, 0.2)),
])

APPENDIX_CHAIN = ("Q: Which operation is being performed? A: Move. "
                  "Q: Which objects are being moved? A: Dog. "
                  "Q:Which objects are not being moved? A: Car, A street "
                  "Q: Where are they being moved to? A: Onto the car. "
                  "Q: Does the size need to change? A: No. "
                  "Is an objects apperance changing? No.")


def build_store() -> list[dict]:
    entries = []

    # 1. The dog/car pair, kept verbatim as the canonical first example.
    entries.append({
        "type": "text",
        "instruction": "Move the dog onto the car.",
        "chain_of_thought": APPENDIX_CHAIN,
        "input_scene_graph": scene_graph_to_obj(APPENDIX_INPUT),
        "output_scene_graph": scene_graph_to_obj(APPENDIX_OUTPUT),
    })

    # 2. Move by drawn box + target point.
    kitchen = make_graph("A plate and a mug on a table.", [
        (0, "plate", (0.15, 0.55, 0.3, 0.15)),
        (1, "mug", (0.6, 0.5, 0.12, 0.18)),
        (2, "table", (0.05, 0.45, 0.9, 0.5)),
    ])
    entries.append(oracle_entry(
        "text+box+point", kitchen,
        [t("move"), box(0.16, 0.56, 0.28, 0.14), t("to"), pt(0.7, 0.3)],
        [MoveToPoint(0, NormPoint(0.7, 0.3))]))

    # 3. Delete by drawn box.
    desk = make_graph("A lamp and a laptop on a desk.", [
        (0, "lamp", (0.7, 0.2, 0.15, 0.35)),
        (1, "laptop", (0.25, 0.4, 0.3, 0.2)),
        (2, "desk", (0.1, 0.55, 0.8, 0.4)),
    ])
    entries.append(oracle_entry(
        "text+box", desk,
        [t("delete"), box(0.68, 0.22, 0.18, 0.3)],
        [Delete(0)]))

    # 4. Add at a drawn box.
    yard = make_graph("A tree in a yard.", [
        (0, "tree", (0.55, 0.1, 0.3, 0.6)),
    ])
    entries.append(oracle_entry(
        "text+box", yard,
        [t("add a"), t("cat"), t("at"), box(0.1, 0.6, 0.2, 0.25)],
        [Add("cat", r(0.1, 0.6, 0.2, 0.25))]))

    # 5. Appearance change with "make".
    park = make_graph("A dog playing in a park.", [
        (0, "dog", (0.4, 0.55, 0.25, 0.3)),
        (1, "bench", (0.05, 0.5, 0.3, 0.25)),
    ])
    entries.append(oracle_entry(
        "text+box", park,
        [t("make"), box(0.42, 0.56, 0.22, 0.28), t("a husky")],
        [ChangeAppearance(0, "husky")]))

    # 6. Compound: move then rename via "it".
    shelf = make_graph("A mug on a shelf.", [
        (0, "mug", (0.45, 0.3, 0.1, 0.15)),
        (1, "shelf", (0.1, 0.42, 0.8, 0.08)),
    ])
    entries.append(oracle_entry(
        "text+box+point", shelf,
        [t("move"), box(0.44, 0.3, 0.12, 0.16), t("to"), pt(0.2, 0.2),
         t("and make it a teapot")],
        [MoveToPoint(0, NormPoint(0.2, 0.2)), ChangeAppearance(0, "teapot")]))

    # 7. Appearance change with "change ... to".
    street = make_graph("A car parked on a street.", [
        (0, "car", (0.2, 0.6, 0.5, 0.25)),
        (1, "street", (0.0, 0.55, 1.0, 0.45)),
    ])
    entries.append(oracle_entry(
        "text+box", street,
        [t("change"), box(0.22, 0.62, 0.46, 0.2), t("to a"), t("sports car")],
        [ChangeAppearance(0, "sports car")]))

    # 8. Move into a drawn region (position and size change together).
    field = make_graph("A ball on a field.", [
        (0, "ball", (0.1, 0.75, 0.08, 0.08)),
        (1, "goal", (0.65, 0.55, 0.3, 0.25)),
    ])
    entries.append(oracle_entry(
        "text+box", field,
        [t("move"), box(0.1, 0.74, 0.1, 0.1), t("to"), box(0.7, 0.6, 0.16, 0.16)],
        [MoveToRect(0, r(0.7, 0.6, 0.16, 0.16))]))

    # 9. Text-only resize.
    garden = make_graph("A tree beside a fence.", [
        (0, "tree", (0.4, 0.35, 0.2, 0.4)),
        (1, "fence", (0.0, 0.6, 1.0, 0.2)),
    ])
    entries.append(hand_entry(
        "text", "Make the tree taller.",
        chain("Resize", "None", "Tree, Fence", "Nowhere", "Yes", "No"),
        garden, [Resize(0, 0.2, 0.6)],
        "A tree beside a fence."))

    # 10. Text-only move with a named corner.
    sky = make_graph("A bird flying in the sky.", [
        (0, "bird", (0.45, 0.5, 0.1, 0.08)),
        (1, "cloud", (0.6, 0.15, 0.25, 0.12)),
    ])
    entries.append(hand_entry(
        "text", "Move the bird to the top left corner.",
        chain("Move", "Bird", "Cloud", "The top left corner", "No", "No"),
        sky, [MoveToPoint(0, NormPoint(0.08, 0.08))],
        "A bird flying in the sky."))

    # 11. Text-only delete.
    beach = make_graph("Clouds over a beach umbrella.", [
        (0, "clouds", (0.1, 0.05, 0.5, 0.15)),
        (1, "umbrella", (0.35, 0.4, 0.3, 0.35)),
    ])
    entries.append(hand_entry(
        "text", "Delete the clouds.",
        chain("Delete", "None", "Umbrella", "Nowhere", "No", "No"),
        beach, [Delete(0)],
        "A beach umbrella."))

    # 12. Delete via "remove".
    room = make_graph("A chair and a rug in a room.", [
        (0, "chair", (0.55, 0.45, 0.2, 0.35)),
        (1, "rug", (0.2, 0.7, 0.55, 0.25)),
    ])
    entries.append(oracle_entry(
        "text+box", room,
        [t("remove"), box(0.2, 0.72, 0.5, 0.2)],
        [Delete(1)]))

    # 13. Person moved by box + point.
    crossing = make_graph("A person waiting at a crossing.", [
        (0, "person", (0.7, 0.4, 0.12, 0.4)),
        (1, "crossing", (0.0, 0.75, 1.0, 0.2)),
    ])
    entries.append(oracle_entry(
        "text+box+point", crossing,
        [t("move"), box(0.7, 0.42, 0.12, 0.36), t("to"), pt(0.3, 0.6)],
        [MoveToPoint(0, NormPoint(0.3, 0.6))]))

    # 14. Text-only add.
    night = make_graph("A house at night.", [
        (0, "house", (0.3, 0.45, 0.4, 0.45)),
    ])
    entries.append(hand_entry(
        "text", "Add a moon in the sky.",
        chain("Add", "None", "House", "The sky", "No", "No"),
        night, [Add("moon", r(0.7, 0.08, 0.15, 0.15))],
        "A house at night under the moon."))

    # 15. Name containing "and".
    sofa = make_graph("A cat sleeping on a sofa.", [
        (0, "cat", (0.4, 0.5, 0.2, 0.15)),
        (1, "sofa", (0.15, 0.45, 0.7, 0.4)),
    ])
    entries.append(oracle_entry(
        "text+box", sofa,
        [t("make"), box(0.4, 0.5, 0.2, 0.16), t("a black and white cat")],
        [ChangeAppearance(0, "black and white cat")]))

    # 16. Compound across two different objects.
    study = make_graph("A lamp and books on a table.", [
        (0, "lamp", (0.65, 0.25, 0.15, 0.3)),
        (1, "books", (0.2, 0.45, 0.25, 0.12)),
        (2, "table", (0.1, 0.55, 0.8, 0.35)),
    ])
    entries.append(oracle_entry(
        "text+box+point", study,
        [t("move"), box(0.64, 0.26, 0.16, 0.28), t("to"), pt(0.25, 0.25),
         t("and remove"), box(0.2, 0.46, 0.24, 0.1)],
        [MoveToPoint(0, NormPoint(0.25, 0.25)), Delete(1)]))

    # 17. Text-only appearance change.
    driveway = make_graph("A car in a driveway.", [
        (0, "car", (0.25, 0.5, 0.5, 0.3)),
    ])
    entries.append(hand_entry(
        "text", "Make the car red.",
        chain("Change", "None", "Car", "Nowhere", "No", "Yes"),
        driveway, [ChangeAppearance(0, "red car")],
        "A red car in a driveway."))

    # 18. Add a second object near an existing one.
    sidewalk = make_graph("A dog on a sidewalk.", [
        (0, "dog", (0.3, 0.55, 0.2, 0.25)),
    ])
    entries.append(oracle_entry(
        "text+box", sidewalk,
        [t("add a"), t("fire hydrant"), t("at"), box(0.65, 0.5, 0.1, 0.3)],
        [Add("fire hydrant", r(0.65, 0.5, 0.1, 0.3))]))

    # 19. Named object moved to a drawn point.
    breeze = make_graph("A kite above a hill.", [
        (0, "kite", (0.55, 0.3, 0.15, 0.12)),
        (1, "hill", (0.0, 0.6, 1.0, 0.4)),
    ])
    entries.append(hand_entry(
        "text+point", "move the kite to {x: 0.25, y: 0.10}",
        chain("Move", "Kite", "Hill", "The point (0.25, 0.10)", "No", "No"),
        breeze, [MoveToPoint(0, NormPoint(0.25, 0.1))],
        "A kite above a hill."))

    # 20. Add on a blank canvas (fresh ids start at 0).
    blank = SceneGraph(prompt="An empty scene.", boxes=())
    entries.append(oracle_entry(
        "text+box", blank,
        [t("add a"), t("plate"), t("at"), box(0.4, 0.6, 0.3, 0.2)],
        [Add("plate", r(0.4, 0.6, 0.3, 0.2))]))

    assert len(entries) == 20, len(entries)
    kinds = {e["type"] for e in entries}
    assert kinds == {"text", "text+box", "text+box+point", "text+point"}, kinds
    return entries


# --- Interpreter reference triples ---------------------------------------

def build_oracle_cases() -> list[dict]:
    cases = []

    def case(label, graph, tokens_or_text, expected_ops):
        if isinstance(tokens_or_text, str):
            text = tokens_or_text
        else:
            text = serialize_instruction(MultimodalInstruction(tuple(tokens_or_text)))
        parsed = parse_instruction_text(text)
        result = interpret_instruction(graph, parsed)
        assert result.ops == tuple(expected_ops), (label, text, result.ops)
        expected = fold_ops(graph, expected_ops)
        assert scene_graph_to_obj(result.output_graph) == scene_graph_to_obj(expected), label
        check_roundtrip(graph)
        check_roundtrip(expected)
        cases.append({
            "label": label,
            "input": scene_graph_to_obj(graph),
            "instruction": text,
            "expected": scene_graph_to_obj(expected),
        })

    dogcar = APPENDIX_INPUT
    two = make_graph("A scene with a box and a disc.", [
        (0, "box", (0.1, 0.1, 0.2, 0.2)),
        (1, "disc", (0.6, 0.6, 0.25, 0.25)),
    ])
    trio = make_graph("A scene with a cup, a bowl, a spoon.", [
        (0, "cup", (0.1, 0.2, 0.1, 0.15)),
        (1, "bowl", (0.4, 0.5, 0.25, 0.15)),
        (2, "spoon", (0.75, 0.3, 0.05, 0.3)),
    ])

    # Moves to points.
    case("move dog to appendix point", dogcar,
         [t("move"), box(0.75, 0.8, 0.2, 0.2), t("to"), pt(0.45, 0.55)],
         [MoveToPoint(0, NormPoint(0.45, 0.55))])
    case("move car to center", dogcar,
         [t("move"), box(0.12, 0.66, 0.55, 0.3), t("to"), pt(0.5, 0.5)],
         [MoveToPoint(1, NormPoint(0.5, 0.5))])
    case("move disc to top left", two,
         [t("move"), box(0.62, 0.62, 0.2, 0.2), t("to"), pt(0.15, 0.15)],
         [MoveToPoint(1, NormPoint(0.15, 0.15))])
    case("move cup to bottom", trio,
         [t("move"), box(0.1, 0.18, 0.12, 0.18), t("to"), pt(0.5, 0.9)],
         [MoveToPoint(0, NormPoint(0.5, 0.9))])
    case("move spoon left", trio,
         [t("move"), box(0.74, 0.32, 0.08, 0.26), t("to"), pt(0.2, 0.3)],
         [MoveToPoint(2, NormPoint(0.2, 0.3))])

    # Clamped moves (target point near the frame edge).
    case("move dog clamped corner", dogcar,
         [t("move"), box(0.75, 0.8, 0.2, 0.2), t("to"), pt(0.05, 0.05)],
         [MoveToPoint(0, NormPoint(0.05, 0.05))])
    case("move car clamped right", dogcar,
         [t("move"), box(0.1, 0.65, 0.6, 0.35), t("to"), pt(0.95, 0.5)],
         [MoveToPoint(1, NormPoint(0.95, 0.5))])
    case("move bowl clamped bottom", trio,
         [t("move"), box(0.4, 0.5, 0.25, 0.15), t("to"), pt(0.5, 1.0)],
         [MoveToPoint(1, NormPoint(0.5, 1.0))])

    # Moves into regions.
    case("move dog into region", dogcar,
         [t("move"), box(0.76, 0.82, 0.18, 0.18), t("to"), box(0.3, 0.4, 0.3, 0.3)],
         [MoveToRect(0, r(0.3, 0.4, 0.3, 0.3))])
    case("move box into region", two,
         [t("move"), box(0.1, 0.1, 0.2, 0.2), t("to"), box(0.55, 0.15, 0.3, 0.25)],
         [MoveToRect(0, r(0.55, 0.15, 0.3, 0.25))])
    case("shrink disc into region", two,
         [t("move"), box(0.6, 0.6, 0.25, 0.25), t("to"), box(0.1, 0.7, 0.1, 0.1)],
         [MoveToRect(1, r(0.1, 0.7, 0.1, 0.1))])

    # Adds.
    case("add plate empty graph", SceneGraph("An empty scene.", ()),
         [t("add a"), t("plate"), t("at"), box(0.4, 0.6, 0.3, 0.2)],
         [Add("plate", r(0.4, 0.6, 0.3, 0.2))])
    case("add bird to dogcar", dogcar,
         [t("add a"), t("bird"), t("at"), box(0.45, 0.1, 0.1, 0.08)],
         [Add("bird", r(0.45, 0.1, 0.1, 0.08))])
    case("add an umbrella", two,
         [t("add an"), t("umbrella"), t("at"), box(0.3, 0.3, 0.25, 0.3)],
         [Add("umbrella", r(0.3, 0.3, 0.25, 0.3))])
    case("add salt and pepper name", trio,
         [t("add a"), t("salt and pepper shaker"), t("at"), box(0.6, 0.1, 0.1, 0.12)],
         [Add("salt and pepper shaker", r(0.6, 0.1, 0.1, 0.12))])

    # Deletes.
    case("delete dog", dogcar,
         [t("delete"), box(0.75, 0.8, 0.2, 0.2)],
         [Delete(0)])
    case("remove car", dogcar,
         [t("remove"), box(0.12, 0.7, 0.5, 0.28)],
         [Delete(1)])
    case("delete bowl", trio,
         [t("delete"), box(0.42, 0.52, 0.2, 0.1)],
         [Delete(1)])
    case("delete last object", make_graph("A scene with one ball.",
                                          [(0, "ball", (0.4, 0.4, 0.2, 0.2))]),
         [t("delete"), box(0.4, 0.4, 0.2, 0.2)],
         [Delete(0)])

    # Appearance changes.
    case("make dog a golden retriever", dogcar,
         [t("make"), box(0.75, 0.8, 0.2, 0.2), t("a golden retriever")],
         [ChangeAppearance(0, "golden retriever")])
    case("change car to a truck", dogcar,
         [t("change"), box(0.1, 0.65, 0.6, 0.35), t("to a truck")],
         [ChangeAppearance(1, "truck")])
    case("make disc a frisbee", two,
         [t("make"), box(0.58, 0.58, 0.28, 0.28), t("a frisbee")],
         [ChangeAppearance(1, "frisbee")])
    case("make cup a black and gold cup", trio,
         [t("make"), box(0.1, 0.2, 0.1, 0.15), t("a black and gold cup")],
         [ChangeAppearance(0, "black and gold cup")])

    # Compounds and pronoun binding.
    case("golden retriever compound", dogcar,
         [t("move"), box(0.75, 0.8, 0.2, 0.2), t("to"), pt(0.45, 0.55),
          t("and make it a golden retriever")],
         [MoveToPoint(0, NormPoint(0.45, 0.55)), ChangeAppearance(0, "golden retriever")])
    case("move then delete other", trio,
         [t("move"), box(0.1, 0.2, 0.1, 0.15), t("to"), pt(0.3, 0.7),
          t("and delete"), box(0.75, 0.3, 0.06, 0.28)],
         [MoveToPoint(0, NormPoint(0.3, 0.7)), Delete(2)])
    case("rename then move it", two,
         [t("make"), box(0.1, 0.1, 0.2, 0.2), t("a crate and move it to"),
          pt(0.5, 0.2)],
         [ChangeAppearance(0, "crate"), MoveToPoint(0, NormPoint(0.5, 0.2))])
    case("move it after delete of other", trio,
         [t("delete"), box(0.42, 0.5, 0.2, 0.14), t("and make"),
          box(0.1, 0.2, 0.1, 0.15), t("a glass")],
         [Delete(1), ChangeAppearance(0, "glass")])
    case("three clause chain", trio,
         [t("move"), box(0.1, 0.2, 0.1, 0.15), t("to"), pt(0.2, 0.8),
          t("and make it a mug and delete"), box(0.76, 0.28, 0.05, 0.3)],
         [MoveToPoint(0, NormPoint(0.2, 0.8)), ChangeAppearance(0, "mug"),
          Delete(2)])
    case("add then move new neighbor", two,
         [t("add a"), t("vase"), t("at"), box(0.4, 0.2, 0.1, 0.2),
          t("and move"), box(0.6, 0.6, 0.25, 0.25), t("to"), pt(0.2, 0.5)],
         [Add("vase", r(0.4, 0.2, 0.1, 0.2)), MoveToPoint(1, NormPoint(0.2, 0.5))])
    case("delete it repeats object", two,
         [t("move"), box(0.1, 0.1, 0.2, 0.2), t("to"), pt(0.8, 0.2),
          t("and delete it")],
         [MoveToPoint(0, NormPoint(0.8, 0.2)), Delete(0)])

    # Case-insensitive keywords and punctuation tolerance.
    case("uppercase move", dogcar,
         "MOVE {x: 0.75, y: 0.80, width: 0.20, height: 0.20} TO {x: 0.45, y: 0.55}",
         [MoveToPoint(0, NormPoint(0.45, 0.55))])
    case("trailing period", dogcar,
         "delete {x: 0.75, y: 0.80, width: 0.20, height: 0.20}.",
         [Delete(0)])
    case("capitalized make", two,
         "Make {x: 0.10, y: 0.10, width: 0.20, height: 0.20} a wooden crate.",
         [ChangeAppearance(0, "wooden crate")])

    assert len(cases) >= 30, len(cases)
    return cases


# --- Serializer golden vectors -------------------------------------------

GOLDEN_INSTRUCTION = ("move {x: 150, y: 400, width: 100, height: 100} "
                      "to {x: 144, y: 132} and make it a golden retriever")


def build_vectors() -> list[dict]:
    vectors = [
        {
            "name": "move-box-to-point-and-rename",
            "units": "px",
            "canvas": {"width": 1000, "height": 1000},
            "tokens": [
                {"kind": "text", "text": "move"},
                {"kind": "box", "x": 150, "y": 400, "width": 100, "height": 100,
                 "symbol": "■"},
                {"kind": "text", "text": "to"},
                {"kind": "point", "x": 144, "y": 132, "symbol": "★"},
                {"kind": "text", "text": "and make it a golden retriever"},
            ],
            "expected": GOLDEN_INSTRUCTION,
        },
        {
            "name": "text-only",
            "units": "norm",
            "canvas": {"width": 1000, "height": 1000},
            "tokens": [{"kind": "text", "text": "make the sky darker"}],
            "expected": "make the sky darker",
        },
        {
            "name": "normalized-delete-box",
            "units": "norm",
            "canvas": {"width": 1000, "height": 1000},
            "tokens": [
                {"kind": "text", "text": "delete"},
                {"kind": "box", "x": 0.1, "y": 0.65, "width": 0.6, "height": 0.35,
                 "symbol": "■"},
            ],
            "expected": "delete {x: 0.10, y: 0.65, width: 0.60, height: 0.35}",
        },
        {
            "name": "pixel-add-at-box",
            "units": "px",
            "canvas": {"width": 1000, "height": 1000},
            "tokens": [
                {"kind": "text", "text": "add a plate at"},
                {"kind": "box", "x": 400, "y": 600, "width": 300, "height": 200,
                 "symbol": "■"},
            ],
            "expected": "add a plate at {x: 400, y: 600, width: 300, height: 200}",
        },
        {
            "name": "point-only",
            "units": "norm",
            "canvas": {"width": 640, "height": 480},
            "tokens": [
                {"kind": "text", "text": "move the kite to"},
                {"kind": "point", "x": 0.25, "y": 0.1, "symbol": "★"},
            ],
            "expected": "move the kite to {x: 0.25, y: 0.10}",
        },
        {
            "name": "pixel-compound-two-boxes",
            "units": "px",
            "canvas": {"width": 1000, "height": 1000},
            "tokens": [
                {"kind": "text", "text": "move"},
                {"kind": "box", "x": 10, "y": 20, "width": 50, "height": 60,
                 "symbol": "■"},
                {"kind": "text", "text": "to"},
                {"kind": "point", "x": 500, "y": 500, "symbol": "★"},
                {"kind": "text", "text": "and delete"},
                {"kind": "box", "x": 700, "y": 100, "width": 100, "height": 100,
                 "symbol": "◆"},
            ],
            "expected": ("move {x: 10, y: 20, width: 50, height: 60} "
                         "to {x: 500, y: 500} and delete "
                         "{x: 700, y: 100, width: 100, height: 100}"),
        },
    ]
    from clicklayout.instruction import instruction_from_obj
    for vector in vectors:
        built = instruction_from_obj({"units": vector["units"],
                                      "tokens": vector["tokens"]})
        assert serialize_instruction(built) == vector["expected"], vector["name"]
        reparsed = parse_instruction_text(vector["expected"])
        assert reparsed.units == vector["units"], vector["name"]
        assert serialize_instruction(reparsed) == vector["expected"], vector["name"]
    return vectors


def write_json(path: Path, payload) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n",
                    encoding="utf-8")
    print(f"wrote {path.relative_to(ROOT)}")


def main() -> int:
    write_json(ROOT / "src/clicklayout/data/default_examples.json", build_store())
    write_json(ROOT / "tests/data/oracle_cases.json", build_oracle_cases())
    write_json(ROOT / "shared/instruction_vectors.json", build_vectors())
    return 0


if __name__ == "__main__":
    sys.exit(main())
