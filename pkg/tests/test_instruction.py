"""Multi-modal instructions: tokens, serialization, units, parsing."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clicklayout.errors import ParseError, ValidationError
from clicklayout.instruction import (
    BoxRef,
    MultimodalInstruction,
    NORMALIZED_UNITS,
    PIXEL_UNITS,
    PointRef,
    TextSpan,
    instruction_from_obj,
    instruction_to_obj,
    normalize_instruction,
    parse_instruction_text,
    serialize_instruction,
)
from conftest import GOLDEN_INSTRUCTION


def golden_tokens():
    return (TextSpan("move"),
            BoxRef(150, 400, 100, 100, symbol="■"),
            TextSpan("to"),
            PointRef(144, 132, symbol="★"),
            TextSpan("and make it a golden retriever"))


# --- Canonical token stream -----------------------------------------------

def test_adjacent_text_spans_merge_with_single_space():
    instr = MultimodalInstruction((TextSpan("move "), TextSpan(" the"),
                                   TextSpan("dog  now ")))
    assert instr.tokens == (TextSpan("move the dog  now"),)


def test_empty_spans_are_dropped():
    instr = MultimodalInstruction((TextSpan("  "), BoxRef(0.1, 0.1, 0.2, 0.2),
                                   TextSpan("")))
    assert instr.tokens == (BoxRef(0.1, 0.1, 0.2, 0.2),)


def test_instruction_requires_a_token():
    with pytest.raises(ValidationError):
        MultimodalInstruction((TextSpan("   "),))


def test_reference_symbols_must_be_unique():
    with pytest.raises(ValidationError):
        MultimodalInstruction((BoxRef(0.1, 0.1, 0.2, 0.2, symbol="a"),
                               PointRef(0.5, 0.5, symbol="a")))


def test_symbols_do_not_affect_equality():
    assert BoxRef(1, 2, 3, 4, symbol="x") == BoxRef(1, 2, 3, 4, symbol="y")


def test_unknown_units_rejected():
    with pytest.raises(ValidationError):
        MultimodalInstruction((TextSpan("hi"),), units="inches")


# --- Serialization --------------------------------------------------------

def test_serialize_golden_pixel_instruction():
    instr = MultimodalInstruction(golden_tokens(), units=PIXEL_UNITS)
    assert serialize_instruction(instr) == GOLDEN_INSTRUCTION


def test_serialize_text_only_passthrough():
    instr = MultimodalInstruction((TextSpan("make the sky darker"),))
    assert serialize_instruction(instr) == "make the sky darker"


def test_serialize_normalized_uses_two_decimals():
    instr = MultimodalInstruction((TextSpan("delete"),
                                   BoxRef(0.1, 0.65, 0.6, 0.35)))
    assert serialize_instruction(instr) == (
        "delete {x: 0.10, y: 0.65, width: 0.60, height: 0.35}")


def test_serialize_pixel_rounds_to_integers():
    instr = MultimodalInstruction((TextSpan("move"), PointRef(143.6, 132.4),
                                   TextSpan("ok")), units=PIXEL_UNITS)
    assert serialize_instruction(instr) == "move {x: 144, y: 132} ok"


# --- Normalization --------------------------------------------------------

def test_normalize_divides_by_canvas():
    instr = MultimodalInstruction(golden_tokens(), units=PIXEL_UNITS)
    norm = normalize_instruction(instr, 1000, 1000)
    assert norm.units == NORMALIZED_UNITS
    box = norm.tokens[1]
    assert (box.x, box.y, box.width, box.height) == (0.15, 0.4, 0.1, 0.1)
    point = norm.tokens[3]
    assert (point.x, point.y) == (0.144, 0.132)
    assert point.symbol == "★"


def test_normalize_is_idempotent():
    instr = MultimodalInstruction((TextSpan("move"), PointRef(0.5, 0.5)))
    assert normalize_instruction(instr, 640, 480) is instr


def test_normalize_rejects_bad_dimensions():
    instr = MultimodalInstruction(golden_tokens(), units=PIXEL_UNITS)
    with pytest.raises(ValueError):
        normalize_instruction(instr, 0, 1000)


def test_normalize_respects_non_square_canvas():
    instr = MultimodalInstruction((TextSpan("move"), BoxRef(320, 120, 160, 240),
                                   TextSpan("up")), units=PIXEL_UNITS)
    box = normalize_instruction(instr, 640, 480).tokens[1]
    assert (box.x, box.y, box.width, box.height) == (0.5, 0.25, 0.25, 0.5)


# --- Parsing --------------------------------------------------------------

def test_parse_golden_instruction():
    instr = parse_instruction_text(GOLDEN_INSTRUCTION)
    assert instr.units == PIXEL_UNITS
    assert instr.tokens == golden_tokens()
    assert serialize_instruction(instr) == GOLDEN_INSTRUCTION


def test_parse_text_without_geometry():
    instr = parse_instruction_text("delete it")
    assert instr.tokens == (TextSpan("delete it"),)
    assert instr.units == NORMALIZED_UNITS


def test_parse_decimal_geometry_is_normalized_units():
    instr = parse_instruction_text("move {x: 0.45, y: 0.55} left")
    assert instr.units == NORMALIZED_UNITS
    assert instr.tokens[1] == PointRef(0.45, 0.55)


def test_parse_any_dotless_number_means_pixels():
    instr = parse_instruction_text("move {x: 150, y: 0.5}")
    assert instr.units == PIXEL_UNITS


def test_parse_scientific_notation_counts_as_decimal():
    instr = parse_instruction_text("move {x: 1e-1, y: 5E-1}")
    assert instr.units == NORMALIZED_UNITS
    assert instr.tokens[1] == PointRef(0.1, 0.5)


@pytest.mark.parametrize("text,fragment", [
    ("", "empty instruction"),
    ("   ", "empty instruction"),
    ("move {x: 1, y: 2, z: 3} on", "unknown key"),
    ("move {x: 1, x: 2} on", "duplicate key"),
    ("move {x: one, y: 2} on", "invalid number"),
    ("move {x: 1, y: 2, width: 3} on", "incomplete reference"),
    ("move {x 1, y 2} on", "key: value"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        parse_instruction_text(text)
    assert fragment in str(err.value)


# --- JSON form ------------------------------------------------------------

def test_obj_roundtrip_preserves_symbols():
    instr = MultimodalInstruction(golden_tokens(), units=PIXEL_UNITS)
    back = instruction_from_obj(instruction_to_obj(instr))
    assert back == instr
    assert [t.symbol for t in back.geometry()] == ["■", "★"]


def test_from_obj_rejects_bad_payloads():
    with pytest.raises(ValidationError):
        instruction_from_obj({"units": "px", "tokens": []})
    with pytest.raises(ValidationError):
        instruction_from_obj({"units": "px", "tokens": [{"kind": "mystery"}]})
    with pytest.raises(ValidationError):
        instruction_from_obj("move it")


# --- Shared golden vectors ------------------------------------------------

def test_shared_vectors_serialize_exactly(instruction_vectors):
    for vector in instruction_vectors:
        built = instruction_from_obj({"units": vector["units"],
                                      "tokens": vector["tokens"]})
        assert serialize_instruction(built) == vector["expected"], vector["name"]


def test_shared_vectors_reparse(instruction_vectors):
    for vector in instruction_vectors:
        reparsed = parse_instruction_text(vector["expected"])
        assert reparsed.units == vector["units"], vector["name"]
        assert serialize_instruction(reparsed) == vector["expected"], vector["name"]


def test_golden_vector_is_first_shared_vector(instruction_vectors):
    assert instruction_vectors[0]["expected"] == GOLDEN_INSTRUCTION


# --- Round-trip property --------------------------------------------------

def text_spans():
    alphabet = st.characters(whitelist_categories=("L",),
                             whitelist_characters=" ")
    return (st.text(alphabet=alphabet, min_size=1, max_size=14)
            .filter(lambda s: s.strip())
            .map(TextSpan))


@st.composite
def instructions(draw):
    units = draw(st.sampled_from([PIXEL_UNITS, NORMALIZED_UNITS]))
    if units == PIXEL_UNITS:
        coord = st.integers(0, 1000).map(float)
        side = st.integers(1, 1000).map(float)
    else:
        coord = st.integers(0, 100).map(lambda n: n / 100)
        side = st.integers(1, 100).map(lambda n: n / 100)
    refs = st.one_of(
        st.tuples(coord, coord, side, side).map(lambda v: BoxRef(*v)),
        st.tuples(coord, coord).map(lambda v: PointRef(*v)))
    count = draw(st.integers(1, 6))
    tokens = [draw(st.one_of(text_spans(), refs)) for _ in range(count)]
    if units == PIXEL_UNITS and not any(
            not isinstance(t, TextSpan) for t in tokens):
        tokens.append(draw(refs))
    return MultimodalInstruction(tuple(tokens), units)


@settings(max_examples=200, deadline=None)
@given(instructions())
def test_parse_serialize_roundtrip_property(instr):
    assert parse_instruction_text(serialize_instruction(instr)) == instr
