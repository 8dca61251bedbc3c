"""Shared fixtures: the dog/car reference layout and checked-in data files."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

from clicklayout.scene_graph import make_graph

TESTS_DIR = Path(__file__).resolve().parent
REPO_ROOT = TESTS_DIR.parent

sys.path.insert(0, str(TESTS_DIR))

GOLDEN_INSTRUCTION = ("move {x: 150, y: 400, width: 100, height: 100} "
                      "to {x: 144, y: 132} and make it a golden retriever")

# Drawn-box references that land exactly on each dog_scene object.
DOG_REF = "{x: 0.15, y: 0.4, width: 0.1, height: 0.1}"
TREE_REF = "{x: 0.6, y: 0.1, width: 0.3, height: 0.8}"


def dog_scene():
    """A scene where the golden-instruction box reference lands on the dog."""
    return make_graph("A dog in a park.", [
        (0, "dog", (0.15, 0.4, 0.1, 0.1)),
        (1, "tree", (0.6, 0.1, 0.3, 0.8)),
    ])


@pytest.fixture
def dogcar_input():
    return make_graph("A dog standing by a car.", [
        (0, "dog", (0.75, 0.8, 0.2, 0.2)),
        (1, "car", (0.1, 0.65, 0.6, 0.35)),
    ])


@pytest.fixture
def dogcar_output():
    return make_graph("A dog standing on a car.", [
        (1, "car", (0.1, 0.65, 0.6, 0.35)),
        (0, "dog", (0.35, 0.45, 0.2, 0.2)),
    ])


@pytest.fixture(scope="session")
def oracle_cases():
    path = TESTS_DIR / "data" / "oracle_cases.json"
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def instruction_vectors():
    path = REPO_ROOT / "shared" / "instruction_vectors.json"
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def default_store():
    from clicklayout.prompt_engine import load_default_store
    return load_default_store()


@pytest.fixture(autouse=True)
def _no_ambient_endpoints(monkeypatch):
    """Tests opt into endpoints explicitly; never inherit them from the shell."""
    for name in ("CLICKLAYOUT_LLM_ENDPOINT", "CLICKLAYOUT_LLM_API_KEY",
                 "CLICKLAYOUT_GEN_ENDPOINT", "CLICKLAYOUT_BACKEND",
                 "CLICKLAYOUT_FIXTURE", "CLICKLAYOUT_EXAMPLES"):
        monkeypatch.delenv(name, raising=False)
