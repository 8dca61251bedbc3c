"""Command-line interface: edit/render/examples commands and config precedence."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from clicklayout.cli import main
from clicklayout.prompt_engine import default_store_path
from clicklayout.scene_graph import parse_scene_graph, serialize_scene_graph
from conftest import DOG_REF, GOLDEN_INSTRUCTION, dog_scene


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def layout_file(tmp_path):
    path = tmp_path / "scene.layout.json"
    path.write_text(serialize_scene_graph(dog_scene()) + "\n", encoding="utf-8")
    return path


def test_edit_writes_layout_to_stdout(runner, layout_file):
    result = runner.invoke(main, ["edit", "--layout", str(layout_file),
                                  "--instruction", f"delete {DOG_REF}"])
    assert result.exit_code == 0, result.output
    graph = parse_scene_graph(result.output.strip())
    assert [box.unique_id for box in graph.boxes] == [1]


def test_edit_writes_layout_to_file(runner, layout_file, tmp_path):
    out = tmp_path / "edited.layout.json"
    result = runner.invoke(main, [
        "edit", "--layout", str(layout_file),
        "--instruction", GOLDEN_INSTRUCTION, "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "Q: Which operation is being performed?" in result.output
    assert f"wrote {out}" in result.output
    graph = parse_scene_graph(out.read_text(encoding="utf-8"))
    assert graph.get(0).name == "golden retriever"


def test_edit_honors_canvas_dimensions(runner, layout_file):
    # On a 500x500 canvas these pixels land on the dog box.
    result = runner.invoke(main, [
        "edit", "--layout", str(layout_file),
        "--instruction", "delete {x: 75, y: 200, width: 50, height: 50}",
        "--width", "500", "--height", "500"])
    assert result.exit_code == 0, result.output
    graph = parse_scene_graph(result.output.strip())
    assert [box.name for box in graph.boxes] == ["tree"]


def test_edit_missing_layout_file_is_usage_error(runner, tmp_path):
    result = runner.invoke(main, ["edit", "--layout", str(tmp_path / "no.json"),
                                  "--instruction", "delete it"])
    assert result.exit_code == 2


def test_edit_reports_domain_errors(runner, layout_file):
    result = runner.invoke(main, [
        "edit", "--layout", str(layout_file),
        "--instruction", "delete {x: 0.8, y: 0.05, width: 0.05, height: 0.05}"])
    assert result.exit_code == 1
    assert "Error:" in result.output
    assert "overlaps no object" in result.output


def test_edit_reports_parse_errors(runner, layout_file):
    result = runner.invoke(main, ["edit", "--layout", str(layout_file),
                                  "--instruction", "move {x: 1, oops: 2} to it"])
    assert result.exit_code == 1
    assert "Error:" in result.output


def test_render_writes_svg(runner, layout_file, tmp_path):
    out = tmp_path / "preview.svg"
    result = runner.invoke(main, [
        "render", "--layout", str(layout_file), "--out", str(out),
        "--width", "640", "--height", "480"])
    assert result.exit_code == 0, result.output
    svg = out.read_text(encoding="utf-8")
    assert svg.startswith("<svg")
    assert 'width="640"' in svg
    assert "dog #0" in svg


def test_render_no_labels(runner, layout_file, tmp_path):
    out = tmp_path / "preview.svg"
    result = runner.invoke(main, [
        "render", "--layout", str(layout_file), "--out", str(out), "--no-labels"])
    assert result.exit_code == 0, result.output
    assert "<text" not in out.read_text(encoding="utf-8")


def test_examples_validate_bundled_store(runner):
    result = runner.invoke(main, ["examples", "validate",
                                  str(default_store_path())])
    assert result.exit_code == 0, result.output
    assert "ok: 20 examples" in result.output
    assert "text+box+point" in result.output


def test_examples_validate_rejects_broken_store(runner, tmp_path):
    path = tmp_path / "store.json"
    path.write_text(json.dumps([{"type": "text"}]), encoding="utf-8")
    result = runner.invoke(main, ["examples", "validate", str(path)])
    assert result.exit_code == 1
    assert "example 0" in result.output


def test_flag_overrides_environment(runner, layout_file):
    result = runner.invoke(
        main,
        ["edit", "--layout", str(layout_file),
         "--instruction", f"delete {DOG_REF}", "--backend", "oracle"],
        env={"CLICKLAYOUT_BACKEND": "remote",
             "CLICKLAYOUT_LLM_ENDPOINT": "http://127.0.0.1:1/v1"})
    assert result.exit_code == 0, result.output


def test_environment_overrides_config_file(runner, layout_file, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"backend": "remote",
                                  "endpoint": "http://127.0.0.1:1/v1"}),
                      encoding="utf-8")
    result = runner.invoke(
        main,
        ["--config", str(config), "edit", "--layout", str(layout_file),
         "--instruction", f"delete {DOG_REF}"],
        env={"CLICKLAYOUT_BACKEND": "oracle"})
    assert result.exit_code == 0, result.output


def test_config_file_backend_is_used(runner, layout_file, tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"backend": "remote",
                                  "endpoint": "http://127.0.0.1:1/v1"}),
                      encoding="utf-8")
    result = runner.invoke(main, ["--config", str(config), "edit",
                                  "--layout", str(layout_file),
                                  "--instruction", f"delete {DOG_REF}"])
    assert result.exit_code == 1
    assert "Error:" in result.output


def test_invalid_backend_kind_from_environment(runner, layout_file):
    result = runner.invoke(main, ["edit", "--layout", str(layout_file),
                                  "--instruction", f"delete {DOG_REF}"],
                           env={"CLICKLAYOUT_BACKEND": "weird"})
    assert result.exit_code == 1
    assert "Error:" in result.output


def test_missing_fixture_file_is_reported(runner, layout_file, tmp_path):
    result = runner.invoke(main, [
        "edit", "--layout", str(layout_file),
        "--instruction", f"delete {DOG_REF}",
        "--backend", "fixture", "--fixture", str(tmp_path / "none.json")])
    assert result.exit_code == 1
    assert "Error:" in result.output


def test_unreadable_config_file(runner, tmp_path):
    config = tmp_path / "config.json"
    config.write_text("[1, 2, 3]", encoding="utf-8")
    result = runner.invoke(main, ["--config", str(config), "examples",
                                  "validate", str(default_store_path())])
    assert result.exit_code == 1
    assert "JSON object" in result.output


@pytest.mark.parametrize("args", [
    ["--help"],
    ["edit", "--help"],
    ["render", "--help"],
    ["serve", "--help"],
    ["examples", "validate", "--help"],
])
def test_help_screens(runner, args):
    result = runner.invoke(main, args)
    assert result.exit_code == 0
