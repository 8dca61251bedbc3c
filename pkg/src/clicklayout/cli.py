"""Command-line entry points.

Settings resolve in the order: command-line flags, then environment
variables, then the optional JSON config file, then built-in defaults.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import click

from .errors import ClickLayoutError
from .instruction import parse_instruction_text
from .llm_backend import BackendConfig, ENDPOINT_ENV
from .prompt_engine import ExampleStore, load_default_store, load_example_store
from .render import GEN_ENDPOINT_ENV, RenderConfig, render_layout_preview
from .scene_graph import parse_scene_graph, serialize_scene_graph
from .service import LayoutService

BACKEND_ENV = "CLICKLAYOUT_BACKEND"
FIXTURE_ENV = "CLICKLAYOUT_FIXTURE"
EXAMPLES_ENV = "CLICKLAYOUT_EXAMPLES"


def _load_config_file(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"cannot read config file {path}: {exc}")
    if not isinstance(data, dict):
        raise click.ClickException(f"config file {path} must hold a JSON object")
    return data


def _setting(flag: object, env_name: str | None, config: dict, key: str,
             default: object) -> object:
    if flag is not None:
        return flag
    if env_name is not None and env_name in os.environ:
        return os.environ[env_name]
    if key in config:
        return config[key]
    return default


def _build_backend(config: dict, backend: str | None, endpoint: str | None,
                   model: str | None, temperature: float | None,
                   fixture: str | None) -> BackendConfig:
    kind = str(_setting(backend, BACKEND_ENV, config, "backend", "oracle"))
    kwargs: dict = {
        "kind": kind,
        "endpoint": _setting(endpoint, ENDPOINT_ENV, config, "endpoint", None),
        "fixture_path": _setting(fixture, FIXTURE_ENV, config, "fixture", None),
    }
    model_value = _setting(model, None, config, "model", None)
    if model_value is not None:
        kwargs["model"] = str(model_value)
    temp_value = _setting(temperature, None, config, "temperature", None)
    if temp_value is not None:
        kwargs["temperature"] = float(temp_value)
    for key in ("regen_temperature", "timeout", "retry_backoff"):
        if key in config:
            kwargs[key] = float(config[key])
    for key in ("max_retries", "max_in_flight"):
        if key in config:
            kwargs[key] = int(config[key])
    try:
        return BackendConfig(**kwargs)
    except ValueError as exc:
        raise click.ClickException(str(exc))


def _load_store(config: dict, examples: str | None) -> ExampleStore:
    path = _setting(examples, EXAMPLES_ENV, config, "examples", None)
    if path is None:
        return load_default_store()
    return load_example_store(path)


def _read_layout(path: str):
    return parse_scene_graph(Path(path).read_text(encoding="utf-8"))


backend_options = [
    click.option("--backend", type=click.Choice(["oracle", "remote", "fixture"]),
                 default=None, help="Completion backend (default oracle)."),
    click.option("--endpoint", default=None,
                 help="Chat-completion endpoint URL for the remote backend."),
    click.option("--model", default=None, help="Model name sent to the endpoint."),
    click.option("--temperature", type=float, default=None,
                 help="Sampling temperature (default 0)."),
    click.option("--fixture", type=click.Path(), default=None,
                 help="Recorded-response file for the fixture backend."),
    click.option("--examples", type=click.Path(), default=None,
                 help="Few-shot example store (default: bundled store)."),
]


def _with_backend_options(command):
    for option in reversed(backend_options):
        command = option(command)
    return command


@click.group()
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="JSON config file; flags and environment variables win.")
@click.pass_context
def main(ctx: click.Context, config_path: str | None) -> None:
    """Edit image layouts with natural-language instructions."""
    ctx.obj = _load_config_file(config_path)


@main.command()
@click.option("--layout", "layout_path", type=click.Path(exists=True), required=True,
              help="Input layout file (.layout.json).")
@click.option("--instruction", required=True,
              help='Instruction text; drawn references inline, e.g. "move {x: 0.10, ...} to {x: 0.45, y: 0.55}".')
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Where to write the edited layout (default: stdout).")
@click.option("--width", type=int, default=1000, show_default=True,
              help="Canvas width for pixel-unit instructions.")
@click.option("--height", type=int, default=1000, show_default=True,
              help="Canvas height for pixel-unit instructions.")
@_with_backend_options
@click.pass_obj
def edit(config: dict, layout_path: str, instruction: str, out_path: str | None,
         width: int, height: int, backend: str | None, endpoint: str | None,
         model: str | None, temperature: float | None, fixture: str | None,
         examples: str | None) -> None:
    """Apply one instruction to a layout file."""
    try:
        graph = _read_layout(layout_path)
        service = LayoutService(
            _build_backend(config, backend, endpoint, model, temperature, fixture),
            _load_store(config, examples))
        session_id = service.create_session(graph, width, height)
        result = service.apply_instruction(session_id,
                                           parse_instruction_text(instruction))
    except ClickLayoutError as exc:
        raise click.ClickException(str(exc))
    text = serialize_scene_graph(result.after)
    if out_path is None:
        click.echo(text)
    else:
        Path(out_path).write_text(text + "\n", encoding="utf-8")
        click.echo(result.chain_of_thought)
        click.echo(f"wrote {out_path}")


@main.command()
@click.option("--layout", "layout_path", type=click.Path(exists=True), required=True,
              help="Layout file to render.")
@click.option("--out", "out_path", type=click.Path(), required=True,
              help="Output SVG path.")
@click.option("--width", type=int, default=1000, show_default=True)
@click.option("--height", type=int, default=1000, show_default=True)
@click.option("--labels/--no-labels", default=True, show_default=True,
              help="Draw object names on the preview.")
def render(layout_path: str, out_path: str, width: int, height: int,
           labels: bool) -> None:
    """Render a layout file to an SVG preview."""
    try:
        graph = _read_layout(layout_path)
    except ClickLayoutError as exc:
        raise click.ClickException(str(exc))
    svg = render_layout_preview(graph, RenderConfig(
        canvas_width=width, canvas_height=height, show_labels=labels))
    Path(out_path).write_text(svg, encoding="utf-8")
    click.echo(f"wrote {out_path}")


@main.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--journal-dir", type=click.Path(), default=None,
              help="Directory for per-session JSON-lines journals.")
@click.option("--gen-endpoint", default=None,
              help=f"Layout-to-image endpoint (or set {GEN_ENDPOINT_ENV}).")
@_with_backend_options
@click.pass_obj
def serve(config: dict, port: int, host: str, journal_dir: str | None,
          gen_endpoint: str | None, backend: str | None, endpoint: str | None,
          model: str | None, temperature: float | None, fixture: str | None,
          examples: str | None) -> None:
    """Run the layout-editing HTTP service."""
    import uvicorn

    from .http_api import create_app

    try:
        service = LayoutService(
            _build_backend(config, backend, endpoint, model, temperature, fixture),
            _load_store(config, examples),
            journal_dir=journal_dir,
            generation_endpoint=_setting(gen_endpoint, GEN_ENDPOINT_ENV, config,
                                         "generation_endpoint", None))
    except ClickLayoutError as exc:
        raise click.ClickException(str(exc))
    uvicorn.run(create_app(service), host=host, port=port)


@main.group()
def examples() -> None:
    """Inspect few-shot example stores."""


@examples.command()
@click.argument("store_path", type=click.Path(exists=True))
def validate(store_path: str) -> None:
    """Check that a store file parses and every example is well-formed."""
    try:
        store = load_example_store(store_path)
    except ClickLayoutError as exc:
        raise click.ClickException(str(exc))
    kinds = sorted({example.kind for example in store.examples})
    click.echo(f"ok: {len(store.examples)} examples ({', '.join(kinds)})")


if __name__ == "__main__":
    main()
