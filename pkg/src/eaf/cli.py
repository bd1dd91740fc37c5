"""Command-line client.

All four file commands go through the HTTP service surface — against an
in-process app by default, or a remote server with --server.  Exit codes:
0 ok, 1 validation/parse failure, 2 internal invariant breach.
"""

from __future__ import annotations

import os
import pathlib
import sys

import click

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INTERNAL = 2


class ServiceClient:
    """Minimal JSON-over-HTTP client; in-process unless --server is given."""

    def __init__(self, server: str | None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server.rstrip("/"), timeout=60.0)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict):
        response = self._client.post(path, json=payload)
        return response.status_code, response

    def get(self, path: str):
        response = self._client.get(path)
        return response.status_code, response


def _styled(message: str, **kwargs) -> None:
    if os.environ.get("EAF_NO_COLOR") or not sys.stderr.isatty():
        kwargs.pop("fg", None)
    click.secho(message, err=True, **kwargs)


def _fail_for(status: int, response) -> None:
    """Translate an error response into the documented exit codes."""
    try:
        detail = response.json().get("detail", {})
    except Exception:
        detail = {}
    code = detail.get("code", "error") if isinstance(detail, dict) else "error"
    message = detail.get("message", response.text) if isinstance(detail, dict) else str(detail)
    _styled(f"error [{code}]: {message}", fg="red")
    if status >= 500 or code == "invariant_breach":
        sys.exit(EXIT_INTERNAL)
    sys.exit(EXIT_INVALID)


def _read(path: str) -> str:
    try:
        return pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        _styled(f"error: cannot read {path}: {exc}", fg="red")
        sys.exit(EXIT_INVALID)


@click.group()
@click.option("--server", default=None, help="Remote service URL (default: in-process).")
@click.pass_context
def main(ctx: click.Context, server: str | None) -> None:
    """Keyboard-driven block editing engine."""
    ctx.obj = server


@main.command()
@click.option("--workspace", required=True, help="Workspace file (.bws.json).")
@click.option("--script", "script_path", required=True, help="Keystroke script (.keys).")
@click.option("--keymap", default=None, help="Keymap override file.")
@click.option(
    "--verbosity",
    type=click.Choice(["terse", "standard", "verbose"]),
    default="standard",
)
@click.option("--out", default=None, help="Write the transcript here instead of stdout.")
@click.pass_obj
def replay(server, workspace, script_path, keymap, verbosity, out) -> None:
    """Replay a keystroke script and emit the transcript."""
    client = ServiceClient(server)
    payload = {
        "workspace": _read(workspace),
        "script": _read(script_path),
        "verbosity": verbosity,
    }
    if keymap:
        payload["keymap"] = _read(keymap)
    status, response = client.post("/replay", payload)
    if status != 200:
        _fail_for(status, response)
    if out:
        pathlib.Path(out).write_text(response.text, encoding="utf-8")
        _styled(f"transcript written to {out}")
    else:
        click.echo(response.text, nl=False)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--workspace", required=True, help="Workspace file (.bws.json).")
@click.pass_obj
def run(server, workspace) -> None:
    """Run the program and print its output lines."""
    client = ServiceClient(server)
    status, response = client.post("/run", {"workspace": _read(workspace)})
    if status != 200:
        _fail_for(status, response)
    body = response.json()
    for line in body["lines"]:
        click.echo(line)
    if body["status"] != "ok":
        _styled(f"status: {body['status']}: {body['message']}", fg="yellow")
    sys.exit(EXIT_OK)


@main.command()
@click.option("--workspace", required=True, help="Workspace file (.bws.json).")
@click.pass_obj
def validate(server, workspace) -> None:
    """Check a workspace file against the model invariants."""
    client = ServiceClient(server)
    status, response = client.post("/validate", {"workspace": _read(workspace)})
    if status != 200:
        _fail_for(status, response)
    violations = response.json()["violations"]
    if violations:
        for v in violations:
            click.echo(f"{v['code']}({v['subject']}): {v['detail']}")
        sys.exit(EXIT_INVALID)
    click.echo("valid")
    sys.exit(EXIT_OK)


@main.command()
@click.option("--workspace", required=True, help="Workspace file (.bws.json).")
@click.option("--check", is_flag=True, help="Only report; do not rewrite the file.")
@click.pass_obj
def fmt(server, workspace, check) -> None:
    """Canonicalize a workspace file in place."""
    client = ServiceClient(server)
    original = _read(workspace)
    status, response = client.post("/fmt", {"workspace": original})
    if status != 200:
        _fail_for(status, response)
    body = response.json()
    if not body["changed"]:
        click.echo("already canonical")
        sys.exit(EXIT_OK)
    if check:
        click.echo("would reformat")
        sys.exit(EXIT_INVALID)
    pathlib.Path(workspace).write_text(body["formatted"], encoding="utf-8")
    click.echo("formatted")
    sys.exit(EXIT_OK)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8722, show_default=True)
def serve(host: str, port: int) -> None:
    """Start the HTTP service (and the web UI, when built)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
