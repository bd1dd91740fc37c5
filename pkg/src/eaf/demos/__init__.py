"""Bundled demo workspaces (regenerate with scripts/make_demos.py)."""

from __future__ import annotations

from importlib import resources

_SUFFIX = ".bws.json"


def list_demos() -> list[str]:
    names = []
    for entry in resources.files(__name__).iterdir():
        if entry.name.endswith(_SUFFIX):
            names.append(entry.name[: -len(_SUFFIX)])
    return sorted(names)


def demo_text(name: str) -> str:
    resource = resources.files(__name__) / f"{name}{_SUFFIX}"
    if not resource.is_file():
        raise KeyError(name)
    return resource.read_text(encoding="utf-8")
