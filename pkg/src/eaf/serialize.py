"""Canonical workspace files, keystroke scripts, and transcripts.

The on-disk workspace format is nested JSON: each stack carries its tree
of blocks inline.  Saving always emits one canonical form — fixed key
order, inputs sorted by name, two-space indent, LF line endings, one
trailing newline — so "the serialization did not change" can be asserted
byte-for-byte.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass

from .blocks import Block, BlockSet, Comment, Stack, Workspace, validate
from .errors import ParseError, SchemaViolation, ScriptParseError
from .labeling import is_valid_label

FILE_VERSION = 1


def canonical_number(value: float) -> int | float:
    if isinstance(value, (int, float)) and float(value).is_integer():
        return int(value)
    return value


def block_to_obj(ws: Workspace, block_id: str) -> dict:
    """Nested canonical form of one block, chain continuation included."""
    block = ws.block(block_id)
    definition = ws.block_set[block.def_id]
    fields = {
        name: canonical_number(block.field_values[name])
        if isinstance(block.field_values[name], (int, float))
        else block.field_values[name]
        for name in sorted(block.field_values)
    }
    inputs: dict[str, dict] = {}
    occupied: dict[str, str] = {}
    for name, _ in definition.value_inputs:
        occupant = block.value_slots.get(name)
        if occupant is not None:
            occupied[name] = occupant
    for name in definition.statement_inputs:
        occupant = block.statement_slots.get(name)
        if occupant is not None:
            occupied[name] = occupant
    for name in sorted(occupied):
        inputs[name] = {"block": block_to_obj(ws, occupied[name])}
    return {
        "id": block.id,
        "type": block.def_id,
        "fields": fields,
        "inputs": inputs,
        "next": block_to_obj(ws, block.next) if block.next is not None else None,
        "comment": (
            {"text": block.comment.text, "visible": block.comment.visible}
            if block.comment is not None
            else None
        ),
    }


def workspace_to_obj(ws: Workspace) -> dict:
    return {
        "version": FILE_VERSION,
        "stacks": [
            {
                "label": stack.label,
                "custom_name": stack.custom_name,
                "x": canonical_number(stack.x),
                "y": canonical_number(stack.y),
                "block": block_to_obj(ws, stack.top),
            }
            for stack in ws.stacks
        ],
    }


def canonical_json_text(obj: object) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def workspace_text(ws: Workspace) -> str:
    return canonical_json_text(workspace_to_obj(ws))


def state_hash(ws: Workspace) -> str:
    return hashlib.sha256(workspace_text(ws).encode("utf-8")).hexdigest()


# -- parsing ------------------------------------------------------------------


def _expect(cond: bool, path: str, reason: str) -> None:
    if not cond:
        raise SchemaViolation(path, reason)


def parse_workspace(text: str, block_set: BlockSet) -> Workspace:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None

    _expect(isinstance(obj, dict), "$", "top level must be an object")
    _expect(obj.get("version") == FILE_VERSION, "version", f"expected {FILE_VERSION}")
    stacks = obj.get("stacks")
    _expect(isinstance(stacks, list), "stacks", "must be a list")

    ws = Workspace(block_set)
    seen_labels: set[str] = set()
    for i, entry in enumerate(stacks):
        path = f"stacks[{i}]"
        _expect(isinstance(entry, dict), path, "must be an object")
        label = entry.get("label")
        _expect(isinstance(label, str) and is_valid_label(label), f"{path}.label", "bad label")
        _expect(label not in seen_labels, f"{path}.label", f"duplicate stack label {label}")
        seen_labels.add(label)
        custom = entry.get("custom_name")
        _expect(
            custom is None or (isinstance(custom, str) and custom.strip()),
            f"{path}.custom_name",
            "must be null or non-empty text",
        )
        x, y = entry.get("x"), entry.get("y")
        _expect(isinstance(x, (int, float)) and not isinstance(x, bool), f"{path}.x", "must be a number")
        _expect(isinstance(y, (int, float)) and not isinstance(y, bool), f"{path}.y", "must be a number")
        top = _parse_block(ws, entry.get("block"), f"{path}.block")
        ws._insert_stack(
            Stack(label=label, top=top, x=float(x), y=float(y), custom_name=custom)
        )

    problems = validate(ws)
    if problems:
        first = problems[0]
        raise SchemaViolation(first.subject, f"{first.code}: {first.detail}")
    ws._id_counter = _max_numeric_id(ws)
    return ws


def _parse_block(ws: Workspace, obj: object, path: str) -> str:
    _expect(isinstance(obj, dict), path, "must be a block object")
    assert isinstance(obj, dict)
    block_id = obj.get("id")
    _expect(isinstance(block_id, str) and bool(block_id), f"{path}.id", "must be a non-empty string")
    _expect(block_id not in ws.blocks, f"{path}.id", f"duplicate block id {block_id}")
    def_id = obj.get("type")
    _expect(isinstance(def_id, str), f"{path}.type", "must be a string")
    _expect(def_id in ws.block_set, f"{path}.type", f"unknown block type {def_id!r}")
    definition = ws.block_set[def_id]

    fields = obj.get("fields")
    _expect(isinstance(fields, dict), f"{path}.fields", "must be an object")
    field_values: dict[str, float | str] = {}
    for spec in definition.fields:
        _expect(spec.name in fields, f"{path}.fields.{spec.name}", "missing field")
        value = fields[spec.name]
        _expect(
            isinstance(value, (int, float, str)) and not isinstance(value, bool),
            f"{path}.fields.{spec.name}",
            "must be a number or string",
        )
        field_values[spec.name] = value
    for name in fields:
        _expect(
            any(spec.name == name for spec in definition.fields),
            f"{path}.fields.{name}",
            f"{def_id} has no field {name}",
        )

    block = Block(
        id=block_id,
        def_id=def_id,
        field_values=field_values,
        value_slots={name: None for name, _ in definition.value_inputs},
        statement_slots={name: None for name in definition.statement_inputs},
    )
    ws.blocks[block_id] = block

    inputs = obj.get("inputs")
    _expect(isinstance(inputs, dict), f"{path}.inputs", "must be an object")
    assert isinstance(inputs, dict)
    for name, wrapper in inputs.items():
        input_path = f"{path}.inputs.{name}"
        _expect(
            isinstance(wrapper, dict) and set(wrapper) == {"block"},
            input_path,
            'must be {"block": {...}}',
        )
        child = _parse_block(ws, wrapper["block"], f"{input_path}.block")
        if name in block.value_slots:
            block.value_slots[name] = child
        elif name in block.statement_slots:
            block.statement_slots[name] = child
        else:
            raise SchemaViolation(input_path, f"{def_id} has no input {name}")

    next_obj = obj.get("next")
    if next_obj is not None:
        block.next = _parse_block(ws, next_obj, f"{path}.next")

    comment = obj.get("comment")
    if comment is not None:
        _expect(
            isinstance(comment, dict)
            and isinstance(comment.get("text"), str)
            and isinstance(comment.get("visible"), bool),
            f"{path}.comment",
            'must be null or {"text": ..., "visible": ...}',
        )
        block.comment = Comment(text=comment["text"], visible=comment["visible"])
    return block_id


def _max_numeric_id(ws: Workspace) -> int:
    highest = 0
    for block_id in ws.blocks:
        match = re.fullmatch(r"b(\d+)", block_id)
        if match:
            highest = max(highest, int(match.group(1)))
    return highest


def instantiate(
    ws: Workspace,
    obj: dict,
    fresh_ids: bool,
    position: tuple[float, float] = (0.0, 0.0),
) -> str:
    """Materialize a serialized subtree as a new detached stack.

    With ``fresh_ids`` the snapshot's ids are re-generated; otherwise they
    are kept (falling back to fresh ones on collision).
    """
    from .labeling import lowest_unused_label

    def build(node: dict) -> str:
        definition = ws.block_set[node["type"]]
        wanted = node["id"]
        block_id = ws.fresh_id() if fresh_ids or wanted in ws.blocks else wanted
        block = Block(
            id=block_id,
            def_id=node["type"],
            field_values=dict(node["fields"]),
            value_slots={name: None for name, _ in definition.value_inputs},
            statement_slots={name: None for name in definition.statement_inputs},
        )
        ws.blocks[block_id] = block
        for name, wrapper in node["inputs"].items():
            child = build(wrapper["block"])
            if name in block.value_slots:
                block.value_slots[name] = child
            else:
                block.statement_slots[name] = child
        if node["next"] is not None:
            block.next = build(node["next"])
        if node["comment"] is not None:
            block.comment = Comment(
                text=node["comment"]["text"], visible=node["comment"]["visible"]
            )
        return block_id

    root = build(obj)
    label = lowest_unused_label(ws.labels())
    ws._insert_stack(Stack(label=label, top=root, x=position[0], y=position[1]))
    return root


# -- keystroke scripts --------------------------------------------------------


@dataclass(frozen=True)
class ScriptStep:
    line: int
    chord_text: str
    arg: str | None = None


def parse_script(text: str) -> list[ScriptStep]:
    """One chord per line, optionally followed by a double-quoted argument
    with backslash escapes.  '#' starts a comment outside quotes."""
    steps: list[ScriptStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 1)
        chord_text = parts[0]
        arg: str | None = None
        if len(parts) == 2:
            rest = parts[1].strip()
            if rest.startswith('"'):
                arg, remainder = _parse_quoted(rest, lineno)
                remainder = remainder.strip()
                if remainder and not remainder.startswith("#"):
                    raise ScriptParseError(lineno, f"unexpected text after argument: {remainder!r}")
            elif rest.startswith("#"):
                pass
            else:
                raise ScriptParseError(lineno, f"argument must be double-quoted: {rest!r}")
        elif "#" in chord_text:
            chord_text = chord_text.split("#", 1)[0]
            if not chord_text:
                continue
        steps.append(ScriptStep(lineno, chord_text, arg))
    return steps


_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


def _parse_quoted(text: str, lineno: int) -> tuple[str, str]:
    out: list[str] = []
    i = 1
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            if i + 1 >= len(text) or text[i + 1] not in _ESCAPES:
                raise ScriptParseError(lineno, f"bad escape at column {i + 1}")
            out.append(_ESCAPES[text[i + 1]])
            i += 2
            continue
        if ch == '"':
            return "".join(out), text[i + 1:]
        out.append(ch)
        i += 1
    raise ScriptParseError(lineno, "unterminated quoted argument")


# -- transcripts --------------------------------------------------------------


@dataclass(frozen=True)
class TranscriptEntry:
    chord: str
    command: str
    announcements: tuple
    state_hash: str


@dataclass(frozen=True)
class Transcript:
    initial_hash: str
    entries: tuple[TranscriptEntry, ...]
    final_workspace: str

    def to_obj(self) -> dict:
        return {
            "version": 1,
            "initial_hash": self.initial_hash,
            "entries": [
                {
                    "chord": entry.chord,
                    "command": entry.command,
                    "announcements": [
                        {
                            "text": a.text,
                            "politeness": a.politeness.value,
                            "category": a.category.value,
                        }
                        for a in entry.announcements
                    ],
                    "state_hash": entry.state_hash,
                }
                for entry in self.entries
            ],
            "final_workspace": self.final_workspace,
        }

    def text(self) -> str:
        return canonical_json_text(self.to_obj())
