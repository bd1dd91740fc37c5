"""Screen-reader text generation.

Every engine event is rendered here into exactly one announcement with a
politeness level.  Templates are centralized so hosts can re-skin the
wording without touching command logic.  The three verbosity levels are
built by concatenation only (prefixes/suffixes around the shorter text),
which keeps terse ⊆ standard ⊆ verbose mechanically true.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Union

from .blocks import BlockKind, Workspace, children
from .labeling import renumber

if TYPE_CHECKING:
    from .shortcuts import Keymap


class Politeness(str, Enum):
    POLITE = "polite"
    ASSERTIVE = "assertive"


class Category(str, Enum):
    NAVIGATION = "navigation"
    MODE = "mode"
    EDIT = "edit"
    ERROR = "error"
    HELP = "help"
    SYSTEM = "system"


class Verbosity(str, Enum):
    TERSE = "terse"
    STANDARD = "standard"
    VERBOSE = "verbose"


@dataclass(frozen=True)
class Announcement:
    text: str
    politeness: Politeness
    category: Category

    def __post_init__(self):
        if not self.text:
            raise ValueError("announcements must carry text")


@dataclass(frozen=True)
class Leveled:
    """One message at the three verbosity levels.

    Construction goes through :func:`leveled`, which only wraps the
    shorter text, so each level stays a substring of the next.
    """

    terse: str
    standard: str
    verbose: str

    def at(self, verbosity: Verbosity) -> str:
        if verbosity is Verbosity.TERSE:
            return self.terse
        if verbosity is Verbosity.VERBOSE:
            return self.verbose
        return self.standard


def leveled(
    core: str,
    *,
    std_prefix: str = "",
    std_suffix: str = "",
    verb_prefix: str = "",
    verb_suffix: str = "",
) -> Leveled:
    standard = f"{std_prefix}{core}{std_suffix}"
    return Leveled(core, standard, f"{verb_prefix}{standard}{verb_suffix}")


def flat(text: str) -> Leveled:
    return Leveled(text, text, text)


# -- block and value descriptions ------------------------------------------

_MAX_OPERAND_DEPTH = 3


def render_scalar(value: float | str) -> str:
    """Numbers drop a trailing .0; text stays as-is."""
    if isinstance(value, bool):  # defensive: fields never hold bools
        return "true" if value else "false"
    if isinstance(value, (int, float)):
        if float(value).is_integer():
            return str(int(value))
        return repr(float(value))
    return value


def operand_text(ws: Workspace, block_id: str | None, depth: int = 0) -> str:
    """Short expression summary used inside statement descriptions."""
    if block_id is None:
        return "empty"
    if depth > _MAX_OPERAND_DEPTH:
        return "expression"
    block = ws.block(block_id)

    def slot(name: str) -> str:
        return operand_text(ws, block.value_slots.get(name), depth + 1)

    if block.def_id == "number":
        return render_scalar(block.field_values["VALUE"])
    if block.def_id == "text":
        return f"'{block.field_values['VALUE']}'"
    if block.def_id == "boolean":
        return str(block.field_values["VALUE"])
    if block.def_id == "var_get":
        return str(block.field_values["NAME"])
    if block.def_id in ("arithmetic", "compare", "logic"):
        return f"{slot('A')} {block.field_values['OP']} {slot('B')}"
    if block.def_id == "not":
        return f"not {slot('A')}"
    summary = block_text(ws, block_id, depth + 1)
    return summary


def block_text(ws: Workspace, block_id: str, depth: int = 0) -> str:
    """One-phrase description of a block, e.g. "repeat 10 times"."""
    block = ws.block(block_id)
    definition = ws.block_set[block.def_id]

    def slot(name: str) -> str:
        return operand_text(ws, block.value_slots.get(name), depth + 1)

    if block.def_id == "print":
        return f"print {slot('VALUE')}"
    if block.def_id == "set_var":
        return f"set {block.field_values['NAME']} to {slot('VALUE')}"
    if block.def_id == "repeat":
        return f"repeat {slot('TIMES')} times"
    if block.def_id == "if":
        return f"if {slot('COND')}"
    if definition.kind is BlockKind.VALUE:
        inner = operand_text(ws, block_id, depth)
        if block.def_id in ("number", "text", "boolean"):
            return f"{block.def_id} {inner}"
        return inner
    # Generic statement fallback: type name plus its first field value.
    if definition.fields:
        first = definition.fields[0].name
        return f"{block.def_id} {render_scalar(block.field_values[first])}"
    return block.def_id


def nested_count(ws: Workspace, block_id: str) -> int:
    """Blocks nested inside (value slots and bodies), excluding the
    block's own chain continuation."""
    block = ws.block(block_id)
    definition = ws.block_set[block.def_id]
    count = 0
    for name, _ in definition.value_inputs:
        occupant = block.value_slots.get(name)
        if occupant is not None:
            count += len(ws.subtree_ids(occupant))
    for name in definition.statement_inputs:
        head = block.statement_slots.get(name)
        if head is not None:
            count += len(ws.subtree_ids(head))
    return count


def stack_phrase(ws: Workspace, label: str) -> str:
    stack = ws.stack(label)
    if stack.custom_name:
        return f'Stack {label}, "{stack.custom_name}"'
    return f"Stack {label}"


def describe_block_leveled(ws: Workspace, block_id: str) -> Leveled:
    """Terse: the block phrase.  Standard: prefixed with stack letter and
    block number.  Verbose: suffixed with nesting and comment presence."""
    numbering = renumber(ws)
    position = numbering[block_id]
    extras: list[str] = []
    count = nested_count(ws, block_id)
    if count:
        extras.append(f"contains {count} block{'s' if count != 1 else ''}")
    block = ws.block(block_id)
    if block.comment is not None:
        extras.append("has comment")
    return leveled(
        block_text(ws, block_id),
        std_prefix=f"{stack_phrase(ws, position.stack_label)}, "
        f"block {position.number} of {position.total}, ",
        verb_suffix=(", " + ", ".join(extras)) if extras else "",
    )


def describe_block(ws: Workspace, block_id: str, verbosity: Verbosity) -> str:
    return describe_block_leveled(ws, block_id).at(verbosity)


def element_label(kind: str, name: str) -> str:
    if kind == "field":
        return f"{name.lower()} field"
    if kind == "value_input":
        return f"{name.lower()} input"
    return f"{name.lower()} slot"


def describe_element_leveled(ws: Workspace, block_id: str, index: int) -> Leveled:
    row = children(ws, block_id)
    element = row[index]
    block = ws.block(block_id)
    label = element_label(element.kind, element.name)
    if element.kind == "field":
        value = render_scalar(block.field_values[element.name])
        core = f"{label}: {value}"
    elif element.kind == "value_input":
        if element.attached is None:
            core = f"{label}, empty connection"
        else:
            core = f"{label}: {operand_text(ws, element.attached)}"
    else:
        if element.attached is None:
            core = f"{label}, empty connection"
        else:
            length = len(ws.subtree_ids(element.attached))
            core = f"{label}, {length} block{'s' if length != 1 else ''}"
    return leveled(
        core,
        std_suffix=f", of {block_text(ws, block_id)}",
        verb_suffix=f", element {index + 1} of {len(row)}",
    )


def short_location_text(ws: Workspace, location: object) -> str:
    """Compact landing description used by the navigational assistant."""
    from . import navigation as nav

    if isinstance(location, nav.WorkspacePoint):
        return "workspace"
    if isinstance(location, nav.StackHead):
        return f"stack {location.label}"
    if isinstance(location, nav.BlockFocus):
        return block_text(ws, location.block)
    if isinstance(location, nav.ElementFocus):
        row = children(ws, location.block)
        element = row[location.index]
        return f"{block_text(ws, location.block)}, {element_label(element.kind, element.name)}"
    return "toolbox"


# -- engine events -----------------------------------------------------------


@dataclass(frozen=True)
class Moved:
    target: Leveled


@dataclass(frozen=True)
class Boundary:
    message: str


@dataclass(frozen=True)
class JumpFailed:
    letter: str


@dataclass(frozen=True)
class Located:
    text: Leveled


@dataclass(frozen=True)
class ModeChanged:
    mode: str
    context: str = ""


@dataclass(frozen=True)
class FieldEditStarted:
    field_name: str
    value: str


@dataclass(frozen=True)
class FieldInputEcho:
    char: str
    buffer: str


@dataclass(frozen=True)
class FieldCommitted:
    field_name: str
    value: str


@dataclass(frozen=True)
class FieldEditCancelled:
    field_name: str


@dataclass(frozen=True)
class CutDone:
    target: str


@dataclass(frozen=True)
class CopyDone:
    target: str


@dataclass(frozen=True)
class PasteDone:
    target: str
    place: str
    position: str = ""


@dataclass(frozen=True)
class DeleteDone:
    target: str
    cursor_after: str


@dataclass(frozen=True)
class DisconnectDone:
    target: str


@dataclass(frozen=True)
class CommentAdded:
    text: str


@dataclass(frozen=True)
class CommentHidden:
    pass


@dataclass(frozen=True)
class CommentShown:
    text: str


@dataclass(frozen=True)
class InsertDone:
    target: str
    place: str
    position: str = ""


@dataclass(frozen=True)
class StackRenamed:
    label: str
    name: str


@dataclass(frozen=True)
class StackCreated:
    label: str


@dataclass(frozen=True)
class StackRetired:
    label: str


@dataclass(frozen=True)
class ToolboxOpened:
    entries: int
    filtered: bool
    first: str


@dataclass(frozen=True)
class ToolboxClosed:
    restored: str


@dataclass(frozen=True)
class Zoomed:
    percent: int
    note: str = ""  # "", "max", "min", "reset"


@dataclass(frozen=True)
class RunFinished:
    lines: int
    status: str


@dataclass(frozen=True)
class OutputSummary:
    lines: int
    status: str


@dataclass(frozen=True)
class OutputLine:
    text: str


@dataclass(frozen=True)
class AssistantToggled:
    on: bool


@dataclass(frozen=True)
class AssistantPreview:
    entries: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ShortcutsShown:
    listing: str


@dataclass(frozen=True)
class ShortcutsHidden:
    pass


@dataclass(frozen=True)
class AccessibilityToggled:
    on: bool


@dataclass(frozen=True)
class CommandFailed:
    code: str
    message: str


@dataclass(frozen=True)
class SystemNote:
    message: str


EngineEvent = Union[
    Moved, Boundary, JumpFailed, Located,
    ModeChanged, FieldEditStarted, FieldInputEcho, FieldCommitted, FieldEditCancelled,
    CutDone, CopyDone, PasteDone, DeleteDone, DisconnectDone,
    CommentAdded, CommentHidden, CommentShown, InsertDone, StackRenamed,
    StackCreated, StackRetired, ToolboxOpened, ToolboxClosed,
    Zoomed, RunFinished, OutputSummary, OutputLine,
    AssistantToggled, AssistantPreview, ShortcutsShown, ShortcutsHidden,
    AccessibilityToggled, CommandFailed, SystemNote,
]

# Politeness policy: errors and mode changes interrupt; cursor movement
# and informational output wait their turn.
_POLICY: dict[type, tuple[Category, Politeness]] = {
    Moved: (Category.NAVIGATION, Politeness.POLITE),
    Boundary: (Category.NAVIGATION, Politeness.POLITE),
    JumpFailed: (Category.NAVIGATION, Politeness.POLITE),
    Located: (Category.NAVIGATION, Politeness.POLITE),
    ModeChanged: (Category.MODE, Politeness.ASSERTIVE),
    FieldEditStarted: (Category.MODE, Politeness.ASSERTIVE),
    FieldEditCancelled: (Category.MODE, Politeness.ASSERTIVE),
    FieldInputEcho: (Category.SYSTEM, Politeness.POLITE),
    FieldCommitted: (Category.EDIT, Politeness.ASSERTIVE),
    CutDone: (Category.EDIT, Politeness.ASSERTIVE),
    CopyDone: (Category.EDIT, Politeness.ASSERTIVE),
    PasteDone: (Category.EDIT, Politeness.ASSERTIVE),
    DeleteDone: (Category.EDIT, Politeness.ASSERTIVE),
    DisconnectDone: (Category.EDIT, Politeness.ASSERTIVE),
    CommentAdded: (Category.EDIT, Politeness.ASSERTIVE),
    CommentHidden: (Category.EDIT, Politeness.ASSERTIVE),
    CommentShown: (Category.EDIT, Politeness.ASSERTIVE),
    InsertDone: (Category.EDIT, Politeness.ASSERTIVE),
    StackRenamed: (Category.EDIT, Politeness.ASSERTIVE),
    StackCreated: (Category.SYSTEM, Politeness.POLITE),
    StackRetired: (Category.SYSTEM, Politeness.POLITE),
    ToolboxOpened: (Category.SYSTEM, Politeness.POLITE),
    ToolboxClosed: (Category.SYSTEM, Politeness.POLITE),
    Zoomed: (Category.SYSTEM, Politeness.POLITE),
    RunFinished: (Category.SYSTEM, Politeness.POLITE),
    OutputSummary: (Category.SYSTEM, Politeness.POLITE),
    OutputLine: (Category.SYSTEM, Politeness.POLITE),
    AssistantToggled: (Category.HELP, Politeness.POLITE),
    AssistantPreview: (Category.HELP, Politeness.POLITE),
    ShortcutsShown: (Category.HELP, Politeness.POLITE),
    ShortcutsHidden: (Category.HELP, Politeness.POLITE),
    AccessibilityToggled: (Category.SYSTEM, Politeness.ASSERTIVE),
    CommandFailed: (Category.ERROR, Politeness.ASSERTIVE),
    SystemNote: (Category.SYSTEM, Politeness.POLITE),
}


def _text_for(event: EngineEvent) -> Leveled:
    if isinstance(event, Moved):
        return event.target
    if isinstance(event, Boundary):
        return flat(event.message)
    if isinstance(event, JumpFailed):
        return flat(f"No stack {event.letter}")
    if isinstance(event, Located):
        return event.text
    if isinstance(event, ModeChanged):
        return leveled(
            f"{event.mode} mode",
            std_suffix=f": {event.context}" if event.context else "",
        )
    if isinstance(event, FieldEditStarted):
        return leveled(
            f"Editing {event.field_name.lower()} field: {event.value}",
            verb_suffix=", type to change, Enter to commit, Escape to cancel",
        )
    if isinstance(event, FieldInputEcho):
        return leveled(event.char, verb_suffix=f", now {event.buffer}" if event.buffer else "")
    if isinstance(event, FieldCommitted):
        return flat(f"{event.field_name.lower()} set to {event.value}")
    if isinstance(event, FieldEditCancelled):
        return flat(f"{event.field_name.lower()} unchanged")
    if isinstance(event, CutDone):
        return flat(f"Cut {event.target}")
    if isinstance(event, CopyDone):
        return flat(f"Copied {event.target}")
    if isinstance(event, PasteDone):
        return leveled(
            f"Pasted {event.target} {event.place}",
            std_suffix=f", {event.position}" if event.position else "",
        )
    if isinstance(event, DeleteDone):
        return leveled(
            f"Deleted {event.target}",
            std_suffix=f"; now at {event.cursor_after}",
        )
    if isinstance(event, DisconnectDone):
        return flat(f"Disconnected {event.target}")
    if isinstance(event, CommentAdded):
        if event.text:
            return flat(f"Comment added: {event.text}")
        return flat("Empty comment added")
    if isinstance(event, CommentHidden):
        return flat("Comment hidden")
    if isinstance(event, CommentShown):
        if event.text:
            return flat(f"Comment shown: {event.text}")
        return flat("Comment shown")
    if isinstance(event, InsertDone):
        return leveled(
            f"Inserted {event.target} {event.place}",
            std_suffix=f", {event.position}" if event.position else "",
        )
    if isinstance(event, StackRenamed):
        return flat(f'Stack {event.label} named "{event.name}"')
    if isinstance(event, StackCreated):
        return flat(f"New stack {event.label}")
    if isinstance(event, StackRetired):
        return flat(f"Stack {event.label} retired")
    if isinstance(event, ToolboxOpened):
        core = f"Toolbox: {event.entries} block{'s' if event.entries != 1 else ''}"
        if event.filtered:
            core += " fit this connection"
        return leveled(core, std_suffix=f"; {event.first}" if event.first else "")
    if isinstance(event, ToolboxClosed):
        return leveled(
            "Toolbox closed",
            std_suffix=f"; back at {event.restored}" if event.restored else "",
        )
    if isinstance(event, Zoomed):
        if event.note == "max":
            return flat("maximum zoom")
        if event.note == "min":
            return flat("minimum zoom")
        if event.note == "reset":
            return flat(f"zoom reset {event.percent}%")
        return flat(f"zoom {event.percent}%")
    if isinstance(event, RunFinished):
        return leveled(
            f"Run finished: {event.lines} line{'s' if event.lines != 1 else ''}",
            std_suffix=f", {event.status}",
        )
    if isinstance(event, OutputSummary):
        return leveled(
            f"Output: {event.lines} line{'s' if event.lines != 1 else ''}",
            verb_suffix=f", {event.status}",
        )
    if isinstance(event, OutputLine):
        return flat(event.text)
    if isinstance(event, AssistantToggled):
        return flat("Assistant on" if event.on else "Assistant off")
    if isinstance(event, AssistantPreview):
        if not event.entries:
            return flat("No movement available")
        return flat(" ".join(f"{key}: {desc}." for key, desc in event.entries))
    if isinstance(event, ShortcutsShown):
        return flat(event.listing)
    if isinstance(event, ShortcutsHidden):
        return flat("Shortcuts list closed")
    if isinstance(event, AccessibilityToggled):
        return flat(
            "Keyboard accessibility on" if event.on else "Keyboard accessibility off"
        )
    if isinstance(event, CommandFailed):
        return flat(event.message)
    if isinstance(event, SystemNote):
        return flat(event.message)
    raise TypeError(f"unrenderable event {event!r}")  # pragma: no cover


def render(event: EngineEvent, verbosity: Verbosity) -> Announcement:
    """Total mapping from engine events to announcements."""
    category, politeness = _POLICY[type(event)]
    return Announcement(_text_for(event).at(verbosity), politeness, category)


def shortcuts_help(keymap: "Keymap") -> Announcement:
    """Multi-line listing of every active binding, grouped by scope."""
    from .shortcuts import help_listing

    listing = help_listing(keymap)
    if listing is None:
        return Announcement(
            "keyboard accessibility disabled", Politeness.POLITE, Category.HELP
        )
    return render(ShortcutsShown(listing), Verbosity.STANDARD)
