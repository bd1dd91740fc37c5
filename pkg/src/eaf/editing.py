"""Mode-gated editing: clipboard, delete/disconnect, comments, the
type-filtered toolbox, and field editing.

The mode machine is the guard rail: structural mutations at a connection
only happen in edit mode, so stray keys in navigation mode can announce
an error instead of rearranging the program.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING

from . import announce
from .announce import (
    CommentAdded,
    CommentHidden,
    CommentShown,
    CopyDone,
    CutDone,
    DeleteDone,
    DisconnectDone,
    EngineEvent,
    FieldCommitted,
    FieldEditCancelled,
    FieldInputEcho,
    InsertDone,
    ModeChanged,
    PasteDone,
    StackCreated,
    StackRenamed,
    StackRetired,
    SystemNote,
    ToolboxClosed,
    ToolboxOpened,
)
from .blocks import (
    BlockKind,
    ConnectionRef,
    Next,
    StatementSlot,
    ValueSlot,
    Workspace,
    children,
    compatible,
    connect,
    detach,
    new_block,
    remove_subtree,
)
from .errors import (
    AlreadyDetached,
    BadFieldValue,
    EmptyClipboard,
    IncompatibleConnection,
    InvalidName,
    NoSelection,
    NotInEditMode,
    ToolboxEmptyForContext,
    UnknownDefinition,
)
from .labeling import renumber, set_custom_name
from .navigation import BlockFocus, ElementFocus, StackHead, ToolboxEntry, WorkspacePoint
from .serialize import block_to_obj, instantiate

if TYPE_CHECKING:
    from .session import Session

NEW_STACK_OFFSET = (40.0, 40.0)


class Mode(str, Enum):
    NAVIGATION = "navigation"
    EDIT = "edit"


@dataclass
class Clipboard:
    content: dict | None = None
    origin: str = "copy"  # "cut" keeps ids for the first paste back
    pastes: int = 0


@dataclass
class Toolbox:
    categories: list[tuple[str, list[str]]]
    open: bool = False
    filtered: list[str] | None = None
    saved_cursor: object | None = None

    def visible(self) -> list[tuple[str, list[str]]]:
        if self.filtered is None:
            return [(name, list(entries)) for name, entries in self.categories]
        allowed = set(self.filtered)
        view = []
        for name, entries in self.categories:
            kept = [e for e in entries if e in allowed]
            if kept:
                view.append((name, kept))
        return view


@dataclass
class FieldEdit:
    block: str
    field_name: str
    buffer: str


# -- helpers ------------------------------------------------------------------


def _require_block(session: "Session", action: str) -> str:
    loc = session.cursor
    if isinstance(loc, BlockFocus):
        return loc.block
    raise NoSelection(f"select a block to {action}")


def _require_edit_mode(session: "Session", action: str) -> None:
    if session.mode is not Mode.EDIT:
        raise NotInEditMode(f"press E for edit mode to {action}")


def cursor_connection(session: "Session", cursor: object | None = None) -> ConnectionRef | None:
    """The connection the cursor is resting on, if any."""
    loc = session.cursor if cursor is None else cursor
    if isinstance(loc, ElementFocus):
        element = children(session.workspace, loc.block)[loc.index]
        if element.kind == "value_input":
            return ValueSlot(loc.block, element.name)
        if element.kind == "statement_input":
            return StatementSlot(loc.block, element.name)
        return None
    if isinstance(loc, BlockFocus):
        return Next(loc.block)
    return None


def _block_position(ws: Workspace, block_id: str) -> str:
    numbering = renumber(ws)
    pos = numbering[block_id]
    return f"block {pos.number} of {pos.total} in stack {pos.stack_label}"


def _connection_phrase(ws: Workspace, conn: ConnectionRef) -> str:
    if isinstance(conn, ValueSlot):
        return f"at {conn.input.lower()} input of {announce.block_text(ws, conn.block)}"
    if isinstance(conn, StatementSlot):
        return f"at {conn.input.lower()} slot of {announce.block_text(ws, conn.block)}"
    if isinstance(conn, Next):
        return f"after {announce.block_text(ws, conn.block)}"
    return f"before {announce.block_text(ws, conn.block)}"


def _removal_landing(session: "Session", block_id: str, takes_whole_stack: bool):
    """Cursor target after a block is removed: predecessor, else successor,
    else the stack head, else the workspace point."""
    ws = session.workspace
    stack = ws.stack_of_block(block_id)
    if takes_whole_stack:
        return WorkspacePoint(stack.x, stack.y)
    conn = ws.parent_connection(block_id)
    if isinstance(conn, Next):
        return BlockFocus(conn.block)
    successor = ws.block(block_id).next
    if successor is not None:
        return BlockFocus(successor)
    return StackHead(stack.label)


def _delete_subtree_in_place(ws: Workspace, block_id: str) -> None:
    for bid in ws.subtree_ids(block_id):
        del ws.blocks[bid]


# -- mode ---------------------------------------------------------------------


def toggle_mode(session: "Session") -> list[EngineEvent]:
    if session.mode is Mode.EDIT:
        session.mode = Mode.NAVIGATION
        return [ModeChanged("Navigation")]
    loc = session.cursor
    if not isinstance(loc, (BlockFocus, ElementFocus)):
        raise NoSelection("select a block or connection first")
    session.mode = Mode.EDIT
    context = announce.short_location_text(session.workspace, loc)
    return [ModeChanged("Edit", context)]


# -- clipboard ----------------------------------------------------------------


def cut(session: "Session") -> list[EngineEvent]:
    ws = session.workspace
    block_id = _require_block(session, "cut")
    desc = announce.block_text(ws, block_id)
    events: list[EngineEvent] = []
    landing = _removal_landing(session, block_id, ws.is_stack_top(block_id))

    if ws.is_stack_top(block_id):
        # Cutting a stack top takes the whole stack, chain included.
        retired = ws.stack_of_block(block_id).label
        snapshot = block_to_obj(ws, block_id)
        remove_subtree(ws, block_id)
        events.append(StackRetired(retired))
    else:
        detach(ws, block_id, heal=True)
        snapshot = block_to_obj(ws, block_id)
        remove_subtree(ws, block_id)

    session.clipboard = Clipboard(content=snapshot, origin="cut")
    session.cursor = landing
    return [CutDone(desc)] + events


def copy(session: "Session") -> list[EngineEvent]:
    ws = session.workspace
    block_id = _require_block(session, "copy")
    snapshot = block_to_obj(ws, block_id)
    if not ws.is_stack_top(block_id):
        snapshot = {**snapshot, "next": None}
    session.clipboard = Clipboard(content=snapshot, origin="copy")
    return [CopyDone(announce.block_text(ws, block_id))]


def paste(session: "Session") -> list[EngineEvent]:
    ws = session.workspace
    _require_edit_mode(session, "paste")
    clipboard = session.clipboard
    if clipboard.content is None:
        raise EmptyClipboard("clipboard is empty")

    loc = session.cursor
    conn: ConnectionRef | None = None
    position = (0.0, 0.0)
    if isinstance(loc, WorkspacePoint):
        position = (loc.x, loc.y)
    elif isinstance(loc, (BlockFocus, ElementFocus)):
        conn = cursor_connection(session)
        if conn is None:
            raise IncompatibleConnection("a field takes typed values, not blocks")
    else:
        raise IncompatibleConnection("no connection here to paste at")

    fresh = clipboard.origin == "copy" or clipboard.pastes > 0
    root = instantiate(ws, clipboard.content, fresh_ids=fresh, position=position)
    if conn is not None:
        try:
            connect(ws, conn, root)
        except Exception:
            remove_subtree(ws, root)
            raise
        place = _connection_phrase(ws, conn)
    else:
        place = f"as stack {ws.stack_of_block(root).label}"
    clipboard.pastes += 1
    session.cursor = BlockFocus(root)
    return [PasteDone(announce.block_text(ws, root), place, _block_position(ws, root))]


def delete(session: "Session") -> list[EngineEvent]:
    ws = session.workspace
    block_id = _require_block(session, "delete")
    block = ws.block(block_id)
    desc = announce.block_text(ws, block_id)
    events: list[EngineEvent] = []
    is_top = ws.is_stack_top(block_id)
    takes_stack = is_top and block.next is None
    landing = _removal_landing(session, block_id, takes_stack)

    if takes_stack:
        retired = ws.stack_of_block(block_id).label
        remove_subtree(ws, block_id)
        events.append(StackRetired(retired))
    elif is_top:
        stack = ws.stack_of_block(block_id)
        stack.top = block.next
        block.next = None
        _delete_subtree_in_place(ws, block_id)
    else:
        detach(ws, block_id, heal=True)
        remove_subtree(ws, block_id)

    session.cursor = landing
    after = announce.short_location_text(ws, landing)
    return [DeleteDone(desc, after)] + events


def disconnect(session: "Session") -> list[EngineEvent]:
    ws = session.workspace
    _require_edit_mode(session, "disconnect")
    loc = session.cursor
    if isinstance(loc, BlockFocus):
        target = loc.block
        if ws.parent_connection(target) is None:
            raise AlreadyDetached("already a stack top")
    elif isinstance(loc, ElementFocus):
        element = children(ws, loc.block)[loc.index]
        if element.kind == "field":
            raise NoSelection("a field is not a connection")
        if element.attached is None:
            raise AlreadyDetached("nothing attached at this connection")
        target = element.attached
    else:
        raise NoSelection("select a block or connection to disconnect")

    desc = announce.block_text(ws, target)
    detach(ws, target, heal=False)
    new_label = ws.stack_of_block(target).label
    session.cursor = BlockFocus(target)
    return [DisconnectDone(desc), StackCreated(new_label)]


def toggle_comment(session: "Session", text: str | None = None) -> list[EngineEvent]:
    ws = session.workspace
    _require_edit_mode(session, "comment")
    block_id = _require_block(session, "comment")
    block = ws.block(block_id)
    if block.comment is None:
        from .blocks import Comment

        block.comment = Comment(text=text or "", visible=True)
        return [CommentAdded(block.comment.text)]
    if block.comment.visible:
        block.comment.visible = False
        return [CommentHidden()]
    block.comment.visible = True
    return [CommentShown(block.comment.text)]


# -- toolbox ------------------------------------------------------------------


def compatible_entries(session: "Session") -> list[str]:
    """Definitions that fit the current edit context, in category order.

    Without an edit-mode connection context everything is offered.  The
    static rules here must agree with what connect() would accept; the
    test suite holds them to that with a connect-on-a-copy oracle.
    """
    ws = session.workspace
    all_ids = [d for _, entries in session.toolbox.categories for d in entries]
    conn = cursor_connection(session) if session.mode is Mode.EDIT else None
    if conn is None:
        return all_ids
    return [d for d in all_ids if _fits(ws, conn, d)]


def _fits(ws: Workspace, conn: ConnectionRef, def_id: str) -> bool:
    definition = ws.block_set[def_id]
    if isinstance(conn, ValueSlot):
        if definition.kind is not BlockKind.VALUE:
            return False
        target = ws.block(conn.block)
        if target.value_slots.get(conn.input) is not None:
            return False
        accepted = ws.block_set[target.def_id].value_input_type(conn.input)
        assert definition.value_output is not None
        return compatible(definition.value_output, accepted)
    if isinstance(conn, StatementSlot):
        return definition.kind is BlockKind.STATEMENT
    if isinstance(conn, Next):
        if definition.kind is not BlockKind.STATEMENT:
            return False
        return ws.block_set[ws.block(conn.block).def_id].has_next
    return False


def open_toolbox(session: "Session") -> list[EngineEvent]:
    toolbox = session.toolbox
    if toolbox.open:
        return [SystemNote("Toolbox already open")]
    entries = compatible_entries(session)
    filtered = session.mode is Mode.EDIT and cursor_connection(session) is not None
    if not entries:
        raise ToolboxEmptyForContext("no blocks fit this connection")
    toolbox.filtered = entries if filtered else None
    toolbox.open = True
    toolbox.saved_cursor = session.cursor
    session.cursor = ToolboxEntry(0, 0)
    view = toolbox.visible()
    first = f"{view[0][0]} category, {view[0][1][0]}"
    return [ToolboxOpened(len(entries), filtered, first)]


def close_toolbox(session: "Session") -> list[EngineEvent]:
    toolbox = session.toolbox
    if not toolbox.open:
        return [SystemNote("Workspace focused")]
    restored = toolbox.saved_cursor
    toolbox.open = False
    toolbox.filtered = None
    toolbox.saved_cursor = None
    if restored is not None:
        session.cursor = restored
        where = announce.short_location_text(session.workspace, restored)
    else:  # pragma: no cover - saved cursor always set on open
        where = ""
    return [ToolboxClosed(where)]


def insert(session: "Session", def_id: str | None = None) -> list[EngineEvent]:
    ws = session.workspace
    toolbox = session.toolbox
    if not toolbox.open:
        return [SystemNote("Open the toolbox first (T)")]
    view = toolbox.visible()
    if def_id is None:
        loc = session.cursor
        assert isinstance(loc, ToolboxEntry)
        def_id = view[loc.category][1][loc.entry]
    elif not any(def_id in entries for _, entries in view):
        raise UnknownDefinition(f"{def_id} is not available here")

    conn = cursor_connection(session, toolbox.saved_cursor)
    if conn is not None:
        _require_edit_mode(session, "insert at a connection")
        root = new_block(ws, def_id)
        try:
            connect(ws, conn, root)
        except Exception:
            remove_subtree(ws, root)
            raise
        place = _connection_phrase(ws, conn)
    else:
        root = new_block(ws, def_id)
        stack = ws.stack_of_block(root)
        stack.x, stack.y = _insertion_point(session)
        place = f"as stack {stack.label}"

    toolbox.open = False
    toolbox.filtered = None
    toolbox.saved_cursor = None
    session.cursor = BlockFocus(root)
    return [InsertDone(announce.block_text(ws, root), place, _block_position(ws, root))]


def _insertion_point(session: "Session") -> tuple[float, float]:
    saved = session.toolbox.saved_cursor
    ws = session.workspace
    if isinstance(saved, WorkspacePoint):
        return (saved.x, saved.y)
    if isinstance(saved, StackHead):
        stack = ws.stack(saved.label)
        return (stack.x + NEW_STACK_OFFSET[0], stack.y + NEW_STACK_OFFSET[1])
    if isinstance(saved, (BlockFocus, ElementFocus)):
        stack = ws.stack_of_block(saved.block)
        return (stack.x + NEW_STACK_OFFSET[0], stack.y + NEW_STACK_OFFSET[1])
    return (0.0, 0.0)


# -- stack naming -------------------------------------------------------------


def customize_stack_label(session: "Session", name: str | None) -> list[EngineEvent]:
    ws = session.workspace
    loc = session.cursor
    if isinstance(loc, StackHead):
        label = loc.label
    elif isinstance(loc, (BlockFocus, ElementFocus)):
        label = ws.stack_of_block(loc.block).label
    else:
        raise NoSelection("move to a stack first")
    if name is None:
        raise InvalidName("a name is required, e.g. Shift+I \"main loop\"")
    stored = set_custom_name(ws, label, name)
    return [StackRenamed(label, stored)]


# -- field editing ------------------------------------------------------------


def field_input(session: "Session", char: str) -> list[EngineEvent]:
    edit = session.field_edit
    assert edit is not None
    edit.buffer += char
    return [FieldInputEcho(char, edit.buffer)]


def field_backspace(session: "Session") -> list[EngineEvent]:
    edit = session.field_edit
    assert edit is not None
    if edit.buffer:
        edit.buffer = edit.buffer[:-1]
    return [FieldInputEcho("deleted", edit.buffer)]


def field_commit(session: "Session") -> list[EngineEvent]:
    ws = session.workspace
    edit = session.field_edit
    assert edit is not None
    spec = ws.definition_of(edit.block).field_spec(edit.field_name)
    value = _coerce_field(spec, edit.buffer)
    ws.block(edit.block).field_values[edit.field_name] = value
    session.field_edit = None
    return [FieldCommitted(edit.field_name, announce.render_scalar(value))]


def field_cancel(session: "Session") -> list[EngineEvent]:
    edit = session.field_edit
    assert edit is not None
    session.field_edit = None
    return [FieldEditCancelled(edit.field_name)]


def _coerce_field(spec, buffer: str) -> float | str:
    from .blocks import FieldKind

    if spec.kind is FieldKind.NUMBER:
        try:
            return float(buffer)
        except ValueError:
            raise BadFieldValue(spec.name, f"{buffer!r} is not a number") from None
    if spec.kind is FieldKind.CHOICE:
        lowered = buffer.strip().lower()
        matches = [o for o in spec.options if o.lower() == lowered]
        if not matches:
            matches = [o for o in spec.options if o.lower().startswith(lowered)] if lowered else []
        if len(matches) != 1:
            raise BadFieldValue(
                spec.name, f"choose one of {', '.join(spec.options)}"
            )
        return matches[0]
    return buffer
