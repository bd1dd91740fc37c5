"""Cursor movement over the workspace's layers.

Movement has three axes: vertical (between statement blocks in a chain,
or between stacks), horizontal (between the elements of one block's row),
and nesting (into a block's children and back out).  Boundaries hold
position and describe themselves instead of wrapping, so every keypress
has a predictable outcome.  Nothing in this module mutates the workspace.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Union

from . import announce
from .announce import (
    Announcement,
    Boundary,
    FieldEditStarted,
    JumpFailed,
    Leveled,
    Located,
    Moved,
    Verbosity,
    flat,
    leveled,
    render,
    render_scalar,
)
from .blocks import Next, StatementSlot, ValueSlot, Workspace, children
from .errors import AccessibilityDisabled
from .labeling import renumber

if TYPE_CHECKING:
    from .session import Session

WORKSPACE_CURSOR_STEP = 20.0


@dataclass(frozen=True)
class WorkspacePoint:
    x: float
    y: float


@dataclass(frozen=True)
class StackHead:
    label: str


@dataclass(frozen=True)
class BlockFocus:
    block: str


@dataclass(frozen=True)
class ElementFocus:
    block: str
    index: int


@dataclass(frozen=True)
class ToolboxEntry:
    category: int
    entry: int


CursorLocation = Union[WorkspacePoint, StackHead, BlockFocus, ElementFocus, ToolboxEntry]


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"
    IN = "in"
    OUT = "out"


@dataclass(frozen=True)
class MoveResult:
    moved: bool
    new_location: CursorLocation
    announcement: Announcement


@dataclass(frozen=True)
class _Step:
    """Raw transition outcome before announcement rendering."""

    location: CursorLocation | None
    boundary: str = ""
    field_entry: bool = False


ToolboxView = list[tuple[str, list[str]]]


def _element_container(ws: Workspace, block_id: str) -> ElementFocus | None:
    """The element row position holding this block, if it sits in a slot."""
    conn = ws.parent_connection(block_id)
    if isinstance(conn, ValueSlot):
        row = children(ws, conn.block)
        for i, el in enumerate(row):
            if el.kind == "value_input" and el.name == conn.input:
                return ElementFocus(conn.block, i)
    if isinstance(conn, StatementSlot):
        row = children(ws, conn.block)
        for i, el in enumerate(row):
            if el.kind == "statement_input" and el.name == conn.input:
                return ElementFocus(conn.block, i)
    return None


def _chain_context(ws: Workspace, block_id: str) -> CursorLocation:
    """Where Out lands from a block: its slot element, the element holding
    its sequence head, or the stack head."""
    direct = _element_container(ws, block_id)
    if direct is not None:
        return direct
    head = ws.chain_head(block_id)
    container = _element_container(ws, head)
    if container is not None:
        return container
    return StackHead(ws.stack_of_block(head).label)


def step(
    ws: Workspace,
    location: CursorLocation,
    direction: Direction,
    toolbox: ToolboxView | None = None,
) -> _Step:
    """The pure transition function behind :func:`move`."""
    if isinstance(location, WorkspacePoint):
        return _step_point(ws, location, direction)
    if isinstance(location, StackHead):
        return _step_stack(ws, location, direction)
    if isinstance(location, BlockFocus):
        return _step_block(ws, location, direction)
    if isinstance(location, ElementFocus):
        return _step_element(ws, location, direction)
    return _step_toolbox(location, direction, toolbox or [])


def _step_point(ws: Workspace, loc: WorkspacePoint, d: Direction) -> _Step:
    if d is Direction.IN:
        if not ws.stacks:
            return _Step(None, "Workspace empty; press T to open toolbox")
        return _Step(StackHead(ws.stacks[0].label))
    if d is Direction.OUT:
        return _Step(None, "Already at workspace level")
    return _Step(None, "Use Shift with W A S D to move the workspace cursor")


def _step_stack(ws: Workspace, loc: StackHead, d: Direction) -> _Step:
    labels = ws.labels()
    idx = labels.index(loc.label)
    if d is Direction.DOWN:
        if idx + 1 >= len(labels):
            return _Step(None, f"Stack {loc.label} is the last stack")
        return _Step(StackHead(labels[idx + 1]))
    if d is Direction.UP:
        if idx == 0:
            return _Step(None, f"Stack {loc.label} is the first stack")
        return _Step(StackHead(labels[idx - 1]))
    if d is Direction.IN:
        return _Step(BlockFocus(ws.stack(loc.label).top))
    if d is Direction.OUT:
        stack = ws.stack(loc.label)
        return _Step(WorkspacePoint(stack.x, stack.y))
    return _Step(None, "No sideways movement at stack level")


def _step_block(ws: Workspace, loc: BlockFocus, d: Direction) -> _Step:
    block = ws.block(loc.block)
    if d is Direction.DOWN:
        if block.next is not None:
            return _Step(BlockFocus(block.next))
        return _Step(None, _chain_end_message(ws, loc.block, last=True))
    if d is Direction.UP:
        conn = ws.parent_connection(loc.block)
        if isinstance(conn, Next):
            return _Step(BlockFocus(conn.block))
        return _Step(None, _chain_end_message(ws, loc.block, last=False))
    if d is Direction.IN:
        row = children(ws, loc.block)
        if not row:
            return _Step(None, f"{announce.block_text(ws, loc.block)} has no inner elements")
        return _Step(ElementFocus(loc.block, 0))
    if d is Direction.OUT:
        return _Step(_chain_context(ws, loc.block))
    # Left/Right: step between sibling elements, but only for a value
    # block sitting in a slot; statement chains move vertically.
    conn = ws.parent_connection(loc.block)
    if isinstance(conn, ValueSlot):
        container = _element_container(ws, loc.block)
        assert container is not None
        row = children(ws, container.block)
        target = container.index + (1 if d is Direction.RIGHT else -1)
        if 0 <= target < len(row):
            return _Step(ElementFocus(container.block, target))
        side = "Last" if d is Direction.RIGHT else "First"
        return _Step(None, f"{side} element of {announce.block_text(ws, container.block)}")
    return _Step(None, "No sideways elements here")


def _chain_end_message(ws: Workspace, block_id: str, last: bool) -> str:
    head = ws.chain_head(block_id)
    container = ws.parent_connection(head)
    if isinstance(container, StatementSlot):
        where = f"{container.input.lower()} slot"
    else:
        where = f"stack {ws.stack_of_block(head).label}"
    return f"{'End' if last else 'Top'} of {where}"


def _step_element(ws: Workspace, loc: ElementFocus, d: Direction) -> _Step:
    row = children(ws, loc.block)
    element = row[loc.index]
    if d in (Direction.LEFT, Direction.RIGHT):
        target = loc.index + (1 if d is Direction.RIGHT else -1)
        if 0 <= target < len(row):
            return _Step(ElementFocus(loc.block, target))
        side = "Last" if d is Direction.RIGHT else "First"
        return _Step(None, f"{side} element of {announce.block_text(ws, loc.block)}")
    if d is Direction.IN:
        if element.kind == "field":
            return _Step(loc, field_entry=True)
        if element.attached is None:
            return _Step(None, "Empty connection")
        return _Step(BlockFocus(element.attached))
    if d is Direction.OUT:
        return _Step(BlockFocus(loc.block))
    return _Step(None, "Use A and D to move between elements")


def _step_toolbox(loc: ToolboxEntry, d: Direction, toolbox: ToolboxView) -> _Step:
    if not toolbox:
        return _Step(None, "Toolbox is empty")
    cat_name, entries = toolbox[loc.category]
    if d is Direction.DOWN:
        if loc.entry + 1 >= len(entries):
            return _Step(None, f"Last entry in {cat_name}")
        return _Step(ToolboxEntry(loc.category, loc.entry + 1))
    if d is Direction.UP:
        if loc.entry == 0:
            return _Step(None, f"First entry in {cat_name}")
        return _Step(ToolboxEntry(loc.category, loc.entry - 1))
    if d is Direction.RIGHT:
        if loc.category + 1 >= len(toolbox):
            return _Step(None, "Last category")
        return _Step(ToolboxEntry(loc.category + 1, 0))
    if d is Direction.LEFT:
        if loc.category == 0:
            return _Step(None, "First category")
        return _Step(ToolboxEntry(loc.category - 1, 0))
    if d is Direction.IN:
        return _Step(None, f"Press Enter to insert {entries[loc.entry]}")
    return _Step(None, "Press Escape to close the toolbox")


# -- descriptions -------------------------------------------------------------


def describe_location(
    ws: Workspace, location: CursorLocation, toolbox: ToolboxView | None = None
) -> Leveled:
    if isinstance(location, WorkspacePoint):
        return _point_leveled(ws, location)
    if isinstance(location, StackHead):
        stack = ws.stack(location.label)
        count = len(ws.subtree_ids(stack.top))
        name = f', "{stack.custom_name}"' if stack.custom_name else ""
        return leveled(
            f"Stack {location.label}",
            std_suffix=f"{name}, {count} block{'s' if count != 1 else ''}",
        )
    if isinstance(location, BlockFocus):
        return announce.describe_block_leveled(ws, location.block)
    if isinstance(location, ElementFocus):
        return announce.describe_element_leveled(ws, location.block, location.index)
    view = toolbox or []
    cat_name, entries = view[location.category]
    return leveled(
        entries[location.entry],
        std_suffix=f", entry {location.entry + 1} of {len(entries)},"
        f" {cat_name} category",
        verb_suffix=", press Enter to insert",
    )


def _point_leveled(ws: Workspace, point: WorkspacePoint) -> Leveled:
    if not ws.stacks:
        return leveled("Workspace empty", std_suffix="; press T to open toolbox")
    labels = ", ".join(ws.labels())
    n = len(ws.stacks)
    return leveled(
        f"Workspace cursor at {render_scalar(point.x)}, {render_scalar(point.y)}",
        std_suffix=f"; {n} stack{'s' if n != 1 else ''}: {labels}",
    )


# -- session-facing operations ------------------------------------------------


def move(session: "Session", direction: Direction) -> MoveResult:
    if not session.accessibility_on:
        raise AccessibilityDisabled("keyboard accessibility is off")
    result = step(session.workspace, session.cursor, direction, session.toolbox_view())
    if result.location is None:
        return MoveResult(
            False,
            session.cursor,
            render(Boundary(result.boundary), session.verbosity),
        )
    if result.field_entry:
        assert isinstance(result.location, ElementFocus)
        element = children(session.workspace, result.location.block)[result.location.index]
        block = session.workspace.block(result.location.block)
        event = FieldEditStarted(
            element.name, render_scalar(block.field_values[element.name])
        )
        return MoveResult(True, result.location, render(event, session.verbosity))
    described = describe_location(session.workspace, result.location, session.toolbox_view())
    return MoveResult(True, result.location, render(Moved(described), session.verbosity))


def jump_to_stack(session: "Session", letter: str) -> MoveResult:
    letter = letter.upper()
    ws = session.workspace
    if not ws.has_stack(letter):
        return MoveResult(
            False, session.cursor, render(JumpFailed(letter), session.verbosity)
        )
    top = ws.stack(letter).top
    described = announce.describe_block_leveled(ws, top)
    return MoveResult(True, BlockFocus(top), render(Moved(described), session.verbosity))


def move_workspace_cursor(session: "Session", direction: Direction) -> MoveResult:
    ws = session.workspace
    seed = _cursor_seed(session)
    dx, dy = {
        Direction.UP: (0.0, -WORKSPACE_CURSOR_STEP),
        Direction.DOWN: (0.0, WORKSPACE_CURSOR_STEP),
        Direction.LEFT: (-WORKSPACE_CURSOR_STEP, 0.0),
        Direction.RIGHT: (WORKSPACE_CURSOR_STEP, 0.0),
    }[direction]
    point = WorkspacePoint(seed[0] + dx, seed[1] + dy)
    return MoveResult(
        True, point, render(Moved(_point_leveled(ws, point)), session.verbosity)
    )


def _cursor_seed(session: "Session") -> tuple[float, float]:
    loc = session.cursor
    ws = session.workspace
    if isinstance(loc, WorkspacePoint):
        return (loc.x, loc.y)
    if isinstance(loc, StackHead):
        stack = ws.stack(loc.label)
        return (stack.x, stack.y)
    if isinstance(loc, (BlockFocus, ElementFocus)):
        stack = ws.stack_of_block(loc.block)
        return (stack.x, stack.y)
    return (0.0, 0.0)


def locate(session: "Session") -> Announcement:
    """Cursor-locator announcement: position, description, mode, and the
    surrounding blocks."""
    ws = session.workspace
    loc = session.cursor
    mode = session.mode.value
    if isinstance(loc, WorkspacePoint):
        base = _point_leveled(ws, loc)
        text = Leveled(base.terse, base.standard, f"{base.standard}; {mode} mode")
        return render(Located(text), session.verbosity)
    if isinstance(loc, StackHead):
        base = describe_location(ws, loc)
        total = len(ws.stacks)
        text = leveled(
            f"{base.standard}, {mode} mode",
            std_suffix=f"; {total} stack{'s' if total != 1 else ''}",
        )
        return render(Located(text), session.verbosity)
    if isinstance(loc, ToolboxEntry):
        base = describe_location(ws, loc, session.toolbox_view())
        text = leveled(f"Toolbox, {base.standard}", std_suffix=f"; {mode} mode")
        return render(Located(text), session.verbosity)

    block_id = loc.block
    numbering = renumber(ws)
    position = numbering[block_id]
    if isinstance(loc, ElementFocus):
        core_desc = announce.describe_element_leveled(ws, loc.block, loc.index).standard
    else:
        core_desc = announce.block_text(ws, block_id)
    neighbors = ""
    if isinstance(loc, BlockFocus):
        block = ws.block(block_id)
        conn = ws.parent_connection(block_id)
        if isinstance(conn, Next):
            neighbors += f"; previous: {announce.block_text(ws, conn.block)}"
        if block.next is not None:
            neighbors += f"; next: {announce.block_text(ws, block.next)}"
    extras = ""
    if isinstance(loc, BlockFocus):
        count = announce.nested_count(ws, block_id)
        if count:
            extras += f"; contains {count} block{'s' if count != 1 else ''}"
        comment = ws.block(block_id).comment
        if comment is not None and comment.text:
            extras += f'; comment: "{comment.text}"'
    text = Leveled(
        f"{core_desc}, {mode} mode",
        f"{announce.stack_phrase(ws, position.stack_label)}, "
        f"block {position.number} of {position.total}, "
        f"{core_desc}, {mode} mode{neighbors}",
        f"{announce.stack_phrase(ws, position.stack_label)}, "
        f"block {position.number} of {position.total}, "
        f"{core_desc}, {mode} mode{neighbors}{extras}",
    )
    return render(Located(text), session.verbosity)


_PREVIEW_ORDER = [
    ("move_up", Direction.UP),
    ("move_left", Direction.LEFT),
    ("move_down", Direction.DOWN),
    ("move_right", Direction.RIGHT),
    ("move_in", Direction.IN),
    ("move_out", Direction.OUT),
]


def preview_entries(session: "Session") -> tuple[tuple[str, str], ...]:
    """Dry-run every direction; keep only the ones that would move."""
    ws = session.workspace
    entries: list[tuple[str, str]] = []
    for kind, direction in _PREVIEW_ORDER:
        result = step(ws, session.cursor, direction, session.toolbox_view())
        if result.location is None:
            continue
        if result.field_entry:
            assert isinstance(result.location, ElementFocus)
            element = children(ws, result.location.block)[result.location.index]
            desc = f"edit {element.name.lower()} field"
        else:
            desc = announce.short_location_text(ws, result.location)
            if direction is Direction.IN:
                desc = f"enter {desc}"
        entries.append((_key_for(session, kind, direction), desc))
    return tuple(entries)


def assistant_preview(session: "Session") -> Announcement:
    return render(announce.AssistantPreview(preview_entries(session)), session.verbosity)


def _key_for(session: "Session", kind: str, direction: Direction) -> str:
    chords = [c.text() for c, cmd in session.keymap.bindings.items() if cmd.kind == kind]
    if chords:
        return min(chords, key=lambda t: (len(t), t))
    return direction.value.capitalize()


def reachable_set(session: "Session") -> set[CursorLocation]:
    """Breadth-first closure of movement plus stack jumps, starting from
    the workspace point.  All workspace points collapse into one: the
    point layer is a single navigational place.

    Test oracle for the full-keyboard-reachability invariant.
    """
    ws = session.workspace
    origin = WorkspacePoint(0.0, 0.0)

    def norm(loc: CursorLocation) -> CursorLocation:
        return origin if isinstance(loc, WorkspacePoint) else loc

    seen: set[CursorLocation] = {origin}
    frontier: list[CursorLocation] = [origin]
    while frontier:
        loc = frontier.pop()
        candidates: list[CursorLocation] = []
        for direction in Direction:
            result = step(ws, loc, direction)
            if result.location is not None:
                candidates.append(result.location)
        for stack in ws.stacks:
            candidates.append(BlockFocus(stack.top))
        for cand in candidates:
            cand = norm(cand)
            if cand not in seen:
                seen.add(cand)
                frontier.append(cand)
    return seen
