"""The engine facade: one session object, one command loop.

A session owns the workspace plus all interaction state (cursor, mode,
clipboard, toolbox, zoom, verbosity, assistant).  ``apply`` takes one key
chord and returns the announcements it produced; engine errors never
escape, they are announced.  ``replay`` runs a whole keystroke script and
records a transcript with a state hash per chord.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

from . import editing, navigation
from .announce import (
    Announcement,
    AccessibilityToggled,
    AssistantToggled,
    CommandFailed,
    EngineEvent,
    OutputLine,
    OutputSummary,
    RunFinished,
    ShortcutsHidden,
    SystemNote,
    Verbosity,
    Zoomed,
    render,
    shortcuts_help,
)
from .blocks import Workspace, children
from .editing import Clipboard, FieldEdit, Mode, Toolbox
from .errors import EngineError, ScriptParseError
from .library import STANDARD_CATEGORIES, standard_block_set
from .navigation import (
    BlockFocus,
    CursorLocation,
    Direction,
    ElementFocus,
    ToolboxEntry,
    WorkspacePoint,
)
from .runtime import Output, run as run_program
from .serialize import (
    ScriptStep,
    Transcript,
    TranscriptEntry,
    parse_script,
    parse_workspace,
    state_hash,
    workspace_text,
)
from .shortcuts import (
    PASS_THROUGH,
    Command,
    KeyChord,
    Keymap,
    default_keymap,
    dispatch,
    parse_chord,
)

ZOOM_STEP = 1.2
ZOOM_MIN = 0.25
ZOOM_MAX = 4.0

_MOVE_DIRECTIONS = {
    "move_up": Direction.UP,
    "move_down": Direction.DOWN,
    "move_left": Direction.LEFT,
    "move_right": Direction.RIGHT,
    "move_in": Direction.IN,
    "move_out": Direction.OUT,
}

_WORKSPACE_CURSOR_DIRECTIONS = {
    "workspace_cursor_up": Direction.UP,
    "workspace_cursor_down": Direction.DOWN,
    "workspace_cursor_left": Direction.LEFT,
    "workspace_cursor_right": Direction.RIGHT,
}

# Commands that still make sense while the toolbox is modal.
_ALLOWED_IN_TOOLBOX = {
    "move_up", "move_down", "move_left", "move_right", "move_in", "move_out",
    "confirm", "close_toolbox", "open_toolbox", "locate",
    "toggle_accessibility", "toggle_shortcuts", "toggle_assistant",
    "zoom_in", "zoom_out", "zoom_reset",
}

# Human verb per command for "Cannot <verb>: <reason>" error text.
_ERROR_VERBS = {
    "cut": "cut", "copy": "copy", "paste": "paste", "delete": "delete",
    "disconnect": "disconnect", "toggle_comment": "comment",
    "confirm": "insert", "open_toolbox": "open toolbox",
    "toggle_edit_mode": "switch modes",
    "customize_stack_label": "rename stack", "field_commit": "set field",
    "jump_to_stack": "jump",
}


@dataclass
class Session:
    workspace: Workspace
    cursor: CursorLocation = dataclass_field(default_factory=lambda: WorkspacePoint(0.0, 0.0))
    mode: Mode = Mode.NAVIGATION
    clipboard: Clipboard = dataclass_field(default_factory=Clipboard)
    keymap: Keymap = dataclass_field(default_factory=default_keymap)
    toolbox: Toolbox = dataclass_field(
        default_factory=lambda: Toolbox(categories=list(STANDARD_CATEGORIES))
    )
    zoom: float = 1.0
    verbosity: Verbosity = Verbosity.STANDARD
    assistant_on: bool = False
    shortcuts_open: bool = False
    last_output: Output | None = None
    field_edit: FieldEdit | None = None

    @property
    def accessibility_on(self) -> bool:
        return self.keymap.enabled

    def toolbox_view(self):
        return self.toolbox.visible() if self.toolbox.open else None

    # -- command loop ---------------------------------------------------

    def apply(self, chord: KeyChord | str, arg: str | None = None) -> list[Announcement]:
        """Dispatch and execute one chord; errors become announcements."""
        _, announcements = self.apply_detailed(chord, arg)
        return announcements

    def apply_detailed(
        self, chord: KeyChord | str, arg: str | None = None
    ) -> tuple[str, list[Announcement]]:
        if isinstance(chord, str):
            chord = parse_chord(chord)
        command = dispatch(self.keymap, chord, field_editing=self.field_edit is not None)
        if command is PASS_THROUGH:
            return command.text(), []
        assert isinstance(command, Command)
        try:
            announcements = self._execute(command, arg)
        except EngineError as exc:
            verb = _ERROR_VERBS.get(command.kind)
            message = f"Cannot {verb}: {exc.message}" if verb else exc.message
            announcements = [render(CommandFailed(exc.code, message), self.verbosity)]
        return command.text(), announcements

    def _execute(self, command: Command, arg: str | None) -> list[Announcement]:
        kind = command.kind
        if self.toolbox.open and kind not in _ALLOWED_IN_TOOLBOX and not kind.startswith("field_"):
            return self._notes(SystemNote("Close the toolbox first (Esc)"))

        if kind in _MOVE_DIRECTIONS:
            return self._move(_MOVE_DIRECTIONS[kind])
        if kind == "jump_to_stack":
            letter = command.arg or (arg or "")
            result = navigation.jump_to_stack(self, letter)
            self.cursor = result.new_location
            announcements = [result.announcement]
            if self.assistant_on and result.moved:
                announcements.append(navigation.assistant_preview(self))
            return announcements
        if kind in _WORKSPACE_CURSOR_DIRECTIONS:
            result = navigation.move_workspace_cursor(
                self, _WORKSPACE_CURSOR_DIRECTIONS[kind]
            )
            self.cursor = result.new_location
            announcements = [result.announcement]
            if self.assistant_on and result.moved:
                announcements.append(navigation.assistant_preview(self))
            return announcements
        if kind == "locate":
            return [navigation.locate(self)]
        if kind == "toggle_edit_mode":
            return self._notes(*editing.toggle_mode(self))
        if kind == "cut":
            return self._notes(*editing.cut(self))
        if kind == "copy":
            return self._notes(*editing.copy(self))
        if kind == "paste":
            return self._notes(*editing.paste(self))
        if kind == "delete":
            return self._notes(*editing.delete(self))
        if kind == "disconnect":
            return self._notes(*editing.disconnect(self))
        if kind == "toggle_comment":
            return self._notes(*editing.toggle_comment(self, arg))
        if kind == "open_toolbox":
            return self._notes(*editing.open_toolbox(self))
        if kind == "close_toolbox":
            return self._notes(*editing.close_toolbox(self))
        if kind == "confirm":
            if self.toolbox.open:
                return self._notes(*editing.insert(self))
            return self._notes(SystemNote("Nothing to confirm"))
        if kind == "customize_stack_label":
            return self._notes(*editing.customize_stack_label(self, arg))
        if kind == "toggle_assistant":
            self.assistant_on = not self.assistant_on
            announcements = self._notes(AssistantToggled(self.assistant_on))
            if self.assistant_on:
                announcements.append(navigation.assistant_preview(self))
            return announcements
        if kind == "toggle_shortcuts":
            if self.shortcuts_open:
                self.shortcuts_open = False
                return self._notes(ShortcutsHidden())
            self.shortcuts_open = True
            return [shortcuts_help(self.keymap)]
        if kind == "run":
            self.last_output = run_program(self.workspace)
            return self._notes(
                RunFinished(len(self.last_output.lines), self.last_output.status_text())
            )
        if kind == "output":
            if self.last_output is None:
                return self._notes(SystemNote("No output yet; press Shift+R to run"))
            events: list[EngineEvent] = [
                OutputSummary(len(self.last_output.lines), self.last_output.status_text())
            ]
            events.extend(OutputLine(line) for line in self.last_output.lines)
            return self._notes(*events)
        if kind == "toggle_accessibility":
            self.keymap = Keymap(bindings=self.keymap.bindings, enabled=not self.keymap.enabled)
            return self._notes(AccessibilityToggled(self.keymap.enabled))
        if kind == "zoom_in":
            return [self.apply_zoom("in")]
        if kind == "zoom_out":
            return [self.apply_zoom("out")]
        if kind == "zoom_reset":
            return [self.apply_zoom("reset")]
        if kind == "field_input":
            return self._notes(*editing.field_input(self, command.arg or ""))
        if kind == "field_backspace":
            return self._notes(*editing.field_backspace(self))
        if kind == "field_commit":
            return self._notes(*editing.field_commit(self))
        if kind == "field_cancel":
            return self._notes(*editing.field_cancel(self))
        raise EngineError(f"unhandled command {kind}")  # pragma: no cover

    def _move(self, direction: Direction) -> list[Announcement]:
        before = self.cursor
        result = navigation.move(self, direction)
        self.cursor = result.new_location
        if (
            direction is Direction.IN
            and result.moved
            and result.new_location == before
            and isinstance(before, ElementFocus)
        ):
            element = children(self.workspace, before.block)[before.index]
            if element.kind == "field":
                block = self.workspace.block(before.block)
                from .announce import render_scalar

                self.field_edit = FieldEdit(
                    before.block, element.name,
                    render_scalar(block.field_values[element.name]),
                )
        announcements = [result.announcement]
        if self.assistant_on and result.moved and self.field_edit is None:
            announcements.append(navigation.assistant_preview(self))
        return announcements

    def _notes(self, *events: EngineEvent) -> list[Announcement]:
        return [render(event, self.verbosity) for event in events]

    def apply_zoom(self, op: str) -> Announcement:
        if op == "reset":
            self.zoom = 1.0
            return self._notes(Zoomed(100, "reset"))[0]
        if op == "in":
            raw = self.zoom * ZOOM_STEP
            if raw > ZOOM_MAX:
                self.zoom = ZOOM_MAX
                return self._notes(Zoomed(round(ZOOM_MAX * 100), "max"))[0]
        else:
            raw = self.zoom / ZOOM_STEP
            if raw < ZOOM_MIN:
                self.zoom = ZOOM_MIN
                return self._notes(Zoomed(round(ZOOM_MIN * 100), "min"))[0]
        self.zoom = raw
        return self._notes(Zoomed(round(raw * 100)))[0]

    # -- replay ----------------------------------------------------------

    def replay(self, script_text: str) -> Transcript:
        steps = parse_script(script_text)
        parsed: list[tuple[ScriptStep, KeyChord]] = []
        for step in steps:
            try:
                parsed.append((step, parse_chord(step.chord_text)))
            except EngineError as exc:
                raise ScriptParseError(step.line, exc.message) from None
        initial = state_hash(self.workspace)
        entries: list[TranscriptEntry] = []
        for step, chord in parsed:
            command_text, announcements = self.apply_detailed(chord, step.arg)
            entries.append(
                TranscriptEntry(
                    chord=chord.text(),
                    command=command_text,
                    announcements=tuple(announcements),
                    state_hash=state_hash(self.workspace),
                )
            )
        return Transcript(
            initial_hash=initial,
            entries=tuple(entries),
            final_workspace=workspace_text(self.workspace),
        )


def new_session(workspace: Workspace | None = None, keymap: Keymap | None = None) -> Session:
    ws = workspace if workspace is not None else Workspace(standard_block_set())
    session = Session(workspace=ws)
    if keymap is not None:
        session.keymap = keymap
    return session


def load(text: str) -> Session:
    """Parse a workspace file into a fresh session."""
    return new_session(parse_workspace(text, standard_block_set()))


def save(session: Session) -> str:
    """Canonical serialization of the session's workspace."""
    return workspace_text(session.workspace)
