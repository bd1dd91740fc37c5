"""Key chords, the default binding schema, and command dispatch.

Chords have one canonical spelling — modifiers in Ctrl, Shift, Alt order,
letters upper-cased — so scripts, transcripts, and keymap files all agree.
The master switch chord can never be remapped: it must stay reachable to
turn keyboard handling back on.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import BadChord, ReservedChord, UnknownCommand

_MODIFIER_ORDER = ("Ctrl", "Shift", "Alt")
_MODIFIER_ALIASES = {
    "ctrl": "Ctrl", "control": "Ctrl",
    "shift": "Shift",
    "alt": "Alt", "option": "Alt",
}
_NAMED_KEYS = {
    "esc": "Esc", "escape": "Esc",
    "enter": "Enter", "return": "Enter",
    "delete": "Delete", "del": "Delete",
    "backspace": "Backspace",
    "space": "Space",
}


@dataclass(frozen=True)
class KeyChord:
    mods: frozenset[str]
    key: str

    def text(self) -> str:
        parts = [m for m in _MODIFIER_ORDER if m in self.mods]
        parts.append(self.key)
        return "+".join(parts)

    def is_printable(self) -> bool:
        """True when the chord types a character (at most Shift held)."""
        if self.mods - {"Shift"}:
            return False
        return len(self.key) == 1 or self.key == "Space"

    def char(self) -> str:
        return " " if self.key == "Space" else self.key


def parse_chord(text: str) -> KeyChord:
    raw = text.strip()
    if not raw:
        raise BadChord("empty chord")
    # '+' may be the key itself: "+", "Ctrl++".
    if raw == "+":
        mod_parts: list[str] = []
        key_part = "+"
    elif raw.endswith("++"):
        mod_parts = [p for p in raw[:-2].split("+") if p]
        key_part = "+"
    else:
        pieces = raw.split("+")
        mod_parts = pieces[:-1]
        key_part = pieces[-1]
    mods = set()
    for part in mod_parts:
        mod = _MODIFIER_ALIASES.get(part.lower())
        if mod is None:
            raise BadChord(f"unknown modifier {part!r} in {text!r}")
        mods.add(mod)
    key = _normalize_key(key_part, text)
    return KeyChord(frozenset(mods), key)


def _normalize_key(key_part: str, original: str) -> str:
    if not key_part:
        raise BadChord(f"missing key in {original!r}")
    named = _NAMED_KEYS.get(key_part.lower())
    if named is not None:
        return named
    if len(key_part) == 1:
        return key_part.upper()
    raise BadChord(f"unknown key {key_part!r} in {original!r}")


# -- commands ----------------------------------------------------------------


@dataclass(frozen=True)
class Command:
    kind: str
    arg: str | None = None

    def text(self) -> str:
        return self.kind if self.arg is None else f"{self.kind}:{self.arg}"


class _PassThrough:
    def text(self) -> str:
        return "pass_through"

    def __repr__(self) -> str:
        return "PASS_THROUGH"


PASS_THROUGH = _PassThrough()

# kind -> (help scope, human label).  Internal kinds (field editing) carry
# no scope and never appear in the help listing.
COMMAND_INFO: dict[str, tuple[str | None, str]] = {
    "move_up": ("Navigation", "move up to the previous block"),
    "move_left": ("Navigation", "move left to the previous element"),
    "move_down": ("Navigation", "move down to the next block"),
    "move_right": ("Navigation", "move right to the next element"),
    "move_in": ("Navigation", "move to the first nested block or connection"),
    "move_out": ("Navigation", "move out to the parent block or outer layer"),
    "jump_to_stack": ("Navigation", "jump to the stack labeled with that letter"),
    "toggle_edit_mode": ("Mode", "toggle edit mode"),
    "workspace_cursor_up": ("Workspace", "move workspace cursor up"),
    "workspace_cursor_down": ("Workspace", "move workspace cursor down"),
    "workspace_cursor_left": ("Workspace", "move workspace cursor left"),
    "workspace_cursor_right": ("Workspace", "move workspace cursor right"),
    "open_toolbox": ("Toolbox", "open toolbox"),
    "close_toolbox": ("Toolbox", "close toolbox; focus workspace"),
    "confirm": ("Toolbox", "insert the selected toolbox entry"),
    "locate": ("Announce", "announce cursor location"),
    "cut": ("Edit ops", "cut selected block"),
    "copy": ("Edit ops", "copy selected block"),
    "paste": ("Edit ops", "paste at the current connection"),
    "delete": ("Edit ops", "delete selected block"),
    "toggle_comment": ("Edit ops", "add or hide comment on selected block"),
    "disconnect": ("Edit ops", "disconnect at the cursor"),
    "toggle_assistant": ("Assist", "toggle navigational assistant"),
    "toggle_shortcuts": ("Assist", "toggle keyboard shortcuts list"),
    "customize_stack_label": ("Assist", "customize stack label"),
    "run": ("Execution", "run the program"),
    "output": ("Execution", "access the output"),
    "toggle_accessibility": ("Settings", "enable or disable keyboard accessibility"),
    "zoom_in": ("View", "zoom in"),
    "zoom_out": ("View", "zoom out"),
    "zoom_reset": ("View", "reset zoom"),
    "field_input": (None, "type into the focused field"),
    "field_commit": (None, "commit the field value"),
    "field_cancel": (None, "cancel field editing"),
    "field_backspace": (None, "delete the last field character"),
}

_SCOPE_ORDER = [
    "Navigation", "Mode", "Workspace", "Toolbox", "Announce",
    "Edit ops", "Assist", "Execution", "Settings", "View",
]

MASTER_TOGGLE = KeyChord(frozenset({"Ctrl", "Shift"}), "K")


def parse_command(text: str) -> Command:
    kind, _, arg = text.strip().partition(":")
    if kind not in COMMAND_INFO:
        raise UnknownCommand(f"unknown command {text!r}")
    if kind == "jump_to_stack":
        if len(arg) != 1 or not arg.isalpha():
            raise UnknownCommand("jump_to_stack takes one letter, e.g. jump_to_stack:D")
        return Command(kind, arg.upper())
    if arg:
        raise UnknownCommand(f"command {kind} takes no argument")
    return Command(kind)


@dataclass(frozen=True)
class Keymap:
    bindings: dict[KeyChord, Command] = field(default_factory=dict)
    enabled: bool = True

    def lookup(self, chord: KeyChord) -> Command | None:
        return self.bindings.get(chord)


def default_keymap() -> Keymap:
    bindings: dict[KeyChord, Command] = {}

    def bind(chord_text: str, command_text: str) -> None:
        bindings[parse_chord(chord_text)] = parse_command(command_text)

    bind("W", "move_up")
    bind("A", "move_left")
    bind("S", "move_down")
    bind("D", "move_right")
    bind("F", "move_in")
    bind("Q", "move_out")
    for letter in "ABCDEFGHIJKLMNOPQRSTUVWXYZ":
        bind(f"Alt+{letter}", f"jump_to_stack:{letter}")
    bind("E", "toggle_edit_mode")
    bind("Shift+W", "workspace_cursor_up")
    bind("Shift+S", "workspace_cursor_down")
    bind("Shift+A", "workspace_cursor_left")
    bind("Shift+D", "workspace_cursor_right")
    bind("T", "open_toolbox")
    bind("Esc", "close_toolbox")
    bind("Enter", "confirm")
    bind("C", "locate")
    bind("Ctrl+X", "cut")
    bind("Ctrl+C", "copy")
    bind("Ctrl+V", "paste")
    bind("Delete", "delete")
    bind("Ctrl+/", "toggle_comment")
    bind("Shift+X", "disconnect")
    bind("Shift+H", "toggle_assistant")
    bind("Shift+K", "toggle_shortcuts")
    bind("Shift+I", "customize_stack_label")
    bind("Shift+R", "run")
    bind("Shift+O", "output")
    bind("Ctrl+Shift+K", "toggle_accessibility")
    bind("+", "zoom_in")
    bind("-", "zoom_out")
    bind("0", "zoom_reset")
    return Keymap(bindings=bindings, enabled=True)


def dispatch(
    keymap: Keymap, chord: KeyChord, *, field_editing: bool = False
) -> Command | _PassThrough:
    """Resolve one chord.

    With the master switch off everything except the switch itself passes
    through to the host.  While a field has edit focus, printable keys and
    Enter/Esc/Backspace are routed to field editing before map lookup.
    """
    if not keymap.enabled:
        if chord == MASTER_TOGGLE:
            return Command("toggle_accessibility")
        return PASS_THROUGH
    if field_editing:
        if not chord.mods:
            if chord.key == "Enter":
                return Command("field_commit")
            if chord.key == "Esc":
                return Command("field_cancel")
            if chord.key == "Backspace":
                return Command("field_backspace")
        if chord.is_printable():
            return Command("field_input", chord.char())
    command = keymap.lookup(chord)
    return command if command is not None else PASS_THROUGH


def remap(keymap: Keymap, chord_text: str, command_text: str) -> Keymap:
    """Value-semantics rebinding; the master switch chord is untouchable."""
    chord = parse_chord(chord_text)
    command = parse_command(command_text)
    if chord == MASTER_TOGGLE:
        raise ReservedChord(f"{MASTER_TOGGLE.text()} cannot be remapped")
    bindings = dict(keymap.bindings)
    bindings[chord] = command
    return replace(keymap, bindings=bindings)


def load_keymap_overrides(text: str, base: Keymap | None = None) -> Keymap:
    """Apply a `chord = command` override file on top of the defaults.

    Duplicate chords in one file are rejected rather than silently
    last-one-wins.
    """
    keymap = base if base is not None else default_keymap()
    seen: set[KeyChord] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BadChord(f"line {lineno}: expected 'chord = command'")
        chord_text, command_text = line.split("=", 1)
        try:
            chord = parse_chord(chord_text)
            command = parse_command(command_text)
        except (BadChord, UnknownCommand) as exc:
            raise type(exc)(f"line {lineno}: {exc.message}") from None
        if chord in seen:
            raise BadChord(f"line {lineno}: duplicate binding for {chord.text()}")
        seen.add(chord)
        if chord == MASTER_TOGGLE:
            raise ReservedChord(
                f"line {lineno}: {MASTER_TOGGLE.text()} cannot be remapped"
            )
        keymap = replace(keymap, bindings={**keymap.bindings, chord: command})
    return keymap


def help_listing(keymap: Keymap) -> str | None:
    """Grouped binding list for the shortcuts announcement.

    The 26 Alt+letter jump bindings collapse into a single line.  Returns
    None when there is nothing active to list.
    """
    if not keymap.enabled or not keymap.bindings:
        return None
    by_scope: dict[str, list[str]] = {}
    jump_chords: list[KeyChord] = []
    for chord, command in keymap.bindings.items():
        if command.kind == "jump_to_stack":
            jump_chords.append(chord)
            continue
        scope, label = COMMAND_INFO[command.kind]
        if scope is None:
            continue
        by_scope.setdefault(scope, []).append(f"  {chord.text()}: {label}")
    if jump_chords:
        scope, label = COMMAND_INFO["jump_to_stack"]
        alt_letters = sorted(c.key for c in jump_chords if "Alt" in c.mods)
        if len(alt_letters) == 26:
            summary = "  Alt+A through Alt+Z"
        else:
            summary = "  " + ", ".join(
                c.text() for c in sorted(jump_chords, key=lambda c: c.text())
            )
        by_scope.setdefault(scope, []).append(f"{summary}: {label}")
    lines: list[str] = []
    for scope in _SCOPE_ORDER:
        if scope not in by_scope:
            continue
        lines.append(f"{scope}:")
        lines.extend(sorted(by_scope[scope]))
    return "\n".join(lines)
