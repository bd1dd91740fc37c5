"""Engine error hierarchy.

Every failure a command can hit is an :class:`EngineError` with a stable
``code``.  The session layer never lets these escape: they are rendered as
assertive announcements instead.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all recoverable engine failures."""

    code = "engine_error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class UnknownDefinition(EngineError):
    code = "unknown_definition"


class BadFieldValue(EngineError):
    code = "bad_field_value"

    def __init__(self, field: str, message: str):
        super().__init__(message)
        self.field = field


class UnknownBlock(EngineError):
    code = "unknown_block"


class UnknownStack(EngineError):
    code = "unknown_stack"


class NumberOutOfRange(EngineError):
    code = "number_out_of_range"


class InvalidName(EngineError):
    code = "invalid_name"


class IncompatibleConnection(EngineError):
    code = "incompatible_connection"


class OccupiedValueSlot(EngineError):
    code = "occupied_value_slot"


class WouldCreateCycle(EngineError):
    code = "would_create_cycle"


class NotDetached(EngineError):
    """Raised when an attach source is not a free-standing stack top."""

    code = "not_detached"


class AlreadyDetached(EngineError):
    code = "already_detached"


class NoSelection(EngineError):
    code = "no_selection"


class NotInEditMode(EngineError):
    code = "not_in_edit_mode"


class EmptyClipboard(EngineError):
    code = "empty_clipboard"


class ToolboxEmptyForContext(EngineError):
    code = "toolbox_empty_for_context"


class AccessibilityDisabled(EngineError):
    code = "accessibility_disabled"


class BadChord(EngineError):
    code = "bad_chord"


class UnknownCommand(EngineError):
    code = "unknown_command"


class ReservedChord(EngineError):
    code = "reserved_chord"


class ParseError(EngineError):
    """A workspace file is not valid JSON."""

    code = "parse_error"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class SchemaViolation(EngineError):
    """A workspace file parses but does not match the schema."""

    code = "schema_violation"

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ScriptParseError(EngineError):
    code = "script_parse_error"

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason
