"""Keyboard-first, screen-reader-oriented engine for block-based program
editing: navigable workspaces, mode-gated editing, announcement
generation, and a deterministic keystroke-replay harness.
"""

from .announce import Announcement, Category, Politeness, Verbosity
from .blocks import Workspace, validate
from .session import Session, load, new_session, save
from .shortcuts import Keymap, default_keymap

__all__ = [
    "Announcement",
    "Category",
    "Keymap",
    "Politeness",
    "Session",
    "Verbosity",
    "Workspace",
    "default_keymap",
    "load",
    "new_session",
    "save",
    "validate",
]

__version__ = "0.1.0"
