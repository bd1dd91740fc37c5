"""Announcement rendering: block descriptions, verbosity monotonicity,
event totality, and the politeness policy."""

from __future__ import annotations

import pytest

from eaf import announce
from eaf.announce import (
    Announcement,
    Category,
    EngineEvent,
    Leveled,
    Politeness,
    Verbosity,
    describe_block,
    render,
    shortcuts_help,
)
from eaf.blocks import Comment, StatementSlot, ValueSlot, connect, new_block
from eaf.shortcuts import Keymap, default_keymap

from conftest import make_number, make_print, repeat_example


class TestDescribeBlock:
    def test_terse_is_the_block_phrase(self, ws):
        block = make_print(ws, "hi")
        assert describe_block(ws, block, Verbosity.TERSE) == "print 'hi'"

    def test_standard_adds_stack_and_number(self, ws):
        parts = repeat_example(ws)
        text = describe_block(ws, parts["repeat"], Verbosity.STANDARD)
        assert text == "Stack A, block 1 of 6, repeat 10 times"

    def test_verbose_adds_nesting_and_comment(self, ws):
        parts = repeat_example(ws)
        ws.block(parts["repeat"]).comment = Comment("outer loop")
        text = describe_block(ws, parts["repeat"], Verbosity.VERBOSE)
        assert text.endswith("contains 5 blocks, has comment")

    def test_custom_name_appears_in_standard(self, ws):
        block = make_print(ws, "hi")
        ws.stack("A").custom_name = "main loop"
        text = describe_block(ws, block, Verbosity.STANDARD)
        assert text.startswith('Stack A, "main loop", block 1 of 2')

    def test_operand_rendering(self, ws):
        compare = new_block(ws, "compare")
        connect(ws, ValueSlot(compare, "A"), make_number(ws, 2))
        connect(ws, ValueSlot(compare, "B"), make_number(ws, 3))
        assert announce.operand_text(ws, compare) == "2 < 3"

    def test_set_var_phrase(self, ws):
        block = new_block(ws, "set_var", {"NAME": "n"})
        connect(ws, ValueSlot(block, "VALUE"), make_number(ws, 4))
        assert announce.block_text(ws, block) == "set n to 4"


def _sample_events(ws) -> list[EngineEvent]:
    """One instance of every event kind, for the totality sweep."""
    lv = Leveled("core", "pre core", "pre core post")
    return [
        announce.Moved(lv),
        announce.Boundary("End of stack A"),
        announce.JumpFailed("D"),
        announce.Located(lv),
        announce.ModeChanged("Edit", "repeat 10 times"),
        announce.FieldEditStarted("VALUE", "10"),
        announce.FieldInputEcho("5", "105"),
        announce.FieldCommitted("VALUE", "105"),
        announce.FieldEditCancelled("VALUE"),
        announce.CutDone("print 'hi'"),
        announce.CopyDone("print 'hi'"),
        announce.PasteDone("print 'hi'", "as stack B", "block 1 of 1 in stack B"),
        announce.DeleteDone("print 'hi'", "stack A"),
        announce.DisconnectDone("print 'hi'"),
        announce.CommentAdded("loop counter"),
        announce.CommentHidden(),
        announce.CommentShown("loop counter"),
        announce.InsertDone("print empty", "as stack A", "block 1 of 1 in stack A"),
        announce.StackRenamed("A", "main loop"),
        announce.StackCreated("B"),
        announce.StackRetired("B"),
        announce.ToolboxOpened(12, False, "Statements category, print"),
        announce.ToolboxClosed("print 'hi'"),
        announce.Zoomed(120),
        announce.Zoomed(400, "max"),
        announce.Zoomed(100, "reset"),
        announce.RunFinished(3, "ok"),
        announce.OutputSummary(3, "ok"),
        announce.OutputLine("hi"),
        announce.AssistantToggled(True),
        announce.AssistantPreview((("S", "print 'bye'"), ("Q", "stack A"))),
        announce.ShortcutsShown("Navigation:\n  W: move up"),
        announce.ShortcutsHidden(),
        announce.AccessibilityToggled(False),
        announce.CommandFailed("incompatible_connection", "Cannot paste: kind mismatch"),
        announce.SystemNote("Workspace focused"),
    ]


class TestRenderTotality:
    def test_every_event_kind_renders_once(self, ws):
        events = _sample_events(ws)
        # the sweep covers the whole declared union
        covered = {type(e) for e in events}
        import typing

        assert covered == set(typing.get_args(EngineEvent))
        for event in events:
            for verbosity in Verbosity:
                result = render(event, verbosity)
                assert isinstance(result, Announcement)
                assert result.text

    def test_verbosity_monotone_substrings(self, ws):
        for event in _sample_events(ws):
            terse = render(event, Verbosity.TERSE).text
            standard = render(event, Verbosity.STANDARD).text
            verbose = render(event, Verbosity.VERBOSE).text
            assert terse in standard
            assert standard in verbose

    def test_politeness_policy(self, ws):
        for event in _sample_events(ws):
            result = render(event, Verbosity.STANDARD)
            if result.category in (Category.ERROR, Category.MODE):
                assert result.politeness is Politeness.ASSERTIVE
            if result.category is Category.NAVIGATION:
                assert result.politeness is Politeness.POLITE


class TestDescriptionMonotonicity:
    def test_block_descriptions_are_substring_ordered(self, ws):
        repeat_example(ws)
        for block_id in ws.blocks:
            terse = describe_block(ws, block_id, Verbosity.TERSE)
            standard = describe_block(ws, block_id, Verbosity.STANDARD)
            verbose = describe_block(ws, block_id, Verbosity.VERBOSE)
            assert terse in standard and standard in verbose


class TestShortcutsHelp:
    def test_lists_every_table_binding(self):
        text = shortcuts_help(default_keymap()).text
        lines = [l for l in text.splitlines() if l.startswith("  ")]
        # 27 schema rows (the 26 jump chords collapse into one line),
        # plus the 3 zoom keys and the Enter confirm binding.
        assert len(lines) == 31
        assert any(l.startswith("  W:") for l in lines)
        assert any("Alt+A through Alt+Z" in l for l in lines)
        assert any(l.startswith("  Ctrl+Shift+K:") for l in lines)

    def test_remap_is_reflected(self):
        from eaf.shortcuts import remap

        keymap = remap(default_keymap(), "M", "toggle_edit_mode")
        text = shortcuts_help(keymap).text
        assert "  M: toggle edit mode" in text
        assert "  E: toggle edit mode" in text  # still bound until remapped

    def test_disabled_keymap(self):
        keymap = Keymap(bindings={}, enabled=False)
        assert shortcuts_help(keymap).text == "keyboard accessibility disabled"
