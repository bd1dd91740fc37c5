"""Chord parsing, the default binding schema, dispatch, and remapping."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from eaf.errors import BadChord, ReservedChord, UnknownCommand
from eaf.shortcuts import (
    COMMAND_INFO,
    MASTER_TOGGLE,
    PASS_THROUGH,
    Command,
    KeyChord,
    Keymap,
    default_keymap,
    dispatch,
    load_keymap_overrides,
    parse_chord,
    remap,
)


class TestChordParsing:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("W", KeyChord(frozenset(), "W")),
            ("w", KeyChord(frozenset(), "W")),
            ("Ctrl+Shift+K", KeyChord(frozenset({"Ctrl", "Shift"}), "K")),
            ("shift+ctrl+k", KeyChord(frozenset({"Ctrl", "Shift"}), "K")),
            ("Alt+D", KeyChord(frozenset({"Alt"}), "D")),
            ("Ctrl+/", KeyChord(frozenset({"Ctrl"}), "/")),
            ("+", KeyChord(frozenset(), "+")),
            ("Ctrl++", KeyChord(frozenset({"Ctrl"}), "+")),
            ("-", KeyChord(frozenset(), "-")),
            ("0", KeyChord(frozenset(), "0")),
            ("Esc", KeyChord(frozenset(), "Esc")),
            ("escape", KeyChord(frozenset(), "Esc")),
            ("Delete", KeyChord(frozenset(), "Delete")),
            ("Enter", KeyChord(frozenset(), "Enter")),
            ("Space", KeyChord(frozenset(), "Space")),
        ],
    )
    def test_parse_cases(self, text, expected):
        assert parse_chord(text) == expected

    @pytest.mark.parametrize("bad", ["", "Qx+Z", "Ctrl+", "Meta+K", "F13"])
    def test_bad_chords_rejected(self, bad):
        with pytest.raises(BadChord):
            parse_chord(bad)

    def test_canonical_modifier_order(self):
        chord = parse_chord("alt+shift+ctrl+x")
        assert chord.text() == "Ctrl+Shift+Alt+X"

    @given(
        mods=st.sets(st.sampled_from(["Ctrl", "Shift", "Alt"])),
        key=st.one_of(
            st.sampled_from(["Esc", "Enter", "Delete", "Backspace", "Space"]),
            st.sampled_from(list("ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-/.,;'")),
        ),
    )
    def test_roundtrip_parse_of_canonical_form(self, mods, key):
        chord = KeyChord(frozenset(mods), key)
        assert parse_chord(chord.text()) == chord


class TestDefaultKeymap:
    def test_f_is_move_in(self):
        keymap = default_keymap()
        assert keymap.lookup(parse_chord("F")) == Command("move_in")

    def test_alt_d_jumps_to_d(self):
        keymap = default_keymap()
        assert keymap.lookup(parse_chord("Alt+D")) == Command("jump_to_stack", "D")

    def test_master_toggle(self):
        keymap = default_keymap()
        assert keymap.lookup(MASTER_TOGGLE) == Command("toggle_accessibility")

    def test_arrow_keys_deliberately_unbound(self):
        keymap = default_keymap()
        # arrows conflict with screen-reader defaults; WASD carries movement
        for key in ["Up", "Down", "Left", "Right"]:
            with pytest.raises(BadChord):
                parse_chord(key)
        assert keymap.lookup(parse_chord("W")) == Command("move_up")


class TestDispatch:
    def test_disabled_keymap_passes_through(self):
        keymap = Keymap(bindings=default_keymap().bindings, enabled=False)
        assert dispatch(keymap, parse_chord("S")) is PASS_THROUGH

    def test_disabled_keymap_still_honors_master_toggle(self):
        keymap = Keymap(bindings=default_keymap().bindings, enabled=False)
        assert dispatch(keymap, MASTER_TOGGLE) == Command("toggle_accessibility")

    def test_field_editing_routes_printables(self):
        keymap = default_keymap()
        assert dispatch(keymap, parse_chord("5"), field_editing=True) == Command(
            "field_input", "5"
        )
        assert dispatch(keymap, parse_chord("W"), field_editing=True) == Command(
            "field_input", "W"
        )
        assert dispatch(keymap, parse_chord("Enter"), field_editing=True) == Command(
            "field_commit"
        )
        assert dispatch(keymap, parse_chord("Esc"), field_editing=True) == Command(
            "field_cancel"
        )

    def test_field_editing_lets_control_chords_through(self):
        keymap = default_keymap()
        assert dispatch(keymap, MASTER_TOGGLE, field_editing=True) == Command(
            "toggle_accessibility"
        )

    def test_unbound_chord_passes_through(self):
        keymap = default_keymap()
        assert dispatch(keymap, parse_chord("Ctrl+Q")) is PASS_THROUGH


class TestRemap:
    def test_remap_adds_binding_and_keeps_old(self):
        keymap = remap(default_keymap(), "M", "toggle_edit_mode")
        assert keymap.lookup(parse_chord("M")) == Command("toggle_edit_mode")
        assert keymap.lookup(parse_chord("E")) == Command("toggle_edit_mode")

    def test_master_toggle_is_reserved(self):
        with pytest.raises(ReservedChord):
            remap(default_keymap(), "Ctrl+Shift+K", "move_up")

    def test_bad_chord_rejected(self):
        with pytest.raises(BadChord):
            remap(default_keymap(), "Qx+Z", "move_up")

    def test_unknown_command_rejected(self):
        with pytest.raises(UnknownCommand):
            remap(default_keymap(), "M", "launch_rockets")

    def test_value_semantics(self):
        original = default_keymap()
        remap(original, "M", "toggle_edit_mode")
        assert original.lookup(parse_chord("M")) is None


class TestKeymapFile:
    def test_override_file(self):
        keymap = load_keymap_overrides("# comment\nM = toggle_edit_mode\nCtrl+J = jump_to_stack:J\n")
        assert keymap.lookup(parse_chord("M")) == Command("toggle_edit_mode")
        assert keymap.lookup(parse_chord("Ctrl+J")) == Command("jump_to_stack", "J")

    def test_duplicate_chord_rejected(self):
        with pytest.raises(BadChord, match="duplicate"):
            load_keymap_overrides("M = move_up\nM = move_down\n")

    def test_reserved_chord_rejected(self):
        with pytest.raises(ReservedChord):
            load_keymap_overrides("Ctrl+Shift+K = move_up\n")

    def test_malformed_line_rejected(self):
        with pytest.raises(BadChord, match="line 1"):
            load_keymap_overrides("what even is this\n")


def test_every_public_command_has_scope_metadata():
    for kind, (scope, label) in COMMAND_INFO.items():
        assert label
        if kind.startswith("field_"):
            assert scope is None
