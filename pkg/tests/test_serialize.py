"""Canonical files, schema enforcement, scripts, and transcripts."""

from __future__ import annotations

import json

import pytest

from eaf.blocks import validate
from eaf.errors import ParseError, SchemaViolation, ScriptParseError
from eaf.library import standard_block_set
from eaf.serialize import (
    parse_script,
    parse_workspace,
    workspace_text,
)

from conftest import generate_workspace, make_print, repeat_example


class TestWorkspaceRoundTrip:
    def test_save_load_save_is_identity(self, ws):
        repeat_example(ws)
        ws.stack("A").custom_name = "main loop"
        text = workspace_text(ws)
        reloaded = parse_workspace(text, standard_block_set())
        assert workspace_text(reloaded) == text

    @pytest.mark.parametrize("seed", range(8))
    def test_generated_workspaces_round_trip(self, seed):
        ws = generate_workspace(seed)
        text = workspace_text(ws)
        reloaded = parse_workspace(text, standard_block_set())
        assert workspace_text(reloaded) == text
        assert validate(reloaded) == []

    def test_non_canonical_input_is_canonicalized(self, ws):
        block = make_print(ws)
        text = workspace_text(ws)
        # Perturb formatting without changing content.
        loose = json.dumps(json.loads(text), indent=4)
        reloaded = parse_workspace(loose, standard_block_set())
        assert workspace_text(reloaded) == text

    def test_integral_floats_canonicalize_to_ints(self, ws):
        make_print(ws)
        ws.stack("A").x = 10.0
        assert '"x": 10,' in workspace_text(ws)


class TestSchemaViolations:
    def _loaded(self, mutate):
        ws_obj = {
            "version": 1,
            "stacks": [
                {
                    "label": "A",
                    "custom_name": None,
                    "x": 0,
                    "y": 0,
                    "block": {
                        "id": "b1",
                        "type": "print",
                        "fields": {},
                        "inputs": {},
                        "next": None,
                        "comment": None,
                    },
                }
            ],
        }
        mutate(ws_obj)
        return json.dumps(ws_obj)

    def test_duplicate_stack_label(self):
        def mutate(obj):
            obj["stacks"].append(json.loads(json.dumps(obj["stacks"][0])))
            obj["stacks"][1]["block"]["id"] = "b2"

        with pytest.raises(SchemaViolation, match="duplicate stack label"):
            parse_workspace(self._loaded(mutate), standard_block_set())

    def test_duplicate_block_id(self):
        def mutate(obj):
            obj["stacks"][0]["block"]["next"] = {
                "id": "b1",
                "type": "print",
                "fields": {},
                "inputs": {},
                "next": None,
                "comment": None,
            }

        with pytest.raises(SchemaViolation, match="duplicate block id"):
            parse_workspace(self._loaded(mutate), standard_block_set())

    def test_unknown_type(self):
        def mutate(obj):
            obj["stacks"][0]["block"]["type"] = "nosuch"

        with pytest.raises(SchemaViolation, match="unknown block type"):
            parse_workspace(self._loaded(mutate), standard_block_set())

    def test_unknown_input_name(self):
        def mutate(obj):
            obj["stacks"][0]["block"]["inputs"]["BOGUS"] = {
                "block": {
                    "id": "b9",
                    "type": "number",
                    "fields": {"VALUE": 1},
                    "inputs": {},
                    "next": None,
                    "comment": None,
                }
            }

        with pytest.raises(SchemaViolation, match="no input BOGUS"):
            parse_workspace(self._loaded(mutate), standard_block_set())

    def test_wrong_kind_in_slot(self):
        def mutate(obj):
            obj["stacks"][0]["block"]["inputs"]["VALUE"] = {
                "block": {
                    "id": "b3",
                    "type": "print",
                    "fields": {},
                    "inputs": {},
                    "next": None,
                    "comment": None,
                }
            }

        with pytest.raises(SchemaViolation, match="KindMismatch"):
            parse_workspace(self._loaded(mutate), standard_block_set())

    def test_missing_field(self):
        def mutate(obj):
            obj["stacks"][0]["block"] = {
                "id": "b1",
                "type": "number",
                "fields": {},
                "inputs": {},
                "next": None,
                "comment": None,
            }

        with pytest.raises(SchemaViolation, match="missing field"):
            parse_workspace(self._loaded(mutate), standard_block_set())

    def test_bad_json_is_parse_error(self):
        with pytest.raises(ParseError):
            parse_workspace("{not json", standard_block_set())

    def test_bad_version(self):
        with pytest.raises(SchemaViolation, match="version"):
            parse_workspace('{"version": 99, "stacks": []}', standard_block_set())


class TestScripts:
    def test_plain_chords(self):
        steps = parse_script("T\nEnter\nC\n")
        assert [(s.chord_text, s.arg) for s in steps] == [
            ("T", None), ("Enter", None), ("C", None),
        ]

    def test_comments_and_blanks_skipped(self):
        steps = parse_script("# intro\n\nW\n  # indented comment\nS\n")
        assert [s.chord_text for s in steps] == ["W", "S"]

    def test_quoted_argument(self):
        steps = parse_script('Shift+I "main loop"\n')
        assert steps[0].chord_text == "Shift+I"
        assert steps[0].arg == "main loop"

    def test_escapes_in_argument(self):
        steps = parse_script('Ctrl+/ "say \\"hi\\" twice\\n"\n')
        assert steps[0].arg == 'say "hi" twice\n'

    def test_trailing_comment_after_argument(self):
        steps = parse_script('Shift+I "loop"  # name it\n')
        assert steps[0].arg == "loop"

    def test_hash_inside_quotes_is_kept(self):
        steps = parse_script('Ctrl+/ "issue #42"\n')
        assert steps[0].arg == "issue #42"

    def test_unquoted_argument_rejected(self):
        with pytest.raises(ScriptParseError, match="line 1"):
            parse_script("Shift+I main loop\n")

    def test_unterminated_quote_rejected(self):
        with pytest.raises(ScriptParseError):
            parse_script('Shift+I "oops\n')

    def test_line_numbers_reported(self):
        with pytest.raises(ScriptParseError, match="line 3"):
            parse_script('W\nS\nShift+I oops\n')
