"""HTTP surface: session lifecycle, key application, stateless helpers."""

from __future__ import annotations

import json
import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from eaf.demos import demo_text
from eaf.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def make_session(client, **payload):
    response = client.post("/sessions", json=payload)
    assert response.status_code == 200, response.text
    return response.json()


class TestSessions:
    def test_create_empty_session(self, client):
        body = make_session(client)
        assert body["state"]["mode"] == "navigation"
        assert body["state"]["stack_count"] == 0
        assert body["render"]["empty"] is True

    def test_create_from_demo(self, client):
        body = make_session(client, demo="countdown")
        assert body["state"]["stack_count"] == 1
        assert body["render"]["stacks"][0]["label"] == "A"

    def test_unknown_demo_is_404(self, client):
        response = client.post("/sessions", json={"demo": "nope"})
        assert response.status_code == 404

    def test_keys_endpoint_applies_and_announces(self, client):
        body = make_session(client, demo="hello")
        sid = body["state"]["session_id"]
        response = client.post(f"/sessions/{sid}/keys", json={"chord": "Alt+A"})
        assert response.status_code == 200
        out = response.json()
        assert out["command"] == "jump_to_stack:A"
        assert out["announcements"][0]["text"].startswith("Stack A, block 1 of 2")
        assert out["state"]["cursor_kind"] == "block"

    def test_key_with_argument(self, client):
        body = make_session(client, demo="hello")
        sid = body["state"]["session_id"]
        client.post(f"/sessions/{sid}/keys", json={"chord": "Alt+A"})
        response = client.post(
            f"/sessions/{sid}/keys", json={"chord": "Shift+I", "arg": "greeting"}
        )
        assert response.json()["announcements"][0]["text"] == 'Stack A named "greeting"'

    def test_bad_chord_is_422(self, client):
        body = make_session(client)
        sid = body["state"]["session_id"]
        response = client.post(f"/sessions/{sid}/keys", json={"chord": "Qx+9"})
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "bad_chord"

    def test_cursor_endpoint(self, client):
        body = make_session(client, demo="hello")
        sid = body["state"]["session_id"]
        block_id = body["render"]["stacks"][0]["blocks"][0]["id"]
        response = client.post(f"/sessions/{sid}/cursor", json={"block": block_id})
        assert response.status_code == 200
        assert response.json()["state"]["cursor_kind"] == "block"

    def test_workspace_round_trip(self, client):
        text = demo_text("countdown")
        body = make_session(client, workspace=text)
        sid = body["state"]["session_id"]
        response = client.get(f"/sessions/{sid}/workspace")
        assert response.text == text

    def test_script_endpoint_returns_canonical_transcript(self, client):
        body = make_session(client)
        sid = body["state"]["session_id"]
        response = client.post(
            f"/sessions/{sid}/script", json={"script": "T\nEnter\nC\n"}
        )
        assert response.status_code == 200
        transcript = json.loads(response.text)
        assert len(transcript["entries"]) == 3

    def test_delete_session(self, client):
        body = make_session(client)
        sid = body["state"]["session_id"]
        assert client.delete(f"/sessions/{sid}").status_code == 204
        assert client.get(f"/sessions/{sid}").status_code == 404

    def test_render_model_marks_cursor(self, client):
        body = make_session(client, demo="countdown")
        sid = body["state"]["session_id"]
        out = client.post(f"/sessions/{sid}/keys", json={"chord": "Alt+A"}).json()
        blocks = out["render"]["stacks"][0]["blocks"]
        assert blocks[0]["cursor"] is True
        assert blocks[0]["aria_label"].startswith("Stack A, block 1 of")

    def test_render_model_nests_inputs(self, client):
        body = make_session(client, demo="loop")
        inputs = body["render"]["stacks"][0]["blocks"][0]["inputs"]
        kinds = {i["kind"] for i in inputs}
        assert kinds == {"value_input", "statement_input"}
        body_input = next(i for i in inputs if i["kind"] == "statement_input")
        assert body_input["body"][0]["type"] == "print"


class TestStatelessHelpers:
    def test_replay(self, client):
        response = client.post(
            "/replay", json={"script": "T\nEnter\n", "verbosity": "standard"}
        )
        assert response.status_code == 200
        transcript = json.loads(response.text)
        assert transcript["entries"][1]["command"] == "confirm"

    def test_replay_rejects_bad_script(self, client):
        response = client.post("/replay", json={"script": "Shift+I oops\n"})
        assert response.status_code == 422
        assert response.json()["detail"]["code"] == "script_parse_error"

    def test_run(self, client):
        response = client.post("/run", json={"workspace": demo_text("countdown")})
        assert response.json() == {
            "lines": ["3", "2", "1"], "status": "ok", "message": "",
        }

    def test_validate_good_file(self, client):
        response = client.post("/validate", json={"workspace": demo_text("hello")})
        assert response.json() == {"violations": []}

    def test_validate_reports_schema_problems(self, client):
        broken = demo_text("hello").replace('"type": "print"', '"type": "nosuch"')
        response = client.post("/validate", json={"workspace": broken})
        violations = response.json()["violations"]
        assert violations and violations[0]["code"] == "schema_violation"

    def test_fmt_idempotent_on_canonical(self, client):
        text = demo_text("hello")
        response = client.post("/fmt", json={"workspace": text})
        body = response.json()
        assert body["changed"] is False
        assert body["formatted"] == text

    def test_fmt_canonicalizes(self, client):
        loose = json.dumps(json.loads(demo_text("hello")), indent=4)
        response = client.post("/fmt", json={"workspace": loose})
        body = response.json()
        assert body["changed"] is True
        assert body["formatted"] == demo_text("hello")

    def test_demo_listing(self, client):
        demos = client.get("/demos").json()["demos"]
        assert "hello" in demos and "step_limit" in demos
        assert client.get("/demos/hello").json()["name"] == "hello"
