import json

import pytest
import requests

from vecport.agents import ChatMessage
from vecport.errors import ConfigurationError, LlmError, ReplayExhaustedError
from vecport.llm_client import RemoteClient, ReplayClient

MSGS = [ChatMessage("user", "hello")]


def test_replay_list_returns_in_order():
    client = ReplayClient(["one", "two"])
    assert client.complete(MSGS) == "one"
    assert client.complete(MSGS) == "two"
    assert client.calls_made == 2


def test_replay_exhaustion_raises():
    client = ReplayClient(["only"])
    client.complete(MSGS)
    with pytest.raises(ReplayExhaustedError):
        client.complete(MSGS)


def test_replay_session_on_list_form_is_shared():
    client = ReplayClient(["a", "b"])
    s1 = client.session("case1")
    s2 = client.session("case2")
    assert s1.complete(MSGS) == "a"
    assert s2.complete(MSGS) == "b"


def test_replay_per_case_cursors_are_independent():
    client = ReplayClient({"x": ["x1", "x2"], "y": ["y1"]})
    sx = client.session("x")
    sy = client.session("y")
    assert sy.complete(MSGS) == "y1"
    assert sx.complete(MSGS) == "x1"
    assert sx.complete(MSGS) == "x2"
    assert client.calls_made == 3


def test_replay_per_case_requires_session():
    client = ReplayClient({"x": ["x1"]})
    with pytest.raises(ConfigurationError):
        client.complete(MSGS)
    with pytest.raises(ConfigurationError):
        client.session("unknown-case")


def test_replay_from_file_forms(tmp_path):
    list_file = tmp_path / "list.json"
    list_file.write_text(json.dumps(["r1"]))
    assert not ReplayClient.from_file(list_file).per_case

    keyed_file = tmp_path / "keyed.json"
    keyed_file.write_text(json.dumps({"case": ["r1"]}))
    assert ReplayClient.from_file(keyed_file).per_case

    wrapped = tmp_path / "wrapped.json"
    wrapped.write_text(json.dumps({"responses": ["r1", "r2"]}))
    client = ReplayClient.from_file(wrapped)
    assert not client.per_case
    assert client.complete(MSGS) == "r1"

    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    with pytest.raises(ConfigurationError):
        ReplayClient.from_file(bad)


# --- remote client ------------------------------------------------------------

class _FakeResponse:
    def __init__(self, status_code, payload=None, text=""):
        self.status_code = status_code
        self._payload = payload
        self.text = text

    def json(self):
        if self._payload is None:
            raise ValueError("no json")
        return self._payload


def _completion(content):
    return {"choices": [{"message": {"content": content}}]}


def _client(post_fn, retries=3):
    client = RemoteClient(endpoint="http://example.invalid/v1/chat", model="m",
                          retries=retries, backoff_base_s=0.0)

    class _S:
        post = staticmethod(post_fn)

    client._session = _S()
    return client


def test_remote_success_first_try():
    calls = []

    def post(url, json=None, headers=None, timeout=None):
        calls.append(json)
        return _FakeResponse(200, _completion("hi there"))

    client = _client(post)
    assert client.complete(MSGS, temperature=0.2, max_tokens=64) == "hi there"
    assert calls[0]["model"] == "m"
    assert calls[0]["messages"] == [{"role": "user", "content": "hello"}]
    assert calls[0]["temperature"] == 0.2


def test_remote_retries_on_server_error_then_succeeds():
    responses = [_FakeResponse(503), _FakeResponse(200, _completion("ok"))]

    def post(url, **kwargs):
        return responses.pop(0)

    assert _client(post).complete(MSGS) == "ok"


def test_remote_retries_exhausted():
    def post(url, **kwargs):
        raise requests.ConnectionError("refused")

    with pytest.raises(LlmError, match="after 3 attempts"):
        _client(post).complete(MSGS)


def test_remote_non_retryable_error_raises_immediately():
    attempts = []

    def post(url, **kwargs):
        attempts.append(1)
        return _FakeResponse(401, text="bad key")

    with pytest.raises(LlmError, match="401"):
        _client(post).complete(MSGS)
    assert len(attempts) == 1


def test_remote_malformed_payload():
    def post(url, **kwargs):
        return _FakeResponse(200, {"nope": True})

    with pytest.raises(LlmError, match="malformed"):
        _client(post).complete(MSGS)


def test_remote_api_key_via_environment(monkeypatch):
    seen = {}

    def post(url, json=None, headers=None, timeout=None):
        seen.update(headers)
        return _FakeResponse(200, _completion("x"))

    monkeypatch.setenv("VECPORT_API_KEY", "sk-secret")
    _client(post).complete(MSGS)
    assert seen["Authorization"] == "Bearer sk-secret"


def test_remote_session_is_shared():
    client = RemoteClient(endpoint="http://e", model="m")
    assert client.session("anything") is client
