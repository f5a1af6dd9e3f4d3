"""LLM access: a remote chat-completion client and a deterministic replay client.

The replay client makes the whole pipeline reproducible: responses come from
a JSON file, keyed by call order. Two layouts are accepted:

  ["response 1", "response 2", ...]            one shared sequence
  {"case_a": [...], "case_b": [...]}           one sequence per case id

The per-case layout keeps parallel runs deterministic, since each task owns
its own cursor. The remote client talks to any chat-completion style HTTP
endpoint; the API key travels only via environment variable so it can never
leak into logs or attempt records.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, Sequence

import requests

from .agents import ChatMessage
from .errors import ConfigurationError, LlmError, ReplayExhaustedError

API_KEY_ENV = "VECPORT_API_KEY"
DEFAULT_TIMEOUT_S = 120.0
DEFAULT_RETRIES = 3
RETRYABLE_STATUSES = {429, 500, 502, 503, 504}


class LlmClient(Protocol):
    def complete(self, messages: Sequence[ChatMessage], temperature: float,
                 max_tokens: int) -> str: ...

    def session(self, case_id: str) -> "LlmClient": ...


class _ReplayCursor:
    """One ordered response list with a thread-safe position."""

    def __init__(self, responses: list[str], label: str):
        self._responses = responses
        self._label = label
        self._pos = 0
        self._lock = threading.Lock()

    def next_response(self) -> str:
        with self._lock:
            if self._pos >= len(self._responses):
                raise ReplayExhaustedError(
                    f"replay script {self._label} exhausted after "
                    f"{len(self._responses)} responses"
                )
            out = self._responses[self._pos]
            self._pos += 1
            return out

    @property
    def calls_made(self) -> int:
        return self._pos


class ReplayClient:
    """Scripted responses; fully deterministic, ignores sampling parameters."""

    def __init__(self, responses: list[str] | dict[str, list[str]], label: str = "<memory>"):
        self.label = label
        if isinstance(responses, dict):
            self._per_case = {
                case: _ReplayCursor(list(seq), f"{label}[{case}]")
                for case, seq in responses.items()
            }
            self._shared = None
        else:
            self._per_case = None
            self._shared = _ReplayCursor(list(responses), label)

    @classmethod
    def from_file(cls, path: Path | str) -> "ReplayClient":
        path = Path(path)
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot load replay file {path}: {exc}") from exc
        if isinstance(data, dict) and "responses" in data:
            data = data["responses"]
        if isinstance(data, list):
            if not all(isinstance(x, str) for x in data):
                raise ConfigurationError(f"{path}: replay list must contain strings")
            return cls(data, label=str(path))
        if isinstance(data, dict):
            for case, seq in data.items():
                if not isinstance(seq, list) or not all(isinstance(x, str) for x in seq):
                    raise ConfigurationError(
                        f"{path}: replay entry {case!r} must be a list of strings"
                    )
            return cls(data, label=str(path))
        raise ConfigurationError(f"{path}: replay file must be a JSON list or object")

    @property
    def per_case(self) -> bool:
        return self._per_case is not None

    def session(self, case_id: str) -> "ReplayClient":
        if self._per_case is None:
            return self
        if case_id not in self._per_case:
            raise ConfigurationError(
                f"replay script {self.label} has no responses for case {case_id!r}"
            )
        view = ReplayClient.__new__(ReplayClient)
        view.label = f"{self.label}[{case_id}]"
        view._per_case = None
        view._shared = self._per_case[case_id]
        return view

    def complete(self, messages, temperature: float = 0.2, max_tokens: int = 4096) -> str:
        if self._shared is None:
            raise ConfigurationError(
                "per-case replay client must be narrowed with session(case_id) first"
            )
        return self._shared.next_response()

    @property
    def calls_made(self) -> int:
        if self._shared is not None:
            return self._shared.calls_made
        return sum(c.calls_made for c in self._per_case.values())


@dataclass
class RemoteClient:
    """Chat-completion HTTP client with bounded retry and exponential backoff."""

    endpoint: str
    model: str
    api_key_env: str = API_KEY_ENV
    timeout_s: float = DEFAULT_TIMEOUT_S
    retries: int = DEFAULT_RETRIES
    backoff_base_s: float = 1.0
    _session: requests.Session = field(default_factory=requests.Session, repr=False)

    def session(self, case_id: str) -> "RemoteClient":
        return self

    def complete(self, messages, temperature: float = 0.2, max_tokens: int = 4096) -> str:
        payload = {
            "model": self.model,
            "messages": [{"role": m.role, "content": m.content} for m in messages],
            "temperature": temperature,
            "max_tokens": max_tokens,
        }
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(self.api_key_env, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"

        last_error: Exception | None = None
        for attempt in range(self.retries):
            if attempt:
                time.sleep(self.backoff_base_s * (2 ** (attempt - 1)))
            try:
                resp = self._session.post(
                    self.endpoint, json=payload, headers=headers, timeout=self.timeout_s
                )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if resp.status_code in RETRYABLE_STATUSES:
                last_error = LlmError(f"endpoint returned HTTP {resp.status_code}")
                continue
            if resp.status_code != 200:
                raise LlmError(
                    f"endpoint returned HTTP {resp.status_code}: {resp.text[:500]}"
                )
            return self._parse_content(resp)
        raise LlmError(
            f"LLM call failed after {self.retries} attempts: {last_error}"
        ) from last_error

    @staticmethod
    def _parse_content(resp) -> str:
        try:
            data = resp.json()
            return data["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise LlmError(f"malformed completion response: {exc}") from exc
