"""OpenAI-compatible chat-completions provider with retry and mock fallback."""

from __future__ import annotations

import logging
import os
import threading
import time
from collections import Counter

import requests

from heatpoll.decision.mock import MockProvider
from heatpoll.decision.parsing import ParseError, parse_phase1, parse_phase2
from heatpoll.decision.prompts import build_phase1_prompt, build_phase2_prompt
from heatpoll.decision.types import (
    DEFAULT_VIABLE_BOUNDS,
    Phase1Context,
    Phase1Decision,
    Phase2Context,
    Phase2Decision,
)

log = logging.getLogger(__name__)


class TransportError(RuntimeError):
    pass


class LLMProvider:
    """Sends each prompt as a single user message and parses the reply.

    ``max_retries`` bounds the total number of requests per decision. Transport
    failures and unparseable replies both consume the budget; once it is spent
    the mock decision is returned with ``fallback=True``. The same prompt is
    re-sent on every attempt.
    """

    kind = "llm"

    def __init__(
        self,
        base_url: str,
        model: str,
        temperature: float = 0.7,
        timeout_s: float = 60.0,
        max_retries: int = 3,
        viable_bounds: tuple[int, int] = DEFAULT_VIABLE_BOUNDS,
        fallback: MockProvider | None = None,
        api_key: str | None = None,
        backoff_s: float = 0.0,
    ):
        if max_retries < 1:
            raise ValueError("max_retries must be >= 1")
        self.url = base_url.rstrip("/") + "/chat/completions"
        self.model = model
        self.temperature = temperature
        self.timeout_s = timeout_s
        self.max_retries = max_retries
        self.viable_bounds = tuple(viable_bounds)
        self.fallback = fallback or MockProvider(viable_bounds)
        self.api_key = api_key if api_key is not None else os.environ.get("OPENAI_API_KEY")
        self.backoff_s = backoff_s
        self.stats: Counter = Counter()
        self._lock = threading.Lock()
        self._local = threading.local()

    def _session(self) -> requests.Session:
        s = getattr(self._local, "session", None)
        if s is None:
            s = self._local.session = requests.Session()
        return s

    def _count(self, key: str) -> None:
        with self._lock:
            self.stats[key] += 1

    def complete(self, prompt: str) -> str:
        payload = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.temperature,
        }
        headers = {"Authorization": f"Bearer {self.api_key}"} if self.api_key else {}
        try:
            resp = self._session().post(self.url, json=payload, headers=headers, timeout=self.timeout_s)
            resp.raise_for_status()
            content = resp.json()["choices"][0]["message"]["content"]
        except requests.RequestException as exc:
            raise TransportError(str(exc)) from exc
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise TransportError(f"malformed completion response: {exc!r}") from exc
        if not isinstance(content, str):
            raise TransportError(f"completion content is {type(content).__name__}, not text")
        return content

    def _decide(self, prompt: str, parse, fallback):
        for attempt in range(1, self.max_retries + 1):
            self._count("requests")
            try:
                return parse(self.complete(prompt))
            except TransportError as exc:
                self._count("transport_errors")
                log.debug("attempt %d/%d: transport error: %s", attempt, self.max_retries, exc)
            except ParseError as exc:
                self._count("parse_errors")
                log.debug("attempt %d/%d: unusable reply: %s", attempt, self.max_retries, exc)
            if self.backoff_s and attempt < self.max_retries:
                time.sleep(self.backoff_s * attempt)
        self._count("fallbacks")
        return fallback()

    def phase1(self, ctx: Phase1Context) -> Phase1Decision:
        def fallback():
            d = self.fallback.phase1(ctx)
            return Phase1Decision(d.degree_choice, d.happiness, d.reasoning, fallback=True)

        return self._decide(
            build_phase1_prompt(ctx), lambda text: parse_phase1(text, self.viable_bounds), fallback
        )

    def phase2(self, ctx: Phase2Context) -> Phase2Decision:
        names = [f.name for f in ctx.friends]

        def fallback():
            d = self.fallback.phase2(ctx)
            return Phase2Decision(d.final_degree, d.closeness_updates, d.reasoning, fallback=True)

        return self._decide(
            build_phase2_prompt(ctx), lambda text: parse_phase2(text, self.viable_bounds, names), fallback
        )
