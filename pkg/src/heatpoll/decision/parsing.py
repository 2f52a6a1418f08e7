"""Turn untrusted model output into validated decisions.

Every failure is a :class:`ParseError` subclass; nothing else escapes, whatever
the input bytes are.
"""

from __future__ import annotations

import json
import math
import re
from typing import Iterable

from heatpoll.decision.types import DEFAULT_VIABLE_BOUNDS, Phase1Decision, Phase2Decision
from heatpoll.graph import MAX_CLOSENESS, MAX_HAPPINESS, MIN_CLOSENESS, MIN_HAPPINESS
from heatpoll.rounding import round_half_away

# caps the brace scan on adversarial input
MAX_CANDIDATES = 256
_TRAILING_COMMA = re.compile(r",\s*([}\]])")


class ParseError(ValueError):
    pass


class NoJsonFound(ParseError):
    pass


class MissingKey(ParseError):
    def __init__(self, name: str):
        super().__init__(f"missing key {name!r}")
        self.name = name


class InvalidValue(ParseError):
    def __init__(self, field: str, value):
        super().__init__(f"{field}: not a number: {value!r}")
        self.field = field
        self.value = value


class OutOfRange(ParseError):
    def __init__(self, field: str, value):
        super().__init__(f"{field}={value!r} out of range")
        self.field = field
        self.value = value


def _balanced_spans(text: str) -> Iterable[str]:
    """Yield '{...}' substrings with balanced braces, in order of their opening brace."""
    starts = [m.start() for m in re.finditer(r"\{", text)][:MAX_CANDIDATES]
    for s in starts:
        depth = 0
        in_str = escape = False
        for i in range(s, len(text)):
            c = text[i]
            if in_str:
                if escape:
                    escape = False
                elif c == "\\":
                    escape = True
                elif c == '"':
                    in_str = False
            elif c == '"':
                in_str = True
            elif c == "{":
                depth += 1
            elif c == "}":
                depth -= 1
                if depth == 0:
                    yield text[s : i + 1]
                    break


def _loads(candidate: str):
    for attempt in (candidate, _TRAILING_COMMA.sub(r"\1", candidate)):
        try:
            return json.loads(attempt)
        except (ValueError, RecursionError):
            continue
    return None


def extract_json_object(text) -> dict:
    """First balanced JSON object in ``text`` that decodes to a dict."""
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", errors="replace")
    if not isinstance(text, str):
        raise NoJsonFound(f"expected text, got {type(text).__name__}")
    for candidate in _balanced_spans(text):
        obj = _loads(candidate)
        if isinstance(obj, dict):
            return obj
    raise NoJsonFound(f"no JSON object in {text[:120]!r}")


def _number(obj: dict, key: str) -> int:
    if key not in obj:
        raise MissingKey(key)
    return _as_int(key, obj[key])


def _as_int(field: str, raw) -> int:
    value = raw
    if isinstance(value, str):
        try:
            value = float(value.strip().rstrip("°C").strip())
        except ValueError:
            raise InvalidValue(field, raw) from None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidValue(field, raw)
    if isinstance(value, int):
        return value
    if not math.isfinite(value):
        raise InvalidValue(field, raw)
    return round_half_away(value)


def _reasoning(obj: dict) -> str:
    if "reasoning" not in obj:
        raise MissingKey("reasoning")
    r = obj["reasoning"]
    return r if isinstance(r, str) else json.dumps(r, ensure_ascii=False)


def parse_phase1(text, viable_bounds: tuple[int, int] = DEFAULT_VIABLE_BOUNDS) -> Phase1Decision:
    obj = extract_json_object(text)
    degree = _number(obj, "degree")
    happiness = _number(obj, "happiness")
    reasoning = _reasoning(obj)
    lo, hi = viable_bounds
    if not lo <= degree <= hi:
        raise OutOfRange("degree", degree)
    if not MIN_HAPPINESS <= happiness <= MAX_HAPPINESS:
        raise OutOfRange("happiness", happiness)
    return Phase1Decision(degree, happiness, reasoning)


def parse_phase2(
    text,
    viable_bounds: tuple[int, int] = DEFAULT_VIABLE_BOUNDS,
    friend_names: Iterable[str] | None = None,
) -> Phase2Decision:
    """Updates naming anyone outside ``friend_names`` are dropped, not treated as errors."""
    obj = extract_json_object(text)
    degree = _number(obj, "final_degree")
    if "closeness_updates" not in obj:
        raise MissingKey("closeness_updates")
    raw_updates = obj["closeness_updates"]
    if raw_updates is None:
        raw_updates = {}
    if not isinstance(raw_updates, dict):
        raise InvalidValue("closeness_updates", raw_updates)
    reasoning = _reasoning(obj)
    lo, hi = viable_bounds
    if not lo <= degree <= hi:
        raise OutOfRange("final_degree", degree)
    allowed = None if friend_names is None else set(friend_names)
    updates = {}
    for name, raw in raw_updates.items():
        if allowed is not None and name not in allowed:
            continue
        level = _as_int(f"closeness_updates[{name}]", raw)
        if not MIN_CLOSENESS <= level <= MAX_CLOSENESS:
            raise OutOfRange(f"closeness_updates[{name}]", level)
        updates[name] = level
    return Phase2Decision(degree, updates, reasoning)


def render_phase1(d: Phase1Decision) -> str:
    return json.dumps({"reasoning": d.reasoning, "degree": d.degree_choice, "happiness": d.happiness})


def render_phase2(d: Phase2Decision) -> str:
    return json.dumps(
        {"reasoning": d.reasoning, "final_degree": d.final_degree, "closeness_updates": d.closeness_updates}
    )
