from heatpoll.decision.llm import LLMProvider, TransportError
from heatpoll.decision.mock import MockProvider
from heatpoll.decision.parsing import (
    InvalidValue,
    MissingKey,
    NoJsonFound,
    OutOfRange,
    ParseError,
    extract_json_object,
    parse_phase1,
    parse_phase2,
)
from heatpoll.decision.prompts import build_phase1_prompt, build_phase2_prompt
from heatpoll.decision.types import (
    DEFAULT_REFERENCE,
    DEFAULT_VIABLE_BOUNDS,
    DecisionProvider,
    FamilyMemberInfo,
    FriendInfo,
    Phase1Context,
    Phase1Decision,
    Phase2Context,
    Phase2Decision,
    TemperatureReference,
)

__all__ = [
    "DEFAULT_REFERENCE",
    "DEFAULT_VIABLE_BOUNDS",
    "DecisionProvider",
    "FamilyMemberInfo",
    "FriendInfo",
    "InvalidValue",
    "LLMProvider",
    "MissingKey",
    "MockProvider",
    "NoJsonFound",
    "OutOfRange",
    "ParseError",
    "Phase1Context",
    "Phase1Decision",
    "Phase2Context",
    "Phase2Decision",
    "TemperatureReference",
    "TransportError",
    "build_phase1_prompt",
    "build_phase2_prompt",
    "extract_json_object",
    "parse_phase1",
    "parse_phase2",
]
