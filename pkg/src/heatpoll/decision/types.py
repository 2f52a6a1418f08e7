from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from heatpoll.graph import MAX_CLOSENESS, MIN_CLOSENESS, HeaterPreference, Persona
from heatpoll.weather import DailyWeather

DEFAULT_VIABLE_BOUNDS = (10, 32)


@dataclass(frozen=True)
class TemperatureReference:
    """Heater-preference category -> inclusive whole-degree range."""

    ranges: tuple[tuple[HeaterPreference, tuple[int, int]], ...] = (
        (HeaterPreference.COLD, (10, 16)),
        (HeaterPreference.COOL, (17, 19)),
        (HeaterPreference.NEUTRAL, (20, 24)),
        (HeaterPreference.WARM, (25, 27)),
        (HeaterPreference.HOT, (28, 32)),
    )

    def __post_init__(self) -> None:
        cats = [c for c, _ in self.ranges]
        if cats != list(HeaterPreference):
            raise ValueError("reference must list Cold, Cool, Neutral, Warm, Hot in order")
        prev_hi = None
        for cat, (lo, hi) in self.ranges:
            if lo > hi:
                raise ValueError(f"{cat.value}: low {lo} exceeds high {hi}")
            if prev_hi is not None and lo != prev_hi + 1:
                raise ValueError(f"{cat.value}: ranges must be contiguous and disjoint")
            prev_hi = hi
        lo, hi = dict(self.ranges)[HeaterPreference.NEUTRAL]
        if not (lo <= 21 and 22 <= hi):
            raise ValueError("Neutral range must contain 21 and 22")
        if dict(self.ranges)[HeaterPreference.WARM][0] < 25:
            raise ValueError("Warm range must start at 25 or above")

    @classmethod
    def from_mapping(cls, mapping: dict) -> "TemperatureReference":
        try:
            return cls(tuple((c, (int(mapping[c.value][0]), int(mapping[c.value][1]))) for c in HeaterPreference))
        except (KeyError, IndexError, TypeError) as exc:
            raise ValueError(f"bad temperature reference: {exc}") from None

    def range_of(self, pref: HeaterPreference) -> tuple[int, int]:
        return dict(self.ranges)[pref]

    def midpoint(self, pref: HeaterPreference) -> float:
        lo, hi = self.range_of(pref)
        return (lo + hi) / 2

    def to_dict(self) -> dict:
        return {c.value: list(r) for c, r in self.ranges}


DEFAULT_REFERENCE = TemperatureReference()


@dataclass(frozen=True)
class FamilyMemberInfo:
    name: str
    heater_preference: HeaterPreference
    traits: str

    def __post_init__(self) -> None:
        object.__setattr__(self, "heater_preference", HeaterPreference(self.heater_preference))


@dataclass
class Phase1Context:
    persona: Persona
    family: list[FamilyMemberInfo]
    weather: DailyWeather
    previous_final_temp: int | None = None
    reference: TemperatureReference = DEFAULT_REFERENCE
    # the agent's own phase-1 choice on the previous day, when there was one
    previous_choice: int | None = None


@dataclass(frozen=True)
class Phase1Decision:
    degree_choice: int
    happiness: int
    reasoning: str = ""
    fallback: bool = False


@dataclass(frozen=True)
class FriendInfo:
    name: str
    closeness: int
    family_choice_today: float
    last_three_suggestions: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not MIN_CLOSENESS <= self.closeness <= MAX_CLOSENESS:
            raise ValueError(f"closeness {self.closeness} outside [1, 5]")
        if len(self.last_three_suggestions) > 3:
            raise ValueError("at most three past suggestions")


@dataclass
class Phase2Context:
    persona: Persona
    family_average: float
    friends: list[FriendInfo]
    weather: DailyWeather
    reference: TemperatureReference = DEFAULT_REFERENCE


@dataclass(frozen=True)
class Phase2Decision:
    final_degree: int
    closeness_updates: dict[str, int] = field(default_factory=dict)
    reasoning: str = ""
    fallback: bool = False


class DecisionProvider(Protocol):
    def phase1(self, ctx: Phase1Context) -> Phase1Decision: ...

    def phase2(self, ctx: Phase2Context) -> Phase2Decision: ...
