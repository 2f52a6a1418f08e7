"""Daily two-phase negotiation: family poll, building poll, setpoint and cost."""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

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
from heatpoll.graph import (
    MAX_CLOSENESS,
    MAX_HAPPINESS,
    MIN_CLOSENESS,
    MIN_HAPPINESS,
    Persona,
    SocialGraph,
    average_friend_weight,
    average_happiness,
    degree_centrality,
    strong_friendship_count,
)
from heatpoll.rounding import clamp, round_half_away, round_half_away_to
from heatpoll.store import AgentDayRecord, NetworkDayRecord, RunStore
from heatpoll.weather import DailyWeather

log = logging.getLogger(__name__)


class ProviderFailure(RuntimeError):
    pass


@dataclass
class SimConfig:
    days: int = 30
    cost_constant: float = 1.0
    viable_bounds: tuple[int, int] = DEFAULT_VIABLE_BOUNDS
    reference: TemperatureReference = DEFAULT_REFERENCE
    seed: int = 0
    max_workers: int = 1
    positive_trait_pct: float | None = None

    def __post_init__(self) -> None:
        if self.days < 1:
            raise ValueError("days: must be >= 1")
        lo, hi = self.viable_bounds
        if not lo < hi:
            raise ValueError("viable_bounds: min must be below max")
        if self.max_workers < 1:
            raise ValueError("max_workers: must be >= 1")


@dataclass
class DayOutcome:
    day_index: int
    temp_out: float
    family_averages: dict[int, float]
    rep_suggestions: dict[int, int]
    building_setpoint: int
    cost: float
    phase1: dict[int, Phase1Decision] = field(default_factory=dict, repr=False)
    phase2: dict[int, Phase2Decision] = field(default_factory=dict, repr=False)


def compute_cost(setpoint: float, temp_out: float, C: float = 1.0) -> float:
    return abs(setpoint - temp_out) * C


def trait_summary(p: Persona) -> str:
    return ", ".join(p.trait_list())


def friend_labels(graph: SocialGraph, rep: int) -> dict[int, str]:
    """Friend id -> display name, disambiguated by id when names collide."""
    ids = graph.friends(rep)
    names = [graph.nodes[i].name for i in ids]
    return {i: n if names.count(n) == 1 else f"{n} #{i}" for i, n in zip(ids, names)}


def _map(fn: Callable, items: list, workers: int) -> list:
    try:
        if workers <= 1 or len(items) <= 1:
            return [fn(x) for x in items]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    except Exception as exc:
        raise ProviderFailure(f"decision provider failed: {exc!r}") from exc


def _snapshot(p: Persona) -> Persona:
    return Persona.from_dict(p.to_dict())


def run_day(
    graph: SocialGraph,
    weather: DailyWeather,
    provider: DecisionProvider,
    prev: DayOutcome | None = None,
    *,
    cost_constant: float = 1.0,
    reference: TemperatureReference = DEFAULT_REFERENCE,
    rep_order: Sequence[int] | None = None,
    max_workers: int = 1,
) -> DayOutcome:
    """Advance ``graph`` by one day and return what happened.

    Decisions within a phase see only state from before the phase, so the
    processing order of agents (``rep_order`` for phase 2) cannot change the
    outcome. Mutations happen after each phase in ascending id order.
    """
    families = graph.families()
    prev_final = prev.building_setpoint if prev is not None else None

    # phase 1: family poll
    order1 = [i for fam in families.values() for i in fam]
    ctxs1 = []
    for i in order1:
        p = graph.nodes[i]
        fam = [
            FamilyMemberInfo(graph.nodes[j].name, graph.nodes[j].heater_preference, trait_summary(graph.nodes[j]))
            for j in families[p.family_id]
            if j != i
        ]
        prev_choice = prev.phase1[i].degree_choice if prev is not None and i in prev.phase1 else None
        ctxs1.append(Phase1Context(_snapshot(p), fam, weather, prev_final, reference, prev_choice))
    decisions1 = dict(zip(order1, _map(provider.phase1, ctxs1, max_workers)))

    for i in sorted(decisions1):
        graph.nodes[i].happiness = clamp(int(decisions1[i].happiness), MIN_HAPPINESS, MAX_HAPPINESS)
    family_averages = {
        fid: round_half_away_to(math.fsum(decisions1[i].degree_choice for i in members) / len(members), 1)
        for fid, members in families.items()
    }

    # phase 2: building poll
    reps = graph.representatives()
    order2 = list(rep_order) if rep_order is not None else reps
    if sorted(order2) != reps:
        raise ValueError("rep_order must be a permutation of the representatives")
    labels = {r: friend_labels(graph, r) for r in reps}
    ctxs2 = []
    for r in order2:
        friends = [
            FriendInfo(
                name=labels[r][f],
                closeness=graph.edge(r, f).closeness,
                family_choice_today=family_averages[graph.nodes[f].family_id],
                last_three_suggestions=tuple(graph.nodes[f].last_choices),
            )
            for f in graph.friends(r)
        ]
        ctxs2.append(Phase2Context(_snapshot(graph.nodes[r]), family_averages[graph.nodes[r].family_id], friends, weather, reference))
    decisions2 = dict(zip(order2, _map(provider.phase2, ctxs2, max_workers)))

    staged = []
    for r in reps:
        by_name = {name: f for f, name in labels[r].items()}
        for name, level in decisions2[r].closeness_updates.items():
            if name in by_name:
                staged.append((r, by_name[name], clamp(round_half_away(level), MIN_CLOSENESS, MAX_CLOSENESS)))
    # last writer in ascending updater id wins on a shared edge
    for r, f, level in sorted(staged, key=lambda s: (s[0], s[1])):
        graph.set_closeness(r, f, level)

    suggestions = {r: int(decisions2[r].final_degree) for r in reps}
    setpoint = round_half_away(math.fsum(suggestions.values()) / len(suggestions))
    cost = compute_cost(setpoint, weather.temp_out, cost_constant)

    for r in reps:
        graph.nodes[r].push_choice(suggestions[r])

    return DayOutcome(
        day_index=weather.day_index,
        temp_out=weather.temp_out,
        family_averages=family_averages,
        rep_suggestions=suggestions,
        building_setpoint=setpoint,
        cost=cost,
        phase1=dict(sorted(decisions1.items())),
        phase2=dict(sorted(decisions2.items())),
    )


@dataclass
class SimulationResult:
    outcomes: list[DayOutcome]
    network: list[NetworkDayRecord]
    agents: list[AgentDayRecord]
    fallbacks: dict[str, int]


def network_record(run_id: str, graph: SocialGraph, outcome: DayOutcome, pct: float | None) -> NetworkDayRecord:
    friends = graph.friend_edges()
    return NetworkDayRecord(
        run_id=run_id,
        day_index=outcome.day_index,
        avg_friend_weight=average_friend_weight(graph) if friends else float("nan"),
        strong_friendships=strong_friendship_count(graph),
        avg_happiness=average_happiness(graph),
        temp_out=outcome.temp_out,
        setpoint=outcome.building_setpoint,
        cost=outcome.cost,
        positive_trait_pct=float("nan") if pct is None else float(pct),
    )


def agent_records(run_id: str, graph: SocialGraph, outcome: DayOutcome, centrality: dict[int, float]) -> list[AgentDayRecord]:
    out = []
    for i in sorted(graph.nodes):
        p = graph.nodes[i]
        d1 = outcome.phase1[i]
        d2 = outcome.phase2.get(i)
        out.append(
            AgentDayRecord(
                run_id=run_id,
                day_index=outcome.day_index,
                agent_id=i,
                role=p.role.value,
                family_id=p.family_id,
                degree_choice=d1.degree_choice,
                final_degree=d2.final_degree if d2 else None,
                happiness=p.happiness,
                traits=dict(p.traits),
                heater_preference=p.heater_preference.value,
                degree_centrality=centrality[i],
                fallback_used=d1.fallback or bool(d2 and d2.fallback),
                reasoning=d1.reasoning,
                final_reasoning=d2.reasoning if d2 else None,
            )
        )
    return out


def run_simulation(
    config: SimConfig,
    graph: SocialGraph,
    weather: Sequence[DailyWeather],
    provider: DecisionProvider,
    store: RunStore | None = None,
    run_id: str | None = None,
) -> SimulationResult:
    """Run ``config.days`` days, recording one network row and |V| agent rows per day.

    ``graph`` is mutated in place. With a ``store`` every record and a graph
    snapshot per day are persisted as they are produced.
    """
    if len(weather) < config.days:
        raise ValueError(f"need {config.days} days of weather, have {len(weather)}")
    run_id = run_id or (store.run_id if store else "run")
    centrality = {i: degree_centrality(graph, i) for i in graph.nodes}
    if store:
        store.write_snapshot(graph)
    outcomes, network, agents = [], [], []
    fallbacks = {"phase1": 0, "phase2": 0}
    prev = None
    for day in weather[: config.days]:
        outcome = run_day(
            graph,
            day,
            provider,
            prev,
            cost_constant=config.cost_constant,
            reference=config.reference,
            max_workers=config.max_workers,
        )
        fallbacks["phase1"] += sum(d.fallback for d in outcome.phase1.values())
        fallbacks["phase2"] += sum(d.fallback for d in outcome.phase2.values())
        net = network_record(run_id, graph, outcome, config.positive_trait_pct)
        recs = agent_records(run_id, graph, outcome, centrality)
        if store:
            for rec in recs:
                store.append_agent_day(rec)
            store.append_network_day(net)
            store.write_snapshot(graph, outcome.day_index)
        log.info("day %d: setpoint %d, cost %.2f", outcome.day_index, outcome.building_setpoint, outcome.cost)
        outcomes.append(outcome)
        network.append(net)
        agents.extend(recs)
        prev = outcome
    return SimulationResult(outcomes, network, agents, fallbacks)
