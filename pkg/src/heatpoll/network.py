"""Build the simulation network: Karate Club base graph, family cliques, persona attributes."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from heatpoll.graph import (
    MAX_CLOSENESS,
    MIN_CLOSENESS,
    NEGATIVE_ADJECTIVE,
    POSITIVE_ADJECTIVE,
    TRAIT_DIMENSIONS,
    EdgeKind,
    HeaterPreference,
    Persona,
    Role,
    SocialGraph,
)
from heatpoll.rounding import clamp

# Zachary's karate club, 34 nodes / 78 edges, with the interaction counts of
# the weighted (ZACHC) matrix as edge weights. Node ids are 0-based.
KARATE_EDGES: tuple[tuple[int, int, int], ...] = (
    (0, 1, 4), (0, 2, 5), (0, 3, 3), (0, 4, 3), (0, 5, 3), (0, 6, 3), (0, 7, 2),
    (0, 8, 2), (0, 10, 2), (0, 11, 3), (0, 12, 1), (0, 13, 3), (0, 17, 2),
    (0, 19, 2), (0, 21, 2), (0, 31, 2), (1, 2, 6), (1, 3, 3), (1, 7, 4),
    (1, 13, 5), (1, 17, 1), (1, 19, 2), (1, 21, 2), (1, 30, 2), (2, 3, 3),
    (2, 7, 4), (2, 8, 5), (2, 9, 1), (2, 13, 3), (2, 27, 2), (2, 28, 2),
    (2, 32, 2), (3, 7, 3), (3, 12, 3), (3, 13, 3), (4, 6, 2), (4, 10, 3),
    (5, 6, 5), (5, 10, 3), (5, 16, 3), (6, 16, 3), (8, 30, 3), (8, 32, 3),
    (8, 33, 4), (9, 33, 2), (13, 33, 3), (14, 32, 3), (14, 33, 2), (15, 32, 3),
    (15, 33, 4), (18, 32, 1), (18, 33, 2), (19, 33, 1), (20, 32, 3), (20, 33, 1),
    (22, 32, 2), (22, 33, 3), (23, 25, 5), (23, 27, 4), (23, 29, 3), (23, 32, 5),
    (23, 33, 4), (24, 25, 2), (24, 27, 3), (24, 31, 2), (25, 31, 7), (26, 29, 4),
    (26, 33, 2), (27, 33, 4), (28, 31, 2), (28, 33, 2), (29, 32, 4), (29, 33, 2),
    (30, 32, 3), (30, 33, 3), (31, 32, 4), (31, 33, 4), (32, 33, 5),
)
KARATE_NODES = 34

# Seed whose default family draw gives 82 members: 116 nodes and 246 edges.
FULL_SCALE_SEED = 1940

BASE_CLOSENESS = "base"


class AlreadyExpanded(Exception):
    pass


@functools.lru_cache(maxsize=1)
def _bundled_names() -> tuple[str, ...]:
    text = resources.files("heatpoll").joinpath("data/names.txt").read_text(encoding="utf-8")
    return tuple(line.strip() for line in text.splitlines() if line.strip())


def default_name_pool() -> list[str]:
    return list(_bundled_names())


def read_name_pool(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        names = [line.strip() for line in fh if line.strip()]
    if not names:
        raise ValueError(f"name pool {path} is empty")
    return names


@dataclass
class BuildConfig:
    seed: int = 0
    positive_trait_pct: float = 0.5
    max_family_members: int = 4
    name_pool: list[str] = field(default_factory=default_name_pool)
    age_range_rep: tuple[int, int] = (25, 75)
    age_range_member: tuple[int, int] = (10, 80)
    # "base" clamps the karate weights into [1, 5]; an int k sets every edge to k
    initial_closeness: str | int = BASE_CLOSENESS
    heater_preferences: tuple[HeaterPreference, ...] = tuple(HeaterPreference)

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed: must be an unsigned 64-bit integer")
        if not 0.0 <= self.positive_trait_pct <= 1.0:
            raise ValueError("positive_trait_pct: must lie in [0, 1]")
        if self.max_family_members < 0:
            raise ValueError("max_family_members: must be >= 0")
        for key in ("age_range_rep", "age_range_member"):
            lo, hi = getattr(self, key)
            if lo > hi:
                raise ValueError(f"{key}: min exceeds max")
        if self.initial_closeness != BASE_CLOSENESS:
            if not isinstance(self.initial_closeness, int) or not (
                MIN_CLOSENESS <= self.initial_closeness <= MAX_CLOSENESS
            ):
                raise ValueError("initial_closeness: must be 'base' or an integer in [1, 5]")
        if not self.name_pool:
            raise ValueError("name_pool: must not be empty")
        self.heater_preferences = tuple(HeaterPreference(h) for h in self.heater_preferences)
        if not self.heater_preferences:
            raise ValueError("heater_preferences: must not be empty")

    def rng(self) -> random.Random:
        return random.Random(self.seed)


def _placeholder(node: int, role: Role, family_id: int) -> Persona:
    return Persona(
        id=node,
        name=f"node-{node}",
        age=0,
        role=role,
        family_id=family_id,
        traits=dict(POSITIVE_ADJECTIVE),
        heater_preference=HeaterPreference.NEUTRAL,
    )


def load_base_network(initial_closeness: str | int = BASE_CLOSENESS) -> SocialGraph:
    g = SocialGraph()
    for i in range(KARATE_NODES):
        g.add_node(_placeholder(i, Role.REPRESENTATIVE, i))
    for u, v, w in KARATE_EDGES:
        k = clamp(w, MIN_CLOSENESS, MAX_CLOSENESS) if initial_closeness == BASE_CLOSENESS else int(initial_closeness)
        g.add_edge(u, v, EdgeKind.FRIEND, k)
    return g


def draw_family_sizes(config: BuildConfig, rng: random.Random, n_reps: int) -> list[int]:
    return [rng.randint(0, config.max_family_members) for _ in range(n_reps)]


def expand_families(
    graph: SocialGraph,
    config: BuildConfig,
    rng: random.Random | None = None,
    sizes: Sequence[int] | None = None,
) -> SocialGraph:
    """Attach n_r members to every representative r and join each family into a clique.

    Mutates and returns ``graph``. ``sizes`` bypasses the random draw.
    """
    if any(not p.is_representative for p in graph.nodes.values()):
        raise AlreadyExpanded("graph already contains family members")
    reps = graph.representatives()
    if sizes is None:
        sizes = draw_family_sizes(config, rng or config.rng(), len(reps))
    if len(sizes) != len(reps):
        raise ValueError(f"need {len(reps)} family sizes, got {len(sizes)}")
    next_id = max(graph.nodes) + 1
    for rep, n in zip(reps, sizes):
        clique = [rep]
        for _ in range(int(n)):
            graph.add_node(_placeholder(next_id, Role.MEMBER, rep))
            clique.append(next_id)
            next_id += 1
        for a in range(len(clique)):
            for b in range(a + 1, len(clique)):
                graph.add_edge(clique[a], clique[b], EdgeKind.FAMILY)
    return graph


def _unique_names(pool: list[str], ids: list[int], rng: random.Random) -> dict[int, str]:
    shuffled = list(pool)
    rng.shuffle(shuffled)
    names = {}
    for k, node in enumerate(ids):
        base = shuffled[k % len(shuffled)]
        names[node] = base if k < len(shuffled) else f"{base}-{node}"
    return names


def assign_attributes(
    graph: SocialGraph, config: BuildConfig, rng: random.Random | None = None
) -> SocialGraph:
    """Draw name, age, heater preference and the nine trait adjectives for every node.

    Draw order: name pool shuffle, then per node in ascending id: age,
    heater preference, traits in table order.
    """
    rng = rng or config.rng()
    ids = sorted(graph.nodes)
    names = _unique_names(config.name_pool, ids, rng)
    for node in ids:
        p = graph.nodes[node]
        lo, hi = config.age_range_rep if p.is_representative else config.age_range_member
        p.name = names[node]
        p.age = rng.randint(lo, hi)
        p.heater_preference = config.heater_preferences[rng.randrange(len(config.heater_preferences))]
        p.traits = {
            d: POSITIVE_ADJECTIVE[d] if rng.random() < config.positive_trait_pct else NEGATIVE_ADJECTIVE[d]
            for d in TRAIT_DIMENSIONS
        }
        p.happiness = 100
        p.last_choices = []
    return graph


def build_network(config: BuildConfig, sizes: Sequence[int] | None = None) -> SocialGraph:
    """Base graph -> families -> attributes, all from one generator seeded by ``config.seed``."""
    rng = config.rng()
    g = load_base_network(config.initial_closeness)
    expand_families(g, config, rng=rng, sizes=sizes)
    return assign_attributes(g, config, rng=rng)
