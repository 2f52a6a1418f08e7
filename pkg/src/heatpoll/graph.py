"""Graph data structures, personas and the network-level metrics collected each day."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterator


class GraphError(Exception):
    pass


class NoFriendEdges(GraphError):
    pass


class UnknownNode(GraphError, KeyError):
    pass


class EmptyGraph(GraphError):
    pass


class Role(str, enum.Enum):
    REPRESENTATIVE = "FamilyRepresentative"
    MEMBER = "FamilyMember"


class EdgeKind(str, enum.Enum):
    FAMILY = "Family"
    FRIEND = "Friend"


class HeaterPreference(str, enum.Enum):
    COLD = "Cold"
    COOL = "Cool"
    NEUTRAL = "Neutral"
    WARM = "Warm"
    HOT = "Hot"


# (dimension, positive adjective, negative adjective), in table order
TRAIT_TABLE: tuple[tuple[str, str, str], ...] = (
    ("angry_hostility", "Easygoing", "Easily-angered"),
    ("impulsiveness", "Self-controlled", "Impulsive"),
    ("assertiveness", "Assertive", "Passive"),
    ("feelings", "Emotional", "Unemotional"),
    ("altruism", "Selfless", "Selfish"),
    ("compliance", "Cooperative", "Uncooperative"),
    ("deliberation", "Cautious", "Careless"),
    ("environmentalism", "Environmentalist", "Not environmentalist"),
    ("frugality", "Frugal", "Wasteful"),
)
TRAIT_DIMENSIONS = tuple(row[0] for row in TRAIT_TABLE)
POSITIVE_ADJECTIVE = {dim: pos for dim, pos, _ in TRAIT_TABLE}
NEGATIVE_ADJECTIVE = {dim: neg for dim, _, neg in TRAIT_TABLE}

MIN_HAPPINESS, MAX_HAPPINESS = 1, 100
MIN_CLOSENESS, MAX_CLOSENESS = 1, 5
STRONG_FRIENDSHIP_THRESHOLD = 3
HISTORY_LENGTH = 3


def validate_traits(traits: dict[str, str]) -> None:
    if set(traits) != set(TRAIT_DIMENSIONS):
        missing = sorted(set(TRAIT_DIMENSIONS) - set(traits))
        extra = sorted(set(traits) - set(TRAIT_DIMENSIONS))
        raise ValueError(f"trait dimensions mismatch: missing={missing} extra={extra}")
    for dim, adj in traits.items():
        if adj not in (POSITIVE_ADJECTIVE[dim], NEGATIVE_ADJECTIVE[dim]):
            raise ValueError(f"{adj!r} is not an adjective of {dim}")


@dataclass
class Persona:
    id: int
    name: str
    age: int
    role: Role
    family_id: int
    traits: dict[str, str]
    heater_preference: HeaterPreference
    happiness: int = MAX_HAPPINESS
    last_choices: list[int] = field(default_factory=list)

    def has(self, adjective: str) -> bool:
        return adjective in self.traits.values()

    def is_positive(self, dimension: str) -> bool:
        return self.traits[dimension] == POSITIVE_ADJECTIVE[dimension]

    @property
    def positive_fraction(self) -> float:
        return sum(self.is_positive(d) for d in TRAIT_DIMENSIONS) / len(TRAIT_DIMENSIONS)

    @property
    def is_representative(self) -> bool:
        return self.role is Role.REPRESENTATIVE

    def trait_list(self) -> list[str]:
        """Adjectives in table order."""
        return [self.traits[d] for d in TRAIT_DIMENSIONS]

    def push_choice(self, degree: int) -> None:
        self.last_choices.append(int(degree))
        del self.last_choices[:-HISTORY_LENGTH]

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "age": self.age,
            "role": self.role.value,
            "family_id": self.family_id,
            "traits": {d: self.traits[d] for d in TRAIT_DIMENSIONS},
            "heater_preference": self.heater_preference.value,
            "happiness": self.happiness,
            "last_choices": list(self.last_choices),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Persona":
        traits = dict(d["traits"])
        validate_traits(traits)
        return cls(
            id=int(d["id"]),
            name=str(d["name"]),
            age=int(d["age"]),
            role=Role(d["role"]),
            family_id=int(d["family_id"]),
            traits=traits,
            heater_preference=HeaterPreference(d["heater_preference"]),
            happiness=int(d.get("happiness", MAX_HAPPINESS)),
            last_choices=[int(c) for c in d.get("last_choices", [])],
        )


@dataclass
class Edge:
    u: int
    v: int
    kind: EdgeKind
    closeness: int | None = None

    def key(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)

    def other(self, node: int) -> int:
        return self.v if node == self.u else self.u

    def to_dict(self) -> dict:
        u, v = self.key()
        return {"u": u, "v": v, "kind": self.kind.value, "closeness": self.closeness}


class SocialGraph:
    """Undirected simple graph with Family/Friend edge tags.

    Edges are stored once and shared between both endpoints' adjacency maps,
    so a closeness update is visible from either side.
    """

    def __init__(self) -> None:
        self.nodes: dict[int, Persona] = {}
        self._adj: dict[int, dict[int, Edge]] = {}

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, node: int) -> bool:
        return node in self.nodes

    def add_node(self, persona: Persona) -> None:
        if persona.id in self.nodes:
            raise ValueError(f"node {persona.id} already present")
        self.nodes[persona.id] = persona
        self._adj[persona.id] = {}

    def add_edge(self, u: int, v: int, kind: EdgeKind, closeness: int | None = None) -> Edge:
        if u == v:
            raise ValueError(f"self-loop on node {u}")
        for n in (u, v):
            if n not in self.nodes:
                raise UnknownNode(n)
        if v in self._adj[u]:
            raise ValueError(f"parallel edge {u}-{v}")
        if kind is EdgeKind.FRIEND:
            if not (self.nodes[u].is_representative and self.nodes[v].is_representative):
                raise ValueError(f"friend edge {u}-{v} must join two representatives")
            if closeness is None or not MIN_CLOSENESS <= closeness <= MAX_CLOSENESS:
                raise ValueError(f"friend closeness {closeness!r} outside [1, 5]")
        else:
            closeness = None
        e = Edge(min(u, v), max(u, v), kind, closeness)
        self._adj[u][v] = e
        self._adj[v][u] = e
        return e

    def edge(self, u: int, v: int) -> Edge:
        try:
            return self._adj[u][v]
        except KeyError:
            raise KeyError(f"no edge {u}-{v}") from None

    def edges(self) -> Iterator[Edge]:
        """All edges in ascending (u, v) order."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield self._adj[u][v]

    def friend_edges(self) -> list[Edge]:
        return [e for e in self.edges() if e.kind is EdgeKind.FRIEND]

    def number_of_edges(self) -> int:
        return sum(len(a) for a in self._adj.values()) // 2

    def degree(self, node: int) -> int:
        if node not in self._adj:
            raise UnknownNode(node)
        return len(self._adj[node])

    def neighbors(self, node: int, kind: EdgeKind | None = None) -> list[int]:
        if node not in self._adj:
            raise UnknownNode(node)
        return sorted(v for v, e in self._adj[node].items() if kind is None or e.kind is kind)

    def friends(self, node: int) -> list[int]:
        return self.neighbors(node, EdgeKind.FRIEND)

    def representatives(self) -> list[int]:
        return sorted(i for i, p in self.nodes.items() if p.is_representative)

    def families(self) -> dict[int, list[int]]:
        """family_id -> ascending member ids (the representative included)."""
        fam: dict[int, list[int]] = {}
        for i in sorted(self.nodes):
            fam.setdefault(self.nodes[i].family_id, []).append(i)
        return dict(sorted(fam.items()))

    def set_closeness(self, u: int, v: int, value: int) -> None:
        e = self.edge(u, v)
        if e.kind is not EdgeKind.FRIEND:
            raise ValueError(f"edge {u}-{v} is a family edge and carries no closeness")
        if not MIN_CLOSENESS <= value <= MAX_CLOSENESS:
            raise ValueError(f"closeness {value} outside [1, 5]")
        e.closeness = int(value)

    def copy(self) -> "SocialGraph":
        return SocialGraph.from_dict(self.to_dict())

    def to_dict(self) -> dict:
        return {
            "nodes": [self.nodes[i].to_dict() for i in sorted(self.nodes)],
            "edges": [e.to_dict() for e in self.edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "SocialGraph":
        g = cls()
        for nd in d["nodes"]:
            g.add_node(Persona.from_dict(nd))
        for ed in d["edges"]:
            g.add_edge(int(ed["u"]), int(ed["v"]), EdgeKind(ed["kind"]), ed.get("closeness"))
        return g

    @classmethod
    def from_json(cls, text: str) -> "SocialGraph":
        return cls.from_dict(json.loads(text))


def average_friend_weight(graph: SocialGraph) -> float:
    weights = [e.closeness for e in graph.friend_edges()]
    if not weights:
        raise NoFriendEdges("graph has no friend edges")
    return sum(weights) / len(weights)


def strong_friendship_count(graph: SocialGraph) -> int:
    return sum(1 for e in graph.friend_edges() if e.closeness > STRONG_FRIENDSHIP_THRESHOLD)


def degree_centrality(graph: SocialGraph, node: int) -> float:
    """Incident edges of either kind over N - 1."""
    if node not in graph:
        raise UnknownNode(node)
    n = len(graph)
    if n < 2:
        raise ValueError("degree centrality needs at least two nodes")
    return graph.degree(node) / (n - 1)


def average_happiness(graph: SocialGraph) -> float:
    if not graph.nodes:
        raise EmptyGraph("graph has no nodes")
    return sum(p.happiness for p in graph.nodes.values()) / len(graph.nodes)
