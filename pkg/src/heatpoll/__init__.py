"""Personality-driven heating negotiation on a family-extended social network."""

__version__ = "0.1.0"

from heatpoll.graph import (
    Edge,
    EdgeKind,
    HeaterPreference,
    Persona,
    Role,
    SocialGraph,
    average_friend_weight,
    average_happiness,
    degree_centrality,
    strong_friendship_count,
)
from heatpoll.network import BuildConfig, assign_attributes, build_network, expand_families, load_base_network

__all__ = [
    "__version__",
    "BuildConfig",
    "Edge",
    "EdgeKind",
    "HeaterPreference",
    "Persona",
    "Role",
    "SocialGraph",
    "assign_attributes",
    "average_friend_weight",
    "average_happiness",
    "build_network",
    "degree_centrality",
    "expand_families",
    "load_base_network",
    "strong_friendship_count",
]
