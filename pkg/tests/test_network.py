import random

import networkx as nx
import pytest

from heatpoll.graph import POSITIVE_ADJECTIVE, EdgeKind, Role, TRAIT_DIMENSIONS
from heatpoll.network import (
    KARATE_EDGES,
    AlreadyExpanded,
    BuildConfig,
    assign_attributes,
    build_network,
    draw_family_sizes,
    expand_families,
    load_base_network,
)


def test_base_network_counts():
    g = load_base_network()
    assert len(g.nodes) == 34
    assert g.number_of_edges() == 78
    assert all(p.role is Role.REPRESENTATIVE for p in g.nodes.values())
    assert all(e.kind is EdgeKind.FRIEND for e in g.edges())


def test_base_weights_match_networkx_clamped():
    ref = nx.karate_club_graph()
    g = load_base_network()
    assert {tuple(sorted(e)) for e in ref.edges} == {e.key() for e in g.edges()}
    for u, v, data in ref.edges(data=True):
        assert g.edge(u, v).closeness == min(5, max(1, data["weight"]))


def test_constant_closeness():
    g = load_base_network(3)
    assert {e.closeness for e in g.edges()} == {3}


def test_expand_identity_and_full():
    cfg = BuildConfig(seed=1)
    g = expand_families(load_base_network(), cfg, sizes=[0] * 34)
    assert (len(g.nodes), g.number_of_edges()) == (34, 78)
    g = expand_families(load_base_network(), cfg, sizes=[4] * 34)
    assert (len(g.nodes), g.number_of_edges()) == (170, 418)


def test_expand_twice_rejected():
    cfg = BuildConfig(seed=1)
    g = expand_families(load_base_network(), cfg)
    with pytest.raises(AlreadyExpanded):
        expand_families(g, cfg)


def test_count_formula_over_seeds():
    for seed in range(200):
        cfg = BuildConfig(seed=seed)
        sizes = draw_family_sizes(cfg, cfg.rng(), 34)
        g = expand_families(load_base_network(), cfg, sizes=sizes)
        assert len(g.nodes) == 34 + sum(sizes)
        assert g.number_of_edges() == 78 + sum(n * (n + 1) // 2 for n in sizes)
        assert all(0 <= n <= 4 for n in sizes)


def test_full_scale_seed(full_graph):
    assert len(full_graph.nodes) == 116
    assert full_graph.number_of_edges() == 246


def test_families_are_cliques(full_graph):
    g = full_graph
    for rep, members in g.families().items():
        assert g.nodes[rep].is_representative
        for a in members:
            assert g.nodes[a].family_id == rep
            for b in members:
                if a < b:
                    assert g.edge(a, b).kind is EdgeKind.FAMILY
                    assert g.edge(a, b).closeness is None


@pytest.mark.parametrize("pct,positive", [(1.0, True), (0.0, False)])
def test_trait_extremes(pct, positive):
    g = build_network(BuildConfig(seed=3, positive_trait_pct=pct))
    for p in g.nodes.values():
        assert all(p.is_positive(d) is positive for d in TRAIT_DIMENSIONS)
        assert p.happiness == 100 and p.last_choices == []


def test_trait_frequency_converges():
    p = 0.3
    g = build_network(BuildConfig(seed=11, positive_trait_pct=p, max_family_members=4))
    draws = [q.is_positive(d) for q in g.nodes.values() for d in TRAIT_DIMENSIONS]
    extra = 0
    while len(draws) < 10_000:
        extra += 1
        g = build_network(BuildConfig(seed=11 + extra, positive_trait_pct=p))
        draws += [q.is_positive(d) for q in g.nodes.values() for d in TRAIT_DIMENSIONS]
    n = len(draws)
    sigma = (p * (1 - p) / n) ** 0.5
    assert abs(sum(draws) / n - p) < 3 * sigma


def test_determinism_and_ranges():
    a = build_network(BuildConfig(seed=7)).to_json()
    b = build_network(BuildConfig(seed=7)).to_json()
    assert a == b
    assert build_network(BuildConfig(seed=8)).to_json() != a
    g = build_network(BuildConfig(seed=7))
    for p in g.nodes.values():
        lo, hi = (25, 75) if p.is_representative else (10, 80)
        assert lo <= p.age <= hi


def test_name_pool_exhaustion_suffixes_ids():
    g = build_network(BuildConfig(seed=2, name_pool=["Ann", "Bob"], max_family_members=0))
    names = [p.name for p in g.nodes.values()]
    assert len(set(names)) == len(names)
    assert sum("-" in n for n in names) == 32


def test_config_validation_names_key():
    with pytest.raises(ValueError, match="positive_trait_pct"):
        BuildConfig(positive_trait_pct=1.5)
    with pytest.raises(ValueError, match="max_family_members"):
        BuildConfig(max_family_members=-1)
    with pytest.raises(ValueError, match="initial_closeness"):
        BuildConfig(initial_closeness=9)


def test_assign_attributes_uses_given_generator():
    cfg = BuildConfig(seed=5)
    g1 = assign_attributes(load_base_network(), cfg, rng=random.Random(99))
    g2 = assign_attributes(load_base_network(), cfg, rng=random.Random(99))
    assert g1.to_json() == g2.to_json()


def test_embedded_edge_list_shape():
    assert len(KARATE_EDGES) == 78
    assert POSITIVE_ADJECTIVE["assertiveness"] == "Assertive"
