import random

import pytest

from heatpoll.decision import MockProvider, Phase1Decision, Phase2Decision
from heatpoll.engine import SimConfig, compute_cost, run_day, run_simulation
from heatpoll.graph import EdgeKind, Role, SocialGraph, average_happiness
from heatpoll.network import BuildConfig, build_network

from conftest import day, make_persona


@pytest.mark.parametrize("args,expected", [((21, -5, 1), 26.0), ((22, 22, 1), 0.0), ((22, 19, 2), 6.0)])
def test_compute_cost(args, expected):
    assert compute_cost(*args) == expected


def uniform_graph(**persona_kw):
    """116-node topology with every persona replaced by the same template."""
    g = build_network(BuildConfig(seed=1940))
    for i, p in list(g.nodes.items()):
        q = make_persona(i, role=p.role, family_id=p.family_id, **persona_kw)
        g.nodes[i] = q
    return g


def test_neutral_assertive_everyone_picks_22(weather):
    g = uniform_graph(pref="Neutral", positive=("assertiveness",))
    out = run_day(g, weather[0], MockProvider())
    assert set(d.degree_choice for d in out.phase1.values()) == {22}
    assert set(out.rep_suggestions.values()) == {22}
    assert out.building_setpoint == 22
    assert out.cost == abs(22 - weather[0].temp_out)


def test_day0_keeps_happiness(full_graph, weather):
    run_day(full_graph, weather[0], MockProvider())
    assert all(p.happiness == 100 for p in full_graph.nodes.values())


class Scripted:
    """Provider returning fixed suggestions per representative."""

    kind = "scripted"

    def __init__(self, finals):
        self.finals = finals

    def phase1(self, ctx):
        return Phase1Decision(22, 100)

    def phase2(self, ctx):
        return Phase2Decision(self.finals[ctx.persona.id])


def two_rep_graph():
    g = SocialGraph()
    g.add_node(make_persona(0))
    g.add_node(make_persona(1))
    g.add_edge(0, 1, EdgeKind.FRIEND, 3)
    return g


def test_setpoint_rounds_half_away():
    out = run_day(two_rep_graph(), day(0.0), Scripted({0: 21, 1: 22}))
    assert out.building_setpoint == 22


def test_family_average_and_singletons(full_graph, weather):
    out = run_day(full_graph, weather[0], MockProvider())
    for fid, members in full_graph.families().items():
        mean = sum(out.phase1[i].degree_choice for i in members) / len(members)
        assert out.family_averages[fid] == pytest.approx(mean, abs=0.05 + 1e-9)
        if len(members) == 1:
            assert out.family_averages[fid] == out.phase1[fid].degree_choice


def test_permuting_representatives_changes_nothing(weather):
    base = build_network(BuildConfig(seed=1940))
    reps = base.representatives()
    rng = random.Random(0)
    ref_graph, alt_graph = base.copy(), base.copy()
    prev_a = prev_b = None
    for d in weather[:6]:
        order = reps[:]
        rng.shuffle(order)
        a = run_day(ref_graph, d, MockProvider(trait_bias=True), prev_a)
        b = run_day(alt_graph, d, MockProvider(trait_bias=True), prev_b, rep_order=order)
        assert a == b
        prev_a, prev_b = a, b
    assert ref_graph.to_json() == alt_graph.to_json()


def test_rep_order_must_be_permutation(full_graph, weather):
    with pytest.raises(ValueError):
        run_day(full_graph, weather[0], MockProvider(), rep_order=[0, 1])


def test_updates_applied_after_phase2_last_writer_wins():
    class Updates:
        kind = "x"

        def phase1(self, ctx):
            return Phase1Decision(22, 100)

        def phase2(self, ctx):
            # both ends of the shared edge see the pre-update value 3
            assert [f.closeness for f in ctx.friends] == [3]
            level = 1 if ctx.persona.id == 0 else 5
            return Phase2Decision(22, {ctx.friends[0].name: level})

    g = two_rep_graph()
    run_day(g, day(), Updates())
    assert g.edge(0, 1).closeness == 5


def test_history_is_bounded(full_graph, weather):
    prev = None
    for i, d in enumerate(weather[:5]):
        prev = run_day(full_graph, d, MockProvider(), prev)
        for r in full_graph.representatives():
            assert len(full_graph.nodes[r].last_choices) == min(i + 1, 3)
        for p in full_graph.nodes.values():
            if p.role is Role.MEMBER:
                assert p.last_choices == []


def test_simulation_invariants(full_graph, weather):
    res = run_simulation(SimConfig(days=10, cost_constant=1.5), full_graph, weather, MockProvider(trait_bias=True))
    assert len(res.network) == 10
    assert len(res.agents) == 10 * len(full_graph.nodes)
    for out, net in zip(res.outcomes, res.network):
        s = out.rep_suggestions.values()
        assert min(s) <= out.building_setpoint <= max(s)
        assert net.cost == abs(net.setpoint - net.temp_out) * 1.5
    for e in full_graph.friend_edges():
        assert 1 <= e.closeness <= 5
    assert all(1 <= p.happiness <= 100 for p in full_graph.nodes.values())
    assert res.network[-1].avg_happiness == average_happiness(full_graph)


def test_cost_falls_while_setpoint_constant(weather):
    g = uniform_graph(pref="Neutral", positive=("assertiveness",))
    res = run_simulation(SimConfig(days=30), g, weather, MockProvider())
    costs = [n.cost for n in res.network]
    assert all(n.setpoint == 22 for n in res.network)
    assert sum(costs[15:]) < sum(costs[:15])


def test_parallel_matches_serial(weather):
    a = build_network(BuildConfig(seed=4))
    b = a.copy()
    ra = run_simulation(SimConfig(days=4), a, weather, MockProvider())
    rb = run_simulation(SimConfig(days=4, max_workers=4), b, weather, MockProvider())
    assert ra.outcomes == rb.outcomes


def test_not_enough_weather(full_graph, weather):
    with pytest.raises(ValueError):
        run_simulation(SimConfig(days=31), full_graph, weather, MockProvider())


def test_sim_config_validation():
    with pytest.raises(ValueError, match="days"):
        SimConfig(days=0)
    with pytest.raises(ValueError, match="viable_bounds"):
        SimConfig(viable_bounds=(30, 10))
