"""Deterministic rule-based stand-in for the language model.

The mock is a pure function of its context, so whole runs driven by it are
reproducible. It is also the fallback when the HTTP provider cannot produce a
valid answer.
"""

from __future__ import annotations

from heatpoll.decision.types import (
    DEFAULT_VIABLE_BOUNDS,
    Phase1Context,
    Phase1Decision,
    Phase2Context,
    Phase2Decision,
)
from heatpoll.graph import MAX_CLOSENESS, MAX_HAPPINESS, MIN_CLOSENESS, MIN_HAPPINESS, Persona
from heatpoll.rounding import clamp, round_half_away

ASSERTIVE_WEIGHTS = (0.6, 0.2, 0.2)
SELFLESS_WEIGHTS = (0.2, 0.4, 0.4)
DEFAULT_WEIGHTS = (0.4, 0.3, 0.3)


def trait_bias(persona: Persona) -> int:
    """+1 for mostly-positive personalities, -1 for mostly-negative ones."""
    frac = persona.positive_fraction
    return 1 if frac > 0.5 else -1 if frac < 0.5 else 0


class MockProvider:
    """Rule oracle.

    Phase 1: assertive agents pick their own preference midpoint, selfless or
    cooperative ones meet their family halfway, everyone else leans 3:1 towards
    themselves. Happiness drops 2 points per degree between preference and
    yesterday's building temperature, 5 more for easily-angered agents when the
    gap exceeds 3 degrees.

    Phase 2: weighted blend of own midpoint, family average and the
    closeness-weighted mean of friends' latest suggestions. Closeness moves +1
    towards friends whose latest suggestion is within 1 degree of the vote and
    -1 away from those 3 or more degrees off.

    With ``trait_bias`` every closeness step is additionally shifted by +1
    (mostly-positive agents) or -1 (mostly-negative agents), then limited to a
    single step.
    """

    kind = "mock"

    def __init__(self, viable_bounds: tuple[int, int] = DEFAULT_VIABLE_BOUNDS, trait_bias: bool = False):
        self.viable_bounds = tuple(viable_bounds)
        self.trait_bias = trait_bias

    def _clamp_degree(self, x: int) -> int:
        return clamp(x, *self.viable_bounds)

    def phase1(self, ctx: Phase1Context) -> Phase1Decision:
        p = ctx.persona
        ref = ctx.reference
        m = ref.midpoint(p.heater_preference)
        mids = [ref.midpoint(f.heater_preference) for f in ctx.family]
        f = sum(mids) / len(mids) if mids else m
        if p.has("Assertive"):
            raw, why = m, "I stick to my own preference."
        elif p.has("Selfless") or p.has("Cooperative"):
            raw, why = (m + f) / 2, "I meet my family halfway."
        else:
            raw, why = 0.75 * m + 0.25 * f, "I mostly follow my own preference."
        degree = self._clamp_degree(round_half_away(raw))

        if ctx.previous_final_temp is None:
            happiness = MAX_HAPPINESS
        else:
            gap = abs(m - ctx.previous_final_temp)
            penalty = 2 * gap + (5 if p.has("Easily-angered") and gap > 3 else 0)
            happiness = clamp(round_half_away(100 - penalty), MIN_HAPPINESS, MAX_HAPPINESS)
        return Phase1Decision(degree, happiness, why)

    def phase2(self, ctx: Phase2Context) -> Phase2Decision:
        p = ctx.persona
        m = ctx.reference.midpoint(p.heater_preference)
        if p.has("Assertive"):
            w_own, w_fam, w_fr = ASSERTIVE_WEIGHTS
        elif p.has("Selfless"):
            w_own, w_fam, w_fr = SELFLESS_WEIGHTS
        else:
            w_own, w_fam, w_fr = DEFAULT_WEIGHTS

        with_history = [fr for fr in ctx.friends if fr.last_three_suggestions]
        if with_history:
            total = sum(fr.closeness for fr in with_history)
            signal = sum(fr.closeness * fr.last_three_suggestions[-1] for fr in with_history) / total
        else:
            w_fam, w_fr, signal = w_fam + w_fr, 0.0, 0.0
        final = self._clamp_degree(round_half_away(w_own * m + w_fam * ctx.family_average + w_fr * signal))

        bias = trait_bias(p) if self.trait_bias else 0
        updates = {}
        for fr in with_history:
            gap = abs(fr.last_three_suggestions[-1] - final)
            step = 1 if gap <= 1 else -1 if gap >= 3 else 0
            if bias:
                step = clamp(step + bias, -1, 1)
            updates[fr.name] = clamp(fr.closeness + step, MIN_CLOSENESS, MAX_CLOSENESS)
        return Phase2Decision(final, updates, "Blend of my preference, my family and my friends.")
