"""Prompt templates for the family poll (phase 1) and the building poll (phase 2).

Both builders are pure: identical contexts give byte-identical text.
"""

from __future__ import annotations

from heatpoll.decision.types import Phase1Context, Phase2Context, TemperatureReference
from heatpoll.graph import Persona

PHASE1_EXAMPLE = (
    '{"reasoning": "I prefer a neutral temperature, but my daughter likes it warm and it is '
    'cold outside, so I am fine going slightly higher than usual.", "degree": 23, "happiness": 85}'
)
PHASE2_EXAMPLE = (
    '{"reasoning": "Most of my friends and my family want around 22 degrees. Sam keeps asking '
    'for much higher temperatures, so I feel less close to them.", "final_degree": 22, '
    '"closeness_updates": {"Kim": 4, "Sam": 2}}'
)
PHASE2_EXAMPLE_ALONE = (
    '{"reasoning": "My family wants around 22 degrees and I am happy to go along with that.", '
    '"final_degree": 22, "closeness_updates": {}}'
)


def _fmt_temp(x: float) -> str:
    """Whole numbers without a decimal point, everything else with one decimal."""
    return f"{x:.0f}" if float(x).is_integer() else f"{x:.1f}"


def _persona_intro(p: Persona) -> str:
    role = "the family representative" if p.is_representative else "a family member"
    return (
        f"You are {p.name}, a {p.age}-year-old resident of an apartment building with a shared "
        f"central heating system. You are {role} of your household.\n"
        f"Your personality traits: {', '.join(p.trait_list())}.\n"
        f"Your heater preference: {p.heater_preference.value}."
    )


def _reference_table(ref: TemperatureReference) -> str:
    lines = ["Heater preference reference table:"]
    for cat, (lo, hi) in ref.ranges:
        lines.append(f"- {cat.value}: {lo}-{hi} °C")
    return "\n".join(lines)


def build_phase1_prompt(ctx: Phase1Context) -> str:
    p = ctx.persona
    day0 = ctx.previous_final_temp is None
    parts = [
        _persona_intro(p)
        + "\nToday your household decides on a temperature for the central heating system. "
        "Act as this person and decide as they would.",
    ]

    factors = [
        "Your own heater preference.",
        "The heater preferences of your family members.",
        "Your personality traits.",
        "The temperature outside.",
    ]
    if not day0:
        factors.append("The temperature that was finally set in the building yesterday.")
    parts.append("Decision factors:\n" + "\n".join(f"{i}. {f}" for i, f in enumerate(factors, 1)))

    if ctx.family:
        fam = "\n".join(
            f"- {m.name}: prefers {m.heater_preference.value} (traits: {m.traits})" for m in ctx.family
        )
        parts.append("Your family members' heater preferences:\n" + fam)
    else:
        parts.append("You live alone, so only your own preference counts in the family decision.")

    parts.append(f"Your current happiness level: {p.happiness} (on a scale from 1 to 100).")
    parts.append(
        f"Weather: the average outside temperature today ({ctx.weather.date.isoformat()}) "
        f"is {ctx.weather.temp_display} °C."
    )
    if not day0:
        prev = f"Yesterday the building temperature was finally set to {ctx.previous_final_temp} °C."
        if ctx.previous_choice is not None:
            prev += f" Your own choice yesterday was {ctx.previous_choice} °C."
        parts.append(prev)
    parts.append(_reference_table(ctx.reference))

    if day0:
        happiness_task = "2. State your current happiness level as an integer from 1 to 100."
    else:
        happiness_task = (
            "2. Update your happiness level (integer from 1 to 100) with respect to your previous "
            "day's choice and the final temperature set in the building yesterday."
        )
    parts.append(
        "Tasks:\n"
        "1. Choose the heater temperature you want for today as a whole number of degrees "
        "Celsius, using the reference table.\n" + happiness_task
    )
    parts.append("Example output:\n" + PHASE1_EXAMPLE)
    parts.append(
        'Respond with a single JSON object with the keys "reasoning", "degree" and "happiness" '
        "and nothing else."
    )
    return "\n\n".join(parts) + "\n"


def build_phase2_prompt(ctx: Phase2Context) -> str:
    p = ctx.persona
    parts = [
        _persona_intro(p)
        + "\nYour household has made its choice. As the family representative you now cast your "
        "household's vote in the building poll. The building temperature will be the average of "
        "all representatives' votes.",
    ]
    if ctx.friends:
        closeness = "\n".join(f"- {f.name}: {f.closeness}" for f in ctx.friends)
        family = "\n".join(f"- {f.name}'s family: {_fmt_temp(f.family_choice_today)} °C" for f in ctx.friends)
        history = "\n".join(
            f"- {f.name}: " + (", ".join(f"{d} °C" for d in f.last_three_suggestions) or "none yet")
            for f in ctx.friends
        )
        parts.append("Your closeness levels with your friends (1 = distant, 5 = very close):\n" + closeness)
        parts.append("Your friends' family temperature choices for today:\n" + family)
        parts.append("Your friends' building poll suggestions for the last three days (oldest first):\n" + history)
    else:
        parts.append("You have no friends in the building, so no friend information is available.")
    lo, hi = ctx.reference.range_of(p.heater_preference)
    parts.append(
        f"Your own heater preference: {p.heater_preference.value} ({lo}-{hi} °C).\n"
        f"Your family's average choice for today: {_fmt_temp(ctx.family_average)} °C."
    )
    parts.append(
        f"Weather: the average outside temperature today ({ctx.weather.date.isoformat()}) "
        f"is {ctx.weather.temp_display} °C."
    )
    parts.append(_reference_table(ctx.reference))

    if ctx.friends:
        update_task = (
            "2. You may increase or decrease your closeness level with any friend (integer "
            "from 1 to 5), for example depending on how close their choices are to yours. "
            "List only the friends whose level you set."
        )
        contract = (
            'Respond with a single JSON object with the keys "reasoning", "final_degree" and '
            '"closeness_updates" (an object mapping friend names to new closeness levels) and '
            "nothing else."
        )
    else:
        update_task = "2. There are no closeness levels to update."
        contract = (
            'Respond with a single JSON object with the keys "reasoning", "final_degree" and '
            '"closeness_updates", where "closeness_updates" must be {}, and nothing else.'
        )
    parts.append(
        "Tasks:\n1. Choose your final temperature vote for the building as a whole number of "
        "degrees Celsius, considering your friends' and family's choices, your own preference "
        "and your personality.\n" + update_task
    )
    parts.append("Example output:\n" + (PHASE2_EXAMPLE if ctx.friends else PHASE2_EXAMPLE_ALONE))
    parts.append(contract)
    return "\n\n".join(parts) + "\n"
