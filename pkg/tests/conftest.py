import datetime as dt

import pytest

from heatpoll.graph import POSITIVE_ADJECTIVE, NEGATIVE_ADJECTIVE, TRAIT_DIMENSIONS, HeaterPreference, Persona, Role
from heatpoll.network import FULL_SCALE_SEED, BuildConfig, build_network
from heatpoll.weather import DailyWeather, load_daily_weather


def make_persona(
    id=0,
    pref=HeaterPreference.NEUTRAL,
    positive=(),
    role=Role.REPRESENTATIVE,
    family_id=None,
    name=None,
    all_positive=False,
):
    """Persona with negative adjectives except the dimensions listed in ``positive``."""
    traits = {
        d: POSITIVE_ADJECTIVE[d] if all_positive or d in positive else NEGATIVE_ADJECTIVE[d] for d in TRAIT_DIMENSIONS
    }
    return Persona(
        id=id,
        name=name or f"agent{id}",
        age=40,
        role=role,
        family_id=id if family_id is None else family_id,
        traits=traits,
        heater_preference=HeaterPreference(pref),
    )


def day(temp=0.0, index=0):
    return DailyWeather(index, dt.date(2023, 2, 15) + dt.timedelta(days=index), temp)


@pytest.fixture
def full_graph():
    return build_network(BuildConfig(seed=FULL_SCALE_SEED))


@pytest.fixture(scope="session")
def weather():
    return load_daily_weather()


# filled by test_acceptance.verdict, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
