"""Hourly TMY-style CSV ingestion and daily mean outside temperatures."""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple, Sequence

from heatpoll.rounding import round_half_away

DEFAULT_TIME_COLUMN = "time(UTC)"
DEFAULT_TEMP_COLUMN = "temp_air"
BUNDLED_START = dt.date(2023, 2, 15)
BUNDLED_DAYS = 30


class WeatherError(Exception):
    pass


class MissingColumn(WeatherError):
    def __init__(self, column: str):
        super().__init__(f"missing column {column!r}")
        self.column = column


class UnparsableRow(WeatherError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line


class EmptyFile(WeatherError):
    pass


class InsufficientCoverage(WeatherError):
    def __init__(self, missing: dt.date, detail: str = "no hourly readings"):
        super().__init__(f"{missing.isoformat()}: {detail}")
        self.missing = missing


class HourlyReading(NamedTuple):
    time: dt.datetime
    temp: float


@dataclass(frozen=True)
class DailyWeather:
    day_index: int
    date: dt.date
    temp_out: float

    @property
    def temp_display(self) -> int:
        """Whole-degree value shown to decision providers."""
        return round_half_away(self.temp_out)


def bundled_weather_path() -> Path:
    """30-day Ankara-like hourly fixture starting 15 February."""
    return Path(str(resources.files("heatpoll").joinpath("data/ankara_feb15_mar16.csv")))


def parse_timestamp(text: str) -> dt.datetime:
    text = text.strip()
    # PVGIS style: 20050215:0000
    if len(text) == 13 and text[8] == ":":
        return dt.datetime.strptime(text, "%Y%m%d:%H%M")
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    return dt.datetime.fromisoformat(text)


def load_tmy_csv(
    path,
    time_column: str = DEFAULT_TIME_COLUMN,
    temp_column: str = DEFAULT_TEMP_COLUMN,
) -> list[HourlyReading]:
    """Read an hourly temperature CSV, sorted by timestamp.

    Line numbers in errors are 1-based physical lines, the header being line 1.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise EmptyFile(f"{path} is empty")
        header = [h.strip() for h in header]
        for col in (time_column, temp_column):
            if col not in header:
                raise MissingColumn(col)
        ti, vi = header.index(time_column), header.index(temp_column)
        out = []
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) <= max(ti, vi):
                raise UnparsableRow(line, "too few fields")
            try:
                stamp = parse_timestamp(row[ti])
            except ValueError:
                raise UnparsableRow(line, f"bad timestamp {row[ti]!r}") from None
            try:
                temp = float(row[vi])
            except ValueError:
                raise UnparsableRow(line, f"bad temperature {row[vi]!r}") from None
            if not math.isfinite(temp):
                raise UnparsableRow(line, f"non-finite temperature {row[vi]!r}")
            out.append(HourlyReading(stamp, temp))
    if not out:
        raise EmptyFile(f"{path} has no data rows")
    out.sort(key=lambda r: r.time)
    return out


def daily_means(
    series: Sequence[HourlyReading],
    start_date: dt.date,
    n_days: int,
    ignore_year: bool = False,
) -> list[DailyWeather]:
    """Mean of each day's 24 hourly readings for ``n_days`` days from ``start_date``.

    With ``ignore_year`` days are matched on (month, day) only, which suits
    typical-year files stitched together from different source years.
    A day without all 24 hours is an error, never a partial mean.
    """
    if n_days < 1:
        raise ValueError("n_days must be >= 1")

    def key(d: dt.date):
        return (d.month, d.day) if ignore_year else d

    by_day: dict = {}
    for r in series:
        by_day.setdefault(key(r.time.date()), {})[r.time.hour] = r.temp
    out = []
    for i in range(n_days):
        day = start_date + dt.timedelta(days=i)
        hours = by_day.get(key(day))
        if not hours:
            raise InsufficientCoverage(day)
        if len(hours) != 24:
            missing = sorted(set(range(24)) - set(hours))
            raise InsufficientCoverage(day, f"missing hours {missing}")
        out.append(DailyWeather(i, day, math.fsum(hours.values()) / 24))
    return out


def load_daily_weather(
    path=None,
    start_date: dt.date = BUNDLED_START,
    n_days: int = BUNDLED_DAYS,
    time_column: str = DEFAULT_TIME_COLUMN,
    temp_column: str = DEFAULT_TEMP_COLUMN,
    ignore_year: bool = False,
) -> list[DailyWeather]:
    series = load_tmy_csv(path or bundled_weather_path(), time_column, temp_column)
    return daily_means(series, start_date, n_days, ignore_year=ignore_year)
