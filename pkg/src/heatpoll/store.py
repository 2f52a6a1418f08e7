"""Run directories, per-day records and tidy CSV exports.

Layout of ``<root>/<run_id>/``::

    manifest.json        written once at the end of a run
    graph_initial.json   graph before day 0
    days/day_000.json    graph snapshot after each day
    agent_days.jsonl     one AgentDayRecord per line
    network_days.csv     one NetworkDayRecord per row
"""

from __future__ import annotations

import csv
import io
import json
import shutil
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable

from heatpoll.graph import NEGATIVE_ADJECTIVE, POSITIVE_ADJECTIVE, TRAIT_DIMENSIONS, HeaterPreference, SocialGraph

AGENT_DAYS = "agent_days.jsonl"
NETWORK_DAYS = "network_days.csv"
MANIFEST = "manifest.json"
INITIAL_GRAPH = "graph_initial.json"
REFERENCE_PREFERENCE = HeaterPreference.NEUTRAL


class StoreError(Exception):
    pass


class DuplicateKey(StoreError):
    pass


class StoreIOError(StoreError):
    pass


class UnknownRun(StoreError):
    pass


class RunExists(StoreError):
    pass


@dataclass
class AgentDayRecord:
    run_id: str
    day_index: int
    agent_id: int
    role: str
    family_id: int
    degree_choice: int
    final_degree: int | None
    happiness: int
    traits: dict[str, str]
    heater_preference: str
    degree_centrality: float
    fallback_used: bool
    reasoning: str
    final_reasoning: str | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False, separators=(",", ":"))


@dataclass
class NetworkDayRecord:
    run_id: str
    day_index: int
    avg_friend_weight: float
    strong_friendships: int
    avg_happiness: float
    temp_out: float
    setpoint: int
    cost: float
    positive_trait_pct: float


NETWORK_COLUMNS = [f.name for f in fields(NetworkDayRecord)]


def _slug(adjective: str) -> str:
    return adjective.lower().replace("-", "_").replace(" ", "_")


# one 0/1 column per positive adjective, then per non-reference heater preference
TRAIT_INDICATORS = {_slug(POSITIVE_ADJECTIVE[d]): d for d in TRAIT_DIMENSIONS}
PREFERENCE_INDICATORS = {
    f"pref_{h.value.lower()}": h for h in HeaterPreference if h is not REFERENCE_PREFERENCE
}
PANEL_SCALARS = [
    "run_id",
    "day_index",
    "agent_id",
    "role",
    "family_id",
    "degree_choice",
    "final_degree",
    "happiness",
    "heater_preference",
    "degree_centrality",
    "fallback_used",
]
PANEL_COLUMNS = PANEL_SCALARS + list(TRAIT_INDICATORS) + list(PREFERENCE_INDICATORS)


def encode_indicators(traits: dict[str, str], preference: str) -> dict[str, int]:
    row = {col: int(traits[dim] == POSITIVE_ADJECTIVE[dim]) for col, dim in TRAIT_INDICATORS.items()}
    pref = HeaterPreference(preference)
    row.update({col: int(pref is h) for col, h in PREFERENCE_INDICATORS.items()})
    return row


def decode_indicators(row: dict) -> tuple[dict[str, str], HeaterPreference]:
    traits = {
        dim: POSITIVE_ADJECTIVE[dim] if int(row[col]) else NEGATIVE_ADJECTIVE[dim]
        for col, dim in TRAIT_INDICATORS.items()
    }
    hits = [h for col, h in PREFERENCE_INDICATORS.items() if int(row[col])]
    if len(hits) > 1:
        raise ValueError("more than one heater preference indicator set")
    return traits, hits[0] if hits else REFERENCE_PREFERENCE


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _csv_text(header: list[str], rows: Iterable[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(v) for v in r])
    return buf.getvalue()


class RunStore:
    """Single-writer handle on one run directory."""

    def __init__(self, root, run_id: str, force: bool = False):
        if not run_id or "/" in run_id or run_id in (".", ".."):
            raise ValueError(f"invalid run id {run_id!r}")
        self.run_id = run_id
        self.path = Path(root) / run_id
        if self.path.exists():
            if not force:
                raise RunExists(f"run directory {self.path} already exists")
            shutil.rmtree(self.path)
        try:
            (self.path / "days").mkdir(parents=True)
        except OSError as exc:
            raise StoreIOError(str(exc)) from exc
        self._agent_keys: set[tuple[int, int]] = set()
        self._network_days: set[int] = set()

    def _write(self, name: str, text: str, mode: str = "w") -> None:
        try:
            with open(self.path / name, mode, encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise StoreIOError(str(exc)) from exc

    def append_agent_day(self, record: AgentDayRecord) -> None:
        key = (record.day_index, record.agent_id)
        if key in self._agent_keys:
            raise DuplicateKey(f"agent {record.agent_id} already recorded for day {record.day_index}")
        self._write(AGENT_DAYS, record.to_json() + "\n", "a")
        self._agent_keys.add(key)

    def append_network_day(self, record: NetworkDayRecord) -> None:
        if record.day_index in self._network_days:
            raise DuplicateKey(f"day {record.day_index} already recorded")
        row = [getattr(record, c) for c in NETWORK_COLUMNS]
        text = _csv_text(NETWORK_COLUMNS, [row])
        if self._network_days:
            text = text.split("\n", 1)[1]
        self._write(NETWORK_DAYS, text, "a")
        self._network_days.add(record.day_index)

    def write_snapshot(self, graph: SocialGraph, day_index: int | None = None) -> None:
        name = INITIAL_GRAPH if day_index is None else f"days/day_{day_index:03d}.json"
        self._write(name, graph.to_json())

    def write_manifest(self, manifest: dict) -> None:
        self._write(MANIFEST, json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _run_dir(root, run_id: str) -> Path:
    p = Path(root) / run_id
    if not p.is_dir():
        raise UnknownRun(f"no run {run_id!r} under {root}")
    return p


def read_agent_days(root, run_id: str) -> list[dict]:
    path = _run_dir(root, run_id) / AGENT_DAYS
    if not path.exists():
        raise UnknownRun(f"run {run_id!r} has no {AGENT_DAYS}")
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def read_network_days(root, run_id: str) -> list[dict]:
    path = _run_dir(root, run_id) / NETWORK_DAYS
    if not path.exists():
        raise UnknownRun(f"run {run_id!r} has no {NETWORK_DAYS}")
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def read_manifest(root, run_id: str) -> dict:
    return json.loads((_run_dir(root, run_id) / MANIFEST).read_text(encoding="utf-8"))


def export_panel(run_ids: list[str], root="runs", out=None) -> str:
    """One row per (run, day, agent): record scalars plus 0/1 indicator columns.

    Traits are coded 1 for the positive adjective; Neutral is the omitted
    heater-preference level. Reasoning text stays in the JSONL.
    """
    if not run_ids:
        raise UnknownRun("no runs given")
    rows = []
    for run_id in run_ids:
        recs = sorted(read_agent_days(root, run_id), key=lambda r: (r["day_index"], r["agent_id"]))
        for r in recs:
            ind = encode_indicators(r["traits"], r["heater_preference"])
            rows.append([r[c] for c in PANEL_SCALARS] + [ind[c] for c in list(TRAIT_INDICATORS) + list(PREFERENCE_INDICATORS)])
    text = _csv_text(PANEL_COLUMNS, rows)
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text


def export_network_series(run_ids: list[str], root="runs", out=None) -> str:
    if not run_ids:
        raise UnknownRun("no runs given")
    rows = []
    for run_id in run_ids:
        recs = sorted(read_network_days(root, run_id), key=lambda r: int(r["day_index"]))
        rows.extend([r[c] for c in NETWORK_COLUMNS] for r in recs)
    text = _csv_text(NETWORK_COLUMNS, rows)
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text
