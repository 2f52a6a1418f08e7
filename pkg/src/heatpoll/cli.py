"""Command-line driver: build-network, run, analyze, report.

Exit codes: 0 success, 2 configuration or usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

from heatpoll import __version__
from heatpoll.config import ConfigError, load_config
from heatpoll.graph import GraphError, SocialGraph
from heatpoll.network import build_network
from heatpoll.store import RunExists, RunStore, StoreIOError, UnknownRun, read_network_days
from heatpoll.weather import WeatherError, load_daily_weather

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 2, 3

# the six per-day series charted for each run
REPORT_METRICS = ["avg_friend_weight", "strong_friendships", "avg_happiness", "temp_out", "setpoint", "cost"]

log = logging.getLogger("heatpoll")


class UsageError(Exception):
    pass


def _now() -> str:
    return dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def build_manifest_path(graph_path: Path) -> Path:
    return graph_path.with_name(graph_path.stem + ".manifest.json")


def cmd_build_network(args) -> int:
    cfg = load_config(args.config, args.set)
    bc = cfg.build_config()
    out = Path(args.out)
    if out.exists() and not args.force:
        raise UsageError(f"{out} exists; pass --force to overwrite")
    g = build_network(bc)
    text = g.to_json()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    families = g.families()
    manifest = {
        "seed": bc.seed,
        "positive_trait_pct": bc.positive_trait_pct,
        "nodes": len(g.nodes),
        "edges": g.number_of_edges(),
        "friend_edges": len(g.friend_edges()),
        "family_sizes": [len(families[r]) - 1 for r in g.representatives()],
        "graph_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "network": cfg.snapshot()["network"],
        "code_version": __version__,
    }
    _write_json(build_manifest_path(out), manifest)
    print(f"wrote {out} ({manifest['nodes']} nodes, {manifest['edges']} edges)")
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = load_config(args.config, args.set)
    cfg.validate()
    sim = cfg.sim_config()
    provider = cfg.provider()
    weather = load_daily_weather(**cfg.weather_args())
    if args.graph:
        text = Path(args.graph).read_text(encoding="utf-8")
        graph = SocialGraph.from_json(text)
        graph_source = str(args.graph)
    else:
        graph = build_network(cfg.build_config())
        text = graph.to_json()
        graph_source = "network section"
    run_id = args.run_id or dt.datetime.now().strftime("run-%Y%m%d-%H%M%S")
    root = Path(cfg.raw["run"]["root"])
    store = RunStore(root, run_id, force=args.force)

    from heatpoll.engine import run_simulation

    started = _now()
    t0 = time.perf_counter()
    result = run_simulation(sim, graph, weather, provider, store=store, run_id=run_id)
    elapsed = time.perf_counter() - t0

    reps = len(graph.representatives())
    decisions = {"phase1": len(graph.nodes) * sim.days, "phase2": reps * sim.days}
    manifest = {
        "run_id": run_id,
        "code_version": __version__,
        "config": cfg.snapshot(),
        "config_source": cfg.source,
        "graph_source": graph_source,
        "graph_sha256": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        "provider_kind": provider.kind,
        "started_at": started,
        "finished_at": _now(),
        "elapsed_s": round(elapsed, 3),
        "days": sim.days,
        "agents": len(graph.nodes),
        "decisions": decisions,
        "fallback_counts": result.fallbacks,
    }
    if hasattr(provider, "stats"):
        manifest["provider_stats"] = dict(provider.stats)
    store.write_manifest(manifest)

    total_fb = sum(result.fallbacks.values())
    total = sum(decisions.values())
    print(f"run {run_id}: {sim.days} days, {len(graph.nodes)} agents -> {store.path}")
    if total_fb:
        print(
            f"warning: {total_fb}/{total} decisions fell back to the mock provider "
            f"(phase1 {result.fallbacks['phase1']}, phase2 {result.fallbacks['phase2']})",
            file=sys.stderr,
        )
    return EXIT_OK


def _root(args) -> Path:
    if args.root:
        return Path(args.root)
    return Path(load_config(args.config, args.set).raw["run"]["root"])


def cmd_analyze(args) -> int:
    from heatpoll.analysis import analyze, load_frames, load_model_specs
    from heatpoll.stats import coefficients_csv

    cfg = load_config(args.config, args.set)
    specs = load_model_specs(args.model_spec or cfg.raw["analysis"]["model_spec"] or None)
    root = Path(args.root) if args.root else Path(cfg.raw["run"]["root"])
    frames = load_frames(args.runs, root)
    result = analyze(specs, frames)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "coefficients.csv").write_text(coefficients_csv(result.coefficient_rows()), encoding="utf-8")
    if result.trends:
        _write_rows(out / "trends.csv", result.trends)
    if result.hausman:
        _write_rows(out / "hausman.csv", result.hausman)
    text = result.text()
    (out / "tables.txt").write_text(text, encoding="utf-8")
    print(text, end="")
    for name, msg in result.failures:
        print(f"warning: model {name} not estimated: {msg}", file=sys.stderr)
    if len(result.failures) == len(specs):
        return EXIT_CONFIG
    return EXIT_OK


def _write_rows(path: Path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})


def cmd_report(args) -> int:
    if not args.runs:
        raise UnknownRun("no runs given")
    root = _root(args)
    series = {run_id: read_network_days(root, run_id) for run_id in args.runs}
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for metric in REPORT_METRICS:
        with open(out / f"{metric}.csv", "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["day", "value", "run"])
            for run_id, rows in series.items():
                for r in sorted(rows, key=lambda r: int(r["day_index"])):
                    w.writerow([r["day_index"], r[metric], run_id])
    print(f"wrote {len(REPORT_METRICS)} series to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heatpoll", description="Personality-driven heating negotiation simulator.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log each simulated day")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="TOML config (default: $HEATPOLL_CONFIG)")
        sp.add_argument(
            "--set", action="append", default=[], metavar="SECTION.KEY=VALUE", help="override a config value"
        )

    b = sub.add_parser("build-network", help="build and save the family network")
    common(b)
    b.add_argument("--out", required=True, help="graph JSON path")
    b.add_argument("--force", action="store_true", help="overwrite an existing graph file")
    b.set_defaults(func=cmd_build_network)

    r = sub.add_parser("run", help="simulate and record a run")
    common(r)
    r.add_argument("--graph", help="graph JSON from build-network (default: build from config)")
    r.add_argument("--run-id", help="run directory name under run.root")
    r.add_argument("--force", action="store_true", help="replace an existing run directory")
    r.set_defaults(func=cmd_run)

    a = sub.add_parser("analyze", help="fit regression models to recorded runs")
    common(a)
    a.add_argument("--runs", nargs="+", required=True, help="run ids")
    a.add_argument("--root", help="runs directory (default: run.root)")
    a.add_argument("--model-spec", help="model TOML (default: analysis.model_spec, else the bundled set)")
    a.add_argument("--out", required=True, help="output directory")
    a.set_defaults(func=cmd_analyze)

    rp = sub.add_parser("report", help="write chart-ready per-metric CSVs")
    common(rp)
    rp.add_argument("--runs", nargs="+", required=True, help="run ids")
    rp.add_argument("--root", help="runs directory (default: run.root)")
    rp.add_argument("--out", required=True, help="output directory")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ConfigError, RunExists, UnknownRun, UsageError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, StoreIOError, WeatherError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        # model-fitting failures such as rank deficiency
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
