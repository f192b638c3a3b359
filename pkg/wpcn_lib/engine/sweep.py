#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    Parameter sweeps: a grid of config points, several seeded runs per
    point, fanned out over a process pool and merged in grid order.
"""
import csv
import itertools
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

import numpy as np
from enforce_typing import enforce_types
from tqdm import tqdm

from wpcn_lib.engine.simulation import run
from wpcn_lib.example_config import set_dotted
from wpcn_lib.exceptions import ConfigError
from wpcn_lib.network.sim_config import SimConfig
from wpcn_lib.network.topology import topology_from_config

logger = logging.getLogger("engine")

METRICS = (
    "avg_energy_per_slot",
    "avg_sum_backlog",
    "avg_data_backlog",
    "avg_drop_fraction",
    "backlog_arrival_ratio",
)

LINKED_AXIS_SEP = "+"


@dataclass
class SweepRow:
    point: Dict[str, Any]  # dotted config path -> value
    runs: int
    mean: Dict[str, float]
    stderr: Dict[str, float]
    stable_fraction: float

    def flat(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {
            key: json.dumps(value) if isinstance(value, (list, dict)) else value
            for key, value in self.point.items()
        }
        row["runs"] = self.runs
        for metric in METRICS:
            row[metric] = self.mean[metric]
            row[f"{metric}_stderr"] = self.stderr[metric]
        row["stable_fraction"] = self.stable_fraction
        return row


def _apply_axis(config_dict: Dict[str, Any], name: str, value: Any) -> Dict[str, Any]:
    paths = name.split(LINKED_AXIS_SEP)
    if len(paths) == 1:
        return set_dotted(config_dict, name, value)
    if not isinstance(value, list) or len(value) != len(paths):
        raise ConfigError(json.dumps({name: f"each value must list {len(paths)} entries"}))
    for path, entry in zip(paths, value):
        config_dict = set_dotted(config_dict, path, entry)
    return config_dict


@enforce_types
def sweep_points(base: Dict[str, Any], axes: Dict[str, list]) -> List[Tuple[Dict[str, Any], dict]]:
    """Cartesian product of the axes in insertion order, last axis fastest.

    An axis named `a.x+b.y` moves several paths together: each of its values
    is a list with one entry per path. Returns (point, config dict) pairs;
    every point is validated up front.
    """
    if not axes or any(not values for values in axes.values()):
        raise ConfigError(json.dumps({"axis": "must be nonempty"}))
    names = list(axes)
    points = []
    for combo in itertools.product(*(axes[name] for name in names)):
        config_dict = base
        for name, value in zip(names, combo):
            config_dict = _apply_axis(config_dict, name, value)
        points.append((dict(zip(names, combo)), config_dict))
    return points


def _run_task(task: Tuple[dict, int]) -> Dict[str, Any]:
    """Pool worker: one seeded run, summary metrics only."""
    config_dict, run_id = task
    cfg = SimConfig.from_dict(config_dict)
    topo = topology_from_config(config_dict["topology"])
    _, summary = run(cfg, topo, run_id)
    total_rate = sum(cfg.arrival_rates)
    result = {metric: getattr(summary, metric) for metric in METRICS[:-1]}
    # seconds of arrivals held in the network
    result["backlog_arrival_ratio"] = (
        summary.avg_data_backlog / total_rate if total_rate > 0 else 0.0
    )
    result["stable"] = summary.stable
    return result


def _aggregate(point: Dict[str, Any], results: List[Dict[str, Any]]) -> SweepRow:
    mean, stderr = {}, {}
    for metric in METRICS:
        values = np.array([r[metric] for r in results], dtype=float)
        mean[metric] = float(values.mean())
        stderr[metric] = (
            float(values.std(ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
        )
    stable = float(np.mean([r["stable"] for r in results]))
    return SweepRow(point=point, runs=len(results), mean=mean, stderr=stderr, stable_fraction=stable)


@enforce_types
def sweep(
    base: Dict[str, Any],
    axes: Dict[str, list],
    runs: int = 1,
    workers: int = 1,
    progress: bool = True,
) -> List[SweepRow]:
    """Run `runs` independent seeded runs at every grid point.

    Run r at every point uses run id r, so points share random streams.
    Results do not depend on the worker count.
    """
    if runs < 1:
        raise ConfigError(json.dumps({"runs": "must be >= 1"}))
    points = sweep_points(base, axes)
    tasks = [(config_dict, r) for _, config_dict in points for r in range(runs)]
    logger.info(f"Sweep: {len(points)} points x {runs} runs on {workers} worker(s)")

    bar = tqdm(total=len(tasks), disable=not progress, desc="sweep")
    if workers == 1:
        results = []
        for task in tasks:
            results.append(_run_task(task))
            bar.update(1)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = []
            for result in pool.map(_run_task, tasks):
                results.append(result)
                bar.update(1)
    bar.close()

    return [
        _aggregate(point, results[i * runs : (i + 1) * runs])
        for i, (point, _) in enumerate(points)
    ]


@enforce_types
def write_sweep_csv(rows: List[SweepRow], path: str) -> None:
    if not rows:
        raise ConfigError(json.dumps({"sweep": "no rows to write"}))
    flat = [row.flat() for row in rows]
    with open(path, "w", newline="") as file:
        writer = csv.DictWriter(file, fieldnames=list(flat[0]))
        writer.writeheader()
        writer.writerows(flat)
    logger.info(f"Wrote {len(rows)} sweep rows to {path}")
