#
# Copyright 2026 WPCN-lib contributors
# SPDX-License-Identifier: Apache-2.0
#
"""
    `wpcn-sim` command line.

    Exit codes: 0 ok, 1 invariant violations found, 2 usage/config/trace
    errors, 3 internal fault.
"""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from wpcn_lib import __version__
from wpcn_lib.channel.channel_trace import write_channel_trace
from wpcn_lib.cli.presets import PRESETS, get_preset, parse_axis
from wpcn_lib.engine.records import Trace
from wpcn_lib.engine.simulation import run
from wpcn_lib.engine.sweep import sweep, write_sweep_csv
from wpcn_lib.example_config import default_output_dir, get_config_dict, load_config_file, set_dotted
from wpcn_lib.exceptions import (
    ChannelError,
    ConfigError,
    ConstantsError,
    OracleError,
    RateError,
    SchedulingError,
    SimulationFault,
    TopologyError,
    TraceFormatError,
)
from wpcn_lib.log_config import setup_logging
from wpcn_lib.network.constants import derive_constants
from wpcn_lib.network.sim_config import SimConfig
from wpcn_lib.network.topology import topology_from_config
from wpcn_lib.oracle.lemma_checks import check_battery, check_lemma2, reports_to_json
from wpcn_lib.rate.rate_model import RateModel

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_FAULT = 3

USAGE_ERRORS = (
    ConfigError,
    TopologyError,
    ConstantsError,
    ChannelError,
    RateError,
    SchedulingError,
    OracleError,
    TraceFormatError,
    FileNotFoundError,
)


def _config_dict(args) -> dict:
    if args.config:
        config_dict = load_config_file(args.config)
    elif args.preset:
        config_dict = get_preset(args.preset).config_dict
    else:
        config_dict = get_config_dict()
    if getattr(args, "seed", None) is not None:
        config_dict = set_dotted(config_dict, "run.seed", args.seed)
    if getattr(args, "slots", None) is not None:
        config_dict = set_dotted(config_dict, "run.horizon", args.slots)
    return config_dict


def _output_dir(args) -> str:
    out = args.out or default_output_dir()
    os.makedirs(out, exist_ok=True)
    return out


def cmd_run(args) -> int:
    config_dict = _config_dict(args)
    cfg = SimConfig.from_dict(config_dict)
    topo = topology_from_config(config_dict["topology"])
    out = _output_dir(args)

    channels = [] if args.channel_dump else None
    audit = [] if args.audit else None
    trace, summary = run(cfg, topo, args.run_id, channel_sink=channels, audit_sink=audit)

    trace.to_csv(os.path.join(out, "trace.csv"))
    summary.to_json(os.path.join(out, "summary.json"))
    if channels is not None:
        write_channel_trace(args.channel_dump, channels)
    print(summary.one_line())

    if audit:
        with open(os.path.join(out, "audit.json"), "w") as file:
            file.write(reports_to_json(audit))
        logger.error(f"{len(audit)} oracle mismatches, see audit.json")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.preset and not args.config and not args.axis:
        preset = get_preset(args.preset)
        if not preset.has_sweep:
            raise ConfigError(
                json.dumps({"preset": f"{preset.name} has no sweep axis; use `run`"})
            )
        base, axes = preset.config_dict, preset.axes
        runs = args.runs or preset.runs
    else:
        if not args.axis:
            raise ConfigError(json.dumps({"axis": "at least one --axis is required"}))
        base = _config_dict(args)
        axes = {}
        for text in args.axis:
            axes.update(parse_axis(text))
        runs = args.runs or 1
    if args.slots is not None:
        base = set_dotted(base, "run.horizon", args.slots)

    workers = args.workers or base["run"]["workers"]
    rows = sweep(base, axes, runs=runs, workers=workers, progress=not args.quiet)
    out = _output_dir(args)
    write_sweep_csv(rows, os.path.join(out, "sweep.csv"))
    print(f"{len(rows)} points x {runs} runs -> {os.path.join(out, 'sweep.csv')}")
    return EXIT_OK


def cmd_check(args) -> int:
    trace = Trace.from_csv(args.trace)
    config_dict = _config_dict(args)
    cfg = SimConfig.from_dict(config_dict)
    topo = topology_from_config(config_dict["topology"])
    if (
        trace.N != topo.N
        or list(trace.link_ids) != list(topo.link_ids)
        or list(trace.stream_ids) != list(topo.stream_ids)
    ):
        raise TraceFormatError(
            f"Trace has {trace.N} nodes, links {list(trace.link_ids)}, streams "
            f"{list(trace.stream_ids)}; config topology does not match"
        )
    constants = derive_constants(cfg, topo, RateModel.from_config(cfg))
    reports = check_lemma2(trace, topo, constants) + check_battery(trace)
    print(reports_to_json(reports))
    return EXIT_VIOLATION if reports else EXIT_OK


def cmd_presets(args) -> int:
    for preset in PRESETS.values():
        grid = " x ".join(f"{path}[{len(values)}]" for path, values in preset.axes.items())
        print(f"{preset.name:<20} {preset.description}" + (f"  ({grid})" if grid else ""))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wpcn-sim",
        description="Energy-efficient control of wirelessly-powered multi-hop networks",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    commands = parser.add_subparsers(dest="command", required=True)

    def config_flags(sub):
        source = sub.add_mutually_exclusive_group()
        source.add_argument("--config", help="JSON or YAML config file")
        source.add_argument("--preset", choices=sorted(PRESETS), help="named scenario")

    run_parser = commands.add_parser("run", help="simulate one seeded run")
    config_flags(run_parser)
    run_parser.add_argument("--seed", type=int)
    run_parser.add_argument("--slots", type=int, help="horizon in slots")
    run_parser.add_argument("--run-id", type=int, default=0)
    run_parser.add_argument("--out", help="output directory")
    run_parser.add_argument("--channel-dump", help="write true channel states to this CSV")
    run_parser.add_argument(
        "--audit", action="store_true", help="re-solve every decision with the oracles"
    )
    run_parser.set_defaults(handler=cmd_run)

    sweep_parser = commands.add_parser("sweep", help="grid of seeded runs")
    config_flags(sweep_parser)
    sweep_parser.add_argument(
        "--axis", action="append", help="section.key=v1,v2,... (repeatable)"
    )
    sweep_parser.add_argument("--runs", type=int)
    sweep_parser.add_argument("--workers", type=int)
    sweep_parser.add_argument("--slots", type=int, help="horizon in slots")
    sweep_parser.add_argument("--out", help="output directory")
    sweep_parser.set_defaults(handler=cmd_sweep)

    check_parser = commands.add_parser("check", help="check a trace for invariant violations")
    check_parser.add_argument("--trace", required=True)
    config_flags(check_parser)
    check_parser.set_defaults(handler=cmd_check)

    presets_parser = commands.add_parser("presets", help="list named scenarios")
    presets_parser.set_defaults(handler=cmd_presets)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else None
    setup_logging(level_override=level)

    try:
        return args.handler(args)
    except USAGE_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except SimulationFault as e:
        logger.error(f"Simulation fault at slot {e.slot}: {e}")
        return EXIT_FAULT
    except Exception as e:  # pylint: disable=broad-except
        logger.exception(f"Internal error: {e}")
        return EXIT_FAULT


if __name__ == "__main__":
    sys.exit(main())
