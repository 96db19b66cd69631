"""Command line interface.

Subcommands: gen-scenarios, gen-experiences, plan, bench, render. Exit codes:
0 on success, 1 when a plan run times out, 2 on usage or validation errors.
All file outputs are written atomically.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from .core import load_path
from .errors import ErtkitError
from .experience import (
    append_to_library,
    load_library,
    save_library,
    select_experience,
)
from .ioutil import write_json_atomic, write_text_atomic
from .planners import (
    PlannerParams,
    ert_plan,
    ertconnect_plan,
    rrtconnect_plan,
)
from .planners.params import epsilon_from_arg
from .render import render_result
from .worlds import load_scenarios, save_scenarios


def _parse_int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _build_params(args) -> PlannerParams:
    params = PlannerParams.load(args.params) if args.params else PlannerParams()
    updates = {}
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if getattr(args, "timeout", None) is not None:
        updates["timeout"] = args.timeout
    if getattr(args, "epsilon", None) is not None:
        updates["epsilon"] = epsilon_from_arg(args.epsilon)
    return params.with_updates(**updates) if updates else params


def _load_instance(args):
    instances = load_scenarios(args.scenario)
    index = getattr(args, "index", 0) or 0
    if not 0 <= index < len(instances):
        raise ValueError(f"scenario index {index} outside 0..{len(instances) - 1}")
    return instances[index]


def _load_prior(args, instance):
    if getattr(args, "experience", None):
        return load_path(args.experience)
    if getattr(args, "lib", None):
        library = load_library(args.lib)
        if getattr(args, "lib_size", None):
            library = library.prefix(args.lib_size)
        return select_experience(library, instance.q_start, instance.q_goal)
    raise ValueError("experience planners need --lib or --experience")


def _run_planner(args, instance, params):
    if args.planner == "rrtconnect":
        return rrtconnect_plan(instance, params), None
    prior = _load_prior(args, instance)
    plan = ert_plan if args.planner == "ert" else ertconnect_plan
    return plan(instance, prior, params), prior


def _cmd_gen_scenarios(args) -> int:
    spec = bench_mod.spec_for_set(args.set_id, args.count, args.seed)
    instances = bench_mod.generate_scenarios(spec)
    save_scenarios(instances, args.out)
    print(f"wrote {len(instances)} scenarios to {args.out}")
    return 0


def _cmd_gen_experiences(args) -> int:
    params = _build_params(args)
    seed = args.seed if args.seed is not None else 0
    library = bench_mod.build_experience_library(args.count, seed, params)
    save_library(library, args.out)
    print(f"wrote {len(library)} experiences to {args.out}")
    return 0


def _cmd_plan(args) -> int:
    instance = _load_instance(args)
    params = _build_params(args)
    result, _prior = _run_planner(args, instance, params)
    stats = result.stats
    print(
        f"{args.planner} on {instance.label or args.scenario}: {result.status} "
        f"(iterations={stats.iterations} checks={stats.validity_checks} "
        f"elapsed={stats.elapsed_seconds:.4f}s solved_by={stats.solved_by})"
    )
    if args.out:
        write_json_atomic(args.out, result.to_json())
    if args.grow and result.status == "solved" and args.lib:
        name = append_to_library(args.lib, result.path)
        print(f"appended solution to {args.lib}/{name}")
    if result.status == "solved":
        return 0
    if result.status == "timeout":
        return 1
    return 2


def _cmd_bench(args) -> int:
    params = _build_params(args)
    suite_seed = args.seed if args.seed is not None else params.seed
    set_ids = _parse_int_list(args.set_ids)
    instances = []
    for set_id in set_ids:
        spec = bench_mod.spec_for_set(set_id, args.count, suite_seed)
        instances.extend(bench_mod.generate_scenarios(spec))
    library = load_library(args.lib)
    records = bench_mod.run_benchmark(
        instances,
        library,
        planners=[p for p in args.planners.split(",") if p.strip()],
        lib_sizes=_parse_int_list(args.lib_sizes),
        reps=args.reps,
        params=params,
    )
    out_dir = Path(args.out)
    bench_mod.write_records_csv(records, out_dir / "records.csv")
    summary = bench_mod.summarize(records)
    bench_mod.write_summary_json(summary, out_dir / "summary.json")
    solved = sum(1 for r in records if r.status == "solved")
    print(f"{len(records)} runs, {solved} solved; results in {out_dir}")
    return 0


def _cmd_render(args) -> int:
    instance = _load_instance(args)
    params = _build_params(args)
    result, prior = _run_planner(args, instance, params)
    write_text_atomic(args.out, render_result(instance, result, prior=prior))
    print(f"wrote {args.out} ({result.status})")
    return 0


def _add_params_flags(sub, timeout=True):
    sub.add_argument("--seed", type=int, default=None, help="RNG seed")
    sub.add_argument("--params", default=None, help="JSON file of planner params")
    if timeout:
        sub.add_argument(
            "--timeout", type=float, default=None, help="modeled-seconds budget"
        )
    sub.add_argument(
        "--epsilon", default=None, help="morph bound: scalar or comma list"
    )


def _add_plan_flags(sub):
    sub.add_argument("--scenario", required=True, help="scenario or suite file")
    sub.add_argument("--index", type=int, default=0, help="instance index in a suite")
    sub.add_argument(
        "--planner",
        choices=("ert", "ertconnect", "rrtconnect"),
        default="ertconnect",
    )
    sub.add_argument("--lib", default=None, help="experience library directory")
    sub.add_argument("--lib-size", type=int, default=None, help="library prefix size")
    sub.add_argument("--experience", default=None, help="single experience file")
    _add_params_flags(sub)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ertkit",
        description="Experience-driven random tree planners and benchmark tools",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("gen-scenarios", help="write a scenario suite file")
    sub.add_argument("--set", dest="set_id", type=int, required=True, choices=(1, 2, 3, 4))
    sub.add_argument("--count", type=int, default=100)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--out", required=True)
    sub.set_defaults(func=_cmd_gen_scenarios)

    sub = subs.add_parser("gen-experiences", help="build an experience library")
    sub.add_argument("--count", type=int, default=100)
    sub.add_argument("--out", required=True, help="library directory")
    _add_params_flags(sub)
    sub.set_defaults(func=_cmd_gen_experiences)

    sub = subs.add_parser("plan", help="run one planner on one scenario")
    _add_plan_flags(sub)
    sub.add_argument("--out", default=None, help="write the result JSON here")
    sub.add_argument(
        "--grow", action="store_true", help="append a solved path to --lib"
    )
    sub.set_defaults(func=_cmd_plan)

    sub = subs.add_parser("bench", help="run the benchmark matrix")
    sub.add_argument(
        "--set", dest="set_ids", default="2", help="comma list of set ids"
    )
    sub.add_argument("--count", type=int, default=100, help="instances per set")
    sub.add_argument("--lib", required=True, help="experience library directory")
    sub.add_argument("--lib-sizes", default="1", help="comma list of prefix sizes")
    sub.add_argument("--reps", type=int, default=5)
    sub.add_argument("--planners", default="ert,ertconnect")
    sub.add_argument("--out", required=True, help="output directory")
    _add_params_flags(sub)
    sub.set_defaults(func=_cmd_bench)

    sub = subs.add_parser("render", help="plan and draw the scene as SVG")
    _add_plan_flags(sub)
    sub.add_argument("--out", required=True, help="SVG output file")
    sub.set_defaults(func=_cmd_render)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ErtkitError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
