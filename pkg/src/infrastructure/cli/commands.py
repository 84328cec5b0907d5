"""
Command line interface: design, run and sweep.
"""

import argparse
import asyncio
import logging
import sys
from pathlib import Path
from typing import Awaitable, Callable, Optional, Sequence, TypeVar

from pydantic import ValidationError as PydanticValidationError

from src.application.dtos.design_dto import DesignRequestDTO, DesignSpecDTO
from src.application.dtos.experiment_dto import AlgorithmParametersDTO, RunRequestDTO, StopRuleDTO, SweepRequestDTO
from src.application.dtos.scenario_dto import ScenarioConfig
from src.application.use_cases.design_use_cases import DesignUseCases
from src.application.use_cases.experiment_use_cases import ExperimentUseCases
from src.application.use_cases.sweep_use_cases import SweepUseCases
from src.domain.entities.run_record import RunRecord
from src.domain.repositories.run_repository import RunRepository
from src.domain.value_objects.design_mode import AlgorithmKind, DesignMode, EdgePolicy, ExperimentDesignMode
from src.domain.value_objects.run_trace import RunSummary
from src.infrastructure.database.connection import AsyncSessionLocal, init_database
from src.infrastructure.database.repositories.in_memory_run_repository import InMemoryRunRepository
from src.infrastructure.database.repositories.run_repository_impl import RunRepositoryImpl
from src.infrastructure.serialization.layout_format import load_layout, save_layout
from src.infrastructure.serialization.scenario_config import load_scenario_config
from src.infrastructure.serialization.trace_writer import emit_csv
from src.shared.config import settings
from src.shared.exceptions import EndOptimizerException
from src.shared.logging_config import configure_logging

logger = logging.getLogger(__name__)

ALGORITHMS = [kind.value for kind in AlgorithmKind]
EXPERIMENT_MODES = [mode.value for mode in ExperimentDesignMode]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cli.py", description="END estimate/design experiments")
    commands = parser.add_subparsers(dest="command", required=True)

    design = commands.add_parser("design", help="Synthesize estimate and design graphs")
    _scenario_arguments(design)
    design.add_argument("--layout", default=None, help="Layout file with AGENTS, PARTITION, COMM and INTERF sections")
    design.add_argument("--mode", choices=[m.value for m in DesignMode], default=DesignMode.STANDARD.value)
    design.add_argument("--edge-policy", choices=[p.value for p in EdgePolicy], default=EdgePolicy.ALL_AVAILABLE.value)
    design.add_argument("--symmetrize", action="store_true", help="Drop one-way links before an undirected design")

    run = commands.add_parser("run", help="Run one experiment and write its CSV trace")
    _scenario_arguments(run)
    _experiment_arguments(run)
    run.add_argument("--algorithm", choices=ALGORITHMS, default=AlgorithmKind.PUSH_SUM.value)
    run.add_argument("--design-mode", choices=EXPERIMENT_MODES, default=ExperimentDesignMode.CUSTOMIZED.value)

    sweep = commands.add_parser("sweep", help="Run a grid of experiments")
    _scenario_arguments(sweep)
    _experiment_arguments(sweep)
    sweep.add_argument("--algorithm", nargs="+", choices=ALGORITHMS, default=[AlgorithmKind.PUSH_SUM.value])
    sweep.add_argument("--design-mode", nargs="+", choices=EXPERIMENT_MODES, default=EXPERIMENT_MODES)
    sweep.add_argument("--seeds", nargs="+", type=int, default=None, help="Seeds, defaults to --seed")
    sweep.add_argument("--r-c-min", nargs="+", type=float, default=None, help="Minimum communication radii")
    sweep.add_argument("--workers", type=int, default=settings.sweep_workers)
    return parser


def _scenario_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="JSON file with ScenarioConfig fields")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--paper-scale", action="store_true", help="N=100 sensors and P=20 sources")
    parser.add_argument("--out", default=None, help="Output directory")


def _experiment_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-iters", type=int, default=settings.default_max_iterations)
    parser.add_argument("--merit-threshold", type=float, default=settings.default_merit_threshold)
    parser.add_argument("--trace-every", type=int, default=settings.trace_every)
    parser.add_argument("--symmetrize", action="store_true", help="Keep only bidirectional links for admm/augdgm")
    parser.add_argument("--alpha", type=float, default=0.5)
    parser.add_argument("--rho", type=float, default=1.0)
    parser.add_argument("--gamma", type=float, default=None)
    parser.add_argument("--step-scale", type=float, default=1.0)
    parser.add_argument("--clip", type=float, default=None)
    parser.add_argument("--store", action="store_true", help="Persist run summaries in the database")


def scenario_config(args: argparse.Namespace) -> ScenarioConfig:
    """Config file (or desk-scale defaults), then scale and seed overrides."""
    if args.config:
        config = load_scenario_config(args.config)
    else:
        config = ScenarioConfig(agents=settings.desk_scale_agents, sources=settings.desk_scale_sources)
    if args.paper_scale:
        config = config.with_overrides(agents=settings.paper_scale_agents, sources=settings.paper_scale_sources)
    return config.with_overrides(seed=args.seed)


def _stop(args: argparse.Namespace) -> StopRuleDTO:
    return StopRuleDTO(
        max_iterations=args.max_iters,
        merit_threshold=args.merit_threshold if args.merit_threshold > 0 else None,
        trace_every=args.trace_every,
    )


def _parameters(args: argparse.Namespace) -> AlgorithmParametersDTO:
    return AlgorithmParametersDTO(
        alpha=args.alpha, rho=args.rho, gamma=args.gamma, step_scale=args.step_scale, clip=args.clip
    )


def _out_dir(args: argparse.Namespace, default: str) -> Path:
    return Path(args.out) if args.out else Path(settings.results_dir) / default


def run_design(args: argparse.Namespace) -> int:
    design = DesignSpecDTO(mode=args.mode, edge_policy=args.edge_policy, symmetrize=args.symmetrize)
    use_cases = DesignUseCases()
    if args.layout:
        layout, response = use_cases.design_from_document(load_layout(args.layout), design)
    else:
        layout, response = use_cases.design_for_scenario(DesignRequestDTO(scenario=scenario_config(args), design=design))

    out_dir = _out_dir(args, "designs")
    save_layout(out_dir / f"layout-{design.mode}.txt", layout)
    sys.stdout.write(response.model_dump_json(indent=2) + "\n")
    return 0


T = TypeVar("T")
RepositoryAction = Callable[[RunRepository], Awaitable[T]]


async def _with_database(action: RepositoryAction) -> T:
    await init_database()
    async with AsyncSessionLocal() as session:
        return await action(RunRepositoryImpl(session))


def _execute(args: argparse.Namespace, action: RepositoryAction) -> T:
    """Run an async repository action on the database with --store, in memory otherwise."""
    if args.store:
        return asyncio.run(_with_database(action))
    return asyncio.run(action(InMemoryRunRepository()))


def run_single(args: argparse.Namespace) -> int:
    request = RunRequestDTO(
        scenario=scenario_config(args),
        algorithm=args.algorithm,
        design_mode=args.design_mode,
        symmetrize=args.symmetrize,
        stop=_stop(args),
        parameters=_parameters(args),
    )
    use_cases = ExperimentUseCases(InMemoryRunRepository())
    scenario, trace = use_cases.execute(request)

    path = _out_dir(args, "runs") / f"{scenario.label()}-{request.algorithm}-{request.design_mode}.csv"
    emit_csv(trace, path)
    logger.info("Trace written to %s", path)

    if args.store:
        _execute(args, lambda repository: _store(repository, scenario.label(), request, trace.summary))
    sys.stdout.write(f"{path}\n")
    return 0


async def _store(repository: RunRepository, label: str, request: RunRequestDTO, summary: RunSummary) -> None:
    await repository.create(RunRecord.from_summary(label, request.algorithm, request.design_mode, summary))


def run_sweep(args: argparse.Namespace) -> int:
    config = scenario_config(args)
    request = SweepRequestDTO(
        scenario=config,
        seeds=args.seeds or [config.seed],
        comm_radius_mins=args.r_c_min or [],
        design_modes=args.design_mode,
        algorithms=args.algorithm,
        symmetrize=args.symmetrize,
        stop=_stop(args),
        parameters=_parameters(args),
        workers=args.workers,
        out_dir=str(_out_dir(args, "sweep")),
    )
    response = _execute(args, lambda repository: SweepUseCases(repository).run_sweep(request))
    sys.stdout.write(f"{response.summary_path}\n")
    if response.failed:
        logger.warning("%d sweep cells failed", response.failed)
    return 0


COMMANDS = {"design": run_design, "run": run_single, "sweep": run_sweep}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(list(argv) if argv is not None else None)
    configure_logging(settings)
    try:
        return COMMANDS[args.command](args)
    except EndOptimizerException as e:
        logger.error("%s: %s%s", e.__class__.__name__, e.message, f" ({e.details})" if e.details else "")
        return 1
    except PydanticValidationError as e:
        logger.error("Invalid arguments: %s", "; ".join(error["msg"] for error in e.errors()))
        return 1
