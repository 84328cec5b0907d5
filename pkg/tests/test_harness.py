"""
Tests for scenario generation, experiment orchestration and sweeps.
"""

import numpy as np
import pytest

from src.application.dtos.experiment_dto import StopRuleDTO, SweepRequestDTO
from src.application.use_cases.design_use_cases import ScenarioUseCases
from src.application.use_cases.sweep_use_cases import SweepUseCases
from src.domain.entities.directed_graph import DirectedGraph
from src.domain.entities.scenario import Scenario
from src.domain.services.algorithms.runner import AlgorithmConfig, StopRule
from src.domain.services.experiment import experiment_comm, experiment_layout, run_experiment
from src.domain.services.locality import LocalityMonitor
from src.domain.services.scenario_generator import communication_graph, generate_scenario, sensing_sets, spanning_radii
from src.domain.value_objects.design_mode import AlgorithmKind, ExperimentDesignMode
from src.domain.value_objects.scenario_parameters import ProblemKind, ScenarioParameters
from src.infrastructure.serialization.trace_writer import TRACE_HEADER, read_trace_rows
from src.shared.exceptions import IncompatibleExperimentError, ScenarioGenerationError, ValidationError


@pytest.fixture
def dense_config(tiny_scenario_config):
    """Equal radii close to the square's diagonal give a symmetric, connected comm graph."""
    return tiny_scenario_config.with_overrides(comm_radius_min=1.4, comm_radius_spread=0.0)


def _scenario_on(comm: DirectedGraph, ring_problem, ring_interference) -> Scenario:
    n = comm.vertex_count
    return Scenario(
        parameters=ScenarioParameters(agents=n, sources=3),
        seed_used=0,
        attempts=1,
        sensor_positions=np.zeros((n, 2)),
        source_positions=np.zeros((3, 2)),
        comm_radii=np.zeros(n),
        comm=comm,
        interference=ring_interference,
        problem=ring_problem,
    )


class TestScenarioParameters:
    """Test parameter validation."""

    def test_defaults(self):
        parameters = ScenarioParameters()

        assert parameters.agents == 20
        assert parameters.sources == 8
        assert parameters.problem is ProblemKind.LEAST_SQUARES

    @pytest.mark.parametrize(
        "changes",
        [{"agents": 0}, {"sensing_radius": 0.0}, {"comm_radius_min": 2.0}, {"active_fraction": 0.0}, {"seed": -1}],
    )
    def test_invalid(self, changes):
        with pytest.raises(ValidationError):
            ScenarioParameters(**changes)


class TestScenarioGeneration:
    """Test random scenario draws."""

    def test_same_seed_same_scenario(self, tiny_scenario_config):
        first = generate_scenario(tiny_scenario_config.to_parameters())
        second = generate_scenario(tiny_scenario_config.to_parameters())

        assert first.seed_used == second.seed_used
        assert np.array_equal(first.sensor_positions, second.sensor_positions)
        assert first.comm == second.comm
        assert first.interference == second.interference

    def test_accepted_scenario_is_usable(self, tiny_scenario_config):
        scenario = generate_scenario(tiny_scenario_config.to_parameters())

        assert scenario.comm.is_strongly_connected()
        assert all(scenario.interference.agents_of(p) for p in range(3))
        assert scenario.seed_used == tiny_scenario_config.seed + scenario.attempts - 1
        assert scenario.truth.shape == (3,)

    def test_label(self, tiny_scenario_config):
        scenario = generate_scenario(tiny_scenario_config.to_parameters())

        assert scenario.label() == "ls-N8-P3-rs0.6-rc0.6-seed3"

    def test_gives_up(self):
        parameters = ScenarioParameters(agents=10, sources=2, sensing_radius=0.01, seed=1)

        with pytest.raises(ScenarioGenerationError):
            generate_scenario(parameters, max_attempts=3)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_desk_field_generates_with_relays(self, seed):
        parameters = ScenarioParameters(agents=20, sources=8, sensing_radius=0.2, comm_radius_min=0.1, seed=seed)

        scenario = generate_scenario(parameters)

        relays = [i for i in range(20) if not scenario.problem.components_of(i)]
        assert scenario.comm.is_strongly_connected()
        assert all(scenario.interference.agents_of(p) for p in range(8))
        assert relays
        assert all(scenario.problem.value_i(i, {}) >= 0.0 for i in relays)
        assert np.all(scenario.comm_radii >= 0.1)

    def test_bundled_configs_generate(self, mock_data):
        for name in ("desk_regression", "paper_regression", "paper_lasso"):
            config = mock_data.scenario(name)

            scenario = generate_scenario(config.to_parameters())

            assert scenario.comm.is_strongly_connected()
            assert scenario.comm.vertex_count == config.agents

    def test_sparse_field_without_radius_extension_gives_up(self):
        parameters = ScenarioParameters(
            agents=20, sources=2, sensing_radius=1.4, comm_radius_min=0.01, comm_radius_spread=0.0, extend_radii=False,
        )

        with pytest.raises(ScenarioGenerationError):
            generate_scenario(parameters, max_attempts=3)

    def test_lasso_silences_sources(self):
        parameters = ScenarioParameters(
            agents=6, sources=4, sensing_radius=1.4, comm_radius_min=1.4, comm_radius_spread=0.0,
            active_fraction=0.5, problem=ProblemKind.LASSO, seed=5,
        )

        scenario = generate_scenario(parameters)

        assert int(np.count_nonzero(scenario.truth)) == 2
        assert scenario.problem.regularization == 1.0


class TestGeometry:
    """Test sensing sets and communication links."""

    def test_sensing_sets_use_strict_radius(self):
        sensors = np.array([[0.0, 0.0], [1.0, 0.0]])
        sources = np.array([[0.5, 0.0], [0.9, 0.0]])

        sensed = sensing_sets(sensors, sources, 0.5)

        assert sensed == {0: (), 1: (1,)}

    def test_communication_is_directed(self):
        sensors = np.array([[0.0, 0.0], [0.5, 0.0]])

        comm = communication_graph(sensors, np.array([0.6, 0.1]))

        assert comm.edges == {(0, 1)}

    def test_spanning_radii_connect_the_field(self):
        sensors = np.array([[0.0, 0.0], [0.3, 0.0], [1.0, 0.0]])

        radii = spanning_radii(sensors, np.array([0.1, 0.1, 0.9]))

        assert radii == pytest.approx([0.3, 0.7, 0.9])
        assert communication_graph(sensors, radii).is_strongly_connected()


class TestExperimentComm:
    """Test the communication graph handed to each algorithm."""

    def test_push_sum_keeps_directed_comm(self, ring_problem, ring_interference):
        one_way = DirectedGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
        scenario = _scenario_on(one_way, ring_problem, ring_interference)

        comm, symmetrized = experiment_comm(scenario, AlgorithmKind.PUSH_SUM, symmetrize=False)

        assert comm == one_way
        assert not symmetrized

    def test_admm_refuses_directed_comm(self, ring_problem, ring_interference):
        one_way = DirectedGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
        scenario = _scenario_on(one_way, ring_problem, ring_interference)

        with pytest.raises(IncompatibleExperimentError):
            experiment_comm(scenario, AlgorithmKind.ADMM, symmetrize=False)

    def test_symmetrize_keeps_bidirectional_links(self, ring_problem, ring_interference, ring_comm):
        comm = DirectedGraph(range(5), set(ring_comm.edges) | {(0, 2)})
        scenario = _scenario_on(comm, ring_problem, ring_interference)

        core, symmetrized = experiment_comm(scenario, AlgorithmKind.AUGDGM, symmetrize=True)

        assert symmetrized
        assert core == ring_comm

    def test_disconnected_core(self, ring_problem, ring_interference):
        one_way = DirectedGraph(range(5), [(i, (i + 1) % 5) for i in range(5)])
        scenario = _scenario_on(one_way, ring_problem, ring_interference)

        with pytest.raises(IncompatibleExperimentError):
            experiment_comm(scenario, AlgorithmKind.ADMM, symmetrize=True)

    def test_customized_layout_is_cheaper(self, ring_problem, ring_interference, ring_comm):
        scenario = _scenario_on(ring_comm, ring_problem, ring_interference)

        standard, _ = experiment_layout(scenario, ExperimentDesignMode.STANDARD, AlgorithmKind.ADMM)
        customized, _ = experiment_layout(scenario, ExperimentDesignMode.CUSTOMIZED, AlgorithmKind.ADMM)

        assert standard.is_standard()
        assert customized.stacked_size < standard.stacked_size


class TestRunExperiment:
    """Test single experiment runs."""

    @pytest.mark.parametrize("algorithm", list(AlgorithmKind))
    def test_every_algorithm_runs(self, dense_config, algorithm):
        scenario = generate_scenario(dense_config.to_parameters())
        layout, _ = experiment_layout(scenario, ExperimentDesignMode.CUSTOMIZED, algorithm)
        monitor = LocalityMonitor(layout)
        config = AlgorithmConfig(kind=algorithm, step_scale=0.1)

        trace = run_experiment(
            scenario,
            ExperimentDesignMode.CUSTOMIZED,
            algorithm,
            StopRule(max_iterations=30, merit_threshold=None),
            config=config,
            monitor=monitor,
        )

        assert trace.summary.iterations == 30
        assert trace.summary.seed == scenario.seed_used
        assert not trace.summary.symmetrized
        assert monitor.is_clean()

    def test_config_must_match_algorithm(self, dense_config):
        scenario = generate_scenario(dense_config.to_parameters())

        with pytest.raises(IncompatibleExperimentError):
            run_experiment(
                scenario,
                ExperimentDesignMode.STANDARD,
                AlgorithmKind.ADMM,
                StopRule(max_iterations=1),
                config=AlgorithmConfig(kind=AlgorithmKind.AUGDGM),
            )

    def test_customized_costs_less_per_iteration(self, dense_config):
        scenario = generate_scenario(dense_config.to_parameters())
        stop = StopRule(max_iterations=10, merit_threshold=None)

        standard = run_experiment(scenario, ExperimentDesignMode.STANDARD, AlgorithmKind.ADMM, stop)
        customized = run_experiment(scenario, ExperimentDesignMode.CUSTOMIZED, AlgorithmKind.ADMM, stop)

        assert customized.summary.total_cost <= standard.summary.total_cost
        assert customized.summary.memory <= standard.summary.memory


class TestSweep:
    """Test sweeps over seeds and design modes."""

    def test_cells_in_grid_order(self, tiny_scenario_config):
        request = SweepRequestDTO(
            scenario=tiny_scenario_config,
            seeds=[1, 2],
            comm_radius_mins=[0.6, 0.8],
            algorithms=[AlgorithmKind.PUSH_SUM, AlgorithmKind.ADMM],
        )

        cells = SweepUseCases.cells(request)

        assert len(cells) == 16
        assert (cells[0].seed, cells[0].comm_radius_min) == (1, 0.6)
        assert cells[0].design_mode is ExperimentDesignMode.STANDARD
        assert cells[1].algorithm is AlgorithmKind.ADMM
        assert cells[-1].seed == 2

    def test_execute_writes_csv(self, dense_config, tmp_path):
        request = SweepRequestDTO(
            scenario=dense_config,
            seeds=[3],
            algorithms=[AlgorithmKind.PUSH_SUM],
            stop=StopRuleDTO(max_iterations=20, merit_threshold=None),
            out_dir=str(tmp_path),
        )

        outcomes = SweepUseCases(scenario_use_cases=ScenarioUseCases()).execute(request)

        assert len(outcomes) == 2
        assert all(outcome.error is None for outcome in outcomes)
        for outcome in outcomes:
            rows = read_trace_rows(outcome.trace_path)
            assert tuple(rows[0]) == TRACE_HEADER
            assert len(rows) == 21
        summary = (tmp_path / "summary.csv").read_text(encoding="utf-8").splitlines()
        assert summary[0].startswith("scenario,seed,agents")
        assert len(summary) == 3

    def test_failed_scenario_is_reported(self, tiny_scenario_config):
        request = SweepRequestDTO(
            scenario=tiny_scenario_config.with_overrides(sensing_radius=0.01),
            seeds=[0],
            algorithms=[AlgorithmKind.PUSH_SUM],
            stop=StopRuleDTO(max_iterations=5),
        )

        outcomes = SweepUseCases(scenario_use_cases=ScenarioUseCases(max_attempts=2)).execute(request)

        assert len(outcomes) == 2
        assert all(outcome.error for outcome in outcomes)
        assert all(outcome.summary is None for outcome in outcomes)
