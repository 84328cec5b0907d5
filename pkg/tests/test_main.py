"""
Basic tests for END Optimizer API.
"""

from uuid import uuid4

import pytest
from fastapi.testclient import TestClient
from main import app

client = TestClient(app)


def test_root_endpoint():
    """Test root endpoint."""
    response = client.get("/")
    assert response.status_code == 200
    assert "END Optimizer API" in response.json()["message"]


def test_health_check():
    """Test health check endpoint."""
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_api_health_check():
    """Test API health check endpoint."""
    response = client.get("/api/v1/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


@pytest.fixture
def dense_scenario(tiny_scenario_config):
    """Scenario JSON whose comm graph is symmetric and connected."""
    config = tiny_scenario_config.with_overrides(comm_radius_min=1.4, comm_radius_spread=0.0)
    return config.model_dump(mode="json")


class TestDesignEndpoint:
    """Test POST /api/v1/designs/."""

    @pytest.mark.parametrize("mode", ["standard", "steiner_undirected", "steiner_directed"])
    def test_design_modes(self, test_client, dense_scenario, mode):
        response = test_client.post("/api/v1/designs/", json={"scenario": dense_scenario, "design": {"mode": mode}})

        assert response.status_code == 200
        body = response.json()
        assert body["mode"] == mode
        assert body["standing_assumption_holds"]
        assert body["scenario"]["label"].startswith("ls-N8-P3")
        assert body["cost"]["total_memory"] <= 8 * 3

    def test_standard_stores_everything(self, test_client, dense_scenario):
        response = test_client.post("/api/v1/designs/", json={"scenario": dense_scenario})

        cost = response.json()["cost"]
        assert cost["total_copies"] == 24
        assert cost["copies_per_component"] == {"0": 8, "1": 8, "2": 8}

    def test_invalid_scenario(self, test_client):
        response = test_client.post("/api/v1/designs/", json={"scenario": {"agents": 0}})

        assert response.status_code == 422
        assert response.json()["error"] == "ValidationError"

    def test_unusable_scenario(self, test_client, tiny_scenario_config):
        scenario = tiny_scenario_config.with_overrides(sensing_radius=0.01).model_dump(mode="json")

        response = test_client.post("/api/v1/designs/", json={"scenario": scenario})

        assert response.status_code == 400
        assert response.json()["error"] == "ScenarioGenerationError"


class TestExperimentEndpoints:
    """Test the /api/v1/experiments endpoints."""

    def _run(self, client, scenario, algorithm="push_sum"):
        return client.post(
            "/api/v1/experiments/run",
            json={
                "scenario": scenario,
                "algorithm": algorithm,
                "design_mode": "customized",
                "stop": {"max_iterations": 20, "merit_threshold": None},
                "parameters": {"step_scale": 0.1},
            },
        )

    def test_run_returns_trace(self, test_client, dense_scenario):
        response = self._run(test_client, dense_scenario)

        assert response.status_code == 201
        body = response.json()
        assert len(body["rows"]) == 21
        assert body["rows"][0]["cum_cost"] == 0.0
        assert body["summary"]["iterations"] == 20
        assert body["summary"]["generator"] == "PCG64"

    @pytest.mark.parametrize("algorithm", ["admm", "augdgm"])
    def test_undirected_algorithms(self, test_client, dense_scenario, algorithm):
        response = self._run(test_client, dense_scenario, algorithm)

        assert response.status_code == 201
        assert response.json()["algorithm"] == algorithm

    def test_stored_run_lifecycle(self, test_client, dense_scenario):
        run_id = self._run(test_client, dense_scenario).json()["run_id"]

        listed = test_client.get("/api/v1/experiments/")
        assert listed.status_code == 200
        assert listed.json()["total"] == 1
        assert listed.json()["runs"][0]["run_id"] == run_id

        fetched = test_client.get(f"/api/v1/experiments/{run_id}")
        assert fetched.status_code == 200
        assert fetched.json()["algorithm"] == "push_sum"
        assert fetched.json()["memory"] > 0

        assert test_client.delete(f"/api/v1/experiments/{run_id}").status_code == 204
        assert test_client.get(f"/api/v1/experiments/{run_id}").status_code == 404

    def test_unknown_run(self, test_client):
        response = test_client.get(f"/api/v1/experiments/{uuid4()}")

        assert response.status_code == 404
        assert response.json()["error"] == "EntityNotFoundError"

    def test_delete_unknown_run(self, test_client):
        assert test_client.delete(f"/api/v1/experiments/{uuid4()}").status_code == 404

    def test_invalid_parameters(self, test_client, dense_scenario):
        response = test_client.post(
            "/api/v1/experiments/run",
            json={"scenario": dense_scenario, "algorithm": "admm", "parameters": {"alpha": 1.5}},
        )

        assert response.status_code == 422

    def test_list_paging(self, test_client):
        response = test_client.get("/api/v1/experiments/?limit=5&offset=10")

        assert response.status_code == 200
        assert response.json()["page"] == 3
        assert response.json()["size"] == 5

    def test_sweep(self, test_client, dense_scenario):
        response = test_client.post(
            "/api/v1/experiments/sweep",
            json={
                "scenario": dense_scenario,
                "seeds": [3],
                "algorithms": ["push_sum"],
                "stop": {"max_iterations": 10, "merit_threshold": None},
            },
        )

        assert response.status_code == 201
        body = response.json()
        assert body["failed"] == 0
        assert [cell["design_mode"] for cell in body["cells"]] == ["standard", "customized"]
        assert body["summary_path"] is None
        assert test_client.get("/api/v1/experiments/").json()["total"] == 2
