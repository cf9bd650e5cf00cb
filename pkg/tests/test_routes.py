"""Tests for the HTTP API"""
import pytest
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_schemes(client):
    body = client.get("/api/schemes").json()
    assert body["total"] == 9
    radau = next(s for s in body["schemes"] if s["id"] == "radau3")
    assert radau["kind"] == "runge-kutta"
    assert radau["order"] == 3


def test_weights(client):
    response = client.post("/api/weights", json={"scheme": "be", "symbol": "resolvent:c=-1",
                                                 "kappa": 0.1, "steps": 8})
    assert response.status_code == 200
    body = response.json()
    assert body["N"] == 8
    assert len(body["weights"]) == 9
    assert body["weights"][0][0][0][0] == pytest.approx(1 / 11)


def test_weights_engine_error(client):
    response = client.post("/api/weights", json={"symbol": "oscillator:c=0"})
    assert response.status_code == 400
    assert response.json()["detail"].startswith("invalid-argument:")


def test_weights_unknown_symbol(client):
    response = client.post("/api/weights", json={"symbol": "laplace"})
    assert response.status_code == 400


def test_weights_request_validation(client):
    assert client.post("/api/weights", json={"steps": 0}).status_code == 422
    assert client.post("/api/weights", json={"steps": 100000}).status_code == 422
    assert client.post("/api/weights", json={"oversampling": 0}).status_code == 422


def test_oversampled_weights(client):
    response = client.post("/api/weights", json={"scheme": "be", "symbol": "resolvent:c=-1",
                                                 "kappa": 0.1, "steps": 8, "oversampling": 3})
    assert response.status_code == 200
    weights = response.json()["weights"]
    assert weights[1][0][0][0] == pytest.approx(0.1 / 1.1 ** 2, abs=1e-12)
    assert weights[1][0][0][1] == pytest.approx(0.0, abs=1e-12)


def test_convergence(client):
    response = client.post("/api/convergence", json={"scheme": "bdf2", "symbol": "oscillator:c=1",
                                                     "kappa": 0.05, "final_time": 2.0, "levels": 4})
    assert response.status_code == 200
    rows = response.json()["rows"]
    assert len(rows) == 4
    assert rows[0]["order"] is None
    assert rows[3]["order"] > 1.8


def test_convergence_needs_four_levels(client):
    response = client.post("/api/convergence", json={"scheme": "bdf2", "levels": 3})
    assert response.status_code == 422


def test_convergence_without_reference(client):
    response = client.post("/api/convergence", json={"symbol": "power:alpha=3"})
    assert response.status_code == 400
    assert response.json()["detail"].startswith("invalid-argument:")
