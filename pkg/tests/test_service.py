"""HTTP service endpoints through the in-process test client."""

from fastapi.testclient import TestClient

from qcryptlab.experiments import experiment_names
from qcryptlab.service import app

client = TestClient(app)


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_experiment_listing_mirrors_registry():
    response = client.get("/experiments")
    assert response.status_code == 200
    body = response.json()
    assert tuple(entry["name"] for entry in body) == experiment_names()
    for entry in body:
        assert entry["summary"]
        assert entry["ceiling_seconds"] > 0
        assert all(isinstance(v, int) for v in entry["defaults"].values())


def test_run_returns_full_report():
    response = client.post(
        "/experiments/run", json={"experiment": "metric-suite", "seed": 3}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["experiment"] == "metric-suite"
    assert body["verdict"] == "pass"
    assert body["inputs"]["seed"] == 3
    assert all(check["passed"] for check in body["checks"])


def test_run_applies_overrides():
    response = client.post(
        "/experiments/run",
        json={"experiment": "otp-uniformity", "n": 2, "trials": 3},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["inputs"]["n"] == 2
    assert body["inputs"]["trials"] == 3


def test_run_unknown_experiment_is_400():
    response = client.post("/experiments/run", json={"experiment": "bogus"})
    assert response.status_code == 400
    assert "unknown experiment" in response.json()["detail"]


def test_run_rejects_foreign_size_field():
    response = client.post(
        "/experiments/run", json={"experiment": "metric-suite", "n": 2}
    )
    assert response.status_code == 400
    assert "takes no n" in response.json()["detail"]


def test_run_reports_forced_failure_as_200():
    response = client.post(
        "/experiments/run",
        json={"experiment": "metric-suite", "tolerances": {"channel-estimate": 1.5}},
    )
    assert response.status_code == 200
    assert response.json()["verdict"] == "fail"
