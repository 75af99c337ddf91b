import pytest
from fastapi.testclient import TestClient

from weyldft.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root_and_health(client):
    assert client.get("/health").json() == {"status": "healthy"}
    body = client.get("/").json()
    assert body["message"] == "Weyl DFT API"
    assert "points" in body["endpoints"]


def test_algebra_summary(client):
    response = client.get("/api/v1/algebras/B3")
    assert response.status_code == 200
    body = response.json()
    assert body["cartan"] == [[2, -1, 0], [-1, 2, -2], [0, -1, 2]]
    assert body["generalized_coxeter"] == {"1": 0, "e": 6, "s": 2, "l": 4}
    assert client.get("/api/v1/algebras/B2").status_code == 400


def test_points_and_weights(client):
    points = client.get("/api/v1/points", params={"algebra": "A2", "sigma": "e", "M": 7}).json()
    assert points["count"] == 5
    assert points["sigma"] == "det"
    weights = client.get("/api/v1/weights", params={"algebra": "A2", "M": 7}).json()
    assert weights["count"] == 12
    assert weights["weights"][0] == {"kac": [7, 0, 0], "h": 6}


def test_level_too_small_is_a_bad_request(client):
    response = client.get("/api/v1/points", params={"algebra": "A2", "sigma": "e", "M": 3})
    assert response.status_code == 400
    relaxed = client.get("/api/v1/points", params={"algebra": "A2", "sigma": "e", "M": 3, "relaxed": True})
    assert relaxed.json()["within_hypothesis"] is False


def test_inadmissible_sign(client):
    response = client.get("/api/v1/weights", params={"algebra": "D4", "sigma": "s", "M": 9})
    assert response.status_code == 400


def test_count(client):
    body = client.get("/api/v1/count", params={"algebra": "C2", "sigma": "1", "M": 6}).json()
    assert body["closed_form"] == 10
    assert body["agree"] is True


def test_transform(client):
    values = [[float(i), 0.0] for i in range(12)]
    response = client.post("/api/v1/transform", json={"algebra": "A2", "M": 7, "values": values})
    assert response.status_code == 200
    body = response.json()
    assert body["hartley"] is False
    assert len(body["coeffs"]) == 12

    hartley = client.post("/api/v1/transform", json={
        "algebra": "A2", "M": 7, "values": [float(i) for i in range(12)], "hartley": True,
    }).json()
    assert all(isinstance(c, float) for c in hartley["coeffs"])


def test_transform_rejects_wrong_length(client):
    response = client.post("/api/v1/transform", json={"algebra": "A2", "M": 7, "values": [1.0, 2.0]})
    assert response.status_code == 400


def test_transform_of_large_group(client):
    response = client.post("/api/v1/transform", json={"algebra": "E8", "M": 2, "values": [1.0]})
    assert response.status_code == 422


def test_verify_and_lookup(client):
    response = client.post("/api/v1/verify", json={
        "algebra": "A2", "sigma": "e", "M": 7, "checks": ["torus_partition", "cardinality"],
    })
    assert response.status_code == 200
    run = response.json()
    assert run["status"] == "passed"

    stored = client.get(f"/api/v1/verify/{run['run_id']}")
    assert stored.status_code == 200
    assert stored.json()["checks"] == ["torus_partition", "cardinality"]
    assert client.get("/api/v1/verify/unknown").status_code == 404


def test_verify_unknown_check(client):
    response = client.post("/api/v1/verify", json={"algebra": "A2", "M": 7, "checks": ["nope"]})
    assert response.status_code == 404


def test_list_checks(client):
    checks = client.get("/api/v1/checks").json()["checks"]
    assert "plancherel" in checks
    assert "boundary_vanishing" in checks


def test_verify_rejects_small_level(client):
    response = client.post("/api/v1/verify", json={"algebra": "A2", "sigma": "e", "M": 3})
    assert response.status_code == 400
    assert "m^sigma=3" in response.json()["detail"]


def test_memory_stats_and_cleanup(client):
    client.post("/api/v1/verify", json={"algebra": "A2", "M": 7, "checks": ["torus_partition"]})
    stats = client.get("/api/v1/memory/stats").json()
    assert stats["runs"] >= 1
    assert stats["total_logs"] >= 3

    body = client.post("/api/v1/memory/cleanup").json()
    assert body["removed"] == stats["runs"]
    assert body["runs"] == 0
    assert client.post("/api/v1/memory/cleanup", params={"keep": -1}).status_code == 400
