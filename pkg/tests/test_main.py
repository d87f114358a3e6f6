import math

import pytest
from fastapi.testclient import TestClient

from zetameans import config
from zetameans.main import app

client = TestClient(app)


def test_health():
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_eval_zeta_two():
    response = client.post("/eval", json={"sigma": 2, "t": 0})
    assert response.status_code == 200
    real, imag = response.json()["value"]
    assert real == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert abs(imag) < 1e-20


def test_eval_pole_is_422():
    response = client.post("/eval", json={"sigma": 1, "t": 0})
    assert response.status_code == 422
    assert response.json()["error_type"] == "PoleError"


def test_api_key(monkeypatch):
    monkeypatch.setattr(config, "API_KEY", "sekret")
    body = {"function": "kernel", "sigma": 0.5, "t": 10}
    assert client.post("/eval", json=body, headers={"x-api-key": "wrong"}).status_code == 403
    assert client.post("/eval", json=body, headers={"x-api-key": "sekret"}).status_code == 200
    assert client.post("/eval", json=body).status_code == 200

    monkeypatch.setattr(config, "API_KEY", "")
    assert client.post("/eval", json=body, headers={"x-api-key": "anything"}).status_code == 200


def test_oracle_fast_engine():
    body = {"sigma": 0.5, "t": 50, "x": 2, "policy": {"precision_bits": 53}}
    response = client.post("/oracle", json=body)
    assert response.status_code == 200
    assert response.json()["value"][0] > 0


def test_estimate_theorem3_has_no_oracle():
    response = client.post("/estimate", json={"estimator": "thm3", "sigma": 0.5, "t": 2 * math.pi * 100})
    assert response.status_code == 200
    payload = response.json()
    assert payload["oracle"] is None
    assert payload["residual"] is None
    assert payload["estimate"]["value"][0] == pytest.approx(100 * math.pi ** 2 / 6, rel=1e-12)


def test_estimate_corollary3_off_line_is_422():
    response = client.post("/estimate", json={"estimator": "cor3", "sigma": 0.3, "t": 200, "x": 1})
    assert response.status_code == 422
    assert response.json()["error_type"] == "DomainError"


def test_estimate_corollary3():
    body = {"estimator": "cor3", "t": 400, "x": 2, "policy": {"precision_bits": 53}}
    payload = client.post("/estimate", json=body).json()
    assert payload["residual"] <= 20 * 2 / 400


def test_density():
    response = client.post("/density", json={"t": 20 * math.pi, "eta": 0.25, "include_members": True})
    payload = response.json()
    assert payload["count"] == 5
    assert payload["members"] == [1, 2, 5, 9, 10]


def test_hyperbola():
    response = client.post("/hyperbola", json={"n_values": [10], "check_naive": True})
    row = response.json()["rows"][0]
    assert row["total"] == pytest.approx(15.0456349206, rel=1e-10)
    assert row["naive"] == pytest.approx(row["total"], rel=1e-12)


def test_request_validation():
    assert client.post("/density", json={"t": 100, "eta": 0.7}).status_code == 422
    assert client.post("/hyperbola", json={"n_values": []}).status_code == 422
