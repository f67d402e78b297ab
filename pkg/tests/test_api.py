# HTTP service tests
import json

import pytest

from api.cache import CacheManager
from api.config import CACHE_CONFIG
from api.cli import run
from models.response import OutputRecord


def test_root_endpoint(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["status"] == "operational"
    assert "version" in response.json()


def test_health_endpoint(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_evaluate_endpoint(client, mock_evaluate_request):
    response = client.post("/evaluate", json=mock_evaluate_request)
    assert response.status_code == 200
    payload = response.json()
    assert payload["command"] == "eval"
    assert payload["rows"][0]["value"]["re"] == pytest.approx(0.6266570687, abs=1e-10)
    assert payload["params"]["z"] == {"re": 0.0, "im": 0.0}
    assert payload["summary"]["closed_form"]["im"] == pytest.approx(0.6266570687, abs=1e-10)


def test_evaluate_without_closed_form(client, mock_evaluate_request):
    response = client.post("/evaluate", json={**mock_evaluate_request, "alpha": 2.5})
    assert response.status_code == 200
    assert response.json()["summary"] == {"closed_form": None}


def test_evaluate_matches_the_cli(client, mock_evaluate_request, capsys):
    response = client.post("/evaluate", json=mock_evaluate_request)
    assert run(["eval", "--alpha", "2", "--beta", "0", "--z", "0,0"]) == 0
    assert json.loads(capsys.readouterr().out) == response.json()


def test_invalid_alpha_is_a_bad_request(client, mock_evaluate_request):
    response = client.post("/evaluate", json={**mock_evaluate_request, "alpha": 1.0})
    assert response.status_code == 400
    assert "alpha" in response.json()["detail"]


def test_malformed_payload_is_a_bad_request(client):
    response = client.post("/evaluate", json={"alpha": 2.0})
    assert response.status_code == 400
    assert response.json()["error_code"] == "ValidationError"


def test_expand_needs_theta_for_a_sector(client):
    response = client.post("/expand", json={"alpha": 2.0, "case": "sector2", "terms": 2})
    assert response.status_code == 400


def test_overflow_is_a_numeric_failure(client, mock_evaluate_request):
    z = {"re": 42.42640687119285, "im": 42.42640687119285}
    response = client.post("/evaluate", json={**mock_evaluate_request, "z": z})
    assert response.status_code == 422
    assert response.json()["detail"].startswith("OverflowGuardError")


def test_repeated_requests_hit_the_cache(client, mock_evaluate_request):
    first = client.post("/evaluate", json=mock_evaluate_request)
    assert CacheManager.size() == 1
    second = client.post("/evaluate", json=mock_evaluate_request)
    assert CacheManager.size() == 1
    assert first.json() == second.json()


def test_expand_endpoint(client):
    response = client.post("/expand", json={"alpha": 2.0, "theta": 0.5, "terms": 2})
    assert response.status_code == 200
    payload = response.json()
    assert payload["summary"]["case_tag"] == "sector2"
    assert [row["kind"] for row in payload["rows"]][:2] == ["exp_growth", "exp_prefactor"]


def test_bounds_endpoint(client):
    response = client.post("/bounds", json={"alpha": 2.0, "C": 1.0, "xs": [1.0, 2.0]})
    assert response.status_code == 200
    payload = response.json()
    assert len(payload["rows"]) == 8
    assert payload["summary"]["A"] == pytest.approx(1.5)


def test_bounds_rejects_decreasing_xs(client):
    response = client.post("/bounds", json={"alpha": 2.0, "C": 1.0, "xs": [2.0, 1.0]})
    assert response.status_code == 400


def test_tauberian_remainder_endpoint(client):
    response = client.post("/tauberian/remainder", json={"kappa": 1.0, "xs": [5.0, 10.0]})
    assert response.status_code == 200
    assert response.json()["summary"]["predicted_slope"] == pytest.approx(-3.0)


def test_mueger_endpoint(client):
    response = client.post("/tauberian/mueger", json={"alpha": 2.0, "s": {"re": 2.0, "im": 0.0}})
    assert response.status_code == 200
    assert response.json()["rows"][0]["difference"] <= 1e-6


def test_mueger_rejects_re_s_at_most_one(client):
    response = client.post("/tauberian/mueger", json={"alpha": 2.0, "s": {"re": 1.0, "im": 3.0}})
    assert response.status_code == 400


def test_cache_eviction_and_invalidation(monkeypatch):
    monkeypatch.setitem(CACHE_CONFIG, "enabled", True)
    monkeypatch.setitem(CACHE_CONFIG, "max_entries", 2)
    record = OutputRecord(command="eval")
    for key in ("a", "b", "c"):
        assert CacheManager.set_cache(key, record)
    assert CacheManager.size() == 2
    assert CacheManager.get_cache("a") is None
    assert CacheManager.invalidate_cache("b")
    assert not CacheManager.invalidate_cache("b")
    assert CacheManager.get_cache("c") == record


def test_disabled_cache(monkeypatch):
    monkeypatch.setitem(CACHE_CONFIG, "enabled", False)
    assert not CacheManager.set_cache("a", OutputRecord(command="eval"))
    assert CacheManager.get_cache("a") is None
