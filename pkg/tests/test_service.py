import pytest
from fastapi.testclient import TestClient

from misere.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_parse_and_outcome(client):
    r = client.post("/parse", json={"expr": "{0|0}"})
    assert r.status_code == 200
    body = r.json()
    assert body["form"] == "*" and body["rank"] == 1 and not body["augmented"]
    r = client.post("/outcome", json={"expr": "*+*+1"})
    assert r.json()["outcome"] == "P"


def test_parse_error_maps_to_400_with_position(client):
    r = client.post("/outcome", json={"expr": "{0|"})
    assert r.status_code == 400
    detail = r.json()["detail"]
    assert detail["error"] == "parse" and detail["position"] == 3


def test_tp(client):
    r = client.post("/tp", json={"expr": "0"})
    assert r.json() == {"form": "0", "ltp": 1, "ntp": 0, "rtp": 1}


def test_pfree_endpoint(client):
    r = client.post("/pfree", json={"expr": "{{0,-1|0},*|}", "modulo_b": True})
    body = r.json()
    assert body["strictly_p_free"] is False
    assert body["modulo_b_witness"] is not None
    r = client.post("/pfree", json={"expr": "*", "modulo_b": True, "max_birthday": 2})
    assert r.json()["modulo_b_witness"] is None


def test_member(client):
    r = client.post("/member", json={"expr": "{|{{{1|{0|1}}|}|}}", "universe": "b"})
    assert r.json()["member"] is False
    r = client.post("/member", json={"expr": "1", "universe": "d"})
    assert r.json()["member"] is False
    r = client.post("/member", json={"expr": "1", "universe": "e"})
    assert r.json()["member"] is True


def test_member_rejects_augmented(client):
    r = client.post("/member", json={"expr": "{#,0|}", "universe": "b"})
    assert r.status_code == 400


def test_strong(client):
    r = client.post("/strong", json={"expr": "1+-1"})
    body = r.json()
    assert body["left_b_strong"] and body["right_b_strong"]


def test_cmp_exact(client):
    r = client.post("/cmp", json={"g": "1+-1", "h": "0"})
    body = r.json()
    assert body["method"] == "exact"
    assert body["geq"] and body["leq"] and body["equivalent"]
    r = client.post("/cmp", json={"g": "*+*", "h": "0"})
    body = r.json()
    assert not body["geq"]
    assert body["geq_failed_clause"]["clause"] == "proviso-left-end"


def test_cmp_empirical(client):
    r = client.post("/cmp", json={"g": "*+*", "h": "0", "universe": "e", "max_birthday": 2})
    body = r.json()
    assert body["method"] == "empirical"
    assert not body["equivalent"]
    assert body["distinguisher"] is not None


def test_invertible(client):
    r = client.post("/invertible", json={"expr": "1"})
    assert r.json() == {"form": "1", "invertible": True, "inverse": "-1"}
    r = client.post("/invertible", json={"expr": "*"})
    assert r.json()["invertible"] is False
    r = client.post("/invertible", json={"expr": "{|{1|1}}"})
    assert r.status_code == 400


def test_enumerate(client):
    r = client.post("/enumerate", json={"max_birthday": 1, "max_width": 1})
    body = r.json()
    assert body["count"] == 4
    assert len(body["records"]) == 4 and len(body["lines"]) == 4
    assert any(rec["form"] == "*" for rec in body["records"])


def test_enumerate_resource_limit(client):
    r = client.post("/enumerate", json={"max_birthday": 2, "max_width": 4, "max_forms": 50})
    assert r.status_code == 400
    assert r.json()["detail"]["error"] == "resource_limit"


def test_search_endpoint(client):
    r = client.post("/search/counterexamples", json={"max_total_birthday": 5, "max_width": 1})
    body = r.json()
    assert ["{|{1|1}}", "{-1|-1}"] in body["pairs"] or ["{-1|-1}", "{|{1|1}}"] in body["pairs"]


def test_verify_endpoint(client):
    r = client.post(
        "/verify",
        json={"suites": ["pfree_closure"], "max_birthday": 2, "max_width": 2},
    )
    body = r.json()
    assert body["passed"] is True
    assert body["reports"][0]["suite"] == "pfree_closure"
    r = client.post(
        "/verify",
        json={
            "suites": ["invertibility"],
            "max_birthday": 2,
            "max_width": 2,
            "inject": ["*"],
        },
    )
    body = r.json()
    assert body["passed"] is False
    r = client.post("/verify", json={"suites": ["bogus"]})
    assert r.status_code == 400
