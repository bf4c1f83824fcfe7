from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from uttree.api import create_app
from uttree.fixtures import fixture_json
from uttree.store import Store

from _support import TABLE3_ROWS, TABLE3_SEQUENCE

AT = "2025-03-01T12:00:00Z"


@pytest.fixture
def client(tmp_path):
    store = Store.initialize(tmp_path / "store")
    store.save_corpus(fixture_json("table1"))
    app = create_app(store.root)
    with TestClient(app) as test_client:
        yield test_client


def post_session(client, session_id, kp, minutes, at=AT):
    return client.post(
        "/sessions",
        json={
            "session_id": session_id,
            "cessation_time": at,
            "duration_min": minutes,
            "shares": {kp: 1.0},
        },
    )


class TestKps:
    def test_list(self, client):
        body = client.get("/kps").json()
        assert len(body) == 18
        assert sum(1 for kp in body if kp["bkp"]) == 10

    def test_familiarity_increases_after_posting_session(self, client):
        before = client.get(f"/kps/SSP/familiarity?at={AT}").json()["familiarity"]
        assert post_session(client, "s1", "SSP", 30).status_code == 201
        after = client.get(f"/kps/SSP/familiarity?at={AT}").json()["familiarity"]
        assert after > before

    def test_unknown_kp_is_404_with_error_body(self, client):
        response = client.get("/kps/nope/familiarity")
        assert response.status_code == 404
        body = response.json()
        assert body["status"] == 404
        assert body["code"] == "unknown_kp"
        assert "nope" in body["detail"]

    def test_tree_endpoint(self, client):
        body = client.get("/kps/PM/tree").json()
        assert body["root"] == "PM"
        assert body["node_count"] == 5
        assert body["height"] == 3

    def test_reverse_endpoint(self, client):
        body = client.get("/kps/SS/reverse").json()
        assert body["dependents"]["SS"] == ["PM", "PS"]

    def test_assessment_endpoint(self, client):
        post_session(client, "a1", "PD", 85)
        body = client.get(f"/kps/PD/assessment?at={AT}").json()
        assert body["pu"] == pytest.approx(0.85)
        assert body["classification"] == "NotUnderstood"
        assert body["display_percent"] == 85


class TestSessions:
    def test_duplicate_is_409(self, client):
        assert post_session(client, "dup", "SSP", 10).status_code == 201
        response = post_session(client, "dup", "SSP", 10)
        assert response.status_code == 409
        assert response.json()["code"] == "conflict"

    def test_invalid_body_is_422(self, client):
        response = client.post("/sessions", json={"session_id": "x"})
        assert response.status_code == 422
        assert response.json()["code"] == "invalid_body"

    def test_invalid_duration_is_422(self, client):
        response = client.post(
            "/sessions",
            json={"session_id": "x", "cessation_time": AT, "duration_min": 0, "shares": {"SSP": 1.0}},
        )
        assert response.status_code == 422

    def test_listing_round_trips(self, client):
        post_session(client, "s1", "SSP", 30)
        sessions = client.get("/sessions").json()
        assert [s["session_id"] for s in sessions] == ["s1"]


class TestRecommendation:
    def test_fresh_min_count(self, client):
        body = client.get("/recommendation?policy=min-count").json()
        assert body["documents"] == ["D5", "D7", "D8"]

    def test_identical_gets_between_mutations(self, client):
        first = client.get("/recommendation?policy=min-count").json()
        second = client.get("/recommendation?policy=min-count").json()
        assert first == second

    def test_bad_policy_is_422(self, client):
        assert client.get("/recommendation?policy=zigzag").status_code == 422

    def test_pud_endpoint(self, client):
        body = client.get(f"/documents/D7/pud?at={AT}").json()
        assert body["doc_id"] == "D7"
        assert body["count"] == len(body["not_understood"])

    def test_unknown_document_404(self, client):
        assert client.get("/documents/D99/pud").status_code == 404


class TestSimulate:
    def test_replays_published_matrix(self, client):
        response = client.post("/simulate", json={"sequence": TABLE3_SEQUENCE})
        assert response.status_code == 200
        body = response.json()
        assert len(body["rows"]) == 9
        assert [tuple(row["counts"]) for row in body["rows"]] == TABLE3_ROWS

    def test_invalid_sequence_is_422(self, client):
        response = client.post("/simulate", json={"sequence": ["D1"]})
        assert response.status_code == 422
        assert response.json()["code"] == "sequence_invalid"

    def test_greedy_policy_runs(self, client):
        body = client.post("/simulate", json={"policy": "min-count"}).json()
        assert body["rows"][-1]["counts"] == [0] * 8
