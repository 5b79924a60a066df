import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from qbayes.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(), raise_server_exceptions=False)


class TestHealthAndValidate:
    def test_health(self, client):
        assert client.get("/health").json() == {"status": "ok"}

    def test_validate_ok(self, client, ids_text):
        out = client.post("/validate", json={"model_text": ids_text}).json()
        assert out["ok"] is True
        assert out["variables"] == ["X", "Y", "FA"]

    def test_validate_bad_model(self, client):
        resp = client.post("/validate", json={"model_text": "variables: []"})
        assert resp.status_code == 400
        assert resp.json()["kind"] == "input"


class TestQuery:
    def test_both_engines_agree(self, client, ids_text):
        out = client.post(
            "/query",
            json={
                "model_text": ids_text,
                "targets": ["Y"],
                "evidence": {"X": 1},
                "engine": "both",
            },
        ).json()
        assert out["max_abs_diff"] < 1e-9
        assert out["quantum"]["scope"] == ["Y"]
        q1 = out["quantum"]["entries"][1]
        assert q1["outcome"] == "1"
        assert q1["probability"] == pytest.approx(0.9544764795144159, abs=1e-12)

    def test_unknown_variable(self, client, ids_text):
        resp = client.post(
            "/query", json={"model_text": ids_text, "targets": ["Nope"]}
        )
        assert resp.status_code == 400
        assert "unknown variable" in resp.json()["detail"]

    def test_target_evidence_overlap(self, client, ids_text):
        resp = client.post(
            "/query",
            json={"model_text": ids_text, "targets": ["X"], "evidence": {"X": 1}},
        )
        assert resp.status_code == 400

    def test_impossible_evidence_is_422(self, client):
        text = (
            "variables: [A, B]\n"
            "A: {cpt: {parents: [], rows: {'': 0.0}}}\n"
            "B: {cpt: {parents: [], rows: {'': 0.5}}}\n"
        )
        resp = client.post(
            "/query",
            json={"model_text": text, "targets": ["B"], "evidence": {"A": 1}},
        )
        assert resp.status_code == 422
        assert resp.json()["kind"] == "inference"


class TestDistribution:
    def test_joint_sums_to_one(self, client, ids_text):
        out = client.post(
            "/distribution", json={"model_text": ids_text, "kind": "joint"}
        ).json()
        assert len(out["entries"]) == 8
        assert sum(e["probability"] for e in out["entries"]) == pytest.approx(1.0, abs=1e-9)
        assert [e["outcome"] for e in out["entries"]] == [
            format(i, "03b") for i in range(8)
        ]

    def test_marginal(self, client, ids_text):
        out = client.post(
            "/distribution",
            json={"model_text": ids_text, "kind": "marginal", "variables": ["X"]},
        ).json()
        assert len(out["entries"]) == 2
        assert out["entries"][1]["probability"] == pytest.approx(0.3295, abs=1e-12)

    def test_conditional(self, client, ids_text):
        out = client.post(
            "/distribution",
            json={
                "model_text": ids_text,
                "kind": "conditional",
                "variables": ["Y", "FA"],
                "evidence": {"X": 1},
            },
        ).json()
        assert out["scope"] == ["Y", "FA"]
        assert len(out["entries"]) == 4
        assert sum(e["probability"] for e in out["entries"]) == pytest.approx(1.0, abs=1e-9)

    def test_order_permutes_display(self, client, ids_text):
        base = client.post(
            "/distribution", json={"model_text": ids_text, "kind": "joint"}
        ).json()
        flipped = client.post(
            "/distribution",
            json={"model_text": ids_text, "kind": "joint", "order": ["FA", "Y", "X"]},
        ).json()
        base_map = {e["outcome"]: e["probability"] for e in base["entries"]}
        for e in flipped["entries"]:
            assert e["probability"] == base_map[e["outcome"][::-1]]


class TestMetrics:
    def test_entropy(self, client, ids_text):
        out = client.post(
            "/metrics",
            json={"model_text": ids_text, "metric": "entropy", "variables": ["FA"]},
        ).json()
        assert out["name"] == "entropy(FA)"
        assert 0.0 <= out["value"] <= 1.0

    def test_mutual_information(self, client, ids_text):
        out = client.post(
            "/metrics",
            json={
                "model_text": ids_text,
                "metric": "mutual_information",
                "variables": ["X", "Y"],
            },
        ).json()
        assert out["value"] == pytest.approx(0.035994091577585915, abs=1e-9)

    def test_cdf_rows(self, client, ids_text):
        out = client.post(
            "/metrics", json={"model_text": ids_text, "metric": "cdf"}
        ).json()
        cums = [r["cumulative"] for r in out["rows"]]
        assert cums == sorted(cums)
        assert cums[-1] == pytest.approx(1.0, abs=1e-9)

    def test_top_k(self, client, ids_text):
        out = client.post(
            "/metrics", json={"model_text": ids_text, "metric": "top_k", "k": 3}
        ).json()
        assert [r["outcome"] for r in out["rows"]] == ["011", "111", "001"]

    def test_fidelity_identical(self, client):
        p = {"0": 0.4, "1": 0.6}
        out = client.post("/metrics/fidelity", json={"p": p, "q": p}).json()
        assert out["value"] == pytest.approx(1.0, abs=1e-12)

    def test_fidelity_scope_mismatch(self, client):
        resp = client.post(
            "/metrics/fidelity", json={"p": {"0": 1.0}, "q": {"1": 1.0, "0": 0.0}}
        )
        assert resp.status_code == 400


class TestPerturbAndCircuit:
    def test_perturb_deterministic(self, client, ids_text):
        payload = {"model_text": ids_text, "noise": 0.05, "trials": 5, "seed": 11}
        a = client.post("/perturb", json=payload).json()
        b = client.post("/perturb", json=payload).json()
        assert a == b
        assert len(a["trials"]) == 5

    def test_perturb_bad_noise(self, client, ids_text):
        resp = client.post(
            "/perturb",
            json={"model_text": ids_text, "noise": 0.5, "trials": 5, "seed": 0},
        )
        assert resp.status_code == 400

    def test_circuit_lines(self, client, ids_text):
        out = client.post("/circuit", json={"model_text": ids_text}).json()
        assert len(out["lines"]) == 7
        assert out["lines"][0].startswith("RY q1 ")
