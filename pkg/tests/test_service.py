import pytest
from fastapi.testclient import TestClient

from homotopy_calc.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


class TestSpaceEndpoints:
    def test_pi1_catalog_embedding(self, client):
        r = client.post(
            "/pi1", json={"embedding": {"catalog_embedding": {"kind": "center_mu", "n": 2}}}
        )
        assert r.status_code == 200
        body = r.json()
        assert body["result"] == {"rank": 0, "torsion": [2], "pretty": "Z/2"}
        assert body["method"] == "thm_main"

    def test_pi1_explicit_groups(self, client):
        r = client.post(
            "/pi1",
            json={
                "g": {"catalog": "Torus", "n": 1},
                "h": {"multiplicative": {"generators": 1, "relations": [[4]]}},
                "embedding": {"char_map": [[1]]},
            },
        )
        assert r.status_code == 200
        assert r.json()["result"]["pretty"] == "Z"

    def test_pi2(self, client):
        r = client.post(
            "/pi2",
            json={
                "embedding": {
                    "catalog_embedding": {"kind": "maximal_torus", "group": {"catalog": "SL", "n": 2}}
                }
            },
        )
        assert r.status_code == 200
        assert r.json()["result"]["pretty"] == "Z"

    def test_gate_failure_maps_to_409(self, client):
        r = client.post(
            "/pi1",
            json={
                "embedding": {
                    "catalog_embedding": {"kind": "trivial", "group": {"catalog": "PGL", "n": 2}}
                },
                "method": "thm-main",
            },
        )
        assert r.status_code == 409
        assert r.json()["error"]["code"] == "PicNonTrivial"

    def test_all_aggregates(self, client):
        r = client.post(
            "/all",
            json={
                "embedding": {
                    "catalog_embedding": {"kind": "trivial", "group": {"catalog": "PGL", "n": 2}}
                }
            },
        )
        assert r.status_code == 200
        body = r.json()
        assert body["results"]["pi1"]["result"]["pretty"] == "Z/2"
        assert "pi1_thm_main" in body["failures"]

    def test_method_both(self, client):
        r = client.post(
            "/pi1",
            json={
                "embedding": {"catalog_embedding": {"kind": "det_kernel", "n": 3}},
                "method": "both",
            },
        )
        assert r.status_code == 200
        assert r.json()["method"] == "both"


class TestGroupEndpoints:
    def test_pic(self, client):
        r = client.post("/pic", json={"g": {"catalog": "PGL", "n": 4}})
        assert r.status_code == 200
        assert r.json()["result"]["pretty"] == "Z/4"

    def test_pi1alg(self, client):
        r = client.post("/pi1alg", json={"g": {"catalog": "SO", "n": 7}})
        assert r.status_code == 200
        assert r.json()["result"]["pretty"] == "Z/2"

    def test_inline_root_datum(self, client):
        r = client.post(
            "/pi1alg",
            json={"g": {"root_datum": {"rank": 1, "roots": [[2], [-2]], "coroots": [[1], [-1]]}}},
        )
        assert r.status_code == 200
        assert r.json()["result"]["pretty"] == "0"


class TestExt0Endpoint:
    def test_with_oracle(self, client):
        r = client.post(
            "/ext0",
            json={
                "a0": {"generators": 1, "relations": []},
                "a1": {"generators": 1, "relations": []},
                "alpha": [[6]],
                "oracle": True,
            },
        )
        assert r.status_code == 200
        body = r.json()
        assert body["result"]["pretty"] == "Z/6"
        assert body["oracle"]["agree"] is True

    def test_ill_formed_map_maps_to_422(self, client):
        r = client.post(
            "/ext0",
            json={
                "a0": {"generators": 1, "relations": [[2]]},
                "a1": {"generators": 1, "relations": [[4]]},
                "alpha": [[1]],
            },
        )
        assert r.status_code == 422


class TestValidation:
    def test_pydantic_rejects_unknown_fields(self, client):
        r = client.post("/pi1", json={"embedding": {"surprise": 1}})
        assert r.status_code == 422

    def test_missing_embedding(self, client):
        r = client.post("/pi1", json={"g": {"catalog": "SL", "n": 2}})
        assert r.status_code == 422

    def test_invalid_document_maps_to_422(self, client):
        r = client.post(
            "/pi1",
            json={
                "g": {"catalog": "SL", "n": 2},
                "embedding": {"catalog_embedding": {"kind": "center_mu", "n": 2}},
            },
        )
        assert r.status_code == 422


def test_catalog_and_health(client):
    r = client.get("/catalog")
    assert r.status_code == 200
    assert any(g["name"] == "Sp" for g in r.json()["groups"])
    assert client.get("/health").json() == {"status": "ok"}


def test_service_matches_cli_document(client):
    """The service returns exactly the CLI's --json --stable document."""
    import json
    from pathlib import Path

    from homotopy_calc import api

    doc = json.loads(
        (Path(__file__).resolve().parent.parent / "inputs" / "sl2_modcenter.json").read_text()
    )
    expected, _ = api.run_command("pi1", doc)
    r = client.post("/pi1", json=doc)
    assert r.json() == expected
