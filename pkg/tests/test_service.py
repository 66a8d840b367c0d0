import json

import pytest
from fastapi.testclient import TestClient

from skygraph.scenarios import bridged_chain_log, log_to_csv_bytes
from skygraph.service import create_app

CSV = log_to_csv_bytes(bridged_chain_log())


@pytest.fixture
def client(tmp_path):
    app = create_app(data_dir=tmp_path / "data")
    with TestClient(app) as c:
        yield c


def upload(client, body=CSV):
    resp = client.post("/scenarios", content=body)
    assert resp.status_code == 201, resp.text
    return resp.json()


def start_run(client, scenario_id, **overrides):
    payload = {"scenario_id": scenario_id, **overrides}
    resp = client.post("/runs", json=payload)
    assert resp.status_code == 201, resp.text
    return resp.json()


# -- scenarios -----------------------------------------------------------------


def test_upload_is_content_addressed(client):
    first = upload(client)
    second = upload(client)
    assert first["scenario_id"] == second["scenario_id"]
    assert first["aircraft_count"] == 7


def test_upload_rejects_corrupt_row(client):
    bad = CSV + b"not,a,row\n"
    resp = client.post("/scenarios", content=bad)
    assert resp.status_code == 422
    assert resp.json()["detail"]["error"] == "malformed_row"
    assert isinstance(resp.json()["detail"]["line"], int)


def test_upload_rejects_empty(client):
    resp = client.post("/scenarios", content=b"time_s,callsign,lat_deg,lon_deg,alt_ft\n")
    assert resp.status_code == 422
    assert resp.json()["detail"]["error"] == "empty_log"


def test_get_scenario_info(client):
    info = upload(client)
    echo = client.get(f"/scenarios/{info['scenario_id']}").json()
    assert echo["aircraft_count"] == 7
    assert echo["callsigns"] == [f"AC{k}" for k in range(1, 8)]


def test_get_unknown_scenario_404(client):
    assert client.get("/scenarios/ffffffffffffffff").status_code == 404


# -- runs ---------------------------------------------------------------------


def test_run_with_defaults_finds_single_community(client):
    info = upload(client)
    run = start_run(client, info["scenario_id"])
    assert run["status"] == "done"
    assert run["community_count"] == 1
    communities = client.get(f"/runs/{run['run_id']}/communities").json()
    assert len(communities) == 1
    assert communities[0]["appearance_s"] == 130.0
    assert communities[0]["disappearance_s"] == 1200.0


def test_exclusion_run_splits_into_three(client):
    info = upload(client)
    run = start_run(client, info["scenario_id"], exclude=["AC1"])
    communities = client.get(f"/runs/{run['run_id']}/communities").json()
    assert len(communities) == 3
    spans = [(c["appearance_s"], c["disappearance_s"]) for c in communities]
    for (a1, d1), (a2, d2) in zip(spans, spans[1:]):
        assert d1 < a2  # pairwise disjoint in time


def test_invalid_params_rejected(client):
    info = upload(client)
    resp = client.post(
        "/runs",
        json={"scenario_id": info["scenario_id"], "thresh_h_nm": 4.0},  # <= min_h
    )
    assert resp.status_code == 422


def test_unknown_exclude_rejected(client):
    info = upload(client)
    resp = client.post(
        "/runs", json={"scenario_id": info["scenario_id"], "exclude": ["NOPE"]}
    )
    assert resp.status_code == 422


def test_run_on_unknown_scenario_404(client):
    resp = client.post("/runs", json={"scenario_id": "ffffffffffffffff"})
    assert resp.status_code == 404


def test_identical_requests_reuse_run(client):
    info = upload(client)
    first = start_run(client, info["scenario_id"])
    second = start_run(client, info["scenario_id"])
    assert first["run_id"] == second["run_id"]


# -- artifacts ------------------------------------------------------------------


def test_artifacts_available_and_aligned(client):
    info = upload(client)
    run = start_run(client, info["scenario_id"])
    run_id = run["run_id"]

    frames = client.get(f"/runs/{run_id}/frames").json()
    heatmap = client.get(f"/runs/{run_id}/heatmap").json()
    summary = client.get(f"/runs/{run_id}/summary").json()

    assert [f["time"] for f in frames] == heatmap["times"]
    assert len(heatmap["pool"]) == len(heatmap["times"])
    for row in heatmap["rows"]:
        assert len(row["values"]) == len(heatmap["times"])
    assert summary["communities"]["count"] == 1
    # per-aircraft payload carries positions and contribution
    sample = frames[13]["aircraft"][0]
    for key in ("callsign", "lat", "lon", "alt_ft", "strength", "max_w", "combined_pct"):
        assert key in sample


def test_summary_file_download(client):
    info = upload(client)
    run = start_run(client, info["scenario_id"])
    resp = client.get(f"/runs/{run['run_id']}/summary-file")
    assert resp.status_code == 200
    assert "attachment" in resp.headers["content-disposition"]
    doc = json.loads(resp.content)
    assert doc["params"]["thresh_h_nm"] == 33.0


def test_unknown_run_404(client):
    assert client.get("/runs/ffffffffffffffff").status_code == 404
    assert client.get("/runs/ffffffffffffffff/frames").status_code == 404


def test_end_to_end_determinism(client, tmp_path):
    info = upload(client)
    run = start_run(client, info["scenario_id"])
    body1 = client.get(f"/runs/{run['run_id']}/summary-file").content

    fresh = create_app(data_dir=tmp_path / "data2")
    with TestClient(fresh) as other:
        info2 = other.post("/scenarios", content=CSV).json()
        run2 = other.post("/runs", json={"scenario_id": info2["scenario_id"]}).json()
        body2 = other.get(f"/runs/{run2['run_id']}/summary-file").content
    assert run2["run_id"] == run["run_id"]
    assert body1 == body2
