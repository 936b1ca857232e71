import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from dirac_hulthen.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


BASE_PARAMS = {"mu": 50.0, "v0": 0.7, "a": 1.0, "q": 1.5}


def test_health(client):
    r = client.get("/v1/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "schema_version": 1}


def test_spectrum_roundtrip(client):
    r = client.post(
        "/v1/spectrum",
        json={
            "params": BASE_PARAMS,
            "channels": [{"kappa": 1}, {"kappa": -1}],
            "n_r_max": 4,
        },
    )
    assert r.status_code == 200
    body = r.json()
    assert body["schema_version"] == 1
    assert body["command"] == "spectrum"
    rows = body["rows"]
    assert rows
    keys = [(row["kappa"], row["beta_tilde"], row["sign_gamma"], row["n_r"]) for row in rows]
    assert keys == sorted(keys)
    for row in rows:
        assert row["residual"] < 1e-9
        assert row["omega_sq"] < 0.0
    # derived sign linkage: beta~=+1 forces sign_gamma = -sign(kappa)
    for row in rows:
        assert row["sign_gamma"] == -row["beta_tilde"] * (1 if row["kappa"] > 0 else -1)


def test_spectrum_supercritical_409(client):
    r = client.post(
        "/v1/spectrum",
        json={"params": {"mu": 50.0, "v0": 5.0, "a": 1.0, "q": 1.0},
              "channels": [{"kappa": 1}]},
    )
    assert r.status_code == 409
    assert r.json()["error"]["code"] == "supercriticalcoupling"


def test_spectrum_validation_422(client):
    r = client.post("/v1/spectrum", json={"params": {"mu": -1, "v0": 1, "a": 1, "q": 1},
                                          "channels": [{"kappa": 1}]})
    assert r.status_code == 422


def test_spectrum_inconsistent_channel_400(client):
    r = client.post(
        "/v1/spectrum",
        json={"params": BASE_PARAMS,
              "channels": [{"kappa": -1, "sign_gamma": -1}]},
    )
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "config"


def test_greens_symmetric_rows(client):
    r = client.post(
        "/v1/greens",
        json={
            "params": BASE_PARAMS,
            "channel": {"kappa": -1},
            "energy": 45.0,
            "r_grid": {"start": 1.0, "stop": 3.0, "num": 4},
        },
    )
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert len(rows) == 16
    table = {(row["r_pp"], row["r_p"]): row["value"] for row in rows}
    for (r_pp, r_p), v in table.items():
        assert table[(r_p, r_pp)] == v


def test_greens_refuses_pole_with_nearest(client):
    from dirac_hulthen import PotentialParams, QuantumNumbers, bound_energies

    p = PotentialParams(**BASE_PARAMS)
    e0 = bound_energies(QuantumNumbers.for_channel(-1, 1, p), p, 2)[0].E
    r = client.post(
        "/v1/greens",
        json={
            "params": BASE_PARAMS,
            "channel": {"kappa": -1},
            "energy": e0,
            "r_grid": {"start": 1.0, "stop": 2.0, "num": 2},
        },
    )
    assert r.status_code == 409
    err = r.json()["error"]
    assert err["code"] == "atpole"
    assert err["nearest_pole"] == pytest.approx(e0, rel=1e-8)


def test_greens_coulomb_mode(client):
    r = client.post(
        "/v1/greens",
        json={
            "channel": {"kappa": 1, "sign_gamma": -1},
            "energy": 0.93,
            "coulomb": True,
            "ze2": 0.2,
            "mu": 1.0,
            "r_values": [1.1, 2.4],
        },
    )
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert len(rows) == 1  # only ordered pairs r'' > r'
    assert rows[0]["r_pp"] == 2.4 and rows[0]["r_p"] == 1.1
    assert rows[0]["value"] != 0.0


def test_greens_needs_grid(client):
    r = client.post(
        "/v1/greens",
        json={"params": BASE_PARAMS, "channel": {"kappa": -1}, "energy": 45.0},
    )
    assert r.status_code == 422


def test_approx_error_pointwise(client):
    r = client.post(
        "/v1/approx-error",
        json={"params": {"mu": 1.0, "v0": 1e-6, "a": 1.0, "q": 1.0},
              "r_over_a_min": 1e-2, "r_over_a_max": 0.5, "n_points": 9},
    )
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert len(rows) == 9
    assert rows[0]["rel_error"] < rows[-1]["rel_error"]
    assert rows[-1]["rel_error"] < 1e-2


def test_approx_error_levels_mode(client):
    r = client.post(
        "/v1/approx-error",
        json={"params": {"mu": 50.0, "v0": 0.7, "a": 1.0, "q": 1.0},
              "levels": True, "channel": {"kappa": -1}, "n_r_max": 0},
    )
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert len(rows) == 1
    assert rows[0]["n_r"] == 0
    assert rows[0]["delta_e"] == pytest.approx(0.0, abs=1e-3 * 50.0)


def test_coulomb_limit_endpoint(client):
    r = client.post(
        "/v1/coulomb-limit",
        json={"mu": 1.0, "ze2": 0.2, "kappa": 1, "a_values": [100.0, 1000.0],
              "n_r_max": 1},
    )
    assert r.status_code == 200
    rows = r.json()["rows"]
    by_a = {}
    for row in rows:
        by_a.setdefault(row["a"], []).append(row["rel_deviation"])
    assert max(by_a[1000.0]) < max(by_a[100.0])


def test_selftest_endpoint(client):
    r = client.post("/v1/selftest")
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert len(rows) >= 6
    assert all(row["passed"] for row in rows)


def test_spectrum_q1_rows_bit_identical_to_wrapper(client):
    from dirac_hulthen import PotentialParams, QuantumNumbers, standard_hulthen_energies

    params = {"mu": 50.0, "v0": 0.7, "a": 1.0, "q": 1.0}
    r = client.post(
        "/v1/spectrum",
        json={"params": params, "channels": [{"kappa": -1}], "n_r_max": 12},
    )
    assert r.status_code == 200
    rows = r.json()["rows"]
    p = PotentialParams(**params)
    wrapper = standard_hulthen_energies(QuantumNumbers.for_channel(-1, 1, p), p, 12)
    assert len(rows) == len(wrapper)
    for row, lv in zip(rows, wrapper):
        assert row["energy"] == lv.E  # bit-identical
        assert row["epsilon_tilde"] == lv.epsilon_tilde
        assert row["omega_sq"] == lv.omega_sq
