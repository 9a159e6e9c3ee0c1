import pytest
from fastapi.testclient import TestClient

from api.server import MAX_API_ORDER, app
from golden_checks import G111


@pytest.fixture(scope="module")
def client() -> TestClient:
    return TestClient(app)


def test_health(client: TestClient) -> None:
    response = client.get("/health")

    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_two_point(client: TestClient) -> None:
    response = client.get("/two-point", params={"d": 1, "order": 3})

    assert response.status_code == 200
    body = response.json()
    assert body["series"]["order"] == 3
    assert body["series"]["coeffs"][1] == "1"


def test_three_point(client: TestClient) -> None:
    response = client.get("/three-point", params=[("d", 1), ("d", 1), ("d", 1), ("order", 6)])

    assert response.status_code == 200
    body = response.json()
    assert body["parity"] == "odd"
    assert body["series"]["coeffs"] == [str(c) for c in G111[:7]]


@pytest.mark.parametrize(
    "params",
    [
        [("d", 1), ("d", 1), ("d", 3)],
        [("d", 1), ("d", 1)],
        [("d", 1), ("d", 1), ("d", 1), ("family", "bipartite")],
        [("d", 2), ("d", 2), ("d", 2), ("ring", "reals")],
        [("d", 2), ("d", 2), ("d", 2), ("order", MAX_API_ORDER + 1)],
    ],
)
def test_three_point_rejections(client: TestClient, params) -> None:
    assert client.get("/three-point", params=params).status_code == 422


def test_two_point_rejects_zero_distance(client: TestClient) -> None:
    assert client.get("/two-point", params={"d": 0}).status_code == 422


def test_critical_point(client: TestClient) -> None:
    body = client.get("/critical-point", params={"z": 1, "family": "bipartite"}).json()

    assert body["g_crit"] == pytest.approx(1 / 8)
    assert body["observables"]["n_v_fraction"] == pytest.approx(2 / 3)
    assert client.get("/critical-point", params={"z": -1}).status_code == 422


def test_identities(client: TestClient) -> None:
    names = client.get("/identities").json()["identities"]

    assert "recurX" in names
    assert names == sorted(names)
