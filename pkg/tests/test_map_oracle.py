import pytest

from golden_checks import ROOTED_MAP_COUNTS
from map_oracle import (
    CombMap,
    LabelledMap,
    MapError,
    PointKind,
    canonical_code,
    compare_with_series,
    count_pointed,
    count_rooted_maps,
    distances,
    enumerate_labellings,
    enumerate_rooted_maps,
    enumerate_rooted_maps_naive,
    face_polynomial,
    filter_map,
    quadrangulations,
    sum_rule,
    unrooted_code,
)
from parametrization import Family
from power_series import ZPolynomial

BRIDGE = CombMap(1, (0, 1))
LOOP = CombMap(1, (1, 0))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_rooted_map_counts(n: int) -> None:
    assert count_rooted_maps(n) == ROOTED_MAP_COUNTS[n - 1]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_structured_generator_matches_naive_enumeration(n: int) -> None:
    structured = {m.sigma for m in enumerate_rooted_maps(n)}
    naive = {m.sigma for m in enumerate_rooted_maps_naive(n)}

    assert structured == naive


def test_all_maps_are_planar_and_canonical() -> None:
    for n in range(1, 5):
        for m in enumerate_rooted_maps(n):
            assert m.euler_characteristic() == 2
            assert canonical_code(m) == m.sigma


def test_face_polynomials_are_self_dual() -> None:
    assert face_polynomial(1) == ZPolynomial([0, 1, 1])
    assert face_polynomial(2) == ZPolynomial([0, 2, 5, 2])
    coeffs = face_polynomial(4).coeffs
    assert coeffs[1:] == tuple(reversed(coeffs[1:]))


def test_invalid_rotation_systems() -> None:
    with pytest.raises(MapError, match="permutation"):
        CombMap(1, (0, 0))
    with pytest.raises(MapError, match="Euler"):
        CombMap(2, (2, 3, 1, 0))


def test_size_bounds(monkeypatch: pytest.MonkeyPatch) -> None:
    with pytest.raises(MapError):
        count_rooted_maps(0)
    with pytest.raises(MapError):
        count_rooted_maps(9, max_edges=8)

    monkeypatch.setenv("PLANAR_MAPS_MAX_EDGES", "2")
    with pytest.raises(MapError):
        count_rooted_maps(3)
    with pytest.raises(MapError):
        enumerate_rooted_maps_naive(5)


def test_basic_structure() -> None:
    assert (BRIDGE.n_vertices, BRIDGE.n_faces) == (2, 1)
    assert (LOOP.n_vertices, LOOP.n_faces) == (1, 2)
    assert distances(BRIDGE) == [[0, 1], [1, 0]]
    assert CombMap.vertex_map().n_vertices == 1


def test_filters() -> None:
    paths = [m for m in enumerate_rooted_maps(2) if filter_map(m, "quadrangulation")]

    assert len(paths) == 2
    assert all(filter_map(m, "bipartite") for m in paths)
    with pytest.raises(MapError):
        filter_map(BRIDGE, "triangulation")


def test_quadrangulation_counts() -> None:
    assert len(list(quadrangulations(1))) == 2
    assert len(list(quadrangulations(2))) == 9


def test_unrooted_code_forgets_the_root() -> None:
    trees = [m for m in enumerate_rooted_maps(2) if m.n_faces == 1]

    assert len(trees) == 2
    assert len({unrooted_code(m) for m in trees}) == 1


def test_single_edge_bipointed_count() -> None:
    table = count_pointed(1, PointKind.BIPOINTED)

    assert table.table == {(1,): ZPolynomial.z()}
    assert table.to_json()["table"] == {"1": ["0", "1"]}


def test_three_edge_tripointed_counts() -> None:
    table = count_pointed(3, "tripointed")

    assert table.entry(1, 1, 1).evaluate(1) == 1
    assert table.entry(2, 2, 2).evaluate(1) == 2
    assert table.entry(3, 3, 3) == ZPolynomial()


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("kind", list(PointKind))
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_oracle_matches_series(n: int, kind: PointKind, family: Family) -> None:
    assert compare_with_series(n, kind, family) == []


@pytest.mark.parametrize("family", list(Family))
def test_sum_rule(family: Family) -> None:
    rule = sum_rule(3, family)

    assert rule.holds, (rule.oracle, rule.series)


def test_labellings_of_a_bridge() -> None:
    very_well = {lm.labels for lm in enumerate_labellings(BRIDGE, "very-well")}
    well = {lm.labels for lm in enumerate_labellings(BRIDGE)}

    assert very_well == {(0, 1), (1, 0)}
    assert well == {(0, 1), (1, 0), (0, 0)}


def test_labelled_map_helpers() -> None:
    labelled = LabelledMap(BRIDGE, (0, 1))

    assert labelled.is_very_well_labelled()
    assert labelled.local_minima() == [0]
    assert labelled.local_maxima() == [1]
    assert labelled.shifted(2).labels == (2, 3)
    assert sorted(labelled.face_labels(0)) == [0, 1]
    with pytest.raises(MapError):
        LabelledMap(BRIDGE, (0,))
