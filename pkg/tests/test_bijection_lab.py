import pytest

from bijection_lab import (
    BijectionReport,
    TypeValue,
    canonical_labelling,
    classify,
    lambda_pairs,
    phi,
    phi_minus,
    superimpose,
    unrooted_key,
    verify_pointed_bijections,
    well_labelled_classes,
)
from map_oracle import CombMap, LabelledMap, MapError

PATH = CombMap(2, (0, 2, 1, 3))
BRIDGE = CombMap(1, (0, 1))
LOOP = CombMap(1, (1, 0))


def test_confluent_face() -> None:
    q = LabelledMap(PATH, (0, 1, 0))

    lower = phi_minus(q)
    upper = phi(q)

    assert lower.base.sigma == LOOP.sigma
    assert lower.labels == (1,)
    assert upper.base.sigma == BRIDGE.sigma
    assert upper.labels == (0, 0)


def test_simple_face() -> None:
    q = LabelledMap(PATH, (0, 1, 2))

    assert sorted(phi_minus(q).labels) == [1, 2]
    assert sorted(phi(q).labels) == [0, 1]
    pair = superimpose(q)
    assert pair.m.labels == phi(q).labels
    assert pair.mprime.labels == phi_minus(q).labels


def test_rules_reject_bad_input() -> None:
    with pytest.raises(MapError, match="quadrangulation"):
        phi(LabelledMap(BRIDGE, (0, 1)))
    with pytest.raises(MapError, match="very-well"):
        phi_minus(LabelledMap(PATH, (0, 0, 0)))


def test_lambda_pairs_at_one_face() -> None:
    pairs = list(lambda_pairs(1))

    assert len(pairs) == 8
    assert all(pair.m.base.n_edges == 1 and pair.mprime.base.n_edges == 1 for pair in pairs)


def test_face_bound(monkeypatch: pytest.MonkeyPatch) -> None:
    with pytest.raises(MapError):
        list(lambda_pairs(0))
    monkeypatch.setenv("PLANAR_MAPS_MAX_FACES", "1")
    with pytest.raises(MapError):
        list(lambda_pairs(2))


def test_well_labelled_classes_with_one_edge() -> None:
    assert len(well_labelled_classes(1)) == 3
    assert unrooted_key(LabelledMap(BRIDGE, (0, 1))) == unrooted_key(LabelledMap(BRIDGE, (5, 4)))


def test_canonical_labelling_of_adjacent_marks() -> None:
    labelled = canonical_labelling(BRIDGE, (0, 1), (1, 1))

    assert labelled.labels == (-1, -1)
    assert labelled.marks == (0, 1)


@pytest.mark.parametrize(
    "marks, stu",
    [((0, 1), (1, 2)), ((0, 0), (1, 1)), ((0, 1), (0, 1)), ((0,), (1,))],
)
def test_canonical_labelling_errors(marks, stu) -> None:
    with pytest.raises(MapError):
        canonical_labelling(BRIDGE, marks, stu)


def test_classify_loop() -> None:
    result = classify(LabelledMap(LOOP, (0,)), (1, 1))

    assert result.value is TypeValue.B
    assert result.context == (1, 1)


def test_classify_errors() -> None:
    with pytest.raises(MapError):
        classify(LabelledMap(LOOP, (0,)), (1, 1, 1))
    with pytest.raises(MapError):
        classify(LabelledMap(LOOP, (0,)), (2, 1))


def test_report_bookkeeping() -> None:
    report = BijectionReport(n_faces=1)

    report.check("edge_count", True)
    assert report.passed
    report.check("edge_count", False, pair=3)

    payload = report.to_dict()
    assert payload["status"] == "fail"
    assert payload["checks"] == {"edge_count": 2}
    assert payload["counterexamples"] == [{"check": "edge_count", "pair": 3}]


@pytest.mark.parametrize("n_faces", [1, 2, 3])
def test_pointed_bijections_hold(n_faces: int) -> None:
    report = verify_pointed_bijections(n_faces)

    assert report.passed, report.counterexamples[:3]
    assert report.checks["phi_injective"] == 1
    assert report.checks["bipointed_counts"] > 0
