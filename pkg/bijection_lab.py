"""Local rules on very-well-labelled quadrangulations and their pointed consequences.

Each face of a very-well-labelled quadrangulation ``q`` reads, in face order,
either ``l, l+1, l, l+1`` (confluent) or ``l, l+1, l+2, l+1`` (simple).
``phi_minus`` draws one edge per face (between the two ``l+1`` corners of a
confluent face, between the ``l+2`` corner and the preceding ``l+1`` corner
of a simple face) and drops the local minima of ``q``. ``phi`` applies the
same rule to the negated labels, so it drops the local maxima. The inverse
maps are never built: the pair ``(phi(q), phi_minus(q))`` is the relation
that realizes the bijection on well-labelled maps.
"""
from __future__ import annotations

import dataclasses
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Set, Tuple

import settings
from map_formulas import DistanceError, DistanceSpec
from map_oracle import (
    CombMap,
    LabelledMap,
    Labelling,
    MapError,
    PointKind,
    count_pointed,
    distances,
    enumerate_labellings,
    enumerate_rooted_maps,
    quadrangulations,
    unrooted_code,
)
from power_series import ZPolynomial

logger = logging.getLogger(__name__)


class TypeValue(str, Enum):
    A = "A"
    B = "B"
    NEITHER = "neither"


@dataclass(frozen=True)
class TypeClass:
    value: TypeValue
    context: Tuple[int, ...]


@dataclass(frozen=True)
class Drawing:
    """A map drawn inside the faces of ``q``.

    ``q_vertex[v]`` is the vertex of ``q`` underlying vertex ``v`` of the
    drawing, ``corner[d]`` the dart of ``q`` whose corner holds dart ``d``.
    """

    labelled: LabelledMap
    q_vertex: Tuple[int, ...]
    corner: Tuple[int, ...]

    def darts_by_corner(self) -> Dict[int, int]:
        return {corner: d for d, corner in enumerate(self.corner)}


@dataclass(frozen=True)
class SuperimposedPair:
    q: LabelledMap
    upper: Drawing
    lower: Drawing

    @property
    def m(self) -> LabelledMap:
        """``phi(q)``, which keeps the local minima of ``q``."""

        return self.upper.labelled

    @property
    def mprime(self) -> LabelledMap:
        """``phi_minus(q)``, which keeps the local maxima of ``q``."""

        return self.lower.labelled


def _face_rule(labels: Sequence[int]) -> Tuple[int, int]:
    """Positions (within the face) joined by the minimum-deleting rule."""

    low = min(labels)
    pattern = sorted(labels)
    if pattern == [low, low, low + 1, low + 1]:
        first, second = [k for k, label in enumerate(labels) if label == low + 1]
        return first, second
    if pattern == [low, low + 1, low + 1, low + 2]:
        k = labels.index(low)
        return (k + 1) % 4, (k + 2) % 4
    raise MapError(f"face labels {list(labels)} are not those of a very-well-labelled quadrangle")


def _check_quadrangulation(q: LabelledMap) -> None:
    if not q.base.is_quadrangulation():
        raise MapError("input is not a quadrangulation")
    if not q.is_very_well_labelled():
        raise MapError("input is not very-well-labelled")


def _draw(q: LabelledMap, *, drop_minima: bool) -> Drawing:
    _check_quadrangulation(q)
    base = q.base
    sign = 1 if drop_minima else -1
    corner: List[int] = []
    for face in base.faces:
        labels = [sign * q.labels[base.vertex_of[d]] for d in face]
        a, b = _face_rule(labels)
        corner.extend((face[a], face[b]))
    holder = {q_dart: d for d, q_dart in enumerate(corner)}
    sigma = [0] * len(corner)
    for cycle in base.vertices:
        around = [holder[d] for d in cycle if d in holder]
        for k, d in enumerate(around):
            sigma[d] = around[(k + 1) % len(around)]
    drawn = CombMap(len(base.faces), tuple(sigma))
    q_vertex = tuple(base.vertex_of[corner[cycle[0]]] for cycle in drawn.vertices)
    labels = tuple(q.labels[v] for v in q_vertex)
    return Drawing(LabelledMap(drawn, labels), q_vertex, tuple(corner))


def phi(q: LabelledMap) -> LabelledMap:
    """Apply the maximum-deleting local rule to every face of ``q``."""

    return _draw(q, drop_minima=False).labelled


def phi_minus(q: LabelledMap) -> LabelledMap:
    """Apply the Schaeffer local rule to every face of ``q``."""

    return _draw(q, drop_minima=True).labelled


def superimpose(q: LabelledMap) -> SuperimposedPair:
    return SuperimposedPair(q, _draw(q, drop_minima=False), _draw(q, drop_minima=True))


def _check_faces_bound(n_faces: int, max_faces: Optional[int]) -> None:
    bound = settings.max_faces() if max_faces is None else max_faces
    if n_faces < 1 or n_faces > bound:
        raise MapError(f"number of faces must be between 1 and {bound}, got {n_faces}")


def lambda_pairs(n_faces: int, *, max_faces: Optional[int] = None) -> Iterator[SuperimposedPair]:
    """``(q, phi(q), phi_minus(q))`` for every rooted very-well-labelled quadrangulation.

    Labels are taken up to a global shift (minimum label 0).
    """

    _check_faces_bound(n_faces, max_faces)
    for base in quadrangulations(n_faces, max_edges=2 * n_faces):
        for q in enumerate_labellings(base, Labelling.VERY_WELL):
            yield superimpose(q)


def normalized(labelled: LabelledMap) -> LabelledMap:
    return labelled.shifted(-min(labelled.labels))


def unrooted_key(labelled: LabelledMap) -> Tuple:
    """Isomorphism class of a labelled map, labels taken up to a global shift."""

    lm = normalized(labelled)
    return unrooted_code(lm.base, lm.labels, lm.marks, lm.distinguished_faces)


def _distance_pattern(matrix: List[List[int]], marks: Sequence[int], stu: Sequence[int]) -> TypeValue:
    pairs = list(itertools.combinations(range(len(marks)), 2))
    gaps = {matrix[marks[i]][marks[j]] - stu[i] - stu[j] for i, j in pairs}
    if gaps == {0}:
        return TypeValue.A
    if gaps == {-1}:
        return TypeValue.B
    return TypeValue.NEITHER


def canonical_labelling(m: CombMap, marks: Sequence[int], stu: Sequence[int]) -> LabelledMap:
    """The unique labelling with the marks as only local minima, of labels ``-s, -t(, -u)``."""

    if len(marks) != len(stu) or len(marks) not in (2, 3):
        raise MapError(f"expected 2 or 3 marks with matching indices, got {len(marks)} and {len(stu)}")
    if len(set(marks)) != len(marks):
        raise MapError("marked vertices must be distinct")
    if min(stu) < 1:
        raise MapError(f"indices must be positive, got {tuple(stu)}")
    matrix = distances(m)
    if _distance_pattern(matrix, marks, stu) is TypeValue.NEITHER:
        raise MapError(f"distance precondition violated for marks {tuple(marks)} and indices {tuple(stu)}")
    labels = tuple(
        min(matrix[v][mark] - s for mark, s in zip(marks, stu))
        for v in range(m.n_vertices)
    )
    labelled = LabelledMap(m, labels, tuple(marks))
    if sorted(labelled.local_minima()) != sorted(marks):
        raise MapError("marked vertices are not the only local minima")
    if any(labels[mark] != -s for mark, s in zip(marks, stu)):
        raise MapError("marked vertices do not carry the expected labels")
    return labelled


def _incident_faces(m: CombMap) -> List[Set[int]]:
    return [{m.face_of[d] for d in cycle} for cycle in m.vertices]


def classify(mprime: LabelledMap, stu: Sequence[int]) -> TypeClass:
    """Type of a two- or three-face well-labelled map with distinguished faces.

    Faces are taken in ``mprime.distinguished_faces`` order (all faces in
    index order when none are given) and must satisfy ``min(f_i) = 1 - s_i``.
    """

    base = mprime.base
    stu = tuple(stu)
    if len(stu) not in (2, 3) or base.n_faces != len(stu):
        raise MapError(f"expected a map with {len(stu)} faces, got {base.n_faces}")
    faces = mprime.distinguished_faces or tuple(range(base.n_faces))
    for f, s in zip(faces, stu):
        if min(mprime.face_labels(f)) != 1 - s:
            raise MapError(f"face {f} has minimum label {min(mprime.face_labels(f))}, expected {1 - s}")

    incident = _incident_faces(base)
    border = [v for v, seen in enumerate(incident) if len(seen) >= 2]
    if not border or min(mprime.labels[v] for v in border) != 0:
        return TypeClass(TypeValue.NEITHER, stu)
    zero_edges = set()
    for d in range(0, 2 * base.n_edges, 2):
        left, right = base.face_of[d], base.face_of[d + 1]
        if left != right and mprime.labels[base.vertex_of[d]] == 0 and mprime.labels[base.head(d)] == 0:
            zero_edges.add(frozenset((left, right)))

    if len(stu) == 2:
        return TypeClass(TypeValue.B if zero_edges else TypeValue.A, stu)
    pairs = [frozenset(pair) for pair in itertools.combinations(faces, 2)]
    if not zero_edges and all(
        any(mprime.labels[v] == 0 and pair <= incident[v] for v in border) for pair in pairs
    ):
        return TypeClass(TypeValue.A, stu)
    if all(pair in zero_edges for pair in pairs):
        return TypeClass(TypeValue.B, stu)
    return TypeClass(TypeValue.NEITHER, stu)


@dataclass
class BijectionReport:
    """Counters per checked property and the counterexamples found."""

    n_faces: int
    checks: Dict[str, int] = field(default_factory=lambda: defaultdict(int))
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def check(self, name: str, ok: bool, **detail: Any) -> None:
        self.checks[name] += 1
        if not ok:
            self.counterexamples.append({"check": name, **detail})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_faces": self.n_faces,
            "status": "pass" if self.passed else "fail",
            "checks": dict(sorted(self.checks.items())),
            "counterexamples": self.counterexamples,
        }


def _sorted_labels(labelled: LabelledMap, vertices: Sequence[int]) -> List[int]:
    return sorted(labelled.labels[v] for v in vertices)


def _check_local_structure(pair: SuperimposedPair, report: BijectionReport, index: int) -> None:
    q, m, mprime = pair.q, pair.m, pair.mprime
    n = q.base.n_faces
    report.check("edge_count", m.base.n_edges == n and mprime.base.n_edges == n, pair=index)
    all_vertices = set(range(q.base.n_vertices))
    report.check(
        "kept_vertices",
        set(pair.upper.q_vertex) == all_vertices - set(q.local_maxima())
        and set(pair.lower.q_vertex) == all_vertices - set(q.local_minima()),
        pair=index,
    )
    report.check(
        "local_minima_to_faces",
        _sorted_labels(m, m.local_minima())
        == sorted(min(mprime.face_labels(f)) - 1 for f in range(mprime.base.n_faces)),
        pair=index,
    )
    report.check(
        "faces_to_local_maxima",
        sorted(max(m.face_labels(f)) + 1 for f in range(m.base.n_faces))
        == _sorted_labels(mprime, mprime.local_maxima()),
        pair=index,
    )
    report.check("well_labelled", m.is_well_labelled() and mprime.is_well_labelled(), pair=index)

    # Edge k of both drawings lies in face k of q.
    for k in range(n):
        low = mprime.labels[mprime.base.vertex_of[2 * k]]
        if low == mprime.labels[mprime.base.head(2 * k)]:
            ends = {m.labels[m.base.vertex_of[2 * k]], m.labels[m.base.head(2 * k)]}
            report.check("dual_flat_edges", ends == {low - 1}, pair=index, edge=k)
    report.check(
        "very_well_preserved",
        m.is_very_well_labelled() == mprime.is_very_well_labelled(),
        pair=index,
    )


def _check_sector_edges(pair: SuperimposedPair, report: BijectionReport, index: int) -> None:
    """Between two edges of ``mprime`` climbing from ``u``, some edge of ``m`` descends from ``u``."""

    base = pair.q.base
    labels = pair.q.labels
    lower = pair.lower
    upper_darts = pair.upper.darts_by_corner()
    upper_base = pair.upper.labelled.base
    for u, cycle in enumerate(lower.labelled.base.vertices):
        qu = lower.q_vertex[u]
        level = labels[qu]
        climbing = [
            d for d in cycle
            if labels[lower.q_vertex[lower.labelled.base.head(d)]] == level + 1
        ]
        for e1, e2 in itertools.permutations(climbing, 2):
            start, stop = lower.corner[e1], lower.corner[e2]
            found = False
            d = base.sigma_inverse[start]
            while d != stop:
                held = upper_darts.get(d)
                if held is not None:
                    target = pair.upper.q_vertex[upper_base.head(held)]
                    if labels[target] == level - 1:
                        found = True
                        break
                d = base.sigma_inverse[d]
            report.check("sector_edge", found, pair=index, vertex=qu, darts=[e1, e2])


def _match_faces(mprime: LabelledMap, mark_labels: Sequence[int]) -> Optional[Tuple[int, ...]]:
    remaining = list(range(mprime.base.n_faces))
    chosen = []
    for label in mark_labels:
        match = next((f for f in remaining if min(mprime.face_labels(f)) - 1 == label), None)
        if match is None:
            return None
        remaining.remove(match)
        chosen.append(match)
    return tuple(chosen)


def _check_distance_dichotomy(pair: SuperimposedPair, report: BijectionReport, index: int) -> None:
    m, mprime = pair.m, pair.mprime
    marks = m.local_minima()
    if len(marks) not in (2, 3) or mprime.base.n_faces != len(marks):
        return
    name = "bipointed_dichotomy" if len(marks) == 2 else "tripointed_dichotomy"
    matrix = distances(m.base)
    faces = _match_faces(mprime, [m.labels[v] for v in marks])
    if faces is None:
        report.check(name, False, pair=index, reason="faces do not match local minima")
        return
    top = -1 - max(m.labels[v] for v in marks)
    for shift in range(top, top - 2 * pair.q.base.n_faces - 3, -1):
        stu = tuple(-(m.labels[v] + shift) for v in marks)
        shifted = dataclasses.replace(mprime.shifted(shift), distinguished_faces=faces)
        observed = classify(shifted, stu).value
        expected = _distance_pattern(matrix, marks, stu)
        report.check(name, observed is expected, pair=index, stu=list(stu),
                     observed=observed.value, expected=expected.value)
        if expected is not TypeValue.NEITHER:
            relabelled = canonical_labelling(m.base, marks, stu)
            report.check("canonical_labelling", relabelled.labels == m.shifted(shift).labels,
                         pair=index, stu=list(stu))


def _monomial(power: int, weight: Fraction) -> ZPolynomial:
    return ZPolynomial([0] * power + [weight])


def _pointed_tables(pairs: Sequence[SuperimposedPair], n: int, n_marks: int) -> Tuple[Dict, Dict]:
    """Weighted counts of classified face orderings keyed by ``(type, stu)``.

    Each rooted quadrangulation weighs ``1/(4n)``, and ``z`` counts the local
    maxima of ``mprime`` (the faces of the pointed map).
    """

    weight = Fraction(1, 4 * n)
    table: Dict[Tuple[TypeValue, Tuple[int, ...]], ZPolynomial] = {}
    very_well: Dict[Tuple[int, ...], ZPolynomial] = {}
    for pair in pairs:
        mprime = pair.mprime
        if mprime.base.n_faces != n_marks:
            continue
        incident = _incident_faces(mprime.base)
        border = [v for v, seen in enumerate(incident) if len(seen) >= 2]
        shifted = mprime.shifted(-min(mprime.labels[v] for v in border))
        term = _monomial(len(mprime.local_maxima()), weight)
        for faces in itertools.permutations(range(n_marks)):
            stu = tuple(1 - min(shifted.face_labels(f)) for f in faces)
            ordered = dataclasses.replace(shifted, distinguished_faces=faces)
            value = classify(ordered, stu).value
            if value is TypeValue.NEITHER:
                continue
            key = (value, stu)
            table[key] = table.get(key, ZPolynomial()) + term
            if value is TypeValue.A and mprime.is_very_well_labelled():
                very_well[stu] = very_well.get(stu, ZPolynomial()) + term
    return table, very_well


def _expected_bipointed(oracle: Dict[Tuple[int, ...], ZPolynomial]) -> Dict:
    expected = {}
    for (d,), value in oracle.items():
        for s in range(1, d):
            expected[(TypeValue.A, (s, d - s))] = value
        for s in range(1, d + 1):
            expected[(TypeValue.B, (s, d + 1 - s))] = value
    return expected


def _expected_tripointed(oracle: Dict[Tuple[int, ...], ZPolynomial]) -> Dict:
    expected = {}
    for key, value in oracle.items():
        try:
            spec = DistanceSpec.three(*key)
        except DistanceError:
            continue
        if spec.aligned:
            continue
        expected[(TypeValue.A if spec.parity == "even" else TypeValue.B, spec.stu)] = value
    return expected


def _compare_tables(name: str, observed: Dict, expected: Dict, report: BijectionReport) -> None:
    for key in sorted(set(observed) | set(expected), key=repr):
        got = observed.get(key, ZPolynomial())
        want = expected.get(key, ZPolynomial())
        report.check(name, got == want, key=repr(key), observed=got.to_json(), expected=want.to_json())


def _check_injective(
    name: str,
    pairs: Sequence[SuperimposedPair],
    side: str,
    targets: Set[Tuple],
    report: BijectionReport,
) -> None:
    images: Dict[Tuple, Tuple] = {}
    for pair in pairs:
        images[unrooted_key(pair.q)] = unrooted_key(getattr(pair, side))
    distinct = set(images.values())
    report.check(f"{name}_injective", len(distinct) == len(images), classes=len(images), images=len(distinct))
    report.check(f"{name}_onto", distinct == targets, images=len(distinct), targets=len(targets))


def well_labelled_classes(n_edges: int) -> Set[Tuple]:
    """Isomorphism classes of well-labelled maps with ``n_edges`` edges."""

    return {
        unrooted_key(labelled)
        for m in enumerate_rooted_maps(n_edges, max_edges=n_edges)
        for labelled in enumerate_labellings(m, Labelling.WELL)
    }


def verify_pointed_bijections(n_faces: int, *, max_faces: Optional[int] = None) -> BijectionReport:
    """Exhaustive checks of the local rules and the pointed bijections at ``n_faces``."""

    pairs = list(lambda_pairs(n_faces, max_faces=max_faces))
    report = BijectionReport(n_faces=n_faces)
    for index, pair in enumerate(pairs):
        _check_local_structure(pair, report, index)
        _check_sector_edges(pair, report, index)
        _check_distance_dichotomy(pair, report, index)

    targets = well_labelled_classes(n_faces)
    _check_injective("phi", pairs, "m", targets, report)
    _check_injective("phi_minus", pairs, "mprime", targets, report)

    bipointed = count_pointed(n_faces, PointKind.BIPOINTED, max_edges=n_faces)
    bipartite = count_pointed(n_faces, PointKind.BIPOINTED, bipartite=True, max_edges=n_faces)
    tripointed = count_pointed(n_faces, PointKind.TRIPOINTED, max_edges=n_faces)
    two_faces, very_well = _pointed_tables(pairs, n_faces, 2)
    three_faces, _ = _pointed_tables(pairs, n_faces, 3)
    _compare_tables("bipointed_counts", two_faces, _expected_bipointed(bipointed.table), report)
    _compare_tables(
        "bipartite_counts",
        {(TypeValue.A, stu): value for stu, value in very_well.items()},
        {key: value for key, value in _expected_bipointed(bipartite.table).items() if key[0] is TypeValue.A},
        report,
    )
    _compare_tables("tripointed_counts", three_faces, _expected_tripointed(tripointed.table), report)

    if report.passed:
        logger.info("bijection checks at %s faces: %s pairs, all pass", n_faces, len(pairs))
    else:
        logger.warning("bijection checks at %s faces: %s counterexamples", n_faces, len(report.counterexamples))
    return report
