"""Brute-force enumeration of rooted planar maps as rotation systems.

A map with ``n`` edges has darts ``0 .. 2n-1``. The edge involution is fixed,
``alpha(d) = d ^ 1``, and ``sigma`` gives the counterclockwise successor of a
dart around its vertex. Faces are the cycles of ``phi = sigma o alpha``.
Dart 0 is the root. The corner ``c(d)`` is the angular sector between
``sigma^-1(d)`` and ``d``; it belongs to the face of ``d``.

The oracle counts are the exact ground truth the closed-form series must
reproduce: every pointed count is a sum over rooted maps divided by ``2n``.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import settings
from map_formulas import three_point, two_point, valid_triples
from parametrization import Family, solve_params_bivariate
from power_series import ZPolynomial

logger = logging.getLogger(__name__)

Code = Tuple[int, ...]
DistanceKey = Tuple[int, ...]


class MapError(ValueError):
    """Invalid rotation system, labelling or size bound."""


class PointKind(str, Enum):
    BIPOINTED = "bipointed"
    TRIPOINTED = "tripointed"


class Labelling(str, Enum):
    WELL = "well"
    VERY_WELL = "very-well"


def _cycles(perm: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycle = []
        d = start
        while not seen[d]:
            seen[d] = True
            cycle.append(d)
            d = perm[d]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def _bfs_order(sigma: Sequence[int], root: int) -> List[int]:
    """Darts reachable from ``root`` through ``sigma`` and ``alpha``, in BFS order."""

    order = [root]
    seen = {root}
    head = 0
    while head < len(order):
        d = order[head]
        head += 1
        for nxt in (sigma[d], d ^ 1):
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
    return order


def _relabel(sigma: Sequence[int], root: int) -> Tuple[Code, List[int]]:
    """Rooted canonical code and the old-to-new dart map.

    Each new edge is numbered the first time either of its darts is reached,
    so the new labelling still pairs ``2k`` with ``2k + 1``.
    """

    new_of = [-1] * len(sigma)
    queue = deque([root])
    new_of[root] = 0
    new_of[root ^ 1] = 1
    queue.append(root ^ 1)
    next_label = 2
    while queue:
        d = queue.popleft()
        nxt = sigma[d]
        if new_of[nxt] < 0:
            new_of[nxt] = next_label
            new_of[nxt ^ 1] = next_label + 1
            next_label += 2
            queue.append(nxt)
            queue.append(nxt ^ 1)
    if next_label != len(sigma):
        raise MapError("rotation system is not connected")
    code = [0] * len(sigma)
    for old, new in enumerate(new_of):
        code[new] = new_of[sigma[old]]
    return tuple(code), new_of


@dataclass(frozen=True)
class CombMap:
    """Rooted planar map given by its vertex rotation ``sigma`` on darts."""

    n_edges: int
    sigma: Code

    def __post_init__(self) -> None:
        if len(self.sigma) != 2 * self.n_edges or sorted(self.sigma) != list(range(2 * self.n_edges)):
            raise MapError(f"sigma must be a permutation of {2 * self.n_edges} darts")
        if self.n_edges and len(_bfs_order(self.sigma, 0)) != 2 * self.n_edges:
            raise MapError("rotation system is not connected")
        genus_check = self.n_vertices - self.n_edges + self.n_faces
        if genus_check != 2:
            raise MapError(f"Euler relation fails: V - E + F = {genus_check}")

    @classmethod
    def vertex_map(cls) -> "CombMap":
        return cls(0, ())

    # -- derived structure ---------------------------------------------
    @cached_property
    def phi(self) -> Code:
        return tuple(self.sigma[d ^ 1] for d in range(2 * self.n_edges))

    @cached_property
    def sigma_inverse(self) -> Code:
        inverse = [0] * len(self.sigma)
        for d, image in enumerate(self.sigma):
            inverse[image] = d
        return tuple(inverse)

    @cached_property
    def vertices(self) -> Tuple[Tuple[int, ...], ...]:
        if not self.n_edges:
            return ((),)
        return _cycles(self.sigma)

    @cached_property
    def faces(self) -> Tuple[Tuple[int, ...], ...]:
        if not self.n_edges:
            return ((),)
        return _cycles(self.phi)

    @cached_property
    def vertex_of(self) -> Code:
        owner = [0] * len(self.sigma)
        for index, cycle in enumerate(self.vertices):
            for d in cycle:
                owner[d] = index
        return tuple(owner)

    @cached_property
    def face_of(self) -> Code:
        owner = [0] * len(self.sigma)
        for index, cycle in enumerate(self.faces):
            for d in cycle:
                owner[d] = index
        return tuple(owner)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def face_degrees(self) -> List[int]:
        return [len(face) for face in self.faces] if self.n_edges else [0]

    def head(self, d: int) -> int:
        """Vertex the dart ``d`` points to."""

        return self.vertex_of[d ^ 1]

    def neighbours(self, v: int) -> List[int]:
        return [self.head(d) for d in self.vertices[v]]

    def is_bipartite(self) -> bool:
        return all(degree % 2 == 0 for degree in self.face_degrees())

    def is_quadrangulation(self) -> bool:
        return bool(self.n_edges) and all(degree == 4 for degree in self.face_degrees())

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def canonical_code(self) -> Code:
        return canonical_code(self)


def canonical_code(m: CombMap) -> Code:
    """Dart permutation after the canonical relabelling that fixes the root."""

    if not m.n_edges:
        return ()
    return _relabel(m.sigma, 0)[0]


def unrooted_code(
    m: CombMap,
    labels: Optional[Sequence[int]] = None,
    marks: Sequence[int] = (),
    faces: Sequence[int] = (),
) -> Tuple:
    """Isomorphism invariant: minimum over all root darts of the relabelled data.

    Vertex labels are read dart by dart, and marked vertices and faces are
    named by the smallest new dart they contain.
    """

    if not m.n_edges:
        return ((), tuple(labels or ()), tuple(marks), tuple(faces))
    best: Optional[Tuple] = None
    for root in range(2 * m.n_edges):
        code, new_of = _relabel(m.sigma, root)
        dart_labels: Tuple[int, ...] = ()
        if labels is not None:
            order = sorted(range(len(new_of)), key=new_of.__getitem__)
            dart_labels = tuple(labels[m.vertex_of[d]] for d in order)
        mark_names = tuple(min(new_of[d] for d in m.vertices[v]) for v in marks)
        face_names = tuple(min(new_of[d] for d in m.faces[f]) for f in faces)
        candidate = (code, dart_labels, mark_names, face_names)
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return best


def _normalize(sigma: List[int], root: int) -> CombMap:
    code, _ = _relabel(sigma, root)
    return CombMap(len(code) // 2, code)


def _insert_before(sigma: List[int], inverse: Dict[int, int], new: int, target: int) -> None:
    """Place dart ``new`` in the corner just before ``target``."""

    previous = inverse[target]
    sigma[previous] = new
    sigma[new] = target
    inverse[new] = previous
    inverse[target] = new


def _inverse_map(sigma: Sequence[int]) -> Dict[int, int]:
    return {image: d for d, image in enumerate(sigma)}


def _add_root_edge(m: CombMap) -> Iterator[CombMap]:
    """Non-isthmus maps obtained by adding a root edge inside the root face."""

    a = 2 * m.n_edges
    b = a + 1
    if not m.n_edges:
        yield _normalize([b, a], a)
        return
    for c2 in _phi_orbit(m, 0):
        orders = ((a, b), (b, a)) if c2 == 0 else ((a, b),)
        for first, second in orders:
            sigma = list(m.sigma) + [0, 0]
            inverse = _inverse_map(m.sigma)
            if c2 == 0:
                _insert_before(sigma, inverse, second, 0)
                _insert_before(sigma, inverse, first, second)
            else:
                _insert_before(sigma, inverse, a, 0)
                _insert_before(sigma, inverse, b, c2)
            yield _normalize(sigma, a)


def _phi_orbit(m: CombMap, start: int) -> List[int]:
    orbit = [start]
    d = m.phi[start]
    while d != start:
        orbit.append(d)
        d = m.phi[d]
    return orbit


def _join_isthmus(left: CombMap, right: CombMap) -> CombMap:
    """Join two rooted maps by a new root edge between their root corners."""

    offset = 2 * left.n_edges
    a = offset + 2 * right.n_edges
    b = a + 1
    sigma = list(left.sigma) + [d + offset for d in right.sigma] + [a, b]
    inverse = _inverse_map(sigma[: a])
    if left.n_edges:
        _insert_before(sigma, inverse, a, 0)
    if right.n_edges:
        _insert_before(sigma, inverse, b, offset)
    return _normalize(sigma, a)


def _check_bound(n: int, max_edges: Optional[int]) -> None:
    bound = settings.max_edges() if max_edges is None else max_edges
    if n < 1 or n > bound:
        raise MapError(f"number of edges must be between 1 and {bound}, got {n}")


@lru_cache(maxsize=None)
def _rooted_maps(n: int) -> Tuple[CombMap, ...]:
    if n == 0:
        return (CombMap.vertex_map(),)
    seen: Dict[Code, CombMap] = {}
    candidates: List[CombMap] = []
    for m in _rooted_maps(n - 1):
        candidates.extend(_add_root_edge(m))
    for n_left in range(n):
        for left in _rooted_maps(n_left):
            for right in _rooted_maps(n - 1 - n_left):
                candidates.append(_join_isthmus(left, right))
    for candidate in candidates:
        seen.setdefault(candidate.sigma, candidate)
    if len(seen) != len(candidates):
        logger.warning("root-edge generation produced %s duplicates at n=%s", len(candidates) - len(seen), n)
    maps = tuple(seen[code] for code in sorted(seen))
    logger.debug("generated %s rooted maps with %s edges", len(maps), n)
    return maps


def enumerate_rooted_maps(n: int, *, max_edges: Optional[int] = None) -> Iterator[CombMap]:
    """Every rooted planar map with ``n`` edges, once each, in canonical-code order."""

    _check_bound(n, max_edges)
    yield from _rooted_maps(n)


def enumerate_rooted_maps_naive(n: int) -> Iterator[CombMap]:
    """All rotation systems on ``2n`` darts, filtered to planar and deduplicated.

    Factorial cost; meant for cross-checking the structured generator at n <= 3.
    """

    if n < 1 or n > 4:
        raise MapError(f"naive enumeration supports 1 <= n <= 4, got {n}")
    seen = set()
    for perm in itertools.permutations(range(2 * n)):
        if len(_bfs_order(perm, 0)) != 2 * n:
            continue
        n_vertices = len(_cycles(perm))
        n_faces = len(_cycles([perm[d ^ 1] for d in range(2 * n)]))
        if n_vertices - n + n_faces != 2:
            continue
        code, _ = _relabel(perm, 0)
        if code not in seen:
            seen.add(code)
    for code in sorted(seen):
        yield CombMap(n, code)


def count_rooted_maps(n: int, *, max_edges: Optional[int] = None) -> int:
    _check_bound(n, max_edges)
    return len(_rooted_maps(n))


def face_polynomial(n: int, *, max_edges: Optional[int] = None) -> ZPolynomial:
    """``P_n(z)``: rooted maps with ``n`` edges counted with weight ``z^faces``."""

    _check_bound(n, max_edges)
    counts = Counter(m.n_faces for m in _rooted_maps(n))
    return ZPolynomial([counts.get(k, 0) for k in range(n + 2)], max_degree=n + 1)


def distances(m: CombMap) -> List[List[int]]:
    """All-pairs graph distances by breadth-first search from every vertex."""

    size = m.n_vertices
    adjacency = [sorted(set(m.neighbours(v))) for v in range(size)]
    matrix = []
    for source in range(size):
        row = [-1] * size
        row[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if row[w] < 0:
                    row[w] = row[v] + 1
                    queue.append(w)
        matrix.append(row)
    return matrix


def filter_map(m: CombMap, predicate: str) -> bool:
    if predicate == "bipartite":
        return m.is_bipartite()
    if predicate == "quadrangulation":
        return m.is_quadrangulation()
    raise MapError(f"unknown predicate '{predicate}' (expected bipartite or quadrangulation)")


@dataclass
class PointedCount:
    """Weighted pointed counts at ``n`` edges, keyed by the distance tuple."""

    n: int
    kind: PointKind
    table: Dict[DistanceKey, ZPolynomial] = field(default_factory=dict)
    bipartite: bool = False

    def entry(self, *distances: int) -> ZPolynomial:
        return self.table.get(tuple(distances), ZPolynomial())

    def total(self) -> ZPolynomial:
        result = ZPolynomial()
        for value in self.table.values():
            result = result + value
        return result

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "kind": self.kind.value,
            "bipartite": self.bipartite,
            "table": {
                ",".join(str(d) for d in key): self.table[key].to_json()
                for key in sorted(self.table)
            },
        }


def _pointed_keys(matrix: List[List[int]], kind: PointKind) -> Iterator[DistanceKey]:
    size = len(matrix)
    if kind is PointKind.BIPOINTED:
        for v1, v2 in itertools.permutations(range(size), 2):
            yield (matrix[v1][v2],)
    else:
        for v1, v2, v3 in itertools.permutations(range(size), 3):
            yield (matrix[v1][v2], matrix[v1][v3], matrix[v2][v3])


def count_pointed(
    n: int,
    kind: Union[PointKind, str],
    *,
    bipartite: bool = False,
    max_edges: Optional[int] = None,
) -> PointedCount:
    """Ordered tuples of distinct vertices over all rooted maps, binned by ``z^faces``."""

    kind = PointKind(kind)
    _check_bound(n, max_edges)
    raw: Dict[DistanceKey, Counter] = {}
    for m in _rooted_maps(n):
        if bipartite and not m.is_bipartite():
            continue
        for key in _pointed_keys(distances(m), kind):
            raw.setdefault(key, Counter())[m.n_faces] += 1
    weight = Fraction(1, 2 * n)
    table = {
        key: ZPolynomial([counts.get(k, 0) * weight for k in range(max(counts) + 1)], max_degree=n + 1)
        for key, counts in raw.items()
    }
    logger.info("pointed counts: %s %s maps with %s edges, %s entries", kind.value,
                "bipartite" if bipartite else "general", n, len(table))
    return PointedCount(n=n, kind=kind, table=table, bipartite=bipartite)


@dataclass
class Mismatch:
    distances: DistanceKey
    oracle: ZPolynomial
    series: ZPolynomial

    def to_dict(self) -> Dict:
        return {
            "distances": list(self.distances),
            "oracle": self.oracle.to_json(),
            "series": self.series.to_json(),
        }


def _series_entries(n: int, kind: PointKind, family: Family) -> Dict[DistanceKey, ZPolynomial]:
    params = solve_params_bivariate(family, n)
    bipartite = family is Family.BIPARTITE
    entries: Dict[DistanceKey, ZPolynomial] = {}
    if kind is PointKind.BIPOINTED:
        for d in range(1, n + 1):
            entries[(d,)] = two_point(d, params).coefficient(n)
    else:
        for spec in valid_triples(n, bipartite=bipartite):
            entries[spec.distances] = three_point(spec, params).coefficient(n)
    return entries


def compare_with_series(
    n: int,
    kind: Union[PointKind, str],
    family: Union[Family, str] = Family.GENERAL,
    *,
    max_edges: Optional[int] = None,
) -> List[Mismatch]:
    """Entries where the oracle and the ``[g^n]`` series coefficient differ."""

    kind = PointKind(kind)
    family = Family(family)
    oracle = count_pointed(n, kind, bipartite=family is Family.BIPARTITE, max_edges=max_edges)
    series = _series_entries(n, kind, family)
    mismatches = []
    for key in sorted(set(series) | set(oracle.table)):
        expected = series.get(key, ZPolynomial())
        observed = oracle.entry(*key)
        if expected != observed:
            mismatches.append(Mismatch(key, observed, expected))
    if mismatches:
        logger.warning("%s oracle/series mismatches at n=%s (%s, %s)", len(mismatches), n, kind.value, family.value)
    return mismatches


@dataclass
class SumRule:
    n: int
    oracle: ZPolynomial
    series: ZPolynomial

    @property
    def holds(self) -> bool:
        return self.oracle == self.series


def sum_rule(n: int, family: Union[Family, str] = Family.GENERAL, *, max_edges: Optional[int] = None) -> SumRule:
    """Total tri-pointed weight from vertex counts alone against the summed series table."""

    family = Family(family)
    _check_bound(n, max_edges)
    bipartite = family is Family.BIPARTITE
    counts: Counter = Counter()
    for m in _rooted_maps(n):
        if bipartite and not m.is_bipartite():
            continue
        v = m.n_vertices
        counts[m.n_faces] += v * (v - 1) * (v - 2)
    weight = Fraction(1, 2 * n)
    oracle = ZPolynomial([counts.get(k, 0) * weight for k in range(n + 2)], max_degree=n + 1)
    series = ZPolynomial()
    for value in _series_entries(n, PointKind.TRIPOINTED, family).values():
        series = series + value
    return SumRule(n=n, oracle=oracle, series=series)


@dataclass(frozen=True)
class LabelledMap:
    """A map with integer vertex labels, optional marked vertices and faces."""

    base: CombMap
    labels: Tuple[int, ...]
    marks: Tuple[int, ...] = ()
    distinguished_faces: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if len(self.labels) != self.base.n_vertices:
            raise MapError(f"expected {self.base.n_vertices} labels, got {len(self.labels)}")

    def edge_label_gaps(self) -> Iterator[int]:
        for d in range(0, 2 * self.base.n_edges, 2):
            yield abs(self.labels[self.base.vertex_of[d]] - self.labels[self.base.head(d)])

    def is_well_labelled(self) -> bool:
        return all(gap <= 1 for gap in self.edge_label_gaps())

    def is_very_well_labelled(self) -> bool:
        return all(gap == 1 for gap in self.edge_label_gaps())

    def local_minima(self) -> List[int]:
        return [
            v for v in range(self.base.n_vertices)
            if all(self.labels[w] >= self.labels[v] for w in self.base.neighbours(v))
        ]

    def local_maxima(self) -> List[int]:
        return [
            v for v in range(self.base.n_vertices)
            if all(self.labels[w] <= self.labels[v] for w in self.base.neighbours(v))
        ]

    def shifted(self, delta: int) -> "LabelledMap":
        return LabelledMap(self.base, tuple(label + delta for label in self.labels),
                           self.marks, self.distinguished_faces)

    def face_labels(self, f: int) -> List[int]:
        """Labels of the corners of face ``f`` in face order."""

        return [self.labels[self.base.vertex_of[d]] for d in self.base.faces[f]]

    def unrooted_key(self) -> Tuple:
        return unrooted_code(self.base, self.labels, self.marks, self.distinguished_faces)


def _spanning_tree(m: CombMap) -> List[Tuple[int, int]]:
    parent_edges = []
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in m.neighbours(v):
            if w not in seen:
                seen.add(w)
                parent_edges.append((v, w))
                queue.append(w)
    return parent_edges


def enumerate_labellings(
    m: CombMap,
    mode: Union[Labelling, str] = Labelling.WELL,
) -> Iterator[LabelledMap]:
    """All well (or very-well) labellings of ``m`` with minimum label 0."""

    mode = Labelling(mode)
    steps = (-1, 1) if mode is Labelling.VERY_WELL else (-1, 0, 1)
    tree = _spanning_tree(m)
    seen = set()
    for increments in itertools.product(steps, repeat=len(tree)):
        labels = [0] * m.n_vertices
        for (v, w), step in zip(tree, increments):
            labels[w] = labels[v] + step
        lowest = min(labels)
        candidate = LabelledMap(m, tuple(label - lowest for label in labels))
        ok = candidate.is_very_well_labelled() if mode is Labelling.VERY_WELL else candidate.is_well_labelled()
        if ok and candidate.labels not in seen:
            seen.add(candidate.labels)
            yield candidate


def quadrangulations(n_faces: int, *, max_edges: Optional[int] = None) -> Iterator[CombMap]:
    """Rooted quadrangulations with ``n_faces`` faces, filtered from the map stream."""

    for m in enumerate_rooted_maps(2 * n_faces, max_edges=max_edges):
        if m.is_quadrangulation():
            yield m

