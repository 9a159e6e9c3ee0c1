import itertools

import pytest

from golden_checks import (
    G111,
    G111_BIVARIATE,
    G222,
    G222_BIPARTITE,
    G222_BIPARTITE_BIVARIATE,
    G222_BIVARIATE,
    TREE_LIMIT_EVEN_111,
    TREE_LIMIT_ODD_111,
    compare_coefficients,
)
from map_formulas import (
    Bracket,
    Deformation,
    DistanceError,
    DistanceSpec,
    FamilyError,
    FamilyId,
    FormulaEvaluator,
    Route,
    eval_bracket,
    eval_family,
    finite_difference,
    three_point,
    three_point_table,
    tree_limit_three_point,
    two_point,
    two_point_table,
    valid_triples,
)
from parametrization import Family, Mode, solve, solve_params_bivariate
from power_series import TruncatedSeries


@pytest.fixture(scope="module")
def general() -> object:
    return solve(Mode.UNIVARIATE_GENERAL, 10)


@pytest.fixture(scope="module")
def bipartite() -> object:
    return solve(Mode.UNIVARIATE_BIPARTITE, 10)


def test_distance_spec_even_and_odd() -> None:
    even = DistanceSpec.three(2, 2, 2)
    odd = DistanceSpec.three(1, 1, 1)

    assert (even.parity, even.stu, even.aligned) == ("even", (1, 1, 1), False)
    assert (odd.parity, odd.stu) == ("odd", (1, 1, 1))


def test_distance_spec_aligned_case() -> None:
    spec = DistanceSpec.three(2, 1, 1)

    assert spec.aligned
    assert spec.stu == (1, 1, 0)


@pytest.mark.parametrize(
    "distances, bipartite, message",
    [
        ((1, 1, 3), False, "triangular inequality violated"),
        ((1, 1, 1), True, "bipartite requires even total distance"),
        ((0, 1, 1), False, "distance must be positive"),
    ],
)
def test_distance_spec_errors(distances, bipartite, message) -> None:
    with pytest.raises(DistanceError, match=message):
        DistanceSpec.three(*distances, bipartite=bipartite)


def test_distance_spec_parse() -> None:
    assert DistanceSpec.parse([3]).distances == (3,)
    with pytest.raises(DistanceError):
        DistanceSpec.parse([1, 2])
    with pytest.raises(DistanceError):
        DistanceSpec.two(0)


def test_univariate_three_point_expansions(general, bipartite) -> None:
    assert compare_coefficients(three_point((2, 2, 2), general), G222[:9])[0]
    assert compare_coefficients(three_point((1, 1, 1), general), G111[:9])[0]
    assert compare_coefficients(three_point((2, 2, 2), bipartite), G222_BIPARTITE[:9])[0]


def test_bivariate_three_point_expansions() -> None:
    params = solve_params_bivariate(Family.GENERAL, 6)
    bip = solve_params_bivariate(Family.BIPARTITE, 6)

    assert compare_coefficients(three_point((2, 2, 2), params), G222_BIVARIATE)[0]
    assert compare_coefficients(three_point((1, 1, 1), params), G111_BIVARIATE)[0]
    assert compare_coefficients(three_point((2, 2, 2), bip), G222_BIPARTITE_BIVARIATE)[0]


def test_bivariate_series_have_at_most_one_face_more_than_edges() -> None:
    params = solve_params_bivariate(Family.GENERAL, 6)
    bip = solve_params_bivariate(Family.BIPARTITE, 6)

    for d in (1, 2, 3):
        assert two_point(d, params).respects_face_bound()
    assert two_point(2, bip).respects_face_bound()
    assert three_point((2, 2, 2), params).respects_face_bound()
    assert three_point((2, 1, 1), params).respects_face_bound()
    assert three_point((2, 2, 2), bip).respects_face_bound()


def test_bivariate_series_specialize_to_univariate() -> None:
    bivariate = solve_params_bivariate(Family.GENERAL, 6)
    univariate = solve(Mode.UNIVARIATE_GENERAL, 6)

    for distances in [(2, 2, 2), (1, 1, 1), (2, 1, 1), (3, 2, 2)]:
        assert three_point(distances, bivariate).specialize(1) == three_point(distances, univariate)
    assert two_point(2, bivariate).specialize(1) == two_point(2, univariate)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_two_point_routes_agree(general, d: int) -> None:
    direct = two_point(d, general)

    assert two_point(d, general, Route.RATIO) == direct
    for s in range(1, d):
        assert two_point(d, general, Route.TYPE_A, split=(s, d - s)) == direct
    for s in range(1, d + 1):
        assert two_point(d, general, Route.TYPE_B, split=(s, d + 1 - s)) == direct


@pytest.mark.parametrize("d", [2, 3])
def test_bipartite_routes(bipartite, d: int) -> None:
    direct = two_point(d, bipartite)

    assert two_point(d, bipartite, "ratio") == direct
    assert two_point(d, bipartite, "typeA", split=(1, d - 1)) == direct
    with pytest.raises(DistanceError):
        two_point(d, bipartite, "typeB")


def test_invalid_split_rejected(general) -> None:
    with pytest.raises(DistanceError):
        two_point(3, general, Route.TYPE_A, split=(1, 1))


def test_regime_must_match_parameters(general) -> None:
    with pytest.raises(FamilyError):
        two_point(1, general, regime=Mode.BIVARIATE_GENERAL)


def test_single_edge_two_point(general) -> None:
    assert two_point(1, general).coefficient(1) == 1


def test_brackets(general) -> None:
    x = general.x

    assert eval_bracket(Bracket(2), general) == 1 - x * x
    with pytest.raises(FamilyError):
        eval_bracket(Bracket(2, Deformation.ALPHA), general)
    with pytest.raises(FamilyError):
        Bracket(-1)


def test_family_validation(general) -> None:
    assert eval_family(FamilyId("N", (3, 0)), general) == TruncatedSeries.one(general.order)
    with pytest.raises(FamilyError):
        eval_family(FamilyId("T", (1, 2)), general)
    with pytest.raises(FamilyError):
        eval_family(FamilyId("Ttilde", (1,)), general)
    with pytest.raises(FamilyError):
        eval_family(FamilyId("U", (1,)), general)
    with pytest.raises(FamilyError):
        FamilyId("X", (1, 1)).validate(Mode.BIVARIATE_GENERAL)


def test_finite_difference_of_product() -> None:
    def fn(a: int, b: int) -> TruncatedSeries:
        return TruncatedSeries.constant(a * b, 2)

    assert finite_difference(fn, (2, 3), (0, 1)) == TruncatedSeries.constant(1, 2)


def test_overrides_replace_family(general) -> None:
    evaluator = FormulaEvaluator(general)
    zero = evaluator.zero()

    patched = evaluator.with_overrides(N=lambda s, t: zero)

    assert patched.family("N", 2, 2) == zero
    assert evaluator.family("N", 2, 2) != zero


def test_tables(general, bipartite) -> None:
    assert sorted(two_point_table(general, 3)) == [1, 2, 3]
    general_triples = {spec.distances for spec in valid_triples(2)}
    bipartite_triples = {spec.distances for spec in valid_triples(2, bipartite=True)}
    assert (1, 1, 1) in general_triples
    assert (1, 1, 1) not in bipartite_triples
    assert set(three_point_table(bipartite, 2)) == bipartite_triples


def test_tree_limits() -> None:
    assert compare_coefficients(tree_limit_three_point("even", (1, 1, 1), 6), TREE_LIMIT_EVEN_111)[0]
    assert compare_coefficients(tree_limit_three_point("odd", (1, 1, 1), 6), TREE_LIMIT_ODD_111)[0]
    assert tree_limit_three_point("bipartite", (1, 1, 1), 6) == tree_limit_three_point("even", (1, 1, 1), 6)
    with pytest.raises(DistanceError):
        tree_limit_three_point("diagonal", (1, 1, 1), 6)
    with pytest.raises(DistanceError):
        tree_limit_three_point("even", (0, 1, 1), 6)


def test_bivariate_leading_z_terms_match_tree_limits() -> None:
    params = solve_params_bivariate(Family.GENERAL, 12)

    for stu in itertools.product(range(1, 4), repeat=3):
        s, t, u = stu
        even = DistanceSpec.three(s + t, s + u, t + u)
        odd = DistanceSpec.three(s + t - 1, s + u - 1, t + u - 1)
        assert three_point(even, params).z_coefficient(1) == tree_limit_three_point("even", stu, 12)
        assert three_point(odd, params).z_coefficient(2) == tree_limit_three_point("odd", stu, 12)
