import math

import numpy as np
import pytest

from scaling_limit import (
    TABLE_COLUMNS,
    ContinuumPoint,
    RootFindingError,
    asymptotic_counts,
    asymptotic_prefactors,
    continuous_three_point,
    continuous_two_point,
    convergence_table,
    critical_line,
    critical_point,
    critical_z,
    discrete_two_point,
    dual_parameter,
    numeric_parameters,
    observables,
    relation_g,
    relation_z,
    third_mixed_derivative,
    three_point_cross_check,
    three_point_potential,
)

FACE_WEIGHTS = [0.5, 1.0, 2.0]


def test_critical_points_at_unit_face_weight() -> None:
    general = critical_point("general", 1)
    bipartite = critical_point("bipartite", 1)

    assert general.param == 1
    assert general.g_crit == pytest.approx(1 / 12)
    assert general.gamma == pytest.approx(math.sqrt(1.5))
    assert bipartite.param == 0.25
    assert bipartite.g_crit == pytest.approx(1 / 8)
    assert bipartite.gamma == pytest.approx(1.0)


@pytest.mark.parametrize("param", np.linspace(0.05, 2.95, 100))
def test_general_parameter_round_trip(param: float) -> None:
    point = critical_point("general", critical_z("general", param))

    assert point.param == pytest.approx(param, rel=1e-12)


@pytest.mark.parametrize("param", np.linspace(0.01, 0.49, 100))
def test_bipartite_parameter_round_trip(param: float) -> None:
    point = critical_point("bipartite", critical_z("bipartite", param))

    assert point.param == pytest.approx(param, rel=1e-12)


@pytest.mark.parametrize("z", [0.3, 2.0, 7.0])
def test_general_duality(z: float) -> None:
    point = critical_point("general", z)
    dual = critical_point("general", 1 / z)

    assert dual.param == pytest.approx(dual_parameter(point.param), rel=1e-9)
    assert dual.g_crit == pytest.approx(z * point.g_crit, rel=1e-9)


def test_small_face_weight_tends_to_trees() -> None:
    assert critical_point("general", 1e-24).g_crit == pytest.approx(0.25, rel=1e-6)
    assert critical_point("bipartite", 1e-24).g_crit == pytest.approx(0.25, rel=1e-6)


def test_critical_line_frame() -> None:
    frame = critical_line("bipartite", FACE_WEIGHTS)

    assert list(frame.columns) == ["z", "param", "g_crit", "gamma"]
    assert frame["z"].tolist() == FACE_WEIGHTS
    assert frame["g_crit"].is_monotonic_decreasing


def test_invalid_inputs() -> None:
    with pytest.raises(ValueError):
        critical_point("general", 0)
    with pytest.raises(ValueError):
        critical_point("general", float("nan"))
    with pytest.raises(ValueError, match="unknown family"):
        critical_point("triangulations", 1)


def test_root_finding_error_carries_bracket() -> None:
    with pytest.raises(RootFindingError) as info:
        critical_point("general", 1e300)

    assert len(info.value.bracket) == 2


def test_observables_at_unit_face_weight() -> None:
    general = observables("general", 1)
    bipartite = observables("bipartite", 1)

    assert general.geodesic_vertices == pytest.approx(1.5)
    assert general.geodesic_edges == pytest.approx(2.0)
    assert general.vertex_fraction == pytest.approx(0.5)
    assert bipartite.geodesic_vertices == pytest.approx(2.0)
    assert bipartite.geodesic_edges is None
    assert bipartite.vertex_fraction == pytest.approx(2 / 3)
    assert "N_geod_edges" not in bipartite.to_dict()
    assert general.to_dict()["N_geod_edges"] == pytest.approx(2.0)


@pytest.mark.parametrize("family", ["general", "bipartite"])
@pytest.mark.parametrize("z", [0.1, 1.0, 5.0])
def test_vertex_and_face_fractions_fill_the_edges(family: str, z: float) -> None:
    obs = observables(family, z)

    assert obs.vertex_fraction + obs.face_fraction == pytest.approx(1.0)


@pytest.mark.parametrize("family", ["general", "bipartite"])
@pytest.mark.parametrize("z", FACE_WEIGHTS)
def test_asymptotic_prefactors_are_consistent(family: str, z: float) -> None:
    prefactors = asymptotic_prefactors(family, z)
    n_v = observables(family, z).vertex_fraction

    assert prefactors.tripointed == pytest.approx(prefactors.bipointed * n_v / 2)
    assert 2 * prefactors.bipointed / prefactors.pointed_rooted == pytest.approx(n_v)

    counts = asymptotic_counts(family, z, 50)
    assert counts["tripointed"] == pytest.approx(50 * n_v * counts["bipointed"])
    with pytest.raises(ValueError):
        prefactors.at(0)


@pytest.mark.parametrize("family, prefactor", [("general", 2.0), ("bipartite", 4.0)])
def test_continuous_two_point_closed_form(family: str, prefactor: float) -> None:
    gamma = critical_point(family, 2.0).gamma
    y = 1.3 * gamma

    expected = prefactor * gamma**3 * math.cosh(y) / math.sinh(y) ** 3

    assert continuous_two_point(family, 1.3, 2.0) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("family, tail", [("general", 8.0), ("bipartite", 16.0)])
def test_continuous_two_point_tail(family: str, tail: float) -> None:
    gamma = critical_point(family, 1).gamma
    D = 20.0

    ratio = continuous_two_point(family, D, 1) * math.exp(2 * gamma * D) / gamma**3

    assert ratio == pytest.approx(tail, rel=1e-9)


def test_continuous_two_point_rejects_non_positive_distance() -> None:
    with pytest.raises(ValueError):
        continuous_two_point("general", 0, 1)


def test_continuum_point() -> None:
    point = ContinuumPoint.from_distances(3, 4, 5)

    assert (point.S, point.T, point.U) == (1, 2, 3)
    with pytest.raises(ValueError, match="triangle"):
        ContinuumPoint.from_distances(1, 1, 2)
    with pytest.raises(ValueError):
        ContinuumPoint.from_distances(-1, 1, 1)


def test_potential_tends_to_constant() -> None:
    assert three_point_potential("general", 50, 50, 50, 1) == pytest.approx(1 / 16, rel=1e-9)
    with pytest.raises(ValueError):
        three_point_potential("general", 0, 1, 1, 1)


@pytest.mark.parametrize("family", ["general", "bipartite"])
def test_potential_and_derivative_are_symmetric(family: str) -> None:
    args = (0.4, 0.9, 1.7)
    values = [three_point_potential(family, *perm, 2.0) for perm in [args, args[::-1], (0.9, 1.7, 0.4)]]
    derivatives = [third_mixed_derivative(family, *perm, 2.0) for perm in [args, args[::-1], (0.9, 1.7, 0.4)]]

    assert values == pytest.approx([values[0]] * 3, rel=1e-12)
    assert derivatives == pytest.approx([derivatives[0]] * 3, rel=1e-12)


@pytest.mark.parametrize("family", ["general", "bipartite"])
@pytest.mark.parametrize("z", FACE_WEIGHTS)
def test_analytic_derivative_matches_finite_differences(family: str, z: float) -> None:
    check = three_point_cross_check(family, 1.0, 1.2, 1.5, z)

    assert check["rel_error"] < 1e-8, check


def test_bipartite_three_point_is_half_the_derivative() -> None:
    point = ContinuumPoint.from_distances(1, 1, 1)
    derivative = third_mixed_derivative("bipartite", point.S, point.T, point.U, 1)

    assert continuous_three_point("bipartite", 1, 1, 1, 1) == pytest.approx(derivative / 2)
    assert continuous_three_point("general", 1, 1, 1, 1) == pytest.approx(
        third_mixed_derivative("general", 0.5, 0.5, 0.5, 1)
    )


@pytest.mark.parametrize("family", ["general", "bipartite"])
@pytest.mark.parametrize("z", FACE_WEIGHTS)
def test_numeric_parameters_solve_both_relations(family: str, z: float) -> None:
    g = critical_point(family, z).g_crit * (1 - 0.05**4)

    params = numeric_parameters(family, g, z)

    assert 0 < params.x < 1
    assert relation_g(family, params.x, params.alpha) == pytest.approx(g, rel=1e-12)
    assert relation_z(family, params.x, params.alpha) == pytest.approx(z, rel=1e-9)


def test_unit_face_weight_recovers_univariate_fixed_point() -> None:
    g = 0.05
    params = numeric_parameters("general", g, 1)
    x = params.x

    assert params.alpha == 1
    assert x * (1 + x + x * x) / (1 + 4 * x + x * x) ** 2 == pytest.approx(g, rel=1e-12)


def test_numeric_parameters_reject_supercritical_weight() -> None:
    with pytest.raises(ValueError):
        numeric_parameters("general", 1 / 12, 1)
    with pytest.raises(ValueError):
        numeric_parameters("bipartite", -0.1, 1)


def test_discrete_two_point_single_edge() -> None:
    g = 1e-6
    params = numeric_parameters("general", g, 1)

    assert discrete_two_point("general", 1, params.x, params.alpha) == pytest.approx(g, rel=1e-4)
    with pytest.raises(ValueError):
        discrete_two_point("general", 0, params.x, params.alpha)


@pytest.mark.parametrize("family", ["general", "bipartite"])
def test_two_point_convergence_rows(family: str) -> None:
    table = convergence_table(family, 1.0, 1.0, [0.02, 0.1, 0.05])

    assert list(table.columns) == TABLE_COLUMNS
    assert table["eps"].tolist() == [0.1, 0.05, 0.02]
    assert table["continuum"].nunique() == 1
    if family == "bipartite":
        assert all(d % 2 == 0 for d in table["d"])
    else:
        assert table["d"].tolist() == [10, 20, 50]


def test_three_point_convergence_rows() -> None:
    table = convergence_table("general", (2.0, 2.0, 2.0), 1.0, [0.1, 0.05], three_point=True)

    assert table["d"].tolist() == [20, 40]
    assert (table["discrete"] > 0).all()
    assert table["continuum"].iloc[0] == pytest.approx(third_mixed_derivative("general", 1, 1, 1, 1))


def _strictly_decreasing(values) -> bool:
    return all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("family", ["general", "bipartite"])
@pytest.mark.parametrize("z", FACE_WEIGHTS)
def test_two_point_error_decreases_at_first_order(family: str, z: float) -> None:
    table = convergence_table(family, 1.0, z, [0.05, 0.02, 0.01])
    errors = table["rel_error"].tolist()

    assert _strictly_decreasing(errors), errors
    # index offset of the discrete distance: error shrinks linearly in eps
    assert 1.5 < errors[1] / errors[2] < 2.5, errors
    assert errors[-1] < 0.1


@pytest.mark.parametrize("family", ["general", "bipartite"])
def test_three_point_error_decreases(family: str) -> None:
    table = convergence_table(family, (1.0, 1.0, 1.0), 1.0, [0.05, 0.02, 0.01], three_point=True)

    assert table["d"].tolist() == [20, 50, 100]
    assert _strictly_decreasing(table["rel_error"].tolist()), table["rel_error"].tolist()


def test_convergence_table_errors() -> None:
    with pytest.raises(ValueError):
        convergence_table("general", 1.0, 1.0, [0.3])
    with pytest.raises(ValueError):
        convergence_table("general", (1.0, 1.0), 1.0, [0.1], three_point=True)
    with pytest.raises(ValueError):
        convergence_table("general", (1.0, 1.0, 1.0), 1.0, [0.1])
