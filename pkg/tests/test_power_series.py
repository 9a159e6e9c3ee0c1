from fractions import Fraction

import pytest

from power_series import (
    RATIONALS,
    Z_POLYNOMIALS,
    SeriesError,
    TruncatedSeries,
    ZPolynomial,
    catalan_series,
    ring_by_name,
    series_arith,
)


def _series(*coeffs, order: int = 6) -> TruncatedSeries:
    return TruncatedSeries(coeffs, order)


def test_geometric_series_inverse() -> None:
    one_minus_g = _series(1, -1)

    inverse = one_minus_g.inverse()

    assert inverse.coeffs == tuple(Fraction(1) for _ in range(7))
    assert (inverse * one_minus_g) == TruncatedSeries.one(6)


def test_log_of_one_minus_g() -> None:
    result = _series(1, -1).log()

    assert result.coeffs == (0,) + tuple(Fraction(-1, k) for k in range(1, 7))


def test_exp_inverts_log() -> None:
    series = _series(1, 3, -2, Fraction(1, 5))

    assert series.log().exp() == series


def test_catalan_series_satisfies_its_equation() -> None:
    cat = catalan_series(8)
    g = TruncatedSeries.generator(8)

    assert cat.coeffs[:6] == (1, 1, 2, 5, 14, 42)
    assert cat == 1 + g * cat * cat


def test_compose_with_generator_is_identity() -> None:
    series = _series(2, 0, 7, 1)

    assert series.compose(TruncatedSeries.generator(6)) == series


def test_shift_and_truncate() -> None:
    series = _series(1, 2, 3)

    shifted = series.shift(2)

    assert shifted.coeffs[:5] == (0, 0, 1, 2, 3)
    assert shifted.truncate(3).order == 3
    with pytest.raises(SeriesError):
        series.shift(-1)
    with pytest.raises(SeriesError):
        series.truncate(7)


def test_integral_and_derivative() -> None:
    series = _series(5, 2, 3)

    assert series.integral().derivative() == series


def test_non_invertible_constant_term() -> None:
    with pytest.raises(SeriesError):
        _series(0, 1).inverse()
    with pytest.raises(SeriesError):
        _series(2, 1).log()
    with pytest.raises(SeriesError):
        _series(1, 1).exp()


def test_order_and_ring_mismatch() -> None:
    with pytest.raises(SeriesError):
        _series(1, order=3) + _series(1, order=4)
    with pytest.raises(SeriesError):
        TruncatedSeries.one(3) + TruncatedSeries.one(3, Z_POLYNOMIALS)


def test_polynomial_ring_requires_constant_unit() -> None:
    z = ZPolynomial.z()
    series = TruncatedSeries((z, 1), 3, Z_POLYNOMIALS)

    with pytest.raises(SeriesError):
        series.inverse()

    unit = TruncatedSeries((1, z), 3, Z_POLYNOMIALS)
    assert (unit * unit.inverse()) == TruncatedSeries.one(3, Z_POLYNOMIALS)


def test_specialize_and_z_coefficient() -> None:
    z = ZPolynomial.z()
    series = TruncatedSeries((0, 1 + 2 * z, z * z), 2, Z_POLYNOMIALS)

    assert series.specialize(1).coeffs == (0, 3, 1)
    assert series.z_coefficient(1).coeffs == (0, 2, 0)
    with pytest.raises(SeriesError):
        series.specialize(1).z_coefficient(0)


def test_zpolynomial_degree_bound() -> None:
    assert ZPolynomial([1, 2, 3], max_degree=2).degree == 2
    assert ZPolynomial([1, 0, 0], max_degree=0).coeffs == (1,)
    with pytest.raises(SeriesError, match="exceeds the bound"):
        ZPolynomial([1, 2, 3], max_degree=1)


def test_face_bound_of_series() -> None:
    z = ZPolynomial.z()

    assert TruncatedSeries((z, 1 + 2 * z, z * z), 2, Z_POLYNOMIALS).respects_face_bound()
    assert not TruncatedSeries((z * z,), 2, Z_POLYNOMIALS).respects_face_bound()
    assert _series(1, 2, 3).respects_face_bound()


def test_zpolynomial_canonical_form() -> None:
    assert ZPolynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert ZPolynomial([0]) == ZPolynomial()
    assert ZPolynomial([1, 1]).evaluate(Fraction(1, 2)) == Fraction(3, 2)
    assert ZPolynomial([1, 1]).evaluate(0.5) == pytest.approx(1.5)


def test_json_uses_rational_strings() -> None:
    series = TruncatedSeries((Fraction(1, 3), 2), 2)

    payload = series.to_json()

    assert payload == {"order": 2, "ring": "Q", "coeffs": ["1/3", "2", "0"]}
    assert TruncatedSeries.from_json(payload) == series


def test_json_rejects_wrong_length() -> None:
    with pytest.raises(SeriesError):
        TruncatedSeries.from_json({"order": 3, "ring": "Q", "coeffs": ["1"]})


def test_ring_lookup() -> None:
    assert ring_by_name("q") is RATIONALS
    assert ring_by_name("qz") is Z_POLYNOMIALS
    with pytest.raises(KeyError):
        ring_by_name("reals")


def test_series_arith_dispatch() -> None:
    a = _series(1, 1)

    assert series_arith("mul", a, a) == a * a
    assert series_arith("pow", a, 3) == a * a * a
    assert series_arith("shift", a, 1) == a.shift(1)
    with pytest.raises(KeyError):
        series_arith("sqrt", a)
