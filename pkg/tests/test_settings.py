import pytest

import settings


@pytest.mark.parametrize(
    "raw, expected",
    [("12", 12), ("0", 7), ("-3", 7), ("abc", 7), (None, 7)],
)
def test_parse_positive_int(raw, expected) -> None:
    assert settings.parse_positive_int(raw, 7) == expected


def test_defaults(monkeypatch) -> None:
    for name in ("PLANAR_MAPS_ORDER", "PLANAR_MAPS_MAX_EDGES", "PLANAR_MAPS_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)

    assert settings.series_order() == settings.DEFAULT_ORDER
    assert settings.max_edges() == settings.DEFAULT_MAX_EDGES
    assert settings.log_level() == "WARNING"


def test_environment_overrides(monkeypatch) -> None:
    monkeypatch.setenv("PLANAR_MAPS_ORDER", "30")
    monkeypatch.setenv("PLANAR_MAPS_MAX_FACES", " 2 ")
    monkeypatch.setenv("PLANAR_MAPS_LOG_LEVEL", "debug")

    assert settings.series_order() == 30
    assert settings.max_faces() == 2
    assert settings.log_level() == "DEBUG"


def test_invalid_values_fall_back(monkeypatch, caplog) -> None:
    monkeypatch.setenv("PLANAR_MAPS_BIVARIATE_ORDER", "many")
    monkeypatch.setenv("PLANAR_MAPS_LOG_LEVEL", "loud")

    assert settings.bivariate_order() == settings.DEFAULT_BIVARIATE_ORDER
    assert settings.log_level() == settings.DEFAULT_LOG_LEVEL
    assert "PLANAR_MAPS_BIVARIATE_ORDER" in caplog.text
