import pytest

from identities import identity_registry, verify, verify_all
from identities.base import first_difference
from map_formulas import FormulaEvaluator
from power_series import TruncatedSeries

CORE_IDENTITIES = {
    "recurX", "XtoN", "recurN", "recurY", "routeEquivalence", "telescoping", "productFormulaR",
    "recurNbiv", "DstClosed", "recurYbiv", "treeLimitEven", "treeLimitOdd",
    "recurXtilde", "recurXtildeBiv", "recurYtilde", "recurYtildeBiv", "treeLimitBip",
}

SMALL = dict(order=8, bivariate_order=5, limit=3, bivariate_limit=2)


def test_registry_contains_core_identities() -> None:
    names = set(identity_registry.names())

    assert CORE_IDENTITIES <= names
    assert {"evenAssembly", "oddAssembly", "oddAssemblyBiv", "bipAssembly", "specialization"} <= names


def test_registry_aliases_and_unknown_names() -> None:
    assert identity_registry.get("routes").name == "routeEquivalence"
    assert identity_registry.get("PRODUCT").name == "productFormulaR"
    with pytest.raises(KeyError, match="not registered"):
        identity_registry.get("recurZ")


@pytest.mark.parametrize("name", sorted(identity_registry.names()))
def test_identity_holds(name: str) -> None:
    report = verify(name, **SMALL)

    assert report.passed, report.to_dict()
    assert report.checked > 0


def test_mutated_family_is_caught() -> None:
    def shifted(ev: FormulaEvaluator, s: int, t: int) -> TruncatedSeries:
        return ev.family("N", s, t) + ev.g

    report = verify("recurN", order=6, limit=2, overrides={"N": shifted})

    assert not report.passed
    assert report.first_failure is not None
    assert report.first_failure.g_order == 1
    payload = report.to_dict()
    assert payload["status"] == "fail"
    assert isinstance(payload["first_failure"]["indices"], list)


def test_verify_all_sorted_reports() -> None:
    reports = verify_all(6, bivariate_order=4, limit=2, bivariate_limit=1, names=["XtoN", "recurX"])

    assert [report.identity for report in reports] == ["XtoN", "recurX"]
    assert all(report.passed for report in reports)


def test_first_difference() -> None:
    a = TruncatedSeries((1, 2, 3), 3)
    b = TruncatedSeries((1, 2, 4), 3)

    assert first_difference(a, a) is None
    assert first_difference(a, b) == 2
