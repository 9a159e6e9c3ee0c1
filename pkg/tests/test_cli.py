import json

import pytest

from golden_checks import G222
from planar_maps_cli import EXIT_OK, EXIT_USAGE, run


def _json(capsys: pytest.CaptureFixture) -> dict:
    return json.loads(capsys.readouterr().out)


def test_two_point_series(capsys) -> None:
    assert run(["two-point", "--d", "1", "--order", "4"]) == EXIT_OK

    payload = _json(capsys)
    assert payload["distances"] == [1]
    assert payload["route"] == "direct"
    assert payload["series"]["coeffs"][:2] == ["0", "1"]


def test_three_point_series(capsys) -> None:
    assert run(["three-point", "--d", "2", "2", "2", "--order", "6"]) == EXIT_OK

    payload = _json(capsys)
    assert payload["parity"] == "even"
    assert payload["series"]["coeffs"] == [str(c) for c in G222[:7]]


def test_three_point_rejects_triangle_violation(capsys) -> None:
    assert run(["three-point", "--d", "1", "1", "3"]) == EXIT_USAGE

    assert "triangular inequality" in capsys.readouterr().err


def test_type_b_route_rejected_for_bipartite(capsys) -> None:
    assert run(["two-point", "--family", "bipartite", "--d", "2", "--route", "typeB"]) == EXIT_USAGE
    assert "bipartite" in capsys.readouterr().err


def test_alpha_needs_bivariate_ring(capsys) -> None:
    assert run(["series", "--what", "alpha"]) == EXIT_USAGE
    assert run(["series", "--what", "alpha", "--ring", "qz", "--order", "3"]) == EXIT_OK


def test_series_as_csv(capsys) -> None:
    assert run(["series", "--order", "3", "--format", "csv"]) == EXIT_OK

    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "g_power,coefficient"
    assert len(lines) == 5


def test_critical_line_csv(capsys) -> None:
    assert run(["scaling", "critical", "--z", "0.5", "1", "2", "--format", "csv"]) == EXIT_OK

    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "z,param,g_crit,gamma"
    assert len(lines) == 4


def test_scaling_observables_with_asymptotics(capsys) -> None:
    assert run(["scaling", "observables", "--family", "bipartite", "--n", "10"]) == EXIT_OK

    payload = _json(capsys)
    assert payload["N_geod_vertices"] == pytest.approx(2.0)
    assert set(payload["asymptotic_counts"]) == {"bipointed", "pointed_rooted", "tripointed"}


def test_scaling_usage_errors(capsys) -> None:
    assert run(["scaling", "two-point"]) == EXIT_USAGE
    assert run(["scaling", "observables", "--z", "1", "2"]) == EXIT_USAGE
    assert run(["scaling", "three-point", "--D12", "1", "--D13", "1", "--D23", "2"]) == EXIT_USAGE


def test_scaling_three_point_payload(capsys) -> None:
    assert run(["scaling", "three-point", "--D", "1"]) == EXIT_OK

    payload = _json(capsys)
    assert payload["STU"] == [0.5, 0.5, 0.5]
    assert payload["cross_check"]["rel_error"] < 1e-6


def test_oracle_count_and_compare(capsys) -> None:
    assert run(["oracle", "--edges", "1"]) == EXIT_OK
    assert _json(capsys)["table"] == {"1": ["0", "1"]}

    assert run(["oracle", "compare", "--edges", "2"]) == EXIT_OK
    assert _json(capsys)["status"] == "pass"


def test_oracle_bounds_and_format(capsys, monkeypatch) -> None:
    monkeypatch.setenv("PLANAR_MAPS_MAX_EDGES", "3")

    assert run(["oracle", "--edges", "4"]) == EXIT_USAGE
    assert run(["oracle", "--edges", "1", "--format", "csv"]) == EXIT_USAGE
    assert "csv output is not available" in capsys.readouterr().err


def test_verify_identities_subset(capsys) -> None:
    code = run(["verify-identities", "--id", "recurX", "--id", "XtoN", "--order", "6", "--limit", "2"])

    assert code == EXIT_OK
    payload = _json(capsys)
    assert payload["status"] == "pass"
    assert [report["identity"] for report in payload["reports"]] == ["XtoN", "recurX"]


def test_unknown_identity_is_usage_error(capsys) -> None:
    assert run(["verify-identities", "--id", "recurZ"]) == EXIT_USAGE
    assert "not registered" in capsys.readouterr().err


def test_verify_bijections_face_bound(capsys) -> None:
    assert run(["verify-bijections", "--faces", "9"]) == EXIT_USAGE
    assert run(["verify-bijections", "--faces", "1"]) == EXIT_OK
    assert _json(capsys)["status"] == "pass"


def test_golden_checks_subset(capsys) -> None:
    code = run(["golden-checks", "--check", "tree-limits", "--check", "critical-points", "--check", "observables"])

    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert "3/3 passed" in captured.err
    assert [row["name"] for row in json.loads(captured.out)["rows"]] == ["tree-limits", "critical-points", "observables"]


def test_seed_checks_flag(capsys, monkeypatch) -> None:
    monkeypatch.setenv("PLANAR_MAPS_MAX_EDGES", "4")

    assert run(["--seed-paper-checks"]) == EXIT_OK
    assert "passed" in capsys.readouterr().err


def test_output_file(tmp_path, capsys) -> None:
    target = tmp_path / "critical.json"

    assert run(["scaling", "critical", "--out", str(target)]) == EXIT_OK

    assert capsys.readouterr().out == ""
    rows = json.loads(target.read_text(encoding="utf-8"))["rows"]
    assert rows[0]["g_crit"] == pytest.approx(1 / 12)


def test_common_options_before_subcommand(tmp_path, capsys) -> None:
    target = tmp_path / "critical.csv"

    assert run(["--format", "csv", "--out", str(target), "scaling", "critical", "--z", "1"]) == EXIT_OK

    assert capsys.readouterr().out == ""
    lines = target.read_text(encoding="utf-8").strip().splitlines()
    assert lines[0] == "z,param,g_crit,gamma"
    assert len(lines) == 2


def test_subcommand_options_override_leading_ones(tmp_path, capsys) -> None:
    target = tmp_path / "critical.json"

    assert run(["--format", "csv", "scaling", "critical", "--format", "json", "--out", str(target)]) == EXIT_OK

    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["rows"][0]["z"] == pytest.approx(1.0)


def test_usage_failures(capsys) -> None:
    assert run([]) == EXIT_USAGE
    assert run(["--threads", "0", "scaling", "critical"]) == EXIT_USAGE
    assert run([]) == EXIT_USAGE
    assert run(["two-point"]) == EXIT_USAGE
    assert run(["scaling", "critical", "--threads", "0"]) == EXIT_USAGE
