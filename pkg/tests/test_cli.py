"""CLI: scenario parsing, report determinism, exit codes."""

import json
from fractions import Fraction

import pytest

from orbitop.cli import (
    format_complex_entry,
    load_scenario,
    main,
    parse_complex_entry,
    parse_scenario,
    serialize_scenario,
)

BUNDLED = ("t6_z4", "t6_z2z2", "c3_z4", "c3_z2z2", "r8_q8")


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- parsing ------------------------------------------------------------------


@pytest.mark.parametrize(
    "token,expected",
    [
        ("0", (0, 0)),
        ("1", (1, 0)),
        ("-1", (-1, 0)),
        ("i", (0, 1)),
        ("-i", (0, -1)),
        ("2i", (0, 2)),
        ("1/2", (Fraction(1, 2), 0)),
        ("1/2+1/2i", (Fraction(1, 2), Fraction(1, 2))),
        ("-1/2-3/4i", (Fraction(-1, 2), Fraction(-3, 4))),
        ("3-2i", (3, -2)),
    ],
)
def test_parse_complex_entries(token, expected):
    assert parse_complex_entry(token) == (
        Fraction(expected[0]),
        Fraction(expected[1]),
    )


def test_complex_entry_roundtrip():
    for token in ("0", "1", "-1", "i", "-i", "1/2+1/2i", "3-2i", "-5/7i"):
        value = parse_complex_entry(token)
        assert parse_complex_entry(format_complex_entry(value)) == value


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_scenarios_parse_and_roundtrip(name):
    scenario = load_scenario(name)
    assert scenario.name == name
    text = serialize_scenario(scenario)
    again = parse_scenario(text)
    assert again == scenario
    # and serialization is stable
    assert serialize_scenario(again) == text


@pytest.mark.parametrize(
    "name,order",
    [("t6_z4", 4), ("t6_z2z2", 4), ("c3_z4", 4), ("c3_z2z2", 4), ("r8_q8", 8)],
)
def test_bundled_scenario_group_orders(name, order):
    from orbitop.group import close

    scenario = load_scenario(name)
    assert close(scenario.motions()).order == order


def test_parse_error_on_garbage(tmp_path):
    bad = tmp_path / "bad.scn"
    bad.write_text("name t6\n")
    code = main(["group", "--scenario", str(bad)])
    assert code == 2


def test_parse_error_on_missing_file():
    assert main(["group", "--scenario", "/nonexistent/x.scn"]) == 2


def test_unknown_bundled_scenario():
    assert main(["group", "--scenario", "missing_name"]) == 2


# --- commands ------------------------------------------------------------------


def test_euler_t6_z4_reports_48(capsys):
    code, out, _ = run_cli(capsys, "euler", "--scenario", "t6_z4")
    assert code == 0
    assert "euler_characteristic: 48" in out


def test_group_on_trivial_scenario(tmp_path, capsys):
    scn = tmp_path / "trivial.scn"
    scn.write_text(
        "name: trivial\nambient: linear\ncomplex_dim: 1\n\n[generator]\nrow: 1\n"
    )
    code, out, _ = run_cli(capsys, "group", "--scenario", str(scn))
    assert code == 0
    assert "group_order: 1" in out


def test_chi_census_counts(capsys):
    code, out, _ = run_cli(capsys, "chi-census", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["family1_count"] == 2048
    assert data["axis_family_count"] == 65536
    assert data["union_count"] == 198651


def test_reports_byte_identical(capsys):
    first = run_cli(capsys, "euler", "--scenario", "t6_z4", "--format", "json")
    second = run_cli(capsys, "euler", "--scenario", "t6_z4", "--format", "json")
    assert first == second
    assert first[0] == 0


def test_cap_exceeded_exit_code(capsys):
    code, _, err = run_cli(capsys, "group", "--scenario", "t6_z4", "--cap", "2")
    assert code == 4
    assert "cap" in err


def test_precondition_exit_code(capsys):
    # the order-8 linear scenario has no codimension-two stabilizer for
    # the distinguished line, so the lift pipeline must refuse
    code, _, err = run_cli(capsys, "lifts", "--scenario", "r8_q8")
    assert code == 3
    assert err


def test_singular_set_torus_only(capsys):
    code, _, _ = run_cli(capsys, "singular-set", "--scenario", "c3_z4")
    assert code == 3


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_out_file_written(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys,
        "euler",
        "--scenario",
        "t6_z4",
        "--format",
        "json",
        "--out",
        str(out_path),
    )
    assert code == 0
    assert out == ""
    data = json.loads(out_path.read_text())
    assert data["euler_characteristic"] == 48


def test_ledger_z4_cli(capsys):
    code, out, _ = run_cli(
        capsys, "ledger", "--scenario", "t6_z4", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    rows = {r["plan"]: r for r in data["results"]}
    for k in range(5):
        row = rows[f"methods-a-count-{k}"]
        assert row["b"][2] == 11 + 5 * k
        assert row["b"][3] == 24 - 2 * k
        assert row["euler_characteristic"] == 12 * k


def test_ledger_z2z2_cli(capsys):
    code, out, _ = run_cli(
        capsys, "ledger", "--scenario", "t6_z2z2", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    rows = {r["plan"]: r for r in data["results"]}
    assert rows["all-crepant"]["h11"] == 51
    assert rows["all-crepant"]["h21"] == 3
    assert rows["all-deformation"]["h11"] == 3
    assert rows["all-deformation"]["h21"] == 115


def test_ledger_named_plan(capsys):
    code, out, _ = run_cli(
        capsys,
        "ledger",
        "--scenario",
        "t6_z4",
        "--plan",
        "z4:k2",
        "--format",
        "json",
    )
    assert code == 0
    data = json.loads(out)
    (row,) = data["results"]
    assert row["b"][2] == 21 and row["b"][3] == 20


def test_invariant_pair_cli(capsys):
    code, out, _ = run_cli(
        capsys, "invariant-pair", "--scenario", "c3_z4", "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["lift_count"] == 2
    first, second = data["decisions"]
    assert first["canonical"] and first["exists"]
    assert all(x == "Cyc(0)" for x in first["beta"])
    assert second["exists"]
    assert all(x == "0" for x in second["alpha"])


def test_nodes_cli(tmp_path, capsys):
    scn = tmp_path / "nodes.scn"
    scn.write_text(
        "name: nd\nambient: linear\ncomplex_dim: 1\n\n"
        "[generator]\nrow: 1\n\n[node_classes]\nrow: 1 0\nrow: -1 0\n"
    )
    code, out, _ = run_cli(
        capsys, "nodes", "--scenario", str(scn), "--format", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["smoothable"] is True
    assert data["kahler_positive"] is False


def test_seed_changes_witness_but_not_decision(capsys):
    outs = []
    for seed in ("0", "5"):
        code, out, _ = run_cli(
            capsys,
            "invariant-pair",
            "--scenario",
            "c3_z4",
            "--format",
            "json",
            "--seed",
            seed,
        )
        assert code == 0
        outs.append(json.loads(out))
    assert [d["exists"] for d in outs[0]["decisions"]] == [
        d["exists"] for d in outs[1]["decisions"]
    ]
