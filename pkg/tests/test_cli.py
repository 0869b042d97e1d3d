import json

import pytest

from supertorsion.cli import EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_split_table_default(capsys):
    code, out, _ = run(capsys, "split-table", "--q", "3", "--p", "5,7,11,13")
    assert code == 0
    rows = json.loads(out)["rows"]
    assert [r["Q"] for r in rows] == [16, 169, 1849, 547]
    assert all(r["witness"] and r["level"] == 2 for r in rows)


def test_split_table_csv(capsys):
    code, out, _ = run(capsys, "split-table", "--q", "3", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "p,q,Q,level,eta_witness_i,eta_witness_j"
    assert lines[1].startswith("5,3,16,2")


def test_split_table_search(capsys):
    code, out, _ = run(capsys, "split-table", "--q", "5", "--p", "3", "--max-field", "2000")
    assert code == 0 and json.loads(out)["rows"][0]["level"] == 2


def test_split_level_embeds_field(capsys):
    code, out, _ = run(capsys, "split-level", "--p", "13", "--q", "3", "--Q", "547")
    data = json.loads(out)
    assert code == 0 and data["level"] == 2 and data["field"]["order"] == 547
    assert data["schema"] == 1


def test_audit_c29(capsys):
    code, out, _ = run(capsys, "audit", "--n", "2", "--d", "9", "--ell", "71", "--no-timing")
    data = json.loads(out)
    assert code == 0 and data["offenders"] == [] and data["candidates"] > 0


def test_audit_control_plan_verdict(capsys):
    code, out, _ = run(capsys, "audit", "--plan", "C43-control", "--no-timing")
    assert code == 0 and len(json.loads(out)["offenders"]) == 12


def test_audit_mismatch_exit_code(capsys):
    # G43b in degree 4 cannot build its candidate set
    code, _, err = run(capsys, "audit", "--plan", "G43b")
    assert code == 1 and "not contained" in err


@pytest.mark.parametrize("argv", [
    ["cs-check", "--n", "3", "--d", "4", "--d1", "2", "--d2", "3"],
    ["gaps", "--gens", "2,5"],
    ["jacobi-pointcount", "--n", "3", "--d", "5", "--Q", "16"],
    ["residual-test", "--n", "5", "--d", "3"],
    ["residual-test", "--n", "2", "--d", "3", "--family", "plus-x"],
    ["descent-scan", "--n", "3", "--d", "4", "--Q", "73"],
    ["certify-c43"],
    ["certify-c25", "--ell", "54001"],
])
def test_subcommands_match(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)["verdict"] == "match"


def test_cs_check_value(capsys):
    code, out, _ = run(capsys, "cs-check", "--n", "3", "--d", "4", "--d1", "2", "--d2", "3")
    assert json.loads(out)["holds"] is False


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["audit", "--n", "7", "--d", "11"],
    ["cs-check", "--n", "2", "--d", "5", "--d1", "2", "--d2", "2"],
    ["split-level", "--p", "5", "--q", "3", "--Q", "15"],
    ["gaps"],
    ["jacobi-pointcount", "--n", "3"],
    ["split-table", "--q", "3", "--p", "x,y"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err


def test_deterministic_bytes(capsys, tmp_path):
    outs = []
    for seed in ("1", "1"):
        path = tmp_path / f"r{len(outs)}.json"
        assert main(["audit", "--plan", "G34", "--seed", seed, "--no-timing", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_figures(capsys, tmp_path):
    fig = tmp_path / "levels.png"
    assert main(["split-table", "--q", "3", "--figure", str(fig)]) == 0
    assert fig.stat().st_size > 1000
    fig2 = tmp_path / "audit.png"
    assert main(["audit", "--plan", "C45", "--figure", str(fig2)]) == 0
    assert fig2.stat().st_size > 1000
    fig3 = tmp_path / "descent.png"
    assert main(["descent-scan", "--n", "2", "--d", "3", "--Q", "13", "--figure", str(fig3)]) == 0
    assert fig3.stat().st_size > 1000
    capsys.readouterr()
