import json

import pytest

from reflbench import mpoly
from reflbench.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_monodromy_profile_catalog(capsys):
    code, out = run_cli(capsys, "monodromy", "profile", "--catalog", "G4_paper")
    assert code == 0
    data = json.loads(out)
    assert data["degree"] == 24
    assert data["points"]["inf"] == [[6, 4]]
    assert data["genus"] == 3


def test_present_tc(capsys):
    code, out = run_cli(capsys, "present", "tc", "--catalog", "Br4", "--subgroup", "s1^2,s2,s3")
    assert code == 0
    assert json.loads(out)["index"] == 4


def test_garside_equal_lemma(capsys):
    code, out = run_cli(capsys, "garside", "equal", "--type", "D5", "--u", "w4 s2", "--v", "s3 w4")
    assert code == 0 and json.loads(out)["equal"] is True
    code, out = run_cli(capsys, "garside", "equal", "--type", "A2", "--u", "s1", "--v", "s2")
    assert code == 1 and json.loads(out)["equal"] is False


def test_garside_delta(capsys):
    code, out = run_cli(capsys, "garside", "delta", "--type", "I2(6)")
    data = json.loads(out)
    assert code == 0 and data["length"] == 6 and data["delta_squared_central"]


def test_gt_act(capsys):
    code, out = run_cli(
        capsys, "gt", "act", "--n", "3", "--lambda", "-1", "--f", "[x,y]", "--backend", "coxeter:3,3"
    )
    assert code == 0
    data = json.loads(out)
    assert data["well_defined"] and data["bijective"]


def test_group_info(capsys):
    code, out = run_cli(capsys, "group", "info", "--monomial", "8,8,2")
    data = json.loads(out)
    assert code == 0
    assert data["order"] == 16
    assert data["field_of_definition"]["conductor"] == 8
    assert data["field_of_definition"]["fixing_subgroup"] == [1, 7]


def test_determinism_byte_identical(capsys):
    _, out1 = run_cli(capsys, "invariants", "check", "--catalog", "G4")
    _, out2 = run_cli(capsys, "invariants", "check", "--catalog", "G4")
    assert out1 == out2
    _, p1 = run_cli(capsys, "monodromy", "profile", "--catalog", "G4_paper")
    _, p2 = run_cli(capsys, "monodromy", "profile", "--catalog", "G4_paper")
    assert p1 == p2


def test_exit_code_input_error(capsys):
    code, out = run_cli(capsys, "group", "info", "--catalog", "definitely-not-a-group")
    assert code == 3
    assert json.loads(out)["error"] == "input"


def test_exit_code_budget(capsys):
    code, out = run_cli(
        capsys, "--budget-cosets", "40", "present", "tc", "--catalog", "Br3", "--subgroup", ""
    )
    assert code == 2
    assert json.loads(out)["status"] == "budget_exceeded"


def test_exit_code_falsified(capsys):
    # two words that are not equal -> exit 1 (property violated)
    code, _ = run_cli(capsys, "garside", "equal", "--type", "A3", "--u", "s1 s2", "--v", "s2 s1")
    assert code == 1


def test_discriminant_roundtrip(capsys, tmp_path):
    code, out = run_cli(capsys, "arrangement", "discriminant", "--catalog", "S3_paper")
    assert code == 0
    data = json.loads(out)
    poly = mpoly.from_json(data["discriminant"])
    assert poly.total_degree() == data["degree"] == 6


def test_profile_genus_roundtrip(capsys, tmp_path):
    code, out = run_cli(capsys, "monodromy", "profile", "--catalog", "G4_paper")
    prof_file = tmp_path / "profile.json"
    prof_file.write_text(out)
    code2, out2 = run_cli(capsys, "monodromy", "genus", "--profile", str(prof_file))
    assert code2 == 0
    assert json.loads(out2)["genus"] == json.loads(out)["genus"]


def test_verify_map_cli(capsys):
    code, out = run_cli(
        capsys, "present", "verify-map", "--map", "g12_conj", "--backend", "torsion:2"
    )
    assert code == 0 and json.loads(out)["consistent"] is True


def test_paper_suite_single_criterion(capsys):
    code, out = run_cli(capsys, "paper-suite", "--criteria", "2,7")
    data = json.loads(out)
    assert code == 0 and data["all_passed"] is True
    assert {c["id"] for c in data["criteria"]} == {2, 7}


def test_paper_suite_defect_criterion_exits_nonzero(capsys):
    code, out = run_cli(capsys, "paper-suite", "--criteria", "4")
    data = json.loads(out)
    assert code == 1 and data["all_passed"] is False
    report = data["criteria"][0]
    assert report["details"]["profile_inf_4x6"] is True
    assert report["details"]["genus_equals_4_as_stated"] is False
    assert report["defects"]


def test_json_flag_writes_file(capsys, tmp_path):
    out_file = tmp_path / "out.json"
    code, out = run_cli(
        capsys, "--json", str(out_file), "garside", "delta", "--type", "A2"
    )
    assert code == 0
    assert json.loads(out_file.read_text()) == json.loads(out)
