import json
import os
import subprocess
import sys

from hhshadow.cli import main
from conftest import FIXTURES


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def fx(name):
    return os.path.join(FIXTURES, name)


def test_hh_dual_numbers(capsys):
    code, out, _ = run(capsys, "hh", "--algebra", fx("dual_numbers.json"), "--max-degree", "2")
    assert code == 0
    assert out.strip() == "HH_0 = Z^2, HH_1 = Z + Z/2, HH_2 = Z"


def test_hh_integers(capsys):
    code, out, _ = run(capsys, "hh", "--algebra", fx("z.json"), "--max-degree", "1")
    assert (code, out.strip()) == (0, "HH_0 = Z, HH_1 = 0")


def test_morita_check_passes(capsys):
    code, out, _ = run(capsys, "morita-check", "--pair", fx("z_vs_m2z.json"), "--max-degree", "2")
    assert code == 0 and "FAIL" not in out


def test_json_output_is_stable(capsys):
    args = ("hh", "--algebra", fx("dual_numbers.json"), "--max-degree", "2", "--json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    assert json.loads(a)["degrees"][1]["group"] == "Z + Z/2"


def test_global_options_before_the_subcommand(capsys):
    _, after, _ = run(capsys, "hh", "--algebra", fx("z2.json"), "--json")
    _, before, _ = run(capsys, "--json", "hh", "--algebra", fx("z2.json"))
    assert before == after and json.loads(before)["degrees"][0]["group"] == "Z/2"
    code, _, _ = run(capsys, "--ceiling", "10", "hh", "--algebra", fx("m2z.json"), "--max-degree", "2")
    assert code == 3


def test_shadow_check_json_is_byte_identical(capsys):
    args = ("shadow-check", "--seed", "7", "--instances", "2", "--truncation", "2", "--json")
    code, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert code == 0 and a == b


def test_trace_hs(capsys):
    code, out, _ = run(capsys, "trace", "hs", "--algebra", fx("zc2.json"), "--phi", fx("phi_sign.json"),
                       "--idem", fx("idem_identity1.json"), "--map", fx("map_t.json"), "--json")
    assert code == 0 and json.loads(out)["order"] == 2


def test_hh_twisted(capsys):
    code, out, _ = run(capsys, "hh-twisted", "--algebra", fx("f3xf3.json"), "--phi", fx("phi_swap.json"), "--max-degree", "0")
    assert code == 0 and out.strip() == "HH^phi_0 = 0"


def test_hh_cat_and_agreement(capsys):
    code, out, _ = run(capsys, "hh-cat", "--category", fx("category_free2_z.json"), "--max-degree", "2")
    assert (code, out.strip()) == (0, "HH_0 = Z, HH_1 = 0, HH_2 = 0")
    code, _, _ = run(capsys, "agreement", "--algebra", fx("z2.json"), "--r", "2", "--max-degree", "1")
    assert code == 0


def test_mackey_commands(capsys):
    assert run(capsys, "mackey", "check", "--functor", fx("green_burnside4.json"))[0] == 0
    assert run(capsys, "mackey", "box", "--factor", fx("green_fixed_z_c2.json"), "--factor", fx("green_fixed_z_c2.json"))[0] == 0
    code, out, _ = run(capsys, "mackey", "hh", "--green", fx("green_fixed_f2_c2.json"), "--max-degree", "0")
    assert code == 0 and "C_2: Z/2" in out
    code, out, _ = run(capsys, "mackey", "phi", "--functor", fx("green_burnside2.json"), "--p", "2")
    assert code == 0 and "C_1: Z" in out
    code, out, _ = run(capsys, "mackey", "etilde", "--functor", fx("green_burnside2.json"), "--N", "2")
    assert code == 0 and "C_1: 0, C_2: Z" in out
    code, out, _ = run(capsys, "mackey", "tr-tower", "--tower", fx("tower_constant_f2.json"))
    assert code == 0 and "stabilized: yes" in out
    assert run(capsys, "mackey", "shadow-check", "--pair", fx("green_pair_matrix_f2.json"), "--max-degree", "0")[0] == 0


def test_generate_to_file(capsys, tmp_path):
    out = tmp_path / "a.json"
    assert run(capsys, "generate", "--kind", "algebra", "--seed", "0", "--out", str(out))[0] == 0
    assert json.loads(out.read_text()) == json.loads(open(fx("generated_algebra_seed0.json")).read())


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "hh", "--algebra", "/nonexistent.json")
    assert code == 2 and "cannot read" in err


def test_bad_json_reports_line_and_column(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"mult": [\n')
    code, _, err = run(capsys, "hh", "--algebra", str(p))
    assert code == 2 and "line 2" in err


def test_axiom_failure_is_input_error(capsys, tmp_path):
    p = tmp_path / "nonassoc.json"
    p.write_text(json.dumps({"group": {"gens": 2, "rels": []}, "mult": [[[1, 0], [0, 1]], [[0, 1], [0, 2]]], "unit": [0, 1]}))
    code, _, err = run(capsys, "hh", "--algebra", str(p))
    assert code == 2 and "unit law fails" in err


def test_negative_degree_rejected(capsys):
    assert run(capsys, "hh", "--algebra", fx("z.json"), "--max-degree", "-1")[0] == 2


def test_resource_ceiling_exit_code(capsys):
    code, _, err = run(capsys, "hh", "--algebra", fx("m2z.json"), "--max-degree", "3", "--ceiling", "100")
    assert code == 3 and "generators" in err


def test_ceiling_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("HHSHADOW_MAX_GENERATORS", "50")
    assert run(capsys, "hh", "--algebra", fx("m2z.json"), "--max-degree", "3")[0] == 3


def test_failed_check_exit_code(capsys, tmp_path):
    # a pair whose evaluation map is zero is not a dual pair
    obj = json.load(open(fx("z_vs_m2z_explicit.json")))
    obj["eval"]["matrix"] = [[0] * len(row) for row in obj["eval"]["matrix"]]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "morita-check", "--pair", str(p), "--max-degree", "0")
    assert code == 1 and "FAIL" in out


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "hhshadow.cli", "hh", "--algebra", fx("z.json"), "--max-degree", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "HH_0 = Z, HH_1 = 0"
