import json
import subprocess
import sys

import pytest

from pwcolor import read_graph
from pwcolor.cli import build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_complete_tripartite(tmp_path, capsys):
    path = tmp_path / "g.txt"
    code, out, _ = run(capsys, "generate", "--family", "partite", "--n", "9", "--k", "3", "--p", "1", "--out", str(path))
    assert code == 0
    assert read_graph(path).m == 27
    assert "m=27" in out and "avg_degree=6" in out and "conj_new=" in out


def test_generate_infeasible_regular(capsys):
    code, _, err = run(capsys, "generate", "--family", "regular", "--n", "6", "--k", "3", "--d", "5")
    assert code == 2 and "infeasible" in err


def test_generate_regular_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        assert run(capsys, "generate", "--family", "regular", "--n", "120", "--k", "3", "--d", "8",
                   "--seed", "7", "--out", str(path))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_generate_by_degree_and_env_seed(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PWCOLOR_SEED", "5")
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "generate", "--n", "60", "--k", "3", "--dbar", "4.4", "--out", str(a))
    run(capsys, "generate", "--n", "60", "--k", "3", "--dbar", "4.4", "--seed", "5", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    monkeypatch.setenv("PWCOLOR_SEED", "notanint")
    assert run(capsys, "generate", "--n", "60", "--k", "3", "--p", "0.1")[0] == 2


def test_generate_needs_one_density(capsys):
    assert run(capsys, "generate", "--n", "9", "--k", "3")[0] == 2
    assert run(capsys, "generate", "--n", "9", "--k", "3", "--p", "0.5", "--dbar", "2")[0] == 2
    assert run(capsys, "generate", "--family", "regular", "--n", "9", "--k", "3")[0] == 2


@pytest.fixture
def graph_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    main(["generate", "--n", "30", "--k", "3", "--p", "0.3", "--seed", "1", "--out", str(path)])
    capsys.readouterr()
    return path


@pytest.mark.parametrize("algo", ["sequential", "naive", "mppw"])
def test_solve_outputs(graph_file, tmp_path, capsys, algo):
    trace, dump = tmp_path / "t.csv", tmp_path / "c.txt"
    code, out, _ = run(capsys, "solve", "--graph", str(graph_file), "--algo", algo, "--seed", "3",
                       "--max-steps", "5000", "--trace", str(trace), "--dump", str(dump))
    success, steps, energy = out.split()
    assert (code == 0) == (success == "true")
    assert int(steps) >= 0 and int(energy) >= 0
    assert trace.read_text().splitlines()[0] == "step,phase,energy,bad_count"
    assert dump.read_text().splitlines()[0] == "3"


def test_solve_budget_exhausted(tmp_path, capsys):
    path = tmp_path / "k4.txt"
    path.write_text("4 6 0\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    code, out, _ = run(capsys, "solve", "--graph", str(path), "--k", "3", "--max-steps", "50")
    assert code == 1 and out.startswith("false")


def test_solve_temperature_matches_basis(graph_file, capsys):
    import math
    _, a, _ = run(capsys, "solve", "--graph", str(graph_file), "--b", "4", "--seed", "2")
    _, b, _ = run(capsys, "solve", "--graph", str(graph_file), "--T", str(1 / math.log(4)), "--seed", "2")
    assert a == b


def test_solve_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1 0\n1 1\n")
    assert run(capsys, "solve", "--graph", str(bad), "--k", "3")[0] == 2
    assert run(capsys, "solve", "--graph", str(tmp_path / "missing.txt"), "--k", "3")[0] == 3
    unl = tmp_path / "u.txt"
    unl.write_text("3 1 0\n0 1\n")
    assert run(capsys, "solve", "--graph", str(unl))[0] == 2


def test_oracle(graph_file, tmp_path, capsys):
    small = tmp_path / "small.txt"
    main(["generate", "--n", "12", "--k", "3", "--p", "0.5", "--seed", "2", "--out", str(small)])
    capsys.readouterr()
    code, out, _ = run(capsys, "oracle", "--graph", str(small), "--k", "3")
    assert code == 0 and out.strip() == "colorable true"
    k4 = tmp_path / "k4.txt"
    k4.write_text("4 6 0\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    assert run(capsys, "oracle", "--graph", str(k4), "--k", "3")[:2] == (1, "colorable false\n")
    assert run(capsys, "oracle", "--graph", str(k4), "--k", "3", "--min-energy")[:2] == (1, "min_energy 1\n")
    assert run(capsys, "oracle", "--graph", str(graph_file), "--k", "3", "--min-energy")[0] == 2  # 3^30 too big
    assert run(capsys, "oracle", "--graph", str(graph_file), "--k", "3")[0] == 2


def test_preset_list(capsys):
    code, out, _ = run(capsys, "preset-list")
    assert code == 0
    assert {line.split("\t")[0] for line in out.splitlines()} == {"fig1", "fig2", "fig34", "fig5-8"}


def test_sweep_inline_and_outputs(tmp_path, capsys):
    csv_path, json_path = tmp_path / "s.csv", tmp_path / "s.json"
    code, _, _ = run(capsys, "sweep", "--n", "30", "--k", "3", "--dbar-grid", "2:4:1", "--samples", "4",
                     "--seed", "3", "--csv", str(csv_path), "--json", str(json_path), "--raw")
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert len(lines) == 4 and lines[0].startswith("family,n,k,p_or_d")
    doc = json.loads(json_path.read_text())
    assert doc["config"]["master_seed"] == 3 and len(doc["rows"][0]["raw_steps"]) == 4
    assert (tmp_path / "s.raw.csv").read_text().startswith("row,steps")


def test_sweep_workers_identical(capsys):
    args = ["sweep", "--n", "30", "--k", "3", "--p-grid", "0.1,0.2", "--samples", "5", "--seed", "1",
            "--solver", "naive", "--max-steps", "200"]
    _, one, _ = run(capsys, *args, "--workers", "1")
    _, two, _ = run(capsys, *args, "--workers", "2")
    assert one == two and len(one.splitlines()) == 3


def test_sweep_preset_scaled(tmp_path, capsys):
    code, out, _ = run(capsys, "sweep", "--preset", "fig34", "--scale", "0.002", "--max-steps", "50", "--b", "3,4")
    rows = out.splitlines()[1:]
    assert code == 0 and len(rows) == 10 * 2


def test_sweep_regular_and_config(tmp_path, capsys):
    code, out, _ = run(capsys, "sweep", "--family", "regular", "--n", "30", "--k", "3", "--d-grid", "2:4:1",
                       "--samples", "2", "--json", str(tmp_path / "c.json"))
    assert code == 0 and len(out.splitlines()) == 4
    cfg = json.loads((tmp_path / "c.json").read_text())["config"]
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    _, again, _ = run(capsys, "sweep", "--config", str(tmp_path / "cfg.json"))
    assert again == out


def test_sweep_usage_errors(capsys):
    assert run(capsys, "sweep")[0] == 2
    assert run(capsys, "sweep", "--n", "30", "--k", "3")[0] == 2
    with pytest.raises(SystemExit):
        main(["sweep", "--preset", "nope"])


def test_help_lists_flags():
    parser = build_parser()
    sub = parser._subparsers._group_actions[0].choices
    for name, p in sub.items():
        text = p.format_help()
        for action in p._actions:
            for opt in action.option_strings:
                assert opt in text, (name, opt)


def test_module_entry_point_is_byte_identical(tmp_path):
    cmd = [sys.executable, "-m", "pwcolor", "sweep", "--n", "24", "--k", "3", "--dbar-grid", "3,5",
           "--samples", "3", "--seed", "11"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.startswith(b"family,")
