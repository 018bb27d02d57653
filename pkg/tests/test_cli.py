import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from secgame import gamefile
from secgame.cli import main
from secgame.core import SecurityGame
from secgame.experiments import figure2_grid, params_to_dict
from secgame.paper_fixtures import FIXTURE_GAMES


@pytest.fixture
def game_file(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.json"
        gamefile.dump(FIXTURE_GAMES[name](), p)
        return str(p)
    return write


def run(argv, capsys):
    code = main(argv)
    return code, capsys.readouterr().out


def test_solve_minimax_table6(game_file, capsys):
    code, out = run(["solve", "--game", game_file("table6"), "--concept", "minimax"], capsys)
    assert code == 0
    assert "1/2 (0.500000)" in out and "E*: 2 (2.000000)" in out


def test_solve_sse_table5_json_roundtrip(game_file, capsys):
    path = game_file("table5")
    code, out = run(["solve", "--game", path, "--concept", "sse", "--json"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["defender"] == {"1100": "1/2", "0011": "1/2"}
    assert obj["defender_value"] == {"exact": "19/2", "decimal": "9.500000"}
    assert gamefile.game_from_dict(obj["game"]) == gamefile.load(path)


def test_solve_empty_schedule_only(tmp_path, capsys):
    p = tmp_path / "empty.json"
    gamefile.dump(SecurityGame(((1, 0, 0, 1), (2, 0, 0, 1)), (((),),)), p)
    code, out = run(["solve", "--game", str(p), "--concept", "minimax", "--json"], capsys)
    assert code == 0 and json.loads(out)["coverage"] == ["0", "0"]


def test_check_and_closed_form(game_file, capsys):
    code, out = run(["check-sse-ne", "--game", game_file("table5")], capsys)
    assert code == 0 and ": no" in out and "verified: yes" in out
    code, out = run(["check-sse-ne", "--game", game_file("table6")], capsys)
    assert code == 0 and ": yes" in out
    code, out = run(["closed-form", "--game", game_file("table8")], capsys)
    assert code == 0 and "beta: 3/5" in out
    code, out = run(["closed-form", "--game", game_file("table9")], capsys)
    assert code == 4 and "not applicable" in out


def test_obs_json(game_file, capsys):
    code, out = run(["obs", "--game", game_file("table6"), "--pobs", "1", "--grid", "2",
                     "--json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["flags"]["full_view_gives_sse"] and rep["defender_value"] == rep["sse_value"]
    assert gamefile.game_from_dict(rep["game"]).n == 3


def test_gen_deterministic(tmp_path, capsys):
    args = ["gen", "--targets", "6", "--def-res", "2", "--att-res", "1", "--sched-size", "2",
            "--n-scheds", "4", "--count", "3", "--seed", "5"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == ["game_0000.json", "game_0001.json", "game_0002.json", "params.json"]
    for n in names:
        assert (tmp_path / "a" / n).read_bytes() == (tmp_path / "b" / n).read_bytes()


def test_sweep_overrides_and_determinism(tmp_path, capsys):
    cfg = tmp_path / "grid.json"
    cfg.write_text(json.dumps([params_to_dict(p) for p in figure2_grid(n_games=50)[:2]]))
    outs = []
    for tag in "ab":
        args = ["sweep", "--config", str(cfg), "--out", str(tmp_path / f"{tag}.csv"),
                "--games-per-cell", "3", "--seed", "8", "--json-out", str(tmp_path / f"{tag}.json")]
        assert main(args) == 0
        outs.append(((tmp_path / f"{tag}.csv").read_bytes(), (tmp_path / f"{tag}.json").read_bytes()))
    assert outs[0] == outs[1]
    cells = json.loads(outs[0][1])
    assert [c["params"]["n_games"] for c in cells] == [3, 3]
    assert all(c["params"]["seed"] == 8 for c in cells)


def test_verify_paper(capsys):
    code, out = run(["verify-paper"], capsys)
    assert code == 0
    assert "PASS  example6-table11" in out and "FAIL" not in out


def test_error_codes(tmp_path, capsys):
    assert main(["solve", "--game", str(tmp_path / "none.json"), "--concept", "sse"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["solve", "--game", str(bad), "--concept", "sse"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--game", str(bad), "--concept", "sse", "--frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main([])
    big = tmp_path / "big.json"
    gamefile.dump(SecurityGame.singletons([(1, 0, 0, 1)] * 12, 1), big)
    assert main(["obs", "--game", str(big), "--pobs", "1/2", "--grid", "8"]) == 3


def test_dump_lp_goes_to_stderr(game_file, capsys):
    assert main(["solve", "--game", game_file("table4"), "--concept", "minimax", "--dump-lp"]) == 0
    err = capsys.readouterr().err
    assert "subject to" in err and "minimize" in err


def test_module_entry_point(game_file):
    res = subprocess.run([sys.executable, "-m", "secgame", "solve", "--game", game_file("table2"),
                          "--concept", "nash"], capture_output=True, text=True, check=True)
    assert "6/11 (0.545455)" in res.stdout
