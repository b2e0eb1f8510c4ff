import json

import pytest

from carathe.cli import main
from carathe.geomkernel import PointConfig

SQUARE = PointConfig.from_points([(1, 0), (0, 1), (-1, 0), (0, -1)])


def write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def unit_instance(tmp_path, pts=((-1,), (1,))):
    data = {"config": PointConfig.from_points(pts).to_json(),
            "variant": {"tag": "CC1", "classes": [[0], [1]]}}
    return write(tmp_path / "inst.json", data)


def test_gen_hypotheses_pass(tmp_path, capsys):
    assert main(["gen", "--variant", "CC1", "--d", "2", "--r", "3", "--sizes", "3,3,3", "--seed", "1"]) == 0
    out, err = capsys.readouterr()
    assert "hypotheses pass" in err
    assert json.loads(out)["variant"]["tag"] == "CC1"


def test_gen_deterministic(tmp_path):
    for name in ("a", "b"):
        assert main(["gen", "--variant", "MAIN", "--d", "2", "--count", "3", "--seed", "1",
                     "--out", str(tmp_path / name)]) == 0
    for i in range(3):
        f = f"instance_{i:04d}.json"
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()


def test_gen_cc3_reports_cc1_failures(capsys):
    assert main(["gen", "--variant", "CC3", "--d", "2", "--count", "5", "--seed", "3"]) == 0
    err = capsys.readouterr().err
    n = int(err.split(";")[1].split()[0])
    assert n >= 1


def test_gen_impossible_range(capsys):
    assert main(["gen", "--variant", "CC1", "--d", "3", "--r", "2"]) == 1
    assert "r >= d+1" in capsys.readouterr().err


def test_solve_trivial(tmp_path, capsys):
    assert main(["solve", unit_instance(tmp_path)]) == 0
    out, err = capsys.readouterr()
    assert json.loads(out)["face"] == [0, 1]
    assert "|J|=2" in err


def test_solve_malformed(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    assert main(["solve", str(p)]) == 1
    assert "not valid JSON" in capsys.readouterr().err


def test_solve_warns_and_reports_no_selection(tmp_path, capsys):
    assert main(["solve", unit_instance(tmp_path, ((1,), (2,)))]) == 2
    err = capsys.readouterr().err
    assert "warning" in err and "NO-SELECTION" in err


def test_lemmas_square(tmp_path, capsys):
    cfg = write(tmp_path / "sq.json", SQUARE.to_json())
    prefix = str(tmp_path / "rep")
    assert main(["lemmas", cfg, "--out", prefix]) == 0
    payload = json.loads((tmp_path / "rep.json").read_text())
    assert payload["passed"] and payload["subsets"] == 15
    assert (tmp_path / "rep.csv").read_text().startswith("instance,U,lemma,")
    capsys.readouterr()


def test_lemmas_zero_subsets(tmp_path, capsys):
    cfg = write(tmp_path / "sq.json", SQUARE.to_json())
    assert main(["lemmas", cfg, "--subsets", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["rows"] == [] and payload["passed"]


def test_lemmas_corrupted_betti_fails(tmp_path, capsys):
    cfg = write(tmp_path / "sq.json", SQUARE.to_json())
    assert main(["lemmas", cfg, "--corrupt-betti"]) == 3
    assert "FAIL" in capsys.readouterr().err


def test_lemmas_cap(tmp_path, capsys):
    big = PointConfig.from_points([(k,) for k in range(1, 18)])
    assert main(["lemmas", write(tmp_path / "big.json", big.to_json())]) == 1
    assert "resource error" in capsys.readouterr().err


def test_cover_square(tmp_path, capsys):
    data = {"config": SQUARE.to_json(), "variant": {"tag": "CC1", "classes": [[0, 2], [1, 3]]}}
    assert main(["cover", write(tmp_path / "i.json", data)]) == 0
    out, err = capsys.readouterr()
    rep = json.loads(out)["cover"]
    assert rep["transversals"] == 0 and rep["covered"] and rep["nerve_ok"]
    assert "PASS" in err


def test_tverberg_cli(tmp_path, capsys):
    cfg = write(tmp_path / "c.json", PointConfig.from_points([(-1,), (0,), (1,)], allow_origin=True).to_json())
    L = write(tmp_path / "L.json", [[0, 2], [2, 1], [1, 3]])
    assert main(["tverberg", "--config", cfg, "--r", "2", "--L", L]) == 0
    sol = json.loads(capsys.readouterr().out)
    assert sol["labeling"] == [1, 0, 1] and sol["point"] == ["0/1"]


def test_tverberg_bad_L(tmp_path, capsys):
    L = write(tmp_path / "L.json", [[0, 2], [1, 3]])
    assert main(["tverberg", "--d", "1", "--r", "2", "--L", L]) == 1
    assert "path-connected" in capsys.readouterr().err


def test_selftest_subset(tmp_path, capsys):
    out = tmp_path / "reports"
    assert main(["selftest", "--only", "tverberg,kunneth_meshulam", "--scale", "0.05", "--out", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert all(line.startswith("PASS") for line in lines) and len(lines) == 2
    assert (out / "tverberg.json").exists() and (out / "kunneth_meshulam.csv").exists()


def test_unwritable_output_is_input_error(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["gen", "--count", "2", "--out", str(blocker / "sub")]) == 1


def test_selftest_unknown_campaign(capsys):
    assert main(["selftest", "--only", "nope"]) == 1


def test_argparse_errors():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
