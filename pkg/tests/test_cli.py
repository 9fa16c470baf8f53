import json

import pytest

from nildaha.cli import main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


def test_verify_presentation(capsys):
    code, doc = run_json(capsys, ["verify-presentation", "--type", "A1",
                                  "--degree", "2"])
    assert code == 0
    assert doc["schema"] == 1 and doc["all_ok"]
    assert doc["config"]["type"] == "A1" and doc["config"]["degree"] == 2
    assert "func" not in doc["config"]


def test_verify_presentation_level(capsys):
    code, doc = run_json(capsys, ["verify-presentation", "--type", "A1",
                                  "--degree", "2", "--level", "1/2"])
    assert code == 0 and doc["level"] == "1/2"
    assert doc["config"]["level"] == "1/2"


def test_classify(capsys):
    code, doc = run_json(capsys, ["classify", "--type", "A1",
                                  "--nu", "1/2", "--nu", "1/3"])
    assert code == 0
    first, second = doc["parameters"]
    assert first["non_integral"] and not first["regular"]
    assert second["non_integral"] and second["regular"]


def test_classify_bad_type(capsys):
    code = main(["classify", "--type", "E8", "--nu", "1/2"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_bad_rational_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--type", "A1", "--nu", "abc"])
    assert exc.value.code == 2


def test_hc_module(capsys):
    code, doc = run_json(capsys, ["hc-module", "--type", "A2",
                                  "--nu", "1/3,1/5"])
    assert code == 0 and doc["all_ok"]
    assert len(doc["families"]) == 6
    assert doc["line_relations"]["ok"]
    assert doc["central_character"]["invariants_checked"] == 2


def test_hc_module_integral_parameter(capsys):
    code = main(["hc-module", "--type", "A1", "--nu", "2"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_simplicity(capsys):
    code, doc = run_json(capsys, ["simplicity", "--type", "A1",
                                  "--nu", "1/2", "--nu", "1/3"])
    assert code == 0 and doc["certificate_matches_regularity"]
    certs = doc["certificates"]
    assert not certs[0]["simple_certified"] and certs[1]["simple_certified"]


def test_koszul(capsys):
    code, doc = run_json(capsys, ["koszul", "--type", "A1",
                                  "--nu", "1/3", "--degree", "5"])
    assert code == 0 and doc["all_ok"]
    assert doc["values"] == ["-1/36"]
    assert doc["ext"]["top_cokernel_dims"] == [1, 1]


def test_kostant_with_pairs(capsys):
    code, doc = run_json(capsys, ["kostant", "--group", "SL2",
                                  "--nu", "0,0", "--pairs", "3",
                                  "--seed", "1"])
    assert code == 0
    assert doc["components"] == 2
    assert doc["pair_samples"] == 3 and doc["pair_samples_ok"] == 3
    assert doc["pair_failures"] == []


def test_kostant_bad_coefficients(capsys):
    code = main(["kostant", "--group", "SL2", "--nu", "1,1"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_regrade_json_and_csv(tmp_path, capsys):
    window = {"label": "order", "degree_range": [0, 0],
              "level_range": [0, 1], "dims": [[1, 2]]}
    path = tmp_path / "window.json"
    path.write_text(json.dumps(window))
    code, doc = run_json(capsys, ["regrade", "--input", str(path)])
    assert code == 0
    assert doc["output"]["label"] == "kazhdan"
    assert doc["output"]["level_range"] == [0, 3]
    assert doc["output"]["dims"] == [[1, 1, 2, 2]]

    code, out = run(capsys, ["regrade", "--input", str(path),
                             "--format", "csv"])
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "degree\\kazhdan,0,1,2,3"
    assert lines[1] == "0,1,1,2,2"

    # round trip through a file and the inverse flag
    regraded = doc["output"]
    back_path = tmp_path / "regraded.json"
    back_path.write_text(json.dumps(regraded))
    code, doc = run_json(capsys, ["regrade", "--input", str(back_path),
                                  "--inverse"])
    assert code == 0
    assert doc["output"] == window


def test_regrade_missing_file(capsys):
    code = main(["regrade", "--input", "/nonexistent/window.json"])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_regrade_bad_window_is_kernel_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"label": "order", "degree_range": [0, 0],
                                "level_range": [0, 1], "dims": [[2, 1]]}))
    code = main(["regrade", "--input", str(path)])
    assert code == 2


def test_csv_only_for_regrade():
    with pytest.raises(SystemExit) as exc:
        main(["classify", "--type", "A1", "--nu", "1/2", "--format", "csv"])
    assert exc.value.code == 2


def test_sandwich_check(capsys):
    code, doc = run_json(capsys, ["sandwich-check", "--type", "A1",
                                  "--count", "2", "--seed", "3"])
    assert code == 0 and doc["all_ok"]
    assert doc["invariant_pairs"] == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["classify", "--type", "A1", "--nu", "1/2",
                 "--out", str(target)])
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["schema"] == 1
    assert capsys.readouterr().out == ""


def test_deterministic_output(capsys, monkeypatch):
    argv = ["verify-presentation", "--type", "A2", "--degree", "2"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second
    monkeypatch.setenv("TODA_KERNEL_THREADS", "3")
    _, third = run(capsys, argv)
    assert first == third
