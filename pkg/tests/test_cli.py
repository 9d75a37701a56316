import csv
import io

import pytest

from primepairs import cli

from oracles import pair_count, twin_centers


def run(capsys, *argv):
    code = cli.main([*argv, "-q"])
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]


def test_twin_scan_small(capsys):
    code, out, _ = run(capsys, "twin-scan", "--p-max", "13")
    assert code == 0
    r = rows(out)
    assert r[0] == ["p_n", "low", "high", "candidates", "twins_found", "prediction", "ratio"]
    assert [row[0] for row in r[1:]] == ["7", "11", "13"]
    assert [int(row[4]) for row in r[1:]] == [len(twin_centers(p)) for p in (7, 11, 13)] == [2, 2, 2]
    assert r[1][5] == "1.4275"


def test_twin_scan_empty(capsys, tmp_path):
    out = tmp_path / "t.csv"
    code, _, _ = run(capsys, "twin-scan", "--p-max", "5", "--out", str(out))
    assert code == 0
    assert out.read_text() == "p_n,low,high,candidates,twins_found,prediction,ratio\n"


def test_twin_scan_refuses_budget(capsys):
    code, _, err = run(capsys, "twin-scan", "--p-max", "5000000")
    assert code == 1 and "estimated" in err


def test_predict(capsys):
    code, out, _ = run(capsys, "predict", "--p-max", "13")
    r = rows(out)
    assert code == 0 and r[2] == ["11", "0.428571", "6", "1.26095", "2.03928"]


def test_polignac_tiny_matches_oracle(capsys):
    code, out, _ = run(capsys, "polignac", "--low-value", "5", "--high-value", "100",
                       "--m-max", "10", "--extra-m", "30")
    assert code == 0
    r = rows(out)
    assert r[0] == ["m", "pairs_m", "occurrence_ratio", "expected_ratio", "quotient"]
    assert [(int(x[0]), int(x[1])) for x in r[1:]] == [(m, pair_count(5, 100, m)) for m in (2, 4, 6, 8, 10, 30)]
    assert "# mean," in out and "# std," in out


def test_polignac_index_range(capsys):
    code, out, _ = run(capsys, "polignac", "--low-index", "10", "--high-index", "200", "--m-max", "4")
    assert code == 0
    # 10th odd prime is 31, 200th is 1229
    assert "# low_prime,31" in out and "# high_prime,1229" in out
    assert int(rows(out)[1][1]) == pair_count(31, 1229, 2)


def test_scenario_small(capsys):
    code, out, _ = run(capsys, "scenario", "--low-index", "100", "--high-index", "200")
    lines = out.splitlines()
    assert code == 0 and [ln.split()[0] for ln in lines] == ["prod1", "prod2", "prod3"]
    assert all(len(ln.split()[1].split(".")[1]) == 9 for ln in lines)


def test_estimate(capsys):
    code, out, _ = run(capsys, "estimate", "--low-index", "1000", "--high-index", "100000", "--points", "5")
    r = rows(out)
    assert code == 0 and len(r) == 6
    assert [float(x[4]) for x in r[1:]] == sorted(float(x[4]) for x in r[1:])


@pytest.mark.parametrize("argv", [
    ["polignac", "--m-max", "7"],
    ["polignac", "--extra-m", "9"],
    ["scenario", "--low-index", "10", "--high-index", "13"],
    ["estimate", "--low-index", "5"],
    ["twin-scan", "--threads", "0"],
])
def test_validation_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err


def test_env_threads(monkeypatch, capsys):
    monkeypatch.setenv(cli.THREADS_ENV, "nope")
    code, _, _ = run(capsys, "twin-scan", "--p-max", "13")
    assert code == 1
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    args = cli._parser().parse_args(["twin-scan", "--p-max", "13"])
    assert cli.build_config(args).threads == 3


def test_io_error(capsys, tmp_path):
    code, _, err = run(capsys, "twin-scan", "--p-max", "13", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 2 and "I/O" in err


def test_deterministic_bytes(tmp_path, capsys):
    outs = []
    for threads in ("1", "4", "8"):
        path = tmp_path / f"p{threads}.csv"
        assert run(capsys, "polignac", "--low-value", "1000003", "--high-value", "3000000",
                   "--m-max", "300", "--threads", threads, "--segment-size", "65536", "--out", str(path))[0] == 0
        path2 = tmp_path / f"t{threads}.csv"
        assert run(capsys, "twin-scan", "--p-max", "3000", "--threads", threads, "--out", str(path2))[0] == 0
        outs.append((path.read_bytes(), path2.read_bytes()))
    assert outs[0] == outs[1] == outs[2]


def test_progress_not_in_csv(capsys):
    code = cli.main(["twin-scan", "--p-max", "13"])
    out = capsys.readouterr()
    assert code == 0 and "INFO" not in out.out
