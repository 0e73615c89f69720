import json
import math
import subprocess
import sys

import pytest

from divbounds import cli
from divbounds.checks import Check
from divbounds.report import Report


@pytest.fixture
def files(tmp_path):
    def write(name, values):
        path = tmp_path / name
        if name.endswith(".json"):
            path.write_text(json.dumps(values))
        elif name.endswith(".csv"):
            path.write_text("".join(f"{v},x\n" for v in values))
        else:
            path.write_text("\n".join(map(str, values)) + "\n")
        return str(path)
    return write


@pytest.fixture
def point(files):
    return files("p.txt", [0.5, 0.5]), files("q.json", [0.25, 0.75])


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestCompute:
    def test_identical_files(self, capsys, files):
        p = files("p.txt", [0.2, 0.3, 0.5])
        code, out, _ = run(capsys, "compute", "--p", p, "--q", p)
        rep = Report.loads(out)
        assert code == 0
        for name, value in rep.measures.items():
            assert value == pytest.approx(1.0 if name in ("bhattacharyya", "harmonic") else 0.0,
                                          abs=1e-15)

    def test_point_values(self, capsys, point):
        code, out, _ = run(capsys, "compute", "--p", point[0], "--q", point[1],
                           "--measures", "chi2,triangular,j")
        rep = Report.loads(out)
        assert code == 0
        assert list(rep.measures) == ["chi2", "triangular", "j"]
        assert rep.measures["chi2"] == pytest.approx(1 / 3, abs=1e-15)
        assert rep.measures["triangular"] == pytest.approx(2 / 15, abs=1e-15)
        assert rep.measures["j"] == pytest.approx(math.log(3) / 4, abs=1e-15)
        assert rep.metadata["r"] == pytest.approx(2 / 3) and rep.metadata["R"] == 2.0

    def test_csv(self, capsys, files):
        p, q = files("p.csv", [0.5, 0.5]), files("q.csv", [0.25, 0.75])
        code, out, _ = run(capsys, "compute", "--p", p, "--q", q, "--measures", "chi2",
                           "--format", "csv")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "measure,value"
        assert float(lines[1].split(",")[1]) == pytest.approx(1 / 3, abs=1e-15)
        assert [ln.split(",")[0] for ln in lines[2:]] == ["r", "R"]

    def test_normalize(self, capsys, files):
        p, q = files("p.txt", [1, 1]), files("q.txt", [1, 3])
        assert run(capsys, "compute", "--p", p, "--q", q)[0] == 2
        code, out, _ = run(capsys, "compute", "--p", p, "--q", q, "--normalize",
                           "--measures", "triangular")
        assert code == 0 and Report.loads(out).measures["triangular"] == pytest.approx(2 / 15)

    def test_missing_file(self, capsys, tmp_path):
        code, out, err = run(capsys, "compute", "--p", str(tmp_path / "nope"), "--q", "x")
        assert code == 2 and out == "" and "error" in err

    def test_unknown_measure(self, capsys, point):
        assert run(capsys, "compute", "--p", point[0], "--q", point[1],
                   "--measures", "renyi")[0] == 2


class TestBounds:
    def test_no_generator(self, capsys, point):
        code, _, err = run(capsys, "bounds", "--p", point[0], "--q", point[1],
                           "--measure", "bhattacharyya")
        assert code == 2 and "generator" in err

    def test_j_chain(self, capsys, point):
        code, out, _ = run(capsys, "bounds", "--p", point[0], "--q", point[1], "--measure", "j")
        rep = Report.loads(out)
        b = rep.bounds["j"]
        assert code == 0 and rep.passed
        assert 0 <= b["value"] <= b["e"] <= b["a"]
        assert all(rep.details["agreement"].values())
        assert rep.bounds["j:closed"]["a"] == pytest.approx(b["a"], rel=1e-12)

    def test_misprint_reported_not_failed(self, capsys, point):
        code, out, _ = run(capsys, "bounds", "--p", point[0], "--q", point[1], "--measure", "ag")
        rep = Report.loads(out)
        assert code == 0
        assert rep.details["agreement"]["a"] is False
        assert rep.details["agreement"]["e"] is True

    def test_standard_generator_has_no_closed_form(self, capsys, point):
        code, out, _ = run(capsys, "bounds", "--p", point[0], "--q", point[1], "--measure", "kl")
        assert code == 0 and Report.loads(out).details["closed_form"] is None

    def test_equal_pair(self, capsys, files):
        p = files("p.txt", [0.2, 0.3, 0.5])
        code, out, _ = run(capsys, "bounds", "--p", p, "--q", p, "--measure", "triangular")
        b = Report.loads(out).bounds["triangular"]
        assert code == 0
        assert b["b"] is None
        assert b["value"] == b["e"] == b["a"] == 0.0


class TestVerify:
    def test_point_pair(self, capsys, point):
        code, out, _ = run(capsys, "verify", "--p", point[0], "--q", point[1])
        rep = Report.loads(out)
        assert code == 0 and rep.passed
        names = {c.name for c in rep.checks}
        assert "identity.parallelogram" in names
        assert sum(n.startswith("relation.") for n in names) == 20
        assert sum(n.startswith("chain.") for n in names) == 11
        assert sum(n.startswith("certificate.") for n in names) == 12
        assert set(rep.details["certificates"]) == {"zeta1", "zeta3", "xi1", "xi2", "xi3", "xi4"}

    def test_equal_pair(self, capsys, files):
        p = files("p.txt", [0.2, 0.3, 0.5])
        code, out, _ = run(capsys, "verify", "--p", p, "--q", p)
        rep = Report.loads(out)
        assert code == 0
        assert rep.details["certificates"] == "skipped-degenerate"

    def test_negative_entry(self, capsys, files):
        p, q = files("p.txt", [-0.5, 1.5]), files("q.txt", [0.5, 0.5])
        assert run(capsys, "verify", "--p", p, "--q", q)[0] == 2

    def test_failed_check_exits_one(self, capsys, point, monkeypatch):
        from divbounds import harness

        real = harness.run_suite

        def broken(pr, u=None):
            res = real(pr, u)
            res.checks.append(Check("injected", 1.0, 0.0, 0.0, False))
            return res

        monkeypatch.setattr(cli, "run_suite", broken)
        code, out, _ = run(capsys, "verify", "--p", point[0], "--q", point[1])
        assert code == 1 and not Report.loads(out).passed


class TestFuzz:
    def test_one_trial_twice(self, capsys):
        first = run(capsys, "fuzz", "--trials", "1", "--seed", "3")
        second = run(capsys, "fuzz", "--trials", "1", "--seed", "3")
        assert first[0] == 0 and first[1] == second[1]

    def test_worker_count_does_not_matter(self, capsys):
        argv = ["fuzz", "--trials", "40", "--dims", "2..8", "--seed", "5"]
        one = run(capsys, *argv, "--workers", "1")
        two = run(capsys, *argv, "--workers", "2")
        assert one == two

    def test_report_shape(self, capsys):
        code, out, _ = run(capsys, "fuzz", "--trials", "5", "--dims", "3..4")
        rep = Report.loads(out)
        assert code == 0
        assert rep.metadata["trials"] == 5 and rep.metadata["dims"] == [3, 4]
        assert rep.metadata["seed"] == 42
        for name, d in rep.details.items():
            assert d["count"] == 5 and d["violations"] == 0 and 0 <= d["trial"] < 5

    @pytest.mark.parametrize("argv", [
        ["--trials", "0"], ["--dims", "1..5"], ["--dims", "9..5"], ["--dims", "a..b"],
        ["--floor", "0"], ["--floor", "0.5"], ["--floor", "nan"], ["--trials", "x"],
    ])
    def test_bad_arguments(self, capsys, argv):
        assert run(capsys, "fuzz", *argv)[0] == 2


class TestRelate:
    def test_d_delta_at_one(self, capsys):
        code, out, _ = run(capsys, "relate", "--relation", "d-delta", "--r", "1", "--R", "1")
        rep = Report.loads(out)
        assert code == 0
        assert rep.details["analytic"] == {"m": 1.0, "M": 1.0}
        assert rep.details["agree"] is True

    def test_g_t(self, capsys):
        code, out, _ = run(capsys, "relate", "--relation", "g-t", "--r", repr(2 / 3), "--R", "2")
        d = Report.loads(out).details
        assert code == 0
        assert d["analytic"]["m"] == pytest.approx(2 / 5) and d["analytic"]["M"] == pytest.approx(18 / 13)
        assert d["numeric"]["M"] == pytest.approx(18 / 13, rel=1e-10)

    @pytest.mark.parametrize("argv", [
        ["--relation", "d-t", "--r", "0.5", "--R", "2"],
        ["--relation", "d-j", "--r", "1.5", "--R", "2"],
        ["--relation", "d-j", "--r", "0", "--R", "2"],
        ["--relation", "d-j", "--r", "0.5"],
    ])
    def test_errors(self, capsys, argv):
        assert run(capsys, "relate", *argv)[0] == 2


def test_no_command(capsys):
    assert cli.main([]) == 2


def test_report_round_trip():
    rep = Report(measures={"kl": 0.1 + 0.2, "j": 1 / 3},
                 bounds={"j": {"value": 1e-300, "e": math.pi, "a": 2.0, "b": None}},
                 checks=[Check("x", 0.1, 0.30000000000000004, 1e-9, True)],
                 metadata={"r": 2 / 3, "R": 2.0, "n": 2, "version": "0.1.0"},
                 details={"nested": {"v": [1.0000000000000002]}})
    back = Report.loads(rep.dumps())
    assert back == rep
    assert back.dumps() == rep.dumps()


def test_module_entry_point(tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("0.5\n0.5\n")
    q = tmp_path / "q.txt"
    q.write_text("0.25\n0.75\n")
    proc = subprocess.run([sys.executable, "-m", "divbounds", "compute", "--p", str(p),
                           "--q", str(q), "--measures", "chi2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["measures"]["chi2"] == pytest.approx(1 / 3)
