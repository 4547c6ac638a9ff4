import json
import subprocess
import sys

import pytest

from flagcones.cli import main

GOOD = """
{
  "curve": {"genus": 0, "label": "X"},
  "bundle": {"summands": [{"degree": 4, "multiplicity": 1},
                          {"degree": -1, "multiplicity": 1},
                          {"degree": 0, "multiplicity": 3}]},
  "flag": {"quotient_ranks": [4, 1]},
  "divisors": [{"name": "L", "basis": "nef", "coords": [3, 4, 1]}]
}
"""

SEMISTABLE = """
{
  "bundle": {"summands": [{"degree": 0, "multiplicity": 3}]},
  "flag": {"quotient_ranks": [1]}
}
"""

BAD_FLAG = """
{
  "bundle": {"summands": [{"degree": 1, "multiplicity": 1},
                          {"degree": -1, "multiplicity": 1},
                          {"degree": 0, "multiplicity": 3}]},
  "flag": {"quotient_ranks": [3]}
}
"""

NOT_NEF = """
{
  "bundle": {"summands": [{"degree": 4, "multiplicity": 1},
                          {"degree": -1, "multiplicity": 1},
                          {"degree": 0, "multiplicity": 3}]},
  "flag": {"quotient_ranks": [4, 1]},
  "divisors": [{"name": "M", "basis": "nef", "coords": [-1, 0, 0]}]
}
"""


@pytest.fixture
def config_file(tmp_path):
    def write(text, name="problem.json"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write


class TestSubcommands:
    def test_seshadri_human(self, config_file, capsys):
        assert main(["seshadri", config_file(GOOD)]) == 0
        out = capsys.readouterr().out
        assert "eps very general  3" in out
        assert "divisibility condition" in out

    def test_seshadri_machine(self, config_file, capsys):
        assert main(["seshadri", "--machine", config_file(GOOD)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["spec_version"] == 1
        assert data["divisors"][0]["seshadri"]["general"] == 3

    def test_hn_allows_semistable(self, config_file, capsys):
        assert main(["hn", config_file(SEMISTABLE)]) == 0
        out = capsys.readouterr().out
        assert "semistable" in out and "yes" in out
        assert "(3, 0)" in out

    def test_hn_machine_sections_null(self, config_file, capsys):
        assert main(["hn", "--machine", config_file(SEMISTABLE)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["cones"] is None
        assert data["assumption"] is None

    def test_cones(self, config_file, capsys):
        assert main(["cones", config_file(GOOD)]) == 0
        out = capsys.readouterr().out
        assert "pairing matrix" in out

    def test_examples_all(self, capsys):
        assert main(["examples"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 13

    def test_examples_named(self, capsys):
        assert main(["examples", "rank5-c/fl41"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "divisibility holds" in out

    def test_examples_machine(self, capsys):
        assert main(["examples", "--machine"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data) == 13
        assert all(entry["pass"] for entry in data)

    def test_examples_unknown_name(self, capsys):
        assert main(["examples", "nope"]) == 2

    def test_selftest_quick(self, capsys):
        assert main(["selftest", "--trials", "5", "--seed", "3"]) == 0
        out = capsys.readouterr().out
        assert "hn-oracle-equivalence" in out

    def test_selftest_machine(self, capsys):
        assert main(["selftest", "--trials", "3", "--machine"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert all(entry["failures"] == 0 for entry in data)


class TestExitCodes:
    def test_missing_file(self, capsys):
        assert main(["seshadri", "/nonexistent/path.json"]) == 2

    def test_parse_error(self, config_file, capsys):
        assert main(["seshadri", config_file("{broken")]) == 2
        assert "error" in capsys.readouterr().err

    def test_validation_error(self, config_file, capsys):
        assert main(["seshadri", config_file('{"bundle": {"summands": []}, "flag": {"quotient_ranks": [1]}}')]) == 2

    def test_semistable_is_3(self, config_file, capsys):
        assert main(["seshadri", config_file(SEMISTABLE)]) == 3
        assert "SemistableBundle" in capsys.readouterr().err

    def test_bad_flag_rank_is_3(self, config_file, capsys):
        assert main(["seshadri", config_file(BAD_FLAG)]) == 3
        assert "RankNotInHNProfile" in capsys.readouterr().err

    def test_not_nef_divisor_is_3(self, config_file, capsys):
        assert main(["seshadri", config_file(NOT_NEF)]) == 3
        out = capsys.readouterr().out
        # report is still produced, with the offending input echoed
        assert "NotNef" in out and "(-1, 0, 0)" in out


class TestInternalFailureExit:
    def test_examples_digest_mismatch_is_4(self, capsys, monkeypatch):
        import flagcones.cli as cli_module
        from flagcones.gallery import Digest, Fixture, builtin_examples

        original = builtin_examples()[0]
        corrupted = Fixture(
            original.name,
            original.config,
            Digest(
                hn_steps=original.digest.hn_steps,
                slope=original.digest.slope,
                picard_rank=original.digest.picard_rank + 1,
                assumption_holds=original.digest.assumption_holds,
            ),
        )
        monkeypatch.setattr(cli_module, "builtin_examples", lambda: (corrupted,))
        assert main(["examples"]) == 4
        captured = capsys.readouterr()
        assert "FAIL" in captured.out
        assert "mismatch" in captured.err


class TestConsoleScript:
    def test_module_invocation(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(GOOD, encoding="utf-8")
        proc = subprocess.run(
            [sys.executable, "-m", "flagcones", "seshadri", str(path)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "eps global" in proc.stdout

    def test_usage_error_exit_code(self):
        proc = subprocess.run(
            [sys.executable, "-m", "flagcones", "bogus-subcommand"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 2
