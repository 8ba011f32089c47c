import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from artifact import cli, golden
from artifact.bpd import from_rows
from artifact.trapezoid import canonical_labels, observed_boundary


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(cli.main, list(args), env=env, catch_exceptions=False)
    return invoke


@pytest.fixture(scope="module")
def worked_gamma() -> str:
    D = from_rows(golden.TRAP_ROWS[0], golden.TRAP_A)
    data = canonical_labels(observed_boundary(D, golden.TRAP_A, golden.TRAP_N))
    return json.dumps(data.delta.to_json())


@pytest.mark.parametrize("fixture,args", [
    ("jcoeff_s0_empty.txt", ["jcoeff", "[1,0]@0", ""]),
    ("jcoeff_s0_1.txt", ["jcoeff", "[1,0]@0", "1"]),
    ("jcoeff_2143_all.jsonl", ["jcoeff", "--json", "--all", "[2,1,4,3]@1"]),
    ("rothe_21.txt", ["bpd", "rothe", "[2,1]@1"]),
])
def test_golden_outputs(run, fixtures_dir, fixture, args):
    res = run(*args)
    assert res.exit_code == 0
    assert res.output == (fixtures_dir / "golden" / fixture).read_text(encoding="utf-8")


def test_tra_cert_text(run, worked_gamma):
    res = run("tra", "cert", "--a", "-1", "--n", "4", "--verify", worked_gamma)
    assert res.exit_code == 0
    assert res.output == "(y_1 - y_0) + (y_3 - y_(-1))\n"


def test_tra_reads_a_file(run, worked_gamma, tmp_path):
    path = tmp_path / "gamma.json"
    path.write_text(worked_gamma)
    res = run("tra", "enum", "--a", "-1", "--n", "4", f"@{path}")
    assert res.exit_code == 0 and res.output.startswith("a=-1 n=4 3 TBPDs\n")


def test_chains_fc(run):
    res = run("chains", "fc", "[2,1,4,3]", "[4,3,2,1]", "1,2,3", "4")
    assert res.exit_code == 0
    assert res.output == golden.DOUBLE_SYM_FORWARD.text() + "\n"
    res = run("chains", "fc", "--reverse-vars", "[2,1,4,3]", "[4,3,2,1]", "3,2,1", "4")
    assert res.output == golden.DOUBLE_SYM_REVERSED.text() + "\n"


def test_chains_enum_json(run):
    res = run("--json", "chains", "enum", "[2,1,4,3]", "[4,3,2,1]", "3,2,1", "4")
    assert json.loads(res.output)["count"] == 3


def test_schubert_verify(run):
    res = run("bpd", "schubert", "--verify", "[1,3,2]")
    assert res.exit_code == 0 and res.output.endswith("oracle: ok\n")


def test_oracle_eg(run):
    res = run("oracle", "eg", "[2,1,4,3]")
    assert res.output == "(2)  1\n(1,1)  1\n"


def test_slice_lower_and_lfs(run):
    assert run("slice", "lower", "[2,1,4,3]").exit_code == 0
    res = run("slice", "lfs", "[2,0,1]@0", "[2,1,4,3]")
    assert res.output == "1\n"


def test_verify_golden(run):
    res = run("verify", "golden")
    assert res.exit_code == 0
    assert res.output.endswith("4/4 checks passed\n")


@pytest.mark.parametrize("args", [
    ["bpd", "rothe", "[1,1]"],
    ["jcoeff", "[2,1", "1"],
    ["verify", "nope"],
    ["jcoeff", "[2,1]", "x"],
    ["chains", "sym-check", "[2,1,4,3]", "[4,3,2,1]", "1,2", "4", "1,1"],
    ["bpd", "render", "{not json"],
])
def test_usage_errors_exit_2(run, args):
    assert run(*args).exit_code == 2


def test_bad_jobs_variable_is_a_usage_error(run):
    assert run("verify", "golden", env={"ARTIFACT_JOBS": "0"}).exit_code == 2


def test_verification_failure_exits_1(run, monkeypatch):
    monkeypatch.setattr(cli, "symmetry_check", lambda *a: False)
    res = run("chains", "sym-check", "[2,1,4,3]", "[4,3,2,1]", "1,2,3", "4", "2,1,3")
    assert res.exit_code == 1 and res.output == "FAILED\n"


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "artifact", "bpd", "rothe", "[2,1]"],
                         capture_output=True, text=True, encoding="utf-8", check=True)
    assert out.stdout.splitlines()[1] == "1 · ╭"
