"""End-to-end runs of the installed ``f1forge`` binary."""

import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from f1forge.delta import term_add_i, term_from_integer, term_multiply, term_to_json

SRC = str(Path(__file__).resolve().parents[1] / "src")


def _cmd():
    exe = shutil.which("f1forge")
    return [exe] if exe else [sys.executable, "-m", "f1forge.cli"]


def run(*argv, env=None):
    e = dict(os.environ)
    e.pop("F1FORGE_SEED", None)
    e["PYTHONPATH"] = SRC + os.pathsep + e.get("PYTHONPATH", "")
    e.update(env or {})
    return subprocess.run([*_cmd(), *map(str, argv)], capture_output=True, text=True, env=e,
                          timeout=300)


def records(proc):
    return [json.loads(ln) for ln in proc.stdout.splitlines() if ln.strip()]


@pytest.fixture
def term_file(tmp_path):
    def write(name, term):
        p = tmp_path / name
        p.write_text(json.dumps(term_to_json(term)))
        return p
    return write


def test_zeta_padic_exact():
    p = run("zeta", "padic", "--p", 2, "--s", 2, "--n", 3)
    assert p.returncode == 0
    (rec,) = records(p)
    assert rec["exact"] == "5/7" and rec["limit"] == pytest.approx(2 / 3)


def test_zeta_real_n_one_and_s_three():
    (rec,) = records(run("zeta", "real", "--s", 3, "--n", 100))
    assert rec["value"] == pytest.approx(1.0, abs=1e-12)
    assert run("zeta", "real", "--s", 0.5, "--n", 1).returncode == 2


def test_usage_errors_exit_two():
    assert run("zeta", "padic", "--p", 4, "--s", 2, "--n", 2).returncode == 2
    assert run("suite", "bogus").returncode == 2
    assert run("axioms", "check", "--ring", "nosuchring").returncode == 2
    assert run("dlog", -3).returncode == 2
    bad = run("zeta", "padic", "--p", 2, "--s", 2, "--n", 2, env={"F1FORGE_SEED": "x"})
    assert bad.returncode == 2 and "F1FORGE_SEED" in bad.stderr


def test_same_argv_same_bytes():
    argv = ("zeta", "padic", "--p", 3, "--s", 2.5, "--n", 4, "--mode", "mc", "--samples", 5000,
            "--seed", 11)
    a, b = run(*argv), run(*argv)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_seed_from_environment():
    argv = ("zeta", "real", "--s", 2, "--n", 5, "--mode", "mc", "--samples", 4000)
    env7 = run(*argv, env={"F1FORGE_SEED": "7"})
    flag7 = run(*argv, "--seed", 7)
    default = run(*argv)
    assert env7.stdout == flag7.stdout
    assert default.stdout == run(*argv, "--seed", 0).stdout
    assert default.stdout != env7.stdout


def test_precision_flag():
    (rec,) = records(run("zeta", "real", "--s", 2, "--n", 10, "--precision", 4))
    assert len(str(rec["value"]).replace(".", "").lstrip("0")) <= 4


def test_dlog():
    (rec,) = records(run("dlog", 12))
    assert rec["d"] == "12*d(2) + 4*d(3)"
    assert run("dlog", 12, "--human").stdout.strip() == "12*d(2) + 4*d(3)"


def test_term_eval_and_reduce(term_file):
    t = term_file("t.json", term_multiply(term_from_integer(3), term_from_integer(-2)))
    (rec,) = records(run("term", "eval", t))
    assert rec["matrix"] == [[-6]]
    red = run("term", "reduce", "--input", t)
    assert red.returncode == 0
    (rec,) = records(red)
    assert "normal_form" in rec and isinstance(rec["steps"], list)


def test_term_eq_exit_codes(term_file, tmp_path):
    one = term_from_integer(1)
    a = term_file("a.json", term_add_i(1, one, one))
    b = term_file("b.json", term_from_integer(2))
    c = term_file("c.json", term_from_integer(3))
    assert run("term", "eq", a, b).returncode == 0
    assert run("term", "eq", a, c).returncode == 1
    (tmp_path / "junk.json").write_text("{not json")
    assert run("term", "eq", a, tmp_path / "junk.json").returncode == 2


def test_term_durov():
    p = run("term", "durov")
    assert p.returncode == 0
    last = records(p)[-1]
    assert last["equal"] is True and last["base_rules"] == "not-identified"


def test_omega():
    p = run("omega", "present", "--bound", 6)
    assert p.returncode == 0
    (rec,) = records(p)
    assert rec["evaluation_kills_relations"] is True
    alias = run("omega", "present", "--bound", 6, "--with-7-12")
    assert alias.stdout == run("omega", "present", "--bound", 6, "--with-homogeneity").stdout
    ident = run("omega", "identities", "--bound", 50, "--trials", 50)
    assert ident.returncode == 0 and records(ident)


def test_axioms_check():
    p = run("axioms", "check", "--ring", "G:zmod:6", "--trials", 50)
    assert p.returncode == 0
    recs = records(p)
    assert recs and all(r["passed"] for r in recs)
    assert run("axioms", "check", "--ring", "F", "--laws", "nonsense").returncode == 2


def test_spec_enumerate():
    p = run("spec", "enumerate", "--ring", "G:zmod:6")
    assert p.returncode == 0
    recs = records(p)
    primes = [r for r in recs if r.get("kind") == "prime"]
    assert len(primes) == 2
    assert all(r["passed"] for r in recs if r.get("kind") == "check")
    human = run("spec", "enumerate", "--ring", "G:zmod:6", "--human")
    assert "prime #0" in human.stdout


def test_suite_single_criterion():
    p = run("suite", "zeta-real")
    assert p.returncode == 0
    (rec,) = records(p)
    assert rec["passed"] is True and rec["criterion"] == 3
