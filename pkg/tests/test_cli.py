from __future__ import annotations

import io
import json

import pytest

from qcoideal import cli


def run(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), stdout=buf)
    return code, buf.getvalue()


def records(text):
    lines = [json.loads(x) for x in text.splitlines()]
    return lines[0], lines[1:-1], lines[-1]


def test_sweep_a2_all_confirmed():
    code, out = run("sweep-conja", "--type", "A2")
    assert code == 0
    head, recs, foot = records(out)
    assert head["schema"] == 1 and head["datum"] == "A2"
    assert len(recs) == 6 and all(r["verdict"] == "confirmed" for r in recs)
    assert foot == {"summary": {"cases": 6, "confirmed": 6, "mismatches": 0}}


def test_type_and_rank_flags():
    code, out = run("sweep-conja", "--type", "A", "--rank", "2")
    assert code == 0 and records(out)[0]["datum"] == "A2"
    assert run("sweep-conja", "--type", "A3", "--rank", "2")[0] == 2


@pytest.mark.parametrize("argv", [
    ("sweep-conja", "--type", "E6"),
    ("sweep-conja", "--type", "D4"),
    ("catalog", "--type", "A3"),
    ("induce", "--type", "A1"),
    ("graded", "--type", "A2", "--window", "0"),
    ("no-such-command",),
])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_constraint_violation_exit_code(capsys):
    code, out = run("induce", "--type", "A1", "--e", "q + 1", "--f", "1")
    assert code == 3 and out == ""
    assert "e*f = q + 1" in capsys.readouterr().err


def test_sweep_is_deterministic_across_jobs(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert cli.run(["sweep-conja", "--type", "G2", "--out", str(a)]) == 0
    assert cli.run(["sweep-conja", "--type", "G2", "--jobs", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_progress_goes_to_stderr(capsys):
    code, out = run("sweep-conja", "--type", "A2")
    err = capsys.readouterr().err
    assert "[6/6]" in err and "[6/6]" not in out


def test_tsv_projection():
    code, out = run("sweep-conja", "--type", "A2", "--format", "tsv")
    lines = out.splitlines()
    assert lines[0].startswith("# {") and '"schema": 1' in lines[0]
    cols = lines[1].split("\t")
    assert "verdict" in cols and len(lines) == 2 + 6 + 1


def test_catalog_a1():
    code, out = run("catalog", "--type", "A1")
    assert code == 0
    _, recs, _ = records(out)
    assert [r["entry"] for r in recs] == ["U<=0", "U>=0", "B(lambda,lambda')"]
    weyl = recs[2]["identities"][0]
    assert weyl["holds"] and weyl["rhs"] == "((q^3)/(q^2 - 1))*1"


def test_catalog_a2_reports_corrections():
    code, out = run("catalog", "--type", "A2")
    assert code == 0
    _, recs, foot = records(out)
    assert len(recs) == 3 and foot["summary"]["failed_checks"] == 0
    rows = {r["relation"]: r for r in recs[2]["identities"]}
    assert not rows["[K,E12]_1"]["holds"] and rows["[K,E12]_1"]["corrected"]["holds"]
    assert rows["c1*c2"]["holds"]


def test_induce_sl2_quotient():
    code, out = run("induce", "--type", "A1", "--e", "lambda", "--window", "3")
    assert code == 0
    _, (rec,), _ = records(out)
    assert rec["verdict"] == "reducible" and rec["quotient"]["dim"] == 1


def test_induce_sl2_generic():
    code, out = run("induce", "--type", "A1", "--e", "q + 1", "--window", "3")
    _, (rec,), foot = records(out)
    assert code == 0 and rec["verdict"] == "irreducible" and foot["summary"]["agree"]


def test_induce_sl3_type2():
    code, out = run("induce", "--type", "A2", "--borel", "type2", "--e", "lambda", "--window", "1")
    _, (rec,), _ = records(out)
    assert code == 0 and rec["basis"] == "(i,j,k)"
    assert all(len(lab) == 3 for lab in rec["module"]["labels"])


def test_verify_coideal_and_graded():
    code, out = run("verify-coideal", "--type", "A2", "--w-minus", "s1s2", "--supp-minus", "1",
                    "--lattice", "1,2", "--w-plus", "s1s2", "--supp-plus", "1")
    assert code == 0 and records(out)[2]["summary"]["outcome"] == "true"
    code, out = run("graded", "--type", "A3", "--w", "s3s1s2", "--supp", "1,3")
    assert code == 0 and records(out)[1][0]["w_prime"] == "s2"


def test_nonbasic_witness_commands():
    code, out = run("nonbasic-witness", "--type", "A1", "--borel", "uq")
    assert code == 0 and records(out)[1][0]["status"] == "witness"
    code, out = run("nonbasic-witness", "--type", "A1", "--borel", "borel")
    assert records(out)[1][0]["status"] == "no witness by this lemma"


def test_reports_identical_on_rerun():
    assert run("catalog", "--type", "A2") == run("catalog", "--type", "A2")
