import json
from pathlib import Path

import pytest

from symseqkit.cli import main
from symseqkit.compose import kleisli_compose
from symseqkit.seqfile import read_seq
from symseqkit.species import species_E

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"
FIX = Path(__file__).parent / "fixtures" / "noninvertible"
QUAD = [str(FIX / f"{n}.seq") for n in ("M1", "N1", "M2", "N2")]


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", DATA / "two_colour.seq")
    assert code == 0 and out.startswith("ok:")


def test_validate_reports_position(capsys, tmp_path):
    bad = tmp_path / "bad.seq"
    bad.write_text("symseq v1\noutputs a\ninputs a b\nelem f : [b a] -> a\n")
    code, _, err = run(capsys, "validate", bad)
    assert code == 1
    assert "line 4, column 10" in err


def test_missing_file_and_bad_usage(capsys):
    assert run(capsys, "validate", "/nonexistent.seq")[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 1
    capsys.readouterr()


def test_table_is_byte_identical(capsys):
    first = run(capsys, "table", DATA / "orders3.seq")
    second = run(capsys, "table", DATA / "orders3.seq")
    assert first[0] == 0 and first[1] == second[1]
    assert first[1].splitlines()[-1].split("\t")[1:] == ["6", "1"]


def test_table_json(capsys):
    code, out, _ = run(capsys, "--json", "table", DATA / "sets3.seq")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and all(r["elements"] == 1 for r in recs)


def test_compose_and_boxtimes_write_files(capsys, tmp_path):
    out = tmp_path / "c.seq"
    assert run(capsys, "compose", "E", "E", "-o", out, "--max-arity", "3")[0] == 0
    C = kleisli_compose(species_E(4), species_E(4))
    assert {k: len(g) for k, g in read_seq(out).support.items()} == \
        {k: len(C.point(k)) for k in C.keys_upto(3)}
    out2 = tmp_path / "b.seq"
    assert run(capsys, "boxtimes", DATA / "binary.seq", DATA / "binary.seq", "-o", out2,
               "--max-arity", "4")[0] == 0
    assert run(capsys, "validate", out2)[0] == 0


def test_compose_colour_mismatch(capsys, tmp_path):
    code, _, err = run(capsys, "compose", DATA / "two_colour.seq", "E", "-o", tmp_path / "x.seq")
    assert code == 1 and err


def test_species(capsys, tmp_path):
    out = tmp_path / "L.seq"
    assert run(capsys, "species", "L", "--truncate", "3", "-o", out)[0] == 0
    assert len(read_seq(out).support[(("*",) * 3, "*")]) == 6


@pytest.mark.parametrize("argv,value", [
    (("rectangles", "E", "E", "4"), "8"),
    (("dh", "E", "E", "4"), "8"),
    (("analytic", "E", "3"), "35"),
    (("rectangles", "L", "X", "3"), "6"),
])
def test_oracles(capsys, argv, value):
    code, out, _ = run(capsys, "oracle", *argv)
    assert code == 0 and out.strip() == value


def test_plethysm(capsys):
    code, out, _ = run(capsys, "oracle", "plethysm", "E", "X", "2")
    assert code == 0 and out.startswith("PASS")


def test_tau_on_fixture(capsys, tmp_path):
    report = tmp_path / "r.txt"
    code, out, _ = run(capsys, "tau", *QUAD, "--expect-noninvertible", "--report", report)
    assert code == 0
    assert "domain 0 codomain 6" in out
    assert report.read_text() == out


def test_tau_failure_prints_witness_and_reproducer(capsys):
    code, out, _ = run(capsys, "tau", *QUAD)
    assert code == 2
    assert "FAIL" in out and "reproduce: symseq tau" in out


def test_tau_json(capsys):
    code, out, _ = run(capsys, "--json", "tau", *QUAD)
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 2
    assert {r["status"] for r in recs} == {"pass", "fail"}
    assert all("reproduce" in r for r in recs if r["status"] == "fail")


def test_tau_invertible_case(capsys):
    ident = str(DATA / "identity.seq")
    code, out, _ = run(capsys, "tau", ident, ident, DATA / "binary.seq", DATA / "binary.seq")
    assert code == 0 and "PASS" in out


@pytest.mark.parametrize("side", ["left", "right"])
def test_normality(capsys, side):
    code, out, _ = run(capsys, "check", "normality", DATA / "binary.seq", DATA / "sets3.seq",
                       "--side", side, "--max-arity", "3")
    assert code == 0 and out.startswith("PASS")


def test_coherence_sampled(capsys):
    code, out, _ = run(capsys, "--json", "check", "coherence", "--seeds", DATA / "coherence",
                       "--max-arity", "3", "--triples", "5")
    recs = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert all(r["status"] != "fail" for r in recs)
    assert sum(r["check"] == "tau associativity" for r in recs) == 5


def test_coherence_needs_seeds(capsys, tmp_path):
    assert run(capsys, "check", "coherence", "--seeds", tmp_path)[0] == 1
