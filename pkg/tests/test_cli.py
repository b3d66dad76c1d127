"""Command-line behavior: exit codes, goldens, determinism, export schema."""

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from ncgrass import atlas
from ncgrass.cli import main
from ncgrass.fields import QQ
from ncgrass.poly import NcPoly, poly_str


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_proposition_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "proposition", "--bound", "6", "--quiet")
    assert code == 0
    assert "checked 192: 192 verified, 0 failed, 0 inconclusive" in out


def test_verify_lemma_starved_bound_exit_two(capsys):
    code, out, _ = run_cli(capsys, "verify", "lemma", "--bound", "2", "--quiet")
    assert code == 2
    assert "20 inconclusive" in out


def test_verify_single_cocycle_triple(capsys):
    code, out, _ = run_cli(capsys, "verify", "cocycle", "--triple", "1,2:2,3:3,4", "--quiet")
    assert code == 0
    assert "checked 4: 4 verified" in out


def test_verify_prints_one_line_per_check(capsys):
    code, out, _ = run_cli(capsys, "verify", "points")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("Verified")]
    assert len(lines) == 6


def test_verify_bad_selector_exits_three(capsys):
    with pytest.raises(SystemExit) as err:
        main(["verify", "bogus"])
    assert err.value.code == 3


def test_triple_flag_requires_cocycle(capsys):
    code, _, err = run_cli(capsys, "verify", "lemma", "--triple", "1,2:2,3:3,4")
    assert code == 3
    assert "--triple" in err


def test_malformed_triple_exits_three(capsys):
    code, _, err = run_cli(capsys, "verify", "cocycle", "--triple", "1,2/2,3/3,4")
    assert code == 3


def test_bound_env_override(capsys, monkeypatch):
    monkeypatch.setenv("NCGRASS_BOUND", "2")
    code, out, _ = run_cli(capsys, "verify", "lemma", "--quiet")
    assert code == 2
    # an explicit flag beats the environment
    monkeypatch.setenv("NCGRASS_BOUND", "2")
    code, out, _ = run_cli(capsys, "verify", "lemma", "--bound", "10", "--quiet")
    assert code == 0


def test_bad_bound_env_exits_three(capsys, monkeypatch):
    monkeypatch.setenv("NCGRASS_BOUND", "ten")
    code, _, err = run_cli(capsys, "verify", "lemma", "--quiet")
    assert code == 3


def test_verify_json_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, _ = run_cli(capsys, "verify", "points", "--quiet", "--json", str(path))
    assert code == 0
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["status"] == 0
    assert doc["counts"]["total"] == 6
    assert {c["id"] for c in doc["checks"]} >= {"points:q2:count", "points:q5:roundtrip"}
    assert all("elapsed" not in c for c in doc["checks"])


def test_normalform_goldens(capsys):
    code, out, _ = run_cli(
        capsys, "normalform", "a(1,2;1,3)*a(1,2;1,4) - a(1,2;1,4)*a(1,2;1,3)"
    )
    assert code == 0 and out == "0\n"
    code, out, _ = run_cli(
        capsys, "normalform", "a(1,2;1,4)*a(1,2;2,3)", "-p", "O(1,2|3,4)",
        "--bound", "6",
    )
    assert code == 0 and out == "a(1,2;1,3)*a(1,2;2,4) - d(1,2|3,4)\n"
    code, out, _ = run_cli(capsys, "normalform", "x(3)", "-p", "F(1,2)")
    assert code == 0 and out == "a(1,2;1,3)*x(1) + a(1,2;2,3)*x(2)\n"
    code, out, _ = run_cli(
        capsys, "normalform", "d(1,2|3,4)^-1 * a(1,2;2,4)", "-p", "O(1,2|3,4)",
        "--bound", "6",
    )
    assert code == 0 and out == "a(3,4;3,1)\n"


def test_normalform_triple_context(capsys):
    # the chain presentation localizes the two hop pivots
    code, out, _ = run_cli(
        capsys,
        "normalform",
        "a(1,2;1,3)^-1 * a(1,2;1,3)",
        "-p",
        "O(1,2|2,3|3,4)",
        "--bound",
        "4",
    )
    assert code == 0 and out == "1\n"
    code, _, err = run_cli(
        capsys, "normalform", "a(2,3;2,3)", "-p", "O(1,2|2,3|3,4)"
    )
    assert code == 3
    assert "unknown generator" in err or "does not belong" in err


def test_normalform_errors(capsys):
    code, _, err = run_cli(capsys, "normalform", "a(1,2;1,3")
    assert code == 3
    assert "syntax error at offset 10" in err
    code, _, err = run_cli(capsys, "normalform", "x(1)", "-p", "Q(1,2)")
    assert code == 3
    assert "unknown presentation" in err
    code, _, err = run_cli(capsys, "normalform", "x(1)", "-p", "R(1,2)")
    assert code == 3
    assert "does not belong" in err


def test_export_charts_schema(capsys):
    code, out, _ = run_cli(capsys, "export", "charts")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["charts"]) == 6
    for chart in doc["charts"]:
        assert len(chart["relations"]) == 3
        assert len(chart["generators"]) == 4
        for g in chart["generators"]:
            assert set(g) == {"name", "kind", "chart", "i", "j", "weight"}
    assert out.endswith("\n")


def test_export_charts_round_trip(capsys):
    # rebuilding each relation from the serialized terms reproduces the
    # presentation exactly
    code, out, _ = run_cli(capsys, "export", "charts")
    doc = json.loads(out)
    for chart in doc["charts"]:
        lam = tuple(
            int(x) for x in chart["name"][2:-1].split(",")
        )
        pres = atlas.chart_presentation(lam)
        names = pres.names()
        rebuilt = []
        for rel in chart["relations"]:
            p = NcPoly.zero(QQ)
            for coeff, word in rel:
                sids = tuple(names[w] for w in word)
                p = p + NcPoly.from_word(QQ, sids, Fraction(coeff))
            rebuilt.append(p)
        assert rebuilt == list(pres.relations)


def test_export_transitions(capsys):
    code, out, _ = run_cli(capsys, "export", "transitions")
    doc = json.loads(out)
    rows = doc["transitions"]
    assert len(rows) == 30
    assert len({(r["source"], r["target"]) for r in rows}) == 30
    for row in rows:
        assert len(row["images"]) == 4
    by_pair = {(r["source"], r["target"]): r for r in rows}
    row = by_pair[("R(1,2)", "R(2,3)")]
    pair = atlas.pair_overlap((1, 2), (2, 3))
    for name, text in row["images"].items():
        sid = atlas.chart_presentation((2, 3)).names()[name]
        assert text == poly_str(pair.to_base.mapping[sid])


def test_export_overlaps_and_presheaf(capsys):
    code, out, _ = run_cli(capsys, "export", "overlaps")
    doc = json.loads(out)
    assert len(doc["overlaps"]) == 15
    code, out, _ = run_cli(capsys, "export", "presheaf")
    doc = json.loads(out)
    assert len(doc["nodes"]) == 41
    assert len(doc["restrictions"]) == 150
    names = {n["name"] for n in doc["nodes"]}
    assert "R(1,2)" in names and "min(1,2/1,3)" in names


def test_export_unknown_target_exits_three(capsys):
    with pytest.raises(SystemExit) as err:
        main(["export", "everything"])
    assert err.value.code == 3


def test_export_is_deterministic_across_processes():
    cmd = [sys.executable, "-m", "ncgrass.cli", "export", "transitions"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
    assert a.decode("utf-8").endswith("\n")
