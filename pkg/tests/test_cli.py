import json
import os

import pytest

from cell24.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "146928")
    assert code == 0
    assert "PASS" in out


def test_validate_usage_error(capsys):
    code, _, err = run(capsys, "validate", "ZZZ")
    assert code == 2
    assert "usage error" in err


def test_validate_domain_error(capsys):
    code, out, _ = run(capsys, "validate", "046928")
    assert code == 1
    assert "FAIL" in out


def test_pairings(capsys):
    code, out, _ = run(capsys, "pairings", "146928")
    assert code == 0
    assert "a: A   -> A'" in out
    assert "reversing" in out


def test_cycles_text(capsys):
    code, out, _ = run(capsys, "cycles", "146928")
    assert code == 0
    assert "24 ridge cycles" in out
    assert "A∩C -[a]-> A'∩D -[d]-> A'∩D' -[(a)⁻¹]-> A∩C' -[(c)⁻¹]-> A∩C" in out


def test_cycles_json(capsys):
    code, out, _ = run(capsys, "cycles", "146928", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc) == 24
    assert doc[0]["relator"]


def test_presentation(capsys):
    code, out, _ = run(capsys, "presentation", "146928")
    assert code == 0
    assert out.startswith("gens: a,b,c,d,e,f,g,h,i,j,k,l ;")
    code, out, _ = run(capsys, "presentation", "146928", "--fill")
    assert code == 0
    assert out.count(",") >= 11


def test_cusps(capsys):
    code, out, _ = run(capsys, "cusps", "146928")
    assert code == 0
    assert "5 cusps" in out
    assert "label B2" in out
    assert "published alternate translation j" in out


def test_cover(capsys):
    code, out, _ = run(capsys, "cover", "146928")
    assert code == 0
    assert "46 boundary sides" in out
    assert "g⁻¹e: E -> E'-" in out


def test_invariants_stage(capsys):
    code, out, _ = run(capsys, "invariants", "146928", "--stage", "filled")
    assert code == 0
    assert "H1 = Z/2 + Z/2" in out
    assert "order = 4" in out


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "146928", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [r["stage"] for r in doc] == list(
        ("base", "cover", "filled", "filled_cover", "degree2_of_filled_cover")
    )
    assert doc[-1]["euler_characteristic"] == 4


def test_kirby_text(capsys):
    code, out, _ = run(capsys, "kirby", "146928", "--cover", "--fill")
    assert code == 0
    assert "1-handles: 24" in out


def test_kirby_json(capsys, tmp_path):
    path = tmp_path / "d.json"
    code, out, _ = run(
        capsys, "kirby", "146928", "--cover", "--fill", "--format", "json",
        "-o", str(path),
    )
    assert code == 0
    doc = json.loads(path.read_text())
    assert len(doc["one_handles"]) == 24


def test_kirby_svg_panel(capsys, tmp_path):
    path = tmp_path / "p.svg"
    code, _, _ = run(
        capsys, "kirby", "146928", "--cover", "--fill", "--format", "svg",
        "--panel", "xz", "-o", str(path),
    )
    assert code == 0
    assert path.read_text().startswith("<?xml")


def test_kirby_svg_report_dir(capsys, tmp_path):
    outdir = tmp_path / "report"
    code, out, _ = run(
        capsys, "kirby", "146928", "--cover", "--fill", "--format", "svg",
        "--panel", "all", "-o", str(outdir),
    )
    assert code == 0
    names = sorted(os.listdir(outdir))
    assert names == ["diagram.json", "off.svg", "xy.svg", "xz.svg", "yz.svg"]


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "146928", "--script", "m35-cover-fill")
    assert code == 0
    assert "final: gens: g⁻¹e ; rels: (g⁻¹e)⁻¹(g⁻¹e)⁻¹" in out


def test_trace_unknown_script(capsys):
    code, _, err = run(capsys, "trace", "146928", "--script", "nope")
    assert code == 1
    assert "unknown script" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["cycles"])  # missing code
    assert exc.value.code == 2
