"""Command-line behavior: formats, exit codes, element parsing, and the
scalar factoring used in the tables."""

import json

import pytest

import zipchow.cli as cli
from zipchow.chowpipeline import CycleReport
from zipchow.coeffpoly import ParamPoly
from zipchow.rationals import QQ
from zipchow.verify import CheckResult


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- factored rendering --------------------------------------------------------


def test_factored_scalar_pulls_cyclotomic_factors():
    p = ParamPoly.p()
    one = ParamPoly.one()
    assert cli.factored_scalar(p + 1) == "p+1"
    assert cli.factored_scalar(p - 1) == "p-1"
    assert cli.factored_scalar((p + 1) * (p + 1)) == "(p+1)^2"
    assert cli.factored_scalar(p * p - 1) == "(p-1)*(p+1)"
    assert cli.factored_scalar(p * (p - 1)) == "p*(p-1)"
    assert cli.factored_scalar(p * (p - 1) * (p + 1)) == "p*(p-1)*(p+1)"
    assert cli.factored_scalar((p - 1) * (p - 1)) == "(p-1)^2"
    assert cli.factored_scalar(one - p) == "-(p-1)"
    assert cli.factored_scalar((p - 1) * ParamPoly.const(QQ(1, 2))) == "1/2*(p-1)"
    assert cli.factored_scalar(ParamPoly.zero()) == "0"
    assert cli.factored_scalar(one) == "1"
    assert cli.factored_scalar(p**2) == "p^2"


def test_factored_scalar_falls_back_on_other_irreducibles():
    p = ParamPoly.p()
    # (p+1)^2 (p^2+1): the leftover p^2+1 is not a p-power, keep it whole
    value = p**4 + 2 * p**3 + 2 * p**2 + 2 * p + 1
    assert cli.factored_scalar(value) == "p^4+2*p^3+2*p^2+2*p+1"


def test_latex_poly_rewrites_variables():
    assert cli.latex_poly("(p-1)/2*x1 + (p+1)/2*x2") == "(p-1)/2 x_{1} + (p+1)/2 x_{2}"
    assert cli.latex_poly("x1^2*y2") == "x_{1}^{2} y_{2}"
    assert cli.latex_poly("x2_0^2") == r"\bigl(x_{2}^{(0)}\bigr)^{2}"
    assert cli.latex_poly("x2_1*y1_0") == "x_{2}^{(1)} y_{1}^{(0)}"


# -- table ----------------------------------------------------------------------


def test_table_json_matches_the_worked_surface(capsys):
    code, out, err = run(capsys, ["table", "siegel", "2", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["preset"] == "siegel"
    assert data["params"] == [2]
    assert data["d"] == 3
    assert data["I"] == ["s1"]
    assert data["I_circ"] == ["s1"]
    assert data["z"] == "[-2,-1]"
    rows = {row["w"]: row for row in data["rows"]}
    assert set(rows) == {"e", "s2", "s2,s1", "s2,s1,s2"}
    assert rows["s2,s1,s2"]["gamma"] == "p+1"
    assert rows["s2,s1,s2"]["zip_class"] == "(p^2+2*p+1)"
    assert rows["s2,s1"]["gamma"] == "1"
    assert rows["s2,s1"]["zip_class"] == "(p-1)*x1 + (p-1)*x2"
    assert rows["s2"]["flag_class"] == "(-p^3+p)*x1*x2^2 + (p^2-1)*x2^3"
    assert all("error" not in row for row in rows.values())


def test_table_text_has_header_and_factored_gammas(capsys):
    code, out, err = run(capsys, ["table", "siegel", "2"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# preset siegel:2  mu=(1, 1)"
    assert lines[1] == "# d=3  I={s1}  I_circ={s1}  z=[-2,-1]"
    assert lines[2].split() == ["w", "length", "gamma", "flag_class", "zip_class"]
    bottom = [line for line in lines if line.startswith("s2,s1,s2")]
    assert len(bottom) == 1
    assert "(p+1)^2" in bottom[0]


def test_table_latex_wraps_a_tabular(capsys):
    code, out, err = run(capsys, ["table", "spin-odd", "2", "--format", "latex"])
    assert code == 0
    assert r"\begin{tabular}" in out and r"\end{tabular}" in out
    assert "s_{1} s_{2} s_{1}" in out
    assert "(p-1)/2 x_{1} + (p+1)/2 x_{2}" in out


def test_table_numeric_expansions_are_units(capsys):
    code, out, err = run(
        capsys,
        ["table", "siegel", "2", "--format", "json", "--numeric-p", "3,5"],
    )
    assert code == 0
    data = json.loads(out)
    for row in data["rows"]:
        assert row["expansions"] == {"3": {row["w"]: "1"}, "5": {row["w"]: "1"}}


def test_table_is_deterministic(capsys):
    first = run(capsys, ["table", "hilbert-blumenthal", "3", "--format", "json"])
    second = run(capsys, ["table", "hilbert-blumenthal", "3", "--format", "json"])
    assert first == second


def test_table_rejects_bad_parameters(capsys):
    code, out, err = run(capsys, ["table", "gl", "7", "1"])
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_out_writes_the_file_instead_of_stdout(capsys, tmp_path):
    target = tmp_path / "table.json"
    code, out, err = run(
        capsys,
        ["table", "siegel", "2", "--format", "json", "--out", str(target)],
    )
    assert code == 0
    assert out == ""
    data = json.loads(target.read_text(encoding="utf-8"))
    assert data["preset"] == "siegel"


# -- class ----------------------------------------------------------------------


def test_class_text_report(capsys):
    code, out, err = run(
        capsys, ["class", "siegel", "2", "--element", "s2,s1,s2"]
    )
    assert code == 0
    lines = out.splitlines()
    assert "w: s2,s1,s2" in lines
    assert "length: 3" in lines
    assert "degree: 0" in lines
    assert "gamma: p+1" in lines
    assert "zip_class: (p+1)^2" in lines
    assert "flag_class: p*x1 - x2" in lines


def test_class_element_spellings_agree(capsys):
    by_word = run(
        capsys, ["class", "siegel", "2", "--element", "s2,s1", "--format", "json"]
    )
    by_index = run(
        capsys, ["class", "siegel", "2", "--element", "2,0", "--format", "json"]
    )
    by_images = run(
        capsys, ["class", "siegel", "2", "--element", "[-2,1]", "--format", "json"]
    )
    assert by_word == by_index == by_images
    assert json.loads(by_word[1])["w"] == "s2,s1"


def test_class_identity_spelling(capsys):
    code, out, err = run(
        capsys, ["class", "siegel", "2", "--element", "e", "--format", "json"]
    )
    assert code == 0
    assert json.loads(out)["length"] == 0


def test_class_outside_the_transversal_suggests_the_minimal_rep(capsys):
    code, out, err = run(capsys, ["class", "siegel", "2", "--element", "s1"])
    assert code == 1
    assert "not minimal in its coset" in err
    assert "use e" in err


def test_class_rejects_malformed_elements(capsys):
    for bad in ("s9", "[2,1,3]", "[1,2]x"):
        code, out, err = run(capsys, ["class", "siegel", "2", "--element", bad])
        assert code == 1
        assert err.startswith("error:")


def test_class_numeric_expansion_lists_the_unit(capsys):
    code, out, err = run(
        capsys,
        ["class", "siegel", "2", "--element", "s2", "--numeric-p", "5"],
    )
    assert code == 0
    assert "expansion at p=5: s2: 1" in out


# -- rows without a closed-form multiplicity -------------------------------------


def broken_report(report):
    return CycleReport(
        w=report.w,
        length=report.length,
        degree=report.degree,
        flag_class=report.flag_class,
        gamma=None,
        zip_class=None,
        error="component chain is neither trivial nor the chain reversal",
    )


def test_table_annotates_unsupported_rows_and_exits_two(capsys, monkeypatch, preset):
    Z = preset("siegel", 2)
    real = cli.cycle_classes(Z)

    def fake(Zarg, ws=None):
        return [broken_report(real[0])] + list(real[1:])

    monkeypatch.setattr(cli, "cycle_classes", fake)
    code, out, err = run(capsys, ["table", "siegel", "2"])
    assert code == 2
    assert "unsupported" in out
    assert "chain reversal" in out
    # the healthy rows still carry their classes
    assert "(p+1)^2" in out


def test_class_unsupported_row_exits_two(capsys, monkeypatch, preset):
    Z = preset("siegel", 2)
    w = Z.datum.identity()
    real = cli.stratum_class(Z, w)
    monkeypatch.setattr(cli, "stratum_class", lambda *a: broken_report(real))
    code, out, err = run(
        capsys, ["class", "siegel", "2", "--element", "e", "--format", "json"]
    )
    assert code == 2
    data = json.loads(out)
    assert data["gamma"] is None
    assert data["zip_class"] is None
    assert "chain reversal" in data["error"]


# -- verify -----------------------------------------------------------------------


def test_verify_single_suite_json(capsys):
    code, out, err = run(
        capsys, ["verify", "--suite", "operators", "--seed", "1"]
    )
    assert code == 0
    assert err == ""
    data = json.loads(out)
    assert data["suite"] == "operators"
    assert data["seed"] == 1
    assert data["failed"] == 0
    assert data["passed"] == len(data["checks"]) > 0
    assert all(check["ok"] for check in data["checks"])


def test_verify_is_deterministic(capsys):
    first = run(capsys, ["verify", "--suite", "chevalley", "--seed", "7"])
    second = run(capsys, ["verify", "--suite", "chevalley", "--seed", "7"])
    assert first == second


def test_verify_failure_exits_three(capsys, monkeypatch):
    results = [
        CheckResult(name="good", ok=True, detail=""),
        CheckResult(name="bad", ok=False, detail="boom"),
    ]
    monkeypatch.setattr(cli, "run_suites", lambda *a, **k: results)
    code, out, err = run(capsys, ["verify", "--format", "text"])
    assert code == 3
    assert "PASS good" in out
    assert "FAIL bad: boom" in out
    assert "1 passed, 1 failed" in out
    assert "FAIL bad: boom" in err


# -- argument plumbing --------------------------------------------------------------


def test_usage_errors_exit_one(capsys):
    for argv in (
        ["table"],
        ["class", "siegel", "2"],
        ["table", "nonsense", "2"],
        ["table", "siegel", "2", "--numeric-p", "1"],
        ["table", "siegel", "2", "--numeric-p", "x"],
        ["verify", "--suite", "nonsense"],
    ):
        with pytest.raises(SystemExit) as info:
            cli.main(argv)
        assert info.value.code == 1
        capsys.readouterr()
