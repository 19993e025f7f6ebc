import io
import json
import re
import subprocess
import sys

import pytest
from helpers import CORPUS

from jetcomp.cli import run
from jetcomp.problem import ProblemParseError, parse_problem
from jetcomp.series import format_series, parse_series
from jetcomp.whitney import format_field, parse_field

CASES = sorted(CORPUS.glob("*/*.in"))
RATIONAL = re.compile(r"-?\d+/\d+")


def command_of(path):
    return path.stem.split("--")[0]


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(map(str, argv)), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, text, name="problem.in"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_corpus_is_complete():
    names = {p.parent.name for p in CASES}
    assert {"whitney-even", "glaeser-symmetric", "cusp", "identity-map", "odd-counterexample"} <= names


@pytest.mark.parametrize("case", CASES, ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_golden_outputs(case):
    code, text, err = invoke(command_of(case), case)
    assert err == ""
    assert text == case.with_suffix(".out").read_text()
    jcode, js, _ = invoke(command_of(case), case, "--output", "json")
    assert js == case.with_suffix(".json").read_text()
    data = json.loads(js)
    assert code == jcode == data["exit_code"]
    # same rationals in both renderings
    assert sorted(RATIONAL.findall(text)) == sorted(RATIONAL.findall(json.dumps(data)))


def test_whitney_even_composite():
    code, text, _ = invoke("composite", CORPUS / "whitney-even" / "composite.in")
    assert code == 0
    assert "V = 2 + 3*y + y^2" in text


def test_odd_certificate():
    code, text, _ = invoke("composite", CORPUS / "odd-counterexample" / "composite.in")
    assert code == 1
    assert "beta=(0) nu=2" in text


def test_diagram_of_line():
    code, text, _ = invoke("diagram", CORPUS / "ideal-line" / "diagram.in")
    assert code == 0
    assert text.split() == ["vertices", "(0,1)", "(3,0)"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "jetcomp", "diagram", str(CORPUS / "ideal-line" / "diagram.in")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and "(3,0)" in proc.stdout


def test_parse_error_reports_position(tmp_path):
    path = write(tmp_path, "VARS x:1 y:1\nDEGREE 2\nSERIES input\n1/1 (0)\n2/1 (1) junk\n")
    code, out, err = invoke("normal-form", path)
    assert code == 2 and out == ""
    assert ":5:" in err


def test_unknown_section_and_order(tmp_path):
    with pytest.raises(ProblemParseError) as info:
        parse_problem("VARS x:1 y:1\nBOGUS\n")
    assert info.value.line == 2
    with pytest.raises(ProblemParseError, match="out of order"):
        parse_problem("DEGREE 2\nVARS x:1 y:1\n")


def test_decimal_rationals_rejected():
    with pytest.raises(ProblemParseError):
        parse_problem("VARS x:1 y:1\nDEGREE 2\nSERIES input\n0.5 (1)\n")


def test_bad_tolerance_option(tmp_path):
    with pytest.raises(ProblemParseError) as info:
        parse_problem("OPTIONS\ntolerance 1.5\n")
    assert info.value.line == 2 and info.value.column == 11


def test_fiber_violation_names_the_point(tmp_path):
    text = "VARS x:1 y:1\nDEGREE 2\nMAP\n1/1 (2)\nFIBER\n(1/1)\n(2/1)\n"
    code, _, err = invoke("relations", write(tmp_path, text))
    assert code == 2
    assert "fiber point (2/1) maps to (4/1), not (1/1)" in err


def test_missing_file_and_bad_flags(tmp_path):
    code, _, err = invoke("diagram", tmp_path / "missing.in")
    assert code == 2 and "cannot read" in err
    code, _, _ = invoke("diagram", tmp_path / "missing.in", "--tolerance", "0.1")
    assert code == 2
    code, _, _ = invoke("explode", tmp_path / "missing.in")
    assert code == 2


def test_tolerance_flag_overrides_file():
    case = CORPUS / "whitney-fields" / "whitney-defect--flat.in"
    code, text, _ = invoke("whitney-defect", case, "--tolerance", "1/1")
    assert code == 0 and "tolerance 1/1 pass" in text


def test_stabilize_max_degree_flag():
    case = CORPUS / "cusp" / "stabilize.in"
    code, text, _ = invoke("stabilize", case, "--max-degree", "2")
    assert code == 0 and "dims 1 1" in text
    code, text, _ = invoke("stabilize", case, "--max-degree", "1")
    assert code == 1 and "not-stabilized" in text


@pytest.mark.parametrize("case", sorted(CORPUS.glob("*/*.in")), ids=lambda p: f"{p.parent.name}/{p.stem}")
def test_emitted_series_reparse(case):
    prob = parse_problem(case.read_text())
    for _, s in prob.series:
        assert parse_series(format_series(s), s.n, s.p) == s
    for j in prob.jets:
        assert parse_series(format_series(j), j.n, j.p) == j
    if prob.jet_field is not None:
        assert parse_field(format_field(prob.jet_field)) == prob.jet_field


def test_output_series_reparse():
    code, text, _ = invoke("nf", CORPUS / "cusp" / "nf.in")
    body = text.split("\n", 1)[1]
    v = parse_series(body, 2, 2)
    assert format_series(v) + "\n" == body
