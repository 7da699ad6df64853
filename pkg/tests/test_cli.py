import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nodalspec.cli import (
    JobSpec,
    NotHomogeneous,
    ParseError,
    emit,
    main,
    parse_polynomial,
    report_from_json,
    report_to_json,
    run,
)
from nodalspec.corpus import CASES, CORPUS_DIR, golden_path
from nodalspec.exactla import Arithmetic
from nodalspec.polyring import HomPoly, format_poly

from conftest import THREE_NODES, THREE_NODES_POINTS


class TestParse:
    def test_three_nodes(self):
        f = parse_polynomial("x^2*y^2 + x^2*z^2 + y^2*z^2")
        assert (f.num_vars, f.degree, f.n) == (3, 4, 2)
        assert f == HomPoly.from_dict(3, 4, {(2, 2, 0): 1, (2, 0, 2): 1, (0, 2, 2): 1})

    def test_four_lines(self):
        f = parse_polynomial("x*y*z*(x+y+z)")
        assert f == HomPoly.from_dict(3, 4, {(2, 1, 1): 1, (1, 2, 1): 1, (1, 1, 2): 1})

    def test_not_homogeneous(self):
        with pytest.raises(NotHomogeneous) as exc:
            parse_polynomial("x^2 + y^3")
        assert exc.value.degrees == (2, 3)

    def test_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_polynomial("x^2 + y*$")
        assert exc.value.position == 8

    def test_unknown_name(self):
        with pytest.raises(ParseError):
            parse_polynomial("x*yy")

    def test_indexed_and_rational(self):
        f = parse_polynomial("1/2*x0^2 - 0.25*x1*x4")
        assert f.num_vars == 5
        assert f.coeffs[(2, 0, 0, 0, 0)] == 0.5 and f.coeffs[(0, 1, 0, 0, 1)] == -0.25

    def test_cancellation(self):
        with pytest.raises(ParseError):
            parse_polynomial("(x+y)^2 - x^2 - 2*x*y - y^2")

    def test_num_vars(self):
        assert parse_polynomial("x^3 + y^3", 3).num_vars == 3
        with pytest.raises(ParseError):
            parse_polynomial("x*y*z", 2)

    @given(st.integers(2, 4).flatmap(lambda nv: st.tuples(
        st.just(nv), st.integers(1, 4),
        st.lists(st.integers(-9, 9), min_size=3, max_size=3))))
    def test_printed_form_parses_back(self, args):
        nv, d, coeffs = args
        from nodalspec.polyring import monomials
        mons = monomials(nv, d)[: len(coeffs)]
        f = HomPoly.from_dict(nv, d, dict(zip(mons, coeffs)))
        if f.is_zero():
            return
        assert parse_polynomial(format_poly(f), nv) == f


def _report(case="three_nodes_quartic", **kw):
    return run(CASES[case].job(**kw))


@pytest.fixture(scope="module")
def report_i():
    return _report()


class TestReports:
    def test_json_round_trip(self, report_i):
        obj = json.loads(emit(report_i, "json"))
        back = report_from_json(obj)
        assert back.rows == report_i.rows
        assert back.defects == report_i.defects
        assert back.wotzlaw == report_i.wotzlaw
        assert back.spectra == report_i.spectra
        assert emit(back, "json") == emit(report_i, "json")

    def test_integers_are_strings(self, report_i):
        obj = report_to_json(report_i)
        assert obj["tables"]["sp"]["8"] == "0"
        assert obj["input"]["tau"] == "3"

    def test_blank_cells(self, report_i):
        table = emit(report_i, "table").decode()
        sn2 = next(line for line in table.splitlines() if line.startswith("sν2_k"))
        assert sn2.strip() == "sν2_k"
        gamma = next(line for line in table.splitlines() if line.startswith("γ_k"))
        assert " 0" not in gamma

    def test_thread_count_does_not_change_output(self, report_i):
        other = _report(workers=2)
        for fmt in ("table", "json", "csv"):
            assert emit(other, fmt) == emit(report_i, fmt)

    def test_unknown_format(self, report_i):
        with pytest.raises(ValueError):
            emit(report_i, "xml")


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_corpus(name):
    report = _report(name)
    for fmt in ("table", "json", "csv"):
        assert emit(report, fmt) == golden_path(name, fmt).read_bytes(), f"{name}.{fmt}"


def test_corpus_inputs_match_registry():
    for name, case in CASES.items():
        assert (CORPUS_DIR / f"{name}.poly").read_text() == case.poly + "\n"
        assert (CORPUS_DIR / f"{name}.points").read_text() == case.points


class TestMain:
    def test_success(self, capsys, tmp_path):
        pts = tmp_path / "nodes.txt"
        pts.write_text(THREE_NODES_POINTS)
        assert main(["--poly", THREE_NODES, "--points", str(pts), "--emit", "csv", "--kmax", "10"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[-1] == "sp,0,0,1,3,3,4,3,0,1,0"

    def test_poly_from_file(self, capsys, tmp_path):
        poly = tmp_path / "f.txt"
        poly.write_text("x^4 + y^4 + z^4\n")
        assert main(["--poly", str(poly), "--wotzlaw", "none"]) == 0
        assert "tau = 0" in capsys.readouterr().out

    def test_parse_error(self, capsys):
        assert main(["--poly", "x^2 + y^3"]) == 1
        assert "parse" in capsys.readouterr().err

    def test_usage_error(self, capsys):
        assert main(["--poly", "x*y", "--emit", "xml"]) == 1
        assert main(["--poly", "x*y", "--checks", "nonsense"]) == 1

    def test_missing_nodes(self, capsys):
        assert main(["--poly", THREE_NODES, "--points", "1:0:0"]) == 2
        assert "certify" in capsys.readouterr().err

    def test_find_nodes(self, capsys):
        assert main(["--poly", "x*y*z*(x+y+z)", "--find-nodes", "--emit", "json"]) == 0
        assert json.loads(capsys.readouterr().out)["input"]["tau"] == "6"

    def test_modular(self, capsys):
        assert main(["--poly", THREE_NODES, "--points", THREE_NODES_POINTS, "--mode", "modular",
                     "--primes", "2", "--emit", "csv"]) == 0
        assert capsys.readouterr().out.splitlines()[-1].startswith("sp,0,0,1,3,3,4,3,0,1")

    def test_check_subset(self, capsys):
        assert main(["--poly", THREE_NODES, "--points", THREE_NODES_POINTS,
                     "--checks", "euler_characteristic,e2_degeneration"]) == 0
        out = capsys.readouterr().out
        assert "euler_characteristic" in out and "steenbrink_symmetry" not in out


def test_jobspec_defaults():
    job = JobSpec(poly="x*y")
    assert job.arith == Arithmetic() and job.emit == "table"
