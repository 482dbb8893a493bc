"""Document round trips and the command-line contract (exit codes, outputs)."""

import json
from fractions import Fraction

import pytest

from hadene.cli import main
from hadene.coeffs import ExactCoeff, GaussianRational
from hadene.continuation import LogBranchElement, PolylogElement
from hadene.documents import (
    DocumentError,
    divisor_from_doc,
    divisor_to_doc,
    dump_document,
    exact_coeff_from_doc,
    exact_coeff_to_doc,
    function_spec_from_doc,
    function_spec_to_doc,
    log_poly_from_doc,
    log_poly_to_doc,
    series_from_doc,
    series_to_doc,
)
from hadene.logpoly import LogLaurentPoly
from hadene.monodromy import (
    Divisor,
    FunctionSpec,
    GermPart,
    Singularity,
    log_ladder_monodromy,
    polylog_function_spec,
)
from hadene.series import TruncatedSeries, polylog_series


def write_doc(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


# --- document round trips -----------------------------------------------------------


def test_exact_coeff_round_trip():
    value = ExactCoeff.two_pi_i(2) * Fraction(3, 7) + ExactCoeff.from_gaussian(
        GaussianRational.of(Fraction(1, 2), Fraction(-2, 5))
    )
    assert exact_coeff_from_doc(exact_coeff_to_doc(value)) == value


def test_log_poly_round_trip():
    p = log_ladder_monodromy(4) + LogLaurentPoly.term(-2, 1, Fraction(5, 3))
    assert log_poly_from_doc(log_poly_to_doc(p)) == p


def test_series_round_trip_rational_and_complex():
    s = polylog_series(2, 6)
    parsed, is_poly = series_from_doc(series_to_doc(s))
    assert parsed == s and not is_poly
    c = TruncatedSeries([0j, 1 + 2j, -0.5j])
    parsed, _ = series_from_doc(series_to_doc(c))
    assert parsed == c


def test_function_spec_round_trip_with_element_and_polar_germ():
    spec = FunctionSpec.of("demo", [
        Singularity(GaussianRational.of(1), log_ladder_monodromy(2),
                    GermPart.polar_part([Fraction(-1), Fraction(-1)])),
        Singularity(GaussianRational.of(2), LogLaurentPoly.constant(1)),
    ])
    doc = function_spec_to_doc(spec, element=LogBranchElement(1.0, [0.0, 2.0]))
    parsed, element = function_spec_from_doc(doc)
    assert parsed == spec
    assert isinstance(element, LogBranchElement)
    assert element.prefactor == [0j, 2 + 0j]


def test_sum_element_round_trip():
    from hadene.continuation import SumElement

    spec = FunctionSpec.of("two_logs", [
        Singularity(GaussianRational.of(2), LogLaurentPoly.constant(ExactCoeff.two_pi_i())),
        Singularity(GaussianRational.of(0, 2), LogLaurentPoly.constant(ExactCoeff.two_pi_i())),
    ])
    element = SumElement([LogBranchElement(2.0), LogBranchElement(2j)])
    doc = function_spec_to_doc(spec, element=element)
    parsed, parsed_element = function_spec_from_doc(doc)
    assert parsed == spec
    assert isinstance(parsed_element, SumElement)
    assert sorted(s.real for s in parsed_element.singularities()) == [0.0, 2.0]


def test_divisor_round_trip():
    d = Divisor.of({GaussianRational.of(2): 1, GaussianRational.of(Fraction(1, 3)): -2})
    assert divisor_from_doc(divisor_to_doc(d)) == d


def test_malformed_documents_raise():
    with pytest.raises(DocumentError):
        series_from_doc({"format": 99, "kind": "series", "coeffs": ["1"]})
    with pytest.raises(DocumentError):
        series_from_doc({"format": 1, "kind": "function", "coeffs": ["1"]})
    with pytest.raises(DocumentError):
        exact_coeff_from_doc([{"coeff": "not-a-number", "symbols": {}}])


# --- CLI: series ------------------------------------------------------------------------


def one_plus_z_doc():
    return series_to_doc(TruncatedSeries([Fraction(1), Fraction(1)]), polynomial=True)


def test_cli_ene_of_one_plus_z(tmp_path, capsys):
    f = write_doc(tmp_path, "f.json", one_plus_z_doc())
    out = tmp_path / "result.json"
    code = main(["series", "--op", "ene", "-f", f, "-g", f, "--order", "8", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["coeffs"] == ["1", "-1"] + ["0"] * 7


def test_cli_hadamard_of_polylogs(tmp_path, capsys):
    doc = series_to_doc(polylog_series(1, 8))
    f = write_doc(tmp_path, "li1.json", doc)
    code = main(["series", "--op", "hadamard", "-f", f, "-g", f])
    assert code == 0
    result = json.loads(capsys.readouterr().out)
    assert result["coeffs"] == [str(c) for c in polylog_series(2, 8).coeffs]


def test_cli_series_parse_error_is_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["series", "--op", "hadamard", "-f", str(bad), "-g", str(bad)]) == 2


def test_cli_series_precondition_is_exit_3(tmp_path):
    # ene requires unit constant terms
    doc = series_to_doc(TruncatedSeries([Fraction(0), Fraction(1)]))
    f = write_doc(tmp_path, "f.json", doc)
    assert main(["series", "--op", "ene", "-f", f, "-g", f]) == 3


# --- CLI: monodromy / polylog / divisor ----------------------------------------------------


def test_cli_monodromy_polylog_pair(tmp_path, capsys):
    f = write_doc(tmp_path, "li1.json", function_spec_to_doc(polylog_function_spec(1)))
    code = main(["monodromy", "--product", "hadamard", "-f", f, "-g", f, "--gamma", "1"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pairs"] == [["1", "1"]]
    assert log_poly_from_doc(doc["total"]) == log_ladder_monodromy(2)


def test_cli_monodromy_without_factorization_adds_advisory(tmp_path, capsys):
    f = write_doc(tmp_path, "li1.json", function_spec_to_doc(polylog_function_spec(1)))
    code = main(["monodromy", "-f", f, "-g", f, "--gamma", "5"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["total"] == [] and "advisory" in doc


def test_cli_monodromy_on_divisor_documents(tmp_path, capsys):
    f = write_doc(tmp_path, "a.json", divisor_to_doc(Divisor.of({GaussianRational.of(2): 1,
                                                                 GaussianRational.of(3): 1})))
    g = write_doc(tmp_path, "b.json", divisor_to_doc(Divisor.of({GaussianRational.of(3): 1,
                                                                 GaussianRational.of(2): 1})))
    code = main(["monodromy", "-f", f, "-g", g])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    points = {rec["location"]: rec["multiplicity"] for rec in doc["points"]}
    assert points == {"4": 1, "6": 2, "9": 1}


def test_cli_divisor_command(tmp_path, capsys):
    f = write_doc(tmp_path, "a.json", divisor_to_doc(Divisor.of({GaussianRational.of(2): 1})))
    g = write_doc(tmp_path, "b.json", divisor_to_doc(Divisor.of({GaussianRational.of(3): -1})))
    assert main(["divisor", "-f", f, "-g", g]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["points"] == [{"location": "6", "multiplicity": -1}]


def test_cli_polylog_ladder(tmp_path, capsys):
    code = main(["polylog", "--k", "3"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert log_poly_from_doc(doc["total"]) == log_ladder_monodromy(3)


# --- CLI: verify ------------------------------------------------------------------------------


def li1_function_doc():
    return function_spec_to_doc(polylog_function_spec(1), element=PolylogElement(1))


def test_cli_verify_polylog_pair_exit_0(tmp_path, capsys):
    f = write_doc(tmp_path, "li1.json", li1_function_doc())
    code = main(["verify", "-f", f, "-g", f, "--gamma", "1",
                 "--samples", "0.9,0.93+0.02i", "--check-tol", "1e-6"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["max_abs_error"] < 1e-6
    assert len(doc["rows"]) == 2


def test_cli_verify_corrupted_symbolic_is_exit_4(tmp_path, capsys):
    doc = li1_function_doc()
    # corrupt the declared monodromy: the measurement will contradict it
    doc["singularities"][0]["monodromy"] = log_poly_to_doc(
        LogLaurentPoly.constant(ExactCoeff.two_pi_i() * Fraction(-3, 2))
    )
    f = write_doc(tmp_path, "bad_li1.json", doc)
    g = write_doc(tmp_path, "li1.json", li1_function_doc())
    code = main(["verify", "-f", f, "-g", g, "--gamma", "1", "--samples", "0.9"])
    assert code == 4


def test_cli_verify_infeasible_geometry_is_exit_5(tmp_path):
    f = write_doc(tmp_path, "li1.json", li1_function_doc())
    code = main(["verify", "-f", f, "-g", f, "--gamma", "1", "--samples", "1.2"])
    assert code == 5


def test_cli_verify_missing_element_is_exit_3(tmp_path):
    f = write_doc(tmp_path, "li1.json", function_spec_to_doc(polylog_function_spec(1)))
    code = main(["verify", "-f", f, "-g", f, "--gamma", "1", "--samples", "0.9"])
    assert code == 3


def test_cli_verify_csv_output(tmp_path, capsys):
    f = write_doc(tmp_path, "li1.json", li1_function_doc())
    out = tmp_path / "report.csv"
    code = main(["verify", "-f", f, "-g", f, "--gamma", "1", "--samples", "0.9",
                 "--format", "csv", "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("z_re,z_im,winding")


# --- CLI: selftest -----------------------------------------------------------------------------


def test_cli_selftest_passes(capsys):
    code = main(["selftest"])
    output = capsys.readouterr().out
    assert code == 0
    assert "0 failure(s)" in output
    assert "FAIL" not in output


def test_cli_round_trip_of_emitted_series(tmp_path, capsys):
    f = write_doc(tmp_path, "li1.json", series_to_doc(polylog_series(1, 6)))
    main(["series", "--op", "hadamard", "-f", f, "-g", f])
    emitted = json.loads(capsys.readouterr().out)
    parsed, _ = series_from_doc(emitted)
    assert series_to_doc(parsed) == emitted
