"""Versioned document formats for series, functions, divisors, and results.

Everything is JSON with a `format: 1` field.  Exact values are strings:
Gaussian rationals as "p/q+r/si", constant-symbol monomials as key -> exponent
maps, so round trips are lossless.  Complex doubles serialize as [re, im]
pairs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .coeffs import ExactCoeff, parse_gaussian_rational, parse_symbol
from .continuation import (
    AnalyticElement,
    LogBranchElement,
    OracleReport,
    PolylogElement,
    RationalElement,
    SeriesElement,
    SumElement,
)
from .logpoly import LogLaurentPoly
from .monodromy import Divisor, FunctionSpec, GermPart, MonodromyResult, Singularity
from .series import FIELD_COMPLEX, FIELD_RATIONAL, TruncatedSeries

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed or unsupported document."""


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DocumentError(message)


def _check_header(doc: Any, kind: str) -> None:
    _require(isinstance(doc, dict), "document must be a JSON object")
    _require(doc.get("format") == FORMAT_VERSION, f"unsupported format {doc.get('format')!r}")
    _require(doc.get("kind") == kind, f"expected kind {kind!r}, got {doc.get('kind')!r}")


# --- exact coefficients -----------------------------------------------------------


def exact_coeff_to_doc(value: ExactCoeff) -> list[dict]:
    out = []
    for mono, coeff in value.sorted_terms():
        out.append({
            "coeff": str(coeff),
            "symbols": {sym.key: exp for sym, exp in mono},
        })
    return out


def exact_coeff_from_doc(doc: Any) -> ExactCoeff:
    _require(isinstance(doc, list), "exact coefficient must be a list of term records")
    total = ExactCoeff.zero()
    for record in doc:
        _require(isinstance(record, dict), "term record must be an object")
        try:
            coeff = parse_gaussian_rational(record["coeff"])
            powers = {parse_symbol(k): int(e) for k, e in record.get("symbols", {}).items()}
        except (KeyError, ValueError) as exc:
            raise DocumentError(f"bad exact coefficient record: {exc}") from exc
        total = total + ExactCoeff.monomial(powers, coeff)
    return total


def log_poly_to_doc(p: LogLaurentPoly) -> list[dict]:
    return [
        {"zpow": zpow, "logpow": logpow, "coeff": exact_coeff_to_doc(coeff)}
        for (zpow, logpow), coeff in p.sorted_terms()
    ]


def log_poly_from_doc(doc: Any) -> LogLaurentPoly:
    _require(isinstance(doc, list), "log polynomial must be a list of term records")
    terms = {}
    for record in doc:
        try:
            key = (int(record["zpow"]), int(record["logpow"]))
            coeff = exact_coeff_from_doc(record["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad log-polynomial record: {exc}") from exc
        terms[key] = terms.get(key, ExactCoeff.zero()) + coeff
    return LogLaurentPoly(terms)


# --- series ------------------------------------------------------------------------


def series_to_doc(series: TruncatedSeries, polynomial: bool = False) -> dict:
    if series.field == FIELD_RATIONAL:
        coeffs = [str(c) for c in series.coeffs]
    elif series.field == FIELD_COMPLEX:
        coeffs = [[c.real, c.imag] for c in series.coeffs]
    else:
        raise DocumentError("series documents support rational and complex fields")
    return {
        "format": FORMAT_VERSION,
        "kind": "series",
        "field": series.field,
        "order": series.order,
        "polynomial": polynomial,
        "coeffs": coeffs,
    }


def series_from_doc(doc: Any) -> tuple[TruncatedSeries, bool]:
    _check_header(doc, "series")
    field = doc.get("field", FIELD_RATIONAL)
    raw = doc.get("coeffs")
    _require(isinstance(raw, list) and raw, "series needs a nonempty coefficient list")
    try:
        if field == FIELD_RATIONAL:
            coeffs = [Fraction(c) for c in raw]
        elif field == FIELD_COMPLEX:
            coeffs = [complex(c[0], c[1]) for c in raw]
        else:
            raise DocumentError(f"unknown series field {field!r}")
    except (TypeError, ValueError, IndexError) as exc:
        raise DocumentError(f"bad series coefficients: {exc}") from exc
    series = TruncatedSeries(coeffs, field)
    _require(doc.get("order", series.order) == series.order, "order disagrees with coefficients")
    return series, bool(doc.get("polynomial", False))


# --- function specs -----------------------------------------------------------------


def _germ_to_doc(germ: GermPart) -> dict:
    if germ.is_totally_holomorphic:
        return {"type": "totally_holomorphic"}
    return {"type": "polar", "coeffs": [exact_coeff_to_doc(c) for c in germ.polar]}


def _germ_from_doc(doc: Any) -> GermPart:
    _require(isinstance(doc, dict), "germ must be an object")
    kind = doc.get("type")
    if kind == "totally_holomorphic":
        return GermPart.totally_holomorphic()
    if kind == "polar":
        coeffs = [exact_coeff_from_doc(c) for c in doc.get("coeffs", [])]
        _require(bool(coeffs), "polar germ needs at least one coefficient")
        return GermPart.polar_part(coeffs)
    raise DocumentError(f"unknown germ type {kind!r}")


def _element_to_doc(element: AnalyticElement | None) -> dict | None:
    if element is None:
        return None
    if isinstance(element, PolylogElement):
        return {"kind": "polylog", "k": element.k}
    if isinstance(element, LogBranchElement):
        return {
            "kind": "logbranch",
            "location": [element.location.real, element.location.imag],
            "prefactor": [[c.real, c.imag] for c in element.prefactor],
        }
    if isinstance(element, RationalElement):
        return {
            "kind": "rational",
            "num": [[c.real, c.imag] for c in element.num],
            "den": [[c.real, c.imag] for c in element.den],
            "poles": [[p.real, p.imag] for p in element.poles],
        }
    if isinstance(element, SeriesElement):
        return {
            "kind": "series",
            "coeffs": [[c.real, c.imag] for c in element.coeffs],
            "singularities": [[s.real, s.imag] for s in element.declared],
        }
    if isinstance(element, SumElement):
        return {"kind": "sum", "parts": [_element_to_doc(part) for part in element.parts]}
    raise DocumentError(f"unsupported element {type(element).__name__}")


def _element_from_doc(doc: Any) -> AnalyticElement | None:
    if doc is None:
        return None
    _require(isinstance(doc, dict), "element must be an object")
    kind = doc.get("kind")
    try:
        if kind == "polylog":
            return PolylogElement(int(doc["k"]))
        if kind == "logbranch":
            loc = complex(doc["location"][0], doc["location"][1])
            pref = [complex(c[0], c[1]) for c in doc.get("prefactor", [[1.0, 0.0]])]
            return LogBranchElement(loc, pref)
        if kind == "rational":
            conv = lambda pairs: [complex(c[0], c[1]) for c in pairs]
            return RationalElement(conv(doc["num"]), conv(doc["den"]), conv(doc.get("poles", [])))
        if kind == "series":
            conv = lambda pairs: [complex(c[0], c[1]) for c in pairs]
            return SeriesElement(conv(doc["coeffs"]), conv(doc.get("singularities", [])))
        if kind == "sum":
            return SumElement([_element_from_doc(part) for part in doc["parts"]])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise DocumentError(f"bad element record: {exc}") from exc
    raise DocumentError(f"unknown element kind {kind!r}")


def function_spec_to_doc(spec: FunctionSpec, element: AnalyticElement | None = None) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "function",
        "name": spec.name,
        "germ_at_zero": series_to_doc(spec.germ_at_zero) if spec.germ_at_zero else None,
        "element": _element_to_doc(element),
        "singularities": [
            {
                "location": str(s.location),
                "monodromy": log_poly_to_doc(s.monodromy),
                "germ": _germ_to_doc(s.germ),
            }
            for s in spec.singularities
        ],
    }


def function_spec_from_doc(doc: Any) -> tuple[FunctionSpec, AnalyticElement | None]:
    _check_header(doc, "function")
    singularities = []
    for record in doc.get("singularities", []):
        _require(isinstance(record, dict), "singularity must be an object")
        try:
            location = parse_gaussian_rational(record["location"])
        except (KeyError, ValueError) as exc:
            raise DocumentError(f"bad singularity location: {exc}") from exc
        monodromy = log_poly_from_doc(record.get("monodromy", []))
        germ = _germ_from_doc(record.get("germ", {"type": "totally_holomorphic"}))
        try:
            singularities.append(Singularity(location, monodromy, germ))
        except ValueError as exc:
            raise DocumentError(str(exc)) from exc
    germ_at_zero = None
    if doc.get("germ_at_zero") is not None:
        germ_at_zero, _ = series_from_doc(doc["germ_at_zero"])
    try:
        spec = FunctionSpec.of(doc.get("name", "unnamed"), singularities, germ_at_zero)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc
    return spec, _element_from_doc(doc.get("element"))


# --- divisors -----------------------------------------------------------------------


def divisor_to_doc(divisor: Divisor) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "divisor",
        "points": [
            {"location": str(loc), "multiplicity": mult} for loc, mult in divisor.points
        ],
    }


def divisor_from_doc(doc: Any) -> Divisor:
    _check_header(doc, "divisor")
    points = []
    for record in doc.get("points", []):
        try:
            points.append((parse_gaussian_rational(record["location"]), int(record["multiplicity"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad divisor point: {exc}") from exc
    try:
        return Divisor.of(points)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


# --- results -------------------------------------------------------------------------


def monodromy_result_to_doc(result: MonodromyResult, advisory: str | None = None) -> dict:
    doc = {
        "format": FORMAT_VERSION,
        "kind": "monodromy",
        "gamma": str(result.gamma),
        "pairs": [[str(a), str(b)] for a, b in result.pairs],
        "contributions": [log_poly_to_doc(c) for c in result.contributions],
        "total": log_poly_to_doc(result.value),
    }
    if advisory:
        doc["advisory"] = advisory
    return doc


def oracle_report_to_doc(report: OracleReport) -> dict:
    return {
        "format": FORMAT_VERSION,
        "kind": "oracle_report",
        "gamma": [report.gamma.real, report.gamma.imag],
        "max_abs_error": report.max_abs_error,
        "metadata": report.metadata,
        "rows": [
            {
                "z": [row.z.real, row.z.imag],
                "winding": row.winding,
                "symbolic": [row.symbolic.real, row.symbolic.imag],
                "numeric": None if row.numeric is None else [row.numeric.real, row.numeric.imag],
                "abs_error": row.abs_error,
            }
            for row in report.rows
        ],
    }


# --- file IO --------------------------------------------------------------------------


def load_document(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc


def dump_document(doc: Any, path: str | None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    return text
