"""JSON equation documents.

A document is one object::

    {"k": 2, "d": 1, "coefficients": [["1"], ["-1", "1"]],
     "initial_terms": ["1"], "name": "Thue-Morse"}

``coefficients[i]`` lists the coefficients of a_i(z) by increasing power of z,
as rational literals.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .arith import Poly, format_rational, parse_rational
from .equation import EquationError, MahlerEquation, validate_equation

REQUIRED = ("k", "d", "coefficients", "initial_terms")
OPTIONAL = ("name",)


class DocumentError(ValueError):
    pass


def _no_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise DocumentError(f"duplicate field {key!r}")
        out[key] = value
    return out


def _literal(value, where: str):
    # integers are tolerated as a convenience; everything else must be a literal string
    if isinstance(value, bool):
        raise DocumentError(f"{where}: expected a rational literal, got {value!r}")
    if isinstance(value, int):
        return parse_rational(str(value))
    try:
        return parse_rational(value)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def parse_equation_document(text: str) -> MahlerEquation:
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    unknown = sorted(set(doc) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise DocumentError(f"unknown field(s): {', '.join(unknown)}")
    for key in REQUIRED:
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    k, d = doc["k"], doc["d"]
    for key, value in (("k", k), ("d", d)):
        if not isinstance(value, int) or isinstance(value, bool):
            raise DocumentError(f"field {key!r} must be an integer")
    if k < 2:
        raise DocumentError("k must be >= 2")
    if d < 1:
        raise DocumentError("d must be >= 1")
    coeffs = doc["coefficients"]
    if not isinstance(coeffs, list) or not all(isinstance(c, list) for c in coeffs):
        raise DocumentError("field 'coefficients' must be an array of arrays")
    if len(coeffs) != d + 1:
        raise DocumentError(f"expected d+1 coefficient polynomials ({d + 1}), got {len(coeffs)}")
    polys = [
        Poly(_literal(c, f"coefficients[{i}][{j}]") for j, c in enumerate(row))
        for i, row in enumerate(coeffs)
    ]
    seeds = doc["initial_terms"]
    if not isinstance(seeds, list):
        raise DocumentError("field 'initial_terms' must be an array")
    terms = [_literal(x, f"initial_terms[{i}]") for i, x in enumerate(seeds)]
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("field 'name' must be a string")
    eq = MahlerEquation(k, polys, terms, name)
    try:
        validate_equation(eq)
    except EquationError as exc:
        raise DocumentError(str(exc)) from None
    return eq


def load_equation(path: str | Path) -> MahlerEquation:
    return parse_equation_document(Path(path).read_text())


def equation_to_document(eq: MahlerEquation) -> dict:
    doc = {
        "k": eq.k,
        "d": eq.d,
        "coefficients": [p.to_literals() for p in eq.coefficients],
        "initial_terms": [format_rational(x) for x in eq.initial_terms],
    }
    if eq.name is not None:
        doc["name"] = eq.name
    return doc


FIXTURE_NAMES = (
    "dilcher_stolarsky_f",
    "dilcher_stolarsky_g",
    "rudin_shapiro",
    "baum_sweet",
    "thue_morse",
    "dumas",
    "stern",
    "geometric",
)


def fixture_path(name: str) -> Path:
    return Path(str(resources.files(__package__) / "fixtures" / f"{name}.json"))


def load_fixture(name: str) -> MahlerEquation:
    return load_equation(fixture_path(name))
