"""JSON documents for automata and reduction reports.

An automaton document looks like::

    {
      "name": "example",
      "lattice": "godel",
      "epsilon": 1e-9,
      "alphabet": ["x", "y"],
      "states": 2,
      "sigma": [1, 0.5],
      "tau": [0, 1],
      "delta": {"x": [[1, 0], [0.25, 1]], "y": [[0, 1], [1, 0]]}
    }

``epsilon`` may be omitted (default tolerance for the lattice); boolean
entries may be written as the integers 0 and 1.
"""
from __future__ import annotations

import json
from pathlib import Path

from .automaton import FuzzyAutomaton, KEquivalence
from .errors import ParseError
from .lattice import LatticeKind, LatticeSpec
from .reduction import ReductionReport

_REQUIRED = ("lattice", "alphabet", "states", "sigma", "tau", "delta")


def _number(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {v!r}")
    return float(v)


def _vector(v, n, where):
    if not isinstance(v, list) or len(v) != n:
        raise ParseError(f"{where}: expected a list of {n} numbers")
    return [_number(x, f"{where}[{i}]") for i, x in enumerate(v)]


def automaton_from_dict(doc: dict) -> FuzzyAutomaton:
    """Build an automaton from a parsed document.

    Structural problems raise ParseError; well-formed documents that break a
    lattice or shape invariant raise the ValidationError family.
    """
    if not isinstance(doc, dict):
        raise ParseError("an automaton document must be a JSON object")
    missing = [key for key in _REQUIRED if key not in doc]
    if missing:
        raise ParseError(f"missing fields: {', '.join(missing)}")
    try:
        kind = LatticeKind(doc["lattice"])
    except ValueError:
        raise ParseError(f"unknown lattice {doc['lattice']!r}") from None
    eps = doc.get("epsilon")
    lattice = LatticeSpec.of(kind, None if eps is None else _number(eps, "epsilon"))

    alphabet = doc["alphabet"]
    if not isinstance(alphabet, list) or not all(isinstance(x, str) for x in alphabet):
        raise ParseError("alphabet must be a list of strings")
    n = doc["states"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f"states must be a positive integer, got {n!r}")
    delta_doc = doc["delta"]
    if not isinstance(delta_doc, dict):
        raise ParseError("delta must map symbols to matrices")
    delta = {}
    for x, rows in delta_doc.items():
        if not isinstance(rows, list) or len(rows) != n:
            raise ParseError(f"delta[{x!r}]: expected {n} rows")
        delta[x] = [_vector(row, n, f"delta[{x!r}][{i}]") for i, row in enumerate(rows)]
    if set(delta) != set(alphabet):
        raise ParseError(f"delta symbols {sorted(delta)} do not match alphabet {alphabet}")
    name = doc.get("name")
    return FuzzyAutomaton.from_lists(
        lattice,
        alphabet,
        _vector(doc["sigma"], n, "sigma"),
        delta,
        _vector(doc["tau"], n, "tau"),
        name=name if isinstance(name, str) else None,
    )


def _plain(values, lattice):
    if lattice.kind is LatticeKind.BOOLEAN:
        return [int(v) for v in values]
    return [float(v) for v in values]


def automaton_to_dict(A: FuzzyAutomaton) -> dict:
    lattice = A.lattice
    doc = {}
    if A.name:
        doc["name"] = A.name
    doc.update(lattice.to_dict())
    doc["alphabet"] = list(A.alphabet)
    doc["states"] = A.n
    doc["sigma"] = _plain(A.sigma.data, lattice)
    doc["tau"] = _plain(A.tau.data, lattice)
    doc["delta"] = {x: [_plain(row, lattice) for row in A.delta[x].data] for x in A.alphabet}
    return doc


def load_automaton(path) -> FuzzyAutomaton:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return automaton_from_dict(doc)


def dump_automaton(A: FuzzyAutomaton, path=None) -> str:
    text = json.dumps(automaton_to_dict(A), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def witness_to_dict(check: KEquivalence) -> dict | None:
    if check.equal:
        return None
    return {
        "word": list(check.witness),
        "length": len(check.witness),
        "original": check.value_a,
        "reduced": check.value_b,
    }


def report_to_dict(report: ReductionReport, verified_to: int | None = None, counterexample=None) -> dict:
    doc = report.to_dict()
    if verified_to is not None:
        doc["verified_to"] = verified_to
        doc["counterexample"] = counterexample
    return doc


def report_from_dict(doc: dict) -> tuple[ReductionReport, int | None, dict | None]:
    try:
        report = ReductionReport.from_dict(doc)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad report document: {exc}") from exc
    return report, doc.get("verified_to"), doc.get("counterexample")
