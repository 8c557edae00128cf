"""Groupoid and element files (JSON, ``"format": 1``).

Groupoid file::

    {"format": 1,
     "arrows": [{"id": "g", "src": "e", "dst": "e"}, ...],
     "units": ["e"],
     "inv": [["g", "g"], ...],
     "comp": [["g", "g", "e"], ...],
     "cocycle": [["g", "g", "1/2"], ...]}     # optional, phases in turns

Element file::

    {"format": 1, "coefficients": [{"arrow": "g", "re": 0.0, "im": -1.0}, ...]}
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .algebra import AlgebraElement, Cocycle
from .groupoid import FiniteGroupoid

FORMAT = 1


class FileFormatError(ValueError):
    """Malformed input; the message names the line or field at fault."""


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{what}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _require(doc: dict, key: str, kind, what: str):
    if key not in doc:
        raise FileFormatError(f"{what}: missing field '{key}'")
    if not isinstance(doc[key], kind):
        raise FileFormatError(f"{what}: field '{key}' must be a {kind.__name__}")
    return doc[key]


def _check_format(doc, what: str):
    if not isinstance(doc, dict):
        raise FileFormatError(f"{what}: top level must be an object")
    if doc.get("format") != FORMAT:
        raise FileFormatError(f"{what}: field 'format' must be {FORMAT}")


def parse_phase(raw, where: str) -> Fraction:
    """A rational number of turns in ``[0, 1)``, as an int or a ``"p/q"`` string."""
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise FileFormatError(f"{where}: phase must be an integer or a 'p/q' string, got {raw!r}")
    try:
        t = Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(f"{where}: malformed phase {raw!r}") from None
    if not 0 <= t < 1:
        raise FileFormatError(f"{where}: phase {raw!r} outside [0, 1)")
    return t


def _ids(row, n: int, where: str) -> list:
    if not isinstance(row, list) or len(row) != n:
        raise FileFormatError(f"{where}: expected a list of {n} entries")
    return row


def parse_groupoid(text: str, what: str = "groupoid file") -> tuple[FiniteGroupoid, Optional[Cocycle]]:
    doc = _load_json(text, what)
    _check_format(doc, what)
    arrows, src, rng = [], {}, {}
    for i, entry in enumerate(_require(doc, "arrows", list, what)):
        where = f"{what}: arrows[{i}]"
        if not isinstance(entry, dict):
            raise FileFormatError(f"{where}: expected an object")
        for key in ("id", "src", "dst"):
            if not isinstance(entry.get(key), str):
                raise FileFormatError(f"{where}: field '{key}' must be a string")
        a = entry["id"]
        if a in src:
            raise FileFormatError(f"{where}: duplicate id {a!r}")
        arrows.append(a)
        src[a], rng[a] = entry["src"], entry["dst"]
    declared = set(arrows)

    def known(a, where):
        if not isinstance(a, str) or a not in declared:
            raise FileFormatError(f"{where}: undeclared arrow id {a!r}")
        return a

    for i, a in enumerate(arrows):
        known(src[a], f"{what}: arrows[{i}].src")
        known(rng[a], f"{what}: arrows[{i}].dst")
    unit_ids = [known(u, f"{what}: units[{i}]")
                for i, u in enumerate(_require(doc, "units", list, what))]
    inv = {}
    for i, row in enumerate(_require(doc, "inv", list, what)):
        where = f"{what}: inv[{i}]"
        a, b = (known(x, where) for x in _ids(row, 2, where))
        inv[a] = b
    comp = {}
    for i, row in enumerate(_require(doc, "comp", list, what)):
        where = f"{what}: comp[{i}]"
        a, b, c = (known(x, where) for x in _ids(row, 3, where))
        comp[(a, b)] = c
    g = FiniteGroupoid(arrows, unit_ids, src, rng, inv, comp, name=str(doc.get("name", "")))

    cocycle = None
    if "cocycle" in doc:
        turns = {}
        for i, row in enumerate(_require(doc, "cocycle", list, what)):
            where = f"{what}: cocycle[{i}]"
            a, b, t = _ids(row, 3, where)
            known(a, where)
            known(b, where)
            turns[(a, b)] = parse_phase(t, where)
        cocycle = Cocycle(g, turns)
    return g, cocycle


def read_groupoid(path) -> tuple[FiniteGroupoid, Optional[Cocycle]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror}") from None
    return parse_groupoid(text, what=str(path))


def groupoid_document(g: FiniteGroupoid, cocycle: Optional[Cocycle] = None) -> dict:
    doc = {
        "format": FORMAT,
        "name": g.name,
        "arrows": [{"id": str(a), "src": str(g.src[a]), "dst": str(g.rng[a])} for a in g.arrows],
        "units": [str(x) for x in g.unit_list],
        "inv": [[str(a), str(g.inv[a])] for a in g.arrows],
        "comp": [[str(a), str(b), str(c)] for (a, b), c in g.comp.items()],
    }
    if cocycle is not None:
        doc["cocycle"] = [[str(a), str(b), str(t)] for (a, b), t in cocycle.turns.items()]
    return doc


def dump_document(doc: dict) -> str:
    """JSON with one list entry per line."""
    fields = []
    for key, value in doc.items():
        if isinstance(value, list) and value:
            rows = ",\n    ".join(json.dumps(v, ensure_ascii=False) for v in value)
            fields.append(f"  {json.dumps(key)}: [\n    {rows}\n  ]")
        else:
            fields.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}")
    return "{\n" + ",\n".join(fields) + "\n}\n"


def write_groupoid(path, g: FiniteGroupoid, cocycle: Optional[Cocycle] = None):
    Path(path).write_text(dump_document(groupoid_document(g, cocycle)), encoding="utf-8")


def element_document(f: AlgebraElement) -> dict:
    # floats are written with repr so they round-trip exactly
    return {"format": FORMAT,
            "coefficients": [{"arrow": str(a), "re": v.real, "im": v.imag} for a, v in f.items()]}


def write_element(path, f: AlgebraElement):
    Path(path).write_text(dump_document(element_document(f)), encoding="utf-8")


def parse_element(text: str, g: FiniteGroupoid, what: str = "element file") -> AlgebraElement:
    doc = _load_json(text, what)
    _check_format(doc, what)
    coeffs = {}
    for i, entry in enumerate(_require(doc, "coefficients", list, what)):
        where = f"{what}: coefficients[{i}]"
        if not isinstance(entry, dict):
            raise FileFormatError(f"{where}: expected an object")
        a = entry.get("arrow")
        if not isinstance(a, str) or a not in g.position:
            raise FileFormatError(f"{where}: unknown arrow id {a!r}")
        parts = []
        for key in ("re", "im"):
            v = entry.get(key, 0)
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
                raise FileFormatError(f"{where}: field '{key}' must be a finite number")
            parts.append(float(v))
        coeffs[a] = coeffs.get(a, 0) + complex(*parts)
    return AlgebraElement(g, coeffs)


def read_element(path, g: FiniteGroupoid) -> AlgebraElement:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror}") from None
    return parse_element(text, g, what=str(path))
