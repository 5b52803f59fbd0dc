"""Problem-document parsing, validation, and exact output formatting.

Documents are JSON, schema version 1.  Rationals travel as integers or
strings like "3/2"; floats are rejected so exactness survives the wire.
Validation errors carry the JSON path of the offending field.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .lattice import CurveRecord, DivisorClass, SurfaceModel
from .polygon import FlagSpec
from .qext import format_exact
from .toric import ToricDivisor, ToricFan

SCHEMA_VERSION = 1


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: cannot parse rational {value!r}") from exc
    if isinstance(value, float):
        raise InputError(f"{where}: floats are not exact; write \"p/q\" instead")
    raise InputError(f"{where}: expected a rational, got {type(value).__name__}")


def parse_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer")
    return value


def _expect(doc: dict, key: str, where: str):
    if key not in doc:
        raise InputError(f"{where}: missing required field {key!r}")
    return doc[key]


def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: document root must be an object")
    schema = doc.get("schema")
    if schema != SCHEMA_VERSION:
        raise InputError(
            f"{path}: field 'schema' must be {SCHEMA_VERSION}, got {schema!r}"
        )
    return doc


def parse_surface(doc: dict) -> SurfaceModel:
    surf = _expect(doc, "surface", "document")
    if not isinstance(surf, dict):
        raise InputError("surface: must be an object")
    rank = parse_int(_expect(surf, "rank", "surface"), "surface.rank")
    matrix = _expect(surf, "matrix", "surface")
    if not isinstance(matrix, list):
        raise InputError("surface.matrix: must be a list of rows")
    rows = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list):
            raise InputError(f"surface.matrix[{i}]: must be a list")
        rows.append(
            [parse_int(x, f"surface.matrix[{i}][{j}]") for j, x in enumerate(row)]
        )
    curves = []
    for i, cv in enumerate(surf.get("curves", [])):
        where = f"surface.curves[{i}]"
        if not isinstance(cv, dict):
            raise InputError(f"{where}: must be an object")
        label = _expect(cv, "label", where)
        if not isinstance(label, str):
            raise InputError(f"{where}.label: must be a string")
        cls = _expect(cv, "class", where)
        if not isinstance(cls, list):
            raise InputError(f"{where}.class: must be a list of integers")
        curves.append(
            CurveRecord(
                label,
                tuple(parse_int(x, f"{where}.class[{j}]") for j, x in enumerate(cls)),
            )
        )
    witness = _expect(surf, "ample_witness", "surface")
    if not isinstance(witness, list):
        raise InputError("surface.ample_witness: must be a list")
    wit = [
        parse_rational(x, f"surface.ample_witness[{i}]") for i, x in enumerate(witness)
    ]
    return SurfaceModel(rank, rows, curves, wit)


def parse_divisor(doc: dict, model: SurfaceModel, key: str = "divisor") -> DivisorClass:
    vec = _expect(doc, key, "document")
    if not isinstance(vec, list) or len(vec) != model.rank:
        raise InputError(f"{key}: must be a list of {model.rank} rationals")
    return DivisorClass(
        [parse_rational(x, f"{key}[{i}]") for i, x in enumerate(vec)]
    )


def parse_flag(doc: dict, model: SurfaceModel):
    """Returns (flag target for walking, FlagSpec)."""
    flag = _expect(doc, "flag", "document")
    if not isinstance(flag, dict):
        raise InputError("flag: must be an object")
    curve = _expect(flag, "curve", "flag")
    if isinstance(curve, str):
        target = curve
        model.curve(curve)
    elif isinstance(curve, list):
        if len(curve) != model.rank:
            raise InputError(f"flag.curve: class must have {model.rank} coordinates")
        target = DivisorClass(
            [parse_rational(x, f"flag.curve[{i}]") for i, x in enumerate(curve)]
        )
    else:
        raise InputError("flag.curve: must be a curve label or a class vector")
    raw = flag.get("local_mult", {})
    if not isinstance(raw, dict):
        raise InputError("flag.local_mult: must be an object")
    local = {}
    for label, m in raw.items():
        model.curve(label)
        local[label] = parse_int(m, f"flag.local_mult[{label!r}]")
    spec = FlagSpec(target, local)
    spec.validate(model)
    return target, spec


def parse_candidates(doc: dict, model: SurfaceModel) -> list[str]:
    if "candidates" not in doc:
        return list(model.labels())
    cands = doc["candidates"]
    if not isinstance(cands, list):
        raise InputError("candidates: must be a list of labels")
    for i, l in enumerate(cands):
        if not isinstance(l, str):
            raise InputError(f"candidates[{i}]: must be a label")
        model.curve(l)
    return list(cands)


def parse_labels(doc: dict, model: SurfaceModel, key: str) -> list[str]:
    labels = _expect(doc, key, "document")
    if not isinstance(labels, list):
        raise InputError(f"{key}: must be a list of labels")
    for i, l in enumerate(labels):
        if not isinstance(l, str):
            raise InputError(f"{key}[{i}]: must be a label")
        model.curve(l)
    return list(labels)


def parse_fan(doc: dict) -> ToricFan:
    fan = _expect(doc, "fan", "document")
    if not isinstance(fan, dict):
        raise InputError("fan: must be an object")
    rays = _expect(fan, "rays", "fan")
    if not isinstance(rays, list):
        raise InputError("fan.rays: must be a list of 2d integer vectors")
    out = []
    for i, r in enumerate(rays):
        if not isinstance(r, list) or len(r) != 2:
            raise InputError(f"fan.rays[{i}]: must be a pair of integers")
        out.append(
            (parse_int(r[0], f"fan.rays[{i}][0]"), parse_int(r[1], f"fan.rays[{i}][1]"))
        )
    return ToricFan(out)


def parse_toric_divisor(doc: dict, fan: ToricFan) -> ToricDivisor:
    coeffs = _expect(doc, "toric_divisor", "document")
    if not isinstance(coeffs, list) or len(coeffs) != len(fan):
        raise InputError(f"toric_divisor: must list one integer per ray ({len(fan)})")
    return ToricDivisor(
        [parse_int(x, f"toric_divisor[{i}]") for i, x in enumerate(coeffs)]
    )


# -- output -------------------------------------------------------------------


def fmt(x) -> str:
    """Exact string form of any value the package produces."""
    return format_exact(x)


def fmt_point(p) -> list[str]:
    return [fmt(p[0]), fmt(p[1])]


def dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"
