"""JSON specs for rings and multipliers, report envelopes and CSV tables.

Ring spec::

    {"kind": "tlj_ainf", "lambda_inv": 5}
    {"kind": "tlj_finite", "m": 6}
    {"kind": "group", "family": "Z" | "Zn" | "free" | "table", "params": {...}}
    {"kind": "su_n", "n": 3, "q": 1}
    {"kind": "product" | "free_product", "factors": [spec, spec]}

Numbers may be JSON numbers or rational strings such as ``"9/2"``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Iterable, Mapping
from fractions import Fraction
from pathlib import Path

import jsonschema
import numpy as np
import scipy

from . import __version__
from .builders import (
    FreeProductRing,
    SubRing,
    TLJRing,
    as_number,
    build_free_product,
    build_group_ring,
    build_product,
    build_tlj_ainf,
    build_tlj_finite,
    full_subring,
    grading_kernel,
    mod_grading,
)
from .core import FusionElement, FusionRing, check_invariants
from .errors import ValidationError
from .multipliers import (
    Multiplier,
    extend_by_zero,
    free_product_multiplier,
    regular_multiplier,
    table_multiplier,
    trivial_multiplier,
)
from .sun import SUnRing, build_sun, grading_of_sun

__all__ = [
    "SCHEMA_VERSION",
    "RING_SCHEMA",
    "MULTIPLIER_SCHEMA",
    "SchemaError",
    "parse_ring_spec",
    "ring_spec_to_json",
    "parse_multiplier_spec",
    "parse_element",
    "label_from_json",
    "label_to_json",
    "jsonable",
    "dumps",
    "envelope",
    "write_csv",
]

SCHEMA_VERSION = 1

_NUM = {
    "oneOf": [
        {"type": "number"},
        {"type": "string", "pattern": r"^\s*-?\d+(\.\d+)?(/\d+)?\s*$"},
    ]
}

RING_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$ref": "#/$defs/ring",
    "$defs": {
        "num": _NUM,
        "ring": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["tlj_ainf", "tlj_finite", "group", "su_n", "product", "free_product"]},
                "schema_version": {"const": SCHEMA_VERSION},
            },
            "allOf": [
                {
                    "if": {"properties": {"kind": {"const": "tlj_ainf"}}},
                    "then": {
                        "required": ["lambda_inv"],
                        "properties": {"lambda_inv": {"$ref": "#/$defs/num"}},
                        "additionalProperties": False,
                        "patternProperties": {"^(kind|schema_version)$": {}},
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "tlj_finite"}}},
                    "then": {
                        "required": ["m"],
                        "properties": {"m": {"type": "integer"}},
                        "additionalProperties": False,
                        "patternProperties": {"^(kind|schema_version)$": {}},
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "group"}}},
                    "then": {
                        "required": ["family"],
                        "properties": {
                            "family": {"enum": ["Z", "Zn", "free", "table"]},
                            "params": {"type": "object"},
                        },
                        "additionalProperties": False,
                        "patternProperties": {"^(kind|schema_version)$": {}},
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "su_n"}}},
                    "then": {
                        "required": ["n"],
                        "properties": {"n": {"type": "integer"}, "q": {"$ref": "#/$defs/num"}},
                        "additionalProperties": False,
                        "patternProperties": {"^(kind|schema_version)$": {}},
                    },
                },
                {
                    "if": {"properties": {"kind": {"enum": ["product", "free_product"]}}},
                    "then": {
                        "required": ["factors"],
                        "properties": {
                            "factors": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"$ref": "#/$defs/ring"}}
                        },
                        "additionalProperties": False,
                        "patternProperties": {"^(kind|schema_version)$": {}},
                    },
                },
            ],
        },
    },
}

_LABELS = {"type": "array"}

MULTIPLIER_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$ref": "#/$defs/mult",
    "$defs": {
        "num": _NUM,
        "subring": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["grading_kernel", "labels"]},
                "grading": {
                    "type": "object",
                    "required": ["kind"],
                    "properties": {"kind": {"enum": ["sun", "mod"]}, "modulus": {"type": "integer", "minimum": 1}},
                },
                "labels": _LABELS,
            },
        },
        "mult": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["point", "measure", "regular", "trivial", "table", "free_product", "extend_zero"]},
                "schema_version": {"const": SCHEMA_VERSION},
            },
            "allOf": [
                {
                    "if": {"properties": {"kind": {"const": "point"}}},
                    "then": {"required": ["t"], "properties": {"t": {"$ref": "#/$defs/num"}}},
                },
                {
                    "if": {"properties": {"kind": {"const": "measure"}}},
                    "then": {
                        "required": ["atoms"],
                        "properties": {
                            "atoms": {
                                "type": "array",
                                "minItems": 1,
                                "items": {"type": "array", "prefixItems": [{"$ref": "#/$defs/num"}, {"$ref": "#/$defs/num"}], "minItems": 2, "maxItems": 2},
                            }
                        },
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "table"}}},
                    "then": {
                        "required": ["values"],
                        "properties": {
                            "values": {
                                "type": "array",
                                "items": {"type": "array", "minItems": 2, "maxItems": 3},
                            },
                            "default": {"$ref": "#/$defs/num"},
                        },
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "free_product"}}},
                    "then": {
                        "required": ["r", "parts"],
                        "properties": {
                            "r": {"$ref": "#/$defs/num"},
                            "parts": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"$ref": "#/$defs/mult"}},
                        },
                    },
                },
                {
                    "if": {"properties": {"kind": {"const": "extend_zero"}}},
                    "then": {
                        "required": ["subring", "inner"],
                        "properties": {"subring": {"$ref": "#/$defs/subring"}, "inner": {"$ref": "#/$defs/mult"}},
                    },
                },
            ],
        },
    },
}


class SchemaError(ValidationError):
    """A spec does not match its JSON schema; ``pointer`` locates the problem."""

    def __init__(self, message: str, pointer: str):
        super().__init__(f"{pointer or '/'}: {message}", witness=pointer)
        self.pointer = pointer


def _validate(doc, schema) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    errors = list(validator.iter_errors(doc))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        pointer = "".join(f"/{p}" for p in err.absolute_path)
        raise SchemaError(err.message, pointer)


def _load(text_or_obj):
    if isinstance(text_or_obj, (str, bytes)):
        try:
            return json.loads(text_or_obj)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}", "") from exc
    return text_or_obj


# -- labels and elements --------------------------------------------------------


def label_from_json(ring: FusionRing, obj):
    """Lists become tuples recursively; strings pass through (free-group words)."""

    def conv(o):
        if isinstance(o, list):
            return tuple(conv(x) for x in o)
        return o

    return ring.canonical(conv(obj))


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    return label


def parse_element(ring: FusionRing, obj) -> FusionElement:
    """``[[label, re], [label, re, im], ...]``; ``"X"`` is the TLJ generator."""
    obj = _load(obj) if not (isinstance(obj, str) and obj.strip() == "X") else obj
    if isinstance(obj, str) and obj.strip() == "X":
        if not isinstance(ring, TLJRing):
            raise ValidationError("generator X is only defined for TLJ rings", witness="X")
        return ring.generator()
    if not isinstance(obj, list):
        raise SchemaError("element must be a list of [label, re(, im)] entries", "")
    coeffs = []
    for k, entry in enumerate(obj):
        if not isinstance(entry, list) or len(entry) not in (2, 3):
            raise SchemaError("entry must be [label, re] or [label, re, im]", f"/{k}")
        label = label_from_json(ring, entry[0])
        c = as_number(entry[1])
        if len(entry) == 3 and as_number(entry[2]) != 0:
            c = complex(float(c), float(as_number(entry[2])))
        coeffs.append((label, c))
    return ring.element(coeffs)


# -- rings -----------------------------------------------------------------------


def _normalize_number(x):
    x = as_number(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return x


def _build(spec: Mapping) -> FusionRing:
    kind = spec["kind"]
    if kind == "tlj_ainf":
        return build_tlj_ainf(as_number(spec["lambda_inv"]))
    if kind == "tlj_finite":
        return build_tlj_finite(spec["m"])
    if kind == "group":
        return build_group_ring(spec["family"], **spec.get("params", {}))
    if kind == "su_n":
        return build_sun(spec["n"], as_number(spec.get("q", 1)))
    factors = [_build(f) for f in spec["factors"]]
    if kind == "product":
        return build_product(*factors)
    return build_free_product(*factors)


def parse_ring_spec(text_or_obj, check_level: int = 3) -> FusionRing:
    """Build a ring from its JSON spec and run the invariant suite up to ``check_level``."""
    doc = _load(text_or_obj)
    _validate(doc, RING_SCHEMA)
    ring = _build(doc)
    check_invariants(ring, check_level)
    return ring


def ring_spec_to_json(ring: FusionRing) -> dict:
    if ring.spec is None:
        raise ValidationError(f"{ring.name} was not built from a spec", witness=ring.name)

    def emit(spec):
        out = {"kind": spec["kind"]}
        for key, val in spec.items():
            if key in ("kind", "schema_version"):
                continue
            if key == "factors":
                out[key] = [emit(f) for f in val]
            elif key in ("lambda_inv", "q"):
                out[key] = _normalize_number(val)
            else:
                out[key] = json.loads(json.dumps(val))
        out["schema_version"] = SCHEMA_VERSION
        return out

    return emit(ring.spec)


# -- multipliers -------------------------------------------------------------------


def _parse_subring(ring: FusionRing, spec: Mapping) -> SubRing:
    if spec["kind"] == "labels":
        allowed = {label_from_json(ring, x) for x in spec.get("labels", [])}
        allowed.add(ring.unit)
        return full_subring(ring, lambda a: a in allowed, name="sub(labels)")
    grading = spec.get("grading") or {}
    if grading.get("kind") == "sun":
        if not isinstance(ring, SUnRing):
            raise ValidationError("sun grading needs an su_n ring", witness="/subring/grading")
        return grading_kernel(ring, grading_of_sun(ring))
    if grading.get("kind") == "mod":
        return grading_kernel(ring, mod_grading(ring, grading["modulus"]))
    raise SchemaError("grading_kernel needs a grading", "/subring/grading")


def _build_mult(ring: FusionRing, spec: Mapping) -> Multiplier:
    from .tlj import multiplier_from_measure, phi_point

    kind = spec["kind"]
    if kind == "regular":
        return regular_multiplier(ring)
    if kind == "trivial":
        return trivial_multiplier(ring)
    if kind in ("point", "measure"):
        if not isinstance(ring, TLJRing):
            raise ValidationError(f"{kind} multipliers need a tlj_ainf ring", witness=kind)
        if kind == "point":
            return phi_point(ring, as_number(spec["t"]))
        return multiplier_from_measure(ring, [(as_number(t), as_number(w)) for t, w in spec["atoms"]])
    if kind == "table":
        values = {}
        for entry in spec["values"]:
            c = as_number(entry[1])
            if len(entry) == 3 and as_number(entry[2]) != 0:
                c = complex(float(c), float(as_number(entry[2])))
            if not math.isfinite(abs(complex(c))):
                raise ValidationError("table values must be finite", witness=entry)
            values[label_from_json(ring, entry[0])] = c
        return table_multiplier(ring, values, as_number(spec.get("default", 0)))
    if kind == "free_product":
        if not isinstance(ring, FreeProductRing):
            raise ValidationError("free_product multipliers need a free_product ring", witness=kind)
        p1 = _build_mult(ring.factors[0], spec["parts"][0])
        p2 = _build_mult(ring.factors[1], spec["parts"][1])
        return free_product_multiplier(ring, p1, p2, as_number(spec["r"]))
    sub = _parse_subring(ring, spec["subring"])
    inner = _build_mult(sub, spec["inner"])
    return extend_by_zero(ring, sub, inner)


def parse_multiplier_spec(text_or_obj, ring: FusionRing) -> Multiplier:
    doc = _load(text_or_obj)
    _validate(doc, MULTIPLIER_SCHEMA)
    return _build_mult(ring, doc)


# -- output ----------------------------------------------------------------------


def jsonable(x):
    """Convert results to JSON-ready values: exact integers stay ints, other
    reals become floats, complex numbers with an imaginary part become
    ``{"re", "im"}``, tuples become lists."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    if isinstance(x, (complex, np.complexfloating)):
        if x.imag == 0:
            return float(x.real)
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, (float, np.floating)):
        return float(x)
    if isinstance(x, Mapping):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps(obj, indent: int = 2) -> str:
    """JSON text with floats at 17 significant digits and sorted keys."""

    def enc(o, level):
        pad = " " * (indent * (level + 1))
        end = " " * (indent * level)
        if isinstance(o, bool) or o is None:
            return json.dumps(o)
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return _fmt_float(o)
        if isinstance(o, str):
            return json.dumps(o, ensure_ascii=False)
        if isinstance(o, Mapping):
            if not o:
                return "{}"
            items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {enc(v, level + 1)}" for k, v in sorted(o.items())]
            return "{\n" + ",\n".join(items) + "\n" + end + "}"
        if isinstance(o, list):
            if not o:
                return "[]"
            if all(isinstance(v, (int, float, str, bool)) or v is None for v in o):
                return "[" + ", ".join(enc(v, level + 1) for v in o) + "]"
            return "[\n" + ",\n".join(pad + enc(v, level + 1) for v in o) + "\n" + end + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(jsonable(obj), 0) + "\n"


def envelope(command: str, inputs: Mapping, result, witnesses=None, tolerances: Mapping | None = None) -> dict:
    return {
        "command": command,
        "inputs": dict(inputs),
        "result": result,
        "witnesses": witnesses,
        "tolerances": dict(tolerances or {}),
        "versions": {"fusionlab": __version__, "numpy": np.__version__, "scipy": scipy.__version__},
    }


def write_csv(header: Iterable[str], rows: Iterable[Iterable], stream=None) -> str:
    """CSV with floats at 17 significant digits; returns the text when ``stream`` is None."""
    buf = stream if stream is not None else io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        out = []
        for v in row:
            v = jsonable(v)
            if isinstance(v, float):
                out.append(_fmt_float(v))
            elif isinstance(v, (list, dict)):
                out.append(json.dumps(v, separators=(",", ":")))
            else:
                out.append(v)
        writer.writerow(out)
    if stream is None:
        return buf.getvalue()
    return ""


def read_json_arg(value: str):
    """Inline JSON (or the generator shorthand ``X``), else a path to a JSON file."""
    text = value.strip()
    if text == "X":
        return text
    try:
        json.loads(text)
        return text
    except json.JSONDecodeError:
        pass
    path = Path(value)
    if not path.is_file():
        raise FileNotFoundError(f"{value!r} is neither JSON nor a readable file")
    return path.read_text(encoding="utf-8")
