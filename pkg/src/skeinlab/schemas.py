"""Versioned JSON schemas for the command-line output."""

from __future__ import annotations

import json
from pathlib import Path

SCHEMA_VERSION = 1

_LAURENT = {"type": "array", "items": {"type": "array", "prefixItems": [{"type": "integer"}, {"type": "string"}],
                                       "minItems": 2, "maxItems": 2}}
_SERIES = {"type": "array", "items": {"type": "array", "minItems": 3, "maxItems": 3}}
_DESCRIPTOR = {
    "type": "object",
    "required": ["p", "inner", "outer", "rot", "loops"],
    "properties": {
        "p": {"type": "integer", "minimum": 0},
        "inner": {"type": "array"},
        "outer": {"type": "array"},
        "rot": {"type": "integer"},
        "loops": {"type": "integer", "minimum": 0},
    },
}


def _envelope(name: str, required: list[str], props: dict) -> dict:
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": f"skeinlab {name} output",
        "type": "object",
        "required": ["schema", *required],
        "properties": {"schema": {"const": f"skeinlab/{name}/v{SCHEMA_VERSION}"}, **props},
    }


SCHEMAS = {
    "parse": _envelope("parse", ["ok", "ambient", "bottom", "top", "slices", "crossings", "components"], {
        "ok": {"type": "boolean"}, "ambient": {"enum": ["disk", "annulus"]},
        "bottom": {"type": "integer"}, "top": {"type": "integer"}, "slices": {"type": "integer"},
        "crossings": {"type": "integer"}, "components": {"type": "integer"}, "word": {"type": "string"},
        "component_table": {"type": "array", "items": {"type": "object",
                                                       "required": ["index", "closed", "core", "slices"]}},
    }),
    "bracket": _envelope("bracket", ["laurent", "text"], {"laurent": _LAURENT, "text": {"type": "string"}}),
    "star-bracket": _envelope("star-bracket", ["laurent", "marked", "divisibility_by_A_plus_1"], {
        "laurent": _LAURENT, "marked": {"type": "array", "items": {"type": "integer"}},
        "divisibility_by_A_plus_1": {"type": ["integer", "string"]},
    }),
    "reduce": _envelope("reduce", ["ambient", "bottom", "top", "terms"], {
        "ambient": {"enum": ["disk", "annulus"]}, "bottom": {"type": "integer"}, "top": {"type": "integer"},
        "terms": {"type": "array", "items": {"type": "object", "required": ["diagram", "coeff"],
                                             "properties": {"coeff": _LAURENT}}},
    }),
    "cheb": _envelope("cheb", ["n", "kind", "coefficients"], {
        "n": {"type": "integer"}, "kind": {"enum": ["T", "T+1"]},
        "coefficients": {"type": "array", "items": {"type": "string"}},
    }),
    "acoef": _envelope("acoef", ["N", "a"], {
        "N": {"type": "integer"}, "a": {"type": "array", "items": {"type": "string"}},
    }),
    "xc": _envelope("xc", ["order", "series"], {"order": {"type": "integer"}, "series": _SERIES}),
    "valuation": _envelope("valuation", ["mode", "cap", "valuation"], {
        "mode": {"enum": ["algebra", "strand"]}, "cap": {"type": "integer"},
        "valuation": {"type": ["integer", "string"]}, "element": {"type": "string"},
    }),
    "finite-type": _envelope("finite-type", ["order", "components", "divisible"], {
        "order": {"type": "integer"}, "components": {"type": "integer"}, "divisible": {"type": "boolean"},
        "value": _LAURENT, "divisibility_by_A_plus_1": {"type": ["integer", "string"]},
    }),
    "star": _envelope("star", ["marked", "terms", "laurent"], {
        "marked": {"type": "array"}, "laurent": _LAURENT,
        "terms": {"type": "array", "items": {"type": "object", "required": ["weight", "word"]}},
    }),
    "verify": _envelope("verify", ["passed", "reports"], {
        "passed": {"type": "boolean"},
        "reports": {"type": "array", "items": {"type": "object",
                                               "required": ["lemma", "strands", "order", "passed", "runtime"]}},
    }),
    "calibrate": _envelope("calibrate", ["profile", "transcript"], {
        "profile": {"type": "object", "required": ["smoothing", "handedness", "version"]},
        "transcript": {"type": "array"},
    }),
    "error": _envelope("error", ["error", "message"], {
        "error": {"type": "string"}, "message": {"type": "string"},
    }),
}


def schema_id(name: str) -> str:
    return f"skeinlab/{name}/v{SCHEMA_VERSION}"


def write_schemas(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, schema in SCHEMAS.items():
        p = directory / f"{name}.schema.json"
        p.write_text(json.dumps(schema, indent=2) + "\n")
        paths.append(p)
    return paths
