"""JSON schemas for run configs and emitted reports.

Configs are validated before any computation starts; reports are validated
again just before emission so the published schema and the writer cannot
drift apart.
"""

_MATRIX = {"type": "array",
           "items": {"type": "array", "items": {"type": "integer"}}}

_POINT_NAME = {"type": "string", "minLength": 1}

_RATIONAL = {"type": ["string", "integer"]}

WEHLER_SYSTEM = {
    "type": "object",
    "required": ["type", "coeffs", "word"],
    "properties": {
        "type": {"const": "wehler"},
        "coeffs": {"type": "array", "minItems": 3, "maxItems": 3,
                   "items": {"type": "array", "minItems": 3, "maxItems": 3,
                             "items": {"type": "array", "minItems": 3,
                                       "maxItems": 3,
                                       "items": {"type": "integer"}}}},
        "word": {"type": "array", "minItems": 1,
                 "items": {"enum": [1, 2, 3]}},
        "points": {"type": "object"},
        "cone": {"type": "array",
                 "items": {"type": "array", "items": _RATIONAL}},
        "gram": _MATRIX,
    },
}

POWER_SYSTEM = {
    "type": "object",
    "required": ["type", "degree", "dim"],
    "properties": {
        "type": {"const": "power"},
        "degree": {"type": "integer", "minimum": 2},
        "dim": {"type": "integer", "minimum": 1},
        "points": {"type": "object"},
    },
}

MONOMIAL_SYSTEM = {
    "type": "object",
    "required": ["type", "matrix"],
    "properties": {
        "type": {"const": "monomial"},
        "matrix": _MATRIX,
        "points": {"type": "object"},
    },
}

PRODUCT_SYSTEM = {
    "type": "object",
    "required": ["type", "left", "right"],
    "properties": {
        "type": {"const": "product"},
        "left": {"type": "object"},
        "right": {"type": "object"},
        "points": {"type": "object"},
    },
}

SYSTEM_CONFIG = {
    "oneOf": [WEHLER_SYSTEM, POWER_SYSTEM, MONOMIAL_SYSTEM, PRODUCT_SYSTEM],
}

LATTICE_CONFIG = {
    "type": "object",
    "required": ["basis_dim", "dim_X", "form", "pullback"],
    "properties": {
        "basis_dim": {"type": "integer", "minimum": 1},
        "dim_X": {"type": "integer", "minimum": 1},
        "form": {"type": "array",
                 "items": {"type": "object",
                           "required": ["indices", "value"],
                           "properties": {
                               "indices": {"type": "array",
                                           "items": {"type": "integer"}},
                               "value": _RATIONAL}}},
        "pullback": _MATRIX,
        "degree": {"type": "integer", "minimum": 1},
        "is_automorphism": {"type": "boolean"},
        "cone": {"type": "array",
                 "items": {"type": "array", "items": _RATIONAL}},
    },
}

CHOW_CONFIG = {
    "type": "object",
    "required": ["gram", "fujiki_c", "m"],
    "properties": {
        "gram": _MATRIX,
        "fujiki_c": _RATIONAL,
        "m": {"type": "integer", "minimum": 1},
        "isometry": _MATRIX,
        "cone": {"type": "array",
                 "items": {"type": "array", "items": _RATIONAL}},
    },
}

BUNDLE_CONFIG = {
    "type": "object",
    "required": ["cases"],
    "properties": {
        "cases": {"type": "array",
                  "items": {"type": "object",
                            "required": ["n", "deg_g", "delta", "hn"],
                            "properties": {
                                "n": {"type": "integer", "minimum": 2},
                                "deg_g": {"type": "integer", "minimum": 1},
                                "delta": _RATIONAL,
                                "hn": {"type": "array",
                                       "items": {"type": "array",
                                                 "minItems": 2,
                                                 "maxItems": 2,
                                                 "items": {"type": "integer"}}},
                            }}},
    },
}

ALGEBRAIC_NUMBER_REPORT = {
    "type": "object",
    "required": ["poly", "lo", "hi"],
    "properties": {
        "poly": {"type": "array", "items": {"type": "integer"}},
        "lo": {"type": "string"},
        "hi": {"type": "string"},
    },
}

INTERVAL_REPORT = {
    "type": "object",
    "required": ["lo", "hi"],
    "properties": {"lo": {"type": "string"}, "hi": {"type": "string"}},
}

KS_REPORT = {
    "type": "object",
    "required": ["lambda1", "alpha", "conditions", "density_heuristic",
                 "verdict", "warnings"],
    "properties": {
        "lambda1": ALGEBRAIC_NUMBER_REPORT,
        "alpha": {"type": "object"},
        "canonical": {"type": ["object", "null"]},
        "conditions": {"type": "object"},
        "density_heuristic": {"type": "string"},
        "verdict": {"enum": ["ExactMatch", "EmpiricallyConsistent",
                             "Inconclusive"]},
        "warnings": {"type": "array", "items": {"type": "string"}},
        "fiber_check": {"type": ["object", "null"]},
    },
}

GENERIC_REPORT = {"type": "object"}
