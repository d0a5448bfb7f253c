"""Config ingestion and JSON serialization helpers.

Every config document is schema-validated and then machine-checked: Wehler
configs verify the involution/isometry identities and that each named point
lies on the surface, so a bad config fails at load time rather than deep in
an orbit.
"""

import json
import math
from fractions import Fraction

import jsonschema

from . import schemas
from .bbforms import BeauvilleBogomolovForm
from .errors import InvalidInput
from .lattice import PullbackMap, RationalCone, TopIntersectionForm
from .systems import MonomialSystem, PowerSystem, ProductSystem, WehlerSystem


def parse_rational(value):
    if isinstance(value, bool):
        raise InvalidInput("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise InvalidInput(f"cannot parse rational from {value!r}")


def fraction_str(q):
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 \
        else str(q.numerator)


_ROUND_SCALE = 10**40


def _round_outward(box):
    """Widen to denominators <= 10^40 so reports stay readable; sound."""
    lo = Fraction(math.floor(box.lo * _ROUND_SCALE), _ROUND_SCALE)
    hi = Fraction(math.ceil(box.hi * _ROUND_SCALE), _ROUND_SCALE)
    return lo, hi


def round_up_str(q):
    """Fraction string of an upper bound, rounded up to the report grid."""
    return fraction_str(Fraction(math.ceil(Fraction(q) * _ROUND_SCALE),
                                 _ROUND_SCALE))


def interval_json(box):
    lo, hi = _round_outward(box)
    return {"lo": fraction_str(lo), "hi": fraction_str(hi)}


def ran_json(x, eps=Fraction(1, 10**12)):
    tight = x.refined(eps)
    return {"poly": [int(c) for c in tight.poly.coeffs],
            "lo": fraction_str(tight.lo),
            "hi": fraction_str(tight.hi)}


def interval_float(box):
    return float(box.midpoint)


def validate(config, schema):
    try:
        jsonschema.validate(config, schema)
    except jsonschema.ValidationError as exc:
        raise InvalidInput(f"config failed schema validation: {exc.message}")


def load_config(path):
    with open(path) as fh:
        return json.load(fh)


def build_system(config):
    """System object from a validated config document."""
    validate(config, schemas.SYSTEM_CONFIG)
    kind = config["type"]
    if kind == "wehler":
        system = WehlerSystem(config["coeffs"], config["word"])
        for name, data in config.get("points", {}).items():
            point = system.parse_point(data)
            if not system.on_surface(point):
                raise InvalidInput(
                    f"config point {name!r} does not lie on the surface")
        return system
    if kind == "power":
        return PowerSystem(config["degree"], config["dim"])
    if kind == "monomial":
        return MonomialSystem(config["matrix"])
    if kind == "product":
        return ProductSystem(build_system(config["left"]),
                             build_system(config["right"]))
    raise InvalidInput(f"unknown system type {kind!r}")


def config_point(system, config, name):
    points = config.get("points", {})
    if name not in points:
        raise InvalidInput(f"config has no point named {name!r}")
    return system.parse_point(points[name])


def config_cone(config):
    gens = config.get("cone")
    if gens is None:
        return None
    return RationalCone.of([[parse_rational(c) for c in g] for g in gens])


def config_gram_form(config):
    gram = config.get("gram")
    if gram is None:
        return None
    return TopIntersectionForm.from_gram(gram)


def build_lattice(config):
    """(PullbackMap, TopIntersectionForm, cone or None) from a lattice doc."""
    validate(config, schemas.LATTICE_CONFIG)
    rho = config["basis_dim"]
    dim_x = config["dim_X"]
    values = {}
    for item in config["form"]:
        idx = tuple(item["indices"])
        if len(idx) != dim_x:
            raise InvalidInput("form index tuples must have length dim_X")
        values[idx] = parse_rational(item["value"])
    form = TopIntersectionForm(dim_x, rho, values)
    pullback = PullbackMap.of(config["pullback"],
                              config.get("degree", 1),
                              config.get("is_automorphism", False))
    if pullback.rank != rho:
        raise InvalidInput("pullback size does not match basis_dim")
    return pullback, form, config_cone(config)


def build_chow(config):
    """(BeauvilleBogomolovForm, optional isometry matrix, optional cone)."""
    validate(config, schemas.CHOW_CONFIG)
    bb = BeauvilleBogomolovForm.of(config["gram"],
                                   parse_rational(config["fujiki_c"]),
                                   config["m"])
    isometry = config.get("isometry")
    if isometry is not None:
        isometry = PullbackMap.of(isometry, 1, True)
    return bb, isometry, config_cone(config)


def point_json(system, point):
    return system.point_repr(point)
