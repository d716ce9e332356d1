"""Map-spec ingestion: catalog shorthands, JSON objects, and spec files.

Accepted forms:

* shorthand strings: ``tent``, ``sawtooth:N``, ``alt_sawtooth:N``,
  ``logistic:r``, ``one_minus_x_squared``;
* inline JSON: ``{"type": "tent"}``, ``{"type": "sawtooth", "N": 3}``,
  ``{"type": "logistic", "r": 3.5}``, or a full piece list
  ``{"type": "pwl", "pieces": [{"lo": "0", "hi": "1/2", "slope": "2",
  "intercept": "0"}, ...]}`` with rationals written as strings;
* a path to a file holding such JSON.

Piece defaults: ``lo_closed`` true, ``hi_closed`` false except when
``hi`` is 1 (the domain's right end must be owned by its last piece).

``logistic:4`` loads with an exact engine attached: its orbits are
order-isomorphic to tent orbits, so pattern computations run on the tent
map while sampling still uses the genuine logistic formula.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import BadParameter, ParseError, UnknownMap, ValidationError
from .numeric import NumericMap
from .pwl import PwlMap, PwlPiece, alt_sawtooth, sawtooth, tent

ISOMORPHISM_NOTE = "exact results computed on the tent map via order-isomorphism"
_SHORTHAND = re.compile(r"^(tent|one_minus_x_squared|sawtooth:\d+|alt_sawtooth:\d+|logistic:[0-9.]+)$")


@dataclass(frozen=True)
class LoadedMap:
    """A validated map spec with whichever engines it supports.

    exact is true when pwl holds an equivalent piecewise-linear map; the
    numeric() engine is always available.
    """

    label: str
    spec: dict
    pwl: PwlMap | None
    exact: bool
    note: str | None = None

    def numeric(self) -> NumericMap:
        kind = self.spec["type"]
        if kind == "logistic":
            return NumericMap.logistic(self.spec["r"])
        if kind == "one_minus_x_squared":
            return NumericMap.one_minus_x_squared()
        assert self.pwl is not None
        return NumericMap.from_pwl(self.pwl)

    def require_exact(self) -> PwlMap:
        if self.pwl is None:
            raise BadParameter(
                f"map {self.label!r} has no exact engine; exact operations need a "
                "piecewise-linear map (or logistic:4)"
            )
        return self.pwl


def _frac_field(piece: dict, field: str, default=None) -> Fraction:
    if field not in piece:
        if default is None:
            raise ParseError(f"piece is missing field {field!r}")
        return Fraction(default)
    value = piece[field]
    if isinstance(value, bool) or isinstance(value, float):
        raise ParseError(
            f"field {field!r} must be an integer or a rational string like \"1/2\""
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParseError(f"field {field!r}: {exc}") from None


def _bool_field(piece: dict, field: str, default: bool) -> bool:
    value = piece.get(field, default)
    if not isinstance(value, bool):
        raise ParseError(f"field {field!r} must be true or false")
    return value


def _piece_from_dict(raw: Any) -> PwlPiece:
    if not isinstance(raw, dict):
        raise ParseError("each piece must be a JSON object")
    hi = _frac_field(raw, "hi")
    return PwlPiece(
        lo=_frac_field(raw, "lo"),
        hi=hi,
        lo_closed=_bool_field(raw, "lo_closed", True),
        hi_closed=_bool_field(raw, "hi_closed", hi == 1),
        slope=_frac_field(raw, "slope"),
        intercept=_frac_field(raw, "intercept", default=0),
    )


def _piece_to_dict(p: PwlPiece) -> dict:
    return {
        "lo": str(p.lo),
        "hi": str(p.hi),
        "lo_closed": p.lo_closed,
        "hi_closed": p.hi_closed,
        "slope": str(p.slope),
        "intercept": str(p.intercept),
    }


def _ramp_param(spec: dict) -> int:
    value = spec.get("N")
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError("field 'N' must be an integer")
    return value


def _from_dict(spec: dict) -> LoadedMap:
    kind = spec.get("type")
    if kind == "tent":
        return LoadedMap("tent", {"type": "tent"}, tent(), True)
    if kind == "sawtooth":
        n = _ramp_param(spec)
        return LoadedMap(f"sawtooth:{n}", {"type": "sawtooth", "N": n}, sawtooth(n), True)
    if kind == "alt_sawtooth":
        n = _ramp_param(spec)
        return LoadedMap(
            f"alt_sawtooth:{n}", {"type": "alt_sawtooth", "N": n}, alt_sawtooth(n), True
        )
    if kind == "one_minus_x_squared":
        return LoadedMap(
            "one_minus_x_squared", {"type": "one_minus_x_squared"}, None, False
        )
    if kind == "logistic":
        r = spec.get("r")
        if isinstance(r, bool) or not isinstance(r, (int, float)):
            raise ParseError("field 'r' must be a number")
        r = float(r)
        if not 1.0 < r <= 4.0:
            raise ValidationError("logistic parameter must satisfy 1 < r <= 4")
        canon = {"type": "logistic", "r": r}
        if r == 4.0:
            return LoadedMap("logistic:4", canon, tent(), True, ISOMORPHISM_NOTE)
        return LoadedMap(f"logistic:{r}", canon, None, False)
    if kind == "pwl":
        raw = spec.get("pieces")
        if not isinstance(raw, list) or not raw:
            raise ParseError("field 'pieces' must be a nonempty list")
        pwl = PwlMap(tuple(_piece_from_dict(p) for p in raw))
        canon = {"type": "pwl", "pieces": [_piece_to_dict(p) for p in pwl.pieces]}
        return LoadedMap("pwl", canon, pwl, True)
    raise UnknownMap(f"unknown map type {kind!r}")


def _from_shorthand(text: str) -> LoadedMap:
    name, _, param = text.partition(":")
    if name == "tent":
        return _from_dict({"type": "tent"})
    if name == "one_minus_x_squared":
        return _from_dict({"type": "one_minus_x_squared"})
    if name in ("sawtooth", "alt_sawtooth"):
        return _from_dict({"type": name, "N": int(param)})
    if name == "logistic":
        try:
            r = float(param)
        except ValueError:
            raise ParseError(f"bad logistic parameter {param!r}") from None
        return _from_dict({"type": "logistic", "r": r})
    raise UnknownMap(f"unknown map shorthand {text!r}")


def load_map_spec(source: str | dict) -> LoadedMap:
    """Load a map from a shorthand string, JSON text, JSON dict, or file path."""
    if isinstance(source, dict):
        return _from_dict(source)
    if not isinstance(source, str):
        raise ParseError(f"map spec must be a string or object, got {type(source).__name__}")
    text = source.strip()
    if _SHORTHAND.match(text):
        return _from_shorthand(text)
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad map-spec JSON: {exc}") from None
        return _from_dict(data)
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            body = fh.read()
        try:
            data = json.loads(body)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{text}: bad map-spec JSON: {exc}") from None
        return _from_dict(data)
    raise UnknownMap(
        f"{text!r} is not a catalog shorthand, inline JSON, or a readable file"
    )


def serialize(lm: LoadedMap) -> str:
    """Canonical JSON for the map; load_map_spec(serialize(lm)) reproduces lm."""
    return json.dumps(lm.spec, sort_keys=True, separators=(",", ":"))
