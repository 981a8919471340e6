"""JSON descriptions of family specs.

{"type": "multigeometric", "k": [3, 2], "q": "1/4"}
{"type": "kyiv", "m": {"pre": [], "period": [4]}, "s": {"pre": [], "period": [8]}}
{"type": "gf", "m": {...}, "k": {...}, "q": {"pre": [], "block": ["1/10"], "ratio": "1/10"}}
{"type": "mm", "gaps": {"pre": [], "period": [1]}}
{"type": "repeated", "y": {"pre": [], "block": ["1/4"], "ratio": "1/4"}, "counts": {...}}

All rationals are canonical "p/q" strings (plain integers accepted on input).
"""

from __future__ import annotations

from typing import Union

from .ferens import GFSpec
from .kyiv import KyivSpec
from .marchwicki import MMSpec
from .multigeometric import MultigeometricSpec

FamilySpec = Union[MultigeometricSpec, GFSpec, MMSpec, KyivSpec, "RepeatedTermSpec"]

_PARSERS = {
    "multigeometric": MultigeometricSpec.from_json,
    "gf": GFSpec.from_json,
    "mm": MMSpec.from_json,
    "kyiv": KyivSpec.from_json,
}


def spec_from_json(doc: dict) -> FamilySpec:
    """Parse a family spec document; raises ValueError on malformed input."""
    from ..uniqueness import RepeatedTermSpec

    if not isinstance(doc, dict):
        raise ValueError("spec document must be a JSON object")
    kind = doc.get("type")
    if kind == "repeated":
        return RepeatedTermSpec.from_json(doc)
    parser = _PARSERS.get(kind)
    if parser is None:
        known = sorted(_PARSERS) + ["repeated"]
        raise ValueError(f"unknown spec type {kind!r}; expected one of {known}")
    try:
        return parser(doc)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed {kind} spec: {exc}") from exc


def spec_to_json(spec: FamilySpec) -> dict:
    return spec.to_json()
