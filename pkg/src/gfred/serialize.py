"""JSON encoding of every element type.  Rationals travel as ``"p/q"`` strings."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra import BorelLoop, CocycleParams, GElem, GHatElem
from .coadjoint import DualElem
from .errors import ParseError
from .reduction import HillPoint, SL2Connection
from .trigpoly import PiScalar, TrigPoly, as_rational


def rat_str(q: Fraction) -> str:
    return str(q)  # Fraction prints lowest terms, "p" or "p/q"


def parse_rat(value: Any) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"expected a rational string, got {value!r}")
    try:
        return as_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {value!r}") from exc


def _obj(data: Any, what: str) -> dict:
    if not isinstance(data, dict):
        raise ParseError(f"{what} must be a JSON object")
    return data


def _rat_list(data: Any, what: str) -> list:
    if not isinstance(data, list):
        raise ParseError(f"{what} must be a JSON array")
    return [parse_rat(v) for v in data]


def tp_to_json(f: TrigPoly) -> dict:
    return {"a0": rat_str(f.a0), "cos": [rat_str(c) for c in f.cos], "sin": [rat_str(s) for s in f.sin]}


def tp_from_json(data: Any) -> TrigPoly:
    data = _obj(data, "TrigPoly")
    return TrigPoly(
        parse_rat(data.get("a0", "0")),
        _rat_list(data.get("cos", []), "cos"),
        _rat_list(data.get("sin", []), "sin"),
    )


def pi_to_json(v: PiScalar) -> dict:
    return {"rat": rat_str(v.rat), "pi": rat_str(v.pi)}


def pi_from_json(data: Any) -> PiScalar:
    data = _obj(data, "PiScalar")
    return PiScalar(parse_rat(data.get("rat", "0")), parse_rat(data.get("pi", "0")))


def borel_to_json(b: BorelLoop) -> dict:
    return {"x": tp_to_json(b.x), "y": tp_to_json(b.y)}


def borel_from_json(data: Any) -> BorelLoop:
    data = _obj(data, "BorelLoop")
    return BorelLoop(_tp_field(data, "x"), _tp_field(data, "y"))


def _tp_field(data: dict, key: str) -> TrigPoly:
    return tp_from_json(data[key]) if key in data else TrigPoly()


def gelem_to_json(X: GElem) -> dict:
    return {"f": tp_to_json(X.f), "x": tp_to_json(X.x), "y": tp_to_json(X.y)}


def gelem_from_json(data: Any) -> GElem:
    """Missing slots default to zero, so ``{"f": ...}`` is a pure vector field."""
    data = _obj(data, "GElem")
    return GElem.of(_tp_field(data, "f"), _tp_field(data, "x"), _tp_field(data, "y"))


def ghat_to_json(X: GHatElem) -> dict:
    out = gelem_to_json(X.g)
    out["t"] = pi_to_json(X.t)
    return out


def ghat_from_json(data: Any) -> GHatElem:
    data = _obj(data, "GHatElem")
    t = data.get("t", {"rat": "0", "pi": "0"})
    t = PiScalar(parse_rat(t)) if isinstance(t, (str, int)) else pi_from_json(t)
    return GHatElem(gelem_from_json(data), t)


def dual_to_json(phi: DualElem) -> dict:
    return {
        "u": tp_to_json(phi.u),
        "p": tp_to_json(phi.p),
        "q": tp_to_json(phi.q),
        "charge": rat_str(phi.charge),
    }


def dual_from_json(data: Any) -> DualElem:
    data = _obj(data, "DualElem")
    return DualElem(_tp_field(data, "u"), _tp_field(data, "p"), _tp_field(data, "q"),
                    parse_rat(data.get("charge", "0")))


def lam_to_json(lam: CocycleParams) -> list:
    return [rat_str(v) for v in lam.as_tuple()]


def lam_from_json(data: Any) -> CocycleParams:
    if isinstance(data, str):
        return parse_lam(data)
    values = _rat_list(data, "lam")
    if len(values) != 3:
        raise ParseError("lam needs exactly three entries")
    return CocycleParams(*values)


def parse_lam(text: str) -> CocycleParams:
    try:
        return CocycleParams.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc)) from exc


def conn_to_json(c: SL2Connection) -> dict:
    return {
        "alpha": tp_to_json(c.alpha),
        "beta": tp_to_json(c.beta),
        "gamma": tp_to_json(c.gamma),
        "charge": rat_str(c.charge),
    }


def conn_from_json(data: Any) -> SL2Connection:
    data = _obj(data, "SL2Connection")
    gamma = tp_from_json(data["gamma"]) if "gamma" in data else TrigPoly(1)
    return SL2Connection(_tp_field(data, "alpha"), _tp_field(data, "beta"), gamma,
                         parse_rat(data.get("charge", "0")))


def hill_to_json(h: HillPoint) -> dict:
    return {"T": tp_to_json(h.T), "charge": rat_str(h.charge)}


def hill_from_json(data: Any) -> HillPoint:
    data = _obj(data, "HillPoint")
    return HillPoint(_tp_field(data, "T"), parse_rat(data.get("charge", "0")))


def dumps(doc: Any) -> str:
    """Canonical form: sorted keys, no insignificant whitespace variation."""
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
