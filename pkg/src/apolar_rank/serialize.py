"""Deterministic JSON documents and reading decompositions back from them."""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction

import numpy as np

from .errors import ApolarError, ParseError, PreconditionError
from .monomial import WaringDecomposition
from .parser import parse
from .polynomial import LinearForm, PointDiffTerm, Polynomial
from .recovery import GeneralizedDecomposition
from .scalars import Cyclotomic

__all__ = ["SCHEMA", "document", "dumps", "scalar_from_json", "decomposition_from_json"]

SCHEMA = "apolar-rank/1"

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def _default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, (tuple, set, frozenset)):
        return list(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def document(payload: dict) -> dict:
    return {"schema": SCHEMA, **payload}


def dumps(payload: dict) -> str:
    """Sorted keys and fixed separators, so equal payloads give equal bytes."""
    return json.dumps(document(payload), sort_keys=True, indent=2, default=_default) + "\n"


def scalar_from_json(v):
    """Inverse of the scalar encodings used by decompositions."""
    if isinstance(v, bool):
        raise ParseError("boolean is not a scalar", 0)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, float):
        return v
    if isinstance(v, str):
        if _RATIONAL.match(v.strip()):
            return Fraction(v.strip())
        try:
            return float(v)
        except ValueError:
            raise ParseError(f"bad scalar {v!r}", 0) from None
    if isinstance(v, list) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict):
        if "cyclo" in v:
            return Cyclotomic(int(v["N"]), {k: Fraction(c) for k, c in enumerate(v["cyclo"])})
        if "re" in v:
            return complex(float(v["re"]), float(v["im"]))
    raise ParseError(f"bad scalar {v!r}", 0)


def _order(scalars) -> int:
    orders = [c.order for c in scalars if isinstance(c, Cyclotomic)]
    return math.lcm(*orders) if orders else 1


def _waring_from_json(obj: dict) -> WaringDecomposition:
    n = int(obj["nvars"])
    target = parse(obj["target"], n - 1)
    terms = [(scalar_from_json(t["weight"]),
              LinearForm(tuple(scalar_from_json(c) for c in t["form"]))) for t in obj["terms"]]
    if any(len(form.coeffs) != n for _, form in terms):
        raise PreconditionError("form length does not match nvars")
    order = _order([w for w, _ in terms] + [c for _, f in terms for c in f.coeffs])
    eps = Fraction(obj["eps"]) if "eps" in obj else None
    meta = {"kind": obj.get("kind", "waring")}
    return WaringDecomposition(int(obj["degree"]), terms, target, order=order, eps=eps, meta=meta)


def _generalized_from_json(obj: dict) -> GeneralizedDecomposition:
    terms = []
    for t in obj["terms"]:
        point = tuple(scalar_from_json(z) for z in t["point"])
        phi = {tuple(e["exp"]): scalar_from_json(e["coeff"]) for e in t["phi"]}
        terms.append(PointDiffTerm(point, Polynomial(len(point), phi)))
    coords = obj.get("coords")
    if coords is not None:
        coords = [[Fraction(x) for x in row] for row in coords]
    return GeneralizedDecomposition(terms, int(obj["size"]), obj.get("domain", "numeric"),
                                    coords, obj.get("degree"))


def decomposition_from_json(obj: dict):
    """A :class:`WaringDecomposition` or :class:`GeneralizedDecomposition`."""
    if not isinstance(obj, dict):
        raise ParseError("a decomposition is a JSON object", 0)
    try:
        if obj.get("kind") == "generalized":
            return _generalized_from_json(obj)
        return _waring_from_json(obj)
    except ApolarError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed decomposition: {exc}", 0) from None
