import json
from fractions import Fraction

import numpy as np
import pytest

from apolar_rank.errors import ApolarError, ParseError
from apolar_rank.monomial import monomial_border_family, monomial_waring, verify
from apolar_rank.parser import parse
from apolar_rank.recovery import verify_generalized
from apolar_rank.scalars import Cyclotomic
from apolar_rank.search import extension_rank_search
from apolar_rank.serialize import SCHEMA, decomposition_from_json, dumps, scalar_from_json


def roundtrip(obj):
    return json.loads(json.dumps(obj))


def test_dumps_is_canonical():
    a = dumps({"b": Fraction(1, 3), "a": (1, 2), "c": np.int64(4)})
    b = dumps({"c": 4, "a": [1, 2], "b": "1/3"})
    assert a == b
    assert json.loads(a)["schema"] == SCHEMA
    assert a.endswith("\n")


def test_dumps_rejects_unknown_objects():
    with pytest.raises(TypeError):
        dumps({"x": object()})


@pytest.mark.parametrize("v,want", [
    (3, Fraction(3)), ("-2/7", Fraction(-2, 7)), ("0.25", 0.25), (1.5, 1.5),
    ([1.0, -2.0], complex(1, -2)), ({"re": 0.5, "im": 1}, complex(0.5, 1)),
])
def test_scalar_encodings(v, want):
    assert scalar_from_json(v) == want


def test_cyclotomic_scalar():
    z = scalar_from_json({"cyclo": ["0", "1"], "N": 3})
    assert isinstance(z, Cyclotomic) and z.order == 3
    assert (z * z * z - 1).is_zero()


@pytest.mark.parametrize("v", [True, "x", [1], {"foo": 1}, None])
def test_bad_scalars(v):
    with pytest.raises(ParseError):
        scalar_from_json(v)


@pytest.mark.parametrize("alpha", [(1, 2), (1, 2, 2), (2, 1, 1)])
def test_waring_roundtrip_is_exact(alpha):
    dec = monomial_waring(alpha)
    back = decomposition_from_json(roundtrip(dec.to_json(verify(dec))))
    assert len(back) == len(dec)
    rep = verify(back, mode="exact")
    assert rep.ok and rep.residual == 0


def test_border_roundtrip_keeps_epsilon():
    dec = monomial_border_family((1, 2, 2)).at(Fraction(1, 100))
    back = decomposition_from_json(roundtrip(dec.to_json()))
    assert back.eps == Fraction(1, 100)
    assert verify(back, mode="numeric", tol=0.1).ok


def test_generalized_roundtrip():
    f = parse("x0^3*x1 + x1^3*x2", 2)
    res = extension_rank_search(f, 8)
    back = decomposition_from_json(roundtrip(res.dec.to_json()))
    assert back.multiplicities == res.dec.multiplicities
    assert verify_generalized(back, f).ok


@pytest.mark.parametrize("obj", [[], {"terms": []}, {"nvars": 2, "target": "x0", "degree": 1,
                                                   "terms": [{"weight": 1, "form": [1]}]}])
def test_malformed_documents(obj):
    with pytest.raises(ApolarError):
        decomposition_from_json(obj)
