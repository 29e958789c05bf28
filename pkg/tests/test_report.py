import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from kchaos.analysis import classify_pair
from kchaos.batteries import canonical_shift_pairs
from kchaos.report import (
    config_json,
    dumps,
    load_schema,
    pairclass_json,
    parse_config,
    parse_fraction,
    profile_csv,
    to_jsonable,
    validate,
)
from kchaos.runner import ConfigError, parse_point, run_document
from kchaos.space import Dyadic, SymbolicConfig
from kchaos.systems import make_shift

from helpers import configs


def test_dyadics_and_fractions_are_never_binary_floats():
    assert to_jsonable(Dyadic(-3)) == {"exp": -3}
    assert to_jsonable(Dyadic.zero()) == {"exp": None}
    assert to_jsonable(Fraction(3, 8)) == "3/8"
    assert to_jsonable(Fraction(2)) == "2"
    assert to_jsonable(0.1) == "0.1"
    assert to_jsonable({(1, 2): {3, 1}}) == {"1,2": [1, 3]}
    with pytest.raises(TypeError):
        to_jsonable(object())


@given(configs())
def test_config_roundtrip(x):
    assert parse_config(json.loads(json.dumps(config_json(x))), x.d) == x


def test_parse_fraction():
    assert parse_fraction("1/4") == Fraction(1, 4)
    assert parse_fraction(3) == 3
    with pytest.raises(ValueError):
        parse_fraction(True)


def test_pairclass_json_is_stable():
    pc = classify_pair(make_shift(2), *canonical_shift_pairs()["periodic"], 1)
    doc = pairclass_json(pc)
    assert doc["liminf"] == {"exp": -1}
    assert doc["proximal"] == {"outcome": "no", "exact": True, "rule": "diffset-periodic",
                               "witness": {"liminf": {"exp": -1}, "limsup": {"exp": 0},
                                           "period": [2, 2], "covering_radius": 1}}
    assert list(doc["asymptotic_at"]) == ["1/2", "1/4", "1/8", "1/16"]
    assert dumps(doc) == dumps(json.loads(dumps(doc)))


def test_profile_csv():
    text = profile_csv({(1, 1): Dyadic(-1), (1, 2): Dyadic.zero()})
    assert text == "n_1,n_2,distance_exp\n1,1,-1\n1,2,-inf\n"
    with pytest.raises(TypeError):
        profile_csv({(1,): 0.5})
    with pytest.raises(ValueError):
        profile_csv({})


def test_schemas_load():
    assert load_schema("config")["properties"]["schema_version"] == {"const": 1}
    assert "summary" in load_schema("report")["required"]


def _doc(**analysis):
    return {"schema_version": 1,
            "systems": [{"id": "s", "kind": "shift", "d": 2}],
            "analyses": [dict({"name": "classify-pair", "system": "s", "pair": "finite"},
                              **analysis)]}


def test_run_document_report_validates():
    out = run_document(_doc())
    validate(json.loads(dumps(out.report)), "report")
    assert out.report["summary"] == {"analyses": 1, "refuted": 0, "violations": 0}
    assert out.report["results"][0]["result"]["difference_set"] == "finite"
    assert len(out.profiles) == 1


@pytest.mark.parametrize("bad,msg", [
    ({"k": 9}, "k out of range 1..4"),
    ({"system": "nope"}, "unknown system"),
    ({"pair": "nope"}, "unknown canonical pair"),
])
def test_config_errors(bad, msg):
    with pytest.raises(ConfigError, match=msg):
        run_document(_doc(**bad))


def test_schema_errors():
    with pytest.raises(ConfigError, match="schema"):
        run_document({"schema_version": 2, "systems": [], "analyses": []})
    doc = _doc()
    doc["systems"].append({"id": "s", "kind": "shift"})
    with pytest.raises(ConfigError, match="duplicate"):
        run_document(doc)


def test_parse_points():
    from kchaos.batteries import GOLDEN
    from kchaos.systems import make_product, make_rotation_induced

    P = make_product(make_shift(2), make_rotation_induced(GOLDEN, (1, 0)))
    x = parse_point(P, [{"background": [[0, 1]]}, "0.5"])
    assert x == (SymbolicConfig(2, np.array([[0, 1]])), 0.5)
    with pytest.raises(ConfigError):
        parse_point(P, [{"background": 0}])
