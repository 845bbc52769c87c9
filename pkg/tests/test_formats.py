import json
from fractions import Fraction

import jsonschema
import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mopkit.formats import (APERY_SCHEMA, MEASURE_SCHEMA, POLY_SCHEMA, SERIES_SCHEMA,
                            load_measures, measure_from_json, measure_to_json,
                            number_from_json, number_to_json, poly_from_json, poly_to_json,
                            series_from_json, series_to_json)
from mopkit.hermitepade import algebraic_series
from mopkit.measures import APERY_TRIPLE, LEBESGUE, cauchy_series, moment_table, preset
from mopkit.numerics import Polynomial, ScalarDomain
from mopkit.zeros import fig1_curve

F = Fraction


@given(st.fractions())
def test_rationals_round_trip(q):
    s = number_to_json(q)
    assert number_from_json(s) == q


def test_floats_keep_their_bits():
    with mpmath.workprec(200):
        x = mpmath.mpf(1) / 3
        z = mpmath.mpc(x, -x)
    assert number_from_json(number_to_json(x, 200), 200) == x
    assert number_from_json(number_to_json(z, 200), 200) == z


@pytest.mark.parametrize("mu", list(preset("apery-triple")) + list(preset("hermite-ext:1,-1:1"))
                         + [LEBESGUE, moment_table([F(1), F(1, 2), F(1, 3)])])
def test_measures_round_trip(mu):
    obj = measure_to_json(mu)
    jsonschema.validate(obj, MEASURE_SCHEMA)
    assert measure_from_json(json.loads(json.dumps(obj))) == mu


def test_load_measures_shapes(tmp_path):
    objs = [measure_to_json(m) for m in APERY_TRIPLE]
    for k, data in enumerate([objs, {"measures": objs}, objs[0]]):
        path = tmp_path / f"m{k}.json"
        path.write_text(json.dumps(data))
        assert load_measures(path) == (APERY_TRIPLE if k < 2 else APERY_TRIPLE[:1])


def test_poly_round_trip():
    p = Polynomial([F(1, 6), -1, 1])
    obj = poly_to_json(p)
    jsonschema.validate(obj, POLY_SCHEMA)
    assert obj == {"domain": "rational", "coeffs": ["1/6", "-1", "1"]}
    assert poly_from_json(obj) == p


def test_series_round_trip():
    s = cauchy_series(LEBESGUE, 6)
    obj = series_to_json(s)
    jsonschema.validate(obj, SERIES_SCHEMA)
    back = series_from_json(obj)
    assert back.tail == s.tail and back.poly_part == s.poly_part

    w = algebraic_series(fig1_curve(), 6, 128)
    obj = series_to_json(w)
    jsonschema.validate(obj, SERIES_SCHEMA)
    back = series_from_json(obj, 128)
    assert back.tail == w.tail
    assert back.domain == ScalarDomain.complex(128)


def test_schema_rejects_bad_input():
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"kind": "log_weight", "power": 3}, MEASURE_SCHEMA)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"steps": [{"n": 0}], "ratios": []}, APERY_SCHEMA)
