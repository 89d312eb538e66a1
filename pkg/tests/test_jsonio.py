import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multimodular import jsonio
from multimodular.checks import is_lnat_set, is_multimodular
from multimodular.core import INF, IndicatorSet, IntBox, QuadraticFunction, SeparableFunction, TableFunction, Witness
from multimodular.transforms import reversal_T


def roundtrip(obj):
    return jsonio.decode(json.loads(jsonio.dumps(jsonio.encode(obj))))


class TestValues:
    def test_encode(self):
        assert jsonio.encode_value(Fraction(3)) == 3
        assert jsonio.encode_value(Fraction(-1, 2)) == "-1/2"
        assert jsonio.encode_value(INF) == "inf"

    @pytest.mark.parametrize("raw,val", [(3, 3), ("5/10", Fraction(1, 2)), ("inf", INF), ("-7", -7)])
    def test_decode(self, raw, val):
        assert jsonio.decode_value(raw) == val

    @pytest.mark.parametrize("raw", ["-inf", "nan", "1/0", [1], None, True, "x"])
    def test_decode_rejects(self, raw):
        with pytest.raises(jsonio.FormatError):
            jsonio.decode_value(raw)


class TestRoundTrip:
    def test_all_kinds(self, A4t, sep2, S1):
        assert roundtrip(A4t) == A4t
        assert roundtrip(sep2) == sep2
        assert roundtrip(S1).points == S1.points
        s = SeparableFunction(((-1, [1, 0, 1]), (0, [0, "1/2"])))
        assert roundtrip(s) == s
        q = QuadraticFunction([[1]], ["-1/3"])
        assert roundtrip(q) == q
        assert np.array_equal(roundtrip(reversal_T(4)), reversal_T(4))

    def test_table_with_holes(self):
        f = TableFunction.from_values(IntBox((0, -1), (1, 0)), ["1/3", "inf", 2, "-5/2"])
        g = roundtrip(f)
        assert g == f and g.values() == f.values()

    def test_witness(self, S1, S2):
        w = Witness("midpoint", {"p": (0, 1), "q": (1, 0)}, Fraction(1, 2), INF, frame="lnat")
        assert jsonio.decode_witness(json.loads(json.dumps(jsonio.encode_witness(w)))) == w
        v = is_lnat_set(IndicatorSet([(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 2, 1)]))
        doc = json.loads(json.dumps(jsonio.encode_verdict(v)))
        assert set(doc) == {"holds", "witness", "checked"}
        assert jsonio.decode_witness(doc["witness"]) == v.witness
        assert jsonio.encode_verdict(is_multimodular(S1.materialize(IntBox.cube(-1, 1, 3))))["witness"] is None


class TestErrors:
    @pytest.mark.parametrize("doc", [
        [],
        {"kind": "cube"},
        {"kind": "table", "lower": [0], "upper": [1], "values": [0]},
        {"kind": "table", "lower": [0], "upper": [1]},
        {"kind": "table", "lower": ["a"], "upper": [1], "values": [0, 0]},
        {"kind": "quadratic", "matrix": []},
        {"kind": "set", "points": [[0], [0, 1]]},
        {"kind": "matrix", "entries": [["1/2"]]},
        {"kind": "separable", "pieces": [{"start": 0}]},
    ])
    def test_malformed(self, doc):
        with pytest.raises((jsonio.FormatError, ValueError)):
            jsonio.decode(doc)

    def test_bad_file(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        with pytest.raises(jsonio.FormatError):
            jsonio.load(str(p))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.one_of(st.fractions(max_denominator=50), st.just(INF)), min_size=1, max_size=12))
def test_table_roundtrip_property(vals):
    if all(v == INF for v in vals):
        vals[0] = Fraction(0)
    vals = [v if v == INF or abs(v) < 10**6 else Fraction(0) for v in vals]
    f = TableFunction.from_values(IntBox((0,), (len(vals) - 1,)), vals)
    assert roundtrip(f).values() == f.values()
