from __future__ import annotations

import pytest

from fewdist.catalog import standard_catalog
from fewdist.errors import MixedRadicands, ParseError
from fewdist.formats import config_from_json, config_to_json, entry_to_json


@pytest.mark.parametrize("entry", standard_catalog()[:20:3], ids=lambda e: e.name)
def test_round_trip(entry):
    js = config_to_json(entry.payload)
    back = config_from_json(js)
    assert config_to_json(back) == js
    assert config_from_json(entry_to_json(entry)) is not None


@pytest.mark.parametrize(
    "obj, err",
    [
        ([], ParseError),
        ({"kind": "graph", "data": []}, ParseError),
        ({"kind": "sdm", "data": "x"}, ParseError),
        ({"kind": "sdm", "m": -1, "data": [["0"]]}, ParseError),
        ({"kind": "sdm", "data": [["0", "1"], ["2", "0"]]}, ParseError),
        ({"kind": "sdm", "m": 5, "data": [["0", {"a": "0", "b": "1", "m": 2}], [{"a": "0", "b": "1", "m": 2}, "0"]]}, MixedRadicands),
        ({"kind": "points", "data": [["1/0"]]}, ParseError),
    ],
)
def test_bad_inputs(obj, err):
    with pytest.raises(err):
        config_from_json(obj)
