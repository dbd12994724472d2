import pytest

from triwalk import tables
from triwalk.errors import ConfigError


def _sample():
    t = tables.Table(columns=["k", "l", "value", "label"])
    t.append(0, 2, 0.25, "a")
    t.append(1, 1, -3.0e-17, "b,with,commas")
    t.append(2, 0, 12345.678901234567, "c")
    return t


def test_float_formatting_17_significant_digits():
    assert tables.format_float(0.25) == "2.5000000000000000e-01"
    assert tables.format_float(-3.0) == "-3.0000000000000000e+00"
    assert float(tables.format_float(0.1)) == 0.1


def test_csv_round_trip_and_line_endings():
    text = tables.dumps(_sample(), "csv")
    assert "\r" not in text
    assert text.splitlines()[0] == "k,l,value,label"
    back = tables.loads(text, "csv")
    assert back.columns == _sample().columns
    assert back.rows == _sample().rows


def test_json_round_trip():
    text = tables.dumps(_sample(), "json")
    back = tables.loads(text, "json")
    assert back.columns == _sample().columns
    assert back.rows == _sample().rows


def test_json_is_valid_json():
    import json

    doc = json.loads(tables.dumps(_sample(), "json"))
    assert doc["columns"] == ["k", "l", "value", "label"]
    assert doc["rows"][0] == [0, 2, 0.25, "a"]


def test_type_fidelity():
    t = tables.Table(columns=["a", "b"])
    t.append(3, 3.0)
    for fmt in tables.FORMATS:
        back = tables.loads(tables.dumps(t, fmt), fmt)
        assert isinstance(back.rows[0][0], int)
        assert isinstance(back.rows[0][1], float)


def test_deterministic_output():
    for fmt in tables.FORMATS:
        assert tables.dumps(_sample(), fmt) == tables.dumps(_sample(), fmt)


def test_read_table_file(tmp_path):
    for fmt, name in (("csv", "t.csv"), ("json", "t.json")):
        path = tmp_path / name
        path.write_text(tables.dumps(_sample(), fmt), encoding="utf-8")
        back = tables.read_table(str(path))
        assert back.rows == _sample().rows


def test_unknown_format_rejected():
    with pytest.raises(ConfigError):
        tables.dumps(_sample(), "yaml")
    with pytest.raises(ConfigError):
        tables.loads("x", "yaml")


def test_row_width_checked():
    t = tables.Table(columns=["a", "b"])
    with pytest.raises(ValueError):
        t.append(1)
