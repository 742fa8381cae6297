import io
import json
import math
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from fermigraph.weights import (WeightFileError, WeightSet, box_alpha, box_weights, dump_weights, load_weights,
                                parse_weight_source, random_weights, save_weights, uniform_weights)

DATA = Path(__file__).parent / "data"


def test_uniform_and_degree():
    w = uniform_weights(4, 2.5)
    assert w.alphas == (2.5, 2.5, 2.5)
    assert w.n == 4 and w.d == 7.5
    assert w[1] == 2.5
    with pytest.raises(IndexError):
        w[4]


def test_box_alpha_value():
    assert box_alpha(3, 1.0) == pytest.approx(14 * math.pi**2, rel=1e-15)
    assert box_alpha(2, 2.0) == pytest.approx(math.pi**2 * 30 / 48, rel=1e-15)
    w = box_weights(5, 0.5)
    assert w.provenance == "box" and w.l_or_omega == 0.5
    assert len(set(w.alphas)) == 1


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_nonpositive_or_nonfinite_alpha_rejected(bad):
    with pytest.raises(ValueError):
        WeightSet((1.0, bad))


def test_random_weights_reproducible_and_in_range():
    a = random_weights(6, 3)
    assert a == random_weights(6, 3)
    assert a != random_weights(6, 4)
    assert all(0.1 <= x <= 10.0 for x in a.alphas)


def test_json_round_trip_bit_exact(tmp_path):
    w = random_weights(7, 11)
    path = save_weights(w, tmp_path / "w.json")
    back = load_weights(path)
    assert back.alphas == w.alphas
    assert dump_weights(back) == path.read_text()


def test_csv_round_trip_bit_exact(tmp_path):
    w = random_weights(5, 2)
    path = save_weights(w, tmp_path / "w.csv")
    back = load_weights(path)
    assert back.alphas == w.alphas
    assert dump_weights(back, "csv") == path.read_text()


@pytest.mark.parametrize("path", sorted((DATA / "weights").glob("*.json")) + sorted((DATA / "weights_csv").glob("*.csv")),
                         ids=lambda p: p.name)
def test_fixture_files_round_trip(path):
    w = load_weights(path)
    assert dump_weights(w, path.suffix[1:]) == path.read_text()
    assert w.alphas == tuple(1.0 / k for k in range(1, w.n))


@pytest.mark.parametrize("text, fragment", [
    ('{"n": 3, "alphas": [1.0]}', "expected n-1 = 2"),
    ('{"n": 3}', "missing field 'alphas'"),
    ('{"n": 3, "alphas": [1.0, -2]}', "alpha_2"),
    ('{"n": 3, "alphas": [1.0, "x"]}', "alpha_2"),
    ('{"n": 1.5, "alphas": []}', "field 'n'"),
    ('{"n": 3, "alphas": [1.0,\n 2.0,]}', "line 2"),
    ('[1, 2]', "top level"),
])
def test_json_errors_name_the_field(text, fragment):
    with pytest.raises(WeightFileError, match=fragment.replace("(", r"\(").replace(")", r"\)")):
        load_weights(io.StringIO(text), "json")


@pytest.mark.parametrize("text, fragment", [
    ("k,alpha\n1,1.0\n3,2.0\n", "line 3"),
    ("k,alpha\n1,1.0\n2,0\n", "line 3"),
    ("k,beta\n1,1.0\n", "line 1"),
    ("# n: 4\nk,alpha\n1,1.0\n", "declares n=4"),
    ("k,alpha\n", "no data rows"),
    ("k,alpha\n1,1.0,2\n", "expected 2 fields"),
])
def test_csv_errors_name_the_line(text, fragment):
    with pytest.raises(WeightFileError, match=fragment):
        load_weights(io.StringIO(text), "csv")


def test_missing_file_is_a_weight_error(tmp_path):
    with pytest.raises(WeightFileError):
        load_weights(tmp_path / "nope.json")


def test_parse_weight_source_kinds(tmp_path):
    assert parse_weight_source("uniform:2", 3).alphas == (2.0, 2.0)
    assert parse_weight_source("box:1", 3).alphas[0] == box_alpha(3, 1.0)
    assert parse_weight_source("random:5", 4) == random_weights(4, 5)
    save_weights(uniform_weights(4, 3.0), tmp_path / "w4.json")
    assert parse_weight_source(f"file:{tmp_path}/w{{n}}.json", 4).alphas == (3.0,) * 3
    assert parse_weight_source(f"file:{tmp_path}", 4).n == 4
    with pytest.raises(WeightFileError):
        parse_weight_source(f"file:{tmp_path}/w4.json", 5)
    with pytest.raises(WeightFileError):
        parse_weight_source(f"file:{tmp_path}", 6)
    for bad in ("uniform", "magic:1"):
        with pytest.raises(ValueError):
            parse_weight_source(bad, 3)


@given(st.lists(st.floats(min_value=1e-300, max_value=1e300, allow_nan=False, allow_infinity=False),
                min_size=1, max_size=12))
def test_any_positive_alphas_round_trip_exactly(alphas):
    w = WeightSet(tuple(alphas), provenance="file")
    for fmt in ("json", "csv"):
        back = load_weights(io.StringIO(dump_weights(w, fmt)), fmt)
        assert back.alphas == w.alphas
    assert json.loads(dump_weights(w))["n"] == len(alphas) + 1
