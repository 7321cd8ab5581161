import json
import math

import pytest

import earring


def test_words():
    assert earring.reduce([1, 2, -2, 3]) == [1, 3]
    assert [earring.enumerate(j) for j in (1, 2, 3, 9)] == [[1], [-1], [2], [3]]
    assert earring.index_of([3]) == 9
    assert earring.anchor(1) == [1, 2, 1, 2]
    assert earring.anchor_length(2) == 9
    assert earring.parse_word("1, -2") == [1, -2]
    assert earring.format_word([]) == "e"
    with pytest.raises(ValueError):
        earring.parse_word("0")


def test_graph():
    g = earring.Oracle()
    assert g.survives([])
    assert not g.survives([3])
    assert g.e_set([]) == [1, 2]
    assert g.island([]) is None
    assert g.island(earring.anchor(9)) == 9
    assert g.e_set(earring.anchor(9)) == [1, 2, 3]
    data = g.island_data(1)
    assert data["z_path"] == [[1, 2, 1, 2], [1, 2, 1, 2, 1]]


def test_lifting_and_witness():
    g = earring.Oracle(cache_bytes=0)
    assert g.in_k([3])
    assert not g.in_k([1])
    trace = g.lift([1, 3])
    assert trace["endpoint"] == [1]
    assert [s[1] for s in trace["steps"]] == ["tree", "loop"]
    w = g.witness([3])
    assert w["j"] == 9 and w["verdict"] and w["midpoint_check"]
    report = g.scan(4)
    assert report["ok"] and report["in_K"] > 0 and report["out_of_K"] > 0


def test_charts():
    g = earring.Oracle()
    assert g.q_point("e:e:3:0.5") == (3, 0.5)
    assert len(g.charts("e:e:1:0.3")) == 2
    assert g.atlas_check(200, 5)
    x, y = earring.planar(2, 0.25)
    assert math.isclose(x, 0.5) and math.isclose(y, 0.5)


def test_cli():
    code, out = earring.run(["--json", "in-k", "3"])
    assert code == 0
    assert json.loads(out)["output"]["verdict"] is True
    code, _ = earring.run(["in-k", "0"])
    assert code == 1
