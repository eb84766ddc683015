import json
import math
from pathlib import Path

import pytest

import dg3d1d

DATA = Path(__file__).resolve().parents[2] / "data"


def test_tree_file_classification():
    g = dg3d1d.read_network(str(DATA / "tree_network.json"))
    assert len(g["vertices"]) == 8
    assert len(g["edges"]) == 7
    assert len(g["bifurcations"]) == 3
    assert sorted(g["boundary"]) == [0, 4, 5, 6, 7]


def test_bad_network_is_a_value_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({
        "vertices": [{"id": i, "x": i, "y": 0} for i in range(3)],
        "edges": [{"v0": 0, "v1": 99, "radius": 1}],
    }))
    with pytest.raises(ValueError, match=r"edges\[0\]\.v1"):
        dg3d1d.read_network(str(p))


def test_network_study_first_order():
    res = dg3d1d.mms_network([0.125, 0.0625, 0.03125])
    rows = res["rows"]
    assert rows[0]["dg_norm_rate"] is None
    assert abs(rows[-1]["dg_norm_rate"] - 1.0) < 0.1
    assert max(res["conservation"]) < 1e-8
    assert res["csv"].startswith("level,h,dg_norm,dg_norm_rate,flux_residual,flux_residual_rate\n")


def test_single_vessel_study_runs():
    res = dg3d1d.mms3d([2, 4])
    assert [r["level"] for r in res["rows"]] == ["2", "4"]
    assert res["rows"][1]["h1_3d"] < res["rows"][0]["h1_3d"]


def test_invalid_options_raise():
    with pytest.raises(ValueError, match="circle-points"):
        dg3d1d.mms3d([2], circle_points=2)


def test_heat_and_dissipation():
    res = dg3d1d.heat(n=2, final_time=0.2, steps=[2, 4])
    assert math.isfinite(res["rows"][1]["l2_3d_rate"])
    norms = dg3d1d.dissipation(n=3, tau=0.05, steps=5)
    assert len(norms) == 6
    assert all(b < a for a, b in zip(norms, norms[1:]))
