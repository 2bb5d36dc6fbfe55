"""Command-line interface: file formats, subcommands, exit codes."""

import json

import pytest

from admnet import Network, Partition, network_to_json
from admnet.cli import export_dot, main, parse_field_file
from conftest import RING6_PATTERNS


THREE_CELL_FIELD = """\
# three coupled scalar cells
vars: x1 x2 x3
f1 = x1 + x1^3
f2 = x2 + x2^2*x3
f3 = x3 + x1*x2*x3
"""

UNCOUPLED_FIELD = """\
vars: x1 x2
f1 = x1 + x1^3
f2 = x2 + x2^3
"""

THREE_CELL_ASSIGNMENT = {
    "cells": [
        {"cell": 1, "tails": [1, 1, 1], "vars": ["x", "y1", "y2", "y3"], "g": ["x + y1*y2*y3"]},
        {"cell": 2, "tails": [2, 2, 3], "vars": ["x", "y1", "y2", "y3"], "g": ["x + y1*y2*y3"]},
        {"cell": 3, "tails": [1, 2, 3], "vars": ["x", "y1", "y2", "y3"], "g": ["x + y1*y2*y3"]},
    ]
}


@pytest.fixture
def ring6_file(tmp_path, ring6):
    path = tmp_path / "ring6.json"
    path.write_text(json.dumps(network_to_json(ring6)))
    return str(path)


@pytest.fixture
def field_file(tmp_path):
    path = tmp_path / "three.field"
    path.write_text(THREE_CELL_FIELD)
    return str(path)


# ---------------------------------------------------------------------------
# Field file parsing
# ---------------------------------------------------------------------------


def test_parse_field_file_with_cells():
    text = "vars: x1 y1 x2 y2\ncells: (x1 y1)(x2 y2)\nf1 = y1\nf2 = -x1\nf3 = y2\nf4 = -x2\n"
    f = parse_field_file(text)
    assert f.n == 4
    assert f.cellization == ((0, 1), (2, 3))


def test_parse_field_file_requires_all_components():
    with pytest.raises(Exception):
        parse_field_file("vars: x1 x2\nf1 = x1\n")


def test_parse_field_file_rejects_garbage_line():
    with pytest.raises(Exception):
        parse_field_file("vars: x1\nnot a component\nf1 = x1\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def test_theta_uncoupled(tmp_path, capsys):
    path = tmp_path / "u.field"
    path.write_text(UNCOUPLED_FIELD)
    assert main(["theta", "--field", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_realize_three_cell(field_file, capsys):
    assert main(["realize", "--field", field_file]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["theta"] == 1
    assert len(report["iso_classes"]) == 2
    assert report["ode_classes"] == [[0, 1]]


def test_realize_with_assignment(field_file, tmp_path, capsys):
    apath = tmp_path / "a.json"
    apath.write_text(json.dumps(THREE_CELL_ASSIGNMENT))
    assert main(["realize", "--field", field_file, "--assignment", str(apath)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert len(report["iso_classes"]) == 1
    edges = report["iso_classes"][0]["network"]["edges"]
    assert len(edges) == 9


def test_synchrony_with_chimera_flags(ring6_file, capsys):
    assert main(["synchrony", "--network", ring6_file, "--chimera"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["patterns"]) == 31
    assert len(data["chimera"]) == 15
    assert len(RING6_PATTERNS) == 29  # nontrivial rows the lattice must contain


def test_synchrony_without_flag_omits_chimera(ring6_file, capsys):
    assert main(["synchrony", "--network", ring6_file]) == 0
    data = json.loads(capsys.readouterr().out)
    assert "chimera" not in data


def test_iso_and_ode_equiv(tmp_path, ring6, capsys):
    relabeled = ring6.relabel([1, 2, 3, 4, 5, 0])
    p1 = tmp_path / "a.json"
    p2 = tmp_path / "b.json"
    p1.write_text(json.dumps(network_to_json(ring6)))
    p2.write_text(json.dumps(network_to_json(relabeled)))
    assert main(["iso", "--network", str(p1), "--network", str(p2)]) == 0
    assert json.loads(capsys.readouterr().out)["isomorphic"] is True
    assert main(["ode-equiv", "--network", str(p1), "--network", str(p2)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["equivalent"] is True and len(out["witness"]) == 6


def test_aut_order(ring6_file, capsys):
    assert main(["aut", "--network", ring6_file]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["order"] == 48
    assert len(data["elements"]) == 48


def test_simulate_to_csv(tmp_path):
    out = tmp_path / "traj.csv"
    rc = main(
        ["simulate", "--vdp", "6", "--t-end", "0.1", "--dt", "0.001",
         "--seed", "3", "--out", str(out)]
    )
    assert rc == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("t,x1,")
    assert len(lines) == 102


def test_simulate_params_override(tmp_path):
    out = tmp_path / "traj.csv"
    rc = main(
        ["simulate", "--vdp", "6", "--t-end", "0.01", "--dt", "0.001",
         "--x0", ",".join(["0.1"] * 12), "--params", "b=1/2,eps=0.1",
         "--out", str(out)]
    )
    assert rc == 0


def test_export_dot_is_deterministic(ring6_file, capsys):
    assert main(["export", "--network", ring6_file, "--format", "dot"]) == 0
    first = capsys.readouterr().out
    assert main(["export", "--network", ring6_file, "--format", "dot"]) == 0
    assert capsys.readouterr().out == first
    assert first.startswith("digraph")
    assert "style=solid" in first


def test_export_dot_uses_style_per_type():
    g = Network(4, Partition(4, [(0, 2), (1, 3)]), [(0, 1, 0), (2, 3, 0), (1, 0, 1)])
    dot = export_dot(g)
    assert "style=solid" in dot and "style=dashed" in dot
    assert "shape=circle" in dot and "shape=box" in dot


def test_export_json_round_trip(ring6_file, capsys, ring6):
    from admnet import network_from_json

    assert main(["export", "--network", ring6_file, "--format", "json"]) == 0
    g = network_from_json(json.loads(capsys.readouterr().out))
    assert g.edges == ring6.edges


# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------


def test_missing_file_is_domain_error(capsys):
    assert main(["theta", "--field", "/nonexistent/f.field"]) == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_field_file_is_domain_error(tmp_path, capsys):
    path = tmp_path / "bad.field"
    path.write_text("vars: x1\nf1 = 2x1\n")
    assert main(["theta", "--field", str(path)]) == 1


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_ode_equiv_requires_two_networks(ring6_file, capsys):
    assert main(["ode-equiv", "--network", ring6_file]) == 1
