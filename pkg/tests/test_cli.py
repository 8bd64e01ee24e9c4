"""End-to-end tests of the command line front end."""

import json

from finitegeo import cli


def test_group_info_payload():
    result = cli.run(["group", "info", "S3"])
    assert result.status == 0
    payload = result.payload
    assert payload["schema"] == 1
    assert payload["order"] == 6
    assert payload["abelian"] is False
    assert payload["center"] == ["e"]
    assert payload["classes"] == [["e"], ["b", "a", "c"], ["ab", "ba"]]


def test_group_info_trivial_group():
    result = cli.run(["group", "info", "Z1"])
    assert result.status == 0
    assert result.payload["order"] == 1
    assert result.payload["classes"] == [["e"]]


def test_group_from_json_file(tmp_path):
    doc = {"table": [[0, 1], [1, 0]], "names": ["e", "t"], "label": "flip"}
    path = tmp_path / "group.json"
    path.write_text(json.dumps(doc))
    result = cli.run(["group", "info", f"@{path}"])
    assert result.status == 0
    assert result.payload["label"] == "flip"
    assert result.payload["names"] == ["e", "t"]


def test_calculi_list_counts():
    result = cli.run(["calculi", "list", "--group", "Z3"])
    assert result.status == 0
    assert result.payload["count"] == 4
    result = cli.run(["calculi", "list", "--group", "S3", "--bicovariant"])
    assert result.payload["count"] == 4
    hatgs = [sorted(c["hatG"]) for c in result.payload["calculi"]]
    assert sorted(["a", "b", "c"]) in hatgs
    assert sorted(["ab", "ba"]) in hatgs


def test_calculus_show_with_dot():
    result = cli.run(
        ["calculus", "show", "--group", "Z3", "--hatg", "a", "--dot", "-"]
    )
    assert result.status == 0
    assert result.payload["left_covariant"] is True
    assert result.payload["bicovariant"] is True
    assert ["e", "a2"] in result.payload["edges"]
    assert "-" in result.dots
    assert result.dots["-"].startswith("digraph")


def test_braid_order_matches_documented_example():
    result = cli.run(["braid", "order", "--group", "S3", "--hatg", "all"])
    assert result.status == 0
    assert result.payload == {"schema": 1, "order": 12}


def test_braid_check_and_decompose():
    result = cli.run(["braid", "check", "--group", "S3", "--hatg", "class:(12)"])
    assert result.payload == {"schema": 1, "braid_equation": True}
    result = cli.run(["braid", "decompose", "--group", "S3", "--hatg", "all"])
    assert tuple(result.payload["dims"]) == (11, 14, 4, 21)


def test_connection_solve_family_and_member():
    result = cli.run(
        [
            "connection",
            "solve",
            "--group",
            "S3",
            "--hatg",
            "a,b,c",
            "--bi-invariant",
            "--torsion-free",
            "--params=-2,0,0",
        ]
    )
    assert result.status == 0
    assert result.payload["free_parameters"] == 3
    named = cli.run(
        ["connection", "named", "--group", "S3", "--hatg", "a,b,c", "--name", "c"]
    )
    assert result.payload["member"]["gamma"] == named.payload["gamma"]


def test_connection_roundtrip_through_json(tmp_path):
    named = cli.run(
        ["connection", "named", "--group", "Z4", "--hatg", "a,a2", "--name", "c"]
    )
    path = tmp_path / "conn.json"
    path.write_text(json.dumps(named.payload))
    result = cli.run(
        [
            "connection",
            "analyze",
            "--group",
            "Z4",
            "--hatg",
            "a,a2",
            "--connection",
            str(path),
        ]
    )
    assert result.status == 0
    assert result.payload["torsion_free"] is True
    assert result.payload["extensible"] is True
    assert result.payload["pointwise_extensible"] is False


def test_connection_analyze_named_sigma():
    result = cli.run(
        [
            "connection",
            "analyze",
            "--group",
            "S3",
            "--hatg",
            "all",
            "--name",
            "sigma",
        ]
    )
    assert result.status == 0
    assert result.payload["curvature_zero"] is True
    assert result.payload["left_invariant"] is True


def test_tensors_invariant_with_pattern():
    argv = [
        "tensors",
        "invariant",
        "--group",
        "S3",
        "--hatg",
        "all",
        "--kind",
        "s-sym",
        "--pattern",
        "--order",
        "a,b,c,ab,ba",
    ]
    result = cli.run(argv)
    assert result.status == 0
    assert result.payload["dimension"] == 11
    pattern = result.payload["pattern"]
    assert pattern["order"] == ["a", "b", "c", "ab", "ba"]
    assert len(pattern["matrix"]) == 5
    assert pattern["matrix"][0] == ["p0", "p1", "p2", "p3", "p4"]
    again = cli.run(argv)
    assert json.dumps(again.payload, sort_keys=True) == json.dumps(
        result.payload, sort_keys=True
    )


def test_metric_check_routes(tmp_path):
    doc = {"schema": 1, "coeffs": {"a|a": "1", "b|b": "1", "c|c": "1"}}
    path = tmp_path / "metric.json"
    path.write_text(json.dumps(doc))
    base = ["metric", "check", "--group", "S3", "--hatg", "a,b,c",
            "--metric", str(path)]
    result = cli.run(base)
    assert result.status == 0
    assert result.payload["compatible"] is True
    assert result.payload["routes_agree"] is True
    assert result.payload["s_symmetric"] is True
    assert result.payload["left_invariant"] is True
    result = cli.run(base + ["--name", "c"])
    assert result.payload["compatible"] is False
    assert result.payload["routes_agree"] is True


def test_action_orbit_listings_use_one_based_points():
    result = cli.run(["action", "orbits", "--set", "3", "--group-generators", "(12)"])
    assert result.status == 0
    assert result.payload["orbits"] == [
        [[1, 2], [2, 1]],
        [[1, 3], [2, 3]],
        [[3, 1], [3, 2]],
    ]
    result = cli.run(["action", "orbits", "--set", "3", "--group-generators", "(123)"])
    assert result.payload["orbits"] == [
        [[1, 2], [2, 3], [3, 1]],
        [[1, 3], [2, 1], [3, 2]],
    ]


def test_action_irreducible_calculi_with_dot():
    result = cli.run(
        [
            "action",
            "calculi",
            "--set",
            "3",
            "--group-generators",
            "(12)",
            "--irreducible",
            "--dot",
            "-",
        ]
    )
    assert result.status == 0
    assert result.payload["count"] == 3
    assert result.payload["calculi"] == [
        [[1, 3], [2, 3], [3, 1], [3, 2]],
        [[1, 2], [2, 1], [3, 1], [3, 2]],
        [[1, 2], [1, 3], [2, 1], [2, 3]],
    ]
    assert result.dots["-"].count("digraph") == 3


def test_usage_errors_exit_with_two():
    assert cli.run(["group", "info", "Q17"]).status == 2
    assert cli.run(["braid", "order", "--group", "Z3", "--hatg", "e"]).status == 2
    result = cli.run(["connection", "analyze", "--group", "Z3", "--hatg", "a"])
    assert result.status == 2
    assert "error" in result.payload


def test_domain_errors_exit_with_one(monkeypatch):
    monkeypatch.setenv("FINITEGEO_MAX_ORDER", "4")
    result = cli.run(["group", "info", "S4"])
    assert result.status == 1
    assert "error" in result.payload


def test_main_prints_json(capsys):
    status = cli.main(["group", "info", "Z2", "--json"])
    assert status == 0
    out = capsys.readouterr().out
    payload = json.loads(out)
    assert payload["order"] == 2


def test_main_quiet_silences_payload(capsys):
    status = cli.main(["group", "info", "Z2", "--quiet"])
    assert status == 0
    assert capsys.readouterr().out == ""


def test_main_reports_errors_on_stderr(capsys):
    status = cli.main(["group", "info", "Q17"])
    assert status == 2
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error" in captured.err


def test_main_plain_rendering_lists_rows(capsys):
    status = cli.main(
        [
            "tensors",
            "invariant",
            "--group",
            "S3",
            "--hatg",
            "all",
            "--kind",
            "s-sym",
            "--pattern",
            "--order",
            "a,b,c,ab,ba",
        ]
    )
    assert status == 0
    out = capsys.readouterr().out
    assert "- p0  p1  p2  p3  p4" in out
