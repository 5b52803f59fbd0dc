import json
from pathlib import Path

import pytest

from noksurf.cli import main

CASES_DIR = Path(__file__).resolve().parent.parent / "cases"

ROUND_TRIPS = [
    ("polygon", "ex1_on_point"),
    ("ray-profile", "ex1_on_point"),
    ("polygon", "ex1_off_point"),
    ("polygon", "ex2_negative_flag"),
    ("polygon", "ex3_tight"),
    ("polygon", "p2_cubic"),
    ("check-lattice", "check_lattice_chain"),
    ("zariski", "zariski_a2"),
    ("invariants", "invariants_chain"),
    ("scan-vertex-counts", "scan_chain3"),
    ("flag-search", "flag_search_chain"),
    ("toric-crosscheck", "toric_p2_crosscheck"),
    ("toric-crosscheck", "toric_f1_crosscheck"),
    ("toric-polygon", "toric_f1_polygon"),
]


@pytest.mark.parametrize("command,name", ROUND_TRIPS)
def test_round_trip_byte_exact(command, name, capsys):
    doc = CASES_DIR / f"{name}.json"
    expected = (CASES_DIR / "expected" / f"{name}.{command}.json").read_text()
    assert main([command, str(doc)]) == 0
    assert capsys.readouterr().out == expected


def test_ex1_vertices_content(capsys):
    assert main(["polygon", str(CASES_DIR / "ex1_on_point.json")]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [(v["t"], v["s"]) for v in payload["vertices"]] == [
        ("0", "0"),
        ("1", "0"),
        ("3/2", "1/2"),
        ("0", "5"),
    ]
    assert payload["area"] == "4"
    assert payload["bounds"]["ok"] is True


def test_text_format(capsys):
    assert main(["check-lattice", str(CASES_DIR / "check_lattice_chain.json"), "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "(1,2,0) OK"


def test_missing_file_exit_2(capsys):
    assert main(["polygon", "/nonexistent/nope.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_malformed_json_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": 1,,}')
    assert main(["polygon", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line" in err and "column" in err


def test_schema_field_required(tmp_path, capsys):
    doc = tmp_path / "noschema.json"
    doc.write_text("{}")
    assert main(["check-lattice", str(doc)]) == 2
    assert "schema" in capsys.readouterr().err


def test_field_diagnostics(tmp_path, capsys):
    doc = tmp_path / "badfield.json"
    doc.write_text(
        json.dumps(
            {
                "schema": 1,
                "surface": {
                    "rank": 2,
                    "matrix": [[1, 0], [0, 0.5]],
                    "curves": [],
                    "ample_witness": [1, 0],
                },
            }
        )
    )
    assert main(["check-lattice", str(doc)]) == 2
    assert "surface.matrix[1][1]" in capsys.readouterr().err


def test_model_error_exit_2(tmp_path, capsys):
    doc = tmp_path / "nonbig.json"
    doc.write_text(
        json.dumps(
            {
                "schema": 1,
                "surface": {
                    "rank": 2,
                    "matrix": [[1, 0], [0, -1]],
                    "curves": [{"label": "E", "class": [0, 1]}],
                    "ample_witness": [2, -1],
                },
                "divisor": [0, 1],
                "flag": {"curve": "E"},
            }
        )
    )
    assert main(["polygon", str(doc)]) == 2


def test_oracle_mismatch_exit_3(tmp_path, capsys, monkeypatch):
    import noksurf.cli as cli_mod
    from noksurf.errors import OracleMismatch

    def boom(doc, args):
        raise OracleMismatch("forced")

    monkeypatch.setitem(cli_mod._COMMANDS, "toric-crosscheck", boom)
    assert main(["toric-crosscheck", str(CASES_DIR / "toric_p2_crosscheck.json")]) == 3


def test_svg_option_writes_file(tmp_path, capsys):
    out = tmp_path / "poly.svg"
    rc = main(
        ["polygon", str(CASES_DIR / "ex1_on_point.json"), "--svg", str(out)]
    )
    assert rc == 0
    assert out.exists()
    payload = json.loads(capsys.readouterr().out)
    assert payload["svg"] == str(out)


def test_render_svg_command(tmp_path, capsys):
    out = tmp_path / "render.svg"
    rc = main(
        [
            "render-svg",
            str(CASES_DIR / "ex3_tight.json"),
            "--svg",
            str(out),
            "--width",
            "300",
        ]
    )
    assert rc == 0
    text = out.read_text()
    assert text.count("<circle") == 5
    assert 'width="300"' in text


def test_non_polygon_command_rejects_svg(capsys):
    rc = main(
        ["invariants", str(CASES_DIR / "invariants_chain.json"), "--svg", "x.svg"]
    )
    assert rc == 2


def test_scan_results_verified(capsys):
    assert main(["scan-vertex-counts", str(CASES_DIR / "scan_chain3.json")]) == 0
    payload = json.loads(capsys.readouterr().out)
    rows = payload["realizations"]
    assert [r["v"] for r in rows] == [3, 4, 5, 6, 7]
    assert all(r["verified"] for r in rows)
    assert all(r["vertex_count"] == r["v"] for r in rows)


def test_scan_single_target_v(tmp_path, capsys):
    doc = json.loads((CASES_DIR / "scan_chain3.json").read_text())
    doc["target_v"] = 6
    path = tmp_path / "one.json"
    path.write_text(json.dumps(doc))
    assert main(["scan-vertex-counts", str(path)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [r["v"] for r in payload["realizations"]] == [6]
    assert payload["realizations"][0]["verified"]
