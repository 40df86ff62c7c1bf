"""CLI verbs, exit codes, determinism, and the acceptance report artifacts."""

import json

import pytest

from monoproj import acceptance
from monoproj import polytope as pt
from monoproj.cli import main
from monoproj.polynomial import Poly, gen_hc, gen_permanent


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_gen_round_trips_and_is_deterministic(capsys):
    code, out1 = _run(capsys, "gen", "--family", "perm", "--n", "3")
    assert code == 0
    assert Poly.from_jsonable(json.loads(out1)) == gen_permanent(3)
    code, out2 = _run(capsys, "gen", "--family", "perm", "--n", "3")
    assert out1 == out2


def test_gen_writes_out_file(tmp_path, capsys):
    out = tmp_path / "hc.json"
    code, _ = _run(capsys, "gen", "--family", "hc", "--n", "3",
                   "--out", str(out))
    assert code == 0
    assert Poly.from_jsonable(json.loads(out.read_text())) == gen_hc(3)


def test_eval(tmp_path, capsys):
    poly = _write(tmp_path / "p.json", gen_permanent(2).to_jsonable())
    point = _write(tmp_path / "pt.json",
                   {"x_1_1": "1", "x_1_2": "2", "x_2_1": "3", "x_2_2": "4"})
    code, out = _run(capsys, "eval", "--poly", poly, "--point", point)
    assert code == 0
    assert json.loads(out)["value"] == "10"  # 1*4 + 2*3


def test_project_simple(tmp_path, capsys):
    poly = _write(tmp_path / "p.json", gen_permanent(2).to_jsonable())
    pi = {"semiring": "real",
          "source_vars": ["x_1_1", "x_1_2", "x_2_1", "x_2_2"],
          "target_vars": ["a"],
          "assign": [{"var": "a"}, {"const": "0"}, {"const": "0"}, {"var": "a"}]}
    code, out = _run(capsys, "project", "--poly", poly,
                     "--map", _write(tmp_path / "pi.json", pi))
    assert code == 0
    f = Poly.from_jsonable(json.loads(out))
    assert f.terms == (((2,), 1),)


def test_newton_facets_pipeline(tmp_path, capsys):
    poly = _write(tmp_path / "p.json", gen_permanent(3).to_jsonable())
    code, out = _run(capsys, "newton", "--poly", poly)
    assert code == 0
    vpoly = _write(tmp_path / "v.json", json.loads(out))
    code, out = _run(capsys, "facets", "--vpoly", vpoly)
    assert code == 0
    h = json.loads(out)
    assert len(h["ineqs"]) == 9
    assert len(h["eqs"]) == 5
    # and back: vertex enumeration recovers the 6 permutation matrices
    hpoly = _write(tmp_path / "h.json", h)
    code, out = _run(capsys, "vertices", "--hpoly", hpoly)
    assert code == 0
    assert len(json.loads(out)["vertices"]) == 6


def test_hull_face_map_verbs(tmp_path, capsys):
    pts = _write(tmp_path / "pts.json",
                 {"dim": 2, "points": [["0", "0"], ["2", "0"], ["0", "2"],
                                       ["1", "1"], ["1/2", "1/2"]]})
    code, out = _run(capsys, "hull", "--points", pts)
    assert code == 0
    assert len(json.loads(out)["vertices"]) == 3

    vpoly = _write(tmp_path / "v.json", json.loads(out))
    code, out = _run(capsys, "face", "--vpoly", vpoly, "--coords", "0")
    assert code == 0
    assert json.loads(out)["vertices"] == [["0", "0"], ["0", "2"]]

    mat = _write(tmp_path / "m.json", {"L": [["1", "1"]], "t": ["0"]})
    code, out = _run(capsys, "map", "--vpoly", vpoly, "--matrix", mat)
    assert code == 0
    assert json.loads(out)["vertices"] == [["0"], ["2"]]


def test_polytope_gen_and_xc(tmp_path, capsys):
    code, out = _run(capsys, "polytope", "gen", "--name", "birkhoff", "--n", "3")
    assert code == 0
    vpoly = _write(tmp_path / "b3.json", json.loads(out))
    code, out = _run(capsys, "xc-bounds", "--vpoly", vpoly)
    assert code == 0
    rep = json.loads(out)
    assert rep["lb"] == 6 and rep["ub"] == 6
    assert rep["rectangle_cover_exact"] is True
    code, out = _run(capsys, "slack", "--vpoly", vpoly)
    assert code == 0
    assert len(json.loads(out)["entries"]) == 9


def test_lemma_verb(tmp_path, capsys):
    g = _write(tmp_path / "g.json", gen_permanent(2).to_jsonable())
    pi = {"semiring": "real",
          "source_vars": ["x_1_1", "x_1_2", "x_2_1", "x_2_2"],
          "target_vars": ["a"],
          "assign": [{"var": "a"}, {"const": "0"}, {"const": "0"}, {"var": "a"}]}
    code, out = _run(capsys, "lemma", "--g", g,
                     "--pi", _write(tmp_path / "pi.json", pi))
    assert code == 0
    cert = json.loads(out)
    assert cert["image_ok"] is True
    assert cert["kernel"] == ["x_1_2", "x_2_1"]
    # the order-2 Birkhoff polytope is a segment: two facets
    assert cert["c_of_source"] == 2


def test_search_verb(tmp_path, capsys):
    target = {"semiring": "real", "vars": ["a", "b"],
              "terms": [{"coeff": "1", "exps": [1, 1]}]}
    poly = _write(tmp_path / "t.json", target)
    code, out = _run(capsys, "search", "--poly", poly, "--m", "2")
    assert code == 0
    assert json.loads(out)["found"] is True


def test_converse_verb_and_ceiling_exit(tmp_path, capsys):
    seg = pt.VPolytope.from_vertices(1, [[0], [1]])
    vpoly = _write(tmp_path / "seg.json", seg.to_jsonable())
    ell = _write(tmp_path / "ell.json", {"L": [["0", "1", "0", "0"]]})
    code, out = _run(capsys, "converse", "--vpoly", vpoly, "--map", ell,
                     "--m", "2")
    assert code == 0
    assert len(json.loads(out)["f"]["terms"]) == 2
    # same input under an impossible degree bound: exit 3 (ceiling)
    code, _ = _run(capsys, "converse", "--vpoly", vpoly, "--map", ell,
                   "--m", "2", "--degree-bound", "0")
    assert code == 3


def test_xc_consequence_verb(tmp_path, capsys):
    f = _write(tmp_path / "f.json", gen_hc(3).to_jsonable())
    g = _write(tmp_path / "g.json", gen_permanent(3).to_jsonable())
    code, out = _run(capsys, "xc-consequence", "--f", f, "--g", g)
    assert code == 0
    rep = json.loads(out)
    assert rep["monotone_projection_possible"] is True
    assert rep["c_of_source"] == 9


def test_usage_errors_exit_2(tmp_path, capsys):
    # missing input file
    code, _ = _run(capsys, "newton", "--poly", str(tmp_path / "absent.json"))
    assert code == 2
    # malformed JSON
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _ = _run(capsys, "newton", "--poly", str(bad))
    assert code == 2
    # unknown family is rejected by the argument parser itself
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--family", "nope", "--n", "3"])
    assert exc.value.code == 2


def test_replay_acceptance_filter_and_report(tmp_path, capsys):
    out_dir = tmp_path / "report"
    code, out = _run(capsys, "replay-acceptance", "--filter", "xc-sanity",
                     "--out", str(out_dir))
    assert code == 0
    assert "xc-sanity" in out and "pass" in out
    csv = (out_dir / "acceptance.csv").read_text().splitlines()
    assert csv[0] == "criterion,status,seconds,message"
    assert csv[1].startswith("xc-sanity,pass,")
    assert (out_dir / "acceptance.png").stat().st_size > 0


def test_replay_acceptance_empty_filter_exits_2(capsys):
    code, _ = _run(capsys, "replay-acceptance", "--filter", "no-such-criterion")
    assert code == 2


def test_replay_acceptance_failure_exits_1(capsys, monkeypatch):
    def boom():
        raise AssertionError("deliberate failure")

    monkeypatch.setattr(acceptance, "CRITERIA", [("always-fails", boom)])
    code, out = _run(capsys, "replay-acceptance")
    assert code == 1
    assert "FAIL" in out and "deliberate failure" in out
