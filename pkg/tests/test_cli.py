"""End-to-end tests for the command-line interface and its report contract."""

from __future__ import annotations

import json
import os

import pytest

from affpi0.cli import run


@pytest.fixture()
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    cubic = write("cubic.json", {"field": "Q", "vars": ["x"],
                                 "relations": ["x^3 - x"]})
    idem = write("idem.json", {"field": "Q", "vars": ["t"],
                               "relations": ["t^2 - t"]})
    f3t = write("f3t.json", {"field": {"p": 3}, "vars": ["t"],
                             "relations": ["t^2 - 1"]})
    f3x = write("f3x.json", {"field": {"p": 3}, "vars": ["x"],
                             "relations": ["x^2 - 1"]})
    rat = write("rat.json", {"field": "Q", "vars": []})
    f0 = write("f0.json", {"source": "idem.json", "target": "rat.json",
                           "images": ["0"]})
    g1 = write("g1.json", {"source": "idem.json", "target": "rat.json",
                           "images": ["1"]})
    return {"tmp": tmp_path, "cubic": cubic, "idem": idem,
            "f3t": f3t, "f3x": f3x, "f0": f0, "g1": g1}


def run_json(argv, capsys):
    code = run(["--format", "json"] + argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_alg_gb_and_nf(files, capsys):
    code, rep = run_json(["alg", "gb", files["cubic"]], capsys)
    assert code == 0
    assert rep["result"]["basis"] == ["x^3 - x"]
    code, rep = run_json(["alg", "nf", files["cubic"], "--poly", "x^4"], capsys)
    assert code == 0 and rep["result"]["normal_form"] == "x^2"


def test_alg_points_and_input_error(files, capsys):
    code, rep = run_json(["alg", "points", files["f3t"]], capsys)
    assert code == 0 and rep["result"]["count"] == 2
    bad = files["tmp"] / "bad.json"
    bad.write_text("{not json")
    code, rep = run_json(["alg", "gb", str(bad)], capsys)
    assert code == 2


def test_hom_check_and_enum(files, capsys):
    code, rep = run_json(["hom", "check", files["f0"]], capsys)
    assert code == 0 and rep["result"]["valid"]
    code, rep = run_json(["hom", "enum", files["f3t"], files["f3x"],
                          "--deg", "1"], capsys)
    assert code == 0 and rep["result"]["count"] == 4


def test_map_present_with_sidecar(files, capsys):
    out = str(files["tmp"] / "m.json")
    code, rep = run_json(["map", "present", files["f3t"], files["f3x"],
                          "--trunc", "1", "-o", out], capsys)
    assert code == 0
    assert rep["result"]["relation_count"] == 2
    assert os.path.exists(out)
    assert os.path.exists(str(files["tmp"] / "m.zvars.json"))
    sidecar = json.loads((files["tmp"] / "m.zvars.json").read_text())
    assert {entry["generator"] for entry in sidecar} == {"t"}


def test_map_points_crosscheck(files, capsys):
    code, rep = run_json(["map", "points", files["f3t"], files["f3x"],
                          "--trunc", "1"], capsys)
    assert code == 0
    assert rep["result"]["hom_count"] == rep["result"]["point_count"] == 4


def test_homotopy_search_negative(files, capsys):
    code, rep = run_json(["homotopy", "search", files["f0"], files["g1"],
                          "--xdeg", "3", "--bdeg", "3"], capsys)
    assert code == 0
    assert rep["result"]["status"] == "none-within-bounds"


def test_homotopy_search_found_writes_certificate(files, capsys, tmp_path):
    free_t = tmp_path / "freet.json"
    free_t.write_text(json.dumps({"field": "Q", "vars": ["t"],
                                  "relations": []}))
    free_u = tmp_path / "freeu.json"
    free_u.write_text(json.dumps({"field": "Q", "vars": ["u"],
                                  "relations": []}))
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"source": "freet.json", "target": "freeu.json",
                             "images": ["0"]}))
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"source": "freet.json", "target": "freeu.json",
                             "images": ["u"]}))
    cert = tmp_path / "cert.json"
    code, rep = run_json(["homotopy", "search", str(f), str(g),
                          "--xdeg", "1", "--bdeg", "1", "-o", str(cert)],
                         capsys)
    assert code == 0 and rep["result"]["status"] == "found"
    doc = json.loads(cert.read_text())
    assert doc["images"] == ["u*x"]
    code, rep = run_json(["homotopy", "verify", str(f), str(g), str(cert)],
                         capsys)
    assert code == 0 and rep["result"]["verified"]


def test_pi0_all_methods(files, capsys):
    code, rep = run_json(["pi0", files["cubic"], "--method", "all",
                          "--deg", "2", "--tower", "2"], capsys)
    assert code == 0
    res = rep["result"]
    assert res["derham"]["dimension"] == 3
    assert res["derham"]["component_count"] == 3
    assert res["equalizer"]["dimension"] == 3
    assert res["idempotent"]["count"] == 8
    assert res["idempotent"]["primitive_count"] == 3


def test_derham_h0_and_integration(files, capsys):
    code, rep = run_json(["derham", "h0", files["cubic"], "--deg", "2"],
                         capsys)
    assert code == 0 and rep["result"]["dimension"] == 3
    code, rep = run_json(["derham", "check-integration", files["idem"]],
                         capsys)
    assert code == 0 and rep["result"]["ok"]


def test_sing_h0_and_complex(files, capsys):
    code, rep = run_json(["sing", "h0", files["idem"], "--tower", "2",
                          "--deg", "2"], capsys)
    assert code == 0
    assert [lvl["dimension"] for lvl in rep["result"]["levels"]] == [2, 2]
    code, rep = run_json(["sing", "complex", files["idem"], "--levels", "2",
                          "--trunc", "1", "--deg", "2"], capsys)
    assert code == 0
    res = rep["result"]
    assert res["dd_zero"] and res["cosimplicial_identities"]
    assert res["h0_dimension"] == 2 and res["h1_dimension"] == 0


def test_verify_lemmas_and_only(files, capsys):
    code, rep = run_json(["verify", "lemmas"], capsys)
    assert code == 0 and rep["result"]["ok"]
    code, rep = run_json(["verify", "lemmas", "--only", "rotation"], capsys)
    assert code == 0


def test_verify_laws(files, capsys):
    for law in ("exp", "tensor", "dsum"):
        code, rep = run_json(["verify", "law", law], capsys)
        assert code == 0 and rep["result"]["ok"], law


def test_reports_deterministic_and_schema(files, capsys):
    code1, rep1 = run_json(["pi0", files["idem"], "--deg", "2"], capsys)
    code2, rep2 = run_json(["pi0", files["idem"], "--deg", "2"], capsys)
    rep1.pop("timing_ms")
    rep2.pop("timing_ms")
    assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)
    assert rep1["schema"] == 1
    assert "deg" in rep1["bounds"] and "tower" in rep1["bounds"]


def test_cache_roundtrip(files, capsys, monkeypatch, tmp_path):
    cache = tmp_path / "cache"
    monkeypatch.setenv("AFFPI0_CACHE", str(cache))
    code, rep1 = run_json(["alg", "gb", files["cubic"]], capsys)
    assert code == 0 and not rep1["result"]["cached"]
    code, rep2 = run_json(["alg", "gb", files["cubic"]], capsys)
    assert code == 0 and rep2["result"]["cached"]
    assert rep1["result"]["basis"] == rep2["result"]["basis"]
    # cross-key isolation: a different algebra gets its own entry
    code, rep3 = run_json(["alg", "gb", files["idem"]], capsys)
    assert code == 0 and not rep3["result"]["cached"]
    # corrupt entries are ignored and recomputed
    entries = list(cache.glob("gb-*.json"))
    entries[0].write_text("{broken")
    code, rep4 = run_json(["alg", "gb", files["cubic"]], capsys)
    assert code == 0
    code, rep5 = run_json(["alg", "gb", files["idem"]], capsys)
    assert code == 0


def test_resource_guard_exit_code(files, capsys, monkeypatch):
    monkeypatch.setenv("AFFPI0_MAX_DEGREE", "2")
    try:
        code, rep = run_json(["alg", "nf", files["cubic"], "--poly",
                              "(x + 1)^9"], capsys)
        assert code == 3
        assert rep["kind"] == "resource-limit"
    finally:
        monkeypatch.delenv("AFFPI0_MAX_DEGREE")
        from affpi0.polyring import set_limits
        set_limits(max_degree=64)


def test_pi0_all_over_prime_field_runs_candidate_routes(files, capsys):
    code, rep = run_json(["pi0", files["f3t"], "--method", "all",
                          "--deg", "2", "--tower", "1"], capsys)
    assert code == 0
    res = rep["result"]
    assert "derham" not in res and "note" in res
    assert res["equalizer"]["label"] == "pi0-candidate"
    assert res["idempotent"]["label"] == "pi0-candidate"
    # t^2 = 1 over F3: idempotents are 0, 1, (1±t)/2 -> 4 of them
    assert res["idempotent"]["count"] == 4


def test_pi0_derham_explicitly_requested_over_prime_field_fails(files, capsys):
    code, rep = run_json(["pi0", files["f3t"], "--method", "derham"], capsys)
    assert code == 2


def test_text_format_output(files, capsys):
    code = run(["alg", "gb", files["cubic"]])
    out = capsys.readouterr().out
    assert code == 0
    assert "basis" in out and "x^3 - x" in out
    assert "timing_ms" not in out  # text view drops volatile fields
