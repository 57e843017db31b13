import json

import pytest

from gbraids.algebra import builtin_group_example
from gbraids.cli import main, render, _flatten

BRAIDED = {"hexagon-right", "hexagon-left", "G9"}


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


def test_orbits_component(capsys):
    code, doc = run_json(capsys, ["orbits", "--group", "S3",
                                  "--signature", "2,5->4"])
    assert code == 0
    results = doc["results"]
    assert results["space"] == "component"
    assert results["points"] == 24
    assert results["orbit_count"] == 2
    assert [o["size"] for o in results["orbits"]] == [12, 12]
    for o in results["orbits"]:
        assert o["representative"]["colors"] == "2,5"


def test_orbits_bare(capsys):
    code, doc = run_json(capsys, ["orbits", "--group", "C2",
                                  "--strands", "2"])
    assert code == 0
    results = doc["results"]
    assert results["space"] == "bare"
    assert results["points"] == 4
    assert results["orbit_count"] == 3
    assert sorted(o["size"] for o in results["orbits"]) == [1, 1, 2]


def test_orbits_usage_errors(capsys):
    with pytest.raises(SystemExit) as err:
        main(["orbits", "--group", "C2"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["orbits", "--group", "C2", "--strands", "2",
              "--signature", "1,1->0"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["orbits", "--group", "nonsense", "--strands", "2"])
    assert err.value.code == 2


def test_check_clean_group_passes(capsys):
    code, doc = run_json(capsys, ["check", "--group", "C2"])
    assert code == 0
    assert doc["results"]["total_failures"] == 0
    assert doc["results"]["complete"] is True
    assert len(doc["results"]["relations"]) == 15


def test_check_mutated_braiding_fails(capsys):
    code, doc = run_json(capsys, ["check", "--group", "C2",
                                  "--mutate", "braiding"])
    assert code == 1
    by_id = {r["relation"]: r for r in doc["results"]["relations"]}
    for rid in BRAIDED:
        assert by_id[rid]["failure_count"] == by_id[rid]["assignments_checked"]
    assert by_id["pentagon"]["failure_count"] == 0


def test_check_subset_of_relations(capsys):
    code, doc = run_json(capsys, ["check", "--group", "S3",
                                  "--relations", "pentagon,triangle"])
    assert code == 0
    assert [r["relation"] for r in doc["results"]["relations"]] == \
        ["pentagon", "triangle"]


def test_check_unknown_relation_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["check", "--group", "C2", "--relations", "nonsense"])
    assert err.value.code == 2


def test_check_parallel_jobs_matches_serial(capsys):
    code1, serial = run_json(capsys, ["check", "--group", "C2"])
    code2, parallel = run_json(capsys, ["check", "--group", "C2",
                                        "--jobs", "2"])
    assert code1 == code2 == 0
    assert serial["results"] == parallel["results"]
    assert parallel["config"]["jobs"] == 2


def test_jobs_default_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("GBRAIDS_JOBS", "2")
    code, doc = run_json(capsys, ["check", "--group", "C2",
                                  "--relations", "triangle"])
    assert code == 0
    assert doc["config"]["jobs"] == 2


def test_output_is_byte_identical_across_runs(capsys):
    _, first = run(capsys, ["coherence", "--group", "C2"])
    _, second = run(capsys, ["coherence", "--group", "C2"])
    assert first == second
    assert first.endswith("\n")


def test_common_options_accepted_on_either_side(capsys):
    _, before = run_json(capsys, ["--seed", "9", "orbits", "--group", "C2",
                                  "--strands", "2", "--sample", "1"])
    _, after = run_json(capsys, ["orbits", "--group", "C2", "--strands", "2",
                                 "--sample", "1", "--seed", "9"])
    assert before == after
    assert before["config"]["seed"] == 9


def test_sampling_is_seed_deterministic(capsys):
    argv = ["orbits", "--group", "S3", "--signature", "2,5->4",
            "--sample", "4", "--seed", "3"]
    _, first = run_json(capsys, argv)
    _, second = run_json(capsys, argv)
    assert first == second
    _, other = run_json(capsys, argv[:-1] + ["4"])
    assert other["results"]["samples"] != first["results"]["samples"]


def test_csv_projection(capsys):
    code, out = run(capsys, ["--format", "csv", "orbits", "--group", "C2",
                             "--strands", "2"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "key,value"
    assert "results.orbit_count,3" in lines
    assert "config.format,csv" in lines


def test_grothendieck_comparison(capsys):
    code, doc = run_json(capsys, ["grothendieck", "--group", "C2",
                                  "--strands", "2"])
    assert code == 0
    results = doc["results"]
    assert results["objects"] == 8
    assert results["generators"] == 24
    assert results["failures"] == []


def test_coherence_solve(capsys):
    code, doc = run_json(capsys, ["coherence", "--group", "C2"])
    assert code == 0
    assert doc["results"]["solutions"] == 256
    assert doc["results"]["variables"] == 36
    assert len(doc["results"]["vectors"]) == 5
    code, doc = run_json(capsys, ["coherence", "--group", "C2", "--all"])
    assert len(doc["results"]["vectors"]) == 256


def test_coherence_check_data_file(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(builtin_group_example().to_json()))
    code, doc = run_json(capsys, ["coherence", "--group", "C2",
                                  "--data", str(good)])
    assert code == 0
    assert doc["results"]["coherent"] is True

    payload = builtin_group_example().to_json()
    payload["values"]["alpha:0,0,0"] = 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(payload))
    code, doc = run_json(capsys, ["coherence", "--group", "C2",
                                  "--data", str(bad)])
    assert code == 1
    assert doc["results"]["coherent"] is False


def test_cap_exit_codes(capsys):
    code, doc = run_json(capsys, ["orbits", "--group", "S3", "--strands", "6",
                                  "--bounds", "cap=1000"])
    assert code == 3
    assert "error" in doc["results"]
    code, doc = run_json(capsys, ["check", "--group", "S3", "--operad",
                                  "--bounds", "cap=400"])
    assert code == 3
    assert doc["results"]["total_failures"] == 0
    assert doc["results"]["complete"] is False


def test_bad_bounds_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["check", "--group", "C2", "--bounds", "nonsense=1"])
    assert err.value.code == 2


def test_flatten_and_render():
    doc = {"b": [1, {"x": None}], "a": 2}
    rows = list(_flatten(doc))
    assert rows == [("a", 2), ("b[0]", 1), ("b[1].x", None)]
    text = render(doc, "csv")
    assert text.splitlines() == ["key,value", "a,2", "b[0],1", "b[1].x,"]
    assert render(doc, "json") == json.dumps(doc, sort_keys=True, indent=2) + "\n"
