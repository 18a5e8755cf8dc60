import json

from hamcover.cli import main
from hamcover.graph import (
    complete_graph,
    is_hamilton_cycle,
    parse_edge_list,
    petersen_graph,
    read_edge_list,
    write_edge_list,
)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def strip_timings(report: dict) -> dict:
    report = dict(report)
    report.pop("phase_timings_ms", None)
    report.pop("timings_ms", None)
    return report


def test_gen_then_hamilton(tmp_path, capsys):
    gpath = tmp_path / "k10.txt"
    code, _ = run(capsys, "gen", "--n", "10", "--p", "1.0", "--seed", "7",
                  "--out", str(gpath))
    assert code == 0
    G = read_edge_list(str(gpath))
    assert G.m == 45

    code, out = run(capsys, "hamilton", "--graph", str(gpath))
    assert code == 0
    cycle = [int(t) for t in out.split()]
    assert is_hamilton_cycle(G, cycle)


def test_gen_roundtrip_deterministic(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    for path in (a, b):
        code, _ = run(capsys, "gen", "--n", "40", "--p", "0.3", "--seed", "11",
                      "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert parse_edge_list(a.read_text()) == read_edge_list(str(a))


def test_verify_walecki(tmp_path, capsys):
    gpath = tmp_path / "k5.txt"
    write_edge_list(complete_graph(5), str(gpath))
    cpath = tmp_path / "walecki.txt"
    cpath.write_text("0 1 2 3 4\n0 2 4 1 3\n")
    code, _ = run(capsys, "verify", "--graph", str(gpath), "--cover", str(cpath))
    assert code == 0

    cpath.write_text("0 1 2 3 4\n")
    code, _ = run(capsys, "verify", "--graph", str(gpath), "--cover", str(cpath),
                  "--json")
    out = capsys.readouterr()
    assert code == 1


def test_cover_petersen_fails_with_json(tmp_path, capsys):
    gpath = tmp_path / "petersen.txt"
    write_edge_list(petersen_graph(), str(gpath))
    code, out = run(capsys, "cover", "--graph", str(gpath), "--alpha", "0.3")
    assert code == 1
    report = json.loads(out)
    assert report["valid"] is False
    assert report["failure_phase"]
    assert report["config"]["alpha"] == 0.3


def test_cover_reports_and_verifies(tmp_path, capsys):
    gpath = tmp_path / "k9.txt"
    write_edge_list(complete_graph(9), str(gpath))
    cycles = tmp_path / "cycles.txt"
    code, out = run(capsys, "cover", "--graph", str(gpath), "--alpha", "0.5",
                    "--cycles-out", str(cycles))
    assert code == 0
    report = json.loads(out)
    assert report["valid"] and report["n"] == 9 and report["delta_max"] == 8
    assert report["cover_size"] >= 4
    code, _ = run(capsys, "verify", "--graph", str(gpath), "--cover", str(cycles))
    assert code == 0


def test_cover_report_deterministic_modulo_timings(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    run(capsys, "gen", "--n", "32", "--p", "0.5", "--seed", "3", "--out", str(gpath))
    reports = []
    for _ in range(2):
        code, out = run(capsys, "cover", "--graph", str(gpath), "--alpha", "0.4")
        assert code == 0
        reports.append(strip_timings(json.loads(out)))
    assert json.dumps(reports[0], sort_keys=True) == json.dumps(reports[1], sort_keys=True)


def test_check_json_shape(tmp_path, capsys):
    gpath = tmp_path / "c5.txt"
    from hamcover.graph import cycle_graph

    write_edge_list(cycle_graph(5), str(gpath))
    code, out = run(capsys, "check", "--graph", str(gpath), "--s", "2",
                    "--g", "1", "--l", "3", "--trials", "20")
    assert code == 0
    report = json.loads(out)
    props = {r["property"]: r for r in report["reports"]}
    assert props["S"]["verdict"] == "holds"
    assert props["L"]["verdict"] == "holds"
    assert report["diameter"]["ok"] is True
    assert report["config"]["s"] == 2.0

    # boundary 2 exposes the adjacent-pair violation: exit 1
    code, out = run(capsys, "check", "--graph", str(gpath), "--s", "2", "--g", "2")
    assert code == 1
    report = json.loads(out)
    props = {r["property"]: r for r in report["reports"]}
    assert props["S"]["verdict"] == "violated"
    assert props["S"]["witness"] is not None


def test_hamilton_forbid_flag(tmp_path, capsys):
    gpath = tmp_path / "k6.txt"
    write_edge_list(complete_graph(6), str(gpath))
    fpath = tmp_path / "forbid.txt"
    fpath.write_text("6 3\n0 1\n2 3\n4 5\n")
    code, out = run(capsys, "hamilton", "--graph", str(gpath), "--forbid", str(fpath))
    assert code == 0
    cycle = [int(t) for t in out.split()]
    from hamcover.graph import cycle_edges

    assert {(0, 1), (2, 3), (4, 5)} <= cycle_edges(cycle)


def test_hamilton_failure_json(tmp_path, capsys):
    gpath = tmp_path / "petersen.txt"
    write_edge_list(petersen_graph(), str(gpath))
    code, out = run(capsys, "hamilton", "--graph", str(gpath))
    assert code == 1
    report = json.loads(out)
    assert report["failure"]


def test_pack_subcommand(tmp_path, capsys):
    gpath = tmp_path / "k7.txt"
    write_edge_list(complete_graph(7), str(gpath))
    code, out = run(capsys, "pack", "--graph", str(gpath))
    assert code == 0
    report = json.loads(out)
    assert report["target"] == 3 and report["achieved"] == 3
    assert report["residual_m"] == 0


def test_experiment_csv(tmp_path, capsys):
    out_path = tmp_path / "results.csv"
    code, _ = run(capsys, "experiment", "--n", "24", "--p", "0.6", "--seeds", "2",
                  "--seed", "5", "--jobs", "1", "--out", str(out_path))
    assert code == 0
    rows = out_path.read_text().splitlines()
    assert rows[0].startswith("n,p,base,stream")
    assert len(rows) == 3
    assert rows[1].split(",")[3] == "0" and rows[2].split(",")[3] == "1"


def test_experiment_rerun_identical(tmp_path, capsys):
    outs = []
    for name in ("r1.csv", "r2.csv"):
        path = tmp_path / name
        code, _ = run(capsys, "experiment", "--n", "24", "--p", "0.6", "--seeds", "2",
                      "--seed", "5", "--jobs", "1", "--out", str(path))
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_usage_errors_exit_2(tmp_path, capsys):
    assert main(["nonsense"]) == 2
    assert main(["gen", "--n", "10"]) == 2  # missing required flags
    code, _ = run(capsys, "hamilton", "--graph", str(tmp_path / "missing.txt"))
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("not a graph\n")
    code, _ = run(capsys, "hamilton", "--graph", str(bad))
    assert code == 2
