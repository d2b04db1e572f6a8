import csv
import io
import json
import subprocess
import sys

import pytest

from wsnet.cli import main, taxonomy_lines
from wsnet.export import SUMMARY_COLUMNS, graph_bytes
from wsnet.model import Network, NetworkSpec


def run(*argv):
    return main([str(a) for a in argv])


def test_extract_single_operation_dot(tmp_path, data_dir, micro):
    # WS2 alone: one operation f -> g, h
    from wsnet.ingest import write_manifest

    coll = tmp_path / "ws2.json"
    write_manifest(micro.subset(["WS2"]), coll)
    status = run("extract", "--collection", coll, "--model", "dependency", "--description", "syntactic",
                 "--matching", "equal", "--format", "dot", "--out-dir", tmp_path / "out")
    assert status == 0
    (dot,) = (tmp_path / "out").iterdir()
    assert dot.name == "dependency_syntactic_parameter_na_equal.dot"
    edges = [line for line in dot.read_text().splitlines() if "->" in line]
    assert edges == ["  f -> g;", "  f -> h;"]


def test_extract_all_writes_46_files(tmp_path, data_dir):
    assert run("extract", "--collection", data_dir / "minicorpus.json", "--all", "--out-dir", tmp_path) == 0
    files = sorted(tmp_path.iterdir())
    assert len(files) == 46 and all(f.suffix == ".graphml" for f in files)


def test_extract_several_formats(tmp_path, data_dir):
    status = run("extract", "--collection", data_dir / "micro.json", "--model", "similarity",
                 "--matching", "exact", "--similarity-fn", "excesssim",
                 "--format", "graphml", "--format", "edgecsv", "--out-dir", tmp_path)
    assert status == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "similarity_semantic_operation_na_exact_excesssim.csv",
        "similarity_semantic_operation_na_exact_excesssim.graphml",
    ]


def test_missing_collection(tmp_path, capsys):
    status = run("extract", "--collection", tmp_path / "nope.json", "--all", "--out-dir", tmp_path)
    assert status == 1
    assert "not found" in capsys.readouterr().err
    assert not list(tmp_path.iterdir())


def test_spec_error_exit_2(tmp_path, data_dir, capsys):
    status = run("extract", "--collection", data_dir / "micro.json", "--model", "dependency",
                 "--matching", "jaro", "--out-dir", tmp_path)
    assert status == 2
    assert "invalid network specification" in capsys.readouterr().err
    assert run("extract", "--collection", data_dir / "micro.json", "--model", "interaction",
               "--matching", "equal", "--mode", "full", "--out-dir", tmp_path) == 2


def test_partial_failure_writes_successful_specs(tmp_path, capsys):
    manifest = tmp_path / "syn.json"
    manifest.write_text(json.dumps({"services": [
        {"id": "A", "operations": [{"id": "a", "inputs": [{"name": "x"}], "outputs": [{"name": "y"}]}]},
        {"id": "B", "operations": [{"id": "b", "inputs": [{"name": "y"}], "outputs": [{"name": "z"}]}]},
    ]}))
    out = tmp_path / "out"
    assert run("extract", "--collection", manifest, "--all", "--out-dir", out) == 1
    written = {p.stem for p in out.iterdir()}
    assert len(written) == 25  # 1 dependency + 20 interaction + 4 similarity
    assert all("_syntactic_" in name for name in written)
    err = capsys.readouterr().err
    assert err.count("MissingConcept") == 21


def test_analyze_summary_for_similarity_networks(tmp_path, data_dir):
    graphs = tmp_path / "graphs"
    assert run("extract", "--collection", data_dir / "minicorpus.json", "--all", "--out-dir", graphs) == 0
    sims = sorted(graphs.glob("similarity_syntactic_*.graphml"))
    assert len(sims) == 4
    reports = tmp_path / "reports"
    assert run("analyze", *sims, "--summary", "--out-dir", reports) == 0
    rows = list(csv.reader(io.StringIO((reports / "summary.csv").read_text(), newline="")))
    assert rows[0] == SUMMARY_COLUMNS
    assert len(rows) == 5
    assert len(list(reports.glob("*.report.json"))) == 4


def test_analyze_empty_network_file(tmp_path):
    spec = NetworkSpec("syntactic", "parameter", "dependency", "equal")
    path = tmp_path / "empty.graphml"
    path.write_bytes(graph_bytes(Network(spec, True, (), ()), "graphml"))
    assert run("analyze", path, "--out-dir", tmp_path) == 0
    rep = json.loads((tmp_path / f"{spec.name}.report.json").read_text())
    assert rep["emptyTrimmed"] is True


def test_analyze_unreadable_graph(tmp_path):
    bad = tmp_path / "bad.graphml"
    bad.write_text("<graphml")
    assert run("analyze", bad, "--out-dir", tmp_path) == 1
    assert run("analyze", tmp_path / "missing.graphml", "--out-dir", tmp_path) == 1


def test_analyze_pipeline_equivalence(tmp_path, data_dir):
    coll = data_dir / "minicorpus.json"
    assert run("extract", "--collection", coll, "--all", "--out-dir", tmp_path / "g") == 0
    assert run("analyze", *sorted((tmp_path / "g").iterdir()), "--summary", "--out-dir", tmp_path / "two") == 0
    assert run("analyze", "--collection", coll, "--all", "--summary", "--out-dir", tmp_path / "one") == 0
    one = {p.name: p.read_bytes() for p in (tmp_path / "one").iterdir()}
    two = {p.name: p.read_bytes() for p in (tmp_path / "two").iterdir()}
    assert len(one) == 47
    assert one == two


def test_analyze_needs_input(tmp_path):
    assert run("analyze", "--out-dir", tmp_path) == 1
    assert run("analyze", "--all", "--out-dir", tmp_path) == 1


def test_threshold_flag(tmp_path, data_dir):
    args = ["--collection", data_dir / "minicorpus.json", "--model", "interaction", "--granularity", "operation",
            "--mode", "full", "--matching", "jaro", "--out-dir", tmp_path]
    assert run("extract", *args, "--threshold", "0.5") == 0
    net = (tmp_path / "interaction_syntactic_operation_full_jaro.graphml").read_text()
    assert ">0.5<" in net


def test_taxonomy_output(capsys):
    assert run("taxonomy") == 0
    out = capsys.readouterr().out.splitlines()
    assert out == taxonomy_lines()
    leaves = [line for line in out if line.lstrip().startswith("* ")]
    assert len(leaves) == 46
    blocks = {"dependency": 0, "interaction": 0, "similarity": 0}
    current = None
    for line in out:
        if not line.startswith(" "):
            current = line
        elif line.lstrip().startswith("* "):
            blocks[current] += 1
    assert blocks == {"dependency": 2, "interaction": 36, "similarity": 8}


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "wsnet", "taxonomy"], capture_output=True, text=True, check=True)
    assert out.stdout.splitlines()[0] == "dependency"


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["extract", "--model", "nonsense"])
    assert info.value.code == 2
