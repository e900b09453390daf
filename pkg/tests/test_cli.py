import json

from polybound.cli import main


def run(argv):
    return main([str(a) for a in argv])


def test_full_pipeline_via_cli(tmp_path, capsys):
    out = tmp_path
    assert run(["-o", out, "gen", "dwarfed-cube", "3"]) == 0
    hrep = out / "dwarfed-cube-3.hrep"
    assert run(["-o", out, "close", hrep]) == 0
    closure = out / "dwarfed-cube-3.closure.hrep"
    assert run(["-o", out, "vertices", closure, "--alg", "brute"]) == 0
    vrep = out / "dwarfed-cube-3.closure.vrep"
    assert run(["-o", out, "incidences", closure, vrep, "--closure"]) == 0
    inc = out / "dwarfed-cube-3.closure.inc"
    for alg in ("selective", "moebius", "filter"):
        assert run(["-o", out, "bounded", inc, "--alg", alg, "--verify"]) == 0
        hasse = json.loads((out / "dwarfed-cube-3.closure.hasse.json").read_text())
        assert len(hasse["faces"]) == 8  # 2d + 2
    assert run(["-o", out, "fvector", inc, vrep, "--simple"]) == 0
    captured = capsys.readouterr().out
    assert "f = (4, 3, 0, 0)" in captured
    record = json.loads((out / "dwarfed-cube-3.closure.fvector.json").read_text())
    assert record["f_bounded"] == [4, 3, 0, 0]


def test_vertices_algorithms_agree(tmp_path):
    out = tmp_path
    run(["-o", out, "gen", "thrackle", "4"])
    hrep = out / "thrackle-4.hrep"
    blobs = {}
    for alg in ("pivot", "brute"):
        assert run(["-o", out / alg, "vertices", hrep, "--alg", alg]) == 0
        blobs[alg] = (out / alg / "thrackle-4.vrep").read_bytes()
    assert blobs["pivot"] == blobs["brute"]


def test_rerun_is_byte_identical(tmp_path):
    out = tmp_path
    run(["-o", out, "gen", "random-metric", "4", "7"])
    first = (out / "random-metric-4-s7.hrep").read_bytes()
    run(["-o", out, "gen", "random-metric", "4", "7"])
    assert (out / "random-metric-4-s7.hrep").read_bytes() == first


def test_max_dim_flag(tmp_path):
    out = tmp_path
    run(["-o", out, "gen", "thrackle", "4"])
    run(["-o", out, "close", out / "thrackle-4.hrep"])
    run(["-o", out, "vertices", out / "thrackle-4.closure.hrep"])
    run(["-o", out, "incidences", out / "thrackle-4.closure.hrep",
         out / "thrackle-4.closure.vrep", "--closure"])
    assert run(["-o", out, "bounded", out / "thrackle-4.closure.inc",
                "--max-dim", "0"]) == 0
    hasse = json.loads((out / "thrackle-4.closure.hasse.json").read_text())
    assert all(f["rank"] <= 0 for f in hasse["faces"])


def test_bench_table_and_csv(tmp_path, capsys):
    assert run(["-o", tmp_path, "bench", "--suite", "dwarfed", "--max-size", "5"]) == 0
    table = capsys.readouterr().out
    assert "dwarfed-cube-5" in table and "12" in table
    assert run(["-o", tmp_path, "bench", "--suite", "random", "--max-size", "5",
                "--seeds", "3", "--format", "csv"]) == 0
    csv = capsys.readouterr().out
    assert csv.splitlines()[0].startswith("label,")
    assert "42.00" in csv  # random d=5 summary mean


def test_exit_code_input_error(tmp_path, capsys):
    assert run(["-o", tmp_path, "close", tmp_path / "missing.hrep"]) == 2
    assert run(["-o", tmp_path, "gen", "dwarfed-cube", "3", "4"]) == 2
    capsys.readouterr()


def test_exit_code_budget(tmp_path, capsys):
    out = tmp_path
    run(["-o", out, "gen", "dwarfed-cube", "5"])
    assert run(["-o", out, "--budget", "5", "vertices",
                out / "dwarfed-cube-5.hrep", "--alg", "brute"]) == 3
    capsys.readouterr()
