"""End-to-end checks of the command line, driving main() directly."""

import json

import numpy as np
import pytest

from qturbo.cli import main
from qturbo.conv_code import SeedTransformation, load_seed, store_seed
from qturbo.gf2_symplectic import SymplecticMatrix, random_symplectic
from qturbo.seeds import shipped_seed_text
from qturbo.spectrum import compute_spectrum

DEMO_ROWS = (21, 2, 20, 10, 16, 40)


def demo_seed():
    return SeedTransformation(2, 1, 1, SymplecticMatrix(3, DEMO_ROWS))


def write_seed(tmp_path, name, seed):
    path = tmp_path / name
    path.write_text(store_seed(seed) + "\n")
    return str(path)


def random_seed(n, k, m, rng):
    return SeedTransformation(n, k, m, random_symplectic(n + m, rng))


def write_turbo_spec(tmp_path, rng, **overrides):
    """Toy (2,1,1)-on-(2,1,1) spec; overrides patch the document and a
    None value deletes the key."""
    doc = {
        "outer_seed_file": write_seed(
            tmp_path, "outer.json", random_seed(2, 1, 1, rng)
        ),
        "inner_seed_file": write_seed(
            tmp_path, "inner.json", random_seed(2, 1, 1, rng)
        ),
        "N_out": 3,
        "interleaver": {"seed": 5},
    }
    doc.update(overrides)
    doc = {key: v for key, v in doc.items() if v is not None}
    path = tmp_path / "turbo.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_validate_shipped(capsys):
    assert main(["validate", "shipped:u313"]) == 0
    out = capsys.readouterr().out
    assert "n=3 k=1 m=3" in out
    assert "symplectic: ok" in out
    assert "catastrophic: no" in out
    assert "recursive:" in out


def test_validate_rejects_garbage(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["validate", str(bad)]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["validate", str(tmp_path / "missing.json")]) == 2


def test_diagram_writes_dot(tmp_path, capsys):
    seed_file = write_seed(tmp_path, "demo.json", demo_seed())
    dot = tmp_path / "d.dot"
    kdot = tmp_path / "k.dot"
    code = main(
        ["diagram", seed_file, "--dot", str(dot), "--kernel-dot", str(kdot)]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "vertices: 4" in out
    assert "catastrophic: yes" in out
    assert dot.read_text().startswith("digraph state_diagram")
    assert kdot.read_text().startswith("digraph kernel_graph")


def test_spectrum_csv_matches_library(tmp_path, capsys):
    seed_file = tmp_path / "u313.json"
    seed_file.write_text(shipped_seed_text("u313"))
    assert main(["spectrum", str(seed_file), "--wmax", "8"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0] == "# d_free=4"
    assert lines[1] == "# d1=6"
    assert lines[2] == "w,F,F1"
    spec = compute_spectrum(load_seed(seed_file.read_text()), 8)
    assert len(lines) == 3 + 9
    for w, line in enumerate(lines[3:]):
        assert line == f"{w},{spec.F[w]},{spec.F1[w]}"
    out_file = tmp_path / "spec.csv"
    assert main(
        ["spectrum", str(seed_file), "--wmax", "8", "--out", str(out_file)]
    ) == 0
    assert out_file.read_text() == out


def test_spectrum_rejects_catastrophic_seed(tmp_path, capsys):
    seed_file = write_seed(tmp_path, "demo.json", demo_seed())
    assert main(["spectrum", seed_file, "--wmax", "6"]) == 2
    assert "error:" in capsys.readouterr().err


def test_memory_budget_maps_to_exit_3(tmp_path, capsys):
    rng = np.random.default_rng(41)
    seed_file = write_seed(tmp_path, "wide.json", random_seed(2, 1, 9, rng))
    assert main(["spectrum", seed_file, "--wmax", "4"]) == 3
    assert "error:" in capsys.readouterr().err


def test_search_writes_loadable_seeds(tmp_path, capsys):
    out_dir = tmp_path / "found"
    code = main(
        [
            "search", "--n", "2", "--k", "1", "--m", "2",
            "--count", "2", "--sieve-wmax", "6",
            "--seed", "3", "--out-dir", str(out_dir),
        ]
    )
    assert code == 0
    report = capsys.readouterr().out.strip().split("\n")
    assert len(report) == 2
    assert report[0].startswith("seed-000 n=2 k=1 m=2 d_free=")
    for i in range(2):
        seed = load_seed((out_dir / f"seed-{i:03d}.json").read_text())
        assert (seed.n, seed.k, seed.m) == (2, 1, 2)


def test_search_stdout_roundtrip(capsys):
    assert main(
        ["search", "--n", "2", "--k", "1", "--m", "1", "--count", "1",
         "--seed", "9"]
    ) == 0
    line = capsys.readouterr().out.strip()
    ints = [int(v) for v in line.split("rows=")[1].split(",")]
    doc = json.dumps({"n": 2, "k": 1, "m": 1, "rows": ints})
    seed = load_seed(doc)
    assert seed.m == 1


def test_simulate_csv_shape_and_determinism(tmp_path, capsys):
    spec = write_turbo_spec(tmp_path, np.random.default_rng(6))
    argv = [
        "simulate", spec, "--p-list", "0.05", "0.1", "--K-list", "2", "4",
        "--trials", "40", "--iters", "4", "--seed", "17",
    ]
    assert main(argv) == 0
    first = capsys.readouterr().out
    lines = first.strip().split("\n")
    assert lines[0] == "p,K,trials,wer,ci_low,ci_high,qer,iterations_mean"
    assert len(lines) == 5
    for line in lines[1:]:
        cells = line.split(",")
        assert len(cells) == 8
        assert cells[2] == "40"
        assert 0.0 <= float(cells[3]) <= 1.0
    assert [l.split(",")[:2] for l in lines[1:]] == [
        ["0.05", "2"], ["0.05", "4"], ["0.1", "2"], ["0.1", "4"]
    ]
    out_file = tmp_path / "run.csv"
    assert main(argv + ["--out", str(out_file)]) == 0
    assert out_file.read_text() == first


def test_simulate_uses_spec_n_out(tmp_path, capsys):
    spec = write_turbo_spec(tmp_path, np.random.default_rng(8))
    assert main(
        ["simulate", spec, "--p-list", "0.05", "--trials", "10"]
    ) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 2
    assert lines[1].split(",")[1] == "3"  # N_out=3, k=1


def test_simulate_explicit_interleaver(tmp_path, capsys):
    rng = np.random.default_rng(12)
    # outer N=1, t=0 keeps the outer stream at 3 physical qubits
    spec = write_turbo_spec(
        tmp_path,
        rng,
        N_out=1,
        t_out=0,
        interleaver={"pi": [2, 0, 1], "k": [0, 4, 5]},
    )
    assert main(
        ["simulate", spec, "--p-list", "0.1", "--trials", "10"]
    ) == 0
    capsys.readouterr()
    # the explicit permutation has size 3; any other K must be rejected
    assert main(
        ["simulate", spec, "--p-list", "0.1", "--trials", "10",
         "--K-list", "4"]
    ) == 2


def test_simulate_input_validation(tmp_path, capsys):
    spec = write_turbo_spec(tmp_path, np.random.default_rng(14))
    assert main(
        ["simulate", spec, "--p-list", "0.1", "--trials", "10",
         "--K-list", "0"]
    ) == 2
    no_n = write_turbo_spec(tmp_path, np.random.default_rng(15), N_out=None)
    assert main(
        ["simulate", no_n, "--p-list", "0.1", "--trials", "10"]
    ) == 2
    assert main(
        ["simulate", str(tmp_path / "absent.json"), "--p-list", "0.1",
         "--trials", "5"]
    ) == 2
    capsys.readouterr()


def test_decode_infeasibility_maps_to_exit_4(tmp_path, capsys, monkeypatch):
    from qturbo.errors import SisoFailure

    def boom(*a, **kw):
        raise SisoFailure("forward", 1)

    monkeypatch.setattr("qturbo.cli.run_wer", boom)
    spec = write_turbo_spec(tmp_path, np.random.default_rng(16))
    assert main(
        ["simulate", spec, "--p-list", "0.1", "--trials", "5"]
    ) == 4
    assert "error:" in capsys.readouterr().err
