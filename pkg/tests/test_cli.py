import math

import numpy as np
import pytest

from ddapprox import DDPackage, fidelity
from ddapprox.cli import CSV_HEADER, DEMO_STATES, main

from conftest import DEMO_VECTOR


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_demo_state_matches_library_vector():
    assert np.allclose(np.array(DEMO_STATES["fig2"]), DEMO_VECTOR, atol=1e-15)


def test_run_demo_target_fidelity(capsys, tmp_path):
    csv = tmp_path / "row.csv"
    code, out, err = run_cli(
        capsys,
        "run",
        "--builtin",
        "fig2",
        "--scheme",
        "target-fidelity",
        "--fidelity",
        "0.5",
        "--csv",
        str(csv),
    )
    assert code == 0, err
    assert "size 6 -> 3" in out
    assert "compression 0.500000" in out
    assert "fidelity 0.800000" in out
    lines = csv.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    fields = lines[1].split(",")
    assert fields[0] == "fig2"
    assert fields[1] == "target-fidelity"
    assert fields[3] == "6" and fields[4] == "3"
    assert float(fields[5]) == 0.5
    assert abs(float(fields[6]) - 0.8) < 1e-9


def test_run_ghz_high_target_keeps_everything(capsys):
    code, out, _ = run_cli(
        capsys,
        "run",
        "--builtin",
        "ghz",
        "10",
        "--scheme",
        "target-fidelity",
        "--fidelity",
        "0.99",
    )
    assert code == 0
    assert "compression 1.000000" in out
    assert "fidelity 1.000000" in out


def test_run_circuit_file_and_artifacts(capsys, tmp_path):
    circuit = tmp_path / "bell.qc"
    circuit.write_text("qubits 2\nh 0\ncx 0 1\n")
    before = tmp_path / "before.dot"
    after = tmp_path / "after.dot"
    dump = tmp_path / "vec.txt"
    code, out, _ = run_cli(
        capsys,
        "run",
        "--circuit",
        str(circuit),
        "--scheme",
        "sampling",
        "--traversals",
        "100",
        "--seed",
        "1",
        "--dot-before",
        str(before),
        "--dot-after",
        str(after),
        "--dump-vector",
        str(dump),
    )
    assert code == 0
    assert out.startswith("bell:")
    assert before.read_text().startswith("digraph")
    assert after.read_text().startswith("digraph")
    rows = [line.split() for line in dump.read_text().splitlines()]
    vec = np.array([float(r) + 1j * float(i) for r, i in rows])
    want = np.zeros(4, dtype=complex)
    want[0] = want[3] = 1 / math.sqrt(2)
    assert np.allclose(vec, want, atol=1e-9)


def test_run_reported_fidelity_recomputes(capsys, tmp_path):
    csv = tmp_path / "row.csv"
    code, _, _ = run_cli(
        capsys,
        "run",
        "--builtin",
        "random",
        "10",
        "30",
        "7",
        "--scheme",
        "sampling",
        "--traversals",
        "10000",
        "--seed",
        "3",
        "--csv",
        str(csv),
    )
    assert code == 0
    reported = float(csv.read_text().splitlines()[1].split(",")[6])

    from ddapprox import approx_sampling, random_circuit, simulate

    pkg = DDPackage()
    state = simulate(random_circuit(10, 30, 7), pkg)
    out, _ = approx_sampling(state, 10000, seed=3)
    assert abs(reported - fidelity(state, out)) < 1e-9


def test_run_qft_builtin_with_fixed_level(capsys):
    code, out, _ = run_cli(
        capsys,
        "run",
        "--builtin",
        "qft",
        "5",
        "--scheme",
        "target-fidelity",
        "--fidelity",
        "0.5",
        "--level",
        "4",
    )
    assert code == 0
    assert out.startswith("qft_5:")
    code, _, err = run_cli(
        capsys,
        "run",
        "--builtin",
        "qft",
        "3",
        "--scheme",
        "target-fidelity",
        "--fidelity",
        "0.5",
        "--level",
        "nope",
    )
    assert code == 2
    assert "level" in err


def test_exit_code_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.qc"
    bad.write_text("qubits 3\nh 2\nbadop 1\n")
    code, _, err = run_cli(
        capsys, "run", "--circuit", str(bad), "--scheme", "sampling", "--traversals", "10"
    )
    assert code == 2
    assert "line 3" in err


def test_exit_code_io_error(capsys, tmp_path):
    code, _, err = run_cli(
        capsys,
        "run",
        "--circuit",
        str(tmp_path / "missing.qc"),
        "--scheme",
        "sampling",
        "--traversals",
        "10",
    )
    assert code == 4
    assert "error" in err


def test_exit_code_usage_errors(capsys):
    code, _, err = run_cli(
        capsys, "run", "--builtin", "fig2", "--scheme", "sampling"
    )  # missing --traversals
    assert code == 2
    code, _, err = run_cli(
        capsys, "run", "--builtin", "nosuch", "--scheme", "per-level", "--fidelity", "0.5"
    )
    assert code == 2
    code, _, err = run_cli(
        capsys,
        "run",
        "--builtin",
        "fig2",
        "--scheme",
        "threshold",
        "--traversals",
        "10",
        "--tau",
        "10",
    )
    assert code == 2


def test_sweep_target_fidelity_columns(capsys, tmp_path):
    csv = tmp_path / "sweep.csv"
    grid = ",".join(str(round(0.1 * k, 1)) for k in range(1, 11))
    code, _, _ = run_cli(
        capsys,
        "sweep",
        "--builtin",
        "random",
        "7",
        "16",
        "5",
        "--scheme",
        "target-fidelity",
        "--grid",
        grid,
        "--csv",
        str(csv),
    )
    assert code == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 11
    rel_sizes = []
    for line in lines[1:]:
        fields = line.split(",")
        target = float(fields[2])
        assert float(fields[6]) >= target  # guarantee holds columnwise
        rel_sizes.append(float(fields[5]))
    assert rel_sizes == sorted(rel_sizes)  # size grows with the target
    assert rel_sizes[-1] == 1.0  # f = 1.0 keeps the whole diagram


def test_sweep_stdout_when_no_csv(capsys):
    code, out, _ = run_cli(
        capsys,
        "sweep",
        "--builtin",
        "ghz",
        "4",
        "--scheme",
        "sampling",
        "--grid",
        "10,100",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3


def test_sweep_csv_byte_stable(capsys, tmp_path):
    args = (
        "sweep",
        "--builtin",
        "random",
        "6",
        "14",
        "9",
        "--scheme",
        "threshold",
        "--traversals",
        "500",
        "--grid",
        "0,1,2,4,8",
        "--seed",
        "2",
    )
    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run_cli(capsys, *args, "--csv", str(f1))[0] == 0
    assert run_cli(capsys, *args, "--csv", str(f2))[0] == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_csv_byte_stable_across_processes(tmp_path):
    import subprocess
    import sys

    f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (f1, f2):
        proc = subprocess.run(
            [
                sys.executable, "-m", "ddapprox.cli",
                "sweep", "--builtin", "random", "6", "12", "3",
                "--scheme", "sampling", "--grid", "10,100", "--seed", "5",
                "--csv", str(path),
            ],
            capture_output=True,
        )
        assert proc.returncode == 0, proc.stderr
    assert f1.read_bytes() == f2.read_bytes()
