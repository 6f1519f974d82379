import csv
import io
import subprocess
import sys

import pytest

from sqkit.cli import main
from sqkit.sparse import read_matrix_market

CHAIN2 = "hermitian_conjugate on\n1.0 0.0 [1] [0]\n"
CHAIN3 = "hermitian_conjugate on\n1 0 [1] [0]\n1 0 [2] [1]\n"
SPIN_CHAIN = (
    "hermitian_conjugate on\n"
    "1 0 [1, 0] [0, 0]\n1 0 [1, 1] [0, 1]\n"
    "hermitian_conjugate off\n"
    "-0.5 0 [0, 0] [0, 0]\n0.5 0 [0, 1] [0, 1]\n"
)


@pytest.fixture
def model_file(tmp_path):
    def write(text, name="model.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def rows(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_export_matrix_market(model_file, tmp_path):
    out = tmp_path / "h.mtx"
    assert main(["export", "--model", model_file(CHAIN2), "--out", str(out)]) == 0
    with open(out) as fh:
        t = read_matrix_market(fh)
    assert t.nnz == 2 and t.dimension == 2
    assert list(t) == [(1, 0, 1 + 0j), (0, 1, 1 + 0j)]


def test_export_csv_stdout(model_file, capsys):
    assert main(["export", "--model", model_file(CHAIN2), "--format", "csv"]) == 0
    assert capsys.readouterr().out == "row,col,re,im\n1,0,1.0,0.0\n0,1,1.0,0.0\n"


def test_solve_dos(model_file, tmp_path):
    out = tmp_path / "out"
    code = main(["solve", "--model", model_file(CHAIN3), "--props", "dos",
                 "--window", "-2,2,4", "--out", str(out)])
    assert code == 0
    table = rows(out / "dos.csv")
    assert table[0] == ["bin", "energy", "dos"]
    assert [float(r[2]) for r in table[1:]] == [1, 0, 1, 1]


def test_solve_all_properties(model_file, tmp_path):
    out = tmp_path / "out"
    props = "eigenvalues,dos,density,ldos,magnetization,spin_polarized_ldos,wave_functions,greens_function"
    code = main(["solve", "--model", model_file(SPIN_CHAIN), "--props", props,
                 "--window=-3,3,12", "--out", str(out)])
    assert code == 0
    for prop in props.split(","):
        assert len(rows(out / f"{prop}.csv")) > 1


def test_solve_with_pattern(model_file, tmp_path):
    out = tmp_path / "out"
    code = main(["solve", "--model", model_file(SPIN_CHAIN), "--props", "density",
                 "--pattern", "[ALL, SUM_ALL]", "--out", str(out)])
    assert code == 0
    table = rows(out / "density.csv")
    assert [r[:2] for r in table[1:]] == [["0", "SUM_ALL"], ["1", "SUM_ALL"]]


def test_outputs_are_byte_identical(model_file, tmp_path):
    path = model_file(SPIN_CHAIN)
    blobs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        main(["solve", "--model", path, "--props", "eigenvalues,ldos,greens_function",
              "--window", "-3,3,7", "--out", str(out)])
        blobs.append([(out / f"{p}.csv").read_bytes()
                      for p in ("eigenvalues", "ldos", "greens_function")])
    assert blobs[0] == blobs[1]


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    [],
    ["solve"],
    ["solve", "--model", "x", "--props", "nonsense"],
    ["solve", "--model", "x", "--window", "2,1,4"],
    ["bench", "--sizes", "a,b"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 1


def test_window_required(model_file):
    assert main(["solve", "--model", model_file(CHAIN3), "--props", "dos"]) == 1


@pytest.mark.parametrize("text", [
    "1 0 [0, 1] [0, 1]\n1 0 [0, 1, 2] [0, 1, 2]\n",
    "1 0 [3] [0]\n",
    "1 0 [0]\n",
    "1 0 [1] [0]\n1 0 [0] [1]\n3 0 [1] [0]\n0 0 [0] [0]\n",
])
def test_model_errors(model_file, tmp_path, text, capsys):
    code = main(["solve", "--model", model_file(text), "--out", str(tmp_path)])
    assert code == 2
    assert "error" in capsys.readouterr().err


def test_missing_model_file(tmp_path):
    assert main(["export", "--model", str(tmp_path / "nope.txt")]) == 2


def test_bench_csv(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SQKIT_THREADS", "1")
    out = tmp_path / "bench.csv"
    assert main(["bench", "--sizes", "2,3", "--reps", "1", "--lookups", "50", "--out", str(out)]) == 0
    table = rows(out)
    assert table[0] == ["n", "basis_size", "setup_seconds", "extract_triplets_seconds",
                        "extract_compressed_seconds", "lookup_ns_per_call"]
    assert [r[:2] for r in table[1:]] == [["2", "8"], ["3", "27"]]
    assert "log-log slope" in capsys.readouterr().err


def test_module_entry_point(model_file):
    proc = subprocess.run([sys.executable, "-m", "sqkit", "export", "--model", model_file(CHAIN2)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert read_matrix_market(io.StringIO(proc.stdout)).nnz == 2
