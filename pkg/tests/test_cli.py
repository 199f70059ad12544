from __future__ import annotations

import subprocess
import sys

import pytest

from vbsqc.cli import main, parse_circuit
from vbsqc.errors import InvalidCircuit, ParseError
from vbsqc.mbqc import parse_pattern


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def machine(text):
    return dict(line.split(" = ", 1) for line in text.splitlines())


def test_graph_chain(capsys):
    code, out, _ = run(capsys, "graph", "chain", "3")
    assert code == 0 and out == "n 3\ne 0 1\ne 1 2\n"


def test_graph_grid_edges(capsys):
    code, out, _ = run(capsys, "graph", "grid", "2", "2")
    assert code == 0 and sum(line.startswith("e ") for line in out.splitlines()) == 4


def test_graph_honeycomb(capsys):
    code, out, _ = run(capsys, "graph", "honeycomb", "1", "1")
    assert code == 0 and out.startswith("n 6\n")


def test_graph_bad_parameters(capsys):
    assert run(capsys, "graph", "chain", "x")[0] == 2
    assert run(capsys, "graph", "grid", "2")[0] == 2
    assert run(capsys, "graph", "chain", "0")[0] == 2


def test_graph_validate(capsys, write):
    code, out, _ = run(capsys, "graph", "validate", write("ok.g", "n 3\ne 0 1\n"), "--format", "machine")
    assert code == 0 and machine(out) == {"valid": "true", "vertices": "3", "edges": "1"}
    code, _, err = run(capsys, "graph", "validate", write("bad.g", "n 3\ne 0 0\n"))
    assert code == 2 and "line 2" in err
    code, _, err = run(capsys, "graph", "validate", write("bad2.g", "n 3\nfoo\n"))
    assert code == 2 and "line 2" in err


def test_missing_file(capsys):
    assert run(capsys, "compile", "/nonexistent/circuit.txt")[0] == 2


def test_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_compile_h(capsys, write):
    code, out, _ = run(capsys, "compile", write("h.c", "wires 1\nh 0\n"))
    assert code == 0
    p = parse_pattern(out)
    assert len(p.commands) == 4 and all(c.kind == "xy" for c in p.commands)


def test_compile_cz_has_vertical_edge(capsys, write):
    code, out, _ = run(capsys, "compile", write("cz.c", "wires 2\ncz 0 1\n"))
    assert code == 0 and parse_pattern(out).graph.has_edge(0, 1)


def test_compile_is_deterministic(capsys, write):
    path = write("c.c", "wires 2\nrx 0 0.3\ncz 0 1\nu 1 0 0 1 0 1 0 0 0\n")
    assert run(capsys, "compile", path)[1] == run(capsys, "compile", path)[1]


def test_compile_semantic_error(capsys, write):
    assert run(capsys, "compile", write("bad.c", "wires 2\ncz 0 3\n"))[0] == 3
    assert run(capsys, "compile", write("nu.c", "wires 1\nu 0 1 0 1 0 0 0 1 0\n"))[0] == 3


def test_compile_parse_error(capsys, write):
    code, _, err = run(capsys, "compile", write("bad.c", "wires 1\nh 0\nfoo 0\n"))
    assert code == 2 and "line 3" in err


def test_parse_circuit_formats():
    c = parse_circuit("# demo\nwires 2\nh 0  # first\nrz 1 0.5\nrx 0 1\nu 1 1 0 0 0 0 0 1 0\ncz 0 1\nS 1\n")
    assert c.n_logical == 2 and len(c.gates) == 6
    with pytest.raises(ParseError):
        parse_circuit("h 0\n")
    with pytest.raises(ParseError):
        parse_circuit("wires 1\nrz 0\n")
    with pytest.raises(InvalidCircuit):
        parse_circuit("wires 1\nh 1\n")


def test_verify_h_exhaustive(capsys, write):
    code, out, _ = run(capsys, "verify", write("h.c", "wires 1\nh 0\n"), "--format", "machine")
    m = machine(out)
    assert code == 0
    assert m["mode"] == "exhaustive" and m["branches_checked"] == "16" and m["pass"] == "true"
    assert float(m["min_fidelity"]) >= 1 - 1e-9


def test_verify_is_byte_identical(capsys, write):
    path = write("c.c", "wires 2\nrx 0 0.3\ncz 0 1\nh 1\n")
    args = ("verify", path, "--seed", "12345", "--format", "machine", "--branches", "32")
    first, second = run(capsys, *args)[1], run(capsys, *args)[1]
    assert first == second and "seed = 12345" in first
    assert run(capsys, "verify", path, "--seed", "12346", "--format", "machine", "--branches", "32")[1] != first


def test_verify_budget_one_sampled(capsys, write):
    code, out, _ = run(capsys, "verify", write("c.c", "wires 2\nh 0\ncz 0 1\nrz 1 0.2\n"), "--branches", "1", "--format", "machine")
    m = machine(out)
    assert code == 0 and m["mode"] == "sampled" and m["branches_checked"] == "1"


def test_verify_bad_branches(capsys, write):
    path = write("h.c", "wires 1\nh 0\n")
    assert run(capsys, "verify", path, "--branches", "0")[0] == 2
    assert run(capsys, "verify", path, "--branches", "many")[0] == 2
    assert run(capsys, "verify", path, "--branches", "exhaustive")[0] == 0


def test_verify_failure_exit_code(capsys, write, monkeypatch):
    import vbsqc.cli as cli
    from vbsqc.mbqc import EquivalenceReport

    monkeypatch.setattr(cli, "verify_equivalence", lambda *a, **k: EquivalenceReport("sampled", 16, [(0,) * 4], [0.5], [1 / 16], 0))
    assert run(capsys, "verify", write("h.c", "wires 1\nh 0\n"))[0] == 4


def test_run_dense_and_tableau(capsys, write):
    _, pattern, _ = run(capsys, "compile", write("h.c", "wires 1\nh 0\n"))
    path = write("h.p", pattern)
    code, out, _ = run(capsys, "run", path, "--backend", "dense", "--outcomes", "0000", "--format", "machine")
    m = machine(out)
    assert code == 0 and m["backend"] == "dense" and m["outcomes"] == "0000"
    re0, im0, re1, im1 = (float(v) for v in m["amplitudes"].split())
    assert re0 == pytest.approx(2**-0.5) and re1 == pytest.approx(2**-0.5)
    code, out, _ = run(capsys, "run", path, "--format", "machine", "--outcomes", "0110")
    m = machine(out)
    assert code == 0 and m["backend"] == "tableau" and m["stabilizer.0"] == "+X"


def test_run_auto_picks_dense_for_non_clifford(capsys, write):
    _, pattern, _ = run(capsys, "compile", write("r.c", "wires 1\nrz 0 0.3\n"))
    path = write("r.p", pattern)
    code, out, _ = run(capsys, "run", path, "--format", "machine", "--seed", "4")
    assert code == 0 and machine(out)["backend"] == "dense"
    assert run(capsys, "run", path, "--backend", "tableau")[0] == 3


def test_run_bad_outcomes(capsys, write):
    _, pattern, _ = run(capsys, "compile", write("h.c", "wires 1\nh 0\n"))
    path = write("h.p", pattern)
    assert run(capsys, "run", path, "--outcomes", "01")[0] == 3
    assert run(capsys, "run", path, "--outcomes", "01x0")[0] == 2
    assert run(capsys, "run", write("bad.p", "graph\nn 1\n"))[0] == 2


def test_entropy_chain5(capsys, write):
    code, out, _ = run(capsys, "entropy", write("c5.g", "n 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\n"), "1-3", "--format", "machine")
    m = machine(out)
    assert code == 0 and m["entropy"] == "2" and m["crossing_bonds"] == "2" and m["agree"] == "true"


def test_entropy_star(capsys, write):
    code, out, _ = run(capsys, "entropy", write("s.g", "n 4\ne 0 1\ne 0 2\ne 0 3\n"), "1,2,3", "--format", "machine")
    m = machine(out)
    assert code == 0 and m["entropy"] == "1" and m["crossing_bonds"] == "3"


def test_entropy_invalid_region(capsys, write):
    path = write("s.g", "n 4\ne 0 1\n")
    assert run(capsys, "entropy", path, "7")[0] == 2
    assert run(capsys, "entropy", path, "0-3")[0] == 2
    assert run(capsys, "entropy", path, "a-b")[0] == 2


def test_vbs_check_grid(capsys, write):
    code, out, _ = run(capsys, "vbs-check", write("g.g", "n 4\ne 0 1\ne 0 2\ne 1 3\ne 2 3\n"), "--format", "machine")
    m = machine(out)
    assert code == 0 and m["pass"] == "true" and float(m["fidelity"]) >= 1 - 1e-10


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "chain.g"
    code, out, _ = run(capsys, "graph", "chain", "2", "--out", str(target))
    assert code == 0 and out == "" and target.read_text() == "n 2\ne 0 1\n"


def test_text_format_is_readable(capsys, write):
    code, out, _ = run(capsys, "vbs-check", write("k2.g", "n 2\ne 0 1\n"))
    assert code == 0 and "fidelity: 1.000000000000" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vbsqc", "graph", "chain", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "n 2\ne 0 1\n"
