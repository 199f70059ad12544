"""Command-line front end.

Exit codes: 0 success, 2 parse/usage error, 3 semantic error, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

import numpy as np

from . import graph as graphs
from .errors import (
    InvalidCircuit,
    InvalidDimension,
    InvalidEdge,
    InvalidPattern,
    InvalidSubset,
    NotClifford,
    NotUnitary,
    ParseError,
    TooLarge,
    VbsqcError,
    VertexOutOfRange,
)
from .mbqc import (
    Circuit,
    Gate1Q,
    GateCZ,
    compile_circuit,
    is_clifford_pattern,
    parse_pattern,
    run_pattern,
    run_pattern_stabilizer,
    rx,
    rz,
    serialize_pattern,
    verify_equivalence,
)
from .stabilizer import canonical_form, graph_region_entropy, tableau_zero_state
from .statevec import (
    MAX_QUBITS,
    H,
    S,
    X,
    Y,
    Z,
    basis_state,
    entropy_bits,
    fidelity_up_to_phase,
    graph_state,
    plus_state,
    random_state,
)
from .vbs import materialize, vbs_spec

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_VERIFY = 0, 2, 3, 4

DENSE_ENTROPY_MAX = 14
_NAMED = {"h": H, "x": X, "y": Y, "z": Z, "s": S}


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# -- circuit text format ------------------------------------------------------


def parse_circuit(text: str) -> Circuit:
    """Parse ``wires n`` followed by gate lines; ``#`` starts a comment."""
    n = None
    gates: list[Gate1Q | GateCZ] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op, *args = line.split()
        op = op.lower()
        try:
            if op == "wires" and len(args) == 1 and n is None:
                n = int(args[0])
                if n < 1:
                    raise ParseError("wire count must be positive", lineno)
                continue
            if n is None:
                raise ParseError("first statement must be 'wires <n>'", lineno)
            if op in _NAMED and len(args) == 1:
                gates.append(Gate1Q(int(args[0]), _NAMED[op], op))
            elif op in ("rx", "rz") and len(args) == 2:
                theta = float(args[1])
                gates.append(Gate1Q(int(args[0]), (rx if op == "rx" else rz)(theta), f"{op}({args[1]})"))
            elif op == "u" and len(args) == 9:
                v = [float(a) for a in args[1:]]
                u = np.array([complex(v[0], v[1]), complex(v[2], v[3]), complex(v[4], v[5]), complex(v[6], v[7])])
                gates.append(Gate1Q(int(args[0]), u.reshape(2, 2), "u"))
            elif op == "cz" and len(args) == 2:
                gates.append(GateCZ(int(args[0]), int(args[1])))
            else:
                raise ParseError(f"unrecognized statement {line!r}", lineno)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(f"bad number in {line!r}", lineno) from exc
    if n is None:
        raise ParseError("missing 'wires <n>'")
    return Circuit(n, tuple(gates))


# -- output -------------------------------------------------------------------


def _num(x: float) -> str:
    s = f"{x:.12f}"
    return "0.000000000000" if s == "-0.000000000000" else s


class _Report:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.items: list[tuple[str, str, str]] = []

    def add(self, key: str, value, label: str | None = None) -> None:
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, float):
            text = _num(value)
        elif isinstance(value, (list, tuple)):
            text = " ".join(_num(v) if isinstance(v, float) else str(v) for v in value)
        else:
            text = str(value)
        self.items.append((key, text, label or key.replace("_", " ")))

    def render(self) -> str:
        if self.fmt == "machine":
            return "".join(f"{k} = {v}\n" for k, v, _ in self.items)
        return "".join(f"{lab}: {v}\n" for _, v, lab in self.items)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Fail(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from exc


def _parse_region(text: str, n: int) -> list[int]:
    out: set[int] = set()
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.update(range(int(lo), int(hi) + 1))
            else:
                out.add(int(part))
    except ValueError as exc:
        raise InvalidSubset(f"bad region {text!r}") from exc
    if not out or any(not 0 <= v < n for v in out):
        raise InvalidSubset(f"region {text!r} must be a non-empty subset of 0..{n - 1}")
    return sorted(out)


# -- commands -------------------------------------------------------------------


def cmd_graph(args, rep: _Report) -> tuple[int, str]:
    if args.kind == "validate":
        g = graphs.parse_edge_list(_read(args.params[0]) if args.params else "")
        rep.add("valid", True)
        rep.add("vertices", g.n)
        rep.add("edges", len(g.edges))
        return EXIT_OK, rep.render()
    try:
        nums = [int(p) for p in args.params]
    except ValueError as exc:
        raise _Fail(EXIT_PARSE, f"lattice parameters must be integers: {args.params}") from exc
    want = {"chain": 1, "grid": 2, "honeycomb": 2}[args.kind]
    if len(nums) != want:
        raise _Fail(EXIT_PARSE, f"'graph {args.kind}' takes {want} integer parameter(s)")
    try:
        g = getattr(graphs, args.kind)(*nums)
    except InvalidDimension as exc:
        raise _Fail(EXIT_PARSE, str(exc)) from exc
    return EXIT_OK, graphs.serialize(g)


def cmd_compile(args, rep: _Report) -> tuple[int, str]:
    return EXIT_OK, serialize_pattern(compile_circuit(parse_circuit(_read(args.file))))


def _pick_backend(requested: str, clifford: bool) -> str:
    if requested == "auto":
        return "tableau" if clifford else "dense"
    if requested == "tableau" and not clifford:
        raise NotClifford("pattern has non-Clifford angles; use the dense backend")
    return requested


def cmd_run(args, rep: _Report) -> tuple[int, str]:
    p = parse_pattern(_read(args.file))
    backend = _pick_backend(args.backend, is_clifford_pattern(p))
    forced = None
    if args.outcomes is not None:
        if any(ch not in "01" for ch in args.outcomes):
            raise _Fail(EXIT_PARSE, "--outcomes must be a bit string")
        forced = [int(ch) for ch in args.outcomes]
    rng = np.random.default_rng(args.seed)
    n_in = len(p.inputs)
    rep.add("seed", args.seed)
    rep.add("backend", backend)
    rep.add("input", args.input)
    if backend == "tableau":
        if args.input == "random":
            raise NotClifford("random inputs need the dense backend")
        t = tableau_zero_state(n_in)
        if args.input == "plus":
            for q in range(n_in):
                t._apply("H", [q])
        res = run_pattern_stabilizer(p, t, outcomes=forced, rng=rng)
        rep.add("outcomes", "".join(map(str, res.outcomes)))
        rep.add("frame_x", list(res.frame.x))
        rep.add("frame_z", list(res.frame.z))
        for i, s in enumerate(canonical_form(res.logical_state).stabilizers()):
            rep.add(f"stabilizer.{i}", str(s))
        return EXIT_OK, rep.render()
    if n_in == 0:
        state = None
    elif args.input == "plus":
        state = plus_state(n_in)
    elif args.input == "random":
        state = random_state(n_in, rng)
    else:
        state = basis_state([0] * n_in)
    res = run_pattern(p, state, outcomes=forced, rng=rng)
    rep.add("outcomes", "".join(map(str, res.outcomes)))
    rep.add("probability", res.probability)
    rep.add("frame_x", list(res.frame.x))
    rep.add("frame_z", list(res.frame.z))
    amps = res.logical_state.amps
    # fix the global phase on the largest amplitude so output is reproducible
    k = int(np.argmax(np.abs(amps) > np.abs(amps).max() - 1e-9))
    amps = amps * np.exp(-1j * np.angle(amps[k]))
    rep.add("amplitudes", [float(np.round(v, 10)) for a in amps for v in (a.real, a.imag)])
    return EXIT_OK, rep.render()


def cmd_verify(args, rep: _Report) -> tuple[int, str]:
    c = parse_circuit(_read(args.file))
    n_cmds = 4 * len(c.gates)  # every gate compiles to four XY commands
    if args.branches == "exhaustive":
        budget = max(1, 1 << n_cmds)
    else:
        try:
            budget = int(args.branches)
        except ValueError as exc:
            raise _Fail(EXIT_PARSE, "--branches must be a positive integer or 'exhaustive'") from exc
        if budget < 1:
            raise _Fail(EXIT_PARSE, "--branches must be positive")
    state = random_state(c.n_logical, np.random.default_rng(args.seed))
    r = verify_equivalence(c, state, branch_budget=budget, seed=args.seed)
    rep.add("seed", args.seed)
    rep.add("backend", "dense")
    rep.add("mode", r.mode)
    rep.add("total_branches", r.total_branches)
    rep.add("branches_checked", r.n_branches)
    rep.add("min_fidelity", r.min_fidelity)
    rep.add("mean_fidelity", r.mean_fidelity)
    for i, (o, f) in enumerate(zip(r.outcomes, r.fidelities)):
        rep.add(f"branch.{i}", f"{''.join(map(str, o))} {_num(f)}")
    rep.add("pass", r.passed)
    return (EXIT_OK if r.passed else EXIT_VERIFY), rep.render()


def cmd_entropy(args, rep: _Report) -> tuple[int, str]:
    g = graphs.parse_edge_list(_read(args.file))
    region = _parse_region(args.region, g.n)
    ent = graph_region_entropy(g, region)
    rep.add("region", region)
    rep.add("entropy", ent)
    rep.add("crossing_bonds", g.crossing_edges(region))
    if g.n <= DENSE_ENTROPY_MAX:
        dense = entropy_bits(graph_state(g), region)
        rep.add("dense_entropy", dense)
        rep.add("agree", bool(abs(dense - ent) < 1e-8))
    return EXIT_OK, rep.render()


def cmd_vbs_check(args, rep: _Report) -> tuple[int, str]:
    g = graphs.parse_edge_list(_read(args.file))
    if g.n > MAX_QUBITS:
        raise TooLarge(f"{g.n} sites exceeds the dense cap of {MAX_QUBITS}")
    fid = fidelity_up_to_phase(materialize(vbs_spec(g)), graph_state(g))
    ok = fid >= 1 - 1e-10
    rep.add("vertices", g.n)
    rep.add("edges", len(g.edges))
    rep.add("fidelity", fid)
    rep.add("pass", ok)
    return (EXIT_OK if ok else EXIT_VERIFY), rep.render()


# -- entry point ------------------------------------------------------------------


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="unsigned 64-bit RNG seed (default 0)")
    common.add_argument("--backend", choices=("dense", "tableau", "auto"), default="auto")
    common.add_argument("--branches", default="4096", help="branch budget: a positive integer or 'exhaustive'")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--out", help="write output to this path instead of stdout")

    ap = argparse.ArgumentParser(prog="vbsqc", description="Graph states, VBS and measurement-based computation.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", parents=[common], help="generate or validate edge lists")
    g.add_argument("kind", choices=("chain", "grid", "honeycomb", "validate"))
    g.add_argument("params", nargs="*", help="lattice sizes, or the file to validate")
    g.set_defaults(func=cmd_graph)

    c = sub.add_parser("compile", parents=[common], help="compile a circuit file to a measurement pattern")
    c.add_argument("file")
    c.set_defaults(func=cmd_compile)

    r = sub.add_parser("run", parents=[common], help="execute a measurement pattern")
    r.add_argument("file")
    r.add_argument("--input", choices=("zero", "plus", "random"), default="zero", help="state on the input sites")
    r.add_argument("--outcomes", help="forced outcome bits, one per command")
    r.set_defaults(func=cmd_run)

    v = sub.add_parser("verify", parents=[common], help="check a compiled circuit against direct simulation")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("entropy", parents=[common], help="entanglement entropy of a region of a graph state")
    e.add_argument("file")
    e.add_argument("region", help="vertex list such as 1-3 or 0,2,5")
    e.set_defaults(func=cmd_entropy)

    b = sub.add_parser("vbs-check", parents=[common], help="compare the VBS construction with the graph state")
    b.add_argument("file")
    b.set_defaults(func=cmd_vbs_check)
    return ap


_PARSE_ERRORS = (ParseError, InvalidSubset, InvalidEdge, VertexOutOfRange)
_SEMANTIC_ERRORS = (InvalidCircuit, InvalidPattern, NotClifford, NotUnitary, TooLarge)


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = _Report(args.format)
    try:
        code, text = args.func(args, rep)
    except _Fail as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _SEMANTIC_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except VbsqcError as exc:
        # remaining library errors describe inputs the command cannot act on
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
