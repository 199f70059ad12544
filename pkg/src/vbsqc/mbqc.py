"""One-way computation: compile circuits to adaptive measurement patterns and run them.

Layout
------
Each logical wire is a horizontal chain. A single-qubit gate costs four
chain sites measured in the XY plane (angles from :func:`compile_1q`); a CZ
adds a vertical edge between the two wires' current sites, and each wire
then takes two ``XY(0)`` steps (a Hadamard each) so the net gate is CZ.

Measurement semantics
---------------------
``XY(xi)`` outcome 0 projects on ``(|0> + e^{i xi}|1>)/sqrt 2``, outcome 1 on
``(|0> - e^{i xi}|1>)/sqrt 2``. The angle actually used is
``(-1)^{s} xi + t pi`` with ``s``/``t`` the outcome parities of the command's
``s_deps``/``t_deps``. ``Z`` measures the computational basis.

Execution is lazy: a site is allocated in |+> (and its edges applied) only
when a neighbour is about to be measured, so the live register stays at the
pattern's cut width rather than its site count.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import (
    BadForcedOutcomes,
    InvalidCircuit,
    InvalidPattern,
    NotClifford,
    ParseError,
    TooLarge,
    ZeroProbabilityBranch,
)
from .graph import Graph, new_graph, parse_edge_list, serialize
from .stabilizer import Tableau, _empty
from .statevec import (
    FORCED_OUTCOME_FLOOR,
    MAX_QUBITS,
    H,
    StateVector,
    X,
    _check_unitary,
    apply_cz,
    apply_unitary,
    fidelity_up_to_phase,
    permute_qubits,
    plus_state,
)
from .teleport import ByproductFrame

__all__ = [
    "Circuit",
    "EquivalenceReport",
    "Gate1Q",
    "GateCZ",
    "MeasurementCommand",
    "MeasurementPattern",
    "PatternRunResult",
    "SingleQubitSchedule",
    "compile_1q",
    "compile_circuit",
    "euler_xzx",
    "is_clifford_pattern",
    "parse_pattern",
    "peak_live_sites",
    "run_pattern",
    "run_pattern_stabilizer",
    "rx",
    "rz",
    "serialize_pattern",
    "simulate_circuit",
    "verify_equivalence",
    "xy_measurement_unitary",
]

_HALF_PI = math.pi / 2
_SQRT1_2 = 1 / math.sqrt(2)


def rx(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


# -- circuits -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Gate1Q:
    wire: int
    u: np.ndarray
    name: str = "u"


@dataclass(frozen=True)
class GateCZ:
    a: int
    b: int


@dataclass(frozen=True, eq=False)
class Circuit:
    """Gates on ``n_logical`` wires; CZ only between neighbouring wires."""

    n_logical: int
    gates: tuple[Gate1Q | GateCZ, ...] = ()

    def __post_init__(self) -> None:
        if self.n_logical < 1:
            raise InvalidCircuit("a circuit needs at least one wire")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            wires = (g.wire,) if isinstance(g, Gate1Q) else (g.a, g.b)
            for w in wires:
                if not 0 <= w < self.n_logical:
                    raise InvalidCircuit(f"wire {w} not in [0, {self.n_logical})")
            if isinstance(g, GateCZ) and abs(g.a - g.b) != 1:
                raise InvalidCircuit(f"CZ between non-adjacent wires {g.a}, {g.b}")
            if isinstance(g, Gate1Q):
                _check_unitary(np.asarray(g.u, dtype=complex))


def simulate_circuit(c: Circuit, state: StateVector) -> StateVector:
    """Direct dense simulation; wire ``w`` is qubit ``w``."""
    for g in c.gates:
        if isinstance(g, Gate1Q):
            state = apply_unitary(state, g.u, [g.wire])
        else:
            state = apply_cz(state, g.a, g.b)
    return state


# -- single-qubit compilation --------------------------------------------


def xy_measurement_unitary(xi: float, k: int) -> np.ndarray:
    """Operator carried to the next chain site by an ``XY(xi)`` measurement with outcome ``k``."""
    m = np.array([[1, np.exp(-1j * xi)], [1, -np.exp(-1j * xi)]]) / math.sqrt(2)
    return X @ m if k else m


def euler_xzx(u: np.ndarray) -> tuple[float, float, float, float]:
    """``(phi, a, b, c)`` with ``u = e^{i phi} Rx(a) Rz(b) Rx(c)``."""
    u = np.asarray(u, dtype=complex)
    _check_unitary(u)
    v = H @ u @ H  # = e^{i phi} Rz(a) Rx(b) Rz(c)
    phi = float(np.angle(np.linalg.det(v)) / 2)
    w = v * np.exp(-1j * phi)
    b = 2 * math.atan2(abs(w[1, 0]), abs(w[1, 1]))
    if abs(w[1, 1]) < 1e-12:
        plus, minus = 0.0, 2 * float(np.angle(1j * w[1, 0]))
    elif abs(w[1, 0]) < 1e-12:
        plus, minus = 2 * float(np.angle(w[1, 1])), 0.0
    else:
        plus, minus = 2 * float(np.angle(w[1, 1])), 2 * float(np.angle(1j * w[1, 0]))
    a, c = (plus + minus) / 2, (plus - minus) / 2
    return phi, a, b, c


class SingleQubitSchedule(NamedTuple):
    """Four XY angles and, per step, which earlier steps feed its s and t signals.

    ``-1`` in a template means the wire's incoming X (for s) or Z (for t)
    byproduct.
    """

    angles: tuple[float, float, float, float]
    s_template: tuple[tuple[int, ...], ...]
    t_template: tuple[tuple[int, ...], ...]


ONE_QUBIT_S_TEMPLATE = ((-1,), (0,), (1,), (2,))
ONE_QUBIT_T_TEMPLATE = ((-1,), (-1,), (0,), (1,))


def compile_1q(u: np.ndarray) -> SingleQubitSchedule:
    """Angles with ``M(xi4) M(xi3) M(xi2) M(xi1) ~ u`` (``xi1 = 0``).

    Since ``M(xi) = H diag(1, e^{-i xi})``, the product is
    ``Rx(-xi4) Rz(-xi3) Rx(-xi2)`` up to phase.
    """
    _, a, b, c = euler_xzx(u)
    return SingleQubitSchedule((0.0, -c, -b, -a), ONE_QUBIT_S_TEMPLATE, ONE_QUBIT_T_TEMPLATE)


# -- patterns ---------------------------------------------------------------


@dataclass(frozen=True)
class MeasurementCommand:
    site: int
    kind: str  # "xy" or "z"
    angle: float = 0.0
    s_deps: frozenset[int] = frozenset()
    t_deps: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.kind not in ("xy", "z"):
            raise InvalidPattern(f"unknown measurement kind {self.kind!r}")
        object.__setattr__(self, "s_deps", frozenset(self.s_deps))
        object.__setattr__(self, "t_deps", frozenset(self.t_deps))
        if self.kind == "z" and (self.s_deps or self.t_deps):
            raise InvalidPattern("Z measurements take no dependencies")


@dataclass(frozen=True, eq=False)
class MeasurementPattern:
    graph: Graph
    commands: tuple[MeasurementCommand, ...]
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    corrections: Mapping[int, tuple[frozenset[int], frozenset[int]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "commands", tuple(self.commands))
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(
            self,
            "corrections",
            {int(o): (frozenset(cx), frozenset(cz)) for o, (cx, cz) in dict(self.corrections).items()},
        )
        n = self.graph.n
        for label, sites in (("input", self.inputs), ("output", self.outputs)):
            if len(set(sites)) != len(sites):
                raise InvalidPattern(f"repeated {label} site")
            if any(not 0 <= v < n for v in sites):
                raise InvalidPattern(f"{label} site out of range")
        measured = [c.site for c in self.commands]
        if len(set(measured)) != len(measured):
            raise InvalidPattern("a site is measured twice")
        if set(measured) != set(range(n)) - set(self.outputs):
            raise InvalidPattern("commands must cover exactly the non-output sites")
        seen: set[int] = set()
        for c in self.commands:
            if not (c.s_deps | c.t_deps) <= seen:
                raise InvalidPattern(f"site {c.site} depends on a site not measured earlier")
            seen.add(c.site)
        for o, (cx, cz) in self.corrections.items():
            if o not in self.outputs:
                raise InvalidPattern(f"correction on non-output site {o}")
            if not (cx | cz) <= seen:
                raise InvalidPattern(f"correction on {o} depends on an unmeasured site")

    @property
    def n_xy(self) -> int:
        return sum(c.kind == "xy" for c in self.commands)


@dataclass
class PatternRunResult:
    outcomes: list[int]
    logical_state: StateVector | Tableau
    frame: ByproductFrame
    probability: float = 1.0


def compile_circuit(c: Circuit) -> MeasurementPattern:
    """Lower a circuit onto a cluster graph with adaptive XY measurements."""
    n = c.n_logical
    current = list(range(n))
    next_site = n
    edges: list[tuple[int, int]] = []
    commands: list[MeasurementCommand] = []
    xdom: list[frozenset[int]] = [frozenset()] * n
    zdom: list[frozenset[int]] = [frozenset()] * n

    def step(w: int, xi: float) -> None:
        nonlocal next_site
        v, new = current[w], next_site
        next_site += 1
        edges.append((v, new))
        commands.append(MeasurementCommand(v, "xy", xi, xdom[w], zdom[w]))
        # new byproduct X^{s_v} Z^{old x}; old z was folded into the angle
        zdom[w], xdom[w] = xdom[w], frozenset({v})
        current[w] = new

    for g in c.gates:
        if isinstance(g, Gate1Q):
            for xi in compile_1q(g.u).angles:
                step(g.wire, xi)
        else:
            a, b = g.a, g.b
            edges.append((current[a], current[b]))
            zdom[a], zdom[b] = zdom[a] ^ xdom[b], zdom[b] ^ xdom[a]
            for w in (a, b):
                step(w, 0.0)
                step(w, 0.0)
    corrections = {current[w]: (xdom[w], zdom[w]) for w in range(n) if xdom[w] or zdom[w]}
    return MeasurementPattern(
        new_graph(next_site, edges), tuple(commands), tuple(range(n)), tuple(current), corrections
    )


def _effective_angle(cmd: MeasurementCommand, outcomes: Mapping[int, int]) -> float:
    s = sum(outcomes[v] for v in cmd.s_deps) & 1
    t = sum(outcomes[v] for v in cmd.t_deps) & 1
    return (-1) ** s * cmd.angle + t * math.pi


def peak_live_sites(p: MeasurementPattern) -> int:
    """Largest register the lazy executors hold at once."""
    live = set(p.inputs)
    measured: set[int] = set()
    peak = len(live)
    for cmd in p.commands:
        live |= (p.graph.neighbors(cmd.site) - measured) | {cmd.site}
        peak = max(peak, len(live))
        live.discard(cmd.site)
        measured.add(cmd.site)
    live |= set(p.outputs)
    return max(peak, len(live))


def _split_view(amps: np.ndarray, n: int, q: int) -> np.ndarray:
    """View with axis 1 the value of qubit ``q``."""
    return amps.reshape(1 << (n - 1 - q), 2, 1 << q)


class _DenseRun:
    """Lazy dense execution on a flat little-endian amplitude array.

    Kept separate from the general :mod:`statevec` kernels because branch
    enumeration runs it hundreds of thousands of times; cheap to copy.
    """

    def __init__(self, p: MeasurementPattern, state: StateVector | None):
        self.p = p
        self.amps = np.ones(1, dtype=complex) if state is None else state.amps.copy()
        self.live = list(p.inputs)
        self.edges_done: set[tuple[int, int]] = set()
        self.outcomes: dict[int, int] = {}
        self.prob = 1.0

    def copy(self) -> _DenseRun:
        out = object.__new__(_DenseRun)
        out.p, out.amps, out.live = self.p, self.amps.copy(), list(self.live)
        out.edges_done, out.outcomes, out.prob = set(self.edges_done), dict(self.outcomes), self.prob
        return out

    def _alloc(self, v: int) -> None:
        if v not in self.live:
            # new highest qubit in |+>
            self.amps = np.concatenate([self.amps, self.amps]) * _SQRT1_2
            self.live.append(v)

    def _cz(self, q1: int, q2: int) -> None:
        lo, hi = sorted((q1, q2))
        n = len(self.live)
        view = self.amps.reshape(1 << (n - 1 - hi), 2, 1 << (hi - lo - 1), 2, 1 << lo)
        view[:, 1, :, 1, :] *= -1

    def _entangle(self, v: int) -> None:
        self._alloc(v)
        for w in self.p.graph.neighbors(v):
            e = (min(v, w), max(v, w))
            if e in self.edges_done:
                continue
            self._alloc(w)
            self._cz(self.live.index(v), self.live.index(w))
            self.edges_done.add(e)

    def measure(self, cmd: MeasurementCommand, outcome: int | None, rng) -> int:
        self._entangle(cmd.site)
        q = self.live.index(cmd.site)
        view = _split_view(self.amps, len(self.live), q)
        if cmd.kind == "z":
            rest = [view[:, 0, :], view[:, 1, :]]
        else:
            # <b_k| = (<0| +- e^{-i xi}<1|)/sqrt 2
            ph = np.exp(-1j * _effective_angle(cmd, self.outcomes))
            rest = [(view[:, 0, :] + ph * view[:, 1, :]) * _SQRT1_2, (view[:, 0, :] - ph * view[:, 1, :]) * _SQRT1_2]
        p0 = float(np.vdot(rest[0], rest[0]).real)
        p1 = float(np.vdot(rest[1], rest[1]).real)
        if outcome is None:
            if rng is None:
                raise ValueError("either forced outcomes or an rng is required")
            outcome = int(rng.random() * (p0 + p1) >= p0)
        prob = p1 if outcome else p0
        if prob < FORCED_OUTCOME_FLOOR:
            raise ZeroProbabilityBranch(f"outcome {outcome} at site {cmd.site} has probability {prob:.3e}")
        self.amps = (rest[outcome] / math.sqrt(prob)).reshape(-1)
        self.live.pop(q)
        self.outcomes[cmd.site] = outcome
        self.prob *= prob
        return outcome

    def finish(self) -> tuple[StateVector, ByproductFrame]:
        for o in self.p.outputs:
            self._entangle(o)
        n = len(self.live)
        frame = ByproductFrame.identity(len(self.p.outputs))
        for i, o in enumerate(self.p.outputs):
            cx, cz = self.p.corrections.get(o, (frozenset(), frozenset()))
            fx = sum(self.outcomes[v] for v in cx) & 1
            fz = sum(self.outcomes[v] for v in cz) & 1
            frame = frame.set(i, fx, fz)
            view = _split_view(self.amps, n, self.live.index(o))
            # undo X^fx Z^fz (up to phase): apply X then Z
            if fx:
                view[:] = view[:, ::-1, :].copy()
            if fz:
                view[:, 1, :] *= -1
        s = StateVector(n, self.amps)
        return permute_qubits(s, [self.live.index(o) for o in self.p.outputs]), frame


def _forced(p: MeasurementPattern, outcomes: Sequence[int] | None) -> list[int | None]:
    if outcomes is None:
        return [None] * len(p.commands)
    if len(outcomes) != len(p.commands):
        raise BadForcedOutcomes(f"{len(outcomes)} outcomes for {len(p.commands)} commands")
    if any(o not in (0, 1) for o in outcomes):
        raise BadForcedOutcomes("outcomes must be bits")
    return list(outcomes)


def run_pattern(
    p: MeasurementPattern,
    input_state: StateVector | None = None,
    outcomes: Sequence[int] | None = None,
    rng: np.random.Generator | None = None,
) -> PatternRunResult:
    """Execute a pattern on the dense backend.

    ``input_state`` has one qubit per input site (in ``p.inputs`` order). The
    logical state is returned on ``p.outputs`` (in order) after the
    corrections; ``frame`` records which corrections were applied.
    """
    forced = _forced(p, outcomes)
    n_in = len(p.inputs)
    if input_state is None:
        input_state = StateVector(0, np.ones(1, dtype=complex)) if n_in == 0 else plus_state(n_in)
    if input_state.n != n_in:
        raise BadForcedOutcomes(f"input state has {input_state.n} qubits, pattern has {n_in} inputs")
    width = peak_live_sites(p)
    if width > MAX_QUBITS:
        raise TooLarge(f"pattern needs {width} live qubits; dense cap is {MAX_QUBITS}")
    run = _DenseRun(p, input_state if n_in else None)
    bits = [run.measure(cmd, f, rng) for cmd, f in zip(p.commands, forced)]
    state, frame = run.finish()
    return PatternRunResult(bits, state, frame, run.prob)


def is_clifford_pattern(p: MeasurementPattern, tol: float = 1e-9) -> bool:
    for c in p.commands:
        if c.kind == "xy":
            k = c.angle / _HALF_PI
            if abs(k - round(k)) > tol:
                return False
    return True


_XY_PAULI = {0: ((1, 0), 0), 1: ((1, 1), 0), 2: ((1, 0), 1), 3: ((1, 1), 1)}  # +X, +Y, -X, -Y


class _TableauRun:
    def __init__(self, p: MeasurementPattern, t: Tableau):
        self.p = p
        self.t = t.copy()
        self.live = list(p.inputs)
        self.edges_done: set[tuple[int, int]] = set()
        self.outcomes: dict[int, int] = {}

    def _alloc(self, v: int) -> None:
        if v not in self.live:
            self.t._append_plus()
            self.live.append(v)

    def _entangle(self, v: int) -> None:
        self._alloc(v)
        for w in self.p.graph.neighbors(v):
            e = (min(v, w), max(v, w))
            if e in self.edges_done:
                continue
            self._alloc(w)
            self.t._apply("CZ", [self.live.index(v), self.live.index(w)])
            self.edges_done.add(e)

    def measure(self, cmd: MeasurementCommand, outcome: int | None, rng) -> int:
        self._entangle(cmd.site)
        q = self.live.index(cmd.site)
        n = self.t.n
        px = np.zeros(n, dtype=np.uint8)
        pz = np.zeros(n, dtype=np.uint8)
        if cmd.kind == "z":
            pz[q], sign = 1, 0
        else:
            k = round(_effective_angle(cmd, self.outcomes) / _HALF_PI) % 4
            (px[q], pz[q]), sign = _XY_PAULI[k]
        bit, det, row = self.t._measure(px, pz, sign, outcome, rng)
        if det:
            row = self.t._make_row(px, pz)
        self.t._drop_qubit(q, row)
        self.live.pop(q)
        self.outcomes[cmd.site] = bit
        return bit

    def finish(self) -> tuple[Tableau, ByproductFrame]:
        for o in self.p.outputs:
            self._entangle(o)
        order = [self.live.index(o) for o in self.p.outputs]
        t = self.t
        out = Tableau(t.n, t._x[:, order].copy(), t._z[:, order].copy(), t._r.copy())
        frame = ByproductFrame.identity(len(self.p.outputs))
        for i, o in enumerate(self.p.outputs):
            cx, cz = self.p.corrections.get(o, (frozenset(), frozenset()))
            fx = sum(self.outcomes[v] for v in cx) & 1
            fz = sum(self.outcomes[v] for v in cz) & 1
            frame = frame.set(i, fx, fz)
            if fx:
                out._apply("X", [i])
            if fz:
                out._apply("Z", [i])
        return out, frame


def run_pattern_stabilizer(
    p: MeasurementPattern,
    input_tableau: Tableau | None = None,
    outcomes: Sequence[int] | None = None,
    rng: np.random.Generator | None = None,
) -> PatternRunResult:
    """Execute a Clifford pattern on the tableau backend.

    Inputs default to |+> on every input site. Polynomial in the site count.
    """
    if not is_clifford_pattern(p):
        raise NotClifford("XY angles must be multiples of pi/2 for the tableau backend")
    forced = _forced(p, outcomes)
    if input_tableau is None:
        x, z, r = _empty(0)
        input_tableau = Tableau(0, x, z, r)
        for _ in p.inputs:
            input_tableau._append_plus()
    if input_tableau.n != len(p.inputs):
        raise BadForcedOutcomes(f"input tableau has {input_tableau.n} qubits, pattern has {len(p.inputs)} inputs")
    run = _TableauRun(p, input_tableau)
    bits = [run.measure(cmd, f, rng) for cmd, f in zip(p.commands, forced)]
    t, frame = run.finish()
    return PatternRunResult(bits, t, frame)


# -- equivalence harness ----------------------------------------------------


@dataclass
class EquivalenceReport:
    mode: str  # "exhaustive" or "sampled"
    total_branches: int
    outcomes: list[tuple[int, ...]]
    fidelities: list[float]
    probabilities: list[float]
    seed: int
    threshold: float = 1 - 1e-9

    @property
    def n_branches(self) -> int:
        return len(self.fidelities)

    @property
    def min_fidelity(self) -> float:
        return min(self.fidelities) if self.fidelities else float("nan")

    @property
    def mean_fidelity(self) -> float:
        return float(np.mean(self.fidelities)) if self.fidelities else float("nan")

    @property
    def passed(self) -> bool:
        return bool(self.fidelities) and self.min_fidelity >= self.threshold


def verify_equivalence(
    c: Circuit,
    input_state: StateVector,
    branch_budget: int = 4096,
    n_samples: int | None = None,
    seed: int = 0,
) -> EquivalenceReport:
    """Compile ``c`` and compare every run branch with direct simulation.

    All ``2^m`` branches are enumerated when that is within ``branch_budget``;
    otherwise ``n_samples`` (default ``min(branch_budget, 256)``) branches are
    drawn, branch ``i`` from an RNG seeded with ``seed ^ i``.
    """
    if branch_budget < 1:
        raise ValueError("branch budget must be positive")
    p = compile_circuit(c)
    width = peak_live_sites(p)
    if width > MAX_QUBITS:
        raise TooLarge(f"compiled pattern needs {width} live qubits")
    expected = simulate_circuit(c, input_state)
    total = 1 << len(p.commands)
    outs: list[tuple[int, ...]] = []
    fids: list[float] = []
    probs: list[float] = []
    if total <= branch_budget:
        mode = "exhaustive"

        def dfs(run: _DenseRun, k: int) -> None:
            if k == len(p.commands):
                final = run.copy()
                state, _ = final.finish()
                outs.append(tuple(final.outcomes[cmd.site] for cmd in p.commands))
                fids.append(fidelity_up_to_phase(state, expected))
                probs.append(final.prob)
                return
            for bit in (0, 1):
                branch = run.copy()
                try:
                    branch.measure(p.commands[k], bit, None)
                except ZeroProbabilityBranch:
                    continue
                dfs(branch, k + 1)

        dfs(_DenseRun(p, input_state), 0)
    else:
        mode = "sampled"
        count = min(branch_budget, 256) if n_samples is None else n_samples
        for i in range(count):
            res = run_pattern(p, input_state, rng=np.random.default_rng(seed ^ i))
            outs.append(tuple(res.outcomes))
            fids.append(fidelity_up_to_phase(res.logical_state, expected))
            probs.append(res.probability)
    return EquivalenceReport(mode, total, outs, fids, probs, seed)


# -- text format ------------------------------------------------------------


def _fmt_angle(x: float) -> str:
    return np.format_float_positional(x, precision=12, unique=False, fractional=False, trim="-")


def _fmt_sites(sites: Iterable[int]) -> str:
    return ",".join(str(v) for v in sorted(sites))


def serialize_pattern(p: MeasurementPattern) -> str:
    """Text form: graph block, inputs, outputs, ordered commands, corrections."""
    lines = ["graph"] + serialize(p.graph).splitlines() + ["end"]
    lines.append("inputs " + " ".join(map(str, p.inputs)))
    lines.append("outputs " + " ".join(map(str, p.outputs)))
    for c in p.commands:
        if c.kind == "z":
            lines.append(f"z {c.site}")
        else:
            lines.append(f"xy {c.site} {_fmt_angle(c.angle)} s:{_fmt_sites(c.s_deps)} t:{_fmt_sites(c.t_deps)}")
    for o in p.outputs:
        cx, cz = p.corrections.get(o, (frozenset(), frozenset()))
        if cx:
            lines.append(f"cx {o} " + " ".join(map(str, sorted(cx))))
        if cz:
            lines.append(f"cz {o} " + " ".join(map(str, sorted(cz))))
    return "\n".join(lines) + "\n"


def _parse_sites(text: str, prefix: str, lineno: int) -> frozenset[int]:
    if not text.startswith(prefix):
        raise ParseError(f"expected '{prefix}<list>'", lineno)
    body = text[len(prefix) :]
    try:
        return frozenset(int(v) for v in body.split(",") if v)
    except ValueError as exc:
        raise ParseError(f"bad site list {body!r}", lineno) from exc


def parse_pattern(text: str) -> MeasurementPattern:
    lines = text.splitlines()
    graph_lines: list[str] = []
    inputs = outputs = None
    commands: list[MeasurementCommand] = []
    corr: dict[int, list[frozenset[int]]] = {}
    in_graph = False
    graph_start = 0
    saw_graph = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if in_graph:
            if line == "end":
                in_graph = False
            else:
                graph_lines.append(raw)
            continue
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "graph" and len(parts) == 1:
                if saw_graph:
                    raise ParseError("duplicate graph block", lineno)
                in_graph = saw_graph = True
                graph_start = lineno
            elif parts[0] == "inputs":
                inputs = tuple(int(v) for v in parts[1:])
            elif parts[0] == "outputs":
                outputs = tuple(int(v) for v in parts[1:])
            elif parts[0] == "xy" and len(parts) == 5:
                commands.append(
                    MeasurementCommand(
                        int(parts[1]),
                        "xy",
                        float(parts[2]),
                        _parse_sites(parts[3], "s:", lineno),
                        _parse_sites(parts[4], "t:", lineno),
                    )
                )
            elif parts[0] == "z" and len(parts) == 2:
                commands.append(MeasurementCommand(int(parts[1]), "z"))
            elif parts[0] in ("cx", "cz") and len(parts) >= 2:
                slot = corr.setdefault(int(parts[1]), [frozenset(), frozenset()])
                slot[0 if parts[0] == "cx" else 1] = frozenset(int(v) for v in parts[2:])
            else:
                raise ParseError(f"unrecognized line {raw.strip()!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad number in {raw.strip()!r}", lineno) from exc
    if in_graph:
        raise ParseError("graph block not closed with 'end'", graph_start)
    if not saw_graph or inputs is None or outputs is None:
        raise ParseError("pattern needs graph, inputs and outputs")
    try:
        g = parse_edge_list("\n".join(graph_lines))
    except ParseError as exc:
        raise ParseError(f"in graph block starting at line {graph_start}: {exc}") from exc
    return MeasurementPattern(g, tuple(commands), inputs, outputs, {o: (v[0], v[1]) for o, v in corr.items()})
