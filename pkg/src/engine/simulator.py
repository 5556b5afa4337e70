"""
State-vector run of the one-query algorithm.

  1. prepare sum_i sqrt(c_i)|i>            (index 0 is the blank query)
  2. one phase-oracle call O_x|i> = (-1)^{x_i}|i>, with x_0 = 0
  3. measure {I - P, P}; outcome P means "answer 1"

All amplitudes stay real, so float64 vectors are enough.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from engine.boolfn import BitString, DimensionError, PartialBooleanFunction, sign_vector
from engine.feasibility import WeightCertificate
from engine.witness import ProjectorMatrix, WitnessError

NORM_TOLERANCE = 1e-12


@dataclass
class SimulationConfig:
    tolerance: float = 1e-9
    clamp_slack: float = 1e-12
    digits: int = 12

    @classmethod
    def from_config(cls, cfg: dict) -> "SimulationConfig":
        sim = cfg.get("simulation", {})
        return cls(
            tolerance=float(sim.get("tolerance", 1e-9)),
            clamp_slack=float(sim.get("clamp_slack", 1e-12)),
            digits=int(sim.get("digits", 12)),
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"state is not normalised (norm {norm!r})")

    @property
    def dimension(self) -> int:
        return self.amplitudes.shape[0]


class PhaseOracle:
    """O_x with a call counter, so runs can prove they queried once."""

    def __init__(self, x: BitString):
        self.x = x
        self.signs = np.array(sign_vector(x).signs, dtype=float)
        self.calls = 0

    def __call__(self, s: StateVector) -> StateVector:
        if s.dimension != self.signs.shape[0]:
            raise DimensionError(f"state of dimension {s.dimension}, oracle for n = {self.x.n}")
        self.calls += 1
        return StateVector(s.amplitudes * self.signs)


@dataclass(frozen=True)
class SimulationRecord:
    x: BitString
    p_accept: float
    expected: int
    passed: bool
    queries: int = 1


@dataclass(frozen=True)
class SimulationReport:
    records: tuple[SimulationRecord, ...]
    max_deviation: float
    tolerance: float

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> tuple[SimulationRecord, ...]:
        return tuple(r for r in self.records if not r.passed)


def initial_state(c: WeightCertificate) -> StateVector:
    weights = np.array([float(w) for w in c.weights])
    return StateVector(np.sqrt(weights))


def apply_phase_oracle(s: StateVector, x: BitString) -> StateVector:
    return PhaseOracle(x)(s)


def measure_projector(s: StateVector, p: ProjectorMatrix, clamp_slack: float = 1e-12) -> float:
    if s.dimension != p.dimension:
        raise DimensionError(f"state of dimension {s.dimension}, projector of dimension {p.dimension}")
    value = float(s.amplitudes @ p.matrix @ s.amplitudes)
    if value < -clamp_slack or value > 1.0 + clamp_slack:
        raise WitnessError(f"measurement gave {value!r}: operator is not a projector")
    return min(1.0, max(0.0, value))


def run_algorithm1(
    f: PartialBooleanFunction,
    c: WeightCertificate,
    p: ProjectorMatrix,
    tol: float = 1e-9,
    clamp_slack: float = 1e-12,
) -> SimulationReport:
    """Prepare, query once and measure for every domain input; compare with f."""
    if c.n != f.n or p.dimension != f.n + 1:
        raise DimensionError(
            f"function n = {f.n}, certificate n = {c.n}, projector dimension {p.dimension}"
        )
    start = initial_state(c)
    records = []
    worst = 0.0
    for x, expected in f.items():
        oracle = PhaseOracle(x)
        state = oracle(start)
        p_accept = measure_projector(state, p, clamp_slack)
        if oracle.calls != 1:
            raise AssertionError(f"{oracle.calls} oracle calls for input {x}")
        deviation = abs(p_accept - expected)
        worst = max(worst, deviation)
        records.append(SimulationRecord(x, p_accept, expected, deviation <= tol, oracle.calls))
    return SimulationReport(tuple(records), worst, tol)


def sample_algorithm1(
    f: PartialBooleanFunction,
    c: WeightCertificate,
    p: ProjectorMatrix,
    shots: int,
    seed: int = 0,
) -> dict[BitString, tuple[int, int]]:
    """Draw measurement outcomes: {x: (answers 0, answers 1)}."""
    rng = np.random.default_rng(seed)
    start = initial_state(c)
    counts = {}
    for x, _ in f.items():
        p_accept = measure_projector(apply_phase_oracle(start, x), p)
        ones = int(np.count_nonzero(rng.random(shots) < p_accept))
        counts[x] = (shots - ones, ones)
    return counts


def report_lines(report: SimulationReport, digits: int = 12) -> str:
    """Machine-readable rendering, one `x=... p=... f=... ok=...` line per input."""
    return "".join(
        f"x={r.x} p={r.p_accept:.{digits}f} f={r.expected} ok={int(r.passed)}\n"
        for r in report.records
    )
