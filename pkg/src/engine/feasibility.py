"""
Weight certificates for one-query functions.

A function f admits an exact one-query algorithm iff there are weights
c_0..c_n >= 0 with sum 1 such that every pair x, y with f(x) != f(y)
satisfies

    sum_{i in S(x, y)} c_i = 1/2,     S(x, y) = {i : x_i != y_i}.

Decision procedure:
  1. Equality-only Gauss–Jordan elimination over the constraint rows and
     the simplex row. An inconsistent row is a pure equality
     contradiction and comes with Farkas multipliers.
  2. Phase-one simplex with Bland's rule over the independent rows left
     by step 1, for the c_i >= 0 part.

Everything is Fraction arithmetic; no float ever enters this module.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from engine.boolfn import (
    BitString,
    DimensionError,
    IndexSet,
    PartialBooleanFunction,
    differing_set,
)
from engine.exact import rref

HALF = Fraction(1, 2)


class CertificateFormatError(ValueError):
    """Certificate text is malformed or the weights violate the simplex constraints."""


@dataclass(frozen=True)
class WeightCertificate:
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) < 2:
            raise CertificateFormatError("a certificate needs weights c_0..c_n with n >= 1")
        if any(w < 0 for w in self.weights):
            raise CertificateFormatError("weights must be non-negative")
        if sum(self.weights, Fraction(0)) != 1:
            raise CertificateFormatError(
                f"weights must sum to 1, got {sum(self.weights, Fraction(0))}"
            )

    @classmethod
    def of(cls, weights: Sequence[int | str | Fraction]) -> "WeightCertificate":
        return cls(tuple(Fraction(w) for w in weights))

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w > 0)

    def __getitem__(self, i: int) -> Fraction:
        return self.weights[i]


@dataclass(frozen=True)
class ConstraintSystem:
    n: int
    sets: tuple[IndexSet, ...]
    provenance: tuple[tuple[BitString, BitString], ...]
    contradiction: bool = False

    def rows(self) -> tuple[list[Fraction], list[Fraction]]:
        """Coefficient rows over c_0..c_n: one per set, then the simplex row."""
        width = self.n + 1
        a = []
        for s in self.sets:
            row = [Fraction(0)] * width
            for i in s:
                row[i] = Fraction(1)
            a.append(row)
        a.append([Fraction(1)] * width)
        b = [HALF] * len(self.sets) + [Fraction(1)]
        return a, b


@dataclass(frozen=True)
class Feasible:
    certificate: WeightCertificate

    @property
    def feasible(self) -> bool:
        return True


@dataclass(frozen=True)
class Infeasible:
    trace: tuple[str, ...]
    # Multipliers over (constraint rows, simplex row) with yᵀA = 0, yᵀb != 0;
    # only present when equality elimination alone is contradictory.
    farkas: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return False


FeasibilityOutcome = Union[Feasible, Infeasible]


# ── Constraint construction ─────────────────────────────────────────────────

def build_constraints(f: PartialBooleanFunction) -> ConstraintSystem:
    """One equality per distinct differing set over value-distinguishing pairs."""
    seen: dict[IndexSet, tuple[BitString, BitString]] = {}
    contradiction = False
    items = f.items()
    for a, (x, fx) in enumerate(items):
        for y, fy in items[a + 1:]:
            if fx == fy:
                continue
            s = differing_set(x, y)
            if not s.members:
                contradiction = True
                continue
            seen.setdefault(s, (x, y))
    return ConstraintSystem(
        n=f.n,
        sets=tuple(seen.keys()),
        provenance=tuple(seen.values()),
        contradiction=contradiction,
    )


# ── Simplex ─────────────────────────────────────────────────────────────────

class _Tableau:
    """
    Dense tableau for  A z = b, z >= 0  with one artificial per row
    (columns n_struct .. n_struct + m - 1). Bland's rule throughout.
    """

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction]):
        self.m = len(rows)
        self.n_struct = len(rows[0]) if rows else 0
        self.width = self.n_struct + self.m
        self.t = [
            list(row) + [Fraction(int(k == i)) for k in range(self.m)]
            for i, row in enumerate(rows)
        ]
        self.rhs = list(rhs)
        self.basis = [self.n_struct + i for i in range(self.m)]
        self.steps: list[str] = []

    def _name(self, j: int) -> str:
        return f"c{j}" if j < self.n_struct else f"a{j - self.n_struct}"

    def pivot(self, r: int, j: int):
        self.steps.append(f"pivot: {self._name(j)} enters, {self._name(self.basis[r])} leaves")
        p = self.t[r][j]
        self.t[r] = [v / p for v in self.t[r]]
        self.rhs[r] /= p
        for k in range(self.m):
            if k != r and self.t[k][j] != 0:
                factor = self.t[k][j]
                self.t[k] = [a - factor * b for a, b in zip(self.t[k], self.t[r])]
                self.rhs[k] -= factor * self.rhs[r]
        self.basis[r] = j

    def minimize(self, cost: list[Fraction], columns: range) -> str:
        while True:
            in_basis = set(self.basis)
            entering = None
            for j in columns:
                if j in in_basis:
                    continue
                reduced = cost[j] - sum(
                    (cost[self.basis[k]] * self.t[k][j] for k in range(self.m)), Fraction(0)
                )
                if reduced < 0:
                    entering = j
                    break
            if entering is None:
                return "optimal"
            candidates = [
                (self.rhs[k] / self.t[k][entering], self.basis[k], k)
                for k in range(self.m)
                if self.t[k][entering] > 0
            ]
            if not candidates:
                return "unbounded"
            _, _, row = min(candidates)
            self.pivot(row, entering)

    def objective(self, cost: list[Fraction]) -> Fraction:
        return sum((cost[self.basis[k]] * self.rhs[k] for k in range(self.m)), Fraction(0))

    def drive_out_artificials(self):
        """After a zero-cost phase one, replace basic artificials by structural columns."""
        for k in range(self.m):
            if self.basis[k] < self.n_struct:
                continue
            j = next((j for j in range(self.n_struct) if self.t[k][j] != 0), None)
            if j is not None:
                self.pivot(k, j)

    def solution(self) -> list[Fraction]:
        z = [Fraction(0)] * self.n_struct
        for k, var in enumerate(self.basis):
            if var < self.n_struct:
                z[var] = self.rhs[k]
        return z


def _phase_one(cs: ConstraintSystem) -> tuple[_Tableau | None, Infeasible | None]:
    a, b = cs.rows()
    width = cs.n + 1
    m = len(a)
    if cs.contradiction:
        return None, Infeasible(("two inputs with equal bits carry different values: 0 = 1/2",))

    augmented = [
        row + [rhs] + [Fraction(int(k == i)) for k in range(m)]
        for i, (row, rhs) in enumerate(zip(a, b))
    ]
    red = rref(augmented, pivot_columns=width)
    trace = list(red.steps)
    for row in red.rows[len(red.pivots):]:
        if row[width] != 0:
            y = tuple(row[width + 1:])
            terms = [f"{v}*{_row_label(cs, k)}" for k, v in enumerate(y) if v != 0]
            trace.append(f"combination {' + '.join(terms)} gives 0 = {row[width]}")
            return None, Infeasible(tuple(trace), farkas=y)

    rows = []
    rhs = []
    for r in range(len(red.pivots)):
        row = red.rows[r][:width]
        value = red.rows[r][width]
        if value < 0:
            row = [-v for v in row]
            value = -value
        rows.append(row)
        rhs.append(value)

    tableau = _Tableau(rows, rhs)
    cost = [Fraction(0)] * tableau.n_struct + [Fraction(1)] * tableau.m
    tableau.minimize(cost, range(tableau.width))
    residual = tableau.objective(cost)
    if residual > 0:
        trace.extend(tableau.steps)
        trace.append(f"phase one optimum leaves artificial total {residual} > 0")
        return None, Infeasible(tuple(trace))
    tableau.drive_out_artificials()
    return tableau, None


def _row_label(cs: ConstraintSystem, k: int) -> str:
    if k < len(cs.sets):
        return f"[sum{cs.sets[k]}=1/2]"
    return "[sum=1]"


def solve_feasibility(cs: ConstraintSystem) -> FeasibilityOutcome:
    tableau, infeasible = _phase_one(cs)
    if infeasible is not None:
        return infeasible
    return Feasible(WeightCertificate(tuple(tableau.solution())))


def support_analysis(cs: ConstraintSystem) -> tuple[int, ...]:
    """Indices that carry positive weight in at least one certificate."""
    tableau, infeasible = _phase_one(cs)
    if infeasible is not None:
        return ()
    support = []
    for i in range(cs.n + 1):
        trial = copy.deepcopy(tableau)
        cost = [Fraction(0)] * trial.n_struct
        cost[i] = Fraction(-1)
        trial.minimize(cost, range(trial.n_struct))
        if trial.solution()[i] > 0:
            support.append(i)
    return tuple(support)


def check_farkas(cs: ConstraintSystem, y: Sequence[Fraction]) -> bool:
    """True iff yᵀA = 0 and yᵀb != 0 over (constraint rows, simplex row)."""
    a, b = cs.rows()
    if len(y) != len(a):
        return False
    combined = [sum((y[k] * a[k][j] for k in range(len(a))), Fraction(0)) for j in range(cs.n + 1)]
    return all(v == 0 for v in combined) and sum(
        (yk * bk for yk, bk in zip(y, b)), Fraction(0)
    ) != 0


# ── Verification ────────────────────────────────────────────────────────────

def verify_certificate(f: PartialBooleanFunction, c: WeightCertificate) -> bool:
    """Recheck every distinguishing pair directly, independent of build_constraints."""
    if c.n != f.n:
        raise DimensionError(f"certificate for n = {c.n}, function has n = {f.n}")
    if any(w < 0 for w in c.weights) or sum(c.weights, Fraction(0)) != 1:
        return False
    items = f.items()
    for a, (x, fx) in enumerate(items):
        for y, fy in items[a + 1:]:
            if fx != fy:
                weight = sum((c.weights[i + 1] for i in range(f.n) if x.bits[i] != y.bits[i]), Fraction(0))
                if weight != HALF:
                    return False
    return True


# ── Certificate text format ─────────────────────────────────────────────────

def format_certificate(c: WeightCertificate) -> str:
    lines = [f"n={c.n}"]
    lines.extend(f"c{i}={w.numerator}/{w.denominator}" for i, w in enumerate(c.weights))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> WeightCertificate:
    n: int | None = None
    weights: dict[int, Fraction] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise CertificateFormatError(f"expected key=value, got {raw!r}")
        try:
            if key == "n":
                n = int(value)
            elif key.startswith("c"):
                index = int(key[1:])
                if index in weights:
                    raise CertificateFormatError(f"weight {key} given twice")
                weights[index] = Fraction(value)
            else:
                raise CertificateFormatError(f"unknown key {key!r}")
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, CertificateFormatError):
                raise
            raise CertificateFormatError(f"bad value in {raw!r}") from None
    if n is None:
        raise CertificateFormatError("missing n= header")
    if sorted(weights) != list(range(n + 1)):
        raise CertificateFormatError(f"expected weights c0..c{n}")
    return WeightCertificate(tuple(weights[i] for i in range(n + 1)))
