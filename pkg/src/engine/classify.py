"""
Classification of partial Boolean functions.

is_one_query runs the degree filter first (a one-query function agrees
with a multilinear polynomial of degree <= 2 on its domain), then decides
feasibility exactly and rebuilds the projector to check g == f. A YES is
never taken from the filter.

Scans enumerate assignments over the cube in bit-string order:
  total:   base 2, value per point, 2^(2^n) functions
  partial: base 3 (undefined / 0 / 1), 3^(2^n) - 1 non-empty assignments
Work is split into index ranges and merged back in index order.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

from engine.boolfn import (
    SYM_ONE,
    SYM_ZERO,
    UNDEFINED,
    BudgetExceeded,
    PartialBooleanFunction,
    canonical_form,
    hamming_weight,
    isomorphs,
    orbit_tables,
)
from engine.exact import solve_consistent
from engine.feasibility import (
    FeasibilityOutcome,
    WeightCertificate,
    build_constraints,
    solve_feasibility,
    verify_certificate,
)
from engine.witness import ConsistencyError, build_gram_witness, reproduces


class Decision(str, Enum):
    ONE_QUERY = "one-query"
    NOT_ONE_QUERY = "not-one-query"


@dataclass(frozen=True)
class Classification:
    function: PartialBooleanFunction
    decision: Decision
    certificate: WeightCertificate | None
    degree: int | None          # None: above the filter cap of 2
    canonical: PartialBooleanFunction | None
    outcome: FeasibilityOutcome | None = None
    squares: int = 0            # terms in g = sum_i <v_i|x_D>^2
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.decision is Decision.ONE_QUERY:
            if self.certificate is None or not verify_certificate(self.function, self.certificate):
                raise ConsistencyError("one-query verdict without a verified certificate")

    @property
    def one_query(self) -> bool:
        return self.decision is Decision.ONE_QUERY


@dataclass
class ScanConfig:
    max_total_n: int = 4
    max_partial_n: int = 3
    chunk_size: int = 256

    @classmethod
    def from_config(cls, cfg: dict) -> "ScanConfig":
        scan = cfg.get("scan", {})
        return cls(
            max_total_n=int(scan.get("max_total_n", 4)),
            max_partial_n=int(scan.get("max_partial_n", 3)),
            chunk_size=int(scan.get("chunk_size", 256)),
        )


@dataclass
class SearchSummary:
    n: int
    mode: str
    dedup: bool
    examined: int = 0
    one_query_functions: int = 0
    classes: int = 0
    classes_without_negation: int = 0
    one_query_classes: int = 0
    one_query_classes_without_negation: int = 0
    # one entry per class when dedup is set, else one per function
    representatives: list[Classification] = field(default_factory=list)
    characterization: dict[str, int] = field(default_factory=dict)

    def one_query_representatives(self) -> list[Classification]:
        return [c for c in self.representatives if c.one_query]

    def not_one_query_representatives(self) -> list[Classification]:
        return [c for c in self.representatives if not c.one_query]


# ── Degree filter ───────────────────────────────────────────────────────────

def min_degree(f: PartialBooleanFunction, cap: int) -> int | None:
    """Least d <= cap with a degree-d multilinear polynomial matching f on D; None if none."""
    cap = min(cap, f.n)
    points = f.items()
    values = [v for _, v in points]
    for d in range(cap + 1):
        monomials = [m for k in range(d + 1) for m in itertools.combinations(range(f.n), k)]
        rows = [[int(all(x.bits[i] for i in m)) for m in monomials] for x, _ in points]
        if solve_consistent(rows, values) is not None:
            return d
    return None


# ── Single-function decision ────────────────────────────────────────────────

def is_one_query(
    f: PartialBooleanFunction,
    verify_filter: bool = False,
    canonical_max_n: int | None = 6,
) -> Classification:
    """
    Decide one-query computability. With verify_filter the solver also runs
    on functions the degree filter rejected, and a feasible one raises.
    """
    canonical = None
    if canonical_max_n is not None and f.n <= canonical_max_n:
        canonical = canonical_form(f, max_n=canonical_max_n)

    degree = min_degree(f, 2)
    if degree is None and not verify_filter:
        return Classification(f, Decision.NOT_ONE_QUERY, None, None, canonical,
                              notes=("degree above 2",))

    outcome = solve_feasibility(build_constraints(f))
    if not outcome.feasible:
        notes = ("degree above 2",) if degree is None else ()
        return Classification(f, Decision.NOT_ONE_QUERY, None, degree, canonical, outcome, notes=notes)
    if degree is None:
        raise ConsistencyError(f"degree filter rejected a feasible function:\n{f}")

    certificate = outcome.certificate
    witness = build_gram_witness(f, certificate)
    if not reproduces(witness, f):
        raise ConsistencyError(f"certificate verified but g != f:\n{f}")
    notes = ("degenerate: constant",) if f.is_constant else ()
    return Classification(f, Decision.ONE_QUERY, certificate, degree, canonical, outcome,
                          squares=witness.rank, notes=notes)


def total_characterization(f: PartialBooleanFunction) -> str | None:
    """'constant', 'dictator' (x_i up to negation) or 'parity2' (x_i XOR x_j up to negation)."""
    if not f.is_total:
        raise ValueError("characterization applies to total functions only")
    if f.is_constant:
        return "constant"
    items = f.items()
    for i in range(f.n):
        if len({v ^ x.bits[i] for x, v in items}) == 1:
            return "dictator"
    for i, j in itertools.combinations(range(f.n), 2):
        if len({v ^ x.bits[i] ^ x.bits[j] for x, v in items}) == 1:
            return "parity2"
    return None


def has_f4_property(f: PartialBooleanFunction) -> bool:
    """One-query, and no isomorph has its 1-set inside {x : |x| in {0, n}}."""
    if not is_one_query(f, canonical_max_n=None).one_query:
        return False
    for image in isomorphs(f):
        if all(hamming_weight(x) in (0, f.n) for x in image.ones()):
            return False
    return True


def rediscover_f4() -> bool:
    from engine.catalog import make_f4

    return has_f4_property(make_f4().function)


# ── Scans ───────────────────────────────────────────────────────────────────

def _decode(index: int, n: int, total: bool) -> tuple[int, ...]:
    size = 2 ** n
    if total:
        return tuple(((index >> (size - 1 - p)) & 1) + 1 for p in range(size))
    digits = []
    for _ in range(size):
        index, digit = divmod(index, 3)
        digits.append(digit)
    return tuple(reversed(digits))


def _encode(symbols: tuple[int, ...], total: bool) -> int:
    index = 0
    for s in symbols:
        index = index * 2 + (s - 1) if total else index * 3 + s
    return index


def _flip(symbols: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(UNDEFINED if s == UNDEFINED else SYM_ONE + SYM_ZERO - s for s in symbols)


def _classify_range(n: int, total: bool, start: int, stop: int) -> list[Classification]:
    out = []
    for index in range(start, stop):
        f = PartialBooleanFunction.from_symbols(n, _decode(index, n, total))
        out.append(is_one_query(f, verify_filter=True, canonical_max_n=None))
    return out


def _scan(
    n: int,
    total: bool,
    dedup: bool,
    workers: int,
    chunk_size: int,
    progress_cb: Callable[[int, int], None] | None,
) -> SearchSummary:
    size = 2 ** n
    first = 0 if total else 1
    last = 2 ** size if total else 3 ** size
    ranges = [(s, min(s + chunk_size, last)) for s in range(first, last, chunk_size)]

    results: list[Classification] = []
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        futures = [pool.submit(_classify_range, n, total, s, e) for s, e in ranges]
        for future in futures:
            results.extend(future.result())
            if progress_cb:
                progress_cb(len(results), last - first)

    # canonical keys via whole-orbit marking
    without_neg: dict[tuple[int, ...], tuple[int, ...]] = {}

    def key_without(sym: tuple[int, ...]) -> tuple[int, ...]:
        if sym not in without_neg:
            orbit = orbit_tables(sym, n, output_negation=False)
            least = min(orbit)
            for t in orbit:
                without_neg[t] = least
        return without_neg[sym]

    summary = SearchSummary(n=n, mode="total" if total else "partial", dedup=dedup)
    class_decision: dict[tuple[int, ...], Decision] = {}
    classes_without: dict[tuple[int, ...], Decision] = {}
    for c in results:
        sym = c.function.symbols()
        k_wo = key_without(sym)
        k = min(k_wo, key_without(_flip(sym)))
        if class_decision.setdefault(k, c.decision) is not c.decision:
            raise ConsistencyError(f"isomorphic functions got different decisions:\n{c.function}")
        classes_without.setdefault(k_wo, c.decision)

        summary.examined += 1
        if c.one_query:
            summary.one_query_functions += 1
        if total:
            kind = total_characterization(c.function)
            if (kind is not None) != c.one_query:
                raise ConsistencyError(
                    f"total function contradicts the known characterization ({kind}):\n{c.function}"
                )
            label = kind or "other"
            summary.characterization[label] = summary.characterization.get(label, 0) + 1
        if not dedup:
            summary.representatives.append(c)

    summary.classes = len(class_decision)
    summary.classes_without_negation = len(classes_without)
    summary.one_query_classes = sum(d is Decision.ONE_QUERY for d in class_decision.values())
    summary.one_query_classes_without_negation = sum(
        d is Decision.ONE_QUERY for d in classes_without.values()
    )
    if dedup:
        for k in sorted(class_decision):
            rep = results[_encode(k, total) - first]
            # the least table of its class is its own canonical form
            summary.representatives.append(replace(rep, canonical=rep.function))
    return summary


def scan_total(
    n: int,
    dedup: bool = True,
    workers: int = 1,
    config: ScanConfig | None = None,
    progress_cb: Callable[[int, int], None] | None = None,
) -> SearchSummary:
    """Classify every total function on n variables and check the known characterization."""
    config = config or ScanConfig()
    if not 1 <= n <= config.max_total_n:
        raise BudgetExceeded(f"total scan needs 1 <= n <= {config.max_total_n}, got {n}")
    return _scan(n, True, dedup, workers, config.chunk_size, progress_cb)


def scan_partial(
    n: int,
    dedup: bool = True,
    workers: int = 1,
    config: ScanConfig | None = None,
    progress_cb: Callable[[int, int], None] | None = None,
) -> SearchSummary:
    """Classify every non-empty partial assignment on n variables."""
    config = config or ScanConfig()
    if not 1 <= n <= config.max_partial_n:
        raise BudgetExceeded(f"partial scan needs 1 <= n <= {config.max_partial_n}, got {n}")
    return _scan(n, False, dedup, workers, config.chunk_size, progress_cb)
