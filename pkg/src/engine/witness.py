"""
From a certificate to the measurement projector.

With D = diag(c_0..c_n) every input x gives the unit vector
|x_D> = sqrt(D)|x'>, and

    <x_D|y_D> = sum_i c_i x'_i y'_i          (rational)

P is the orthogonal projector onto Span{|x_D> : f(x) = 1}. Its exact
action on inputs is obtained without square roots through a Gram basis:

    g(x) = <x_D|P|x_D> = k(x)ᵀ G⁻¹ k(x),   k(x)_a = <x_D|b_a>.

Square roots appear only in the float projector handed to the simulator.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from engine.boolfn import (
    BitString,
    DimensionError,
    PartialBooleanFunction,
    all_bitstrings,
    sign_vector,
)
from engine.exact import Matrix, identity, invert, matmul, quadratic_form
from engine.feasibility import WeightCertificate


@dataclass
class WitnessConfig:
    float_digits: int = 12
    max_float_check_n: int = 12

    @classmethod
    def from_config(cls, cfg: dict) -> "WitnessConfig":
        section = cfg.get("witness", {})
        return cls(
            float_digits=int(section.get("float_digits", 12)),
            max_float_check_n=int(section.get("max_float_check_n", 12)),
        )


class WitnessError(RuntimeError):
    """The witness cannot be built (orthogonality, rank or projector failure)."""


class ConsistencyError(AssertionError):
    """A verified certificate produced a g that differs from f."""


@dataclass(frozen=True)
class GramWitness:
    certificate: WeightCertificate
    basis: tuple[BitString, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    gram_inverse: tuple[tuple[Fraction, ...], ...]
    # Schur complement of each basis vector against the ones before it
    schur: tuple[Fraction, ...] = ()

    @property
    def n(self) -> int:
        return self.certificate.n

    @property
    def rank(self) -> int:
        return len(self.basis)


@dataclass(frozen=True, eq=False)
class ProjectorMatrix:
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))

    def idempotence_error(self) -> float:
        return float(np.max(np.abs(self.matrix @ self.matrix - self.matrix))) if self.dimension else 0.0

    def symmetry_error(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T))) if self.dimension else 0.0

    @classmethod
    def identity(cls, dimension: int) -> "ProjectorMatrix":
        return cls(np.eye(dimension))

    @classmethod
    def zero(cls, dimension: int) -> "ProjectorMatrix":
        return cls(np.zeros((dimension, dimension)))


# ── Inner products ──────────────────────────────────────────────────────────

def weighted_inner(c: WeightCertificate, x: BitString, y: BitString) -> Fraction:
    if not (c.n == x.n == y.n):
        raise DimensionError(f"certificate n = {c.n}, inputs of length {x.n} and {y.n}")
    sx = sign_vector(x).signs
    sy = sign_vector(y).signs
    return sum((w * a * b for w, a, b in zip(c.weights, sx, sy) if w), Fraction(0))


def check_orthogonality(f: PartialBooleanFunction, c: WeightCertificate) -> bool:
    items = f.items()
    for a, (x, fx) in enumerate(items):
        for y, fy in items[a + 1:]:
            if fx != fy and weighted_inner(c, x, y) != 0:
                return False
    return True


# ── Gram witness ────────────────────────────────────────────────────────────

def build_gram_witness(
    f: PartialBooleanFunction,
    c: WeightCertificate,
    reverse: bool = False,
    use_zero_set: bool = False,
    strict: bool = True,
) -> GramWitness:
    """
    Greedy exact basis of Span{|x_D> : f(x) = 1} (or f(x) = 0 with
    use_zero_set, which yields the projector for 1 - f).

    A candidate joins the basis when the bordered Gram determinant is
    nonzero, i.e. its Schur complement 1 - kᵀG⁻¹k against the kept set is
    nonzero. strict=False skips the orthogonality check; the simulator
    uses it to exercise certificates that are known to be wrong.
    """
    if c.n != f.n:
        raise DimensionError(f"certificate n = {c.n}, function n = {f.n}")
    if strict and not check_orthogonality(f, c):
        raise WitnessError("orthogonality violated: some distinguishing pair has <x_D|y_D> != 0")

    candidates = sorted(f.zeros() if use_zero_set else f.ones(), reverse=reverse)
    basis: list[BitString] = []
    complements: list[Fraction] = []
    inverse: Matrix = []
    for x in candidates:
        k = [weighted_inner(c, x, b) for b in basis]
        schur = weighted_inner(c, x, x) - quadratic_form(k, inverse)
        if schur == 0:
            continue
        # block update of G⁻¹ for the bordered matrix
        u = [sum((inverse[a][b] * k[b] for b in range(len(k))), Fraction(0)) for a in range(len(k))]
        size = len(basis)
        grown = [
            [inverse[a][b] + u[a] * u[b] / schur for b in range(size)] + [-u[a] / schur]
            for a in range(size)
        ]
        grown.append([-u[b] / schur for b in range(size)] + [1 / schur])
        inverse = grown
        basis.append(x)
        complements.append(schur)

    gram = [[weighted_inner(c, a, b) for b in basis] for a in basis]
    gram_inverse = invert(gram)
    if matmul(gram_inverse, gram) != identity(len(basis)):
        raise WitnessError("exact Gram inverse check failed")
    return GramWitness(
        certificate=c,
        basis=tuple(basis),
        gram=tuple(tuple(row) for row in gram),
        gram_inverse=tuple(tuple(row) for row in gram_inverse),
        schur=tuple(complements),
    )


def evaluate_g(w: GramWitness, x: BitString) -> Fraction:
    if x.n != w.n:
        raise DimensionError(f"witness n = {w.n}, input of length {x.n}")
    if not w.basis:
        return Fraction(0)
    k = [weighted_inner(w.certificate, x, b) for b in w.basis]
    return quadratic_form(k, [list(row) for row in w.gram_inverse])


def reproduces(w: GramWitness, f: PartialBooleanFunction, complemented: bool = False) -> bool:
    """g == f (or 1 - f) on the whole domain, by Fraction equality."""
    return all(evaluate_g(w, x) == (1 - v if complemented else v) for x, v in f.items())


# ── Float projector ─────────────────────────────────────────────────────────

def embedded_vector(c: WeightCertificate, x: BitString) -> np.ndarray:
    """|x_D> as float64: sqrt(c_i) * x'_i."""
    weights = np.array([float(v) for v in c.weights])
    return np.sqrt(weights) * np.array(sign_vector(x).signs, dtype=float)


def gram_schmidt(
    vectors: Sequence[np.ndarray],
    tol: float = 1e-8,
    skipped: list[int] | None = None,
) -> list[np.ndarray]:
    """
    Modified Gram–Schmidt. A (numerically) dependent input vector raises,
    unless `skipped` is given: its index is then recorded there and the
    vector is left out.
    """
    basis: list[np.ndarray] = []
    for index, v in enumerate(vectors):
        u = np.array(v, dtype=float)
        for q in basis:
            u = u - np.dot(q, u) * q
        norm = np.linalg.norm(u)
        if norm < tol:
            if skipped is None:
                raise WitnessError(f"vector {index} is numerically dependent on the previous ones")
            skipped.append(index)
            continue
        basis.append(u / norm)
    return basis


# Largest exact Schur mass the float projector may drop: a skipped basis
# vector changes <x_D|P|x_D> by at most its Schur complement.
DROPPED_MASS_LIMIT = Fraction(1, 10 ** 12)


def build_projector_float(w: GramWitness, tol: float = 1e-8) -> ProjectorMatrix:
    dim = w.n + 1
    if not w.basis:
        return ProjectorMatrix.zero(dim)
    skipped: list[int] = []
    q = gram_schmidt([embedded_vector(w.certificate, b) for b in w.basis], tol, skipped)
    if skipped:
        dropped = sum((w.schur[i] for i in skipped), Fraction(0)) if w.schur else None
        if dropped is None or dropped > DROPPED_MASS_LIMIT:
            raise WitnessError(
                f"float rank {len(q)} differs from exact rank {w.rank} beyond rounding "
                f"(vectors {', '.join(map(str, skipped))})"
            )
    p = sum(np.outer(v, v) for v in q)
    return ProjectorMatrix((p + p.T) / 2)


def float_agreement(w: GramWitness, p: ProjectorMatrix, max_n: int = 12) -> float:
    """max over {0,1}^n of |<x_D|P|x_D>_float - g(x)|."""
    if w.n > max_n:
        raise DimensionError(f"float agreement is only swept for n <= {max_n}")
    worst = 0.0
    for x in all_bitstrings(w.n):
        v = embedded_vector(w.certificate, x)
        worst = max(worst, abs(float(v @ p.matrix @ v) - float(evaluate_g(w, x))))
    return worst


# ── Polynomial form of g ────────────────────────────────────────────────────

Monomial = tuple[int, ...]


def witness_polynomial(w: GramWitness) -> dict[Monomial, Fraction]:
    """
    Multilinear polynomial of g over x_1..x_n. Each k_a(x) is affine in x
    (x'_i = 1 - 2x_i), so g has degree at most 2.
    """
    n = w.n
    weights = w.certificate.weights
    # k_a(x) = alpha_a + sum_i beta_a[i] x_i
    alpha = []
    beta = []
    for b in w.basis:
        signs = sign_vector(b).signs
        alpha.append(sum((weights[i] * signs[i] for i in range(n + 1)), Fraction(0)))
        beta.append([Fraction(0)] + [-2 * weights[i] * signs[i] for i in range(1, n + 1)])

    poly: dict[Monomial, Fraction] = {}

    def add(mono: Monomial, value: Fraction):
        if value:
            poly[mono] = poly.get(mono, Fraction(0)) + value

    for a in range(w.rank):
        for b in range(w.rank):
            g = w.gram_inverse[a][b]
            if not g:
                continue
            add((), g * alpha[a] * alpha[b])
            for i in range(1, n + 1):
                add((i,), g * (alpha[a] * beta[b][i] + beta[a][i] * alpha[b] + beta[a][i] * beta[b][i]))
                for j in range(i + 1, n + 1):
                    add((i, j), g * (beta[a][i] * beta[b][j] + beta[a][j] * beta[b][i]))
    return {mono: v for mono, v in sorted(poly.items()) if v != 0}


def evaluate_polynomial(poly: dict[Monomial, Fraction], x: BitString) -> Fraction:
    return sum(
        (coef for mono, coef in poly.items() if all(x.bit(i) for i in mono)),
        Fraction(0),
    )


# ── Diagnostic dump ─────────────────────────────────────────────────────────

def _grid(rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(v) for v in row] for row in rows]
    if not cells:
        return "  (empty)"
    widths = [max(len(row[j]) for row in cells) for j in range(len(cells[0]))]
    return "\n".join("  " + "  ".join(v.rjust(wd) for v, wd in zip(row, widths)) for row in cells)


def dump_witness(w: GramWitness, p: ProjectorMatrix | None = None, digits: int = 12) -> str:
    parts = [
        f"n={w.n}",
        f"rank={w.rank}",
        "basis:",
        "\n".join(f"  {b}" for b in w.basis) or "  (empty)",
        "gram:",
        _grid(w.gram),
        "gram_inverse:",
        _grid(w.gram_inverse),
    ]
    if p is not None:
        parts.append("projector:")
        parts.append(_grid([[f"{v:.{digits}g}" for v in row] for row in p.matrix]))
    return "\n".join(parts) + "\n"
