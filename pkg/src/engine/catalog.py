"""
Named one-query function families f1–f5 with their published weights and
witness strings.

Witness strings w are 0/1 vectors over x_1..x_n; as vectors over indices
0..n they carry w_0 = 1 on the blank index. With that convention
<w|D|x'> = 1 - |x|/c for f2, whose c_0 is nonzero; for the other families
c_0 = 0 and the blank entry is irrelevant.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from engine.boolfn import (
    BitString,
    PartialBooleanFunction,
    all_bitstrings,
    hamming_weight,
    sign_vector,
)
from engine.feasibility import CertificateFormatError, WeightCertificate, verify_certificate
from engine.witness import ConsistencyError, WitnessError, check_orthogonality, gram_schmidt

CATALOG_NAMES = ("f1", "f2", "f3", "f4", "f5")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    function: PartialBooleanFunction
    certificate: WeightCertificate
    raw_witnesses: tuple[BitString, ...]
    notes: tuple[str, ...] = ()
    # True when the published witness set represents 1 - f instead of f
    witnesses_complement: bool = False

    def __post_init__(self):
        if not verify_certificate(self.function, self.certificate):
            raise ConsistencyError(f"{self.name}: certificate does not verify")
        if not check_orthogonality(self.function, self.certificate):
            raise ConsistencyError(f"{self.name}: value classes are not orthogonal")


def _bits(text: str) -> BitString:
    return BitString.parse(text)


def _function(n: int, points: dict[BitString, int]) -> PartialBooleanFunction:
    return PartialBooleanFunction.from_mapping(n, points)


def make_f1(n: int) -> CatalogEntry:
    """0 on |x| = n/2, 1 on |x| in {0, n}."""
    if n < 2 or n % 2:
        raise ValueError(f"f1 needs an even n >= 2, got {n}")
    points = {}
    for x in all_bitstrings(n):
        weight = hamming_weight(x)
        if weight in (0, n):
            points[x] = 1
        elif weight == n // 2:
            points[x] = 0
    return CatalogEntry(
        name=f"f1(n={n})",
        function=_function(n, points),
        certificate=WeightCertificate((Fraction(0),) + (Fraction(1, n),) * n),
        raw_witnesses=(_bits("1" * n),),
    )


def _weight_class(n: int, weight: int) -> list[BitString]:
    strings = []
    for ones in itertools.combinations(range(n), weight):
        bits = [0] * n
        for i in ones:
            bits[i] = 1
        strings.append(BitString(tuple(bits)))
    return strings


def make_f2(n: int, c: int) -> CatalogEntry:
    """0 on |x| = c, 1 on |x| = 0, for one c with ceil(n/2) <= c <= n."""
    if n < 1 or not (n + 1) // 2 <= c <= n:
        raise ValueError(f"f2 needs ceil(n/2) <= c <= n, got n = {n}, c = {c}")
    points = {BitString((0,) * n): 1}
    points.update((x, 0) for x in _weight_class(n, c))
    weights = (Fraction(2 * c - n, 2 * c),) + (Fraction(1, 2 * c),) * n
    notes = ()
    if 2 * c == n:
        notes = ("c_0 = 0: the domain is part of f1's domain",)
    return CatalogEntry(
        name=f"f2(n={n},c={c})",
        function=_function(n, points),
        certificate=WeightCertificate(weights),
        raw_witnesses=(_bits("1" * n),),
        notes=notes,
    )


def make_f3(weights: Sequence[int | str | Fraction]) -> CatalogEntry:
    """0 where x^ = 1/2, 1 where x^ in {0, 1}, x^ = sum_i c_i x_i (x_0 = 0)."""
    try:
        certificate = WeightCertificate.of(weights)
    except CertificateFormatError as exc:
        raise ValueError(f"f3 weights: {exc}") from None
    n = certificate.n
    points = {}
    for x in all_bitstrings(n):
        hat = sum((certificate[i + 1] for i in range(n) if x.bits[i]), Fraction(0))
        if hat in (0, 1):
            points[x] = 1
        elif hat == Fraction(1, 2):
            points[x] = 0

    notes = []
    if 0 not in points.values():
        # 0^n always has x^ = 0, so the domain is never empty, but it can be trivial
        notes.append("no input reaches x^ = 1/2: the function is constant 1")
    if certificate[0] > 0:
        notes.append("c_0 > 0: x^ = 1 is unreachable")
    if len(set(certificate.weights[1:])) > 1:
        notes.append("unequal weights: asymmetric instance")
    return CatalogEntry(
        name=f"f3(n={n})",
        function=_function(n, points),
        certificate=certificate,
        raw_witnesses=(_bits("1" * n),),
        notes=tuple(notes),
    )


F4_ZEROS = ("0000", "0011", "1100", "1111")
F4_ONES = ("0101", "0110", "1001", "1010")


def make_f4() -> CatalogEntry:
    points = {_bits(s): 0 for s in F4_ZEROS}
    points.update({_bits(s): 1 for s in F4_ONES})
    half = Fraction(1, 2)
    return CatalogEntry(
        name="f4",
        function=_function(4, points),
        certificate=WeightCertificate((Fraction(0), Fraction(0), Fraction(0), half, half)),
        raw_witnesses=(_bits("0011"),),
        notes=("published witness w_1 = 0011 gives <w|D|x'>^2 = 1 - f4(x); "
               "the projector is built from f4's 1-inputs instead",),
        witnesses_complement=True,
    )


def f5_one_set(n: int) -> list[BitString]:
    blocks = [
        "0" * (4 * n),
        "1" * (4 * n),
        "0" * (2 * n) + "1" * (2 * n),
        "1" * (2 * n) + "0" * (2 * n),
        ("0" * n + "1" * n) * 2,
        ("1" * n + "0" * n) * 2,
    ]
    return [_bits(b) for b in blocks]


def f5_zero_condition(x: BitString, n: int) -> bool:
    """|x| = 2n, sum over the first 2n bits = n, and blocks 1 and 3 together hold n ones."""
    bits = x.bits
    if x.n != 4 * n or sum(bits) != 2 * n:
        return False
    return sum(bits[:2 * n]) == n and sum(bits[:n]) + sum(bits[2 * n:3 * n]) == n


def f5_zero_set(n: int) -> list[BitString]:
    return sorted(x for x in _weight_class(4 * n, 2 * n) if f5_zero_condition(x, n))


def make_f5(n: int) -> CatalogEntry:
    if n < 1:
        raise ValueError(f"f5 needs n >= 1, got {n}")
    one_set = f5_one_set(n)
    zero_set = f5_zero_set(n)
    clash = [str(x) for x in one_set if f5_zero_condition(x, n)]
    if clash:
        raise ConsistencyError(f"f5: 1-inputs {clash} also meet the 0-set conditions")
    points = {x: 1 for x in one_set}
    points.update({x: 0 for x in zero_set})
    return CatalogEntry(
        name=f"f5(n={n})",
        function=_function(4 * n, points),
        certificate=WeightCertificate((Fraction(0),) + (Fraction(1, 4 * n),) * (4 * n)),
        raw_witnesses=(
            _bits("1" * (4 * n)),
            _bits("1" * (2 * n) + "0" * (2 * n)),
            _bits(("1" * n + "0" * n) * 2),
        ),
        notes=("published witnesses are not orthonormal under sqrt(D); "
               "they are orthonormalised before use",),
    )


# ── Witness vectors ─────────────────────────────────────────────────────────

def witness_vector(w: BitString) -> tuple[int, ...]:
    """w over indices 0..n, blank index set to 1."""
    return (1,) + w.bits


def raw_square_sum(e: CatalogEntry, x: BitString) -> Fraction:
    """sum_i <w_i|D|x'>^2 with the published (unorthonormalised) witnesses."""
    signs = sign_vector(x).signs
    total = Fraction(0)
    for w in e.raw_witnesses:
        inner = sum(
            (c * wi * s for c, wi, s in zip(e.certificate.weights, witness_vector(w), signs)),
            Fraction(0),
        )
        total += inner * inner
    return total


def raw_witnesses_exact(e: CatalogEntry) -> bool:
    """Whether the published witnesses give f (or 1 - f) without orthonormalisation."""
    return all(
        raw_square_sum(e, x) == (1 - v if e.witnesses_complement else v)
        for x, v in e.function.items()
    )


def orthonormalized_witnesses(e: CatalogEntry, tol: float = 1e-9) -> list[np.ndarray]:
    """
    sqrt(D) w_i for every published witness, orthonormalised by modified
    Gram–Schmidt. The result must reproduce f (or 1 - f for entries whose
    witnesses represent the complement) on the domain.
    """
    if not e.raw_witnesses:
        raise WitnessError(f"{e.name}: no witnesses")
    root = np.sqrt(np.array([float(c) for c in e.certificate.weights]))
    vectors = [root * np.array(witness_vector(w), dtype=float) for w in e.raw_witnesses]
    try:
        basis = gram_schmidt(vectors)
    except WitnessError as exc:
        raise WitnessError(f"{e.name}: degenerate witness set ({exc})") from None

    for x, value in e.function.items():
        x_d = root * np.array(sign_vector(x).signs, dtype=float)
        total = sum(float(np.dot(v, x_d)) ** 2 for v in basis)
        target = 1 - value if e.witnesses_complement else value
        if abs(total - target) > tol:
            raise ConsistencyError(
                f"{e.name}: witnesses give {total!r} at {x}, expected {target}"
            )
    return basis


def catalog_entry(
    name: str,
    n: int | None = None,
    c: int | None = None,
    weights: Sequence[Fraction] | None = None,
) -> CatalogEntry:
    """Dispatch by family name; used by the command line."""
    if name == "f1":
        return make_f1(n if n is not None else 4)
    if name == "f2":
        n = n if n is not None else 5
        return make_f2(n, c if c is not None else (n + 1) // 2)
    if name == "f3":
        if weights is None:
            raise ValueError("f3 needs a weights file")
        return make_f3(weights)
    if name == "f4":
        return make_f4()
    if name == "f5":
        return make_f5(n if n is not None else 1)
    raise ValueError(f"unknown catalog family {name!r}; expected one of {', '.join(CATALOG_NAMES)}")
