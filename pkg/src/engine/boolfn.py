"""
Partial Boolean functions.

Inputs are n-bit strings written most-significant-first, index 1 leftmost.
Every input also carries the blank bit x_0 = 0: it is never stored in a
BitString but always appears at index 0 of the sign vector (sign +1).

Isomorphism group used throughout: variable permutations, per-variable
input negation and (optionally) output negation.

File format:
  n=4          optional header
  # comment
  0000 1       <bitstring> <value>
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

# Symbols of the 3-valued table, ordered undefined < 0 < 1
UNDEFINED = 0
SYM_ZERO = 1
SYM_ONE = 2


class FunctionFormatError(ValueError):
    """Malformed function text or an inconsistent function definition."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class DimensionError(ValueError):
    """Objects built for different n were combined."""


class BudgetExceeded(RuntimeError):
    """An exhaustive search was asked for beyond its configured size."""


@dataclass(frozen=True, order=True)
class BitString:
    bits: tuple[int, ...]

    def __post_init__(self):
        if not self.bits:
            raise ValueError("bit string must have at least one bit")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be 0/1, got {self.bits}")

    @classmethod
    def parse(cls, text: str) -> "BitString":
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def from_int(cls, value: int, n: int) -> "BitString":
        """Position 1 is the most significant bit of value."""
        return cls(tuple((value >> (n - 1 - j)) & 1 for j in range(n)))

    @property
    def n(self) -> int:
        return len(self.bits)

    def bit(self, i: int) -> int:
        """x_i for i in 0..n; x_0 is always 0."""
        if i == 0:
            return 0
        if not 1 <= i <= self.n:
            raise IndexError(f"index {i} outside 0..{self.n}")
        return self.bits[i - 1]

    def to_int(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class SignVector:
    """x'_i = (-1)^{x_i} for i = 0..n, so signs[0] = +1."""
    signs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.signs) - 1


@dataclass(frozen=True, order=True)
class IndexSet:
    members: tuple[int, ...]

    def __post_init__(self):
        if list(self.members) != sorted(set(self.members)):
            raise ValueError(f"index set must be sorted and duplicate-free: {self.members}")
        if any(i < 1 for i in self.members):
            raise ValueError("index set members start at 1")

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.members) + "}"


@dataclass(frozen=True)
class PartialBooleanFunction:
    n: int
    table: tuple[tuple[BitString, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise FunctionFormatError("n must be positive")
        if not self.table:
            raise FunctionFormatError("empty domain")
        previous = None
        for x, value in self.table:
            if x.n != self.n:
                raise FunctionFormatError(f"bit string {x} has length {x.n}, expected {self.n}")
            if value not in (0, 1):
                raise FunctionFormatError(f"value for {x} must be 0 or 1")
            if previous is not None and not previous < x:
                raise FunctionFormatError("table must be sorted and duplicate-free")
            previous = x

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[BitString | str, int]) -> "PartialBooleanFunction":
        entries: dict[BitString, int] = {}
        for key, value in mapping.items():
            x = key if isinstance(key, BitString) else BitString.parse(key)
            entries[x] = int(value)
        return cls(n, tuple(sorted(entries.items())))

    @classmethod
    def from_symbols(cls, n: int, symbols: Iterable[int]) -> "PartialBooleanFunction":
        """Build from a full 3-valued table over {0,1}^n in bit-string order."""
        entries = []
        for index, sym in enumerate(symbols):
            if sym != UNDEFINED:
                entries.append((BitString.from_int(index, n), sym - 1))
        return cls(n, tuple(entries))

    @property
    def domain(self) -> tuple[BitString, ...]:
        return tuple(x for x, _ in self.table)

    def items(self) -> tuple[tuple[BitString, int], ...]:
        return self.table

    def value(self, x: BitString) -> int:
        for y, v in self.table:
            if y == x:
                return v
        raise KeyError(str(x))

    def as_dict(self) -> dict[BitString, int]:
        return dict(self.table)

    def __contains__(self, x: BitString) -> bool:
        return any(y == x for y, _ in self.table)

    def __len__(self) -> int:
        return len(self.table)

    def preimage(self, value: int) -> tuple[BitString, ...]:
        return tuple(x for x, v in self.table if v == value)

    def ones(self) -> tuple[BitString, ...]:
        return self.preimage(1)

    def zeros(self) -> tuple[BitString, ...]:
        return self.preimage(0)

    @property
    def is_total(self) -> bool:
        return len(self.table) == 2 ** self.n

    @property
    def is_constant(self) -> bool:
        return len({v for _, v in self.table}) == 1

    def restrict(self, domain: Iterable[BitString]) -> "PartialBooleanFunction":
        keep = set(domain)
        return PartialBooleanFunction(self.n, tuple((x, v) for x, v in self.table if x in keep))

    def symbols(self) -> tuple[int, ...]:
        """The full 3-valued table over {0,1}^n (undefined < 0 < 1)."""
        table = [UNDEFINED] * (2 ** self.n)
        for x, v in self.table:
            table[x.to_int()] = v + 1
        return tuple(table)

    def __str__(self) -> str:
        return serialize_function(self)


# ── Parsing / serialization ─────────────────────────────────────────────────

def parse_function(text: str) -> PartialBooleanFunction:
    """Parse the function file format. n comes from the header or the first data line."""
    n: int | None = None
    entries: dict[BitString, int] = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("n="):
            if n is not None or entries:
                raise FunctionFormatError("header must precede all data lines", line_no)
            try:
                n = int(line[2:])
            except ValueError:
                raise FunctionFormatError(f"bad header {line!r}", line_no) from None
            if n < 1:
                raise FunctionFormatError("n must be positive", line_no)
            continue

        parts = line.split(" ")
        if len(parts) != 2 or parts[1] not in ("0", "1"):
            raise FunctionFormatError(f"expected '<bits> <0|1>', got {raw!r}", line_no)
        try:
            x = BitString.parse(parts[0])
        except ValueError as exc:
            raise FunctionFormatError(str(exc), line_no) from None

        if n is None:
            n = x.n
        elif x.n != n:
            raise FunctionFormatError(
                f"inconsistent string lengths: {parts[0]} has {x.n} bits, expected {n}", line_no
            )
        value = int(parts[1])
        if entries.get(x, value) != value:
            raise FunctionFormatError(f"conflicting values for {x}", line_no)
        entries[x] = value

    if not entries:
        raise FunctionFormatError("empty domain")
    return PartialBooleanFunction(n, tuple(sorted(entries.items())))


def serialize_function(f: PartialBooleanFunction) -> str:
    lines = [f"n={f.n}"]
    lines.extend(f"{x} {v}" for x, v in f.table)
    return "\n".join(lines) + "\n"


# ── Elementary operations ───────────────────────────────────────────────────

def sign_vector(x: BitString) -> SignVector:
    return SignVector((1,) + tuple(1 - 2 * b for b in x.bits))


def differing_set(x: BitString, y: BitString) -> IndexSet:
    if x.n != y.n:
        raise DimensionError(f"bit strings of length {x.n} and {y.n}")
    return IndexSet(tuple(i + 1 for i, (a, b) in enumerate(zip(x.bits, y.bits)) if a != b))


def hamming_weight(x: BitString) -> int:
    return sum(x.bits)


def complement(f: PartialBooleanFunction) -> PartialBooleanFunction:
    return PartialBooleanFunction(f.n, tuple((x, 1 - v) for x, v in f.table))


def all_bitstrings(n: int) -> Iterator[BitString]:
    for value in range(2 ** n):
        yield BitString.from_int(value, n)


# ── Isomorphism group ───────────────────────────────────────────────────────

def transform_point(x: BitString, perm: tuple[int, ...], mask: tuple[int, ...]) -> BitString:
    """y_j = x_{perm[j]} XOR mask[j], positions 0-based."""
    return BitString(tuple(x.bits[perm[j]] ^ mask[j] for j in range(x.n)))


def apply_group(
    f: PartialBooleanFunction,
    perm: tuple[int, ...],
    mask: tuple[int, ...],
    flip: int = 0,
) -> PartialBooleanFunction:
    """Image of f under (permutation, input-negation mask, output flip)."""
    if sorted(perm) != list(range(f.n)) or len(mask) != f.n:
        raise DimensionError("group element does not match n")
    return PartialBooleanFunction.from_mapping(
        f.n, {transform_point(x, perm, mask): v ^ flip for x, v in f.table}
    )


def _point_maps(n: int) -> list[list[int]]:
    """For every (perm, mask), the map y -> x over {0,1}^n as integers."""
    maps = []
    for perm in itertools.permutations(range(n)):
        for mask_value in range(2 ** n):
            mask = [(mask_value >> (n - 1 - j)) & 1 for j in range(n)]
            mapping = []
            for y in range(2 ** n):
                x = 0
                for j in range(n):
                    bit = ((y >> (n - 1 - j)) & 1) ^ mask[j]
                    x |= bit << (n - 1 - perm[j])
                mapping.append(x)
            maps.append(mapping)
    return maps


_MAP_CACHE: dict[int, list[list[int]]] = {}


def point_maps(n: int) -> list[list[int]]:
    if n not in _MAP_CACHE:
        _MAP_CACHE[n] = _point_maps(n)
    return _MAP_CACHE[n]


def _flip_symbols(table: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(UNDEFINED if s == UNDEFINED else 3 - s for s in table)


def orbit_tables(symbols: tuple[int, ...], n: int, output_negation: bool = True) -> set[tuple[int, ...]]:
    """All 3-valued tables in the orbit of one table."""
    images = set()
    for mapping in point_maps(n):
        image = tuple(symbols[x] for x in mapping)
        images.add(image)
        if output_negation:
            images.add(_flip_symbols(image))
    return images


def canonical_symbols(symbols: tuple[int, ...], n: int, output_negation: bool = True) -> tuple[int, ...]:
    """Lexicographically least table in the orbit, pruning on the leading prefix."""
    candidates = [symbols, _flip_symbols(symbols)] if output_negation else [symbols]
    best: list[int] | None = None
    for mapping in point_maps(n):
        for source in candidates:
            if best is None:
                best = [source[x] for x in mapping]
                continue
            # first differing position decides; larger prefixes are dropped early
            for y, x in enumerate(mapping):
                s = source[x]
                if s != best[y]:
                    if s < best[y]:
                        best = [source[x] for x in mapping]
                    break
    return tuple(best)


def canonical_form(
    f: PartialBooleanFunction,
    max_n: int = 6,
    output_negation: bool = True,
) -> PartialBooleanFunction:
    """Least representative of f's orbit; isomorphic functions share it."""
    if f.n > max_n:
        raise BudgetExceeded(f"canonical form limited to n <= {max_n}, got n = {f.n}")
    return PartialBooleanFunction.from_symbols(
        f.n, canonical_symbols(f.symbols(), f.n, output_negation)
    )


def isomorphs(f: PartialBooleanFunction, output_negation: bool = True) -> Iterator[PartialBooleanFunction]:
    """Every group image of f, repetitions included (n! * 2^n * (1 or 2) of them)."""
    for perm in itertools.permutations(range(f.n)):
        for mask in itertools.product((0, 1), repeat=f.n):
            image = apply_group(f, perm, mask)
            yield image
            if output_negation:
                yield complement(image)
