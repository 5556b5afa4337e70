from fractions import Fraction

import pytest

from engine.boolfn import PartialBooleanFunction, parse_function
from engine.catalog import make_f1, make_f4, make_f5
from engine.feasibility import WeightCertificate


def fn(text: str) -> PartialBooleanFunction:
    return parse_function(text)


def total(n: int, rule) -> PartialBooleanFunction:
    """Total function from a predicate on the bit tuple."""
    mapping = {}
    for value in range(2 ** n):
        bits = format(value, f"0{n}b")
        mapping[bits] = int(rule(tuple(int(b) for b in bits)))
    return PartialBooleanFunction.from_mapping(n, mapping)


def cert(*weights) -> WeightCertificate:
    return WeightCertificate(tuple(Fraction(w) for w in weights))


@pytest.fixture
def deutsch2():
    return fn("00 1\n11 1\n01 0\n10 0")


@pytest.fixture
def and2():
    return total(2, lambda b: b[0] and b[1])


@pytest.fixture
def or3():
    return total(3, lambda b: any(b))


@pytest.fixture(scope="session")
def f1_4():
    return make_f1(4)


@pytest.fixture(scope="session")
def f4():
    return make_f4()


@pytest.fixture(scope="session")
def f5_1():
    return make_f5(1)
