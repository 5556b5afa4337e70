from fractions import Fraction as F

import pytest

from engine.boolfn import DimensionError, complement
from engine.catalog import make_f1, make_f2
from engine.feasibility import (
    CertificateFormatError,
    Feasible,
    Infeasible,
    WeightCertificate,
    build_constraints,
    check_farkas,
    format_certificate,
    parse_certificate,
    solve_feasibility,
    support_analysis,
    verify_certificate,
)

from conftest import cert, fn


def sets_of(cs):
    return {s.members for s in cs.sets}


class TestBuildConstraints:
    def test_deutsch_n2(self, deutsch2):
        cs = build_constraints(deutsch2)
        assert sets_of(cs) == {(1,), (2,)}
        assert len(cs.sets) == 2

    def test_and2(self, and2):
        assert sets_of(build_constraints(and2)) == {(1, 2), (1,), (2,)}

    def test_constant(self):
        assert build_constraints(fn("001 1\n110 1\n011 1")).sets == ()

    def test_provenance_pairs_witness_the_set(self, and2):
        cs = build_constraints(and2)
        for s, (x, y) in zip(cs.sets, cs.provenance):
            assert and2.value(x) != and2.value(y)
            assert tuple(i + 1 for i in range(2) if x.bits[i] != y.bits[i]) == s.members

    def test_complement_has_same_sets(self, f4):
        assert build_constraints(f4.function).sets == build_constraints(complement(f4.function)).sets


class TestSolve:
    def test_deutsch_n2(self, deutsch2):
        outcome = solve_feasibility(build_constraints(deutsch2))
        assert isinstance(outcome, Feasible)
        assert outcome.certificate.weights == (0, F(1, 2), F(1, 2))

    def test_and2_infeasible_with_farkas(self, and2):
        cs = build_constraints(and2)
        outcome = solve_feasibility(cs)
        assert isinstance(outcome, Infeasible)
        assert not outcome.feasible
        assert outcome.trace
        assert outcome.farkas is not None
        assert check_farkas(cs, outcome.farkas)

    def test_or3_infeasible(self, or3):
        assert not solve_feasibility(build_constraints(or3)).feasible

    def test_no_constraints(self):
        outcome = solve_feasibility(build_constraints(fn("000 0\n101 0")))
        assert outcome.certificate.weights == (1, 0, 0, 0)

    def test_unique_certificate_of_f2(self):
        outcome = solve_feasibility(build_constraints(make_f2(5, 3).function))
        assert outcome.certificate.weights == (F(1, 6),) * 6

    def test_deterministic(self, f4):
        cs = build_constraints(f4.function)
        assert solve_feasibility(cs) == solve_feasibility(cs)

    def test_solution_verifies(self, f4):
        outcome = solve_feasibility(build_constraints(f4.function))
        assert verify_certificate(f4.function, outcome.certificate)


class TestSupport:
    def test_f4_every_variable_can_carry_weight(self, f4):
        assert support_analysis(build_constraints(f4.function)) == (1, 2, 3, 4)

    def test_f2_uses_blank_index(self):
        assert support_analysis(build_constraints(make_f2(5, 3).function)) == (0, 1, 2, 3, 4, 5)

    def test_infeasible_has_empty_support(self, and2):
        assert support_analysis(build_constraints(and2)) == ()


class TestVerify:
    def test_f1_table_weights(self):
        assert verify_certificate(make_f1(4).function, cert(0, "1/4", "1/4", "1/4", "1/4"))

    def test_f2_table_weights(self):
        assert verify_certificate(make_f2(5, 3).function, cert(*["1/6"] * 6))

    def test_wrong_weights(self):
        assert not verify_certificate(make_f1(4).function, cert("1/2", "1/8", "1/8", "1/8", "1/8"))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            verify_certificate(make_f1(4).function, cert(0, "1/2", "1/2"))


class TestCertificateFormat:
    def test_format(self):
        assert format_certificate(cert(0, "1/2", "1/2")) == "n=2\nc0=0/1\nc1=1/2\nc2=1/2\n"

    def test_parse(self):
        c = parse_certificate("n=2\nc0=0/1\nc1=1/2\nc2=1/2\n")
        assert c == cert(0, "1/2", "1/2")

    @pytest.mark.parametrize("text", [
        "c0=1/1\n",
        "n=2\nc0=1/2\nc1=1/2\n",
        "n=1\nc0=3/2\nc1=-1/2\n",
        "n=1\nc0=1/3\nc1=1/3\n",
        "n=1\nc0=1/2\nc1=x\n",
        "n=1\nc0=1/2\nc0=1/2\n",
        "n=1\nweight=1\n",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(CertificateFormatError):
            parse_certificate(text)

    def test_constructor_enforces_simplex(self):
        with pytest.raises(CertificateFormatError):
            WeightCertificate((F(1, 2), F(1, 4)))
