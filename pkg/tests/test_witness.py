from fractions import Fraction

import numpy as np
import pytest

from engine.boolfn import BitString, DimensionError, all_bitstrings, complement
from engine.catalog import make_f5
from engine.feasibility import verify_certificate
from engine.simulator import run_algorithm1
from engine.witness import (
    WitnessError,
    build_gram_witness,
    build_projector_float,
    check_orthogonality,
    dump_witness,
    evaluate_g,
    evaluate_polynomial,
    float_agreement,
    gram_schmidt,
    reproduces,
    weighted_inner,
    witness_polynomial,
)

from conftest import cert, fn

F1_WEIGHTS = cert(0, "1/4", "1/4", "1/4", "1/4")
F4_WEIGHTS = cert(0, 0, 0, "1/2", "1/2")


def b(text):
    return BitString.parse(text)


class TestInner:
    def test_orthogonal_pair(self):
        assert weighted_inner(F1_WEIGHTS, b("0000"), b("0011")) == 0

    def test_self_inner_is_one(self):
        c = cert("1/3", "1/6", "1/6", "1/3")
        assert weighted_inner(c, b("101"), b("101")) == 1

    def test_antipodal(self):
        assert weighted_inner(F1_WEIGHTS, b("0000"), b("1111")) == -1

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            weighted_inner(F1_WEIGHTS, b("000"), b("000"))


class TestOrthogonality:
    def test_f1(self, f1_4):
        assert check_orthogonality(f1_4.function, F1_WEIGHTS)

    def test_f4(self, f4):
        assert check_orthogonality(f4.function, F4_WEIGHTS)

    def test_perturbed(self, f1_4):
        assert not check_orthogonality(f1_4.function, cert("1/2", "1/8", "1/8", "1/8", "1/8"))


class TestGramWitness:
    def test_f5_basis(self, f5_1):
        w = build_gram_witness(f5_1.function, f5_1.certificate)
        assert w.basis == (b("0000"), b("0011"), b("0101"))
        assert [list(row) for row in w.gram] == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_f1_rank_one(self, f1_4):
        w = build_gram_witness(f1_4.function, f1_4.certificate)
        assert w.basis == (b("0000"),)

    def test_constant_zero_is_empty(self):
        f = fn("01 0\n10 0")
        w = build_gram_witness(f, cert(1, 0, 0))
        assert w.basis == ()
        assert evaluate_g(w, b("11")) == 0

    def test_orthogonality_violation(self, f1_4):
        with pytest.raises(WitnessError, match="orthogonality"):
            build_gram_witness(f1_4.function, cert("1/2", "1/8", "1/8", "1/8", "1/8"))

    def test_non_strict_builds_anyway(self, f1_4):
        w = build_gram_witness(f1_4.function, cert("1/2", "1/8", "1/8", "1/8", "1/8"), strict=False)
        assert w.rank == 2

    def test_zero_set_basis_gives_complement(self, f4):
        w = build_gram_witness(f4.function, f4.certificate, use_zero_set=True)
        assert reproduces(w, complement(f4.function))


class TestEvaluateG:
    def test_f5_values(self, f5_1):
        w = build_gram_witness(f5_1.function, f5_1.certificate)
        assert evaluate_g(w, b("1111")) == 1
        assert evaluate_g(w, b("0110")) == 0

    def test_exact_agreement_on_domain(self, f4, f5_1, f1_4):
        for entry in (f4, f5_1, f1_4):
            w = build_gram_witness(entry.function, entry.certificate)
            for x, v in entry.function.items():
                assert evaluate_g(w, x) == v

    def test_basis_order_invariance(self, f5_1):
        forward = build_gram_witness(f5_1.function, f5_1.certificate)
        backward = build_gram_witness(f5_1.function, f5_1.certificate, reverse=True)
        assert forward.basis != backward.basis
        for x in all_bitstrings(4):
            assert evaluate_g(forward, x) == evaluate_g(backward, x)

    def test_contraction(self, f5_1):
        w = build_gram_witness(f5_1.function, f5_1.certificate)
        for x in all_bitstrings(4):
            assert 0 <= evaluate_g(w, x) <= 1


class TestProjector:
    def test_empty_is_zero(self):
        w = build_gram_witness(fn("01 0\n10 0"), cert(1, 0, 0))
        assert not build_projector_float(w).matrix.any()

    def test_f1_rank_one(self, f1_4):
        p = build_projector_float(build_gram_witness(f1_4.function, f1_4.certificate))
        expected = np.zeros((5, 5))
        expected[1:, 1:] = 0.25
        np.testing.assert_allclose(p.matrix, expected, atol=1e-12)

    def test_f5_rank_three(self, f5_1):
        p = build_projector_float(build_gram_witness(f5_1.function, f5_1.certificate))
        assert p.trace == pytest.approx(3, abs=1e-9)
        assert p.symmetry_error() == 0
        assert p.idempotence_error() <= 1e-9

    def test_tiny_weight_certificate_still_builds(self):
        eps = Fraction(1, 10 ** 20)
        f = fn("000 1\n110 1\n011 0")
        c = cert(Fraction(1, 2) - eps, eps, eps, Fraction(1, 2) - eps)
        assert verify_certificate(f, c)
        w = build_gram_witness(f, c)
        assert w.rank == 2
        assert w.schur[1] == 1 - (1 - 4 * eps) ** 2
        p = build_projector_float(w)
        assert p.trace == pytest.approx(1, abs=1e-9)
        assert float_agreement(w, p) <= 1e-9
        report = run_algorithm1(f, c, p)
        assert report.all_passed

    def test_large_dropped_mass_raises(self, f5_1):
        w = build_gram_witness(f5_1.function, f5_1.certificate)
        with pytest.raises(WitnessError, match="float rank"):
            build_projector_float(w, tol=2.0)

    def test_gram_schmidt_records_dependent_vectors(self):
        skipped = []
        q = gram_schmidt([np.array([1.0, 0.0]), np.array([2.0, 0.0]), np.array([0.0, 3.0])], skipped=skipped)
        assert skipped == [1]
        assert len(q) == 2
        with pytest.raises(WitnessError, match="vector 1"):
            gram_schmidt([np.array([1.0, 0.0]), np.array([2.0, 0.0])])

    def test_float_matches_exact(self, f4, f5_1):
        for entry in (f4, f5_1):
            w = build_gram_witness(entry.function, entry.certificate)
            assert float_agreement(w, build_projector_float(w)) <= 1e-9


class TestPolynomial:
    def test_degree_at_most_two(self, f4, f5_1):
        for entry in (f4, f5_1):
            poly = witness_polynomial(build_gram_witness(entry.function, entry.certificate))
            assert all(len(mono) <= 2 for mono in poly)

    def test_agrees_with_g_on_cube(self, f5_1):
        w = build_gram_witness(f5_1.function, f5_1.certificate)
        poly = witness_polynomial(w)
        for x in all_bitstrings(4):
            assert evaluate_polynomial(poly, x) == evaluate_g(w, x)

    def test_f1_n2(self, deutsch2):
        # g = (1 - x1 - x2)^2 = 1 - x1 - x2 + 2 x1 x2 on {0,1}^2
        w = build_gram_witness(deutsch2, cert(0, "1/2", "1/2"))
        assert witness_polynomial(w) == {(): 1, (1,): -1, (2,): -1, (1, 2): 2}


def test_dump(f5_1):
    w = build_gram_witness(f5_1.function, f5_1.certificate)
    text = dump_witness(w, build_projector_float(w))
    assert "rank=3" in text
    assert "0011" in text
    assert "projector:" in text


def test_larger_f5_reproduces():
    entry = make_f5(2)
    w = build_gram_witness(entry.function, entry.certificate)
    assert reproduces(w, entry.function)
    assert all(0 <= evaluate_g(w, x) <= 1 for x in all_bitstrings(8))
