from fractions import Fraction as F

import pytest

from engine.boolfn import BitString, hamming_weight
from engine.catalog import (
    CatalogEntry,
    catalog_entry,
    f5_one_set,
    f5_zero_condition,
    f5_zero_set,
    make_f1,
    make_f2,
    make_f3,
    make_f4,
    make_f5,
    orthonormalized_witnesses,
    raw_square_sum,
    raw_witnesses_exact,
)
from engine.feasibility import verify_certificate
from engine.simulator import run_algorithm1
from engine.witness import (
    ConsistencyError,
    WitnessError,
    build_gram_witness,
    build_projector_float,
    check_orthogonality,
    reproduces,
)

from conftest import cert


class TestF1:
    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_domain(self, n):
        f = make_f1(n).function
        assert all(hamming_weight(x) in (0, n) for x in f.ones())
        assert all(hamming_weight(x) == n // 2 for x in f.zeros())
        assert len(f.ones()) == 2

    @pytest.mark.parametrize("n", [0, 3])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            make_f1(n)

    def test_name(self):
        assert make_f1(4).name == "f1(n=4)"

    @pytest.mark.parametrize("n", [2, 4, 8])
    def test_simulation_is_exact(self, n):
        e = make_f1(n)
        assert check_orthogonality(e.function, e.certificate)
        p = build_projector_float(build_gram_witness(e.function, e.certificate))
        report = run_algorithm1(e.function, e.certificate, p)
        assert report.all_passed
        assert report.max_deviation <= 1e-9


class TestF2:
    def test_weights(self):
        e = make_f2(5, 3)
        assert e.certificate.weights == (F(1, 6),) * 6
        assert len(e.function.zeros()) == 10

    def test_blank_index_matters(self):
        # f2 is the family with c_0 > 0; the witness needs w_0 = 1
        assert raw_witnesses_exact(make_f2(5, 3))
        assert raw_witnesses_exact(make_f2(3, 3))

    def test_half_weight_note(self):
        assert make_f2(4, 2).notes

    @pytest.mark.parametrize("n, c", [(4, 1), (3, 4), (0, 0)])
    def test_rejects_bad_c(self, n, c):
        with pytest.raises(ValueError):
            make_f2(n, c)


class TestF3:
    def test_equal_weights_is_f1_like(self):
        e = make_f3(["0", "1/2", "1/2"])
        assert e.function == make_f1(2).function
        assert e.notes == ()

    def test_blank_weight(self):
        e = make_f3(["1/2", "1/4", "1/4"])
        assert e.function.as_dict() == {BitString.parse("00"): 1, BitString.parse("11"): 0}
        assert any("c_0 > 0" in note for note in e.notes)

    def test_constant_note(self):
        e = make_f3([1, 0, 0])
        assert e.function.is_constant
        assert any("constant" in note for note in e.notes)

    def test_asymmetric(self):
        e = make_f3(["0", "1/2", "1/4", "1/4"])
        assert e.function.value(BitString.parse("100")) == 0
        assert e.function.value(BitString.parse("011")) == 0
        assert e.function.value(BitString.parse("111")) == 1
        assert BitString.parse("010") not in e.function
        assert any("asymmetric" in note for note in e.notes)

    def test_bad_sum(self):
        with pytest.raises(ValueError):
            make_f3(["1/2", "1/4"])


class TestF4:
    def test_table(self, f4):
        assert len(f4.function) == 8
        assert f4.certificate.weights == (0, 0, 0, F(1, 2), F(1, 2))

    def test_published_witness_represents_complement(self, f4):
        assert f4.witnesses_complement
        assert raw_square_sum(f4, BitString.parse("0000")) == 1
        assert raw_square_sum(f4, BitString.parse("0101")) == 0
        assert raw_witnesses_exact(f4)

    def test_gram_witness_still_reproduces_f4(self, f4):
        assert reproduces(build_gram_witness(f4.function, f4.certificate), f4.function)


class TestF5:
    @pytest.mark.parametrize("n, zeros", [(1, 2), (2, 18), (3, 164), (4, 1810)])
    def test_zero_set_size(self, n, zeros):
        assert len(f5_zero_set(n)) == zeros

    def test_one_set(self):
        assert [str(x) for x in f5_one_set(1)] == ["0000", "1111", "0011", "1100", "0101", "1010"]

    def test_n1_zero_set(self):
        assert [str(x) for x in f5_zero_set(1)] == ["0110", "1001"]

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_no_one_input_meets_the_zero_conditions(self, n):
        assert sum(f5_zero_condition(x, n) for x in f5_one_set(n)) == 0
        assert all(f5_zero_condition(x, n) for x in f5_zero_set(n))

    def test_raw_witnesses_need_orthonormalisation(self, f5_1):
        assert not raw_witnesses_exact(f5_1)
        assert raw_square_sum(f5_1, BitString.parse("0000")) == F(3, 2)
        assert len(orthonormalized_witnesses(f5_1)) == 3

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            make_f5(0)


@pytest.mark.parametrize("entry", [
    make_f1(4), make_f2(5, 3), make_f2(6, 4), make_f3(["0", "1/2", "1/4", "1/4"]), make_f4(), make_f5(1), make_f5(2),
], ids=lambda e: e.name)
def test_every_entry_is_one_query(entry):
    assert verify_certificate(entry.function, entry.certificate)
    assert reproduces(build_gram_witness(entry.function, entry.certificate), entry.function)
    orthonormalized_witnesses(entry)


def test_wrong_certificate_is_rejected(f1_4):
    with pytest.raises(ConsistencyError):
        CatalogEntry("broken", f1_4.function, cert("1/2", "1/8", "1/8", "1/8", "1/8"), f1_4.raw_witnesses)


def test_degenerate_witnesses(f1_4):
    doubled = CatalogEntry("doubled", f1_4.function, f1_4.certificate, f1_4.raw_witnesses * 2)
    with pytest.raises(WitnessError, match="degenerate"):
        orthonormalized_witnesses(doubled)


class TestDispatch:
    def test_defaults(self):
        assert catalog_entry("f1").name == "f1(n=4)"
        assert catalog_entry("f2").name == "f2(n=5,c=3)"
        assert catalog_entry("f5").name == "f5(n=1)"
        assert catalog_entry("f2", n=6, c=5).name == "f2(n=6,c=5)"

    def test_f3_needs_weights(self):
        with pytest.raises(ValueError, match="weights"):
            catalog_entry("f3")

    def test_unknown(self):
        with pytest.raises(ValueError, match="unknown"):
            catalog_entry("f9")
