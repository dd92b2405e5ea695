import pytest

from qvanish.arith import sieve_primes
from qvanish.ec import (
    ADDITIVE,
    FIXTURES,
    GOOD,
    NONSPLIT_MULTIPLICATIVE,
    SPLIT_MULTIPLICATIVE,
    WeierstrassCurve,
    ap_bad,
    ap_good,
    count_points_naive,
    curve_level,
    nonsingular_count,
    parse_curve,
    prime_table,
    reduction_type,
)
from qvanish.hecke import qexp_from_primes

from .oracles import count_affine_points, count_nonsingular

C37 = FIXTURES["37a1"]
C53 = FIXTURES["53a1"]
# y^2 = x^3 + 5^2 x: additive reduction at 5
C_ADD = WeierstrassCurve(0, 0, 0, 25, 0, label="additive-5")
# split multiplicative at 11 (the level-11 curve)
C11 = WeierstrassCurve(0, -1, 1, -10, -20, label="11a1")


class TestModel:
    def test_discriminants(self):
        assert C37.discriminant == 37
        assert C53.discriminant == -53

    def test_singular_model_rejected(self):
        with pytest.raises(ValueError, match="discriminant"):
            WeierstrassCurve(0, 0, 0, 0, 0)

    def test_parse_curve(self):
        c = parse_curve("0,0,1,-1,0")
        assert (c.a1, c.a2, c.a3, c.a4, c.a6) == (0, 0, 1, -1, 0)
        with pytest.raises(ValueError):
            parse_curve("1,2,3")

    def test_levels(self):
        assert curve_level(C37) == 37
        assert curve_level(C53) == 53


class TestGoodPrimes:
    def test_37a1_known_values(self):
        assert ap_good(C37, 2) == -2
        assert ap_good(C37, 7) == -1

    def test_53a1_known_values(self):
        assert ap_good(C53, 3) == -3
        assert ap_good(C53, 7) == -4

    def test_rejects_bad_prime(self):
        with pytest.raises(ValueError, match="divides the discriminant"):
            ap_good(C37, 37)

    @pytest.mark.parametrize("curve", [C37, C53], ids=["37a1", "53a1"])
    def test_char_sum_equals_enumeration_to_200(self, curve):
        for p in sieve_primes(200):
            if curve.discriminant % p == 0:
                continue
            ap = ap_good(curve, p)
            a = curve
            naive = p + 1 - (
                count_affine_points(a.a1, a.a2, a.a3, a.a4, a.a6, p) + 1
            )
            assert ap == naive, (curve.label, p)
            assert ap == p + 1 - count_points_naive(curve, p)
            assert ap * ap <= 4 * p


class TestBadPrimes:
    def test_fixture_bad_values_from_brute_force(self):
        # Frozen from the independent full-enumeration nonsingular count
        # (both fixtures reduce to a nonsplit node).
        assert ap_bad(C37, 37) == -1
        assert ap_bad(C53, 53) == -1
        assert nonsingular_count(C37, 37) == count_nonsingular(0, 0, 1, -1, 0, 37)
        assert nonsingular_count(C53, 53) == count_nonsingular(1, -1, 1, 0, 0, 53)

    def test_additive_fixture(self):
        assert ap_bad(C_ADD, 5) == 0
        assert reduction_type(C_ADD, 5) == ADDITIVE

    def test_split_case(self):
        assert ap_bad(C11, 11) == 1
        assert reduction_type(C11, 11) == SPLIT_MULTIPLICATIVE

    def test_reduction_kinds(self):
        assert reduction_type(C37, 37) == NONSPLIT_MULTIPLICATIVE
        assert reduction_type(C37, 2) == GOOD

    def test_rejects_good_prime(self):
        with pytest.raises(ValueError, match="does not divide"):
            ap_bad(C37, 5)


class TestPrimeTable:
    def test_37a1_table_to_7(self):
        pt = prime_table(C37, 7)
        assert pt.table == {2: -2, 3: -3, 5: -2, 7: -1}
        assert pt.provenance == {2: "good", 3: "good", 5: "good", 7: "good"}

    def test_53a1_table_to_7(self):
        assert prime_table(C53, 7).table == {2: -1, 3: -3, 5: 0, 7: -4}

    def test_bound_two(self):
        assert len(prime_table(C37, 2).table) == 1

    def test_provenance_marks_bad(self):
        pt = prime_table(C37, 40)
        assert pt.provenance[37] == "bad"
        assert pt.table[37] == -1

    def test_known_expansions_through_q9(self):
        assert qexp_from_primes(prime_table(C37, 9), 9).coeffs == (
            0, 1, -2, -3, 2, -2, 6, -1, 0, 6,
        )
        assert qexp_from_primes(prime_table(C53, 9), 9).coeffs == (
            0, 1, -1, -3, -1, 0, 3, -4, 3, 6,
        )

    def test_hasse_everywhere(self):
        pt = prime_table(C53, 300)
        for p, ap in pt.table.items():
            if pt.provenance[p] == "good":
                assert ap * ap <= 4 * p
