"""Tests for jtcalc/jacobi_trudi.py: determinant terms, truncations g^k, the positivity report."""

from unittest.mock import patch

import pytest

from combinatorics import Partition, Permutation, SkewShape, all_permutations, enumerate_partitions
from jacobi_trudi import (
    REPORT_SCHEMA,
    JacobiTrudiError,
    PositivityReport,
    TruncationRow,
    default_rank,
    jt_determinant,
    jt_terms,
    layer_character,
    max_truncation,
    positivity_report,
    tensor_verma_mult,
    truncation,
    truncation_schur,
)
from symfunc import Basis, SymPoly, h_of_vector, h_to_schur, schur, skew_schur_monomial, to_monomial
from weights import Weight, tensor_product_mult

EMPTY = Partition()


def P(*parts):
    return Partition(parts)


def W(*entries):
    return Weight(entries)


# ---------------------------------------------------------------------------
# Terms and the determinant
# ---------------------------------------------------------------------------


class TestTerms:
    def test_two_variable_terms(self):
        terms = jt_terms(P(2, 1), EMPTY, 2)
        assert [t.w for t in terms] == [Permutation.identity(2), Permutation.simple(1, 2)]
        assert [t.sign for t in terms] == [1, -1]
        assert [t.hvector for t in terms] == [W(2, 1), W(3, 0)]
        assert terms[1].dotweight == W(-1, 1)
        assert terms[1].length == 1

    def test_ordered_by_length(self):
        lengths = [t.length for t in jt_terms(P(2, 1), P(1), 3)]
        assert lengths == sorted(lengths)
        assert len(lengths) == 6

    def test_determinant(self):
        assert jt_determinant(P(2, 1), EMPTY, 2) == SymPoly(Basis.COMPLETE, 2, {P(2, 1): 1, P(3): -1})

    @pytest.mark.parametrize(
        ("mu", "nu", "n"),
        [(P(2, 1), EMPTY, 3), (P(3, 1), P(1), 2), (P(3, 2, 1), P(2, 1), 3), (P(2, 2), P(1), 3), (P(3, 3), P(2), 4)],
    )
    def test_determinant_is_skew_schur(self, mu, nu, n):
        assert to_monomial(jt_determinant(mu, nu, n)) == skew_schur_monomial(SkewShape(mu, nu), n)

    def test_rejects_bad_shapes(self):
        with pytest.raises(JacobiTrudiError, match="does not fit"):
            jt_terms(P(2), P(1, 1), 2)
        with pytest.raises(JacobiTrudiError, match="at most 2 parts"):
            jt_terms(P(1, 1, 1), EMPTY, 2)
        with pytest.raises(JacobiTrudiError, match="at least 1"):
            jt_terms(EMPTY, EMPTY, 0)


class TestRanks:
    def test_default_rank(self):
        assert default_rank(P(2, 1), EMPTY) == 2
        assert default_rank(P(2), P(1)) == 2
        assert default_rank(P(1, 1, 1), P(1)) == 3

    def test_max_truncation(self):
        assert max_truncation(1) == 0
        assert max_truncation(3) == 3
        assert max_truncation(4) == 6


# ---------------------------------------------------------------------------
# Truncations
# ---------------------------------------------------------------------------


class TestTruncation:
    def test_zero_is_the_determinant(self):
        assert truncation(P(3, 1), P(1), 3, 0) == jt_determinant(P(3, 1), P(1), 3)

    def test_two_by_two(self):
        assert truncation(P(2, 1), EMPTY, 2, 1) == SymPoly(Basis.COMPLETE, 2, {P(3): 1})

    def test_truncation_schur_example(self):
        assert truncation_schur(P(2, 2), EMPTY, 2, 1) == SymPoly(Basis.SCHUR, 2, {P(4): 1, P(3, 1): 1})

    def test_straight_shape_endpoint(self):
        for mu in enumerate_partitions(4, 3):
            assert truncation_schur(mu, EMPTY, 3, 0) == schur(mu, 3)

    def test_top_truncation_is_longest_term(self):
        mu, nu = P(3, 2), P(1)
        top = jt_terms(mu, nu, 3)[-1]
        assert top.w == Permutation.longest(3)
        assert truncation(mu, nu, 3, 3) == h_of_vector(top.hvector, 3)

    def test_kostka_route_matches_h_route(self):
        for k in range(4):
            assert truncation_schur(P(3, 2, 1), P(1), 3, k) == h_to_schur(truncation(P(3, 2, 1), P(1), 3, k))

    def test_index_range(self):
        with pytest.raises(JacobiTrudiError, match="out of range"):
            truncation(P(2, 1), EMPTY, 2, 2)
        with pytest.raises(JacobiTrudiError):
            truncation_schur(P(2, 1), EMPTY, 2, -1)

    def test_telescoping(self):
        mu, nu, n = P(3, 1, 1), P(1), 3
        for k in range(max_truncation(n)):
            assert truncation(mu, nu, n, k) + truncation(mu, nu, n, k + 1) == layer_character(mu, nu, n, k)

    def test_layer_zero_of_straight_shape(self):
        assert layer_character(P(2, 1), EMPTY, 3, 0) == SymPoly(Basis.COMPLETE, 3, {P(2, 1): 1})


class TestTensorVermaMult:
    def test_matches_character_route(self):
        nu, mu, n = P(1), P(3, 1), 3
        for w in all_permutations(n):
            for lam in enumerate_partitions(3, n):
                assert tensor_verma_mult(lam, w, nu, mu, n) == tensor_product_mult(lam, w, nu, mu)

    def test_degree_mismatch(self):
        with pytest.raises(JacobiTrudiError, match="degree"):
            tensor_verma_mult(P(1), Permutation.identity(2), EMPTY, P(1), 3)

    def test_too_many_parts(self):
        with pytest.raises(JacobiTrudiError, match="more than 2 parts"):
            tensor_verma_mult(P(1, 1, 1), Permutation.identity(2), EMPTY, P(1), 2)


# ---------------------------------------------------------------------------
# Positivity report
# ---------------------------------------------------------------------------


class TestPositivityReport:
    def test_skew_report(self):
        report = positivity_report(P(2, 1), P(1), 3)
        assert report.ok
        assert report.k_max == 3
        assert [row.k for row in report.rows] == [0, 1, 2, 3]
        assert report.rows[0].schur_coefficients == {P(2): 1, P(1, 1): 1}
        assert report.negative_entries() == []

    def test_to_dict(self):
        document = positivity_report(P(2, 1), P(1), 3).to_dict()
        assert document["schema"] == REPORT_SCHEMA
        assert document["mu"] == "2,1"
        assert document["nu"] == "1"
        assert document["k_max"] == 3
        assert document["rows"][0] == {"k": 0, "coeffs": {"2": 1, "1,1": 1}, "nonneg": True, "zero_poly": False}
        assert document["telescoping_ok"] is True
        assert document["telescoping_failures"] == []

    def test_telescoping_failures_are_reported(self):
        with patch("jacobi_trudi.layer_character", side_effect=lambda mu, nu, n, k: SymPoly(Basis.COMPLETE, n)):
            report = positivity_report(P(2, 1), P(1), 3)
        assert not report.ok
        assert 0 in report.telescoping_failures
        document = report.to_dict()
        assert document["telescoping_ok"] is False
        assert document["telescoping_failures"] == report.telescoping_failures

    def test_vanishing_top_row(self):
        report = positivity_report(P(2, 1), EMPTY, 3)
        assert report.rows[-1].zero_poly
        assert report.rows[-1].all_nonnegative

    def test_every_row_non_negative_at_five_boxes(self):
        for mu in enumerate_partitions(5, 3):
            for nu in (EMPTY, P(1), P(1, 1), P(2)):
                if all(mu[i] >= nu[i] for i in range(2)):
                    assert positivity_report(mu, nu, 3).ok, f"{mu}/{nu}"

    def test_negative_entries_are_listed(self):
        report = PositivityReport(
            mu=P(2),
            nu=EMPTY,
            n=2,
            rows=[TruncationRow(k=1, schur_coefficients={P(2): -1, P(1, 1): 0}, all_nonnegative=False, zero_poly=False)],
        )
        assert not report.ok
        assert report.negative_entries() == [(1, P(2), -1)]
