"""Tests for the structure model and the axiom checks."""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gammalab.services.axioms import symmetry_profile, validate, window_value
from gammalab.services.errors import UsageError
from gammalab.services.semiring import AssocMode, GammaSemiring, diagonal, eval_mu
from tests.conftest import zero_structure


class TestStructureConstruction:
    """Tests for shape and range checks."""

    def test_rejects_small_arity(self):
        """Should reject n below 3."""
        with pytest.raises(UsageError):
            GammaSemiring(m=2, n=2, r=1, add=[[0, 1], [1, 1]], mu=[[0, 0, 0, 1]])

    def test_rejects_wrong_mu_shape(self):
        """Should reject operation tables of the wrong size."""
        with pytest.raises(UsageError, match="operation tables"):
            GammaSemiring(m=2, n=3, r=1, add=[[0, 1], [1, 1]], mu=[[0, 0, 0, 1]])

    def test_rejects_out_of_range_values(self):
        """Should reject table entries outside the carrier."""
        with pytest.raises(UsageError, match="outside"):
            GammaSemiring(m=2, n=3, r=1, add=[[0, 2], [1, 1]], mu=[[0] * 8])

    def test_tables_are_read_only(self, e2):
        """Should freeze the numpy tables."""
        with pytest.raises(ValueError):
            e2.mu[0, 1, 1, 1] = 0

    def test_equality_includes_mode(self, e2):
        """Should treat a different associativity mode as a different structure."""
        assert e2 == e2.with_mode(AssocMode.PAPER_ENDS)
        assert e2 != e2.with_mode(AssocMode.DORNTE)


class TestEvaluation:
    """Tests for eval_mu and the diagonal."""

    def test_e4_first_argument_rule(self, e4):
        """Should return the first argument when all arguments are nonzero."""
        assert eval_mu(e4, (0, 0), (1, 2, 2)) == 1
        assert eval_mu(e4, (0, 0), (2, 1, 1)) == 2

    def test_e2_and(self, e2):
        """Should compute three-way AND."""
        assert eval_mu(e2, (0, 0), (1, 1, 1)) == 1
        assert eval_mu(e2, (0, 0), (1, 0, 1)) == 0

    def test_out_of_range_gamma(self, e2):
        """Should raise a usage error for an unknown Gamma label."""
        with pytest.raises(UsageError):
            eval_mu(e2, (0, 1), (1, 1, 1))

    def test_wrong_argument_count(self, e2):
        """Should raise a usage error when the argument count differs from n."""
        with pytest.raises(UsageError):
            eval_mu(e2, (0, 0), (1, 1))

    def test_diagonal(self, e4):
        """Should place the element in every slot."""
        assert diagonal(e4, 2, (0, 0)) == 2
        assert diagonal(e4, 0, (0, 0)) == 0

    def test_gamma_dependent_tables(self):
        """Should keep one table per Gamma-tuple in lexicographic order."""
        s = GammaSemiring.from_rules(
            2, 3, 2, max,
            lambda gammas, args: int(all(args)) if gammas == (1, 0) else 0,
        )
        assert eval_mu(s, (1, 0), (1, 1, 1)) == 1
        assert eval_mu(s, (0, 1), (1, 1, 1)) == 0
        assert s.gamma_index((1, 0)) == 2


class TestRelabel:
    """Tests for relabeling."""

    def test_identity(self, e4):
        """Should leave the structure unchanged under the identity."""
        assert e4.relabel((0, 1, 2)) == e4

    def test_moves_values(self, e4):
        """Should carry every cell along the permutation."""
        swapped = e4.relabel((0, 2, 1))
        for args in itertools.product(range(3), repeat=3):
            image = tuple((0, 2, 1)[a] for a in args)
            assert swapped.value(0, image) == (0, 2, 1)[e4.value(0, args)]

    def test_rejects_non_permutation(self, e4):
        """Should reject maps that are not permutations."""
        with pytest.raises(UsageError):
            e4.relabel((0, 1, 1))

    @settings(max_examples=30, deadline=None)
    @given(st.permutations([1, 2]))
    def test_preserves_validity(self, tail):
        """Should keep valid structures valid."""
        s = GammaSemiring.from_rules(
            3, 3, 1, max, lambda gammas, args: 0 if 0 in args else args[0]
        )
        assert validate(s.relabel((0, *tail))).valid


class TestValidate:
    """Tests for the axiom checks."""

    def test_e2_valid(self, e2):
        """Should accept the Boolean AND structure."""
        report = validate(e2)
        assert report.valid
        assert report.violations == ()

    def test_e4_valid(self, e4):
        """Should accept E4."""
        assert validate(e4).valid

    def test_e1_valid(self, e1):
        """Should accept the one-element structure."""
        assert validate(e1).valid

    def test_asymmetric_example_distributivity_witness(self, asymmetric_example):
        """Should find the distributivity failure at slot 1 with every letter a."""
        report = validate(asymmetric_example)
        assert not report.valid
        witness = report.first("A2")
        assert witness is not None
        assert witness.witness == (1, 1, 1, 1, 1)
        assert (witness.lhs, witness.rhs) == (1, 2)

    def test_absorption_violation(self):
        """Should report a nonzero value on a cell holding 0."""
        s = GammaSemiring.from_rules(2, 3, 1, max, lambda gammas, args: 1)
        violation = validate(s).first("A3")
        assert violation.witness == (0, 0, 0)

    def test_truncates_per_axiom(self):
        """Should keep at most max_violations witnesses per axiom."""
        s = GammaSemiring.from_rules(2, 3, 1, max, lambda gammas, args: 1)
        report = validate(s, max_violations=2)
        assert len([v for v in report.violations if v.axiom == "A3"]) == 2
        assert "A3" in report.truncated

    def test_stop_at_first(self):
        """Should return a single violation when asked to stop early."""
        s = GammaSemiring.from_rules(2, 3, 1, max, lambda gammas, args: 1)
        assert len(validate(s, stop_at_first=True).violations) == 1

    def test_addition_violation(self):
        """Should flag a non-commutative addition."""
        s = GammaSemiring(m=2, n=3, r=1, add=[[0, 1], [0, 1]], mu=[[0] * 8])
        violation = validate(s).first("A1")
        assert violation.witness[0] in (0, 1)

    def test_dornte_checks_middle_windows(self):
        """Should compare every window under the Dornte mode."""
        # mu(x, y, z) = y on nonzero triples
        s = GammaSemiring.from_rules(
            3, 3, 1, max, lambda gammas, args: 0 if 0 in args else args[1]
        )
        paper = validate(s)
        dornte = validate(s.with_mode(AssocMode.DORNTE))
        assert paper.first("A4").witness[0] == 2
        assert dornte.first("A4").witness[0] == 1

    @settings(max_examples=20, deadline=None)
    @given(st.integers(min_value=1, max_value=3))
    def test_zero_operation_valid(self, m):
        """Should accept the zero operation over max addition."""
        assert validate(zero_structure(m)).valid


class TestWindowValue:
    """Tests for flat-word evaluation."""

    def test_windows_agree_on_associative_and(self, e2):
        """Should give the same value for every bracketing of AND."""
        letters = (1, 1, 0, 1, 1)
        gammas = (0, 0, 0, 0)
        assert {window_value(e2, k, letters, gammas) for k in range(3)} == {0}


class TestSymmetryProfile:
    """Tests for the argument-symmetry profile."""

    def test_e2_symmetric(self, e2):
        """Should be empty for AND."""
        assert symmetry_profile(e2) == frozenset()

    def test_e4_breaks_first_two(self, e4):
        """Should contain (1, 2) since mu(1,2,2) differs from mu(2,1,2)."""
        assert (1, 2) in symmetry_profile(e4)
