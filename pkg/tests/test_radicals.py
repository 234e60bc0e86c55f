"""Tests for primes, radicals and the radical audit."""

import pytest

from gammalab.services.errors import UsageError
from gammalab.services.ideals import IdealSubset, TWO_SIDED
from gammalab.services.radicals import (
    Side,
    audit_radical_theorems,
    diagonal_radical,
    is_prime,
    is_semiprime,
    jacobson_radical,
    modular_maximal_ideals,
    modularity_witness,
    prime_radical,
)
from gammalab.services.semiring import diagonal


def zero_ideal(m):
    return IdealSubset.zero(m).tagged(TWO_SIDED)


class TestIsPrime:
    """Tests for directional and n-ary primality."""

    def test_e4_zero_two_sided(self, e4):
        """Should accept {0} since mu vanishes only on a zero argument."""
        assert is_prime(e4, zero_ideal(3), Side.TWO)

    def test_e2_zero_two_sided(self, e2):
        """Should accept {0} for three-way AND."""
        assert is_prime(e2, zero_ideal(2), Side.TWO)

    def test_full_carrier_rejected(self, e1):
        """Should require a proper ideal."""
        with pytest.raises(UsageError, match="proper ideal required"):
            is_prime(e1, IdealSubset.zero(1), Side.TWO)

    def test_left_prime_witness(self, e4):
        """Should fail on the first-slot zero with the later slots nonzero."""
        result = is_prime(e4, zero_ideal(3), Side.L)
        assert not result
        assert result.witness["args"] == [0, 1, 1]

    def test_not_an_ideal(self, e4):
        """Should fail subsets outside the side's ideal kind."""
        result = is_prime(e4, IdealSubset.of(3, [0, 1]), Side.TWO)
        assert not result
        assert "reason" in result.witness


class TestSemiprimeAndDiagonal:
    """Tests for semiprimality and diagonal radicals."""

    def test_e4_zero_semiprime(self, e4):
        """Should accept {0} since the diagonal of a is a."""
        assert is_semiprime(e4, zero_ideal(3))

    def test_full_carrier_semiprime(self, e4):
        """Should accept the full carrier."""
        assert is_semiprime(e4, IdealSubset.full(3))

    def test_diagonal_values(self, e2, e4):
        """Should evaluate the n-ary diagonal."""
        assert diagonal(e2, 1, (0, 0)) == 1
        assert diagonal(e4, 2, (0, 0)) == 2
        assert diagonal(e4, 0, (0, 0)) == 0

    def test_diagonal_radical_of_zero(self, e2, e4):
        """Should leave {0} unchanged on E2 and E4."""
        assert diagonal_radical(e2, zero_ideal(2)).members == (0,)
        assert diagonal_radical(e4, zero_ideal(3)).members == (0,)

    def test_diagonal_radical_of_carrier(self, e4):
        """Should give the carrier for the carrier."""
        assert diagonal_radical(e4, IdealSubset.full(3)).is_full

    def test_nilpotent_element(self, zero_op):
        """Should reject {0} when a nonzero element has a zero diagonal."""
        result = is_semiprime(zero_op, IdealSubset.zero(2))
        assert not result
        assert result.witness["element"] == 1


class TestPrimeRadical:
    """Tests for prime radicals."""

    def test_e4_zero(self, e4):
        """Should give {0} for the zero ideal."""
        result = prime_radical(e4, zero_ideal(3), Side.TWO)
        assert result.subset.members == (0,)
        assert not result.empty_family

    def test_e2_zero(self, e2):
        """Should give {0} for the zero ideal."""
        assert prime_radical(e2, zero_ideal(2), Side.TWO).subset.members == (0,)

    def test_degenerate_carrier(self, e1):
        """Should return the carrier flagged as an empty family."""
        result = prime_radical(e1, IdealSubset.zero(1), Side.TWO)
        assert result.subset.is_full
        assert result.empty_family

    def test_rejects_non_ideal(self, e4):
        """Should reject a subset of the wrong kind."""
        with pytest.raises(UsageError):
            prime_radical(e4, IdealSubset.of(3, [0, 1]), Side.TWO)


class TestJacobsonRadical:
    """Tests for modular maximal ideals and the Jacobson radical."""

    def test_e4_modular_maximals(self, e4):
        """Should find {0} with witness w = 1."""
        modular = modular_maximal_ideals(e4, Side.TWO)
        assert [ideal.members for ideal in modular.ideals] == [(0,)]
        assert modular.witness == 1

    def test_e2_witness(self, e2):
        """Should find witness w = 1 for AND."""
        assert modularity_witness(e2) == 1

    def test_e1_no_maximals(self, e1):
        """Should find no modular maximal ideals on one element."""
        assert modular_maximal_ideals(e1, Side.TWO).ideals == ()

    def test_e4_jacobson(self, e4):
        """Should give {0}."""
        assert jacobson_radical(e4, Side.TWO).subset.members == (0,)

    def test_e1_jacobson(self, e1):
        """Should give the carrier flagged as an empty family."""
        result = jacobson_radical(e1, Side.TWO)
        assert result.subset.is_full
        assert result.empty_family

    def test_no_modularity_witness(self, asymmetric_example):
        """Should find no witness when 1 + mu(1, w, 1) never returns 1."""
        assert modularity_witness(asymmetric_example) is None
        assert jacobson_radical(asymmetric_example, Side.TWO).empty_family


class TestRadicalAudit:
    """Tests for the radical audit."""

    CORE_CHECKS = (
        "radicals.diagonal_vs_prime",
        "radicals.semiprime_fixpoint",
        "radicals.quotient_characterization",
        "radicals.closure_operator",
    )

    @pytest.mark.parametrize("name", ["e2", "e4"])
    def test_core_checks_pass(self, registry, name):
        """Should pass the four core radical checks."""
        report = audit_radical_theorems(registry.resolve(name))
        entries = {entry.check_id: entry for entry in report.checks}
        for check_id in self.CORE_CHECKS:
            assert not entries[check_id].failed, check_id

    def test_degenerate_carrier(self, e1):
        """Should raise no failures on one element."""
        report = audit_radical_theorems(e1)
        assert report.discrepancies == []
        assert report.jacobson[Side.TWO].empty_family

    def test_report_dict(self, e2):
        """Should serialise radicals keyed by side."""
        payload = audit_radical_theorems(e2).to_dict()
        assert set(payload["jacobson"]) == {"L", "R", "two"}
        assert payload["prime_radicals"]["two"]["subset"] == [0]
        assert payload["modular_witness"] == 1
