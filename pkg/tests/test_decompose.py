"""Tests for comaximality, Chinese-remainder maps, pinning and decomposition audits."""

import pytest

from gammalab.services.audit import AuditStatus
from gammalab.services.decompose import (
    PinningSpec,
    are_comaximal,
    audit_decomposition,
    central_idempotents,
    crt_check,
    pinned_ternary,
    reduction_modulo_radical_check,
    spectra_disjoint_union_check,
    wedderburn_check,
)
from gammalab.services.errors import UsageError
from gammalab.services.ideals import IdealSubset


class TestComaximal:
    """Tests for comaximality."""

    def test_zero_with_carrier(self, e4):
        """Should be comaximal with the whole carrier."""
        assert are_comaximal(e4, IdealSubset.zero(3), IdealSubset.full(3))

    def test_zero_with_itself(self, e4):
        """Should not be comaximal with itself."""
        assert not are_comaximal(e4, IdealSubset.zero(3), IdealSubset.zero(3))

    def test_rejects_non_ideal(self, e4):
        """Should reject subsets that are not two-sided ideals."""
        with pytest.raises(UsageError):
            are_comaximal(e4, IdealSubset.of(3, [0, 1]), IdealSubset.full(3))


class TestCrtCheck:
    """Tests for the Chinese-remainder map."""

    @pytest.mark.parametrize("name", ["e2", "e4"])
    def test_zero_ideal(self, registry, name):
        """Should pass every check with the identity map."""
        s = registry.resolve(name)
        report = crt_check(s, [IdealSubset.zero(s.m)])
        assert report.passed
        assert report.injective
        assert report.mapping == tuple(range(s.m))

    def test_not_comaximal(self, e4):
        """Should stop at the first non-comaximal pair with a witness."""
        report = crt_check(e4, [IdealSubset.zero(3), IdealSubset.zero(3)])
        assert not report.pairwise_comaximal
        entries = {entry.check_id: entry for entry in report.entries()}
        assert entries["decompose.crt.comaximal"].status is AuditStatus.FAIL
        assert entries["decompose.crt.kernel"].status is AuditStatus.VACUOUS

    def test_carrier_factor(self, e4):
        """Should map onto the one-element quotient with a collapsed kernel."""
        report = crt_check(e4, [IdealSubset.full(3)])
        assert report.passed
        assert report.mapping == (0, 0, 0)
        assert not report.injective

    def test_empty_family(self, e4):
        """Should reject an empty list of ideals."""
        with pytest.raises(UsageError):
            crt_check(e4, [])


class TestCentralIdempotents:
    """Tests for central idempotent detection."""

    def test_and(self, e2):
        """Should find 1 for three-way AND."""
        assert central_idempotents(e2) == [1]

    def test_include_zero(self, e2):
        """Should list 0 only when asked."""
        assert central_idempotents(e2, include_zero=True) == [0, 1]

    def test_first_argument_rule(self, e4):
        """Should find none on E4 since moving 1 past 2 changes the product."""
        assert central_idempotents(e4) == []

    def test_four_ary_and(self, and_4ary):
        """Should find 1 for four-way AND."""
        assert central_idempotents(and_4ary) == [1]


class TestPinning:
    """Tests for idempotent pinning."""

    def test_four_ary_and_pins_to_e2(self, and_4ary, e2):
        """Should reduce four-way AND to three-way AND."""
        pinned = pinned_ternary(and_4ary, PinningSpec(1))
        assert pinned.structure.n == 3
        assert pinned.structure.table_key() == e2.table_key()

    def test_transfer_audit(self, and_4ary):
        """Should pass the transfer checks."""
        pinned = pinned_ternary(and_4ary, PinningSpec(1))
        entries = {entry.check_id: entry for entry in pinned.checks}
        assert entries["decompose.pinning.valid"].status is AuditStatus.PASS
        assert entries["decompose.pinning.jacobson"].status is AuditStatus.PASS
        assert entries["decompose.pinning.gamma_consistency"].status is AuditStatus.VACUOUS

    def test_requires_arity_above_three(self, e2):
        """Should reject ternary structures."""
        with pytest.raises(UsageError, match="arity above 3"):
            pinned_ternary(e2, PinningSpec(1))

    def test_requires_central_idempotent(self, and_4ary):
        """Should reject an element that is not a central idempotent."""
        with pytest.raises(UsageError, match="not a central idempotent"):
            pinned_ternary(and_4ary, PinningSpec(0))

    def test_gamma_map_must_be_onto(self, and_4ary):
        """Should reject maps leaving a Gamma pair without preimage."""
        with pytest.raises(UsageError):
            pinned_ternary(and_4ary, PinningSpec(1, gamma_map=lambda gammas: (0, 1)))

    def test_json(self, and_4ary):
        """Should serialise the pinning, the structure and the checks."""
        payload = pinned_ternary(and_4ary, PinningSpec(1)).to_jsonable()
        assert payload["pinning"] == {"e": 1, "gamma_map": "first_and_last"}
        assert payload["structure"]["n"] == 3


class TestDecompositionAudit:
    """Tests for the decomposition audits."""

    def test_wedderburn_on_e2(self, e2):
        """Should split E2 within the module bound."""
        assert wedderburn_check(e2, 2, 2).status is AuditStatus.WITHIN_BOUND

    def test_wedderburn_vacuous_without_radical_zero(self, asymmetric_example):
        """Should be vacuous when the Jacobson family is empty."""
        assert wedderburn_check(asymmetric_example, 2, 1).status is AuditStatus.VACUOUS

    def test_spectra_union(self, e2):
        """Should match the spectrum with the pulled-back factor spectra."""
        assert spectra_disjoint_union_check(e2, [IdealSubset.zero(2)]).status is AuditStatus.PASS

    def test_e2_report(self, e2):
        """Should audit the maximal ideals and the zero ideal without failures."""
        report = audit_decomposition(e2, 2, 2)
        assert report.central_idempotents == (1,)
        assert report.crt is not None and report.crt.passed
        assert not any(entry.failed for entry in report.checks)
        ids = {entry.check_id for entry in report.checks}
        assert "decompose.crt.maximal.kernel" in ids
        assert "decompose.crt.zero.kernel" in ids

    def test_reduction_modulo_radical(self, e2):
        """Should find T/J radical-free and the primitive map kernel equal to ~J."""
        entries = {entry.check_id: entry for entry in reduction_modulo_radical_check(e2, 2, 2)}
        assert entries["decompose.reduction.jacobson_zero"].status is AuditStatus.PASS
        assert entries["decompose.reduction.semisimple"].status is AuditStatus.WITHIN_BOUND

    def test_reduction_without_primitives(self, e1):
        """Should be vacuous when no primitive ideals exist."""
        entries = {entry.check_id: entry for entry in reduction_modulo_radical_check(e1, 2, 2)}
        assert entries["decompose.reduction.semisimple"].status is AuditStatus.VACUOUS
