"""Tests for prime spectra, closed sets and the topology audits."""

import pytest

from gammalab.services.audit import AuditStatus
from gammalab.services.errors import UsageError
from gammalab.services.ideals import IdealSubset
from gammalab.services.morphisms import Homomorphism
from gammalab.services.radicals import Side
from gammalab.services.spectra import (
    audit_spectral_theorems,
    basic_open,
    discreteness_check,
    pullback_map,
    specialization_and_components,
    spectrum,
    vanishing_set,
    verify_zariski_axioms,
)


def points(spec):
    return [p.members for p in spec.points]


class TestSpectrum:
    """Tests for spectrum construction."""

    def test_e4_two_sided(self, e4):
        """Should hold the single point {0}."""
        assert points(spectrum(e4, Side.TWO)) == [(0,)]

    def test_e2_two_sided(self, e2):
        """Should hold the single point {0}."""
        assert points(spectrum(e2, Side.TWO)) == [(0,)]

    def test_e1_empty(self, e1):
        """Should be empty on one element."""
        assert len(spectrum(e1, Side.TWO)) == 0

    def test_json(self, e4):
        """Should serialise side and points."""
        assert spectrum(e4, Side.TWO).to_jsonable() == {"side": "two", "points": [[0]]}


class TestClosedSets:
    """Tests for vanishing sets and basic opens."""

    def test_zero_generator(self, e4):
        """Should contain every point for A = {0}."""
        spec = spectrum(e4, Side.TWO)
        assert vanishing_set(spec, IdealSubset.zero(3)).points == spec.points

    def test_carrier_generator(self, e4):
        """Should be empty for A = T."""
        assert vanishing_set(spectrum(e4, Side.TWO), IdealSubset.full(3)).points == ()

    def test_nonzero_element(self, e4):
        """Should be empty for A = {1}."""
        assert vanishing_set(spectrum(e4, Side.TWO), IdealSubset.of(3, [1])).points == ()

    def test_basic_open(self, e4):
        """Should be the complement of V({a})."""
        spec = spectrum(e4, Side.TWO)
        assert basic_open(spec, 1) == spec.points
        assert basic_open(spec, 0) == ()


class TestZariskiAxioms:
    """Tests for the topology audit."""

    @pytest.mark.parametrize("name", ["e2", "e4"])
    @pytest.mark.parametrize("side", list(Side))
    def test_no_failures(self, registry, name, side):
        """Should pass every closure axiom."""
        entries = verify_zariski_axioms(registry.resolve(name), side)
        assert [entry.check_id for entry in entries if entry.failed] == []

    def test_compactness_asserted(self, e2):
        """Should record compactness without a check."""
        entries = {entry.check_id: entry for entry in verify_zariski_axioms(e2, Side.TWO)}
        assert entries["spectra.two.zariski.compact"].detail == "finite space"

    def test_empty_space(self, e1):
        """Should not fail on an empty spectrum."""
        assert not any(entry.failed for entry in verify_zariski_axioms(e1, Side.TWO))


class TestPullbackMap:
    """Tests for spectral functoriality."""

    def test_identity(self, e4):
        """Should map every point to itself, continuously."""
        result = pullback_map(Homomorphism(e4, e4, (0, 1, 2)), Side.TWO)
        assert [(t.members, s.members) for t, s in result.mapping] == [((0,), (0,))]
        assert all(entry.status is AuditStatus.PASS for entry in result.checks)

    def test_collapse_onto_e2(self, e4, e2):
        """Should pull {0} back to {0} along the map sending 1 and 2 to 1."""
        result = pullback_map(Homomorphism(e4, e2, (0, 1, 1)), Side.TWO)
        assert [s.members for _, s in result.mapping] == [(0,)]
        assert not any(entry.failed for entry in result.checks)

    def test_requires_surjective(self, e2, e4):
        """Should reject maps that miss part of the target."""
        with pytest.raises(UsageError, match="surjective"):
            pullback_map(Homomorphism(e2, e4, (0, 1)), Side.TWO)


class TestSpecialization:
    """Tests for the specialization order and discreteness."""

    def test_single_point_isolated(self, e4):
        """Should report one isolated point and no specializations."""
        order = specialization_and_components(spectrum(e4, Side.TWO))
        assert order.discrete
        assert [p.members for p in order.isolated] == [(0,)]
        assert len(order.components) == 1

    @pytest.mark.parametrize("name", ["e2", "e4"])
    def test_discreteness_biconditional(self, registry, name):
        """Should pair J = 0 with a discrete spectrum."""
        result = discreteness_check(registry.resolve(name))
        assert result.jacobson_zero
        assert result.discrete
        assert result.entry.status is AuditStatus.PASS

    def test_degenerate_carrier(self, e1):
        """Should record the empty spectrum as vacuous."""
        result = discreteness_check(e1)
        assert result.empty_family
        assert result.entry.status is AuditStatus.VACUOUS

    def test_audit_collects_all_sides(self, e2):
        """Should emit entries for every side plus discreteness."""
        ids = {entry.check_id for entry in audit_spectral_theorems(e2)}
        assert {"spectra.L.zariski.t0", "spectra.R.zariski.t0", "spectra.two.zariski.t0"} <= ids
        assert "spectra.discreteness" in ids
