"""Tests for the structure registry and its recorded claims."""

import pytest
import yaml

from gammalab.services.audit import AuditStatus
from gammalab.services.axioms import is_valid
from gammalab.services.errors import UsageError
from gammalab.services.structure_registry import StructureRegistryService


@pytest.fixture
def small_registry(tmp_path):
    """Registry file holding E2 with one known and one unknown claim."""
    config = {
        "default_structure": "and",
        "structures": [{
            "name": "and",
            "m": 2,
            "n": 3,
            "r": 1,
            "add": [[0, 1], [1, 1]],
            "mu": [[0, 0, 0, 0, 0, 0, 0, 1]],
            "claims": {"valid": True, "favourite_colour": "blue"},
        }],
    }
    path = tmp_path / "structures.yaml"
    path.write_text(yaml.safe_dump(config))
    return StructureRegistryService(config_file_path=str(path))


class TestRegistryLoading:
    """Tests for loading and listing structures."""

    def test_lists_bundled_structures(self, registry):
        """Should list every bundled entry with the default flagged."""
        listed = {entry["id"]: entry for entry in registry.get_available_structures_list()}
        assert {"e1", "e2", "e4", "asymmetric_example", "and_4ary"} <= set(listed)
        assert listed["e2"]["is_default"]
        assert listed["e4"]["m"] == 3

    def test_default_structure(self, registry, e2):
        """Should resolve the default when no name is given."""
        assert registry.resolve() == e2

    def test_unknown_name(self, registry):
        """Should name the available entries."""
        with pytest.raises(UsageError, match="not found. Available"):
            registry.resolve("e3")

    def test_missing_file(self, tmp_path):
        """Should raise FileNotFoundError for a missing registry."""
        with pytest.raises(FileNotFoundError):
            StructureRegistryService(config_file_path=str(tmp_path / "absent.yaml"))

    def test_missing_assoc_mode_uses_default(self, small_registry):
        """Should fall back to the configured associativity mode."""
        assert small_registry.resolve().assoc_mode.value == "paper_ends"

    def test_reload(self, small_registry):
        """Should report the reloaded entry count."""
        assert small_registry.reload_configuration() == {
            "status": "reloaded",
            "structures_count": 1,
            "default_structure": "and",
        }

    def test_invalid_entries_resolve(self, asymmetric_example):
        """Should build structures whether or not they satisfy the axioms."""
        assert not is_valid(asymmetric_example)


class TestClaimsAudit:
    """Tests for comparing recorded claims with computed values."""

    @pytest.mark.parametrize("name", ["e1", "e2", "e4", "and_4ary"])
    def test_valid_structures_match(self, registry, name):
        """Should pass every recorded claim."""
        entries = registry.audit_claims(name)
        assert entries
        assert all(entry.status is AuditStatus.PASS for entry in entries)

    def test_asymmetric_example_validity(self, registry):
        """Should flag the recorded validity with both values as witness."""
        entries = {entry.check_id: entry for entry in registry.audit_claims("asymmetric_example")}
        valid = entries["claims.valid"]
        assert valid.failed
        assert valid.witness == {"recorded": True, "computed": False}

    def test_unknown_claim(self, small_registry):
        """Should record unknown claims as vacuous."""
        entries = {entry.check_id: entry for entry in small_registry.audit_claims()}
        assert entries["claims.favourite_colour"].status is AuditStatus.VACUOUS
        assert entries["claims.valid"].status is AuditStatus.PASS

    def test_claims_lookup(self, registry):
        """Should return the recorded claims of an entry."""
        assert registry.claims("and_4ary")["central_idempotents"] == [1]
