"""Tests for the full structure report."""

import json

import pytest
import yaml

from gammalab.services.analysis import build_report, render_json, render_text
from gammalab.services.structure_io import digest

REGISTRY_NAMES = ["e1", "e2", "e4", "asymmetric_example", "and_4ary"]


class TestBuildReport:
    """Tests for report assembly over the bundled structures."""

    @pytest.mark.parametrize("name", REGISTRY_NAMES)
    def test_every_registry_entry(self, registry, name):
        """Should build a report whose summary counts every check."""
        s = registry.resolve(name)
        report = build_report(s)
        assert report["structure_digest"] == digest(s)
        assert sum(report["check_summary"].values()) == len(report["checks"])
        assert all(check["witness"] is not None for check in report["checks"] if check["status"] == "fail")

    def test_e2_summary(self, e2):
        """Should summarise E2 as valid, symmetric and semisimple."""
        assert build_report(e2)["summary"] == {
            "m": 2, "n": 3, "r": 1, "valid": True, "symmetric": True, "J_zero": True, "spectrum_size": 1,
        }

    def test_invalid_structure_still_reported(self, asymmetric_example):
        """Should report on structures failing the axioms."""
        report = build_report(asymmetric_example)
        assert report["summary"]["valid"] is False
        assert report["validation"]["violations"]

    def test_skipped_sections(self, e2):
        """Should replace oversized sections with a skipped note."""
        report = build_report(e2, k_max=50)
        assert "limit is" in report["modules"]["skipped"]
        assert "skipped" in report["decomposition"]

    def test_renderings_agree(self, e4):
        """Should render the same document as JSON and YAML."""
        report = build_report(e4)
        assert json.loads(render_json(report)) == yaml.safe_load(render_text(report))
