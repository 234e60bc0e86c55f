"""Full structure reports: ideals, radicals, spectra, modules, decompositions and every audit."""

import json
import logging
from typing import Optional

import yaml

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.audit import AuditEntry, summarize, to_jsonable
from gammalab.services.axioms import symmetry_profile, validate
from gammalab.services.decompose import audit_decomposition
from gammalab.services.errors import CapacityError
from gammalab.services.ideals import (
    LEFT,
    RIGHT,
    TWO_SIDED,
    additive_closed_subsets,
    all_ideals,
    audit_ideal_theorems,
    tau,
)
from gammalab.services.metrics_service import metrics_service
from gammalab.services.morphisms import audit_threshold_transport
from gammalab.services.radicals import Side, audit_radical_theorems
from gammalab.services.representations import (
    annihilators,
    audit_representation_theorems,
    enumerate_modules,
    is_simple,
    primitive_ideals,
)
from gammalab.services.semiring import GammaSemiring
from gammalab.services.spectra import audit_spectral_theorems, specialization_and_components, spectrum
from gammalab.services.structure_io import digest


logger = logging.getLogger(__name__)


def _ideals_section(s: GammaSemiring) -> dict:
    return {
        "two_sided": [ideal.to_jsonable() for ideal in all_ideals(s, TWO_SIDED)],
        "left": [ideal.to_jsonable() for ideal in all_ideals(s, LEFT)],
        "right": [ideal.to_jsonable() for ideal in all_ideals(s, RIGHT)],
        "tau": [
            {"subset": subset.to_jsonable(), "tau": tau(s, subset).to_jsonable()}
            for subset in additive_closed_subsets(s)
        ],
    }


def _spectra_section(s: GammaSemiring) -> dict:
    section = {}
    for side in Side:
        spec = spectrum(s, side)
        section[side.value] = {
            "points": spec.to_jsonable()["points"],
            "order": specialization_and_components(spec).to_jsonable(),
        }
    return section


def _modules_section(s: GammaSemiring, slot: int, k_max: int) -> tuple[dict, list[AuditEntry]]:
    enumeration = enumerate_modules(s, slot, k_max)
    simple = [mod for mod in enumeration.modules if is_simple(mod)]
    section = {
        "slot": slot,
        "k_max": k_max,
        "count": len(enumeration.modules),
        "valid_tables": enumeration.valid_count,
        "simple": [
            {"module": mod.to_jsonable(), "annihilators": annihilators(mod).to_jsonable()}
            for mod in simple
        ],
        "primitive_ideals": primitive_ideals(s, slot, k_max, simple).to_jsonable(),
    }
    return section, audit_representation_theorems(s, slot, k_max)


def build_report(
    s: GammaSemiring,
    slot: Optional[int] = None,
    k_max: Optional[int] = None,
    max_violations: Optional[int] = None,
) -> dict:
    """
    The report document for ``s``. Sections that exceed a capacity limit
    are replaced by a ``skipped`` note rather than failing the report.
    """
    settings = get_toolkit_settings()
    slot = slot or settings.report_module_slot
    k_max = k_max or settings.report_module_carrier

    with metrics_service.time_operation("analyze"):
        validation = validate(s, max_violations)
        checks: list[AuditEntry] = []
        checks.extend(audit_ideal_theorems(s))
        checks.extend(audit_threshold_transport(s))
        radicals = audit_radical_theorems(s)
        checks.extend(radicals.checks)
        checks.extend(audit_spectral_theorems(s))

        two_sided_spectrum = spectrum(s, Side.TWO)
        jacobson = radicals.jacobson[Side.TWO]
        report = {
            "structure_digest": digest(s),
            "summary": {
                "m": s.m,
                "n": s.n,
                "r": s.r,
                "valid": validation.valid,
                "symmetric": not symmetry_profile(s),
                "J_zero": not jacobson.empty_family and jacobson.subset.bits == 1,
                "spectrum_size": len(two_sided_spectrum),
            },
            "validation": validation.to_dict(),
            "checks": [],
            "ideals": _ideals_section(s),
            "radicals": radicals.to_dict(),
            "spectra": _spectra_section(s),
        }

        try:
            modules, module_checks = _modules_section(s, slot, k_max)
            checks.extend(module_checks)
        except CapacityError as error:
            logger.warning(f"Modules section skipped: {error}")
            modules = {"skipped": str(error)}
        report["modules"] = modules

        try:
            decomposition = audit_decomposition(s, slot, k_max)
            checks.extend(decomposition.checks)
            report["decomposition"] = decomposition.to_jsonable()
            del report["decomposition"]["checks"]
        except CapacityError as error:
            logger.warning(f"Decomposition section skipped: {error}")
            report["decomposition"] = {"skipped": str(error)}

    report["checks"] = [entry.to_dict() for entry in checks]
    report["check_summary"] = summarize(checks)
    logger.info(f"Report for {report['structure_digest'][:12]}: {report['check_summary']}")
    return to_jsonable(report)


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def render_text(document: dict) -> str:
    return yaml.safe_dump(document, sort_keys=False, default_flow_style=None)
