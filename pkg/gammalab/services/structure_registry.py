"""Structure Registry Service - named reference structures and their recorded claims."""

import logging
from pathlib import Path
from typing import Any, Callable, Optional

import yaml

from gammalab.config.settings import get_toolkit_settings
from gammalab.services.audit import AuditEntry, AuditStatus, collect
from gammalab.services.axioms import is_valid, symmetry_profile
from gammalab.services.decompose import are_comaximal, central_idempotents
from gammalab.services.errors import UsageError
from gammalab.services.ideals import TWO_SIDED, IdealSubset, all_ideals, is_ideal
from gammalab.services.radicals import Side, jacobson_radical, prime_radical
from gammalab.services.semiring import GammaSemiring
from gammalab.services.structure_io import FORMAT_VERSION, from_document


logger = logging.getLogger(__name__)

STRUCTURE_FIELDS = ("m", "n", "r", "assoc_mode", "add", "mu")


def _members(subset: IdealSubset) -> list[int]:
    return list(subset.members)


def _proper_nonzero_ideals(s: GammaSemiring) -> list[list[int]]:
    return [
        _members(ideal) for ideal in all_ideals(s, TWO_SIDED)
        if not ideal.is_full and ideal.bits != 1
    ]


def _comaximal(s: GammaSemiring, pair: list[list[int]]) -> bool:
    first, second = (IdealSubset.of(s.m, members) for members in pair)
    if not (is_ideal(s, first, TWO_SIDED) and is_ideal(s, second, TWO_SIDED)):
        return False
    return are_comaximal(s, first, second)


def _prime_radical_of_zero(side: Side) -> Callable[[GammaSemiring], list[int]]:
    return lambda s: _members(prime_radical(s, IdealSubset.zero(s.m), side).subset)


# claim name -> computed value
CLAIM_CHECKS: dict[str, Callable[[GammaSemiring], Any]] = {
    "valid": is_valid,
    "noncommutative": lambda s: bool(symmetry_profile(s)),
    "proper_nonzero_two_sided_ideals": _proper_nonzero_ideals,
    "prime_radical_left": _prime_radical_of_zero(Side.L),
    "prime_radical_right": _prime_radical_of_zero(Side.R),
    "prime_radical_two_sided": _prime_radical_of_zero(Side.TWO),
    "jacobson_radical": lambda s: _members(jacobson_radical(s, Side.TWO).subset),
    "central_idempotents": central_idempotents,
}


class StructureRegistryService:
    """Service for loading named structures from the YAML registry."""

    def __init__(self, config_file_path: Optional[str] = None):
        """Initialize the registry from a YAML file."""
        if not config_file_path:
            config_file_path = get_toolkit_settings().structures_registry_path or str(
                Path(__file__).parent.parent.parent / "config" / "structures.yaml"
            )

        self.config_file_path = Path(config_file_path)
        self.available_structures: dict[str, dict] = {}
        self.default_structure_name: Optional[str] = None

        self._load_structure_configuration()

    def _load_structure_configuration(self):
        """Load structure entries from the YAML file."""
        if not self.config_file_path.exists():
            raise FileNotFoundError(f"Registry file not found: {self.config_file_path}")

        with open(self.config_file_path, "r") as config_file:
            config_data = yaml.safe_load(config_file) or {}

        self.available_structures = {}
        for structure_config in config_data.get("structures", []):
            structure_name = structure_config.get("name")
            if structure_name:
                self.available_structures[structure_name] = structure_config

        self.default_structure_name = config_data.get("default_structure")

        logger.info(
            f"Loaded {len(self.available_structures)} structures, "
            f"default: {self.default_structure_name}"
        )

    def reload_configuration(self) -> dict:
        """Re-read the registry file."""
        self._load_structure_configuration()
        return {
            "status": "reloaded",
            "structures_count": len(self.available_structures),
            "default_structure": self.default_structure_name,
        }

    def get_available_structures_list(self) -> list[dict]:
        structures_list = []
        for structure_name, structure_config in self.available_structures.items():
            structures_list.append({
                "id": structure_name,
                "m": structure_config.get("m"),
                "n": structure_config.get("n"),
                "r": structure_config.get("r"),
                "is_default": structure_name == self.default_structure_name,
                "claims": sorted(structure_config.get("claims", {})),
                "description": structure_config.get("description", ""),
            })
        return structures_list

    def _resolve_structure_config(self, requested_name: Optional[str]) -> dict:
        if not requested_name:
            requested_name = self.default_structure_name

        if requested_name not in self.available_structures:
            available_names = list(self.available_structures.keys())
            raise UsageError(f"Structure '{requested_name}' not found. Available: {available_names}")
        return self.available_structures[requested_name]

    def resolve(self, requested_name: Optional[str] = None) -> GammaSemiring:
        """Build the named structure. Tables are taken as given, valid or not."""
        structure_config = self._resolve_structure_config(requested_name)
        document = {"format_version": FORMAT_VERSION}
        document.update({key: structure_config.get(key) for key in STRUCTURE_FIELDS})
        if document["assoc_mode"] is None:
            document["assoc_mode"] = get_toolkit_settings().default_assoc_mode
        return from_document(document)

    def claims(self, requested_name: Optional[str] = None) -> dict[str, Any]:
        return dict(self._resolve_structure_config(requested_name).get("claims", {}))

    def audit_claims(self, requested_name: Optional[str] = None) -> list[AuditEntry]:
        """One entry per recorded claim: pass when the computed value matches."""
        s = self.resolve(requested_name)
        entries = []
        for claim_name, recorded in sorted(self.claims(requested_name).items()):
            check_id = f"claims.{claim_name}"
            if claim_name == "comaximal":
                computed = _comaximal(s, recorded)
            elif claim_name in CLAIM_CHECKS:
                computed = CLAIM_CHECKS[claim_name](s)
            else:
                logger.warning(f"Unknown claim '{claim_name}' on {requested_name}")
                entries.append(AuditEntry(check_id, AuditStatus.VACUOUS, detail="unknown claim"))
                continue

            expected = True if claim_name == "comaximal" else recorded
            witness = {"recorded": recorded, "computed": computed}
            entry = collect(check_id, [(witness, computed == expected)])
            if entry.status is AuditStatus.PASS:
                entry = AuditEntry(check_id, AuditStatus.PASS, witness=witness)
            entries.append(entry)
        return entries
