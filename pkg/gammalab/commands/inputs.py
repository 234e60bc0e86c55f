"""Shared argument handling for commands."""

import json
import sys
from argparse import Namespace
from pathlib import Path
from typing import Optional

from gammalab.middleware.error_handler import InvalidStructure
from gammalab.services.axioms import ValidationReport
from gammalab.services.semiring import AssocMode, GammaSemiring
from gammalab.services.structure_io import STRUCTURE_SUFFIX, load_structure
from gammalab.services.structure_registry import StructureRegistryService


REGISTRY_PREFIX = "@"


def load_input(reference: str, arguments: Namespace) -> GammaSemiring:
    """
    A structure file path, or ``@name`` for a registry entry. ``--assoc-mode``
    replaces the mode stored with the tables.
    """
    if reference.startswith(REGISTRY_PREFIX):
        s = StructureRegistryService().resolve(reference[len(REGISTRY_PREFIX):])
    else:
        s = load_structure(reference)
    assoc_mode: Optional[str] = getattr(arguments, "assoc_mode", None)
    if assoc_mode:
        s = s.with_mode(AssocMode(assoc_mode))
    return s


def print_json(document) -> None:
    print(json.dumps(document, indent=2))


def emit(text: str, validation: ValidationReport) -> None:
    """Write ``text``; when the input failed validation it is still written, but the command exits 1."""
    if not validation.valid:
        raise InvalidStructure(validation, text)
    sys.stdout.write(text)


def emit_json(document, validation: ValidationReport) -> None:
    emit(json.dumps(document, indent=2) + "\n", validation)


def structure_files(directory: Path) -> list[Path]:
    """Structure files directly in ``directory`` or in its ``structures/`` subdirectory."""
    candidates = [directory, directory / "structures"]
    found = []
    for candidate in candidates:
        if candidate.is_dir():
            found.extend(path for path in candidate.iterdir() if path.name.endswith(STRUCTURE_SUFFIX))
    return sorted(found)
