"""Results store - structure files, report files and the digest index of an output directory."""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Optional, Union

from gammalab.services.semiring import GammaSemiring
from gammalab.services.structure_io import STRUCTURE_SUFFIX, digest, load_structure, serialize


logger = logging.getLogger(__name__)

REPORT_SUFFIX = ".report.json"
INDEX_FILE = "index.json"


def _atomic_write(path: Path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename over ``path``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8") as temporary_file:
            temporary_file.write(text)
        os.replace(temporary, path)
    except BaseException:
        Path(temporary).unlink(missing_ok=True)
        raise


class ResultsStoreService:
    """Service for reading and writing enumeration results under one directory."""

    def __init__(self, directory: Union[str, Path]):
        self.directory = Path(directory)
        self.structures_directory = self.directory / "structures"
        self.reports_directory = self.directory / "reports"
        self.index_path = self.directory / INDEX_FILE

    def structure_path(self, structure_digest: str) -> Path:
        return self.structures_directory / f"{structure_digest}{STRUCTURE_SUFFIX}"

    def report_path(self, structure_digest: str) -> Path:
        return self.reports_directory / f"{structure_digest}{REPORT_SUFFIX}"

    def write_structure(self, s: GammaSemiring) -> str:
        """Store ``s`` under its digest and return the digest."""
        structure_digest = digest(s)
        _atomic_write(self.structure_path(structure_digest), serialize(s) + "\n")
        logger.debug(f"Stored structure {structure_digest}")
        return structure_digest

    def write_report(self, report: dict) -> Path:
        path = self.report_path(report["structure_digest"])
        _atomic_write(path, json.dumps(report, indent=2) + "\n")
        return path

    def stored_digests(self) -> list[str]:
        if not self.structures_directory.exists():
            return []
        return sorted(
            path.name[: -len(STRUCTURE_SUFFIX)]
            for path in self.structures_directory.iterdir()
            if path.name.endswith(STRUCTURE_SUFFIX)
        )

    def load_structure(self, structure_digest: str) -> GammaSemiring:
        return load_structure(self.structure_path(structure_digest))

    def load_report(self, structure_digest: str) -> Optional[dict]:
        path = self.report_path(structure_digest)
        if not path.exists():
            return None
        with open(path, "r", encoding="utf-8") as report_file:
            return json.load(report_file)

    def _index_entry(self, structure_digest: str) -> dict:
        report = self.load_report(structure_digest)
        if report is not None:
            return dict(report["summary"])
        s = self.load_structure(structure_digest)
        return {"m": s.m, "n": s.n, "r": s.r, "valid": None, "symmetric": None,
                "J_zero": None, "spectrum_size": None}

    def rebuild_index(self) -> dict:
        """Rescan the stored structures and replace ``index.json`` in one rename."""
        index = {
            "structures": {
                structure_digest: self._index_entry(structure_digest)
                for structure_digest in self.stored_digests()
            }
        }
        _atomic_write(self.index_path, json.dumps(index, indent=2, sort_keys=True) + "\n")
        logger.info(f"Index rebuilt at {self.index_path} with {len(index['structures'])} entries")
        return index

    def load_index(self) -> dict:
        if not self.index_path.exists():
            return {"structures": {}}
        with open(self.index_path, "r", encoding="utf-8") as index_file:
            return json.load(index_file)
