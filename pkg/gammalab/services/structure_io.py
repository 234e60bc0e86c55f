"""Structure file format: canonical JSON text, parsing with positional diagnostics."""

import hashlib
import json
import logging
from pathlib import Path
from typing import Literal, Union

from pydantic import BaseModel, Field, ValidationError

from gammalab.services.errors import StructureParseError, UsageError
from gammalab.services.semiring import AssocMode, GammaSemiring


logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
STRUCTURE_SUFFIX = ".gsr.json"


class StructureDocument(BaseModel):
    """Schema of a structure file."""

    format_version: Literal[1]
    m: int = Field(ge=1)
    n: int = Field(ge=3)
    r: int = Field(ge=1)
    assoc_mode: AssocMode
    add: list[list[int]]
    mu: list[list[int]]


def to_document(s: GammaSemiring) -> dict:
    """Field order here is part of the canonical byte form."""
    return {
        "format_version": FORMAT_VERSION,
        "m": s.m,
        "n": s.n,
        "r": s.r,
        "assoc_mode": s.assoc_mode.value,
        "add": s.add.tolist(),
        "mu": s.mu.reshape(s.gamma_count, -1).tolist(),
    }


def serialize(s: GammaSemiring) -> str:
    return json.dumps(to_document(s), separators=(",", ":"))


def digest(s: GammaSemiring) -> str:
    """SHA-256 hex digest of the canonical serialization."""
    return hashlib.sha256(serialize(s).encode("utf-8")).hexdigest()


def from_document(payload: dict) -> GammaSemiring:
    try:
        document = StructureDocument.model_validate(payload)
    except ValidationError as error:
        first = error.errors()[0]
        path = ".".join(str(part) for part in first["loc"])
        raise StructureParseError(f"field '{path}': {first['msg']}")

    try:
        return GammaSemiring(
            m=document.m,
            n=document.n,
            r=document.r,
            add=document.add,
            mu=document.mu,
            assoc_mode=document.assoc_mode,
        )
    except UsageError as error:
        raise StructureParseError(str(error))


def parse(text: str) -> GammaSemiring:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as error:
        raise StructureParseError(error.msg, line=error.lineno, column=error.colno)
    if not isinstance(payload, dict):
        raise StructureParseError("structure file must hold a JSON object")
    return from_document(payload)


def load_structure(path: Union[str, Path]) -> GammaSemiring:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Structure file not found: {path}")
    logger.debug(f"Loading structure from {path}")
    return parse(path.read_text(encoding="utf-8"))
