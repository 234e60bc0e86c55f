"""Audit records shared by the theorem checks."""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterable

import numpy as np

from gammalab.services.metrics_service import metrics_service

logger = logging.getLogger(__name__)


class AuditStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"
    WITHIN_BOUND = "within_bound"


@dataclass(frozen=True)
class AuditEntry:
    """One checked claim. A failing entry always carries its counterexample."""

    check_id: str
    status: AuditStatus
    witness: Any = None
    detail: str = ""

    def __post_init__(self):
        if self.status is AuditStatus.FAIL and self.witness is None:
            raise ValueError(f"Failing audit {self.check_id} needs a witness")

    @property
    def failed(self) -> bool:
        return self.status is AuditStatus.FAIL

    def to_dict(self) -> dict:
        payload = {"id": self.check_id, "status": self.status.value}
        if self.witness is not None:
            payload["witness"] = to_jsonable(self.witness)
        if self.detail:
            payload["detail"] = self.detail
        return payload


def collect(check_id: str, outcomes: Iterable[tuple[Any, bool]], detail: str = "") -> AuditEntry:
    """
    Fold ``(witness, holds)`` pairs into a single entry.

    Stops at the first pair that does not hold. No pairs at all means the
    claim had nothing to quantify over.
    """
    checked = 0
    for witness, holds in outcomes:
        checked += 1
        if not holds:
            logger.warning(f"Audit {check_id} failed on {to_jsonable(witness)}")
            metrics_service.record_audit_failure(check_id.split(".")[0])
            return AuditEntry(check_id, AuditStatus.FAIL, witness=witness, detail=detail)
    if checked == 0:
        return AuditEntry(check_id, AuditStatus.VACUOUS, detail=detail)
    logger.debug(f"Audit {check_id} passed over {checked} cases")
    return AuditEntry(check_id, AuditStatus.PASS, detail=detail)


def to_jsonable(value: Any) -> Any:
    """Convert witnesses (subsets, enums, numpy scalars, nested tuples) to plain JSON values."""
    if hasattr(value, "to_jsonable"):
        return value.to_jsonable()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (frozenset, set)):
        return sorted(to_jsonable(item) for item in value)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return value


def summarize(entries: Iterable[AuditEntry]) -> dict[str, int]:
    """Count entries per status, every status present."""
    counts = {status.value: 0 for status in AuditStatus}
    for entry in entries:
        counts[entry.status.value] += 1
    return counts
