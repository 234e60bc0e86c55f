"""Services module for gammalab."""

from gammalab.services.metrics_service import MetricsService, metrics_service
from gammalab.services.results_store import ResultsStoreService
from gammalab.services.semiring import AssocMode, GammaSemiring
from gammalab.services.structure_registry import StructureRegistryService

__all__ = [
    "AssocMode",
    "GammaSemiring",
    "MetricsService",
    "ResultsStoreService",
    "StructureRegistryService",
    "metrics_service"
]
