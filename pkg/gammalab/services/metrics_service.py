"""Prometheus metrics service for gammalab runs."""

import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Union

from prometheus_client import (
    Counter,
    Histogram,
    Gauge,
    generate_latest,
    write_to_textfile,
    CollectorRegistry
)

from gammalab.config.settings import get_toolkit_settings


logger = logging.getLogger(__name__)


class MetricsService:
    """Service for collecting and exporting Prometheus metrics."""

    def __init__(self):
        """Initialize metrics collectors."""
        self.toolkit_settings = get_toolkit_settings()
        self.registry = CollectorRegistry()

        self.validation_counter = Counter(
            "gammalab_validations_total",
            "Structures checked against the axioms",
            ["result"],
            registry=self.registry
        )

        self.search_nodes_counter = Counter(
            "gammalab_search_nodes_total",
            "Search tree nodes visited by the enumerator",
            ["search"],
            registry=self.registry
        )

        self.search_candidates_counter = Counter(
            "gammalab_search_candidates_total",
            "Cell assignments tried by the enumerator",
            ["search"],
            registry=self.registry
        )

        self.structures_found_counter = Counter(
            "gammalab_structures_found_total",
            "Complete structures emitted by a search",
            ["search"],
            registry=self.registry
        )

        self.audit_failure_counter = Counter(
            "gammalab_audit_failures_total",
            "Theorem audits that produced a counterexample",
            ["family"],
            registry=self.registry
        )

        self.operation_latency_histogram = Histogram(
            "gammalab_operation_seconds",
            "Wall time of library operations",
            ["operation"],
            buckets=(0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0),
            registry=self.registry
        )

        self.isomorphism_classes_gauge = Gauge(
            "gammalab_isomorphism_classes",
            "Classes produced by the last partition",
            registry=self.registry
        )

    def record_validation(self, valid: bool):
        if not self.toolkit_settings.metrics_enabled:
            return
        self.validation_counter.labels(result="valid" if valid else "invalid").inc()

    def record_search(self, search: str, nodes: int, candidates: int, found: int):
        """Record counters for a finished search."""
        if not self.toolkit_settings.metrics_enabled:
            return
        self.search_nodes_counter.labels(search=search).inc(nodes)
        self.search_candidates_counter.labels(search=search).inc(candidates)
        self.structures_found_counter.labels(search=search).inc(found)

    def record_audit_failure(self, family: str):
        if self.toolkit_settings.metrics_enabled:
            self.audit_failure_counter.labels(family=family).inc()

    def set_isomorphism_classes(self, count: int):
        if self.toolkit_settings.metrics_enabled:
            self.isomorphism_classes_gauge.set(count)

    @contextmanager
    def time_operation(self, operation: str) -> Iterator[None]:
        started = time.perf_counter()
        try:
            yield
        finally:
            if self.toolkit_settings.metrics_enabled:
                self.operation_latency_histogram.labels(operation=operation).observe(
                    time.perf_counter() - started
                )

    def render(self) -> bytes:
        return generate_latest(self.registry)

    def export_to_file(self, path: Union[str, Path]):
        """Write the registry in the Prometheus text format."""
        write_to_textfile(str(path), self.registry)
        logger.info(f"Wrote metrics to {path}")


# Global metrics instance
metrics_service = MetricsService()
