"""Pydantic settings for the gammalab toolkit."""

from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ToolkitSettings(BaseSettings):
    """Central configuration for enumeration, analysis and audits."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging & Monitoring
    log_level: str = Field(default="INFO", description="Logging level")
    metrics_enabled: bool = Field(default=True, description="Enable Prometheus metrics")

    # Validation
    max_violations: int = Field(
        default=16,
        ge=1,
        description="Violations reported per axiom before truncation"
    )
    default_assoc_mode: Literal["paper_ends", "dornte"] = Field(
        default="paper_ends",
        description="Associativity windows checked when a file does not say otherwise"
    )

    # Capacity limits
    ideal_scan_limit: int = Field(
        default=16,
        description="Largest carrier whose subsets are scanned for ideals"
    )
    free_cell_limit: int = Field(
        default=20,
        description="Largest number of free operation cells the enumerator accepts"
    )
    additive_carrier_limit: int = Field(
        default=4,
        description="Largest carrier for which addition tables are enumerated"
    )
    canonical_carrier_limit: int = Field(
        default=8,
        description="Largest carrier for the factorial canonical-form scan"
    )
    module_carrier_limit: int = Field(
        default=3,
        description="Largest module carrier the module enumerator attempts"
    )
    zariski_exhaustive_limit: int = Field(
        default=4,
        description="Largest carrier for which closed-set audits scan all subset pairs"
    )

    # Report defaults
    report_module_slot: int = Field(default=2, description="Module slot used by analyze")
    report_module_carrier: int = Field(
        default=2,
        description="Module carrier bound used by analyze"
    )

    # Registry
    structures_registry_path: str = Field(
        default="",
        description="YAML registry of named structures (empty: bundled config)"
    )


@lru_cache()
def get_toolkit_settings() -> ToolkitSettings:
    """Get cached toolkit settings instance."""
    return ToolkitSettings()
