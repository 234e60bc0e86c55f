"""Configuration module for gammalab."""

from gammalab.config.settings import ToolkitSettings, get_toolkit_settings

__all__ = ["ToolkitSettings", "get_toolkit_settings"]
