"""Configuration management."""

from .settings import DevelopmentSettings, ProductionSettings, Settings, get_settings

__all__ = ["Settings", "DevelopmentSettings", "ProductionSettings", "get_settings"]
