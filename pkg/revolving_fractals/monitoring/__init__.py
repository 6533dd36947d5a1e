"""Logging setup and instrumentation."""

from .logger import LogContext, get_logger, log_performance, setup_logging

__all__ = [
    "setup_logging",
    "get_logger",
    "log_performance",
    "LogContext",
]
