"""Exact and numerical verification of Selberg-type integrals and their relatives."""
from .report import ReportRecord, SuiteConfig, emit_report, run_suite
from .suites import REGISTRY

__all__ = ["REGISTRY", "ReportRecord", "SuiteConfig", "emit_report", "run_suite"]
__version__ = "0.1.0"
