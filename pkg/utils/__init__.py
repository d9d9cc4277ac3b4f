"""
Utility modules for the verification toolkit.

This package contains the configuration, the case base class and factory,
report models and the suite runners.
"""

from utils.base_case import BaseCase, CaseConfigError, CaseError
from utils.case_factory import CaseFactory
from utils.config import settings
from utils.reports import CaseConfig, VerificationReport

__all__ = [
    "BaseCase",
    "CaseConfig",
    "CaseConfigError",
    "CaseError",
    "CaseFactory",
    "VerificationReport",
    "settings",
]
