"""
Verification suite

Named checks of the discretization identities and a runner that records a
log entry per check.
"""

from .models import CheckStatus, CheckResult, VerifyContext, ExecutionLog, VerificationRun
from .registry import CheckRegistry
from .runner import VerificationRunner

__all__ = [
    "CheckStatus",
    "CheckResult",
    "VerifyContext",
    "ExecutionLog",
    "VerificationRun",
    "CheckRegistry",
    "VerificationRunner",
]
