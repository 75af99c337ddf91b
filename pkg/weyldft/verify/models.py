from typing import Any, Dict, List, Optional
from pydantic import BaseModel, ConfigDict, StrictBool
from enum import Enum
import uuid
from datetime import datetime

from weyldft.lattice.models import RootSystemData, SignHom


class CheckStatus(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    PASSED = "passed"
    FAILED = "failed"
    SKIPPED = "skipped"


class VerifyContext(BaseModel):
    """Configuration one verification run is evaluated at"""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    R: RootSystemData
    sigma: SignHom
    M: int
    seed: int = 0
    samples: int = 3
    # Nonzero corrupts epsilon in the torus partition check
    eps_offset: int = 0
    allow_large: bool = False


class CheckResult(BaseModel):
    """Outcome of a single check"""
    passed: StrictBool
    deviation: float = 0.0
    message: str = ""
    skipped: bool = False


class ExecutionLog(BaseModel):
    """Log entry for one step of a verification run"""
    timestamp: datetime
    check_name: str
    status: CheckStatus
    message: str
    deviation: Optional[float] = None


class VerificationRun(BaseModel):
    """Runtime information for a verification run"""
    run_id: str
    algebra: str
    sigma: SignHom
    M: int
    status: CheckStatus
    checks: List[str]
    logs: List[ExecutionLog] = []
    created_at: datetime
    completed_at: Optional[datetime] = None

    @classmethod
    def create(cls, context: VerifyContext, checks: List[str]) -> "VerificationRun":
        return cls(
            run_id=str(uuid.uuid4()),
            algebra=context.R.label,
            sigma=context.sigma,
            M=context.M,
            status=CheckStatus.PENDING,
            checks=checks,
            created_at=datetime.now()
        )

    def outcome(self, check_name: str) -> Optional[ExecutionLog]:
        """Final log entry recorded for a check"""
        final = [log for log in self.logs if log.check_name == check_name and log.status != CheckStatus.RUNNING]
        return final[-1] if final else None

    @property
    def failed(self) -> List[str]:
        return [log.check_name for log in self.logs if log.status == CheckStatus.FAILED]

    def report(self) -> Dict[str, Any]:
        """Per-check outcome without ids or timestamps"""
        results = []
        for name in self.checks:
            log = self.outcome(name)
            results.append({
                "name": name,
                "status": log.status.value if log else CheckStatus.PENDING.value,
                "deviation": log.deviation if log else None,
                "message": log.message if log else "",
            })
        return {
            "algebra": self.algebra,
            "sigma": self.sigma.short_name,
            "M": self.M,
            "status": self.status.value,
            "checks": results,
        }
