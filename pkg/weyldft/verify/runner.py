from typing import Any, Dict, List, Optional
from datetime import datetime
import logging

from weyldft.config import get_settings
from weyldft.errors import GroupTooLarge, LevelTooSmall
from weyldft.lattice.rootdata import generalized_coxeter
from weyldft.verify.models import CheckStatus, ExecutionLog, VerificationRun, VerifyContext
from weyldft.verify.registry import CheckRegistry

logger = logging.getLogger(__name__)


class VerificationRunner:
    """Runs registered checks in order and records one log entry per step"""

    def __init__(self, registry: Optional[CheckRegistry] = None, max_runs: Optional[int] = None):
        self.registry = registry or CheckRegistry()
        self.max_runs = max_runs or get_settings().max_runs
        self.runs: Dict[str, VerificationRun] = {}

    def get_run(self, run_id: str) -> Optional[VerificationRun]:
        return self.runs.get(run_id)

    def run(self, context: VerifyContext, checks: Optional[List[str]] = None) -> VerificationRun:
        names = list(checks) if checks else self.registry.list_checks()
        # Unknown names and levels at or below m^sigma fail before anything runs
        functions = [(name, self.registry.get(name)) for name in names]
        bound = generalized_coxeter(context.R, context.sigma)
        if context.M <= bound:
            raise LevelTooSmall(context.M, bound)

        run = VerificationRun.create(context, names)
        self._store(run)
        run.status = CheckStatus.RUNNING
        for name in names:
            self._add_log(run, name, CheckStatus.PENDING, f"Queued check {name}")

        for name, check in functions:
            self._add_log(run, name, CheckStatus.RUNNING, f"Running check {name}")
            try:
                result = check(context)
            except GroupTooLarge as e:
                self._add_log(run, name, CheckStatus.SKIPPED, f"Check {name} skipped: {e}")
                continue
            except Exception as e:
                self._add_log(run, name, CheckStatus.FAILED, f"Check {name} raised: {e}")
                logger.warning(f"Check {name} on {run.algebra} M={run.M} raised: {e}")
                continue

            if result.skipped:
                status = CheckStatus.SKIPPED
            elif result.passed:
                status = CheckStatus.PASSED
            else:
                status = CheckStatus.FAILED
                logger.warning(f"Check {name} on {run.algebra} M={run.M} failed: {result.message}")
            self._add_log(run, name, status, result.message, result.deviation)

        run.status = CheckStatus.FAILED if run.failed else CheckStatus.PASSED
        run.completed_at = datetime.now()
        logger.info(
            f"Verification {run.run_id} of {run.algebra} sigma={context.sigma.short_name} M={run.M}: "
            f"{run.status.value} ({len(run.failed)} of {len(names)} failed)"
        )
        return run

    def _add_log(self, run: VerificationRun, check_name: str, status: CheckStatus, message: str,
                 deviation: Optional[float] = None) -> None:
        run.logs.append(ExecutionLog(
            timestamp=datetime.now(),
            check_name=check_name,
            status=status,
            message=message,
            deviation=deviation
        ))

    def _store(self, run: VerificationRun) -> None:
        self.runs[run.run_id] = run
        while len(self.runs) > self.max_runs:
            oldest = next(iter(self.runs))
            del self.runs[oldest]
            logger.debug(f"Evicted verification run {oldest}")

    def cleanup(self, keep: int = 0) -> int:
        """Drop all but the newest `keep` runs, returning how many were removed"""
        stale = list(self.runs)[:max(len(self.runs) - keep, 0)]
        for run_id in stale:
            del self.runs[run_id]
        logger.info(f"Removed {len(stale)} verification runs, {len(self.runs)} kept")
        return len(stale)

    def get_memory_stats(self) -> Dict[str, Any]:
        return {
            "runs": len(self.runs),
            "max_runs": self.max_runs,
            "checks": len(self.registry.checks),
            "total_logs": sum(len(run.logs) for run in self.runs.values()),
        }
