import numpy as np
import pytest
from pydantic import ValidationError

from weyldft.errors import LevelTooSmall
from weyldft.lattice.models import SignHom
from weyldft.lattice.rootdata import get_root_data
from weyldft.verify.models import CheckResult, CheckStatus, VerifyContext
from weyldft.verify.registry import CheckRegistry
from weyldft.verify.runner import VerificationRunner

DEFAULT_CHECKS = [
    "torus_partition",
    "congruence_equivalence",
    "rho_shift",
    "cardinality",
    "gram_diagonal",
    "hartley_gram",
    "plancherel",
    "roundtrip",
    "boundary_vanishing",
    "lambda_p_equals_q",
    "stabilizer_oracle",
    "exponential_orthogonality",
]


def context(label: str, sigma: str, M: int, **kwargs) -> VerifyContext:
    return VerifyContext(R=get_root_data(label), sigma=SignHom.parse(sigma), M=M, **kwargs)


def statuses(run):
    return {name: run.outcome(name).status for name in run.checks}


def test_registry_defaults():
    registry = CheckRegistry()
    assert registry.list_checks() == DEFAULT_CHECKS
    with pytest.raises(ValueError, match="not found"):
        registry.get("missing")


def test_registry_accepts_custom_checks():
    registry = CheckRegistry()
    registry.register("always", lambda ctx: CheckResult(passed=True, message="ok"))
    run = VerificationRunner(registry).run(context("A2", "1", 7), ["always"])
    assert run.status == CheckStatus.PASSED
    assert run.report()["checks"] == [{"name": "always", "status": "passed", "deviation": 0.0, "message": "ok"}]


@pytest.mark.parametrize("label, sigma, M", [("A2", "e", 7), ("G2", "1", 5), ("C2", "s", 5)])
def test_all_checks_pass(label, sigma, M):
    run = VerificationRunner().run(context(label, sigma, M))
    assert run.status == CheckStatus.PASSED, run.report()
    assert run.failed == []
    assert run.completed_at is not None


def test_brute_force_checks_skip_outside_their_range():
    run = VerificationRunner().run(context("A2", "1", 7), ["stabilizer_oracle", "exponential_orthogonality"])
    result = statuses(run)
    assert result["stabilizer_oracle"] == CheckStatus.SKIPPED
    assert result["exponential_orthogonality"] == CheckStatus.PASSED


def test_stabilizer_oracle_on_small_level():
    run = VerificationRunner().run(context("B3", "1", 3), ["stabilizer_oracle", "torus_partition"])
    assert run.status == CheckStatus.PASSED


def test_corrupted_epsilon_fails():
    run = VerificationRunner().run(context("A2", "1", 7, eps_offset=1), ["torus_partition", "cardinality"])
    assert run.status == CheckStatus.FAILED
    assert run.failed == ["torus_partition"]
    assert run.outcome("torus_partition").deviation == 12.0


def test_too_large_group_is_skipped():
    run = VerificationRunner().run(context("E7", "1", 2), ["gram_diagonal", "cardinality"])
    result = statuses(run)
    assert result["gram_diagonal"] == CheckStatus.SKIPPED
    assert result["cardinality"] == CheckStatus.PASSED
    assert run.status == CheckStatus.PASSED


def test_raising_check_is_recorded_as_failure():
    registry = CheckRegistry()

    def broken(ctx):
        raise ZeroDivisionError("boom")

    registry.register("broken", broken)
    run = VerificationRunner(registry).run(context("A2", "1", 7), ["broken"])
    assert run.status == CheckStatus.FAILED
    assert "boom" in run.outcome("broken").message


def test_unknown_check_fails_before_running():
    runner = VerificationRunner()
    with pytest.raises(ValueError):
        runner.run(context("A2", "1", 7), ["torus_partition", "missing"])
    assert runner.runs == {}


def test_runs_are_kept_and_logged():
    runner = VerificationRunner()
    run = runner.run(context("A2", "1", 7), ["torus_partition"])
    assert runner.get_run(run.run_id) is run
    assert [log.status for log in run.logs] == [CheckStatus.PENDING, CheckStatus.RUNNING, CheckStatus.PASSED]


def test_report_is_deterministic():
    first = VerificationRunner().run(context("A2", "e", 7, seed=4), ["plancherel", "cardinality"]).report()
    second = VerificationRunner().run(context("A2", "e", 7, seed=4), ["plancherel", "cardinality"]).report()
    assert first == second
    assert first["sigma"] == "e"
    assert set(first) == {"algebra", "sigma", "M", "status", "checks"}


@pytest.mark.parametrize("label, sigma, M", [("A2", "e", 3), ("G2", "e", 6), ("B3", "l", 2)])
def test_small_level_fails_before_running(label, sigma, M):
    runner = VerificationRunner()
    with pytest.raises(LevelTooSmall):
        runner.run(context(label, sigma, M))
    assert runner.runs == {}


def test_check_results_hold_plain_bools():
    ctx = context("A2", "e", 7)
    registry = CheckRegistry()
    for name in ["gram_diagonal", "plancherel", "roundtrip", "exponential_orthogonality"]:
        result = registry.get(name)(ctx)
        assert type(result.passed) is bool
    with pytest.raises(ValidationError):
        CheckResult(passed=np.float64(1.0) <= 2.0)


def test_run_store_is_capped():
    runner = VerificationRunner(max_runs=2)
    ids = [runner.run(context("A2", "1", 7), ["torus_partition"]).run_id for _ in range(3)]
    assert list(runner.runs) == ids[1:]
    assert runner.get_memory_stats()["runs"] == 2
    assert runner.cleanup(keep=1) == 1
    assert list(runner.runs) == ids[2:]
