import numpy as np
import pytest

from regip import baselines, kkt, outer
from regip.baselines import BaselineConfig, bcl_solve, plain_ip_solve
from regip.outer import RegipConfig, Status, regip_solve
from regip.problems import get_problem, list_problems

# regular problems whose reduced Hessian is well conditioned at the solution
AGREEMENT_EXCLUDED = {"HS9"}


def test_config_validation():
    with pytest.raises(ValueError):
        BaselineConfig(eps=0.0)
    with pytest.raises(ValueError):
        BaselineConfig(mu_shrink=1.0)


@pytest.mark.parametrize("solve", [plain_ip_solve, bcl_solve])
def test_qp1(solve):
    r = solve(get_problem("QP1").problem, BaselineConfig(eps=1e-8))
    assert r.status is Status.OPTIMAL
    np.testing.assert_allclose(r.x, [0.5, 0.5], atol=1e-6)


def test_solver_names():
    p = get_problem("QP1").problem
    assert plain_ip_solve(p).solver == "ip"
    assert bcl_solve(p).solver == "bcl"


@pytest.mark.parametrize("name", ["DEGEN1", "INFEAS1"])
def test_plain_ip_fails_without_constraint_qualification(name):
    r = plain_ip_solve(get_problem(name).problem, BaselineConfig(eps=1e-6))
    assert r.status is not Status.OPTIMAL


def test_bcl_reports_infeasibility():
    r = bcl_solve(get_problem("INFEAS1").problem, BaselineConfig(eps=1e-5))
    assert r.status is Status.INFEASIBLE


def test_shared_components():
    # the baselines reuse the same residuals, barrier, linear algebra and updates
    assert baselines.kkt_residuals is outer.kkt_residuals
    assert baselines.inertia_corrected_factorize is kkt.inertia_corrected_factorize
    assert baselines.update_penalty is outer.update_penalty
    assert baselines.solve_subproblem is outer.solve_subproblem


@pytest.mark.parametrize("name", [n for n in list_problems({"regular"}) if n not in AGREEMENT_EXCLUDED])
def test_plain_ip_agrees_with_regip(name):
    eps = 1e-5
    p = get_problem(name).problem
    a = regip_solve(p, RegipConfig(eps=eps))
    b = plain_ip_solve(p, BaselineConfig(eps=eps))
    if not (a.solved and b.solved):
        pytest.skip(f"{name}: regip {a.status.value}, ip {b.status.value}")
    assert np.linalg.norm(a.x - b.x, np.inf) <= 10 * eps
