import numpy as np
import pytest
from hypothesis import given, strategies as st

from regip.errors import DimensionMismatch, InertiaCorrectionFailure, NonFiniteEntry, SingularMatrix
from regip.kkt import SigmaState, assemble_kkt, factorize, inertia_corrected_factorize, solve


def eig_inertia(W, tol=1e-12):
    ev = np.linalg.eigvalsh(W)
    s = tol * max(1.0, np.max(np.abs(ev)))
    return int(np.sum(ev > s)), int(np.sum(ev < -s)), int(np.sum(np.abs(ev) <= s))


class TestAssemble:
    def test_one_by_one(self):
        sys = assemble_kkt([[1.0]], [1.0], [[1.0]], 0.1)
        np.testing.assert_array_equal(sys.W, [[2.0, 1.0], [1.0, -0.1]])

    def test_primal_shift(self):
        sys = assemble_kkt([[1.0]], [1.0], [[1.0]], 0.1, sigma=0.5)
        assert sys.W[0, 0] == 2.5

    def test_no_constraints(self):
        sys = assemble_kkt(np.eye(2), [0.5, 0.5], np.zeros((0, 2)), 1.0)
        assert sys.W.shape == (2, 2)
        assert sys.m == 0

    def test_errors(self):
        with pytest.raises(DimensionMismatch):
            assemble_kkt(np.eye(2), [1.0], np.ones((1, 2)), 1.0)
        with pytest.raises(DimensionMismatch):
            assemble_kkt(np.eye(2), [1.0, 1.0], np.ones((1, 3)), 1.0)
        with pytest.raises(NonFiniteEntry):
            assemble_kkt([[np.nan]], [1.0], [[1.0]], 1.0)
        with pytest.raises(ValueError):
            assemble_kkt([[1.0]], [1.0], [[1.0]], 0.0)
        with pytest.raises(ValueError):
            assemble_kkt([[1.0]], [1.0], [[1.0]], -1.0)

    def test_zero_rho_only_on_request(self):
        sys = assemble_kkt([[1.0]], [0.0], [[1.0]], 0.0, allow_zero_rho=True)
        assert sys.W[1, 1] == 0.0


class TestFactorize:
    def test_inertia_examples(self):
        assert factorize(assemble_kkt([[1.0]], [1.0], [[1.0]], 0.1)).inertia == (1, 1, 0)
        assert factorize(assemble_kkt(np.eye(2), [0, 0], [[1.0, 1.0]], 1e-8)).inertia == (2, 1, 0)

    def test_indefinite_hessian_reported(self):
        assert factorize(assemble_kkt([[-3.0]], [0.0], np.zeros((0, 1)), 1.0)).inertia == (0, 1, 0)

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            factorize(np.zeros((1, 1)))

    def test_tiny_rho_next_to_huge_hessian(self):
        # equilibration keeps the -rho pivot from being mistaken for zero
        fac = factorize(assemble_kkt([[1e20]], [0.0], [[1.0]], 1e-20))
        assert fac.inertia == (1, 1, 0)

    @given(st.integers(0, 2**31 - 1))
    def test_reconstruct(self, seed):
        rng = np.random.default_rng(seed)
        n, m = rng.integers(1, 7), rng.integers(0, 4)
        B = rng.normal(size=(n, n))
        sys = assemble_kkt(B @ B.T, rng.uniform(0, 10, n), rng.normal(size=(m, n)), 10.0 ** rng.uniform(-8, 0))
        fac = factorize(sys)
        assert np.linalg.norm(fac.reconstruct() - sys.W) <= 1e-10 * (1 + np.linalg.norm(sys.W))


class TestSolve:
    def test_example(self):
        fac = factorize(assemble_kkt(np.eye(2), [0, 0], [[1.0, 2.0]], 1.0))
        sol = solve(fac, [1.0, 2.0, 0.0])
        np.testing.assert_allclose(sol[:2], [1 / 6, 2 / 6])
        # y = (x1 + 2 x2) / rho
        np.testing.assert_allclose(sol[2], 5 / 6)

    def test_dimension(self):
        fac = factorize(assemble_kkt([[1.0]], [1.0], [[1.0]], 0.1))
        with pytest.raises(DimensionMismatch):
            solve(fac, [1.0])

    @given(st.integers(0, 2**31 - 1))
    def test_residual_bound(self, seed):
        rng = np.random.default_rng(seed)
        n, m = rng.integers(1, 8), rng.integers(0, 5)
        B = rng.normal(size=(n, n))
        sys = assemble_kkt(B @ B.T + 1e-3 * np.eye(n), rng.uniform(0, 1, n), rng.normal(size=(m, n)), 1e-6)
        rhs = rng.normal(size=n + m)
        sol = solve(factorize(sys), rhs)
        assert np.linalg.norm(sys.W @ sol - rhs) <= 1e-8 * (1 + np.linalg.norm(rhs))


class TestInertiaCorrection:
    def test_positive_definite_needs_no_shift(self):
        fac, sigma = inertia_corrected_factorize(np.eye(2), [0, 0], [[1.0, 1.0]], 1e-6)
        assert sigma == 0.0
        assert fac.inertia == (2, 1, 0)

    def test_negative_curvature(self):
        # trials 0, 1e-4, ..., 1 fail (1 is singular); 10 is the first success
        state = SigmaState()
        fac, sigma = inertia_corrected_factorize([[-1.0]], [0.0], np.zeros((0, 1)), 1.0, state)
        assert sigma == 10.0
        assert state.start == pytest.approx(10 / 3)

    def test_warm_start(self):
        state = SigmaState()
        inertia_corrected_factorize([[-1.0]], [0.0], np.zeros((0, 1)), 1.0, state)
        state.trials = 0
        _, sigma = inertia_corrected_factorize([[-1.0]], [0.0], np.zeros((0, 1)), 1.0, state)
        assert sigma == pytest.approx(10 / 3)
        assert state.trials == 1

    def test_zero_hessian_with_constraint(self):
        H, J, rho = [[0.0]], [[1.0]], 1e-6
        _, sigma = inertia_corrected_factorize(H, [0.0], J, rho)
        W = assemble_kkt(H, [0.0], J, rho, sigma).W
        assert eig_inertia(W) == (1, 1, 0)
        assert sigma == 0.0

    def test_failure(self):
        with pytest.raises(InertiaCorrectionFailure):
            inertia_corrected_factorize([[-1e21]], [0.0], np.zeros((0, 1)), 1.0)

    @given(st.integers(0, 2**31 - 1))
    def test_smallest_trial_matches_eigen_oracle(self, seed):
        rng = np.random.default_rng(seed)
        n, m = rng.integers(1, 6), rng.integers(0, 4)
        H = rng.normal(size=(n, n))
        H = H + H.T
        J = rng.normal(size=(m, n))
        rho = 10.0 ** rng.uniform(-8, -1)
        _, sigma = inertia_corrected_factorize(H, np.zeros(n), J, rho)
        trials = [0.0] + [1e-4 * 10.0**k for k in range(25)]
        want = next(s for s in trials if eig_inertia(assemble_kkt(H, np.zeros(n), J, rho, s).W) == (n, m, 0))
        # both tests are floating point; allow a disagreement only at a near-singular boundary trial
        if sigma != want:
            W = assemble_kkt(H, np.zeros(n), J, rho, min(sigma, want)).W
            assert np.min(np.abs(np.linalg.eigvalsh(W))) <= 1e-8 * np.max(np.abs(W))


@given(st.integers(0, 2**31 - 1))
def test_quasi_definite_inertia(seed):
    # H positive definite and rho > 0 always give (n, m, 0) with no shift
    rng = np.random.default_rng(seed)
    n, m = rng.integers(1, 9), rng.integers(0, 6)
    B = rng.normal(size=(n, n))
    H = B @ B.T + 0.1 * np.eye(n)
    fac, sigma = inertia_corrected_factorize(H, rng.uniform(0, 5, n), rng.normal(size=(m, n)), 10.0 ** rng.uniform(-8, 0))
    assert sigma == 0.0
    assert fac.inertia == (n, m, 0)
