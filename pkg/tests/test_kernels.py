"""Tests for the 1D TV prox kernels: compiled / pure-Python parity,
closed-form cases, dual-certificate checks and adversarial fuzzing.

The certificate used throughout: with p = cumsum(x - z), optimality of
x for gamma * TV + 0.5 * ||. - z||^2 is equivalent to |p_i| <= gamma
for all i, p_{n-1} = 0, and p_i = gamma * sign(x_{i+1} - x_i) wherever
x jumps.  Jumps are detected at 1e-12 so one-ulp plateau splits are
not mistaken for sign constraints.
"""

import pathlib

import numpy as np
import pytest

from spheretv import TvProxConfig, chain_graph, tv_prox_graph_dual
from spheretv.kernels import HAVE_COMPILED, active_kernel, tv1d, tv1d_batch

DATA = pathlib.Path(__file__).parent / "data"
ORACLE_CFG = TvProxConfig(dual_max_iter=2000000, dual_tol=1e-12)


def certificate_violation(z, x, gamma):
    """Worst violation of the prox optimality certificate (see module docstring)."""
    p = np.cumsum(x - z)
    worst = abs(float(p[-1]))
    if len(p) > 1:
        worst = max(worst, float(np.max(np.abs(p[:-1]))) - gamma)
    steps = np.diff(x)
    jumps = np.abs(steps) > 1e-12
    if np.any(jumps):
        worst = max(
            worst, float(np.max(np.abs(p[:-1][jumps] - gamma * np.sign(steps[jumps]))))
        )
    return worst


def test_active_kernel_is_compiled():
    # The package is expected to be built with its extension in place;
    # losing it silently would invalidate the benchmark comparisons.
    assert HAVE_COMPILED
    assert active_kernel() == "compiled"


def test_two_point_closed_form():
    assert np.allclose(tv1d(np.array([0.0, 1.0]), 0.25), [0.25, 0.75], atol=1e-15)
    assert np.allclose(tv1d(np.array([0.0, 1.0]), 10.0), [0.5, 0.5], atol=1e-15)
    assert np.allclose(tv1d(np.array([3.0, -1.0]), 0.5), [2.5, -0.5], atol=1e-15)


def test_single_sample_and_constant_rows_are_fixed_points():
    z = np.array([2.5])
    assert np.array_equal(tv1d(z, 1.0), z)
    z = np.full(17, -0.75)
    assert np.array_equal(tv1d(z, 0.3), z)


def test_mean_is_preserved():
    rng = np.random.default_rng(21)
    for _ in range(20):
        z = rng.normal(0.0, 2.0, int(rng.integers(2, 120)))
        x = tv1d(z, float(rng.uniform(0.05, 4.0)))
        assert abs(np.sum(x) - np.sum(z)) <= 1e-9 * max(1.0, np.abs(z).sum())


def test_large_gamma_flattens_to_the_mean():
    rng = np.random.default_rng(22)
    z = rng.normal(0.0, 1.0, 40)
    x = tv1d(z, 1e6)
    assert np.allclose(x, np.mean(z), atol=1e-9)


def test_batch_shape_and_out_argument():
    rng = np.random.default_rng(23)
    z = rng.normal(0.0, 1.0, (5, 30))
    out = np.empty_like(z)
    ret = tv1d_batch(z, 0.4, out=out)
    assert ret is out
    assert np.array_equal(tv1d_batch(z, 0.4), out)


def test_input_validation():
    with pytest.raises(ValueError):
        tv1d(np.zeros((2, 2)), 1.0)
    with pytest.raises(ValueError):
        tv1d_batch(np.zeros(5), 1.0)
    with pytest.raises(ValueError):
        tv1d(np.zeros(5), 0.0)
    with pytest.raises(ValueError):
        tv1d(np.zeros(5), -1.0)


def _adversarial_rows(rng, n):
    """Input families that historically stressed the boundary handling."""
    gamma = float(rng.uniform(0.05, 6.0))
    kind = int(rng.integers(0, 5))
    if kind == 0:
        z = rng.normal(0.0, float(rng.uniform(0.2, 3.0)), n)
    elif kind == 1:
        # long plateaus with occasional level changes
        levels = np.repeat(rng.normal(0.0, 1.0, (n + 5) // 6), 6)[:n]
        z = levels + rng.normal(0.0, 1e-9, n)
    elif kind == 2:
        # random walk with steps of exactly +/- gamma, which parks the
        # running bounds exactly on the tube edges
        steps = gamma * (2.0 * rng.integers(0, 2, n) - 1.0)
        z = np.cumsum(steps)
    elif kind == 3:
        # piecewise constant with offsets of exactly gamma and 2*gamma
        base = rng.normal(0.0, 1.0)
        offs = rng.choice([-2.0 * gamma, -gamma, 0.0, gamma, 2.0 * gamma], n)
        z = base + offs
    else:
        z = np.round(rng.normal(0.0, 1.0, n), 1)
    return z, gamma


@pytest.mark.skipif(not HAVE_COMPILED, reason="extension not built")
def test_compiled_matches_python_bitwise():
    rng = np.random.default_rng(24)
    for trial in range(300):
        n = int(rng.integers(1, 90))
        z, gamma = _adversarial_rows(rng, n)
        a = tv1d(z, gamma, impl="compiled")
        b = tv1d(z, gamma, impl="python")
        assert np.array_equal(a, b), f"kernel mismatch at trial {trial}"


def test_certificate_on_fuzzed_inputs():
    rng = np.random.default_rng(25)
    for trial in range(300):
        n = int(rng.integers(1, 90))
        z, gamma = _adversarial_rows(rng, n)
        x = tv1d(z, gamma)
        worst = certificate_violation(z, x, gamma)
        assert worst <= 1e-9, f"certificate violated by {worst} at trial {trial}"


def test_fuzzed_inputs_match_dual_oracle():
    rng = np.random.default_rng(26)
    for trial in range(40):
        n = int(rng.integers(2, 40))
        z, gamma = _adversarial_rows(rng, n)
        x = tv1d(z, gamma)
        oracle = tv_prox_graph_dual(z, chain_graph(n), gamma, ORACLE_CFG)
        assert np.max(np.abs(x - oracle)) <= 1e-8, f"oracle mismatch at trial {trial}"


def test_regression_rows_from_solver_traces():
    """Inputs that once drove the boundary handler out of bounds.

    Two rows captured from image solves whose degenerate right-edge
    states (both running bounds collapsed, stale flush anchors) used to
    crash or corrupt the kernel.  They must match the dual oracle and
    the certificate, bitwise-identically on both implementations.
    """
    rows = np.load(DATA / "taut_string_regression_rows.npy")
    gammas = np.load(DATA / "taut_string_regression_gammas.npy")
    for z, gamma in zip(rows, gammas):
        gamma = float(gamma)
        x = tv1d(z, gamma, impl="python")
        if HAVE_COMPILED:
            assert np.array_equal(tv1d(z, gamma, impl="compiled"), x)
        assert certificate_violation(z, x, gamma) <= 1e-9
        oracle = tv_prox_graph_dual(z, chain_graph(len(z)), gamma, ORACLE_CFG)
        assert np.max(np.abs(x - oracle)) <= 1e-8


def test_explicit_impl_selection():
    z = np.linspace(-1.0, 1.0, 12)
    assert np.array_equal(tv1d(z, 0.2, impl="python"), tv1d(z, 0.2))
    with pytest.raises(ValueError):
        tv1d(z, 0.2, impl="fortran")
