"""Tests for the exact-rounding certification machinery.

brute_force_binary is itself verified against a direct itertools
enumeration before being trusted as the reference elsewhere.
"""

import itertools

import numpy as np
import pytest

from spheretv import (
    ResourceLimitError,
    Signal,
    SolverConfig,
    admm_solve,
    brute_force_binary,
    chain_graph,
    coarea_check,
    original_objective,
    relaxed_objective,
    verify_tightness,
)
from spheretv.synth import Rng, add_gaussian, gen_barcode
from spheretv.tightness import averaged_relaxed_objective


def itertools_optimum(y, graph, lam):
    """Independent exhaustive search, first-lexicographic tie break."""
    n = y.num_vertices
    best_val = np.inf
    best = None
    for pattern in itertools.product((-1.0, 1.0), repeat=n):
        s = Signal(np.array([pattern]))
        val = original_objective(s, y, graph, lam)
        if val < best_val - 1e-15:
            best_val = val
            best = pattern
    return np.array(best), best_val


def test_brute_force_matches_itertools_enumeration():
    rng = np.random.default_rng(31)
    for _ in range(15):
        n = int(rng.integers(2, 10))
        g = chain_graph(n)
        y = Signal(rng.normal(0.0, 1.0, (1, n)))
        lam = float(rng.uniform(0.1, 2.0))
        sig, val = brute_force_binary(y, g, lam)
        ref_pattern, ref_val = itertools_optimum(y, g, lam)
        assert val == pytest.approx(ref_val, abs=1e-10)
        assert np.array_equal(sig.values[0], ref_pattern)


def test_brute_force_tie_break_is_lexicographic():
    # all-zero data makes every constant pattern optimal; the all-minus
    # pattern is lexicographically smallest and must win
    y = Signal(np.zeros((1, 6)))
    sig, _ = brute_force_binary(y, chain_graph(6), 1.0)
    assert np.array_equal(sig.values[0], -np.ones(6))


def test_brute_force_guards():
    g = chain_graph(3)
    with pytest.raises(ValueError):
        brute_force_binary(Signal(np.zeros((2, 3))), g, 1.0)
    with pytest.raises(ValueError):
        brute_force_binary(Signal(np.zeros((1, 3))), g, 0.0)
    with pytest.raises(ResourceLimitError):
        brute_force_binary(Signal(np.zeros((1, 25))), chain_graph(25), 1.0)


def test_coarea_identity_exact_and_guarded():
    rng = np.random.default_rng(32)
    for _ in range(100):
        a, b = rng.uniform(-1.0, 1.0, 2)
        lhs, rhs = coarea_check(a, b)
        assert lhs == rhs
    assert coarea_check(-1.0, 1.0) == (2.0, 2.0)
    assert coarea_check(0.25, 0.25) == (0.0, 0.0)
    with pytest.raises(ValueError):
        coarea_check(1.5, 0.0)


def test_averaging_identity_on_ball_feasible_signals():
    rng = np.random.default_rng(33)
    g = chain_graph(8)
    for _ in range(20):
        x = Signal(rng.uniform(-1.0, 1.0, (1, 8)))
        y = Signal(rng.normal(0.0, 1.0, (1, 8)))
        lam = float(rng.uniform(0.2, 2.0))
        lhs = relaxed_objective(x, y, g, lam)
        rhs = averaged_relaxed_objective(x, y, g, lam)
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_verify_tightness_full_report():
    rng = Rng(34).derive(0)
    truth = gen_barcode(10, 1, rng)
    noisy = add_gaussian(truth, 0.7, rng)
    g = chain_graph(10)
    cfg = SolverConfig(lam=1.1, rho=0.1, tol_residual=1e-9, tol_sphere=1e-16)
    solved, _ = admm_solve(noisy, g, cfg)
    report = verify_tightness(noisy, g, 1.1, solved, etas=(0.5, -0.5, 0.5))
    assert report.attained
    assert report.gap <= 1e-7
    # duplicate levels are folded, zero always comes first
    assert report.eta_used == (0.0, 0.5, -0.5)
    assert len(report.eta_values) == 3
    assert report.best_binary_value == min(report.eta_values)
    assert report.relaxed_value == relaxed_objective(solved, noisy, g, 1.1)


def test_verify_tightness_requires_ball_feasible_input():
    g = chain_graph(3)
    y = Signal(np.zeros((1, 3)))
    bad = Signal(np.array([[2.0, 0.0, 0.0]]))
    with pytest.raises(ValueError):
        verify_tightness(y, g, 1.0, bad)
