import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import halving_closed_form_iterations
from unifix import (Box, BuiltinSpec, ContractionParams, InputError, OrbitTrace, PseudometricFamily,
                    SolveOptions, lift_single_valued, make_builtin, residual, scan, solve, step,
                    uniqueness_probe, verify_geometric_decay, verify_tail_bound)
from unifix.solver import DIVERGED, FIXED_POINT_FOUND, MAX_ITERATIONS_REACHED, rate_estimates

LINE = PseudometricFamily.absolute(1.0)
HALVING = lift_single_valued(lambda x: (x[0] / 2,), 1, "halving")
SELECTOR = make_builtin(BuiltinSpec("scaled_selector", ratios=(1 / 2, 1 / 3)))
IDENTITY = make_builtin(BuiltinSpec("identity"))
EXPANSION = make_builtin(BuiltinSpec("expansion", factor=2.0))
P = ContractionParams.uniform(0.6, 0.2, 0.5)


def halving_trace(x0=1.0, iterations=40):
    trace, _ = solve(HALVING, LINE, x0, SolveOptions(tolerance=1e-300, max_iterations=iterations))
    return trace


def test_step_examples():
    assert step(HALVING, LINE, 1.0) == (0.5,)
    assert step(SELECTOR, LINE, 6.0) == (3.0,)
    assert step(IDENTITY, LINE, 2.5) == (2.5,)


def test_residual_examples():
    assert residual(HALVING, LINE, 0.0) == [0.0]
    assert residual(HALVING, LINE, 1.0) == [0.5]
    assert residual(SELECTOR, LINE, 6.0) == [3.0]


def test_solve_halving():
    trace, rep = solve(HALVING, LINE, 1.0, SolveOptions(tolerance=1e-8))
    assert rep.status == FIXED_POINT_FOUND
    assert rep.iterations_used == halving_closed_form_iterations(1.0, 1e-8) == 26
    assert abs(rep.final_point[0]) <= 2e-8
    assert rep.final_point == (2.0 ** -26,)
    assert rep.final_residual == [2.0 ** -27]
    assert rep.rate_estimates[0] == pytest.approx(0.5, rel=1e-12)
    assert len(trace.step_distances) == len(trace) - 1 == 26


def test_solve_from_fixed_point():
    trace, rep = solve(HALVING, LINE, 0.0, SolveOptions())
    assert rep.status == FIXED_POINT_FOUND and rep.iterations_used == 0
    assert trace.points == [(0.0,)] and trace.step_distances == []
    assert rep.rate_estimates == [None]


def test_solve_expansion_diverges():
    trace, rep = solve(EXPANSION, LINE, 1.0, SolveOptions(divergence_guard=1e6))
    assert rep.status == DIVERGED
    assert trace.step_distances[-1][0] > 1e6
    assert all(s[0] <= 1e6 for s in trace.step_distances[:-1])
    assert trace.check_membership(EXPANSION)


def test_solve_default_guard_catches_expansion():
    _, rep = solve(EXPANSION, LINE, 1.0, SolveOptions(max_iterations=10_000))
    assert rep.status == DIVERGED


def test_solve_max_iterations():
    _, rep = solve(HALVING, LINE, 1.0, SolveOptions(tolerance=1e-8, max_iterations=5))
    assert rep.status == MAX_ITERATIONS_REACHED and rep.iterations_used == 5


def test_options_validation():
    for kw in ({"tolerance": 0}, {"max_iterations": 0}, {"divergence_guard": -1.0}):
        with pytest.raises(InputError):
            SolveOptions(**kw)


def test_two_branch_orbit():
    trace, rep = solve(SELECTOR, LINE, 6.0, SolveOptions(tolerance=1e-8))
    assert trace.points[1] == (3.0,)
    # residual |x|/2 <= tol first holds at x_29 = 6 * 2^-29
    assert rep.status == FIXED_POINT_FOUND and rep.final_point == (6 * 2.0 ** -29,)
    assert all(b[0] == a[0] / 2 for a, b in zip(trace.points, trace.points[1:]))
    assert trace.check_membership(SELECTOR)


def test_decay_examples():
    t = halving_trace()
    assert verify_geometric_decay(t, [0.7])
    res = verify_geometric_decay(t, [0.4])
    assert not res and res.first_failure["n"] == 1
    short = halving_trace(iterations=1)
    assert len(short) == 2
    assert verify_geometric_decay(short, [0.01])
    with pytest.raises(InputError):
        verify_geometric_decay(OrbitTrace([(0.0,)], [], [[0.0]]), [0.5])
    with pytest.raises(InputError):
        verify_geometric_decay(t, [1.0])


def test_tail_examples():
    t = halving_trace()
    assert verify_tail_bound(t, LINE, [0.5])
    res = verify_tail_bound(t, LINE, [0.26])
    assert not res
    # brute-force sweep: first failing pair in (n, m) order
    first = None
    for n in range(len(t)):
        bound = 0.26 ** n / 0.74 * 0.5
        for m in range(n + 1, len(t)):
            if abs(t.points[n][0] - t.points[m][0]) > bound + 1e-9:
                first = (n, m)
                break
        if first:
            break
    assert first is not None
    assert (res.first_failure["n"], res.first_failure["m"]) == first


def test_uniqueness_probe_examples():
    opts = SolveOptions(tolerance=1e-8)
    rep = uniqueness_probe(HALVING, LINE, P, [(-3.0,), (1.0,), (7.0,)], opts)
    assert rep.passed and all(s == FIXED_POINT_FOUND for s in rep.statuses)
    # closed forms: -3 * 2^-28, 2^-26, 7 * 2^-29
    assert rep.max_pair_distance == pytest.approx(2.0 ** -26 + 3 * 2.0 ** -28, rel=1e-12)
    assert rep.threshold == pytest.approx(2e-8 * (1 + 0.5 / 0.6))
    assert uniqueness_probe(HALVING, LINE, P, [(5.0,)], opts).passed
    ident = uniqueness_probe(IDENTITY, LINE, P, [(0.0,), (1.0,)], opts)
    assert not ident.passed and ident.limits == [(0.0,), (1.0,)]
    with pytest.raises(InputError):
        uniqueness_probe(HALVING, LINE, ContractionParams.uniform(0.5, 0.2, 0.5), [(1.0,), (2.0,)], opts)


@settings(max_examples=50, deadline=None)
@given(st.floats(-1, 1), st.floats(1e-12, 1e-2))
def test_termination_bound(x0, tol):
    _, rep = solve(HALVING, LINE, x0, SolveOptions(tolerance=tol))
    assert rep.status == FIXED_POINT_FOUND
    assert rep.iterations_used <= math.ceil(math.log2(1 / tol)) + 2


def test_monotone_steps_under_verified_condition():
    for F, abc in ((HALVING, (0.1, 0.2, 0.5)), (SELECTOR, (0.0, 0.2, 0.5))):
        params = ContractionParams.uniform(*abc)
        trace, _ = solve(F, LINE, 8.0, SolveOptions(tolerance=1e-10))
        lo = min(p[0] for p in trace.points)
        hi = max(p[0] for p in trace.points)
        assert scan(F, params, LINE, Box((lo - 1e-3,), (hi,)), 2000, 1).holds_on_sample
        k = params.k()[0]
        for s0, s1 in zip(trace.step_distances, trace.step_distances[1:]):
            assert s1[0] <= k * s0[0] + 1e-9


def test_solve_deterministic_and_scale_invariant_path():
    family = PseudometricFamily.from_specs(2, [
        {"kind": "abs", "coords": [0], "weights": [1.0]},
        {"kind": "euclidean", "coords": [0, 1], "weights": [1.0, 3.0]},
    ])
    F = make_builtin(BuiltinSpec("multi_affine", 2, branches=(([[0.5, 0.1], [0, 0.4]], [1, 0]), (0.25, [0, 1]))))
    opts = SolveOptions(tolerance=1e-9)
    t1, r1 = solve(F, family, (3.0, -4.0), opts)
    t2, r2 = solve(F, family, (3.0, -4.0), opts)
    assert t1 == t2 and r1 == r2
    t3, _ = solve(F, family.scaled(7.5), (3.0, -4.0), SolveOptions(tolerance=7.5e-9))
    assert t3.points[:len(t1)] == t1.points[:len(t3)]
    assert t1.check_membership(F)


def test_rate_estimate_exact_geometric():
    t = OrbitTrace([(0.0,)] * 5, [[8.0], [4.0], [2.0], [1.0]], [])
    assert rate_estimates(t)[0] == pytest.approx(0.5, rel=1e-12)
    assert rate_estimates(OrbitTrace([(0.0,)] * 2, [[1.0]], []))[0] is None


def test_csv_round_trip():
    trace, _ = solve(SELECTOR, LINE, 6.0, SolveOptions(tolerance=1e-8))
    text = trace.to_csv()
    assert text.splitlines()[0] == "n,x_0,step_d_0,res_d_0"
    back = OrbitTrace.from_csv(text)
    assert back == trace
    assert back.check_membership(SELECTOR) and back.check_step_distances(LINE)
