import json
import math

import umdalo


def test_version():
    assert umdalo.__version__ == "1.0.0"


def test_run_is_deterministic_and_consistent():
    a = umdalo.run(n=16, mu=10, lambda_=60, master_seed=3)
    b = umdalo.run(n=16, mu=10, lambda_=60, master_seed=3)
    assert a == b
    assert a["evaluations_used"] == a["iterations_completed"] * 60
    assert len(a["final_frequencies"]) == 16
    for p in a["final_frequencies"]:
        assert 1 / 16 - 1e-12 <= p <= 1 - 1 / 16 + 1e-12
    c = umdalo.run(n=16, mu=10, lambda_=60, master_seed=4)
    assert c != a  # a different seed gives a different trajectory


def test_run_finds_the_optimum_at_small_sizes():
    out = umdalo.run(n=8, mu=5, lambda_=40, master_seed=1)
    assert out["found_optimum"]
    assert out["first_optimum_eval_index"] is not None
    assert out["first_optimum_eval_index"] <= out["evaluations_used"]
    # First-hit evaluation lies inside the final iteration's batch.
    assert out["first_optimum_eval_index"] > (out["iterations_completed"] - 1) * 40


def test_trace_has_one_record_per_iteration():
    out = umdalo.run(n=8, mu=5, lambda_=40, master_seed=1, collect_trace=True)
    assert len(out["trace"]) == out["iterations_completed"]
    last = out["trace"][-1]
    assert last["optimum_sampled"] == out["found_optimum"]
    assert last["best_fitness"] == 8  # the optimum's fitness at n = 8


def test_bound_report_reproduces_known_values():
    rep = umdalo.bound_report(n=100, mu=10000, lambda_=10000)
    assert rep["xi"] == 66
    assert rep["lower_bound_iterations"] == 17
    assert rep["lower_bound_evaluations"] == 170000
    assert rep["upper_bound_defined"] is False
    assert rep["upper_bound_iterations"] is None
    assert umdalo.d_upper(0.5, 348, 1) == 2
    assert umdalo.d_lower(0.5, 16, 1) == 11
    assert umdalo.xi(100, 10000) == 66
    assert umdalo.upper_bound_iterations(100, 2) == 47
    assert umdalo.lower_bound_iterations(100, 66, 1) == 17


def test_tail_and_drift_bounds():
    assert math.isclose(
        umdalo.chernoff_lower_tail(50.0, 0.5), math.exp(-6.25), rel_tol=1e-12
    )
    assert math.isclose(
        umdalo.chernoff_upper_tail(50.0, 0.5), math.exp(-25 / 6), rel_tol=1e-12
    )
    assert math.isclose(
        umdalo.drift_band_exit_bound(0.25, 6400, 100), 2 * math.exp(-2), rel_tol=1e-12
    )
    assert umdalo.drift_band_exit_bound(0.25, 10, 1000) == 1.0


def test_evaluate_kinds():
    assert umdalo.evaluate("leading_ones", "110101") == 2
    assert umdalo.evaluate("one_max", "110101") == 4
    assert umdalo.evaluate("neutral_suffix:2", "111100") == 4
    assert umdalo.evaluate("leading_ones", "1111") == 4


def test_sweep_summary_roundtrip():
    config = {
        "master_seed": 9,
        "replications": 2,
        "grid": [{"n": 10, "mu": {"value": 8}, "lambda": {"value": 32}}],
    }
    summary = umdalo.sweep(config)
    assert summary["master_seed"] == 9
    assert len(summary["points"]) == 1
    point = summary["points"][0]
    assert point["n"] == 10
    assert point["mu"] == 8
    assert point["lambda"] == 32
    # Bitwise determinism across worker counts, through the string API.
    text = json.dumps(config)
    assert umdalo.sweep_summary(text, 1) == umdalo.sweep_summary(text, 4)


def test_invalid_arguments_raise():
    try:
        umdalo.run(n=1, mu=1, lambda_=1)
    except ValueError:
        pass
    else:
        raise AssertionError("n = 1 must be rejected")
    try:
        umdalo.evaluate("leading_ones", "12")
    except ValueError:
        pass
    else:
        raise AssertionError("non-binary strings must be rejected")
