import math

import numpy as np
import pytest

from labopt.baselines import (
    ALGORITHM_PSO,
    ALGORITHM_RANDOM,
    ALGORITHM_SA,
    BASELINE_ALGORITHMS,
    BaselineConfig,
    run_baseline,
)
from labopt.engine import TERMINATION_BUDGET
from labopt.problem import ConfigError, Problem, Sense


def sphere(dim: int = 2, half_width: float = 5.0) -> Problem:
    return Problem(
        name=f"sphere{dim}",
        dim=dim,
        lower=np.full(dim, -half_width),
        upper=np.full(dim, half_width),
        sense=Sense.MINIMIZE,
        objective=lambda x: float(np.sum(x * x)),
    )


def counting_sphere(dim: int = 2) -> tuple[Problem, list[int]]:
    calls = [0]

    def objective(x):
        calls[0] += 1
        return float(np.sum(x * x))

    return (
        Problem(
            name="counted",
            dim=dim,
            lower=np.full(dim, -5.0),
            upper=np.full(dim, 5.0),
            sense=Sense.MINIMIZE,
            objective=objective,
        ),
        calls,
    )


def strip_timing(trace):
    return (
        trace.problem,
        trace.algorithm,
        trace.sense,
        trace.seed,
        tuple(
            (r.iteration, r.global_best, r.leaders, r.best_so_far)
            for r in trace.records
        ),
        trace.best_fitness,
        trace.best_position,
        trace.n_evaluations,
        trace.termination,
    )


@pytest.mark.parametrize("algorithm", BASELINE_ALGORITHMS)
@pytest.mark.parametrize("budget", [1, 20, 21, 37, 2020])
def test_budget_spent_exactly(algorithm, budget):
    problem, calls = counting_sphere()
    trace = run_baseline(problem, BaselineConfig(algorithm=algorithm, budget=budget, seed=3))
    assert calls[0] == budget
    assert trace.n_evaluations == budget
    assert trace.termination == TERMINATION_BUDGET


@pytest.mark.parametrize("algorithm", BASELINE_ALGORITHMS)
def test_trace_contract(algorithm):
    problem = sphere()
    trace = run_baseline(problem, BaselineConfig(algorithm=algorithm, budget=107, seed=9))
    assert trace.problem == "sphere2"
    assert trace.algorithm == algorithm
    assert trace.seed == 9
    assert [r.iteration for r in trace.records] == list(range(len(trace.records)))
    assert all(r.leaders == () for r in trace.records)
    assert trace.records[-1].best_so_far == trace.best_fitness
    assert problem.contains(np.array(trace.best_position))
    assert trace.best_fitness == problem.evaluate(np.array(trace.best_position))


@pytest.mark.parametrize("algorithm", BASELINE_ALGORITHMS)
def test_best_so_far_is_monotone_both_senses(algorithm):
    for sense in (Sense.MINIMIZE, Sense.MAXIMIZE):
        problem = Problem(
            name="wiggly",
            dim=3,
            lower=np.full(3, -4.0),
            upper=np.full(3, 4.0),
            sense=sense,
            objective=lambda x: float(np.sum(np.sin(3 * x) + 0.1 * x * x)),
        )
        trace = run_baseline(problem, BaselineConfig(algorithm=algorithm, budget=200, seed=5))
        series = [r.best_so_far for r in trace.records]
        if sense is Sense.MAXIMIZE:
            assert all(b >= a for a, b in zip(series, series[1:]))
        else:
            assert all(b <= a for a, b in zip(series, series[1:]))
        assert trace.best_fitness == series[-1]


def test_record_count_matches_batching():
    problem = sphere()
    for budget, batch in [(100, 20), (101, 20), (7, 3), (1, 20)]:
        for algorithm in (ALGORITHM_RANDOM, ALGORITHM_SA):
            trace = run_baseline(
                problem,
                BaselineConfig(algorithm=algorithm, budget=budget, batch_size=batch),
            )
            assert len(trace.records) == math.ceil(budget / batch)
    for budget, swarm, want in [(2020, 20, 101), (37, 20, 2), (20, 20, 1), (1, 20, 1)]:
        trace = run_baseline(
            problem, BaselineConfig(algorithm=ALGORITHM_PSO, budget=budget, pso_swarm=swarm)
        )
        assert len(trace.records) == want


@pytest.mark.parametrize("algorithm", BASELINE_ALGORITHMS)
def test_same_seed_reproduces_different_seed_differs(algorithm):
    problem = sphere()
    config = BaselineConfig(algorithm=algorithm, budget=120, seed=21)
    a = run_baseline(problem, config)
    b = run_baseline(problem, config)
    assert strip_timing(a) == strip_timing(b)
    c = run_baseline(problem, BaselineConfig(algorithm=algorithm, budget=120, seed=22))
    assert strip_timing(a) != strip_timing(c)


def test_sa_flat_calibration_falls_back_to_unit_temperature():
    flat = Problem(
        name="flat",
        dim=2,
        lower=np.full(2, -1.0),
        upper=np.full(2, 1.0),
        sense=Sense.MINIMIZE,
        objective=lambda x: 7.0,
    )
    auto = run_baseline(flat, BaselineConfig(algorithm=ALGORITHM_SA, budget=90, seed=4))
    explicit = run_baseline(
        flat,
        BaselineConfig(
            algorithm=ALGORITHM_SA, budget=90, seed=4, sa_initial_temperature=1.0
        ),
    )
    # identical rng stream, so the fallback must reproduce T0=1.0 exactly
    assert strip_timing(auto) == strip_timing(explicit)
    assert auto.best_fitness == 7.0


def test_sa_temperature_changes_acceptance_path():
    problem = Problem(
        name="rugged",
        dim=2,
        lower=np.full(2, -3.0),
        upper=np.full(2, 3.0),
        sense=Sense.MINIMIZE,
        objective=lambda x: float(np.sum(x * x) + np.sin(9 * x[0]) + np.cos(7 * x[1])),
    )
    hot = run_baseline(
        problem,
        BaselineConfig(algorithm=ALGORITHM_SA, budget=300, seed=8, sa_initial_temperature=1e6),
    )
    cold = run_baseline(
        problem,
        BaselineConfig(algorithm=ALGORITHM_SA, budget=300, seed=8, sa_initial_temperature=1e-9),
    )
    assert strip_timing(hot) != strip_timing(cold)


def test_pso_polishes_a_smooth_bowl():
    finals = []
    for seed in range(30):
        trace = run_baseline(
            sphere(), BaselineConfig(algorithm=ALGORITHM_PSO, budget=2020, seed=seed)
        )
        finals.append(trace.best_fitness)
    assert float(np.median(finals)) <= 1e-3


def test_small_budget_shrinks_swarm():
    problem, calls = counting_sphere()
    trace = run_baseline(problem, BaselineConfig(algorithm=ALGORITHM_PSO, budget=7, seed=0))
    assert calls[0] == 7
    assert len(trace.records) == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(algorithm="hill_climb", budget=10),
        dict(algorithm=ALGORITHM_RANDOM, budget=0),
        dict(algorithm=ALGORITHM_RANDOM, budget=10, batch_size=0),
        dict(algorithm=ALGORITHM_SA, budget=10, sa_initial_temperature=0.0),
        dict(algorithm=ALGORITHM_SA, budget=10, sa_cooling=1.0),
        dict(algorithm=ALGORITHM_SA, budget=10, sa_cooling=0.0),
        dict(algorithm=ALGORITHM_SA, budget=10, sa_step_fraction=0.0),
        dict(algorithm=ALGORITHM_PSO, budget=10, pso_swarm=1),
    ],
)
def test_invalid_configs_are_rejected(kwargs):
    with pytest.raises(ConfigError):
        run_baseline(sphere(), BaselineConfig(**kwargs))
