import copy

import numpy as np
import pytest

from labopt.engine import (
    Group,
    Individual,
    LabConfig,
    Role,
    RoleWeights,
    TERMINATION_MAX_ITERATIONS,
    TERMINATION_STALLED,
    believer_mean,
    initialize_society,
    rank_global,
    rank_group,
    run,
    sample_weights,
    step,
    update_advocate,
    update_believer,
    update_leader,
)
from labopt.problem import ConfigError, EvaluationError, Problem, Sense


def sphere(x):
    return float(np.sum(x**2))


def box_problem(dim=2, half=10.0, sense=Sense.MINIMIZE, objective=sphere, name="sq"):
    return Problem(
        name=name,
        dim=dim,
        lower=np.full(dim, -half),
        upper=np.full(dim, half),
        sense=sense,
        objective=objective,
    )


def one_d_problem():
    return box_problem(dim=1, half=100.0)


def make_group(positions, problem, start_id=0):
    members = [
        Individual(start_id + i, np.atleast_1d(np.asarray(p, dtype=float)),
                   problem.evaluate(p))
        for i, p in enumerate(positions)
    ]
    return Group(members)


# --- weights ---------------------------------------------------------------

def test_role_weights_validation():
    RoleWeights(0.5, 0.3, 0.2)
    RoleWeights(0.7, 0.3)
    with pytest.raises(ConfigError):
        RoleWeights(0.3, 0.5, 0.2)  # not decreasing
    with pytest.raises(ConfigError):
        RoleWeights(0.5, 0.5)  # not strictly decreasing
    with pytest.raises(ConfigError):
        RoleWeights(0.9, 0.3)  # sum != 1
    with pytest.raises(ConfigError):
        RoleWeights(1.2, -0.2)  # outside (0, 1)


def test_sample_weights_contract_holds_over_many_draws():
    rng = np.random.default_rng(7)
    n = 100_000
    w1s = np.empty(n)
    w2s = np.empty(n)
    w3s = np.empty(n)
    for i in range(n):
        w = sample_weights(Role.LEADER, rng)
        assert 0.0 < w.w3 < w.w2 < w.w1 < 1.0
        assert abs(w.w1 + w.w2 + w.w3 - 1.0) <= 1e-12
        w1s[i], w2s[i], w3s[i] = w.w1, w.w2, w.w3
    assert w1s.mean() > w2s.mean() > w3s.mean()

    for i in range(10_000):
        w = sample_weights(Role.BELIEVER, rng)
        assert 0.5 < w.w1 < 1.0
        assert w.w3 is None
        assert w.w1 + w.w2 == 1.0  # exact: 1 - u is exact for u in (0.5, 1)


# --- update equations ------------------------------------------------------

def test_leader_update_hand_value():
    p = one_d_problem()
    group = make_group([[5.0], [1.0], [2.0]], p)  # leader, advocate, believer
    global_leader = Individual(99, np.array([0.0]), 0.0)
    new = update_leader(group, global_leader, RoleWeights(0.5, 0.3, 0.2), p)
    assert new[0] == pytest.approx(0.7, abs=1e-15)


def test_leader_update_requires_three_weights():
    p = one_d_problem()
    group = make_group([[5.0], [1.0], [2.0]], p)
    with pytest.raises(ConfigError):
        update_leader(group, group.leader, RoleWeights(0.7, 0.3), p)


def test_advocate_update_hand_value():
    p = one_d_problem()
    group = make_group([[10.0], [7.0], [0.0]], p)
    new = update_advocate(group, RoleWeights(0.8, 0.2), p)
    assert new[0] == pytest.approx(8.0, abs=1e-15)


def test_believer_update_hand_value():
    p = one_d_problem()
    group = make_group([[2.0], [4.0], [9.0]], p)
    new = update_believer(group, RoleWeights(0.75, 0.25), p)
    assert new[0] == pytest.approx(2.5, abs=1e-15)


def test_believer_mean_is_over_believers_only():
    p = one_d_problem()
    group = make_group([[100.0], [50.0], [1.0], [2.0], [3.0]], p)
    assert believer_mean(group)[0] == pytest.approx(2.0, abs=1e-15)


def test_updates_clamp_to_box():
    p = box_problem(dim=1, half=1.0)
    group = make_group([[1.0], [1.0], [1.0]], p)
    outside = Individual(99, np.array([5.0]), 25.0)  # anchors normally feasible
    new = update_leader(group, outside, RoleWeights(0.9, 0.06, 0.04), p)
    assert new[0] == 1.0


# --- ranking ---------------------------------------------------------------

def test_rank_group_orders_by_fitness():
    p = one_d_problem()
    group = make_group([[3.0], [1.0], [2.0]], p)
    rank_group(group, Sense.MINIMIZE)
    assert [m.fitness for m in group.members] == [1.0, 4.0, 9.0]
    rank_group(group, Sense.MAXIMIZE)
    assert group.leader.fitness == 9.0


def test_rank_group_breaks_ties_by_lower_id():
    p = box_problem(dim=1, half=10.0, objective=lambda x: 1.0)
    group = make_group([[3.0], [1.0], [2.0]], p, start_id=10)
    rank_group(group, Sense.MINIMIZE)
    assert [m.id for m in group.members] == [10, 11, 12]


def test_rank_global_orders_groups_and_reindexes():
    p = one_d_problem()
    g1 = make_group([[5.0], [6.0], [7.0]], p, start_id=0)
    g2 = make_group([[2.0], [6.0], [7.0]], p, start_id=3)
    g3 = make_group([[7.0], [8.0], [9.0]], p, start_id=6)
    society = initialize_society(p, LabConfig(num_groups=2, group_size=3), 0)
    society.groups = [g1, g2, g3]
    rank_global(society, Sense.MINIMIZE)
    assert [g.leader.fitness for g in society.groups] == [4.0, 25.0, 49.0]
    assert [g.group_index for g in society.groups] == [1, 2, 3]
    assert society.global_best.fitness == 4.0


# --- initialization --------------------------------------------------------

def test_initialize_society_shape_and_accounting():
    p = box_problem(dim=3)
    cfg = LabConfig(num_groups=4, group_size=5)
    society = initialize_society(p, cfg, seed=11)
    inds = society.individuals()
    assert len(inds) == 20
    assert sorted(ind.id for ind in inds) == list(range(20))
    assert society.n_evaluations == 20
    assert society.iteration == 0
    for ind in inds:
        assert p.contains(ind.position)
        assert ind.fitness == p.evaluate(ind.position)
    # groups are ranked locally and globally
    for g in society.groups:
        fits = [m.fitness for m in g.members]
        assert fits == sorted(fits)
    leader_fits = [g.leader.fitness for g in society.groups]
    assert leader_fits == sorted(leader_fits)


def test_initialize_is_deterministic_per_seed():
    p = box_problem()
    a = initialize_society(p, LabConfig(), 5)
    b = initialize_society(p, LabConfig(), 5)
    for ia, ib in zip(a.individuals(), b.individuals()):
        assert np.array_equal(ia.position, ib.position)
    c = initialize_society(p, LabConfig(), 6)
    assert not all(
        np.array_equal(ia.position, ic.position)
        for ia, ic in zip(a.individuals(), c.individuals())
    )


# --- step semantics --------------------------------------------------------

def test_step_replays_documented_update_rules():
    """Recompute one full step by hand from the same generator state.

    Verifies the anchor choices, the weight construction, synchronous
    application, and unconditional replacement all at once: every
    individual's new position must match the hand-computed convex
    combination bitwise.
    """
    p = box_problem(dim=3)
    cfg = LabConfig(num_groups=3, group_size=4)
    society = initialize_society(p, cfg, seed=42)

    mirror = np.random.default_rng()
    mirror.bit_generator.state = society.rng.bit_generator.state

    expected: dict[int, np.ndarray] = {}
    gstar = society.global_best.position
    for group in society.groups:
        lead = group.leader.position
        adv = group.advocate.position
        bmean = np.mean([b.position for b in group.believers], axis=0)

        draws = mirror.uniform(0.0, 1.0, size=3)
        w = np.sort(draws / draws.sum())[::-1]
        expected[group.leader.id] = np.clip(
            w[0] * gstar + w[1] * adv + w[2] * bmean, p.lower, p.upper
        )
        u = float(mirror.uniform(0.5, 1.0))
        expected[group.advocate.id] = np.clip(
            u * lead + (1.0 - u) * bmean, p.lower, p.upper
        )
        for believer in group.believers:
            u = float(mirror.uniform(0.5, 1.0))
            expected[believer.id] = np.clip(
                u * lead + (1.0 - u) * adv, p.lower, p.upper
            )

    step(society, p, cfg)
    for ind in society.individuals():
        assert np.array_equal(ind.position, expected[ind.id]), ind.id


def test_step_counts_evaluations_and_increments_iteration():
    p = box_problem()
    cfg = LabConfig()
    society = initialize_society(p, cfg, 0)
    step(society, p, cfg)
    assert society.iteration == 1
    assert society.n_evaluations == 40
    step(society, p, cfg)
    assert society.n_evaluations == 60


def test_step_keeps_rankings_valid():
    p = box_problem()
    cfg = LabConfig()
    society = initialize_society(p, cfg, 3)
    for _ in range(5):
        step(society, p, cfg)
        for g in society.groups:
            fits = [m.fitness for m in g.members]
            assert fits == sorted(fits)
        leader_fits = [g.leader.fitness for g in society.groups]
        assert leader_fits == sorted(leader_fits)


def test_collapsed_society_is_a_fixed_point():
    p = box_problem()
    cfg = LabConfig()
    society = initialize_society(p, cfg, 0)
    spot = np.array([1.5, -2.5])
    for ind in society.individuals():
        ind.position = spot.copy()
        ind.fitness = p.evaluate(spot)
    for g in society.groups:
        rank_group(g, p.sense)
    rank_global(society, p.sense)
    step(society, p, cfg)
    # exact in real arithmetic; each w1*x + w2*x + w3*x re-rounds in floats
    for ind in society.individuals():
        assert np.allclose(ind.position, spot, rtol=1e-14, atol=0.0)


def test_greedy_acceptance_never_worsens_the_global_leader():
    p = box_problem()
    cfg = LabConfig(greedy_acceptance=True)
    society = initialize_society(p, cfg, 9)
    prev = society.global_best.fitness
    for _ in range(30):
        step(society, p, cfg)
        cur = society.global_best.fitness
        assert cur <= prev
        prev = cur


def test_nongreedy_global_leader_can_regress_but_runs_track_best():
    p = box_problem()
    trace = run(p, LabConfig(seed=2, stall_epsilon=0.0))
    bests = [r.global_best for r in trace.records]
    regressed = any(b2 > b1 for b1, b2 in zip(bests, bests[1:]))
    assert regressed  # unconditional replacement loses ground sometimes
    so_far = [r.best_so_far for r in trace.records]
    assert all(b2 <= b1 for b1, b2 in zip(so_far, so_far[1:]))
    assert trace.best_fitness == min(bests)


def test_step_propagates_evaluation_errors():
    calls = {"n": 0}

    def sometimes_nan(x):
        calls["n"] += 1
        return float("nan") if calls["n"] > 20 else sphere(x)

    p = box_problem(objective=sometimes_nan)
    cfg = LabConfig()
    society = initialize_society(p, cfg, 0)
    with pytest.raises(EvaluationError):
        step(society, p, cfg)


# --- config validation -----------------------------------------------------

@pytest.mark.parametrize(
    "kw",
    [
        {"num_groups": 1},
        {"group_size": 2},
        {"max_iterations": 0},
        {"stall_window": 0},
        {"stall_epsilon": -1e-9},
    ],
)
def test_invalid_configs_rejected(kw):
    with pytest.raises(ConfigError):
        LabConfig(**kw).validate()


def test_population_property():
    assert LabConfig().population == 20
    assert LabConfig(num_groups=3, group_size=7).population == 21


# --- run -------------------------------------------------------------------

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


def test_run_is_deterministic_apart_from_wall_clock():
    p = box_problem()
    a = run(p, LabConfig(seed=123))
    b = run(p, LabConfig(seed=123))
    assert strip_timing(a) == strip_timing(b)


def test_run_record_structure_and_accounting():
    p = box_problem()
    cfg = LabConfig(seed=1, stall_epsilon=0.0)
    trace = run(p, cfg)
    assert trace.records[0].iteration == 0
    assert trace.iterations == cfg.max_iterations
    assert len(trace.records) == cfg.max_iterations + 1
    assert trace.n_evaluations == 20 * (cfg.max_iterations + 1)
    assert trace.termination == TERMINATION_MAX_ITERATIONS
    assert all(len(r.leaders) == cfg.num_groups for r in trace.records)
    assert trace.algorithm == "lab"
    assert trace.sense is Sense.MINIMIZE
    assert p.contains(np.array(trace.best_position))
    assert trace.best_fitness == p.evaluate(np.array(trace.best_position))


def test_run_single_iteration_limit():
    p = box_problem()
    trace = run(p, LabConfig(seed=0, max_iterations=1))
    assert trace.iterations == 1
    assert trace.termination == TERMINATION_MAX_ITERATIONS


def test_constant_objective_stalls_after_window_plus_one():
    p = box_problem(objective=lambda x: 4.25)
    cfg = LabConfig(seed=0, stall_window=20)
    trace = run(p, cfg)
    assert trace.termination == TERMINATION_STALLED
    assert trace.iterations == cfg.stall_window + 1
    assert trace.best_fitness == 4.25


def test_stall_window_length_controls_stopping_time():
    p = box_problem(objective=lambda x: 0.0)
    trace = run(p, LabConfig(seed=0, stall_window=7))
    assert trace.iterations == 8
    assert trace.termination == TERMINATION_STALLED


def test_zero_epsilon_disables_stall():
    p = box_problem(objective=lambda x: 1.0)
    trace = run(p, LabConfig(seed=0, stall_epsilon=0.0))
    assert trace.termination == TERMINATION_MAX_ITERATIONS
    assert trace.iterations == 100


def test_maximize_runs_improve_in_the_right_direction():
    p = box_problem(sense=Sense.MAXIMIZE, objective=lambda x: -sphere(x))
    trace = run(p, LabConfig(seed=4))
    so_far = [r.best_so_far for r in trace.records]
    assert all(b2 >= b1 for b1, b2 in zip(so_far, so_far[1:]))
    assert trace.best_fitness >= so_far[0]
    assert trace.best_fitness <= 0.0


def test_run_stays_feasible_throughout():
    p = box_problem(dim=4, half=3.0)
    cfg = LabConfig(seed=8, stall_epsilon=0.0)
    society = initialize_society(p, cfg, 8)
    for _ in range(40):
        step(society, p, cfg)
        for ind in society.individuals():
            assert p.contains(ind.position)


def test_population_hull_never_expands():
    # every update is a convex combination of current members, so the
    # support function over any direction must be non-increasing
    p = box_problem(dim=3, half=5.0)
    cfg = LabConfig(seed=13, stall_epsilon=0.0)
    society = initialize_society(p, cfg, 13)
    rng = np.random.default_rng(99)
    dirs = rng.normal(size=(128, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    prev = np.array([ind.position for ind in society.individuals()])
    for _ in range(30):
        step(society, p, cfg)
        cur = np.array([ind.position for ind in society.individuals()])
        hi_prev = (dirs @ prev.T).max(axis=1)
        hi_cur = (dirs @ cur.T).max(axis=1)
        assert np.all(hi_cur <= hi_prev + 1e-9)
        prev = cur
