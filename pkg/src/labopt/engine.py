"""Leader-Advocate-Believer (LAB) population engine.

A society of ``num_groups * group_size`` individuals is split into
groups.  After ranking, the best member of each group is its leader,
the second best its advocate, and the rest are believers.  Groups are
then ordered globally so that ``groups[0]`` holds the global leader.

Each iteration every individual moves to a fresh convex combination of
role-specific anchors:

* leader:   global leader, own advocate, own believer mean
* advocate: own leader, own believer mean
* believer: own leader, own advocate

Weights are redrawn independently for every individual on every
iteration.  All moves are computed from the iteration-start snapshot
and applied synchronously, after which both rankings are rebuilt.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .problem import (
    ConfigError,
    Problem,
    Sense,
    clamp_to_bounds,
    is_better,
    oriented,
)

# Weight sums are checked against this; normalization error is a few ulp.
_WEIGHT_SUM_TOL = 1e-12


class Role(Enum):
    LEADER = "leader"
    ADVOCATE = "advocate"
    BELIEVER = "believer"


@dataclass(frozen=True)
class RoleWeights:
    """Convex-combination weights for one position update.

    Three weights for a leader move, two for advocate and believer
    moves.  They are strictly decreasing and sum to one.
    """

    w1: float
    w2: float
    w3: float | None = None

    def __post_init__(self) -> None:
        ws = [self.w1, self.w2] + ([self.w3] if self.w3 is not None else [])
        if any(not 0.0 < w < 1.0 for w in ws):
            raise ConfigError(f"weights must lie strictly inside (0, 1): {ws}")
        if any(a <= b for a, b in zip(ws, ws[1:])):
            raise ConfigError(f"weights must be strictly decreasing: {ws}")
        if abs(sum(ws) - 1.0) > _WEIGHT_SUM_TOL:
            raise ConfigError(f"weights must sum to 1: {ws}")


@dataclass
class Individual:
    """A candidate solution with a stable identity.

    The id never changes; it breaks fitness ties deterministically.
    """

    id: int
    position: np.ndarray
    fitness: float


@dataclass
class Group:
    """One group, kept sorted best-first after each ranking pass."""

    members: list[Individual]
    group_index: int = 0

    @property
    def leader(self) -> Individual:
        return self.members[0]

    @property
    def advocate(self) -> Individual:
        return self.members[1]

    @property
    def believers(self) -> list[Individual]:
        return self.members[2:]


@dataclass
class Society:
    """The whole population plus its run state."""

    groups: list[Group]
    iteration: int
    rng_seed: int
    rng: np.random.Generator
    n_evaluations: int

    @property
    def global_best(self) -> Individual:
        """The global leader, i.e. the leader of the first-ranked group."""
        return self.groups[0].leader

    def individuals(self) -> list[Individual]:
        return [ind for g in self.groups for ind in g.members]


@dataclass(frozen=True)
class LabConfig:
    """Engine parameters.

    ``group_size`` counts the leader and advocate, so it must be at
    least 3 to leave one believer.  ``stall_epsilon = 0`` disables the
    stall criterion (no improvement is ever strictly below zero).
    """

    num_groups: int = 4
    group_size: int = 5
    max_iterations: int = 100
    stall_window: int = 20
    stall_epsilon: float = 1e-6
    greedy_acceptance: bool = False
    seed: int = 0

    def validate(self) -> None:
        if self.num_groups < 2:
            raise ConfigError(f"num_groups must be >= 2, got {self.num_groups}")
        if self.group_size < 3:
            raise ConfigError(f"group_size must be >= 3, got {self.group_size}")
        if self.max_iterations < 1:
            raise ConfigError(
                f"max_iterations must be >= 1, got {self.max_iterations}"
            )
        if self.stall_window < 1:
            raise ConfigError(f"stall_window must be >= 1, got {self.stall_window}")
        if not self.stall_epsilon >= 0.0:
            raise ConfigError(
                f"stall_epsilon must be >= 0, got {self.stall_epsilon}"
            )

    @property
    def population(self) -> int:
        return self.num_groups * self.group_size


@dataclass(frozen=True)
class IterationRecord:
    """State summary recorded after initialization and after each step."""

    iteration: int
    global_best: float
    leaders: tuple[float, ...]
    best_so_far: float
    elapsed_seconds: float


@dataclass(frozen=True)
class RunTrace:
    """Everything a single optimization run produced.

    ``global_best`` in the records is the fitness of the current global
    leader and may regress when ``greedy_acceptance`` is off;
    ``best_so_far`` never regresses.  Fitness values are reported in
    the user's sense (maximization values are not negated).
    """

    problem: str
    algorithm: str
    sense: Sense
    seed: int
    records: tuple[IterationRecord, ...]
    best_fitness: float
    best_position: tuple[float, ...]
    n_evaluations: int
    termination: str

    @property
    def iterations(self) -> int:
        return self.records[-1].iteration


TERMINATION_MAX_ITERATIONS = "max_iterations"
TERMINATION_STALLED = "stalled"
TERMINATION_BUDGET = "budget_exhausted"


def sample_weights(role: Role, rng: np.random.Generator) -> RoleWeights:
    """Draw fresh update weights for one individual.

    Leader moves use three uniforms normalized to unit sum and sorted
    in decreasing order; ties trigger a redraw.  Advocate and believer
    moves draw ``u`` from (0.5, 1) and use ``(u, 1 - u)``, which is
    decreasing and sums to one exactly.
    """
    if role is Role.LEADER:
        while True:
            draws = rng.uniform(0.0, 1.0, size=3)
            if np.any(draws <= 0.0):
                continue
            w = np.sort(draws / draws.sum())[::-1]
            if w[0] > w[1] > w[2] > 0.0:
                return RoleWeights(float(w[0]), float(w[1]), float(w[2]))
    while True:
        u = float(rng.uniform(0.5, 1.0))
        if 0.5 < u < 1.0:
            return RoleWeights(u, 1.0 - u)


def believer_mean(group: Group) -> np.ndarray:
    """Arithmetic mean position of the group's believers only."""
    return np.mean([b.position for b in group.believers], axis=0)


def update_leader(
    group: Group,
    global_leader: Individual,
    weights: RoleWeights,
    problem: Problem,
) -> np.ndarray:
    """Candidate position for a group leader.

    For the first-ranked group the global leader is the leader itself,
    so the move anchors on its own position.
    """
    if weights.w3 is None:
        raise ConfigError("leader update requires three weights")
    mix = (
        weights.w1 * global_leader.position
        + weights.w2 * group.advocate.position
        + weights.w3 * believer_mean(group)
    )
    return clamp_to_bounds(mix, problem)


def update_advocate(group: Group, weights: RoleWeights, problem: Problem) -> np.ndarray:
    """Candidate position for a group's advocate."""
    mix = weights.w1 * group.leader.position + weights.w2 * believer_mean(group)
    return clamp_to_bounds(mix, problem)


def update_believer(group: Group, weights: RoleWeights, problem: Problem) -> np.ndarray:
    """Candidate position for one believer (same anchors for all of them)."""
    mix = weights.w1 * group.leader.position + weights.w2 * group.advocate.position
    return clamp_to_bounds(mix, problem)


def rank_group(group: Group, sense: Sense) -> None:
    """Sort members best-first; equal fitness falls back to lower id."""
    group.members.sort(key=lambda ind: (oriented(ind.fitness, sense), ind.id))


def rank_global(society: Society, sense: Sense) -> None:
    """Order groups by leader quality and refresh their indices."""
    society.groups.sort(
        key=lambda g: (oriented(g.leader.fitness, sense), g.leader.id)
    )
    for pos, group in enumerate(society.groups):
        group.group_index = pos + 1


def initialize_society(problem: Problem, config: LabConfig, seed: int) -> Society:
    """Sample, evaluate, and rank the initial population.

    Individuals are drawn uniformly over the box and dealt into
    ``num_groups`` groups of ``group_size``; both ranking passes are
    applied before the society is returned.
    """
    config.validate()
    rng = np.random.default_rng(seed)
    pop = config.population
    positions = rng.uniform(problem.lower, problem.upper, size=(pop, problem.dim))
    individuals = [
        Individual(i, positions[i].copy(), problem.evaluate(positions[i]))
        for i in range(pop)
    ]
    groups = [
        Group(individuals[g * config.group_size : (g + 1) * config.group_size])
        for g in range(config.num_groups)
    ]
    society = Society(
        groups=groups,
        iteration=0,
        rng_seed=seed,
        rng=rng,
        n_evaluations=pop,
    )
    for group in society.groups:
        rank_group(group, problem.sense)
    rank_global(society, problem.sense)
    return society


def step(society: Society, problem: Problem, config: LabConfig) -> Society:
    """Advance the society by one synchronous iteration.

    All candidate positions are computed from the current (unmutated)
    society, then evaluated and applied.  With greedy acceptance an
    individual keeps its old position unless the candidate is strictly
    better; otherwise candidates replace unconditionally.  Every
    individual is re-evaluated each iteration, so the evaluation count
    grows by the population size regardless of acceptance.
    """
    sense = problem.sense
    rng = society.rng
    global_leader = society.global_best

    proposals: list[tuple[Individual, np.ndarray]] = []
    for group in society.groups:
        proposals.append(
            (
                group.leader,
                update_leader(group, global_leader, sample_weights(Role.LEADER, rng), problem),
            )
        )
        proposals.append(
            (
                group.advocate,
                update_advocate(group, sample_weights(Role.ADVOCATE, rng), problem),
            )
        )
        for believer in group.believers:
            proposals.append(
                (
                    believer,
                    update_believer(group, sample_weights(Role.BELIEVER, rng), problem),
                )
            )

    evaluated = [(ind, pos, problem.evaluate(pos)) for ind, pos in proposals]
    society.n_evaluations += len(evaluated)

    for ind, pos, fit in evaluated:
        if config.greedy_acceptance and not is_better(fit, ind.fitness, sense):
            continue
        ind.position = pos
        ind.fitness = fit

    for group in society.groups:
        rank_group(group, sense)
    rank_global(society, sense)
    society.iteration += 1
    return society


def _improved_less_than(series: list[float], window: int, epsilon: float) -> bool:
    # series holds oriented best-so-far values, one per iteration, index 0
    # being the initial population.  The window is only compared against
    # post-step iterations so initialization luck does not count.
    t = len(series) - 1
    if t - window < 1:
        return False
    return (series[t - window] - series[t]) < epsilon


def run(problem: Problem, config: LabConfig | None = None) -> RunTrace:
    """Run LAB on a problem and return its trace.

    The run stops at ``max_iterations``, or earlier when neither the
    global best nor any group leader has improved by at least
    ``stall_epsilon`` over the last ``stall_window`` iterations.

    Parameters
    ----------
    problem : Problem
        Objective, box, and sense.
    config : LabConfig, optional
        Engine parameters; defaults are used when omitted.

    Returns
    -------
    RunTrace
        Per-iteration records plus the final best point, evaluation
        count, and termination reason.
    """
    if config is None:
        config = LabConfig()
    config.validate()
    sense = problem.sense
    start = time.perf_counter()

    society = initialize_society(problem, config, config.seed)

    best_ind = society.global_best
    best_fitness = best_ind.fitness
    best_position = best_ind.position.copy()

    # Oriented best-so-far series: one global, one per group slot.
    global_series = [oriented(best_fitness, sense)]
    leader_series: list[list[float]] = [
        [oriented(g.leader.fitness, sense)] for g in society.groups
    ]

    def snapshot() -> IterationRecord:
        return IterationRecord(
            iteration=society.iteration,
            global_best=society.global_best.fitness,
            leaders=tuple(g.leader.fitness for g in society.groups),
            best_so_far=best_fitness,
            elapsed_seconds=time.perf_counter() - start,
        )

    records = [snapshot()]
    termination = TERMINATION_MAX_ITERATIONS
    while society.iteration < config.max_iterations:
        step(society, problem, config)

        current = society.global_best
        if is_better(current.fitness, best_fitness, sense):
            best_fitness = current.fitness
            best_position = current.position.copy()

        global_series.append(oriented(best_fitness, sense))
        for slot, group in enumerate(society.groups):
            prev = leader_series[slot][-1]
            leader_series[slot].append(
                min(prev, oriented(group.leader.fitness, sense))
            )
        records.append(snapshot())

        if society.iteration >= config.max_iterations:
            termination = TERMINATION_MAX_ITERATIONS
            break
        stalled = _improved_less_than(
            global_series, config.stall_window, config.stall_epsilon
        ) and all(
            _improved_less_than(series, config.stall_window, config.stall_epsilon)
            for series in leader_series
        )
        if stalled:
            termination = TERMINATION_STALLED
            break

    return RunTrace(
        problem=problem.name,
        algorithm="lab",
        sense=sense,
        seed=config.seed,
        records=tuple(records),
        best_fitness=best_fitness,
        best_position=tuple(float(v) for v in best_position),
        n_evaluations=society.n_evaluations,
        termination=termination,
    )
