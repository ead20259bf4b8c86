import numpy as np
import pytest

from uavsched.eat import build_schedule
from uavsched.pso import (
    PsoConfig,
    fitness,
    generate_initial_swarm,
    run_pso,
    update_velocity,
    velocity_cap,
)
from uavsched.sequences import apply_swaps, is_feasible_sequence

from conftest import inspect, make_instance

WORKED_LOCAL = [1, 2, 4, 6, 5, 8, 3, 7, 10, 9, 11, 12]
WORKED_GLOBAL = [2, 6, 1, 4, 3, 5, 7, 8, 10, 9, 11, 12]
WORKED_PARTICLE = [1, 2, 4, 6, 5, 8, 7, 3, 10, 9, 12, 11]
WORKED_V0 = [(6, 7), (10, 11)]


class ScriptedRng:
    """Stand-in for a Generator: fixed uniforms, fixed subset choices."""

    def __init__(self, uniforms, selections=()):
        self._uniforms = iter(uniforms)
        self._selections = iter(selections)

    def random(self):
        return next(self._uniforms)

    def choice(self, n, size, replace):
        assert not replace and size <= n
        got = np.asarray(next(self._selections))
        assert len(got) == size
        return got


class TestConfig:
    def test_defaults(self):
        cfg = PsoConfig()
        assert (cfg.c1, cfg.c2, cfg.swarm_size, cfg.max_iterations,
                cfg.convergence_window) == (1.0, 2.0, 40, 40, 10)

    def test_swarm_floor(self):
        with pytest.raises(ValueError):
            PsoConfig(swarm_size=4)

    def test_negative_factor_rejected(self):
        with pytest.raises(ValueError):
            PsoConfig(c1=-0.1)


class TestVelocityCap:
    def test_bands(self):
        assert velocity_cap(12) == 2
        assert velocity_cap(20) == 2
        assert velocity_cap(21) == 10
        assert velocity_cap(50) == 10
        assert velocity_cap(51) == 30
        assert velocity_cap(100) == 30
        assert velocity_cap(250) == 30


class TestFitness:
    def test_equals_schedule_makespan(self, lab):
        seq = [3, 2, 1, 4, 6, 5, 7]
        assert fitness(seq, lab) == build_schedule(lab, seq).makespan()

    def test_memo_caches(self, lab):
        memo = {}
        a = fitness([3, 2, 1], lab, memo)
        assert memo == {(3, 2, 1): a}
        assert fitness([3, 2, 1], lab, memo) == a


class TestUpdateVelocity:
    def test_worked_example(self):
        # Documented update: U1=0.2 keeps no cognitive pairs (0.2*2
        # rounds to 0), U2=0.4 keeps 5 of the 6 social pairs; the
        # sixth, (10,11), is the one left unselected.
        rng = ScriptedRng(uniforms=[0.2, 0.4], selections=[[0, 1, 2, 3, 4]])
        v1 = update_velocity(WORKED_V0, WORKED_PARTICLE, WORKED_LOCAL,
                             WORKED_GLOBAL, c1=1.0, c2=2.0, rng=rng)
        assert v1 == [(6, 7), (10, 11), (0, 1), (1, 3), (2, 3), (4, 7),
                      (5, 7)]
        assert apply_swaps(WORKED_PARTICLE, v1) == \
            [2, 6, 1, 4, 7, 5, 3, 8, 10, 9, 11, 12]

    def test_zero_proportions_keep_velocity(self):
        rng = ScriptedRng(uniforms=[0.0, 0.0])
        v1 = update_velocity(WORKED_V0, WORKED_PARTICLE, WORKED_LOCAL,
                             WORKED_GLOBAL, c1=1.0, c2=2.0, rng=rng)
        assert v1 == WORKED_V0

    def test_converged_bests_keep_velocity(self):
        rng = ScriptedRng(uniforms=[0.9, 0.9])
        seq = list(range(1, 13))
        v1 = update_velocity([(2, 5)], seq, seq, seq, c1=1.0, c2=2.0,
                             rng=rng)
        assert v1 == [(2, 5)]

    def test_duplicate_pairs_discarded(self):
        # Full social absorption: (10,11) is already carried over from
        # the old velocity, so only five new pairs land.
        rng = ScriptedRng(uniforms=[0.0, 0.5],
                          selections=[[0, 1, 2, 3, 4, 5]])
        v1 = update_velocity([(10, 11)], WORKED_PARTICLE, WORKED_LOCAL,
                             WORKED_GLOBAL, c1=1.0, c2=2.0, rng=rng)
        assert v1 == [(10, 11), (0, 1), (1, 3), (2, 3), (4, 7), (5, 7)]

    def test_proportion_clamped_to_whole_list(self):
        # c2*U2 = 3.0 clamps to 1.0: all six social pairs requested.
        rng = ScriptedRng(uniforms=[0.0, 1.0],
                          selections=[[0, 1, 2, 3, 4, 5]])
        v1 = update_velocity([], WORKED_PARTICLE, WORKED_LOCAL,
                             WORKED_GLOBAL, c1=1.0, c2=3.0, rng=rng)
        assert len(v1) == 6


class TestInitialSwarm:
    def test_rule_particles_lead(self, lab):
        from uavsched.sequences import priority_orderings
        rng = np.random.default_rng(0)
        swarm = generate_initial_swarm(lab, 40, rng)
        assert len(swarm) == 40
        rules = [list(s) for s in priority_orderings(lab).values()]
        assert swarm[:8] == rules

    def test_all_members_feasible(self, lab):
        rng = np.random.default_rng(3)
        for p in generate_initial_swarm(lab, 24, rng):
            assert is_feasible_sequence(p, lab)

    def test_deterministic_given_seed(self, lab):
        a = generate_initial_swarm(lab, 16, np.random.default_rng(5))
        b = generate_initial_swarm(lab, 16, np.random.default_rng(5))
        assert a == b


class TestRunPso:
    def test_report_shape(self, lab):
        cfg = PsoConfig(max_iterations=8, rng_seed=1)
        rep = run_pso(lab, cfg)
        assert rep.best_makespan == rep.best_schedule.makespan()
        assert sorted(rep.best_sequence) == list(range(1, 13))
        assert rep.history[0][0] == 0
        assert len(rep.history) == rep.iterations_run + 1
        assert rep.wall_clock_ms > 0

    def test_same_seed_same_result(self, lab):
        cfg = PsoConfig(max_iterations=12, rng_seed=42)
        a = run_pso(lab, cfg)
        b = run_pso(lab, cfg)
        assert a.best_sequence == b.best_sequence
        assert a.best_makespan == b.best_makespan
        assert a.history == b.history

    def test_different_seed_may_differ_but_stays_feasible(self, lab):
        a = run_pso(lab, PsoConfig(max_iterations=6, rng_seed=1))
        b = run_pso(lab, PsoConfig(max_iterations=6, rng_seed=2))
        assert is_feasible_sequence(a.best_sequence, lab)
        assert is_feasible_sequence(b.best_sequence, lab)

    def test_best_history_non_increasing(self, lab):
        rep = run_pso(lab, PsoConfig(max_iterations=20, rng_seed=7))
        bests = [b for _, b, _ in rep.history]
        assert all(x >= y for x, y in zip(bests, bests[1:]))

    def test_stagnation_stop(self, lab):
        cfg = PsoConfig(max_iterations=40, convergence_window=5, rng_seed=3)
        rep = run_pso(lab, cfg)
        if rep.converged:
            assert rep.iterations_run >= rep.last_improvement + 5
            assert rep.convergence_iteration == rep.iterations_run
        else:
            assert rep.iterations_run == 40

    def test_single_task_instance(self):
        inst = make_instance([inspect(1, "a", 60)])
        rep = run_pso(inst, PsoConfig(max_iterations=3, rng_seed=0))
        assert rep.best_sequence == [1]
        # flight 20s + execution 60s
        assert rep.best_makespan == 80
