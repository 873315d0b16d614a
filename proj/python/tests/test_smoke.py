import pytest

import halintsp as ht

K4_TREE = [(0, 1), (0, 2), (0, 3)]
K4_CYCLE = [1, 2, 3]

PRISM_TREE = [(4, 0), (4, 1), (4, 5), (5, 2), (5, 3)]
PRISM_CYCLE = [0, 1, 2, 3]


def test_validate():
    assert ht.validate(K4_TREE, K4_CYCLE)
    with pytest.raises(ht.HalinError):
        ht.validate([(0, 1), (1, 2), (2, 3)], [0, 3])


def test_prism_unit_tsp1():
    linear = {}
    for u, v in PRISM_TREE:
        linear[(min(u, v), max(u, v))] = 1
    for i in range(4):
        u, v = PRISM_CYCLE[i], PRISM_CYCLE[(i + 1) % 4]
        linear[(min(u, v), max(u, v))] = 1
    out = ht.solve(PRISM_TREE, PRISM_CYCLE, linear, {}, k=1)
    assert out["value"] == 6
    assert sorted(out["tour"]) == [0, 1, 2, 3, 4, 5]


def test_solver_matches_brute_on_generated():
    for seed in range(1, 8):
        inst = ht.generate_random(3, 4, seed)
        for k in (1, 2, 3):
            dp = ht.solve(inst["tree_edges"], inst["cycle"], inst["linear_costs"],
                          inst["quadratic_costs"], k)
            ref = ht.brute_solve(inst["tree_edges"], inst["cycle"], inst["linear_costs"],
                                 inst["quadratic_costs"], k)
            assert dp["value"] == ref["value"], (seed, k)
            recomputed = ht.tour_objective(inst["tree_edges"], inst["cycle"],
                                           inst["linear_costs"], inst["quadratic_costs"],
                                           dp["tour"], k)
            assert recomputed == dp["value"]


def test_wheel_generation():
    inst = ht.generate_wheel(8, seed=1)
    assert len(inst["cycle"]) == 8
    assert len(inst["tree_edges"]) == 8
    again = ht.generate_wheel(8, seed=1)
    assert inst == again


def test_reduction_roundtrip():
    sat = ht.reduce_3sat(3, [(1, 2, 3)])
    assert sat["nodes"] == 10
    out = ht.brute_solve(sat["tree_edges"], sat["cycle"], sat["linear_costs"],
                         sat["quadratic_costs"], k=0, cap=24)
    assert out["value"] == 0
    assert ht.sat_brute(3, [(1, 2, 3)])

    unsat = ht.reduce_3sat(1, [(1, 1, 1), (-1, -1, -1)])
    out = ht.brute_solve(unsat["tree_edges"], unsat["cycle"], unsat["linear_costs"],
                         unsat["quadratic_costs"], k=0, cap=24)
    assert out["value"] > 0
    assert not ht.sat_brute(1, [(1, 1, 1), (-1, -1, -1)])
