import random

import pytest

from carpool.core import Matching, arcs_weight, matching_weight, new_instance, validate_matching
from carpool.oracle import exact_optimum, exact_super_optimum
from carpool.supermatching import (
    Component,
    CycleDetected,
    InternalInvariant,
    SuperMatching,
    components,
    decompose,
    eliminate_cycle,
    is_super_matching,
    matching_from_super,
    solve_approx3,
    solve_super_matching,
    two_color_decompose,
)
from support import arc_id, arc_labels, load_fixture, random_instance

FIG5_SUPER = {(1, 2), (2, 4), (3, 5), (4, 3), (5, 4)}


def fig5_super(inst):
    return SuperMatching(frozenset(arc_id(inst, t, h) for t, h in FIG5_SUPER))


def test_fig5_super_matching():
    inst = load_fixture("fig5.cm")
    sm = solve_super_matching(inst)
    assert arc_labels(inst, sm.arcs) == FIG5_SUPER
    assert arcs_weight(inst, sm.arcs) == 13_000_000


def test_super_matching_trivial_cases():
    assert solve_super_matching(new_instance(3, [1, 1, 1], [])).arcs == frozenset()
    inst = new_instance(2, [0, 1], [(0, 1, 5)])
    assert solve_super_matching(inst).arcs == {0}


def test_super_matching_skips_negative_arcs():
    inst = new_instance(2, [1, 1], [(0, 1, -5), (1, 0, 0)])
    assert solve_super_matching(inst).arcs == frozenset()


def test_components_of_empty_super_matching():
    inst = new_instance(3, [1, 1, 1], [(0, 1, 1)])
    comps = components(inst, SuperMatching(frozenset()))
    assert [c.vertices for c in comps] == [{0}, {1}, {2}]
    assert all(c.cycle is None for c in comps)


def test_components_three_cycle():
    inst = new_instance(3, [1, 1, 1], [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    (comp,) = components(inst, SuperMatching(frozenset({0, 1, 2})))
    assert comp.cycle == (0, 1, 2)


def test_components_fig5():
    inst = load_fixture("fig5.cm")
    (comp,) = components(inst, fig5_super(inst))
    assert len(comp.vertices) == 5
    assert [tuple(inst.labels[x] for x in (inst.arcs[i].tail, inst.arcs[i].head)) for i in comp.cycle] == [
        (3, 5),
        (5, 4),
        (4, 3),
    ]


def test_components_rejects_out_degree_two():
    inst = new_instance(3, [1, 1, 1], [(0, 1, 1), (0, 2, 1)])
    with pytest.raises(InternalInvariant):
        components(inst, SuperMatching(frozenset({0, 1})))


def test_eliminate_cycle_fig5():
    inst = load_fixture("fig5.cm")
    (comp,) = components(inst, fig5_super(inst))
    removed, forest = eliminate_cycle(inst, comp)
    assert arc_labels(inst, [removed]) == {(4, 3)}
    assert arc_labels(inst, forest) == {(1, 2), (2, 4), (3, 5), (5, 4)}


def test_eliminate_cycle_acyclic_passthrough():
    inst = new_instance(3, [2, 2, 2], [(0, 1, 1), (2, 1, 1)])
    comp = Component(frozenset({0, 1, 2}), frozenset({0, 1}), None)
    assert eliminate_cycle(inst, comp) == (None, frozenset({0, 1}))


def test_eliminate_cycle_unit_ties_take_lowest_index():
    inst = new_instance(3, [1, 1, 1], [(1, 2, 1), (0, 1, 1), (2, 0, 1)])
    (comp,) = components(inst, SuperMatching(frozenset({0, 1, 2})))
    removed, forest = eliminate_cycle(inst, comp)
    assert removed == 0 and forest == {1, 2}


def test_two_color_single_arc():
    inst = new_instance(2, [1, 1], [(0, 1, 1)])
    assert two_color_decompose(inst, [0]) == (frozenset(), frozenset({0}))


def test_two_color_path():
    # a -> b -> c, root c
    inst = new_instance(3, [1, 1, 1], [(0, 1, 1), (1, 2, 1)])
    assert two_color_decompose(inst, [0, 1]) == (frozenset({0}), frozenset({1}))


def test_two_color_fig5():
    inst = load_fixture("fig5.cm")
    forest = [arc_id(inst, t, h) for t, h in [(1, 2), (2, 4), (3, 5), (5, 4)]]
    even, odd = two_color_decompose(inst, forest)
    assert arc_labels(inst, even) == {(1, 2), (3, 5)}
    assert arc_labels(inst, odd) == {(2, 4), (5, 4)}
    assert arcs_weight(inst, even) == arcs_weight(inst, odd) == 6_000_000


def test_two_color_rejects_cycles():
    inst = new_instance(2, [1, 1], [(0, 1, 1), (1, 0, 1)])
    with pytest.raises(CycleDetected):
        two_color_decompose(inst, [0, 1])


def test_fig5_approx3():
    inst = load_fixture("fig5.cm")
    m = solve_approx3(inst)
    assert validate_matching(inst, m) == []
    assert arc_labels(inst, m.arcs) == {(1, 2), (3, 5)}
    assert matching_weight(inst, m) == 6_000_000


def test_fig6_cycle_decomposition():
    inst = load_fixture("fig6.cm")
    cycle = SuperMatching(frozenset(arc_id(inst, t, h) for t, h in [(1, 2), (2, 3), (3, 1)]))
    m = matching_from_super(inst, cycle)
    assert validate_matching(inst, m) == []
    assert matching_weight(inst, m) == 1_000_000
    assert exact_optimum(inst).best_weight == 3_000_000


def test_approx3_no_arcs():
    inst = new_instance(2, [1, 1], [])
    assert solve_approx3(inst) == Matching.empty(2)


@pytest.mark.parametrize("seed", range(200))
def test_random_guarantees(seed):
    inst = random_instance(random.Random(seed))
    sm = solve_super_matching(inst)
    assert is_super_matching(inst, sm.arcs)
    sm_weight = arcs_weight(inst, sm.arcs)
    assert sm_weight == exact_super_optimum(inst)
    for dec in decompose(inst, sm):
        parts = dec.candidates()
        assert sum(arcs_weight(inst, s) for s in parts) == arcs_weight(inst, dec.component.arcs)
        assert frozenset().union(*parts) == dec.component.arcs
        for s in parts:
            assert validate_matching(inst, Matching.from_arcs(inst, s)) == []
        assert 3 * arcs_weight(inst, dec.best(inst)) >= arcs_weight(inst, dec.component.arcs)
    m = solve_approx3(inst)
    assert validate_matching(inst, m) == []
    best = exact_optimum(inst).best_weight
    assert sm_weight >= best
    assert 3 * matching_weight(inst, m) >= sm_weight
    assert 3 * matching_weight(inst, m) >= best
