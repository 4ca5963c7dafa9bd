from fractions import Fraction as F

import numpy as np
import pytest

import simgame as sg


def graded_with(label, u1, u2):
    game = sg.graded_trust_game()
    return sg.NormalFormGame(np.vstack([game.u1, [u1]]), np.vstack([game.u2, [u2]]),
                             list(game.s1_labels) + [label], game.s2_labels, name="graded+")


def entries(analysis):
    return [(analysis.game.s1_labels[e.strategy], e.delta_low, e.delta_high) for e in analysis.hierarchy]


def test_ptg_hierarchy():
    analysis = sg.validate_gptg(sg.partial_trust_game())
    assert entries(analysis) == [("FT", 0, F(2, 17)), ("PT", F(2, 17), F(2, 7)), ("WO", F(2, 7), 1)]
    assert analysis.ft_index == 0 and analysis.wo_index == 2
    assert analysis.trust_levels == (1,)
    assert analysis.delta(1) == F(2, 7)
    assert analysis.incentivise[0].probs == (F(15, 17), F(2, 17))
    assert analysis.nontrivial
    assert analysis.c0 == F(20, 3)
    assert analysis.cost_bound == F(100, 21)
    assert [(t.lhs, t.rhs) for t in analysis.sufficiency] == [(F(17, 35), F(17, 21))]
    assert analysis.sufficiency_ok
    assert not analysis.sufficient_bound_ok
    assert analysis.redundant == ()
    with pytest.raises(KeyError):
        analysis.delta(5)


def test_graded_hierarchy():
    analysis = sg.validate_gptg(sg.graded_trust_game())
    assert entries(analysis) == [("FT", 0, F(1, 9)), ("T2", F(1, 9), F(5, 24)),
                                 ("T3", F(5, 24), F(5, 6)), ("WO", F(5, 6), 1)]
    assert analysis.c0 == F(105, 38)
    assert analysis.cost_bound == F(35, 16)
    terms = analysis.sufficiency
    assert terms[0].ok
    assert (terms[1].lhs, terms[1].rhs) == (F(99, 520), F(3, 16))
    assert not terms[1].ok
    assert not analysis.sufficiency_ok


def test_ptg_simulation_equilibrium():
    result = sg.gptg_simulation_equilibrium(sg.validate_gptg(sg.partial_trust_game()), 2)
    profile = result.profile
    assert result.parameters["p_D"] == F(2, 25)
    assert result.parameters["p_sim"] == F(9, 29)
    assert result.parameters["t1"] == "PT"
    assert result.parameters["delta_ft"] == F(2, 17)
    assert profile.payoffs == (F(58, 17), F(500, 29))
    assert profile.aggregate.probs == (F(69, 85), F(16, 85))
    meta = result.reduced.meta
    assert meta.s1_labels[profile.s1.support[0]] == "PT"
    assert [meta.s2_labels[j] for j in profile.s2.support] == ["15/17 C + 2/17 D", "D"]
    assert sg.verify_profile(result.reduced, profile.s1, profile.s2)


def test_ptg_small_cost():
    result = sg.gptg_simulation_equilibrium(sg.validate_gptg(sg.partial_trust_game()), F(1, 20))
    assert result.parameters["p_D"] == F(1, 500)
    assert result.profile.payoffs == (F(1979, 340), F(500, 29))


@pytest.mark.parametrize("cost", [F(5), F(20, 3), F(10)])
def test_ptg_cost_too_high(cost):
    with pytest.raises(sg.RefusalError) as e:
        sg.gptg_simulation_equilibrium(sg.validate_gptg(sg.partial_trust_game()), cost)
    assert e.value.reason == "cost_too_high"
    assert e.value.details["cost_bound"] == F(100, 21)


def test_trivial_game_is_refused():
    analysis = sg.validate_gptg(sg.trust_game())
    assert not analysis.nontrivial
    assert analysis.c0 is None
    with pytest.raises(sg.RefusalError) as e:
        sg.gptg_simulation_equilibrium(analysis, F(1, 10))
    assert e.value.reason == "trivial"


def test_graded_sufficiency_refusal():
    with pytest.raises(sg.RefusalError) as e:
        sg.gptg_simulation_equilibrium(sg.validate_gptg(sg.graded_trust_game()), 1)
    assert e.value.reason == "sufficiency"
    assert e.value.details["index"] == 2
    assert e.value.details["strategy"] == "T3"
    assert e.value.details["lhs"] == F(99, 520)


def test_condition_4b():
    with pytest.raises(sg.ValidationError) as e:
        sg.validate_gptg(graded_with("T'2", [11, -30], [9, 30]))
    assert ("4b", ("T'2", "T2")) in [(v.condition, v.strategies) for v in e.value.violations]


def test_condition_5():
    with pytest.raises(sg.ValidationError) as e:
        sg.validate_gptg(graded_with("T'1.5", [15, -60], [16, 60]))
    assert ("5", ("T'1.5", "FT", "T2")) in [(v.condition, v.strategies) for v in e.value.violations]


def test_redundant_level():
    analysis = sg.validate_gptg(graded_with("T1.9", [11, -99], [11, 99]))
    assert analysis.redundant == (4,)
    assert [e.strategy for e in analysis.hierarchy] == [0, 1, 2, 3]


def test_structural_violations():
    violations = sg.gptg_violations(sg.NormalFormGame([[1, 2, 3]], [[1, 2, 3]]))
    assert [v.condition for v in violations] == ["1"]
    no_walk_out = sg.NormalFormGame([[20, -100]], [[20, 100]], ["T"], ["C", "D"])
    assert "2" in [v.condition for v in sg.gptg_violations(no_walk_out)]
    wrong_signs = sg.NormalFormGame([[20, 100], [0, 0]], [[20, 100], [0, 0]], ["T", "WO"], ["C", "D"])
    assert [v.condition for v in sg.gptg_violations(wrong_signs)] == ["3"]
    equal_trust = sg.NormalFormGame([[10, -100], [10, -20], [0, 0]], [[20, 100], [10, 20], [0, 0]])
    assert "4a" in [v.condition for v in sg.gptg_violations(equal_trust)]
