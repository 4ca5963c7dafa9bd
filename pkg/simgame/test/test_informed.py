from fractions import Fraction as F

import simgame as sg
from ..families.informed import pareto_responses


def test_pareto_responses():
    tg = sg.trust_game()
    assert pareto_responses(tg, 0) == [0, 1]
    assert pareto_responses(tg, 1) == [0]
    prisoners = sg.NormalFormGame([[3, 0], [5, 1]], [[3, 5], [0, 1]])
    assert pareto_responses(prisoners, 0) == [0, 1]
    dominated = sg.NormalFormGame([[1, 2]], [[1, 2]])
    assert pareto_responses(dominated, 0) == [1]
    repeated = sg.NormalFormGame([[1, 2, 1, 2]], [[2, 1, 2, 1]])
    assert pareto_responses(repeated, 0) == [0, 1]


def test_informed_follower_game():
    game = sg.make_informed_follower_game(sg.trust_game())
    assert game.name == "TG informed"
    assert game.shape == (2, 2)
    assert game.s2_labels == ("C/C", "D/C")
    assert game.payoff(0, 0) == (20, 20)
    assert game.payoff(0, 1) == (-100, 100)
    assert game.payoff(1, 1) == (0, 0)
    ptg = sg.make_informed_follower_game(sg.partial_trust_game())
    assert ptg.shape == (3, 4)
    assert ptg.s2_labels == ("C/C/C", "C/D/C", "D/C/C", "D/D/C")
    assert ptg.payoff(1, 1) == (-25, 25)


def test_informed_player_gains_nothing():
    costs = [F(1, 10), 1, "5/2"]
    reports = sg.check_informed_player(sg.trust_game(), costs)
    assert list(reports) == [F(1, 10), F(1), F(5, 2)]
    for report in reports.values():
        assert not report.helps
        assert report.criterion == sg.Criterion.Both
        assert report.reduced.base.shape == (2, 2)


def test_informed_player_in_partial_trust():
    ptg = sg.partial_trust_game()
    assert sg.decide_msim_helps(ptg, sg.SimulationConfig(2), "a").helps
    reports = sg.check_informed_player(ptg, [1, 2])
    for report in reports.values():
        assert not report.helps
        assert report.reduced.base.shape == (3, 4)
