from fractions import Fraction as F

import pytest

import simgame as sg


def ptg_with_opt_out():
    return sg.with_opt_out(sg.partial_trust_game(), -200, -200)


def test_make_pg():
    pg = sg.make_pg(3, 20)
    assert pg.name == "PG(3, 20)"
    assert pg.shape == (4, 3)
    assert pg.s1_labels == ("no-guess", "g1", "g2", "g3")
    assert pg.s2_labels == ("p1", "p2", "p3")
    assert pg.payoff(2, 1) == (21, -21)
    assert pg.payoff(2, 0) == (-42, 0)
    assert pg.payoff(0, 2) == (0, 0)
    with pytest.raises(sg.ValidationError) as e:
        sg.make_pg(0, 0)
    assert [v.condition for v in e.value.violations] == ["passwords", "stakes"]


def test_guessing_does_not_pay():
    pg = sg.make_pg(3, 20)
    uniform = sg.MixedStrategy.uniform(2, 3)
    assert sg.best_responses(pg, uniform) == (0,)


def test_find_opt_out():
    game = ptg_with_opt_out()
    assert sg.find_opt_out(game) == (3, 2, -200, -200)
    assert sg.find_opt_out(game, row=3).col == 2
    with pytest.raises(sg.ValidationError):
        sg.find_opt_out(sg.trust_game())


def test_password_modified_game():
    game = sg.apply_password_modification(ptg_with_opt_out(), 3)
    assert isinstance(game, sg.PasswordModifiedGame)
    assert game.shape == (13, 7)
    assert game.s1_labels[:4] == ("FT|-", "FT|g1", "FT|g2", "FT|g3")
    assert game.s1_labels[-1] == "OO"
    assert game.s2_labels == ("C|p1", "C|p2", "C|p3", "D|p1", "D|p2", "D|p3", "OO")
    assert game.row_map[1] == (0, 0) and game.row_map[-1] == (3, None)
    assert game.col_map[3] == (1, 0) and game.col_map[-1] == (2, None)
    # FT against C leaves a profit of 220 over opting out
    assert game.payoff(0, 0) == (20, 20)
    assert game.payoff(1, 0) == (241, -201)
    assert game.payoff(1, 1) == (-422, 20)
    assert game.payoff(1, 6) == (-200, -200)
    with pytest.raises(sg.ValidationError):
        sg.apply_password_modification(ptg_with_opt_out(), 0)


def test_lift_strategies():
    game = sg.apply_password_modification(ptg_with_opt_out(), 3)
    s1 = game.lift_p1(sg.MixedStrategy(1, (F(1, 2), 0, 0, F(1, 2))))
    assert s1.probs[0] == F(1, 2) and s1.probs[12] == F(1, 2)
    s2 = game.lift_p2(sg.MixedStrategy(2, (F(3, 4), 0, F(1, 4))))
    assert s2.probs == (F(1, 4), F(1, 4), F(1, 4), 0, 0, 0, F(1, 4))


def test_lifted_simulation_equilibrium():
    game = sg.apply_password_modification(ptg_with_opt_out(), 3)
    result = sg.gptg_simulation_equilibrium(sg.validate_gptg(sg.partial_trust_game()), F(1, 20))
    lifted = sg.lift_simulation_equilibrium(game, result)
    assert lifted.profile.payoffs == (F(1979, 340), F(500, 29))
    assert lifted.parameters["p_D"] == F(1, 500)
    meta = lifted.reduced.meta
    assert [meta.s1_labels[i] for i in lifted.profile.s1.support] == ["PT|-", "m-sim"]
    assert lifted.profile.aggregate.probs[6] == 0


def test_base_equilibria_survive():
    base = ptg_with_opt_out()
    game = sg.apply_password_modification(base, 3)
    reduced = sg.build_msim_reduced(game, sg.SimulationConfig(F(1, 20)))
    for row, col in ((2, 1), (3, 2)):
        s1 = game.lift_p1(sg.MixedStrategy.pure(1, 4, row))
        s2 = game.lift_p2(sg.MixedStrategy.pure(2, 3, col))
        assert sg.is_nash(game, s1, s2)
        profile = sg.EquilibriumProfile(s1, s2, sg.expected_utility(game, s1, s2), s1.support, s2.support)
        assert sg.lift_check(game, reduced, profile)


def test_pure_simulation_only_leads_to_opting_out():
    cost = F(1, 20)
    game = sg.apply_password_modification(ptg_with_opt_out(), 3)
    reduced = sg.build_psim(game, sg.SimulationConfig(cost, "pure"))
    assert reduced.meta.shape == (14, 7)
    profiles = sg.enumerate_nash(reduced.meta, "vertex")
    assert profiles
    for profile in profiles:
        for s1, s2 in profile.extreme_points:
            assert s2.probs[6] >= 1 - cost
            payoffs = sg.expected_utility(reduced.meta, s1, s2)
            assert payoffs.u1 < 0 and payoffs.u2 < 0
