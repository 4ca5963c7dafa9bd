from fractions import Fraction as F

import pytest

import simgame as sg
from ..sweep import SweepRow, sweep_to_pandas

EXPECTED_CSV = ("cost,p_sim,p_D,u1,u2,status\n"
                "1,9/29,1/25,79/17,500/29,ok\n"
                "3,9/29,3/25,37/17,500/29,ok\n"
                "5,,,,,refused:cost_too_high\n")


def ptg_analyzer():
    analysis = sg.validate_gptg(sg.partial_trust_game())
    return lambda cost: sg.gptg_simulation_equilibrium(analysis, cost)


def test_cost_grid():
    assert sg.cost_grid(1, 5, 3) == [1, 3, 5]
    assert sg.cost_grid("1/10", "1/2", 5) == [F(1, 10), F(1, 5), F(3, 10), F(2, 5), F(1, 2)]
    assert sg.cost_grid(2, 2, 1) == [2]
    with pytest.raises(sg.ValidationError) as e:
        sg.cost_grid(0, -1, 0)
    assert [v.condition for v in e.value.violations] == ["cost", "steps"]


@pytest.mark.parametrize("threads", [1, 3])
def test_sweep_keeps_order(threads):
    rows = sg.sweep(ptg_analyzer(), sg.cost_grid(1, 5, 3), threads=threads)
    assert [r.cost for r in rows] == [1, 3, 5]
    assert [r.refused for r in rows] == [False, False, True]
    assert rows[0].p_D == F(1, 25)
    assert rows[2].status == "refused:cost_too_high"
    assert sg.sweep_to_csv(rows) == EXPECTED_CSV


def test_sweep_rows():
    row = SweepRow(F(1, 2), None, None, None, None, "refused:trivial")
    assert row.record() == {"cost": "1/2", "p_sim": "", "p_D": "", "u1": "", "u2": "", "status": "refused:trivial"}
    frame = sweep_to_pandas([row])
    assert list(frame.columns) == ["cost", "p_sim", "p_D", "u1", "u2", "status"]
    assert frame.loc[0, "status"] == "refused:trivial"


def test_sweep_tcg():
    spec = sg.dtg_spec()
    rows = sg.sweep(lambda c: sg.tcg_simulation_equilibrium(spec, c), [F(1, 2), F(9, 2)], threads=2)
    assert rows[0].p_sim == F(129, 130)
    assert rows[0].u1 == F(85, 9)
    assert rows[1].status == "refused:cost_too_high"


def test_sweep_up_to_the_cost_bound():
    costs = [F(20, 3) * i / 21 for i in range(1, 21)]
    rows = sg.sweep(ptg_analyzer(), costs, threads=4)
    assert [r.cost for r in rows] == costs
    for row in rows:
        if row.cost <= F(100, 21):
            assert row.status == "ok"
            assert row.p_D == row.cost / 25
            assert row.p_sim == F(9, 29)
            assert row.u2 == F(500, 29)
        else:
            assert row.status == "refused:cost_too_high"
            assert row.p_D is None
    assert sum(1 for r in rows if not r.refused) == 15
    assert sg.sweep(ptg_analyzer(), [F(20, 3)])[0].status == "refused:cost_too_high"
