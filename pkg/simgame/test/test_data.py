import os
from fractions import Fraction as F

import simgame as sg
from ..io import document_to_game, tcg_spec

DATA = os.path.join(os.path.dirname(__file__), "..", "..", "data")


def data_file(name):
    return os.path.join(DATA, name)


def test_ptg_file():
    game = document_to_game(sg.load_game(data_file("ptg.json")))
    assert game == sg.partial_trust_game()
    graded = document_to_game(sg.load_game(data_file("graded.json")))
    assert graded == sg.graded_trust_game()


def test_coordination_file():
    game = sg.validate_coordination(document_to_game(sg.load_game(data_file("coordination.json"))))
    result = sg.coordination_sim_equilibrium(game, F(1, 10))
    assert (result.parameters["k1"], result.parameters["k2"]) == (1, 0)
    assert result.parameters["cost_bound"] == F(5, 6)
    assert result.profile.payoffs == (F(9, 2), 2)


def test_dtg_file():
    doc = sg.load_game(data_file("dtg.json"))
    assert tcg_spec(doc) == sg.dtg_spec()
    assert document_to_game(doc) == sg.make_tcg(sg.dtg_spec())


def test_graph_files():
    k22 = sg.read_graph(data_file("k22.txt"), k=2)
    assert sg.has_complete_bipartite_subgraph(k22) == ((0, 1), (0, 1))
    single = sg.read_graph(data_file("single_edge.txt"), k=2)
    assert sg.has_complete_bipartite_subgraph(single) is None
