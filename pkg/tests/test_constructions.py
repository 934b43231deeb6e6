from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest

from conftest import to_nx
from fewham.canon import is_isomorphic
from fewham.composition import count_via_2cut
from fewham.constructions import (fig1_blueprint, fig1_closed_form, fig1_count, fig1_graph,
                                  fig1_order, fig10_graphs, petersen, petersen_gadget)
from fewham.enumeration import count_ham_cycles, count_ham_st_paths
from fewham.errors import CapExceeded, PreconditionError, ValidationError
from fewham.graph import degree_profile, is_connected


def test_block_family_d5_structure():
    bp = fig1_blueprint(5)
    g = bp.graph
    assert g.n == fig1_order(5) == 26
    assert degree_profile(g).is_k_regular(5) and g.is_simple and is_connected(g)
    assert len(bp.blocks) == 3 and len(bp.squares) == 2 and len(bp.disks) == 4
    gad, a, b = bp.gadget()
    assert count_ham_st_paths(gad, a, b).value == 2


def test_block_family_d5_count_three_ways():
    bp = fig1_blueprint(5)
    expected = 2 * math.factorial(4) ** 3
    assert fig1_closed_form(5) == expected
    assert count_ham_cycles(bp.graph, "backtrack").value == expected
    assert fig1_count(bp).value == expected
    u, v, _ = bp.block_cuts()[0]
    assert count_via_2cut(bp.graph, u, v).value == expected


@pytest.mark.parametrize("d", [6, 7])
def test_block_family_larger_degrees_by_reduction(d):
    bp = fig1_blueprint(d)
    assert degree_profile(bp.graph).is_k_regular(d)
    assert fig1_count(bp).value == 2 * math.factorial(d - 1) ** (d - 2)


def test_block_family_every_wiring_gives_the_same_count():
    for perm in itertools.permutations([1, 2]):
        assert fig1_count(fig1_blueprint(5, perm)).value == fig1_closed_form(5)


def test_block_family_preconditions():
    with pytest.raises(PreconditionError):
        fig1_graph(4)
    with pytest.raises(PreconditionError):
        fig1_blueprint(5, (1, 1))
    with pytest.raises(CapExceeded):
        fig1_graph(8)


def test_petersen_embedding():
    assert nx.is_isomorphic(nx.Graph(to_nx(petersen())), nx.petersen_graph())
    g, roles = petersen_gadget()
    for i, j in itertools.combinations(roles, 2):
        assert count_ham_st_paths(g, i, j).value == 0


def test_bundled_unique_graphs():
    gs = fig10_graphs()
    assert len(gs) == 5
    for g in gs:
        assert g.n == 18 and g.is_simple
        assert degree_profile(g).is_kl_regular(3, 4)
        assert count_ham_cycles(g, "backtrack").value == 1
        assert count_ham_cycles(g, "held_karp").value == 1
    for a, b in itertools.combinations(gs, 2):
        assert not is_isomorphic(a, b)
        assert not nx.is_isomorphic(to_nx(a), to_nx(b))


def test_block_family_count_validation_flags_wrong_value(monkeypatch):
    import fewham.constructions as c

    monkeypatch.setattr(c, "fig1_closed_form", lambda d: -1)
    with pytest.raises(ValidationError):
        c.fig1_count(5)
