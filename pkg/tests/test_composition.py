from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_cycles, brute_paths, from_nx
from fewham.composition import (PETERSEN_ROLES, TerminalGraph, chain_copies, chain_copies_with_cycle,
                                count_by_reductions, count_via_2cut, dagger, double_rewire,
                                expand_triangle, glue_at_terminals, petersen_gadget,
                                reduce_two_cut, side_terminal_graph, subdivide_cycle_edges,
                                two_cut_sides)
from fewham.enumeration import CycleCertificate, count_ham_cycles, count_ham_st_paths, enumerate_ham_cycles
from fewham.errors import PreconditionError
from fewham.graph import (MultiGraph, complete_graph, cycle_graph, degree_profile, doubled_triangle,
                          petersen_graph, prism_graph, vertex_connectivity)


def _k4_minus_edge() -> TerminalGraph:
    return TerminalGraph(complete_graph(4).with_edges(remove=[(0, 1)]), 0, 1)


def test_glue_two_k4_minus_edge():
    g = glue_at_terminals(_k4_minus_edge(), _k4_minus_edge())
    assert g.n == 6
    assert count_via_2cut(g, 0, 1).value == count_ham_cycles(g).value == brute_cycles(g) == 4


def test_glue_rejects_triple_terminal_edge():
    a = TerminalGraph(MultiGraph(3, [(0, 1), (0, 1), (0, 2), (1, 2)]), 0, 1)
    b = TerminalGraph(MultiGraph(3, [(0, 1), (0, 2), (1, 2)]), 0, 1)
    with pytest.raises(PreconditionError):
        glue_at_terminals(a, b)


@st.composite
def side_graphs(draw):
    """A connected simple graph on 2..5 vertices used as one side of a 2-cut."""
    n = draw(st.integers(3, 5))
    pairs = [p for p in itertools.combinations(range(n), 2) if p != (0, 1)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return TerminalGraph(MultiGraph(n, [p for p, b in zip(pairs, bits) if b]), 0, 1)


@settings(max_examples=150, deadline=None)
@given(side_graphs(), side_graphs())
def test_two_cut_product_rule(a, b):
    g = glue_at_terminals(a, b)
    try:
        two_cut_sides(g, 0, 1)
    except PreconditionError:
        return
    assert count_via_2cut(g, 0, 1).value == brute_cycles(g)
    assert a.path_count() * b.path_count() == brute_cycles(g)


def test_reduce_two_cut_preserves_count():
    g = glue_at_terminals(_k4_minus_edge(), TerminalGraph(prism_graph(3).with_edges(remove=[(0, 1)]), 0, 1))
    cut = two_cut_sides(g, 0, 1)
    factor, small = reduce_two_cut(g, 0, 1, cut.sides[0])
    assert factor * count_ham_cycles(small).value == count_ham_cycles(g).value
    assert count_by_reductions(g, [(0, 1, cut.sides[0])]).value == count_ham_cycles(g).value


def test_two_cut_errors():
    with pytest.raises(PreconditionError):
        two_cut_sides(complete_graph(5), 0, 1)
    with pytest.raises(PreconditionError):
        two_cut_sides(cycle_graph(5), 2, 2)


def test_side_terminal_graph_relabels():
    g = glue_at_terminals(_k4_minus_edge(), _k4_minus_edge())
    tg = side_terminal_graph(g, 0, 1, [2, 3])
    assert (tg.u, tg.v) == (0, 1) and tg.graph.n == 4


# -- Petersen gadget ------------------------------------------------------------


def test_gadget_path_counts_every_role_choice():
    p = petersen_graph()
    for x in range(10):
        minus_x, keep = p.delete_vertices([x])
        xs = [keep.index(y) for y in p.neighbors(x)]
        for i, j in itertools.combinations(xs, 2):
            assert count_ham_st_paths(minus_x, i, j).value == 0
            assert brute_paths(minus_x, i, j) == 0
        for i in xs:
            rest, keep2 = minus_x.delete_vertices([i])
            j, k = [keep2.index(y) for y in xs if y != i]
            assert count_ham_st_paths(rest, j, k).value == 2
            assert brute_paths(rest, j, k) == 2


def test_gadget_roles():
    g, roles = petersen_gadget()
    assert g.n == 9 and all(g.degree(r) == 2 for r in roles)
    assert sorted(petersen_graph().neighbors(0)) == sorted(PETERSEN_ROLES)


# -- dagger and rewiring --------------------------------------------------------


def test_dagger_pipeline():
    g1 = dagger(doubled_triangle())
    assert g1.n == 11 and degree_profile(g1).is_kl_regular(3, 4)
    assert count_ham_cycles(g1).value == 2
    g2 = double_rewire(g1)
    assert g2.n == 20 and degree_profile(g2).is_kl_regular(3, 4)
    assert count_ham_cycles(g2, "backtrack").value == 1
    assert count_ham_cycles(g2, "held_karp").value == 1
    g3 = dagger(g1)
    assert degree_profile(g3).is_kl_regular(3, 6)
    assert count_ham_cycles(g3).value == 2


def test_dagger_preconditions():
    with pytest.raises(PreconditionError):
        dagger(complete_graph(4))  # three cycles
    with pytest.raises(PreconditionError):
        dagger(doubled_triangle(), x=0)  # 0 has odd degree
    with pytest.raises(PreconditionError):
        dagger(doubled_triangle(), e=(0, 2))  # incident to the even vertex


def test_expand_triangle_preserves_count():
    for g in (complete_graph(4), prism_graph(3), petersen_graph()):
        out = expand_triangle(g, 0)
        assert out.n == g.n + 2
        assert count_ham_cycles(out).value == count_ham_cycles(g).value
        if out.n <= 8:
            assert brute_cycles(out) == brute_cycles(g)


def test_expand_triangle_needs_cubic_vertex():
    with pytest.raises(PreconditionError):
        expand_triangle(complete_graph(5), 0)


# -- subdivision and chaining ---------------------------------------------------


def _random_hamiltonian_regular(k: int, n: int, seed: int) -> tuple[MultiGraph, CycleCertificate] | None:
    g = from_nx(nx.random_regular_graph(k, n, seed=seed))
    cycles = list(enumerate_ham_cycles(g))
    return (g, random.Random(seed).choice(cycles)) if cycles else None


@pytest.mark.parametrize("k,n,seed", [(3, 8, 1), (3, 10, 2), (4, 9, 3), (5, 8, 4)])
def test_subdivide_gives_unique_cycle(k, n, seed):
    g, h = _random_hamiltonian_regular(k, n, seed)
    for keep_one in (False, True):
        out = subdivide_cycle_edges(g, h, keep_one=keep_one)
        assert count_ham_cycles(out).value == 1
        assert out.n == 2 * n - (1 if keep_one else 0)


def test_subdivide_rejects_foreign_cycle():
    bad = CycleCertificate((0, 2, 1, 3, 4), (0,) * 5)
    with pytest.raises(PreconditionError):
        subdivide_cycle_edges(cycle_graph(5), bad)


@pytest.mark.parametrize("m", [2, 3])
def test_chain_count_is_power_of_edge_cycles(m):
    # each copy of G - e contributes the hamiltonian paths between e's ends,
    # one per hamiltonian cycle of G through e
    g = prism_graph(3)
    h = next(iter(enumerate_ham_cycles(g)))
    e = h.steps()[0]
    through = sum(1 for c in enumerate_ham_cycles(g) if frozenset(e) in {frozenset(s) for s in c.steps()})
    big, cyc = chain_copies_with_cycle(g, h, e, m)
    assert big.n == m * g.n
    assert cyc.is_valid_for(big)
    assert count_ham_cycles(big).value == through ** m
    assert chain_copies(g, h, e, m) == big


def test_chain_preconditions():
    g = complete_graph(4)
    h = next(iter(enumerate_ham_cycles(g)))
    with pytest.raises(PreconditionError):
        chain_copies(g, h, h.steps()[0], 1)
    on_h = {frozenset(s) for s in h.steps()}
    off = next(p for p in itertools.combinations(range(4), 2) if frozenset(p) not in on_h)
    with pytest.raises(PreconditionError):
        chain_copies(g, h, off, 2)


def test_connectivity_of_rewired_graph():
    g2 = double_rewire(dagger(doubled_triangle()))
    assert vertex_connectivity(g2) == 3
