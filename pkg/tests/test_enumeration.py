from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import brute_cycles, brute_paths, graphs_with_perm, multigraphs, simple_graphs
from fewham import kernels
from fewham.enumeration import (CycleCertificate, all_nonadjacent_pairs_traceable, count_both,
                                count_ham_cycles, count_ham_st_paths, enumerate_ham_cycles,
                                hamiltonian_cycle_edge_sets, is_hamiltonian, is_uniquely_hamiltonian)
from fewham.errors import PreconditionError
from fewham.graph import (MultiGraph, complete_bipartite, complete_graph, cycle_graph,
                          doubled_triangle, petersen_graph, prism_graph)

ALGOS = ["backtrack", "held_karp", "auto"]


@settings(max_examples=300, deadline=None)
@given(multigraphs(min_n=1, max_n=7))
def test_counts_match_brute_force(g):
    expected = brute_cycles(g)
    for algo in ALGOS:
        assert count_ham_cycles(g, algo).value == expected


@settings(max_examples=100, deadline=None)
@given(multigraphs(min_n=3, max_n=7))
def test_jit_and_fallback_agree(g):
    for algo in ("backtrack", "held_karp"):
        assert count_ham_cycles(g, algo, use_jit=True).value == count_ham_cycles(g, algo, use_jit=False).value
    a = [c.to_text() for c in enumerate_ham_cycles(g, use_jit=True)]
    b = [c.to_text() for c in enumerate_ham_cycles(g, use_jit=False)]
    assert a == b


@settings(max_examples=150, deadline=None)
@given(graphs_with_perm(min_n=3, max_n=8))
def test_count_is_isomorphism_invariant(gp):
    g, p = gp
    assert count_ham_cycles(g).value == count_ham_cycles(g.relabel(p)).value


@settings(max_examples=150, deadline=None)
@given(multigraphs(min_n=3, max_n=7))
def test_enumeration_is_complete_and_valid(g):
    certs = list(enumerate_ham_cycles(g))
    assert len(certs) == count_ham_cycles(g).value
    assert len({c.canonical() for c in certs}) == len(certs)
    for c in certs:
        assert c.is_valid_for(g)
        assert CycleCertificate.from_text(c.to_text()) == c


@pytest.mark.parametrize("n", range(3, 10))
def test_complete_graph_closed_form(n):
    assert count_ham_cycles(complete_graph(n), "backtrack").value == math.factorial(n - 1) // 2
    assert count_ham_cycles(complete_graph(n), "held_karp").value == math.factorial(n - 1) // 2


def test_held_karp_residue_path():
    # degree product 15**16 exceeds the single-pass bound, forcing the CRT route
    g = complete_graph(16)
    assert math.prod(g.degrees()) >= 1 << 62
    assert count_ham_cycles(g, "held_karp").value == math.factorial(15) // 2


def test_enumeration_spans_chunks():
    sets = hamiltonian_cycle_edge_sets(complete_graph(9))
    assert len(sets) == len(set(sets)) == math.factorial(8) // 2


@pytest.mark.parametrize("a,b", [(2, 2), (3, 3), (4, 4)])
def test_complete_bipartite_closed_form(a, b):
    # K_{m,m}: m! (m-1)! / 2 cycles
    expected = math.factorial(a) * math.factorial(a - 1) // 2
    assert count_ham_cycles(complete_bipartite(a, b)).value == expected


def test_named_graphs():
    assert count_ham_cycles(petersen_graph()).value == 0
    assert count_ham_cycles(cycle_graph(7)).value == 1
    assert count_ham_cycles(prism_graph(3)).value == brute_cycles(prism_graph(3))
    assert count_ham_cycles(doubled_triangle()).value == 2
    texts = sorted(c.to_text() for c in enumerate_ham_cycles(doubled_triangle()))
    assert texts == ["0 1 2", "0 1 2 [1 0 0]"]


def test_small_orders():
    with pytest.raises(PreconditionError):
        count_ham_cycles(MultiGraph(0, []))
    assert count_ham_cycles(MultiGraph(1, [])).value == 0
    assert count_ham_cycles(MultiGraph(2, [(0, 1)])).value == 0
    assert count_ham_cycles(MultiGraph(2, [(0, 1), (0, 1)])).value == 1
    assert not is_hamiltonian(MultiGraph(2, [(0, 1)]))


def test_count_both_reports_both_tags():
    bt, hk = count_both(cycle_graph(6))
    assert (bt.value, hk.value) == (1, 1)
    assert (bt.algorithm, hk.algorithm) == ("backtrack", "held_karp")


def test_unique_hamiltonicity():
    assert is_uniquely_hamiltonian(cycle_graph(7))
    assert not is_uniquely_hamiltonian(complete_graph(4))
    assert not is_uniquely_hamiltonian(petersen_graph())


@settings(max_examples=200, deadline=None)
@given(multigraphs(min_n=2, max_n=7))
def test_path_counts_match_brute_force(g):
    for s, t in itertools.combinations(range(g.n), 2):
        expected = brute_paths(g, s, t)
        for algo in ("backtrack", "held_karp"):
            assert count_ham_st_paths(g, s, t, algo).value == expected


def test_path_preconditions():
    g = complete_graph(4)
    with pytest.raises(PreconditionError):
        count_ham_st_paths(g, 1, 1)
    with pytest.raises(PreconditionError):
        count_ham_st_paths(g, 0, 9)


@settings(max_examples=100, deadline=None)
@given(simple_graphs(min_n=3, max_n=7))
def test_traceability_matches_brute_force(g):
    expected = all(brute_paths(g, s, t) > 0 for s, t in itertools.combinations(range(g.n), 2)
                   if not g.has_edge(s, t))
    assert all_nonadjacent_pairs_traceable(g) == expected


def test_traceability_examples():
    assert all_nonadjacent_pairs_traceable(complete_graph(4))
    assert not all_nonadjacent_pairs_traceable(complete_bipartite(3, 3))
    assert all_nonadjacent_pairs_traceable(prism_graph(3))


def test_certificate_text_format():
    c = CycleCertificate.from_text("0 2 1 [0 1 0]")
    assert c.vertices == (0, 2, 1) and c.selectors == (0, 1, 0)
    assert c.to_text() == "0 2 1 [0 1 0]"
    assert CycleCertificate.from_text("0 1 2").selectors == (0, 0, 0)


# -- kernels directly ------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(simple_graphs(min_n=4, max_n=8))
def test_kernel_namespaces_agree(g):
    nbr = np.array(g.nbr_masks, dtype=np.int64)
    mult = np.ascontiguousarray(g.matrix, dtype=np.int64)
    jit, fb = kernels.get(True), kernels.get(False)
    assert jit.count_cycles_bt(nbr, mult, g.n, 0, -1) == fb.count_cycles_bt(nbr, mult, g.n, 0, -1)
    assert jit.held_karp(mult, g.n, 0, -1, 0) == fb.held_karp(mult, g.n, 0, -1, 0)
    assert jit.held_karp(mult, g.n, 0, 1, 0) == fb.held_karp(mult, g.n, 0, 1, 0)
    assert jit.count_paths_bt(nbr, mult, g.n, 0, 1) == fb.count_paths_bt(nbr, mult, g.n, 0, 1)
