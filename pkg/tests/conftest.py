from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest
from hypothesis import strategies as st

from fewham.graph import MultiGraph


def to_nx(g: MultiGraph) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> MultiGraph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return MultiGraph(len(idx), [(idx[a], idx[b]) for a, b in h.edges()])


def atlas(max_n: int = 7, connected: bool | None = None) -> list[nx.Graph]:
    out = []
    for h in nx.graph_atlas_g():
        n = h.number_of_nodes()
        if n == 0 or n > max_n:
            continue
        if connected is not None and nx.is_connected(h) != connected:
            continue
        out.append(h)
    return out


def brute_cycles(g: MultiGraph) -> int:
    """Hamiltonian cycles by trying every vertex order; multiplicities multiply."""
    n = g.n
    if n < 3:
        if n == 2:
            return 1 if g.mult(0, 1) == 2 else 0
        return 0
    total = 0
    for perm in itertools.permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue
        seq = (0,) + perm
        prod = 1
        for i in range(n):
            prod *= g.mult(seq[i], seq[(i + 1) % n])
            if not prod:
                break
        total += prod
    return total


def brute_paths(g: MultiGraph, s: int, t: int) -> int:
    n = g.n
    inner = [v for v in range(n) if v not in (s, t)]
    total = 0
    for perm in itertools.permutations(inner):
        seq = (s,) + perm + (t,)
        prod = 1
        for i in range(n - 1):
            prod *= g.mult(seq[i], seq[i + 1])
            if not prod:
                break
        total += prod
    return total


@st.composite
def multigraphs(draw, min_n: int = 1, max_n: int = 7, max_mult: int = 2):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mults = draw(st.lists(st.integers(0, max_mult), min_size=len(pairs), max_size=len(pairs)))
    edges = []
    for (a, b), m in zip(pairs, mults):
        edges += [(a, b)] * m
    return MultiGraph(n, edges)


def simple_graphs(min_n: int = 1, max_n: int = 7):
    return multigraphs(min_n, max_n, max_mult=1)


@st.composite
def graphs_with_perm(draw, min_n: int = 1, max_n: int = 7, max_mult: int = 2):
    g = draw(multigraphs(min_n, max_n, max_mult))
    perm = draw(st.permutations(list(range(g.n))))
    return g, tuple(perm)


@pytest.fixture
def factorial():
    return math.factorial
