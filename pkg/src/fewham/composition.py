"""Graph surgeries that control hamiltonian cycle counts.

Every operation checks its preconditions by enumeration and re-counts its
output before returning, raising ValidationError if a stated property fails.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .enumeration import (
    CountResult,
    CycleCertificate,
    count_ham_cycles,
    count_ham_st_paths,
    enumerate_ham_cycles,
    is_uniquely_hamiltonian,
)
from .errors import PreconditionError, ValidationError
from .graph import MultiGraph, components, petersen_graph

TWO_CUT = "two_cut_product"


@dataclass(frozen=True)
class TerminalGraph:
    graph: MultiGraph
    u: int
    v: int

    def __post_init__(self):
        if self.u == self.v:
            raise PreconditionError("terminals must be distinct")
        if not (0 <= self.u < self.graph.n and 0 <= self.v < self.graph.n):
            raise PreconditionError("terminal outside the vertex range")

    def path_count(self, algo: str = "auto") -> int:
        return count_ham_st_paths(self.graph, self.u, self.v, algo).value

    def is_nearly_regular(self, k: int) -> bool:
        degs = self.graph.degrees()
        return all(
            (d < k) if w in (self.u, self.v) else (d == k) for w, d in enumerate(degs)
        )


@dataclass(frozen=True)
class TwoCut:
    u: int
    v: int
    sides: tuple[tuple[int, ...], tuple[int, ...]]


def glue_at_terminals(a: TerminalGraph, b: TerminalGraph) -> MultiGraph:
    """Identify ``a.u`` with ``b.u`` and ``a.v`` with ``b.v``.

    The result keeps ``a``'s labels; non-terminals of ``b`` follow in order.
    """
    na = a.graph.n
    label = {}
    nxt = na
    for w in range(b.graph.n):
        if w == b.u:
            label[w] = a.u
        elif w == b.v:
            label[w] = a.v
        else:
            label[w] = nxt
            nxt += 1
    edges = list(a.graph.edges()) + [(label[x], label[y]) for x, y in b.graph.edges()]
    shared = a.graph.mult(a.u, a.v) + b.graph.mult(b.u, b.v)
    if shared > 2:
        raise PreconditionError(f"terminal pair would get multiplicity {shared}")
    return MultiGraph(nxt, edges)


def two_cut_sides(g: MultiGraph, u: int, v: int) -> TwoCut:
    if u == v:
        raise PreconditionError("a 2-cut needs two distinct vertices")
    comps = components(g, (1 << u) | (1 << v))
    if len(comps) < 2:
        raise PreconditionError(f"{{{u}, {v}}} is not a 2-cut")
    if len(comps) > 2:
        raise PreconditionError(f"removing {{{u}, {v}}} leaves {len(comps)} components, expected 2")
    return TwoCut(u, v, (tuple(comps[0]), tuple(comps[1])))


def side_terminal_graph(g: MultiGraph, u: int, v: int, side: Sequence[int]) -> TerminalGraph:
    """``G[side + {u, v}]`` with terminals relabelled to 0 and 1."""
    keep = [u, v] + list(side)
    return TerminalGraph(g.induced(keep), 0, 1)


def count_via_2cut(g: MultiGraph, u: int, v: int, algo: str = "auto") -> CountResult:
    """Cycle count as the product of the two sides' hamiltonian u-v path counts."""
    t0 = time.perf_counter()
    cut = two_cut_sides(g, u, v)
    value = 1
    for side in cut.sides:
        value *= side_terminal_graph(g, u, v, side).path_count(algo)
    return CountResult(value, TWO_CUT, time.perf_counter() - t0)


def reduce_two_cut(g: MultiGraph, u: int, v: int, side: Sequence[int], algo: str = "auto") -> tuple[int, MultiGraph]:
    """Replace ``side`` by a single vertex joined to ``u`` and ``v``.

    Returns the side's path count and the reduced graph; the cycle count of
    ``g`` is their product times the reduced graph's count.
    """
    cut = two_cut_sides(g, u, v)
    if sorted(side) not in [sorted(s) for s in cut.sides]:
        raise PreconditionError("side is not a component of the 2-cut")
    factor = side_terminal_graph(g, u, v, side).path_count(algo)
    gone = set(side)
    keep = [w for w in range(g.n) if w not in gone]
    small = g.induced(keep)
    iu, iv = keep.index(u), keep.index(v)
    x = small.n
    return factor, small.with_edges(add=[(iu, x), (iv, x)], n=x + 1)


def count_by_reductions(g: MultiGraph, cuts: Sequence[tuple[int, int, Sequence[int]]],
                        algo: str = "auto") -> CountResult:
    """Apply several 2-cut reductions (labels refer to ``g``) and multiply the factors."""
    t0 = time.perf_counter()
    removed: set[int] = set()
    for u, v, side in cuts:
        if removed & set(side) or u in removed or v in removed:
            raise PreconditionError("reduction sides must be disjoint and avoid other cuts")
        removed |= set(side)
    keep = [w for w in range(g.n) if w not in removed]
    pos = {w: i for i, w in enumerate(keep)}
    value = 1
    extra = []
    for u, v, side in cuts:
        two_cut_sides(g, u, v)
        value *= side_terminal_graph(g, u, v, side).path_count(algo)
        extra.append((pos[u], pos[v]))
    base = g.induced(keep)
    n0 = base.n
    add = []
    for i, (a, b) in enumerate(extra):
        add += [(a, n0 + i), (b, n0 + i)]
    reduced = base.with_edges(add=add, n=n0 + len(extra))
    value *= count_ham_cycles(reduced, algo).value
    return CountResult(value, TWO_CUT, time.perf_counter() - t0)


# -- the Petersen gadget -----------------------------------------------------

PETERSEN_X = 0
# neighbours of vertex 0 in the fixed labeling, in label order: v', w', x'
PETERSEN_ROLES = (1, 4, 5)


def petersen_gadget() -> tuple[MultiGraph, tuple[int, int, int]]:
    """Petersen graph minus vertex 0 and the labels of its three former neighbours."""
    g, keep = petersen_graph().delete_vertices([PETERSEN_X])
    return g, tuple(keep.index(r) for r in PETERSEN_ROLES)


def _cycles(g: MultiGraph) -> list[CycleCertificate]:
    return list(enumerate_ham_cycles(g))


def _pair_usage(cycles: list[CycleCertificate], a: int, b: int) -> int:
    key = (min(a, b), max(a, b))
    return sum(1 for c in cycles for s in c.steps() if (min(s), max(s)) == key)


def _even_vertices(g: MultiGraph) -> list[int]:
    return [v for v, d in enumerate(g.degrees()) if d % 2 == 0]


def dagger(g: MultiGraph, x: int | None = None, e: tuple[int, int] | None = None) -> MultiGraph:
    """Trade edge ``e`` and vertex ``x`` for a Petersen-minus-vertex gadget.

    Input: exactly two hamiltonian cycles, ``x`` the only even-degree vertex,
    ``e`` on exactly one of the cycles and not incident to ``x``. ``x`` and
    ``e`` default to the unique even vertex and the first valid edge.
    Output: two hamiltonian cycles and ``deg(x)`` raised by 2.
    """
    cycles = _cycles(g)
    if len(cycles) != 2:
        raise PreconditionError(f"graph has {len(cycles)} hamiltonian cycles, expected 2")
    evens = _even_vertices(g)
    if len(evens) != 1:
        raise PreconditionError(f"graph has {len(evens)} even-degree vertices, expected 1")
    if x is None:
        x = evens[0]
    elif x != evens[0]:
        raise PreconditionError(f"vertex {x} is not the unique even-degree vertex {evens[0]}")

    def on_one_cycle(a: int, b: int) -> bool:
        # each copy of a doubled pair lies on the same number of cycles
        return _pair_usage(cycles, a, b) == g.mult(a, b)

    if e is None:
        cand = [(a, b) for a, b, _ in g.edge_pairs() if x not in (a, b) and on_one_cycle(a, b)]
        if not cand:
            raise PreconditionError("no edge lies on exactly one cycle away from x")
        e = cand[0]
    v, w = e
    if not g.has_edge(v, w):
        raise PreconditionError(f"{v}-{w} is not an edge")
    if x in (v, w):
        raise PreconditionError(f"edge {v}-{w} is incident to x = {x}")
    if not on_one_cycle(v, w):
        used = _pair_usage(cycles, v, w) // g.mult(v, w)
        raise PreconditionError(f"edge {v}-{w} lies on {used} hamiltonian cycles, expected 1")

    n = g.n
    pv, pw, px = PETERSEN_ROLES
    label = {px: x}
    nxt = n
    for p in range(10):
        if p in (PETERSEN_X, px):
            continue
        label[p] = nxt
        nxt += 1
    edges = list(g.with_edges(remove=[(v, w)]).edges())
    for a, b, _ in petersen_graph().edge_pairs():
        if PETERSEN_X in (a, b):
            continue
        edges.append((label[a], label[b]))
    edges += [(v, label[pv]), (w, label[pw])]
    out = MultiGraph(nxt, edges)

    got = count_ham_cycles(out).value
    if got != 2:
        raise ValidationError(f"dagger output has {got} hamiltonian cycles, expected 2")
    if _even_vertices(out) != [x] or out.degree(x) != g.degree(x) + 2:
        raise ValidationError("dagger output lost the unique even vertex property")
    return out


def _cubic_simple(g: MultiGraph, v: int) -> list[int]:
    if g.degree(v) != 3:
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)}, expected 3")
    nbrs = g.neighbors(v)
    if len(nbrs) != 3:
        raise PreconditionError(f"vertex {v} has a parallel edge")
    return nbrs


def rewire_roles(g: MultiGraph, v: int, cycles: list[CycleCertificate] | None = None) -> tuple[int, int, int] | None:
    """Neighbours (a, b, c) of cubic ``v`` with unique cycles through ac and bc and none through ab."""
    nbrs = _cubic_simple(g, v)
    if cycles is None:
        cycles = _cycles(g)
    through = Counter(frozenset(c.neighbor_map()[v]) for c in cycles)
    for a, b, c in permutations(nbrs):
        if (through[frozenset((a, c))] == 1 and through[frozenset((b, c))] == 1
                and through[frozenset((a, b))] == 0):
            return a, b, c
    return None


def double_rewire(g: MultiGraph, v: int | None = None) -> MultiGraph:
    """Two copies of ``g - v`` rewired into a uniquely hamiltonian graph.

    Hanging edges a, b, c of copy one join c', a', b' of copy two. Without
    ``v`` the first cubic vertex admitting a valid role assignment is used.
    """
    cycles = _cycles(g)
    if v is None:
        for cand in range(g.n):
            if g.degree(cand) == 3 and len(g.neighbors(cand)) == 3 and rewire_roles(g, cand, cycles):
                v = cand
                break
        else:
            raise PreconditionError("no cubic vertex admits a valid a, b, c assignment")
    roles = rewire_roles(g, v, cycles)
    if roles is None:
        raise PreconditionError(f"no valid a, b, c assignment at vertex {v}")
    a, b, c = roles
    h, keep = g.delete_vertices([v])
    pos = {w: i for i, w in enumerate(keep)}
    m = h.n
    edges = list(h.edges()) + [(x + m, y + m) for x, y in h.edges()]
    edges += [(pos[a], pos[c] + m), (pos[b], pos[a] + m), (pos[c], pos[b] + m)]
    out = MultiGraph(2 * m, edges)
    if not is_uniquely_hamiltonian(out):
        raise ValidationError("rewired double is not uniquely hamiltonian")
    return out


def expand_triangle(g: MultiGraph, v: int) -> MultiGraph:
    """Replace cubic ``v`` by a triangle; ``v`` keeps its first edge, two new vertices take the others."""
    a, b, c = _cubic_simple(g, v)
    n = g.n
    out = g.with_edges(
        remove=[(v, b), (v, c)],
        add=[(n, b), (n + 1, c), (v, n), (n, n + 1), (n + 1, v)],
        n=n + 2,
    )
    before, after = count_ham_cycles(g).value, count_ham_cycles(out).value
    if before != after:
        raise ValidationError(f"triangle expansion changed the count {before} -> {after}")
    return out


def _check_cert(g: MultiGraph, h: CycleCertificate) -> None:
    if not h.is_valid_for(g):
        raise PreconditionError("certificate is not a hamiltonian cycle of this graph")


def subdivide_cycle_edges(g: MultiGraph, h: CycleCertificate, keep_one: bool = False) -> MultiGraph:
    """Put a degree-2 vertex on every edge of ``h`` (all but the closing edge if ``keep_one``)."""
    _check_cert(g, h)
    steps = h.steps()
    if keep_one:
        steps = steps[:-1]
    n = g.n
    remove, add = [], []
    for i, (a, b) in enumerate(steps):
        remove.append((a, b))
        add += [(a, n + i), (n + i, b)]
    out = g.with_edges(remove=remove, add=add, n=n + len(steps))
    if not is_uniquely_hamiltonian(out):
        raise ValidationError("subdivided graph is not uniquely hamiltonian")
    return out


def chain_copies_with_cycle(g: MultiGraph, h: CycleCertificate, e: tuple[int, int],
                            m: int) -> tuple[MultiGraph, CycleCertificate]:
    """Ring of ``m`` copies of ``g - e`` and the hamiltonian cycle stitched from the copies of ``h``."""
    _check_cert(g, h)
    if m < 2:
        raise PreconditionError("chaining needs at least two copies")
    steps = h.steps()
    key = frozenset(e)
    idx = next((i for i, s in enumerate(steps) if frozenset(s) == key), None)
    if idx is None or len(key) != 2:
        raise PreconditionError(f"edge {e} is not on the cycle")
    n = g.n
    vs = list(h.vertices)
    # path of h - e, from the entry v_{i+1} around to the exit v_i
    order = vs[idx + 1:] + vs[: idx + 1]
    order_sel = list(h.selectors[idx + 1:]) + list(h.selectors[:idx])
    entry, exit_ = order[0], order[-1]
    base = g.with_edges(remove=[steps[idx]])
    edges = []
    for j in range(m):
        edges += [(j * n + a, j * n + b) for a, b in base.edges()]
    for j in range(m):
        edges.append((j * n + exit_, ((j + 1) % m) * n + entry))
    out = MultiGraph(m * n, edges)
    seq, sel = [], []
    for j in range(m):
        seq += [j * n + w for w in order]
        sel += order_sel + [0]
    cyc = CycleCertificate(tuple(seq), tuple(sel)).canonical()
    if not cyc.is_valid_for(out):
        raise ValidationError("stitched cycle is not a hamiltonian cycle of the chain")
    if sorted(out.degrees()) != sorted(g.degrees() * m):
        raise ValidationError("chaining changed the degree multiset")
    return out, cyc


def chain_copies(g: MultiGraph, h: CycleCertificate, e: tuple[int, int], m: int) -> MultiGraph:
    return chain_copies_with_cycle(g, h, e, m)[0]
