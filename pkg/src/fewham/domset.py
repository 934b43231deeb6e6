"""Minimal dominating sets and cycle-independent domination.

Domination uses closed neighbourhoods. For a simple graph ``G`` with a
hamiltonian cycle ``h``, a set is h-independent when no two members are
consecutive on ``h``; the question is whether some h-independent set
dominates the remaining (green) edges ``G - E(h)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import _config, kernels
from .canon import automorphism_generators
from .composition import chain_copies_with_cycle
from .enumeration import CycleCertificate, _simple_cycle_blocks, count_ham_cycles
from .errors import CapExceeded, PreconditionError, ValidationError
from .generation import GenerationSpec, generate_graphs
from .graph import MultiGraph, complement

DOMSET_MAX = 40


def _closed(g: MultiGraph) -> list[int]:
    return [m | (1 << v) for v, m in enumerate(g.nbr_masks)]


def _mask_members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _enum_minimal(closed: Sequence[int], n: int, forbid: Sequence[int] | None = None,
                  stop_first: bool = False) -> list[int]:
    """Minimal dominating sets as bitmasks.

    Branch on the first undominated vertex: each member of its closed
    neighbourhood in turn, earlier members excluded. A branch dies once a
    chosen vertex has no private neighbour left. With ``forbid`` (vertex ->
    mask of vertices that may not be chosen together with it), only sets
    independent under ``forbid`` are produced.
    """
    full = (1 << n) - 1
    out: list[int] = []

    def rec(chosen: int, once: int, many: int, excluded: int) -> bool:
        dominated = once | many
        if dominated == full:
            out.append(chosen)
            return stop_first
        free = full & ~dominated
        u = (free & -free).bit_length() - 1
        cands = closed[u] & ~excluded
        if forbid is not None:
            m = chosen
            while m:
                low = m & -m
                cands &= ~forbid[low.bit_length() - 1]
                m ^= low
        tried = 0
        while cands:
            low = cands & -cands
            c = low.bit_length() - 1
            cands ^= low
            nc = closed[c]
            new_many = many | (once & nc)
            new_once = (once & ~nc) | (nc & ~dominated)
            ok = True
            m = chosen
            while m:
                lb = m & -m
                if closed[lb.bit_length() - 1] & new_once == 0:
                    ok = False
                    break
                m ^= lb
            if ok and rec(chosen | low, new_once, new_many, excluded | tried):
                return True
            tried |= low
        return False

    if n:
        rec(0, 0, 0, 0)
    else:
        out.append(0)
    return sorted(out)


def minimal_dominating_sets(g: MultiGraph) -> list[frozenset[int]]:
    """All inclusion-minimal dominating sets, sorted by their bitmasks."""
    return [frozenset(_mask_members(m)) for m in minimal_dominating_masks(g)]


def minimal_dominating_masks(g: MultiGraph) -> list[int]:
    if not g.is_simple:
        raise PreconditionError("domination is computed on simple graphs")
    if g.n > DOMSET_MAX:
        raise CapExceeded(f"order {g.n} exceeds the dominating-set cap {DOMSET_MAX}")
    return _enum_minimal(_closed(g), g.n)


@dataclass(frozen=True)
class RedGreenInstance:
    """A simple graph split into a hamiltonian cycle (red) and the other edges (green)."""

    graph: MultiGraph
    cycle: CycleCertificate

    def __post_init__(self):
        if not self.graph.is_simple:
            raise PreconditionError("red-green instances use simple graphs")
        if not self.cycle.is_valid_for(self.graph):
            raise PreconditionError("cycle is not hamiltonian in the graph")

    @classmethod
    def from_green(cls, green: MultiGraph, cycle: CycleCertificate) -> "RedGreenInstance":
        """Graph formed by adding the cycle to ``green`` (the cycle must avoid green edges)."""
        if any(green.has_edge(a, b) for a, b in cycle.steps()):
            raise PreconditionError("cycle uses an edge of the green graph")
        return cls(green.with_edges(add=cycle.steps()), cycle)

    @property
    def red(self) -> MultiGraph:
        return MultiGraph(self.graph.n, self.cycle.steps())

    @property
    def green(self) -> MultiGraph:
        return self.graph.with_edges(remove=self.cycle.steps())


def _red_forbid(cycle: CycleCertificate, n: int) -> list[int]:
    forbid = [0] * n
    for a, b in cycle.steps():
        forbid[a] |= 1 << b
        forbid[b] |= 1 << a
    return forbid


def has_h_independent_dominating_set(inst: RedGreenInstance) -> tuple[bool, frozenset[int] | None]:
    """Whether some cycle-independent set dominates the green graph, with a witness."""
    green = inst.green
    n = green.n
    found = _enum_minimal(_closed(green), n, _red_forbid(inst.cycle, n), stop_first=True)
    if found:
        return True, frozenset(_mask_members(found[0]))
    return False, None


def is_h_independent(mask: int, cycle: CycleCertificate) -> bool:
    return all(not ((mask >> a) & 1 and (mask >> b) & 1) for a, b in cycle.steps())


@dataclass
class DomSetReport:
    """A green graph, a cycle in its complement, and the minimal dominating sets of the green graph.

    ``verdict`` is True when one of the sets is independent along the cycle.
    """

    green: MultiGraph
    cycle: CycleCertificate
    dominating: list[int] = field(repr=False)
    verdict: bool

    @property
    def instance(self) -> RedGreenInstance:
        return RedGreenInstance.from_green(self.green, self.cycle)

    def recheck(self) -> bool:
        """Recompute the verdict from scratch."""
        masks = minimal_dominating_masks(self.green)
        return any(is_h_independent(m, self.cycle) for m in masks)

    def to_text(self) -> str:
        from .graph_io import write_graph

        return "\n".join([
            write_graph(self.green),
            self.cycle.to_text(),
            str(len(self.dominating)),
            "independent" if self.verdict else "none",
        ])


@dataclass
class PairSearchResult:
    r: int
    n: int
    bipartite_only: bool
    connected_only: bool
    pairs: int  # every cycle of each isomorphism-class representative
    orbit_pairs: int  # cycles up to automorphisms of the representative
    green_graphs: int
    reports: list[DomSetReport] = field(default_factory=list, repr=False)


def _cycle_key(vs: Sequence[int]) -> frozenset:
    k = len(vs)
    return frozenset((min(vs[i], vs[(i + 1) % k]), max(vs[i], vs[(i + 1) % k])) for i in range(k))


def _cert_from_edges(edges: frozenset, n: int) -> CycleCertificate:
    nbr: dict[int, list[int]] = {v: [] for v in range(n)}
    for a, b in edges:
        nbr[a].append(b)
        nbr[b].append(a)
    seq = [0, min(nbr[0])]
    while len(seq) < n:
        a, b = nbr[seq[-1]]
        seq.append(a if a != seq[-2] else b)
    return CycleCertificate(tuple(seq), (0,) * n)


def negative_cycles_of(green: MultiGraph, use_jit: bool | None = None) -> tuple[list[frozenset], list[int]]:
    """Hamiltonian cycles of the complement admitting no independent minimal dominating set."""
    masks = minimal_dominating_masks(green)
    dom = np.array(masks, dtype=np.int64)
    k = kernels.get(use_jit)
    neg: list[frozenset] = []
    for block in _simple_cycle_blocks(complement(green), use_jit):
        cyc = np.ascontiguousarray(block, dtype=np.int64)
        flags = k.negative_cycles(cyc, len(cyc), green.n, dom, len(masks))
        neg += [_cycle_key(cyc[i].tolist()) for i in np.flatnonzero(flags)]
    return neg, masks


def cycle_orbits(cycles: list[frozenset], gens: list[tuple[int, ...]]) -> list[list[frozenset]]:
    """Orbits of an automorphism-closed cycle family (edge sets) under the group generated by ``gens``."""
    index = {c: i for i, c in enumerate(cycles)}
    parent = list(range(len(cycles)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in gens:
        for i, c in enumerate(cycles):
            img = frozenset((min(p[a], p[b]), max(p[a], p[b])) for a, b in c)
            j = index.get(img)
            if j is None:
                raise ValidationError("cycle family is not closed under automorphisms")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[frozenset]] = {}
    for i, c in enumerate(cycles):
        groups.setdefault(find(i), []).append(c)
    return [groups[k] for k in sorted(groups)]


def search_pairs(r: int, n: int, bipartite_only: bool = False, connected_only: bool = False,
                 force: bool = False, keep_reports: bool = True, use_jit: bool | None = None) -> PairSearchResult:
    """Pairs (G', h): G' r-regular on n vertices, h a hamiltonian cycle of its complement,
    no minimal dominating set of G' independent along h.

    One G' is taken per isomorphism class. ``pairs`` counts every qualifying
    cycle of each representative as a separate pair; ``orbit_pairs`` counts
    them up to automorphisms of G'.
    """
    spec = GenerationSpec(n, "regular", r, connected=connected_only, bipartite_only=bipartite_only)
    pairs = orbit_pairs = graphs = 0
    reports: list[DomSetReport] = []
    for green in generate_graphs(spec, force=force, use_jit=use_jit):
        graphs += 1
        neg, masks = negative_cycles_of(green, use_jit)
        if not neg:
            continue
        pairs += len(neg)
        orbit_pairs += len(cycle_orbits(neg, automorphism_generators(green)))
        if keep_reports:
            for c in sorted(neg, key=sorted):
                reports.append(DomSetReport(green, _cert_from_edges(c, n), masks, False))
    return PairSearchResult(r, n, bipartite_only, connected_only, pairs, orbit_pairs, graphs, reports)


def amplify_family(report: DomSetReport, m: int) -> tuple[MultiGraph, CycleCertificate]:
    """Chain ``m`` copies of the full graph along its cycle and re-verify there is still no independent dominating set."""
    if report.verdict:
        raise PreconditionError("report has an independent dominating set; nothing to amplify")
    if m < 2:
        raise PreconditionError("amplification needs m >= 2")
    inst = report.instance
    a, b = inst.cycle.vertices[0], inst.cycle.vertices[1]
    big, cyc = chain_copies_with_cycle(inst.graph, inst.cycle, (a, b), m)
    if big.n > _config.KERNEL_MAX_VERTICES and big.n > DOMSET_MAX:
        raise CapExceeded("amplified graph is too large to verify")
    ok, _ = has_h_independent_dominating_set(RedGreenInstance(big, cyc))
    if ok:
        raise ValidationError("amplified graph gained an independent dominating set")
    return big, cyc


def thomassen_cross_check(inst: RedGreenInstance) -> bool:
    """An independent dominating set implies a second hamiltonian cycle; True if consistent."""
    ok, _ = has_h_independent_dominating_set(inst)
    if not ok:
        return True
    return count_ham_cycles(inst.graph).value >= 2
