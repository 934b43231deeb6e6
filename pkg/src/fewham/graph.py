"""Undirected multigraphs with edge multiplicity at most 2, plus structural queries."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _config
from .errors import CapExceeded, GraphError, PreconditionError

MAX_MULTIPLICITY = 2


class MultiGraph:
    """Immutable labeled multigraph on vertices ``0..n-1``.

    ``edges`` may repeat a pair to give it multiplicity 2. Loops and higher
    multiplicities are rejected.
    """

    __slots__ = ("_n", "_m", "_nbr", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative order {n}")
        if n > _config.MAX_VERTICES:
            raise CapExceeded(f"order {n} exceeds vertex cap {_config.MAX_VERTICES}")
        m = np.zeros((n, n), dtype=np.int8)
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} has a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if m[u, v] >= MAX_MULTIPLICITY:
                raise GraphError(f"multiplicity of {min(u, v)}-{max(u, v)} would exceed {MAX_MULTIPLICITY}")
            m[u, v] += 1
            m[v, u] += 1
        self._set(m)

    def _set(self, m: np.ndarray) -> None:
        m.setflags(write=False)
        self._n = m.shape[0]
        self._m = m
        self._nbr = tuple(
            sum(1 << int(v) for v in np.flatnonzero(m[u])) for u in range(self._n)
        )
        self._hash = None

    @classmethod
    def from_matrix(cls, mat) -> "MultiGraph":
        a = np.array(mat, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError("adjacency matrix must be square")
        n = a.shape[0]
        if n > _config.MAX_VERTICES:
            raise CapExceeded(f"order {n} exceeds vertex cap {_config.MAX_VERTICES}")
        if (a != a.T).any():
            raise GraphError("adjacency matrix is not symmetric")
        if n and a.diagonal().any():
            raise GraphError("loops are not allowed")
        if ((a < 0) | (a > MAX_MULTIPLICITY)).any():
            raise GraphError(f"multiplicities must lie in 0..{MAX_MULTIPLICITY}")
        g = cls.__new__(cls)
        g._set(a.astype(np.int8))
        return g

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def matrix(self) -> np.ndarray:
        """Read-only multiplicity matrix."""
        return self._m

    def mult(self, u: int, v: int) -> int:
        return int(self._m[u, v])

    def nbr_mask(self, u: int) -> int:
        return self._nbr[u]

    @property
    def nbr_masks(self) -> tuple[int, ...]:
        return self._nbr

    def neighbors(self, u: int) -> list[int]:
        return [int(v) for v in np.flatnonzero(self._m[u])]

    def degree(self, u: int) -> int:
        return int(self._m[u].sum())

    def degrees(self) -> list[int]:
        return [int(d) for d in self._m.sum(axis=1)] if self._n else []

    def has_edge(self, u: int, v: int) -> bool:
        return self._m[u, v] > 0

    def edge_pairs(self) -> list[tuple[int, int, int]]:
        """Distinct adjacent pairs ``(u, v, multiplicity)`` with ``u < v``."""
        us, vs = np.nonzero(np.triu(self._m, 1))
        return [(int(u), int(v), int(self._m[u, v])) for u, v in zip(us, vs)]

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with parallel edges repeated, sorted."""
        out = []
        for u, v, k in self.edge_pairs():
            out.extend([(u, v)] * k)
        return out

    @property
    def num_edges(self) -> int:
        return int(np.triu(self._m, 1).sum())

    @property
    def is_simple(self) -> bool:
        return not (self._m > 1).any()

    # -- derived graphs --------------------------------------------------

    def relabel(self, perm: Sequence[int]) -> "MultiGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        p = np.asarray(perm, dtype=np.int64)
        if sorted(p.tolist()) != list(range(self._n)):
            raise GraphError("relabeling is not a permutation")
        inv = np.empty_like(p)
        inv[p] = np.arange(self._n)
        return MultiGraph.from_matrix(self._m[np.ix_(inv, inv)])

    def induced(self, vertices: Sequence[int]) -> "MultiGraph":
        """Induced subgraph; vertex ``vertices[i]`` becomes ``i``."""
        idx = np.asarray(list(vertices), dtype=np.int64)
        return MultiGraph.from_matrix(self._m[np.ix_(idx, idx)])

    def delete_vertices(self, vertices: Iterable[int]) -> tuple["MultiGraph", list[int]]:
        """Remove vertices; returns the graph and the kept original labels."""
        gone = set(vertices)
        keep = [v for v in range(self._n) if v not in gone]
        return self.induced(keep), keep

    def with_edges(self, add: Iterable[tuple[int, int]] = (), remove: Iterable[tuple[int, int]] = (),
                   n: int | None = None) -> "MultiGraph":
        """Copy with edges added/removed (one copy per listed pair), optionally grown to ``n``."""
        size = self._n if n is None else n
        if size < self._n:
            raise GraphError("cannot shrink with with_edges")
        m = np.zeros((size, size), dtype=np.int64)
        m[: self._n, : self._n] = self._m
        for u, v in remove:
            if m[u, v] == 0:
                raise GraphError(f"edge {u}-{v} not present")
            m[u, v] -= 1
            m[v, u] -= 1
        for u, v in add:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            m[u, v] += 1
            m[v, u] += 1
        return MultiGraph.from_matrix(m)

    def disjoint_union(self, other: "MultiGraph") -> "MultiGraph":
        a, b = self._n, other.n
        m = np.zeros((a + b, a + b), dtype=np.int64)
        m[:a, :a] = self._m
        m[a:, a:] = other.matrix
        return MultiGraph.from_matrix(m)

    def simple_underlying(self) -> "MultiGraph":
        return MultiGraph.from_matrix(np.minimum(self._m, 1))

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._n == other._n and np.array_equal(self._m, other._m)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._n, self._m.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        kind = "simple" if self.is_simple else "multi"
        return f"MultiGraph(n={self._n}, edges={self.num_edges}, {kind})"


# ---------------------------------------------------------------------------
# degree profile


@dataclass(frozen=True)
class DegreeProfile:
    """Multiset of vertex degrees, stored as sorted ``(degree, count)`` pairs."""

    counts: tuple[tuple[int, int], ...]

    @property
    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    @property
    def total(self) -> int:
        return sum(d * c for d, c in self.counts)

    @property
    def distinct(self) -> set[int]:
        return {d for d, _ in self.counts}

    def is_k_regular(self, k: int) -> bool:
        return self.distinct == {k}

    def is_kl_regular(self, k: int, l: int) -> bool:
        # all degrees in {k, l} and each of k, l actually occurs
        return self.distinct == {k, l}

    def __str__(self) -> str:
        return "{" + ", ".join(f"{d}x{c}" for d, c in self.counts) + "}"


def degree_profile(g: MultiGraph) -> DegreeProfile:
    c = Counter(g.degrees())
    return DegreeProfile(tuple(sorted(c.items())))


# ---------------------------------------------------------------------------
# structural queries


def complement(g: MultiGraph) -> MultiGraph:
    if not g.is_simple:
        raise PreconditionError("complement is defined for simple graphs only")
    n = g.n
    m = 1 - g.matrix.astype(np.int64)
    if n:
        np.fill_diagonal(m, 0)
    return MultiGraph.from_matrix(m)


def _reach(nbr: Sequence[int], start: int, allowed: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected(g: MultiGraph, removed: int = 0) -> bool:
    """Connectivity of ``g`` minus the vertex bitmask ``removed``."""
    allowed = ((1 << g.n) - 1) & ~removed
    if allowed == 0:
        return True
    start = (allowed & -allowed).bit_length() - 1
    return _reach(g.nbr_masks, start, allowed) == allowed


def components(g: MultiGraph, removed: int = 0) -> list[list[int]]:
    """Connected components (sorted vertex lists, ordered by least vertex)."""
    left = ((1 << g.n) - 1) & ~removed
    out = []
    while left:
        start = (left & -left).bit_length() - 1
        comp = _reach(g.nbr_masks, start, left)
        out.append([v for v in range(g.n) if comp >> v & 1])
        left &= ~comp
    return out


def is_bipartite(g: MultiGraph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def _local_connectivity(nbr: Sequence[int], n: int, s: int, t: int) -> int:
    """Max number of internally disjoint s-t paths (s, t non-adjacent), by unit flows on a split graph."""
    # node v -> (v_in = 2v, v_out = 2v+1); capacity 1 on v_in->v_out except s, t
    cap: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            adj[a].append(b)
            adj[b].append(a)
            cap.setdefault((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    big = n
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        m = nbr[v]
        while m:
            low = m & -m
            w = low.bit_length() - 1
            arc(2 * v + 1, 2 * w, big)
            m ^= low
    src, dst = 2 * s + 1, 2 * t
    flow = 0
    while True:
        parent = {src: src}
        queue = [src]
        for a in queue:
            if a == dst:
                break
            for b in adj[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if dst not in parent:
            return flow
        b = dst
        while b != src:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1


def vertex_connectivity(g: MultiGraph) -> int:
    """Exact vertex connectivity; cuts of size <= 3 by enumeration, larger by flows."""
    n = g.n
    if n < 2:
        raise PreconditionError("vertex connectivity needs n >= 2")
    nbr = g.nbr_masks
    full = (1 << n) - 1
    if all(nbr[v] == full & ~(1 << v) for v in range(n)):
        return n - 1
    for size in range(0, 4):
        if size > n - 2:
            break
        for cut in combinations(range(n), size):
            mask = sum(1 << v for v in cut)
            if not is_connected(g, mask):
                return size
    best = n - 1
    for s in range(n):
        for t in range(s + 1, n):
            if not nbr[s] >> t & 1:
                best = min(best, _local_connectivity(nbr, n, s, t))
    return best


# ---------------------------------------------------------------------------
# small named graphs


def empty_graph(n: int) -> MultiGraph:
    return MultiGraph(n)


def complete_graph(n: int) -> MultiGraph:
    return MultiGraph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> MultiGraph:
    if n < 3:
        raise GraphError("a simple cycle needs n >= 3")
    return MultiGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> MultiGraph:
    return MultiGraph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return MultiGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def prism_graph(k: int = 3) -> MultiGraph:
    """C_k x K_2; the triangular prism for k = 3."""
    edges = [(i, (i + 1) % k) for i in range(k)]
    edges += [(k + i, k + (i + 1) % k) for i in range(k)]
    edges += [(i, k + i) for i in range(k)]
    return MultiGraph(2 * k, edges)


def doubled_triangle() -> MultiGraph:
    """Triangle on 0, 1, 2 with the edge 0-1 doubled."""
    return MultiGraph(3, [(0, 1), (0, 1), (1, 2), (2, 0)])


def petersen_graph() -> MultiGraph:
    """Outer cycle 0..4, spokes i-(i+5), inner pentagram 5-7-9-6-8."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return MultiGraph(10, edges)
