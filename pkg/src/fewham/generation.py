"""Isomorph-free generation of graphs with prescribed degrees, and minimum-count searches.

Graphs are built one vertex at a time. Each vertex is attached to a set of
earlier vertices and the result is kept only if its adjacency string (the
upper triangle read column by column) is the lexicographic maximum over all
relabelings. Prefixes of a maximal labeling are maximal, so every
isomorphism class is produced exactly once without a global table.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

import numpy as np

from . import _config, kernels
from .canon import canonical_form
from .composition import TerminalGraph, glue_at_terminals
from .enumeration import count_ham_cycles, count_ham_st_paths
from .errors import CapExceeded, PreconditionError, ValidationError
from .graph import MultiGraph, complement, is_bipartite, is_connected, vertex_connectivity

log = logging.getLogger(__name__)

REGULAR = "regular"
BIREGULAR = "biregular"
NEARLY = "nearly"
ANY = "any"
KINDS = (REGULAR, BIREGULAR, NEARLY, ANY)
INFINITY = math.inf


@dataclass(frozen=True)
class GenerationSpec:
    """Degree class of simple graphs on ``n`` vertices.

    ``regular``: every degree is ``k``. ``biregular``: degrees in ``{k, l}``
    with both present. ``nearly``: degree ``k`` except for exactly two
    vertices of smaller degree. ``any``: no degree constraint (``k`` ignored).
    """

    n: int
    kind: str
    k: int = 0
    l: int | None = None
    connected: bool = True
    bipartite_only: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown degree class {self.kind!r}")
        if self.kind == BIREGULAR and (self.l is None or self.l == self.k):
            raise PreconditionError("a biregular class needs two distinct degrees")
        if self.n < 1:
            raise PreconditionError("order must be positive")

    @classmethod
    def for_degrees(cls, degrees, n: int, **kw) -> "GenerationSpec":
        ds = sorted({int(d) for d in (degrees if hasattr(degrees, "__iter__") else [degrees])})
        if len(ds) == 1:
            return cls(n, REGULAR, ds[0], **kw)
        if len(ds) == 2:
            return cls(n, BIREGULAR, ds[0], ds[1], **kw)
        raise PreconditionError("give one degree or two distinct degrees")

    def allowed(self) -> tuple[int, ...]:
        if self.kind == REGULAR:
            return (self.k,)
        if self.kind == BIREGULAR:
            return tuple(sorted((self.k, self.l)))
        if self.kind == ANY:
            return tuple(range(self.n))
        return tuple(range(0, self.k + 1))

    def infeasible_reason(self) -> str | None:
        n = self.n
        if self.kind == ANY:
            return None
        if max(self.allowed()) > n - 1:
            if self.kind == NEARLY:
                if self.k > n - 1:
                    return f"degree {self.k} needs at least {self.k + 1} vertices"
            elif self.kind == REGULAR or min(self.allowed()) > n - 1:
                return f"degree {max(self.allowed())} needs at least {max(self.allowed()) + 1} vertices"
        if self.kind == REGULAR and (n * self.k) % 2:
            return f"n*k = {n}*{self.k} is odd"
        if self.kind == BIREGULAR:
            if self.k % 2 and self.l % 2 and n % 2:
                return "two odd degrees on an odd number of vertices"
            if self.l > n - 1:
                return f"degree {self.l} needs at least {self.l + 1} vertices"
        if self.kind == NEARLY and n < 3:
            return "a nearly regular graph needs at least three vertices"
        return None

    def accepts(self, g: MultiGraph) -> bool:
        if g.n != self.n or not g.is_simple:
            return False
        degs = g.degrees()
        if self.kind == REGULAR:
            ok = all(d == self.k for d in degs)
        elif self.kind == BIREGULAR:
            ok = set(degs) == {self.k, self.l}
        elif self.kind == ANY:
            ok = True
        else:
            ok = all(d <= self.k for d in degs) and sum(d < self.k for d in degs) == 2
        if ok and self.connected:
            ok = is_connected(g)
        if ok and self.bipartite_only:
            ok = is_bipartite(g)
        return ok

    def effective_degree(self) -> int:
        """Degree bound the search actually works with (after complementing dense classes)."""
        if _use_complement(self):
            return self.n - 1 - min(self.allowed())
        return max(self.allowed())


def desk_cap(eff_degree: int) -> int:
    """Largest order generated without ``force`` for a given effective degree."""
    base = _config.GEN_MAX
    if eff_degree <= 3:
        return base
    if eff_degree == 4:
        return min(base, 12)
    if eff_degree == 5:
        return min(base, 11)
    return min(base, 10)


def _use_complement(spec: GenerationSpec) -> bool:
    if spec.kind in (NEARLY, ANY) or spec.bipartite_only:
        return False
    allowed = spec.allowed()
    return sum(allowed) / len(allowed) > (spec.n - 1) / 2


# -- the orderly search ------------------------------------------------------


class _Orderly:
    def __init__(self, n: int, allowed: tuple[int, ...], nearly_k: int | None, bipartite: bool,
                 use_jit: bool | None):
        self.n = n
        self.allowed = sorted(allowed)
        self.dmax = self.allowed[-1]
        self.nearly_k = nearly_k
        self.bipartite = bipartite
        self.k = kernels.get(use_jit)
        self.adj = np.zeros(n, dtype=np.int64)
        self.deg = [0] * n
        self.col = [0] * n
        self.out: list[np.ndarray] = []
        # need[d][r]: True if degree d can still reach an allowed value with r more edges
        self.reach = [[any(a >= d and a - d <= r for a in self.allowed) for r in range(n + 1)]
                      for d in range(self.dmax + 2)]

    def _feasible(self, j: int) -> bool:
        # vertices 0..j placed; r later vertices remain
        r = self.n - 1 - j
        if self.nearly_k is not None:
            short = 0
            for i in range(j + 1):
                if self.deg[i] + r < self.nearly_k:
                    short += 1
            if short > 2:
                return False
            if j == self.n - 1:
                return short == 2
            return True
        reach = self.reach
        for i in range(j + 1):
            if not reach[self.deg[i]][r]:
                return False
        return True

    def run(self) -> list[np.ndarray]:
        if self.n == 0:
            return []
        self._extend(1)
        return self.out

    def _extend(self, j: int) -> None:
        n = self.n
        if j == n:
            self.out.append(self.adj.copy())
            return
        avail = [i for i in range(j) if self.deg[i] < self.dmax]
        r = n - 1 - j
        lo = 0
        if self.nearly_k is None:
            lo = max(0, self.allowed[0] - r)
        hi = min(self.dmax, len(avail))
        prev = self.col[j - 1] if j >= 2 else None
        for size in range(hi, lo - 1, -1):
            for B in combinations(avail, size):
                col = 0
                for i in B:
                    col |= 1 << (j - 1 - i)
                # swapping j-1 and j must not increase the string
                if prev is not None and (col >> 1) > prev:
                    continue
                self._place(j, B, col)
                if (self._feasible(j) and (not self.bipartite or _bipartite_masks(self.adj, j + 1))
                        and self.k.is_max_column_string(self.adj, j + 1)):
                    self._extend(j + 1)
                self._unplace(j, B)

    def _place(self, j, B, col):
        bit = np.int64(1) << j
        for i in B:
            self.adj[i] |= bit
            self.adj[j] |= np.int64(1) << i
            self.deg[i] += 1
        self.deg[j] = len(B)
        self.col[j] = col

    def _unplace(self, j, B):
        for i in B:
            self.adj[i] &= ~(np.int64(1) << j)
            self.deg[i] -= 1
        self.adj[j] = 0
        self.deg[j] = 0
        self.col[j] = 0


def _bipartite_masks(adj: np.ndarray, m: int) -> bool:
    color = [-1] * m
    for s in range(m):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            nb = int(adj[u])
            while nb:
                low = nb & -nb
                w = low.bit_length() - 1
                nb ^= low
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    stack.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def _masks_to_graph(adj: np.ndarray) -> MultiGraph:
    n = len(adj)
    return MultiGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if (int(adj[u]) >> v) & 1])


def _key(adj: np.ndarray) -> bytes:
    n = len(adj)
    return bytes((int(adj[u]) >> v) & 1 for v in range(1, n) for u in range(v))


def generate_graphs(spec: GenerationSpec, force: bool = False, use_jit: bool | None = None) -> Iterator[MultiGraph]:
    """One graph per isomorphism class of ``spec``, in a fixed canonical order."""
    reason = spec.infeasible_reason()
    if reason:
        log.info("no graphs for %s: %s", spec, reason)
        return iter(())
    eff = spec.effective_degree()
    if spec.n > desk_cap(eff) and not force:
        raise CapExceeded(
            f"order {spec.n} with effective degree {eff} is beyond the desk cap {desk_cap(eff)}; pass force"
        )
    if spec.n > _config.KERNEL_MAX_VERTICES:
        raise CapExceeded(f"order {spec.n} exceeds the kernel limit")
    return iter(_generate(spec, use_jit))


def _generate(spec: GenerationSpec, use_jit: bool | None) -> list[MultiGraph]:
    n = spec.n
    if _use_complement(spec):
        allowed = tuple(sorted({n - 1 - a for a in spec.allowed()}))
        raw = _Orderly(n, allowed, None, False, use_jit).run()
        found = []
        for adj in raw:
            g = complement(_masks_to_graph(adj))
            if spec.accepts(g):
                # complement of a canonical string is canonical for the complement
                found.append((bytes(1 - b for b in _key(adj)), g))
    else:
        nearly = spec.k if spec.kind == NEARLY else None
        raw = _Orderly(n, spec.allowed(), nearly, spec.bipartite_only, use_jit).run()
        found = []
        for adj in raw:
            g = _masks_to_graph(adj)
            if spec.accepts(g):
                found.append((_key(adj), g))
    found.sort(key=lambda t: t[0])
    return [g for _, g in found]


def canonical_dedup(graphs) -> list[MultiGraph]:
    """Keep the first graph of each isomorphism class, ordered by canonical form."""
    seen: dict[bytes, MultiGraph] = {}
    for g in graphs:
        seen.setdefault(canonical_form(g), g)
    return [seen[k] for k in sorted(seen)]


# -- minimum counts -----------------------------------------------------------


@dataclass
class MinimumResult:
    """Minimum positive hamiltonian cycle count over a class, with every minimizer."""

    value: float | int
    witnesses: list[MultiGraph] = field(default_factory=list)
    examined: int = 0
    hamiltonian: int = 0

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITY

    def value_text(self) -> str:
        return "inf" if self.is_infinite else str(self.value)


def compute_hn(degrees, n: int, force: bool = False, algo: str = "auto",
               bipartite_only: bool = False) -> MinimumResult:
    """h_n for a degree set: fewest hamiltonian cycles of a hamiltonian member of the class."""
    spec = GenerationSpec.for_degrees(degrees, n, connected=True, bipartite_only=bipartite_only)
    best: float | int = INFINITY
    wits: list[MultiGraph] = []
    examined = ham = 0
    for g in generate_graphs(spec, force=force):
        examined += 1
        c = count_ham_cycles(g, algo).value
        if c == 0:
            continue
        ham += 1
        if c < best:
            best, wits = c, [g]
        elif c == best:
            wits.append(g)
    return MinimumResult(best, wits, examined, ham)


@dataclass(frozen=True)
class _Side:
    graph: MultiGraph
    u: int
    v: int
    du: int
    dv: int
    paths: int
    has_uv: bool


def _sides(k: int, m: int, force: bool) -> list[_Side]:
    out = []
    spec = GenerationSpec(m, NEARLY, k, connected=True)
    for g in generate_graphs(spec, force=force):
        degs = g.degrees()
        u, v = [w for w in range(m) if degs[w] < k]
        if not is_connected(g, (1 << u) | (1 << v)):
            continue
        p = count_ham_st_paths(g, u, v).value
        if p == 0:
            continue
        out.append(_Side(g, u, v, degs[u], degs[v], p, g.has_edge(u, v)))
    return out


def compute_hn2(k: int, n: int, force: bool = False, verify: bool = True) -> MinimumResult:
    """Fewest hamiltonian cycles of a k-regular graph of order n with connectivity exactly 2.

    Such a graph splits at a 2-cut into two nearly k-regular pieces whose
    terminal degrees add up to k; its count is the product of the pieces'
    terminal-to-terminal hamiltonian path counts. Minimizers are merged by
    isomorphism class and checked by a direct count.
    """
    if k < 3:
        raise PreconditionError("connectivity-2 search needs k >= 3")
    lo, hi = k + 1, n + 2 - (k + 1)
    sides = {m: _sides(k, m, force) for m in range(lo, hi + 1)} if hi >= lo else {}
    best: float | int = INFINITY
    hits: list[tuple[_Side, _Side, bool]] = []
    examined = 0
    for ma in range(lo, hi + 1):
        mb = n + 2 - ma
        if mb < ma:
            break
        for i, a in enumerate(sides[ma]):
            for j, b in enumerate(sides[mb]):
                if ma == mb and j < i:
                    continue
                if a.has_uv and b.has_uv:
                    continue
                prod = a.paths * b.paths
                if prod > best:
                    continue
                for flip in (False, True):
                    bu, bv = (b.v, b.u) if flip else (b.u, b.v)
                    du, dv = (b.dv, b.du) if flip else (b.du, b.dv)
                    if a.du + du != k or a.dv + dv != k:
                        continue
                    examined += 1
                    if prod < best:
                        best, hits = prod, []
                    hits.append((a, TerminalGraph(b.graph, bu, bv), flip))
    wits: dict[bytes, MultiGraph] = {}
    for a, tb, _ in hits:
        g = glue_at_terminals(TerminalGraph(a.graph, a.u, a.v), tb)
        wits.setdefault(canonical_form(g), g)
    witnesses = [wits[c] for c in sorted(wits)]
    if verify:
        for g in witnesses:
            if any(d != k for d in g.degrees()) or g.n != n:
                raise ValidationError("glued witness is not k-regular of order n")
            c = count_ham_cycles(g).value
            if c != best:
                raise ValidationError(f"glued witness has {c} cycles, expected {best}")
            if vertex_connectivity(g) != 2:
                raise ValidationError("glued witness does not have connectivity 2")
    return MinimumResult(best, witnesses, examined, len(hits))
