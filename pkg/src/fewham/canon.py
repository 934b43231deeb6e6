"""Canonical forms and automorphisms of small multigraphs.

Equitable partition refinement followed by an individualization search that
keeps the lexicographically smallest adjacency encoding. Automorphisms found
at equal leaves prune the search (orbit pruning and backjumping), and they
generate the full automorphism group.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _config
from .errors import CapExceeded
from .graph import MultiGraph


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Ctx:
    def __init__(self, g: MultiGraph):
        self.n = g.n
        self.nbr1 = list(g.nbr_masks)
        m = g.matrix
        self.nbr2 = [sum(1 << v for v in range(g.n) if m[u, v] == 2) for u in range(g.n)]
        self.multi = any(self.nbr2)
        self.mat = [[int(x) for x in row] for row in m]
        self.first_path: list[int] | None = None
        self.first_leaf: list[int] | None = None
        self.first_code: tuple | None = None
        self.best_path: list[int] | None = None
        self.best_leaf: list[int] | None = None
        self.best_code: tuple | None = None
        self.gens: list[tuple[int, ...]] = []

    def weight(self, v: int, mask: int) -> int:
        w = _popcount(self.nbr1[v] & mask)
        if self.multi:
            w += _popcount(self.nbr2[v] & mask)
        return w

    def refine(self, cells: list[list[int]], queue: list[int]) -> list[list[int]]:
        """Equitable refinement; ``queue`` holds splitter vertex masks."""
        cells = [c[:] for c in cells]
        while queue:
            w = queue.pop(0)
            out: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault(self.weight(v, w), []).append(v)
                if len(groups) == 1:
                    out.append(cell)
                    continue
                for key in sorted(groups):
                    part = groups[key]
                    out.append(part)
                    queue.append(sum(1 << v for v in part))
            cells = out
        return cells

    def code(self, leaf: list[int]) -> tuple:
        # leaf[i] = vertex at position i; encoding in graph6 column order
        mat = self.mat
        return tuple(mat[leaf[i]][leaf[j]] for j in range(1, self.n) for i in range(j))


def _orbits(gens: list[tuple[int, ...]], n: int, fixed: list[int]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if any(g[v] != v for v in fixed):
            continue
        for v in range(n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def _common_prefix(a: list[int], b: list[int]) -> int:
    k = 0
    while k < len(a) and k < len(b) and a[k] == b[k]:
        k += 1
    return k


def _search(ctx: _Ctx, cells: list[list[int]], path: list[int]) -> int:
    """Explore the subtree at ``path``; returns the depth to resume at."""
    depth = len(path)
    if all(len(c) == 1 for c in cells):
        leaf = [c[0] for c in cells]
        code = ctx.code(leaf)
        if ctx.first_leaf is None:
            ctx.first_path, ctx.first_leaf, ctx.first_code = path[:], leaf, code
            ctx.best_path, ctx.best_leaf, ctx.best_code = path[:], leaf, code
            return depth
        for ref_code, ref_leaf, ref_path in (
            (ctx.first_code, ctx.first_leaf, ctx.first_path),
            (ctx.best_code, ctx.best_leaf, ctx.best_path),
        ):
            if code == ref_code:
                # gamma maps the current leaf onto the reference leaf
                gamma = [0] * ctx.n
                for pos, v in enumerate(leaf):
                    gamma[v] = ref_leaf[pos]
                gamma_t = tuple(gamma)
                if gamma_t != tuple(range(ctx.n)) and gamma_t not in ctx.gens:
                    ctx.gens.append(gamma_t)
                return _common_prefix(path, ref_path)
        if code < ctx.best_code:
            ctx.best_path, ctx.best_leaf, ctx.best_code = path[:], leaf, code
        return depth

    ti = next(i for i, c in enumerate(cells) if len(c) > 1)
    target = sorted(cells[ti])
    explored: list[int] = []
    for v in target:
        if explored:
            orb = _orbits(ctx.gens, ctx.n, path)
            if any(orb[v] == orb[u] for u in explored):
                continue
        rest = [u for u in cells[ti] if u != v]
        child = cells[:ti] + [[v], rest] + cells[ti + 1:]
        child = ctx.refine(child, [1 << v])
        back = _search(ctx, child, path + [v])
        explored.append(v)
        if back < depth:
            return back
    return depth


@dataclass
class CanonResult:
    form: bytes
    labeling: list[int]  # labeling[v] = canonical position of v
    generators: list[tuple[int, ...]] = field(default_factory=list)


def canonical_labeling(g: MultiGraph) -> CanonResult:
    if g.n > _config.MAX_VERTICES:
        raise CapExceeded(f"order {g.n} exceeds canonical-form cap {_config.MAX_VERTICES}")
    n = g.n
    if n == 0:
        return CanonResult(bytes([0]), [], [])
    ctx = _Ctx(g)
    # initial partition by degree (weighted refinement against the full set)
    cells = ctx.refine([list(range(n))], [(1 << n) - 1])
    _search(ctx, cells, [])
    leaf = ctx.best_leaf
    lab = [0] * n
    for pos, v in enumerate(leaf):
        lab[v] = pos
    form = bytes([n]) + bytes(ctx.best_code)
    return CanonResult(form, lab, ctx.gens)


def canonical_form(g: MultiGraph) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic (as multigraphs)."""
    return canonical_labeling(g).form


def canonical_graph(g: MultiGraph) -> MultiGraph:
    return g.relabel(canonical_labeling(g).labeling)


def is_isomorphic(a: MultiGraph, b: MultiGraph) -> bool:
    if a.n != b.n or a.num_edges != b.num_edges or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a) == canonical_form(b)


def automorphism_generators(g: MultiGraph) -> list[tuple[int, ...]]:
    """Generators of Aut(g); each is a tuple ``p`` with ``p[v]`` the image of ``v``."""
    return canonical_labeling(g).generators


def group_order(gens: list[tuple[int, ...]], n: int, limit: int = 10**6) -> int:
    """Order of the permutation group generated by ``gens`` (by closure; small groups only)."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[v]] for v in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
                    if len(seen) > limit:
                        raise CapExceeded("group closure exceeds limit")
        frontier = nxt
    return len(seen)
