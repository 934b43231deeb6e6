"""Explicit graph families and embedded example graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import permutations
from typing import Sequence

from . import _config
from .composition import count_by_reductions, petersen_gadget as _gadget
from .enumeration import CountResult, count_ham_st_paths
from .errors import CapExceeded, PreconditionError, ValidationError
from .graph import MultiGraph, petersen_graph
from .graph_io import iter_records, parse_multi_edge_list


@dataclass
class Fig1Blueprint:
    """Vertex roles of the d-regular family with ``2 * ((d-1)!)**(d-2)`` hamiltonian cycles.

    ``blocks[i]`` lists the ``d+1`` vertices of the i-th complete graph minus
    an edge, ports first. Squares alternate with blocks on a path from ``v``
    to ``w``; disks form a path and are all adjacent to ``v`` and ``w``.
    ``wiring[i]`` is the index (1-based, interior) of the disk that square
    ``i`` misses.
    """

    d: int
    v: int
    w: int
    disks: list[int]
    squares: list[int]
    blocks: list[list[int]]
    wiring: tuple[int, ...]
    graph: MultiGraph = field(repr=False)

    @property
    def order(self) -> int:
        return self.graph.n

    def block_cuts(self) -> list[tuple[int, int, list[int]]]:
        return [(b[0], b[1], b[2:]) for b in self.blocks]

    def gadget(self) -> tuple[MultiGraph, int, int]:
        """Subgraph on ``v``, ``w`` and the disks, with the images of ``v`` and ``w``."""
        keep = [self.v, self.w] + self.disks
        return self.graph.induced(keep), 0, 1


def fig1_order(d: int) -> int:
    return d * d + d - 4


def fig1_closed_form(d: int) -> int:
    return 2 * math.factorial(d - 1) ** (d - 2)


def _build_fig1(d: int, wiring: Sequence[int]) -> Fig1Blueprint:
    v, w = 0, 1
    disks = list(range(2, d + 1))
    nxt = d + 1
    squares = list(range(nxt, nxt + d - 3))
    nxt += d - 3
    blocks = []
    for _ in range(d - 2):
        blocks.append(list(range(nxt, nxt + d + 1)))
        nxt += d + 1
    edges = []
    for b in blocks:
        edges += [(x, y) for i, x in enumerate(b) for y in b[i + 1:] if (x, y) != (b[0], b[1])]
    edges += [(disks[i], disks[i + 1]) for i in range(d - 2)]
    edges += [(t, D) for t in (v, w) for D in disks]
    # chain v - B1 - S1 - B2 - ... - S_{d-3} - B_{d-2} - w; blocks are entered at
    # port 0 and left at port 1
    edges += [(v, blocks[0][0]), (blocks[-1][1], w)]
    for i, s in enumerate(squares):
        edges += [(blocks[i][1], s), (s, blocks[i + 1][0])]
    for i, s in enumerate(squares):
        miss = disks[wiring[i]]
        edges += [(s, D) for D in disks if D != miss]
    g = MultiGraph(nxt, edges)
    return Fig1Blueprint(d, v, w, disks, squares, blocks, tuple(wiring), g)


def _valid_fig1(bp: Fig1Blueprint) -> str | None:
    """Reason the blueprint fails, or None."""
    d = bp.d
    g = bp.graph
    if g.n != fig1_order(d):
        return f"order {g.n} != {fig1_order(d)}"
    if any(deg != d for deg in g.degrees()):
        return "not d-regular"
    gad, a, b = bp.gadget()
    if gad.n != d + 1:
        return "gadget order"
    if count_ham_st_paths(gad, a, b).value != 2:
        return "gadget does not have exactly two v-w hamiltonian paths"
    return None


def fig1_blueprint(d: int, wiring: Sequence[int] | None = None) -> Fig1Blueprint:
    """Build and validate the d-regular family member; ``wiring`` permutes which interior disk each square misses."""
    if d < 5:
        raise PreconditionError(f"the family needs d >= 5, got {d}")
    n = fig1_order(d)
    if n > min(_config.MAX_VERTICES, _config.KERNEL_MAX_VERTICES):
        raise CapExceeded(f"order {n} for d={d} exceeds the vertex cap")
    interior = list(range(1, d - 2))
    if wiring is not None:
        if sorted(wiring) != interior:
            raise PreconditionError(f"wiring must permute {interior}")
        bp = _build_fig1(d, wiring)
        reason = _valid_fig1(bp)
        if reason:
            raise ValidationError(f"wiring {tuple(wiring)}: {reason}")
        return bp
    # identity first, then the remaining assignments in lexicographic order
    for perm in permutations(interior):
        bp = _build_fig1(d, perm)
        if _valid_fig1(bp) is None:
            return bp
    raise ValidationError(f"no valid square/disk wiring for d={d}")


def fig1_graph(d: int, wiring: Sequence[int] | None = None) -> MultiGraph:
    return fig1_blueprint(d, wiring).graph


def fig1_count(bp: Fig1Blueprint | int, validate: bool = True) -> CountResult:
    """Cycle count by collapsing every block across its port pair."""
    if isinstance(bp, int):
        bp = fig1_blueprint(bp)
    res = count_by_reductions(bp.graph, bp.block_cuts())
    if validate and res.value != fig1_closed_form(bp.d):
        raise ValidationError(f"d={bp.d}: count {res.value} != {fig1_closed_form(bp.d)}")
    return res


def petersen() -> MultiGraph:
    return petersen_graph()


def petersen_gadget() -> tuple[MultiGraph, tuple[int, int, int]]:
    """Petersen graph minus one vertex and its former neighbours (v', w', x')."""
    return _gadget()


@lru_cache(maxsize=1)
def _fig10() -> tuple[MultiGraph, ...]:
    text = resources.files("fewham").joinpath("data/fig10.txt").read_text(encoding="ascii")
    return tuple(parse_multi_edge_list(rec) for rec in iter_records(text.splitlines()))


def fig10_graphs() -> list[MultiGraph]:
    """The five uniquely hamiltonian graphs of order 18 with all degrees in {3, 4}."""
    return list(_fig10())
