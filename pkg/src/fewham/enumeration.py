"""Counting and listing hamiltonian cycles and fixed-endpoint hamiltonian paths.

Two independent exact counters are available: a pruned backtracking search
and the Held-Karp subset dynamic program. Parallel edges are distinct edges,
so a cycle through a doubled pair exists once per choice of copy.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from itertools import product
from typing import Iterator

import numpy as np

from . import _config, kernels
from .errors import CapExceeded, PreconditionError, ValidationError
from .graph import MultiGraph, is_connected

ALGORITHMS = ("backtrack", "held_karp", "auto")
AUTO_HK_MAX = 16
_ENUM_CHUNK = 1 << 12
_ENUM_CHUNK_MAX = 1 << 21


@dataclass(frozen=True)
class CycleCertificate:
    """A hamiltonian cycle as a vertex order and one parallel-edge choice per step.

    ``selectors[i]`` picks the copy (0 or 1) of the edge from ``vertices[i]``
    to ``vertices[i + 1]`` (wrapping around). Canonical orientation: the
    cycle starts at its minimum label and visits the smaller of that vertex's
    two cycle neighbours second.
    """

    vertices: tuple[int, ...]
    selectors: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.selectors):
            raise ValueError("one selector per cycle edge is required")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def steps(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        """Unordered pairs along the cycle."""
        return frozenset((min(a, b), max(a, b)) for a, b in self.steps())

    def neighbor_map(self) -> dict[int, tuple[int, int]]:
        vs = self.vertices
        k = len(vs)
        return {vs[i]: (vs[i - 1], vs[(i + 1) % k]) for i in range(k)}

    def is_valid_for(self, g: MultiGraph) -> bool:
        vs = self.vertices
        if len(vs) != g.n or sorted(vs) != list(range(g.n)):
            return False
        if any(s not in (0, 1) for s in self.selectors):
            return False
        if g.n == 2:
            return g.mult(0, 1) == 2 and sorted(self.selectors) == [0, 1]
        return all(g.mult(a, b) > sel for (a, b), sel in zip(self.steps(), self.selectors))

    def canonical(self) -> "CycleCertificate":
        vs, sel = list(self.vertices), list(self.selectors)
        k = len(vs)
        if k <= 2:
            return CycleCertificate(tuple(sorted(vs)), tuple(sorted(sel)))
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        sel = sel[i:] + sel[:i]
        if vs[1] > vs[-1]:
            # reverse direction; edge (v_j, v_j+1) becomes step k-1-j
            vs = [vs[0]] + vs[:0:-1]
            sel = sel[::-1]
        return CycleCertificate(tuple(vs), tuple(sel))

    def to_text(self) -> str:
        """``"v0 v1 ... [s0 s1 ...]"``; the bracket is omitted when every selector is 0."""
        text = " ".join(map(str, self.vertices))
        if any(self.selectors):
            text += " [" + " ".join(map(str, self.selectors)) + "]"
        return text

    @classmethod
    def from_text(cls, line: str) -> "CycleCertificate":
        head, _, tail = line.strip().partition("[")
        vs = tuple(int(x) for x in head.split())
        if tail:
            sel = tuple(int(x) for x in tail.rstrip("]").split())
        else:
            sel = (0,) * len(vs)
        return cls(vs, sel)


@dataclass(frozen=True)
class CountResult:
    value: int
    algorithm: str
    elapsed: float

    def __int__(self) -> int:
        return self.value


# -- helpers ---------------------------------------------------------------


def _arrays(g: MultiGraph) -> tuple[np.ndarray, np.ndarray]:
    if g.n > _config.KERNEL_MAX_VERTICES:
        raise CapExceeded(f"order {g.n} exceeds the kernel limit {_config.KERNEL_MAX_VERTICES}")
    nbr = np.array(g.nbr_masks, dtype=np.int64)
    mult = np.ascontiguousarray(g.matrix, dtype=np.int64)
    return nbr, mult


def _start_vertex(g: MultiGraph) -> int:
    degs = g.degrees()
    return min(range(g.n), key=lambda v: (degs[v], v))


def _check_algo(algo: str) -> None:
    if algo not in ALGORITHMS:
        raise PreconditionError(f"unknown algorithm {algo!r}; choose from {', '.join(ALGORITHMS)}")


def _resolve(g: MultiGraph, algo: str) -> str:
    _check_algo(algo)
    if algo != "auto":
        return algo
    if g.n <= min(AUTO_HK_MAX, _config.HK_MAX):
        return "held_karp"
    # dense graphs have too many cycles to enumerate one by one
    if g.n <= _config.HK_MAX and 2 * g.num_edges >= g.n * (g.n - 1) // 2:
        return "held_karp"
    return "backtrack"


def _primes_below(start: int, count: int) -> list[int]:
    out = []
    c = start - 1 if start % 2 == 0 else start - 2
    while len(out) < count:
        if all(c % p for p in range(3, math.isqrt(c) + 1, 2)):
            out.append(c)
        c -= 2
    return out


_HK_PRIMES = _primes_below(1 << 31, 48)


def _held_karp_exact(g: MultiGraph, s: int, t: int, use_jit: bool | None) -> int:
    """Exact Held-Karp total (directed cycles through ``s`` when ``t < 0``)."""
    if g.n > _config.HK_MAX:
        raise CapExceeded(f"order {g.n} exceeds the Held-Karp cap {_config.HK_MAX} (FEWHAM_HK_MAX)")
    _, mult = _arrays(g)
    k = kernels.get(use_jit)
    bound = 1
    for d in g.degrees():
        bound *= max(d, 1)
    if bound < (1 << 62):
        return int(k.held_karp(mult, g.n, s, t, 0))
    residues, moduli, prod = [], [], 1
    for p in _HK_PRIMES:
        if prod > bound:
            break
        residues.append(int(k.held_karp(mult, g.n, s, t, p)))
        moduli.append(p)
        prod *= p
    if prod <= bound:  # pragma: no cover - needs degree products beyond 2**1400
        raise CapExceeded("count exceeds the modular reconstruction range")
    value = 0
    for r, p in zip(residues, moduli):
        q = prod // p
        value += r * q * pow(q, -1, p)
    return value % prod


def _trivially_zero(g: MultiGraph) -> bool:
    if not is_connected(g):
        return True
    return any(m.bit_count() < 2 for m in g.nbr_masks)


# -- cycles ------------------------------------------------------------------


def _small_cycles(g: MultiGraph) -> int:
    if g.n == 0:
        raise PreconditionError("hamiltonian cycles are undefined on the empty graph")
    if g.n == 1:
        return 0
    # two vertices: the doubled edge forms the only possible cycle
    return 1 if g.mult(0, 1) == 2 else 0


def count_ham_cycles(g: MultiGraph, algo: str = "auto", use_jit: bool | None = None) -> CountResult:
    """Number of hamiltonian cycles of ``g``."""
    chosen = _resolve(g, algo)
    t0 = time.perf_counter()
    if g.n <= 2:
        value = _small_cycles(g)
    elif chosen == "held_karp":
        value = 0 if _trivially_zero(g) else _held_karp_exact(g, 0, -1, use_jit) // 2
    else:
        value = _backtrack_cycles(g, 0, use_jit)
    return CountResult(value, chosen, time.perf_counter() - t0)


def _backtrack_cycles(g: MultiGraph, limit: int, use_jit: bool | None) -> int:
    if _trivially_zero(g):
        return 0
    nbr, mult = _arrays(g)
    value = int(kernels.get(use_jit).count_cycles_bt(nbr, mult, g.n, _start_vertex(g), limit))
    if value < 0:
        raise CapExceeded("cycle count overflows the 64-bit backtracking accumulator; use held_karp")
    return value


def count_both(g: MultiGraph, use_jit: bool | None = None) -> tuple[CountResult, CountResult]:
    """Backtracking and Held-Karp counts; raises ValidationError if they differ."""
    a = count_ham_cycles(g, "backtrack", use_jit)
    b = count_ham_cycles(g, "held_karp", use_jit)
    if a.value != b.value:
        raise ValidationError(f"backtrack={a.value} held_karp={b.value}")
    return a, b


def is_uniquely_hamiltonian(g: MultiGraph, use_jit: bool | None = None) -> bool:
    """Exactly one hamiltonian cycle; the search stops at the second."""
    if g.n <= 2:
        return _small_cycles(g) == 1
    return _backtrack_cycles(g, 2, use_jit) == 1


def is_hamiltonian(g: MultiGraph, use_jit: bool | None = None) -> bool:
    if g.n <= 2:
        return _small_cycles(g) > 0
    return _backtrack_cycles(g, 1, use_jit) > 0


def _simple_cycles(g: MultiGraph, use_jit: bool | None) -> Iterator[np.ndarray]:
    """Vertex orders of the hamiltonian cycles of the underlying simple graph."""
    for block in _simple_cycle_blocks(g, use_jit):
        yield from block


def _simple_cycle_blocks(g: MultiGraph, use_jit: bool | None) -> Iterator[np.ndarray]:
    """The same cycles as ``_simple_cycles``, delivered as 2-D int8 blocks of rows."""
    if _trivially_zero(g):
        return
    k = kernels.get(use_jit)
    nbr, _ = _arrays(g)
    n = g.n
    rows = _ENUM_CHUNK
    skip = 0
    while True:
        # fresh buffer per pass: yielded rows stay valid after the next pass
        out = np.zeros((rows, n), dtype=np.int8)
        total = int(k.enum_cycles_bt(nbr, n, skip, out))
        got = min(total - skip, rows)
        if got > 0:
            yield out[:got]
        skip += got
        if skip >= total:
            return
        rows = min(total - skip, _ENUM_CHUNK_MAX)


def enumerate_ham_cycles(g: MultiGraph, use_jit: bool | None = None) -> Iterator[CycleCertificate]:
    """Every hamiltonian cycle once, as a canonical certificate."""
    if g.n <= 2:
        if _small_cycles(g):
            yield CycleCertificate((0, 1), (0, 1))
        return
    mat = g.matrix
    for row in _simple_cycles(g, use_jit):
        vs = tuple(int(v) for v in row)
        n = len(vs)
        choices = [range(int(mat[vs[i], vs[(i + 1) % n]])) for i in range(n)]
        for sel in product(*choices):
            yield CycleCertificate(vs, tuple(sel))


def hamiltonian_cycle_edge_sets(g: MultiGraph, use_jit: bool | None = None) -> list[frozenset]:
    """Distinct cycles of the underlying simple graph as sets of vertex pairs."""
    out = []
    for row in _simple_cycles(g, use_jit):
        vs = row.tolist()
        out.append(frozenset((min(a, b), max(a, b)) for a, b in zip(vs, vs[1:] + vs[:1])))
    return out


# -- paths -------------------------------------------------------------------


def count_ham_st_paths(
    g: MultiGraph, s: int, t: int, algo: str = "auto", use_jit: bool | None = None
) -> CountResult:
    """Number of hamiltonian paths whose end vertices are exactly ``s`` and ``t``."""
    if s == t:
        raise PreconditionError("path endpoints must differ")
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise PreconditionError(f"endpoints {s}, {t} outside 0..{g.n - 1}")
    chosen = _resolve(g, algo)
    t0 = time.perf_counter()
    if g.n == 2:
        value = g.mult(s, t)
    elif not is_connected(g):
        value = 0
    elif chosen == "held_karp":
        value = _held_karp_exact(g, s, t, use_jit)
    else:
        nbr, mult = _arrays(g)
        value = int(kernels.get(use_jit).count_paths_bt(nbr, mult, g.n, s, t))
        if value < 0:
            raise CapExceeded("path count overflows the 64-bit backtracking accumulator; use held_karp")
    return CountResult(value, chosen, time.perf_counter() - t0)


def all_nonadjacent_pairs_traceable(g: MultiGraph, use_jit: bool | None = None) -> bool:
    """Every pair of non-adjacent vertices is joined by a hamiltonian path."""
    if not g.is_simple:
        raise PreconditionError("traceability check expects a simple graph")
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                continue
            if count_ham_st_paths(g, u, v, "backtrack", use_jit).value == 0:
                return False
    return True
