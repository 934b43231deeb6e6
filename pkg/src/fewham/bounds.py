"""Exact and interval-certified checks of counting bounds.

Comparisons between expressions with rational exponents are made exact by
raising both sides to a common integer power. Real-valued conditions use
mpmath interval arithmetic, doubling the working precision until the
comparison is decided.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import iv, mpf
from mpmath.libmp import to_str

from .errors import FewhamError, PreconditionError

MAX_PREC = 4096


class IndeterminateError(FewhamError):
    """Interval arithmetic could not separate the two sides within the precision cap."""


@dataclass(frozen=True)
class ExactComparison:
    left: int
    right: int

    @property
    def verdict(self) -> str:
        return "<" if self.left < self.right else ("=" if self.left == self.right else ">")

    def __str__(self) -> str:
        return self.verdict


def _cmp(a: int, b: int) -> ExactComparison:
    return ExactComparison(a, b)


def family_order(d: int, k: int) -> int:
    return d * d + d - 4 + (d + 1) * k


def family_count(d: int, k: int) -> int:
    """Hamiltonian cycle count of the d-regular family member extended by k blocks."""
    return 2 * math.factorial(d - 1) ** (d - 2) * math.factorial(d - 2) ** k


def conjecture_bound_compare(d: int, k: int = 0) -> ExactComparison:
    """Family count versus ``(d-1)**2 * ((d-2)!)**(n/(d+1))``, both sides raised to the power d+1."""
    if d < 5:
        raise PreconditionError(f"comparison defined for d >= 5, got {d}")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    n = family_order(d, k)
    left = family_count(d, k) ** (d + 1)
    right = (d - 1) ** (2 * (d + 1)) * math.factorial(d - 2) ** n
    return _cmp(left, right)


def theorem2_comparison(d: int) -> ExactComparison:
    """``[2 (d-1)^(d-4)]^(d+1)`` versus ``[(d-2)!]^(2d-2)``."""
    if d < 5:
        raise PreconditionError(f"inequality defined for d >= 5, got {d}")
    return _cmp((2 * (d - 1) ** (d - 4)) ** (d + 1), math.factorial(d - 2) ** (2 * d - 2))


def theorem2_inequality(d: int) -> bool:
    return theorem2_comparison(d).verdict == "<"


def corollary_factored(d: int, k: int) -> int:
    """Prime-power forms of the family count for d = 5, 6, 7."""
    if d == 5:
        return 2 ** (k + 10) * 3 ** (k + 3)
    if d == 6:
        return 2 ** (3 * (k + 4) + 1) * 3 ** (k + 4) * 5 ** 4
    if d == 7:
        return 2 ** (3 * (k + 7)) * 3 ** (k + 10) * 5 ** (k + 5)
    raise PreconditionError("factored forms are known for d in {5, 6, 7}")


def corollary_identity_check(d: int, k_max: int = 50) -> bool:
    return all(corollary_factored(d, k) == family_count(d, k) for k in range(k_max + 1))


# -- interval-certified conditions -------------------------------------------


@dataclass(frozen=True)
class IntervalVerdict:
    holds: bool
    left: tuple[str, str]
    right: tuple[str, str]
    prec: int

    def __bool__(self) -> bool:
        return self.holds


def _ends(x) -> tuple[str, str]:
    # exact binary endpoints rendered with enough digits to round-trip
    lo, hi = x._mpi_
    digits = max(20, int(iv.prec * 0.30103) + 2)
    return to_str(lo, digits), to_str(hi, digits)


def _decide_less(build, what: str) -> IntervalVerdict:
    """Certify ``lhs < rhs`` for interval expressions produced by ``build()`` at rising precision."""
    prec = 64
    saved = iv.prec
    try:
        while prec <= MAX_PREC:
            iv.prec = prec
            lhs, rhs = build()
            if lhs.b < rhs.a:
                return IntervalVerdict(True, _ends(lhs), _ends(rhs), prec)
            if lhs.a >= rhs.b:
                return IntervalVerdict(False, _ends(lhs), _ends(rhs), prec)
            prec *= 2
    finally:
        iv.prec = saved
    raise IndeterminateError(f"{what}: undecided at {MAX_PREC} bits")


def _log(x, base: str):
    if base == "e":
        return iv.log(x)
    if base == "2":
        return iv.log(x) / iv.log(iv.mpf(2))
    if base == "10":
        return iv.log(x) / iv.log(iv.mpf(10))
    raise PreconditionError(f"unknown logarithm base {base!r}")


def _eps(eps) -> object:
    e = iv.mpf(str(eps)) if isinstance(eps, (float, str)) else iv.mpf(eps)
    return e


def lll_condition_detail(d: int, eps, base: str = "e") -> IntervalVerdict:
    """``1/eps < d / (4 sqrt(d) log(8 d^2) + 1)``."""
    if not 0 < float(eps) <= 1:
        raise PreconditionError("eps must lie in (0, 1]")

    def build():
        D = iv.mpf(d)
        g = D / (4 * iv.sqrt(D) * _log(8 * D * D, base) + 1)
        return 1 / _eps(eps), g

    return _decide_less(build, f"degree condition at d={d}")


def lll_condition(d: int, eps, base: str = "e") -> bool:
    return lll_condition_detail(d, eps, base).holds


@dataclass(frozen=True)
class MinDegree:
    d0: int
    at_d0: IntervalVerdict
    below: IntervalVerdict | None


def lll_min_d0(eps, base: str = "e") -> MinDegree:
    """Least d satisfying the degree condition.

    ``d / (4 sqrt(d) log(8d^2) + 1)`` is increasing for d >= 3, so the
    condition is monotone there; d = 1, 2 are checked directly. The answer is
    certified true at d0 and false at d0 - 1.
    """
    for d in (1, 2):
        if lll_condition(d, eps, base):
            below = lll_condition_detail(d - 1, eps, base) if d > 1 else None
            return MinDegree(d, lll_condition_detail(d, eps, base), below)
    lo, hi = 3, 4
    if lll_condition(lo, eps, base):
        return MinDegree(lo, lll_condition_detail(lo, eps, base), lll_condition_detail(2, eps, base))
    while not lll_condition(hi, eps, base):
        lo, hi = hi, hi * 2
    # lo fails, hi holds
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if lll_condition(mid, eps, base):
            hi = mid
        else:
            lo = mid
    return MinDegree(hi, lll_condition_detail(hi, eps, base), lll_condition_detail(hi - 1, eps, base))


@dataclass(frozen=True)
class LLLParameters:
    d: int
    eps: object
    x: object
    y: object
    p: object

    @classmethod
    def make(cls, d: int, eps) -> "LLLParameters":
        D = iv.mpf(d)
        return cls(d, eps, 1 / (4 * D), 1 / (2 * D * D), 1 / (4 * iv.sqrt(D)))


@dataclass(frozen=True)
class LLLCheck:
    edge: IntervalVerdict
    vertex: IntervalVerdict

    @property
    def both(self) -> bool:
        return self.edge.holds and self.vertex.holds

    def __bool__(self) -> bool:
        return self.both


def _pow(base, expo):
    return iv.exp(expo * iv.log(base))


def lll_verify_parameters(d: int, eps) -> LLLCheck:
    """Edge and vertex Local Lemma inequalities at x = 1/(4d), y = 1/(2d^2), p = 1/(4 sqrt d)."""
    if d < 3:
        raise PreconditionError("parameters are checked for d >= 3")

    def edge():
        P = LLLParameters.make(d, eps)
        x, y, p = P.x, P.y, P.p
        return p * p, x * (1 - x) ** 2 * _pow(1 - y, iv.mpf(2 * d - 2))

    def vertex():
        P = LLLParameters.make(d, eps)
        x, y, p = P.x, P.y, P.p
        lhs = _pow(1 - p, iv.mpf(d) * _eps(eps) - 1)
        rhs = y * _pow(1 - x, iv.mpf(2 * d - 2)) * _pow(1 - y, iv.mpf((d - 2) ** 2))
        return lhs, rhs

    return LLLCheck(_decide_less(edge, f"edge inequality at d={d}"),
                    _decide_less(vertex, f"vertex inequality at d={d}"))


def as_float(text: str) -> float:
    return float(mpf(text))
