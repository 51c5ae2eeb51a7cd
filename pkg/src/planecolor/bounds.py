"""From probabilities and densities to lower bounds on unit-distance graphs.

``e_k`` and ``v_k`` denote the minimum number of edges and vertices of a
k-chromatic unit-distance graph.  A (k-1)-coloring of the plane in which a
random unit edge is monochromatic with probability ``p`` forces
``e_k >= ceil(1/p)``; upper bounds on the number of unit distances among
``v`` points then turn an edge bound into a vertex bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

# minimum number of unit distances is known exactly for 1..15 points
EXACT_MAX_EDGES = (0, 1, 3, 5, 7, 9, 12, 14, 18, 20, 23, 27, 30, 33, 37)
# upper bounds only, for 16..19 points
SMALL_MAX_EDGES = (42, 47, 52, 57)
IMPLICIT_RANGE = (20, 520)


@dataclass
class BoundStep:
    rule: str
    inputs: dict
    output: object
    note: str = ""


@dataclass
class BoundChain:
    steps: list = field(default_factory=list)

    def add(self, rule: str, inputs: dict, output, note: str = ""):
        self.steps.append(BoundStep(rule, dict(inputs), output, note))
        return output

    def as_dict(self) -> list:
        return [{"rule": s.rule, "inputs": s.inputs, "output": s.output, **({"note": s.note} if s.note else {})}
                for s in self.steps]


@dataclass
class EdgeBound:
    k: int
    e_min: int
    provenance: BoundChain

    def __post_init__(self):
        if self.e_min < 1:
            raise ValueError("edge bound must be at least 1")


@dataclass
class VertexBound:
    k: int
    v_min: int
    provenance: BoundChain

    def __post_init__(self):
        if self.v_min < 1:
            raise ValueError("vertex bound must be at least 1")


def edges_from_probability(p, central: bool = False) -> int:
    """``ceil(1/p)`` at the conservative upper end of the estimate.

    ``p`` may be a plain number or anything with ``value`` and
    ``conservative_upper`` attributes.
    """
    upper = p if isinstance(p, (int, float, Fraction)) else (p.value if central else p.conservative_upper)
    if upper <= 0:
        raise ValueError("probability must be positive to bound edges")
    if upper >= 1:
        return 1
    q = Fraction(upper)
    return math.ceil(1 / q)


def edges_floor(p: float) -> int:
    """``floor(1/p)``: the rounding used by earlier estimates, kept for comparison."""
    if p <= 0:
        raise ValueError("probability must be positive to bound edges")
    return max(1, math.floor(1 / Fraction(p)))


def lemma_compose(p: float, delta: float) -> float:
    """Probability bound after overlaying a unit-distance-free color class of density ``delta``."""
    if not 0.0 <= delta < 0.5:
        raise ValueError(f"density {delta} outside [0, 1/2)")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p} outside [0, 1]")
    return (1.0 - 2.0 * delta) * p


def pritikin_vertices(delta: float) -> int:
    """Vertex lower bound ``floor(1/delta) + 1`` from an uncolored density."""
    if not 0.0 < delta < 1.0:
        raise ValueError(f"density {delta} outside (0, 1)")
    return math.floor(1 / Fraction(delta)) + 1


def _binom2(n: int) -> int:
    return n * (n - 1) // 2


def implicit_rhs(v: int, e: int) -> Fraction:
    """Right-hand side ``2r - 11 + 24/v + (1-s) C(floor r, 2) + s C(ceil r, 2)`` with ``r = 2e/v``."""
    r = Fraction(2 * e, v)
    fl = math.floor(r)
    s = r - fl
    ce = math.ceil(r)
    return 2 * r - 11 + Fraction(24, v) + (1 - s) * _binom2(fl) + s * _binom2(ce)


@lru_cache(maxsize=None)
def implicit_max_edges(v: int) -> int:
    """Largest ``e`` with ``v >= implicit_rhs(v, e)``, for 20 <= v <= 520.

    Bisection over ``e``; every probed pair is checked against the
    monotonicity the search relies on.
    """
    lo, hi = IMPLICIT_RANGE
    if not lo <= v <= hi:
        raise ValueError(f"implicit formula applies to {lo} <= v <= {hi}, got {v}")
    good, bad = 0, v * (v - 1) // 2 + 1
    if implicit_rhs(v, good) > v or implicit_rhs(v, bad) <= v:
        raise ArithmeticError(f"implicit bound has no bracket at v={v}")
    probes = {good: implicit_rhs(v, good), bad: implicit_rhs(v, bad)}
    while bad - good > 1:
        mid = (good + bad) // 2
        probes[mid] = implicit_rhs(v, mid)
        if probes[mid] <= v:
            good = mid
        else:
            bad = mid
    keys = sorted(probes)
    if any(probes[a] > probes[b] for a, b in zip(keys, keys[1:])):
        raise ArithmeticError(f"implicit bound not monotone in e at v={v}")
    return good


def _power_max_edges(v: int) -> int:
    # largest e with e <= (29/4)^(1/3) v^(4/3), i.e. 4 e^3 <= 29 v^4
    target = 29 * v ** 4
    e = int(round((29 / 4) ** (1 / 3) * v ** (4 / 3)))
    while 4 * e ** 3 > target:
        e -= 1
    while 4 * (e + 1) ** 3 <= target:
        e += 1
    return e


_table: list = [0]  # _table[v] = max_edges(v); index 0 unused
_repairs: list = []


def _raw_max_edges(v: int) -> int:
    if v <= 15:
        return EXACT_MAX_EDGES[v - 1]
    if v <= 19:
        return SMALL_MAX_EDGES[v - 16]
    if v <= IMPLICIT_RANGE[1]:
        return implicit_max_edges(v)
    return _power_max_edges(v)


def max_edges(v: int) -> int:
    """Upper bound on the number of unit distances among ``v`` points in the plane.

    Piecewise: exact values (v <= 15), published upper bounds (16..19), the
    implicit formula (20..520), and the 4/3-power law beyond.  Should a piece
    boundary ever break monotonicity, the previous value is carried forward
    and the repair is recorded in ``monotonicity_repairs()``.
    """
    if v < 1:
        raise ValueError("vertex count must be positive")
    while len(_table) <= v:
        k = len(_table)
        raw = _raw_max_edges(k)
        if k > 1 and raw < _table[-1]:
            _repairs.append(k)
            raw = _table[-1]
        _table.append(raw)
    return _table[v]


def monotonicity_repairs() -> list:
    return list(_repairs)


def max_edges_source(v: int) -> str:
    if v <= 15:
        return "exact"
    if v <= 19:
        return "upper bound table"
    if v <= IMPLICIT_RANGE[1]:
        return "implicit formula"
    return "4/3 power law"


def min_vertices_from_edges(e: int) -> int:
    """Smallest ``v`` with ``max_edges(v) >= e``."""
    if e < 1:
        raise ValueError("edge count must be positive")
    lo, hi = 1, 2
    while max_edges(hi) < e:
        lo, hi = hi, hi * 2
    while lo < hi:
        mid = (lo + hi) // 2
        if max_edges(mid) >= e:
            hi = mid
        else:
            lo = mid + 1
    return lo


def min_vertices_erdos(e: int) -> int:
    """Smallest ``v`` with ``e < v^(3/2)``, i.e. ``v^3 > e^2``."""
    if e < 1:
        raise ValueError("edge count must be positive")
    v = max(1, int(round(e ** (2 / 3))) - 2)
    while v ** 3 <= e * e:
        v += 1
    while v > 1 and (v - 1) ** 3 > e * e:
        v -= 1
    return v


def edge_bound(k: int, p, chain: BoundChain | None = None) -> EdgeBound:
    chain = chain if chain is not None else BoundChain()
    e = edges_from_probability(p)
    chain.add("ceilingRule", {"p_upper": getattr(p, "conservative_upper", p)}, e)
    return EdgeBound(k, e, chain)


def vertex_bound(k: int, e: int, chain: BoundChain | None = None, erdos: bool = False) -> VertexBound:
    chain = chain if chain is not None else BoundChain()
    if erdos:
        v = min_vertices_erdos(e)
        chain.add("erdosInversion", {"e": e}, v)
    else:
        v = min_vertices_from_edges(e)
        chain.add("maxEdgesInversion", {"e": e}, v,
                  note=f"maxEdges({v - 1})={max_edges(v - 1) if v > 1 else 0} < {e} <= maxEdges({v})={max_edges(v)}"
                       f" [{max_edges_source(v)}]")
    return VertexBound(k, v, chain)
