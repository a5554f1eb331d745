"""Farey graph combinatorics and Weil-Petersson distance intervals.

Vertices of the Farey graph are reduced slopes ``p/q`` together with
``inf = 1/0``; ``p/q`` and ``r/s`` are joined when ``|p s - q r| = 1``.  For
the one-holed torus the Farey graph is the pants graph, so the pants
distance between two curves is the graph distance between their slopes.

Distances are computed by walking the continued fraction of the target
after moving the source to ``inf`` with an element of SL(2, Z).  Every Farey
geodesic from ``inf`` to ``x`` stays inside the ladder of triangles crossed
by the vertical line over ``x``; consecutive convergents ``h_{i-2}, h_{i-1},
h_i`` bound a fan of ``a_i`` triangles, so

    d(h_i) = min(d(h_{i-1}) + 1, d(h_{i-2}) + a_i).

Note that the plain length of the regular continued fraction is only an
upper bound for the depth: ``5/8 = [1, 1, 1, 2]`` has depth 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .special_functions import V3, V8

__all__ = [
    "FareySlope",
    "INF",
    "ZERO",
    "DistanceInterval",
    "parse_slope",
    "continued_fraction",
    "split_continued_fraction",
    "farey_depth",
    "is_farey_edge",
    "pants_distance",
    "farey_geodesic",
    "wp_distance_interval",
    "EDGE_LOWER",
    "EDGE_UPPER",
    "PIVOT_SEPARATION",
]


@dataclass(frozen=True, order=True)
class FareySlope:
    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        g = math.gcd(p, q)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)

    @classmethod
    def of(cls, value) -> "FareySlope":
        if isinstance(value, FareySlope):
            return value
        if isinstance(value, str):
            return parse_slope(value)
        f = Fraction(value)
        return cls(f.numerator, f.denominator)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def __str__(self) -> str:
        if self.q == 0:
            return "inf"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


INF = FareySlope(1, 0)
ZERO = FareySlope(0, 1)


def parse_slope(text: str) -> FareySlope:
    """Parse ``"p/q"``, an integer, or ``"inf"``."""
    t = text.strip().lower()
    if t in ("inf", "infinity", "1/0", "oo"):
        return INF
    try:
        if "/" in t:
            num, den = t.split("/")
            p, q = int(num), int(den)
        else:
            p, q = int(t), 1
    except ValueError:
        raise ValueError(f"malformed slope {text!r}") from None
    if q == 0:
        if p == 0:
            raise ValueError("0/0 is not a slope")
        return INF
    return FareySlope(p, q)


def _regular_cf(p: int, q: int) -> list[int]:
    # Euclid on p/q with q > 0; floor division makes a_0 the floor
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    return terms


def split_continued_fraction(s) -> tuple[int, list[int]]:
    """Split ``|p/q| = n + [0; a_1, ..., a_k]`` with the fractional part in ``(0, 1]``.

    The expansion is canonical (``a_k >= 2`` when ``k >= 2``).  Zero and
    infinity have an empty expansion.
    """
    s = FareySlope.of(s)
    if s.is_infinite or s.p == 0:
        return 0, []
    p, q = abs(s.p), s.q
    n = (p - 1) // q
    terms = _regular_cf(q, p - n * q)  # reciprocal of the part in (0, 1]
    return n, terms


def continued_fraction(s) -> list[int]:
    """Partial quotients ``[a_1, ..., a_k]`` of the ``(0, 1]`` part of ``|p/q|``."""
    return split_continued_fraction(s)[1]


def is_farey_edge(s, t) -> bool:
    s, t = FareySlope.of(s), FareySlope.of(t)
    if s == t:
        raise ValueError(f"is_farey_edge needs distinct slopes, got {s} twice")
    return abs(s.p * t.q - s.q * t.p) == 1


def _to_infinity(s: FareySlope) -> tuple[int, int, int, int]:
    # g in SL(2, Z) with g(s) = inf
    if s.is_infinite:
        return (1, 0, 0, 1)
    # x p + y q = 1
    g, x, y = _ext_gcd(s.p, s.q)
    return (x, y, -s.q, s.p)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _apply(g, s: FareySlope) -> FareySlope:
    a, b, c, d = g
    return FareySlope(a * s.p + b * s.q, c * s.p + d * s.q)


def _inverse(g):
    a, b, c, d = g
    return (d, -b, -c, a)


def _geodesic_from_infinity(x: FareySlope) -> list[FareySlope]:
    if x.is_infinite:
        return [INF]
    terms = _regular_cf(x.p, x.q)
    a0 = terms[0]
    # convergents h_{-1} = inf, h_0 = a0; paths realise the recurrence
    h_prev, k_prev = 1, 0
    h_cur, k_cur = a0, 1
    path_prev = [INF]
    path_cur = [INF, FareySlope(a0, 1)]
    for a in terms[1:]:
        h_next, k_next = a * h_cur + h_prev, a * k_cur + k_prev
        target = FareySlope(h_next, k_next)
        via_pivot = len(path_cur)
        via_fan = len(path_prev) - 1 + a
        if via_pivot <= via_fan:
            path_next = path_cur + [target]
        else:
            fan = [
                FareySlope(h_prev + j * h_cur, k_prev + j * k_cur) for j in range(1, a + 1)
            ]
            path_next = path_prev + fan
        h_prev, k_prev, h_cur, k_cur = h_cur, k_cur, h_next, k_next
        path_prev, path_cur = path_cur, path_next
    return path_cur


def farey_geodesic(s, t) -> list[FareySlope]:
    """One shortest vertex path from ``s`` to ``t`` in the Farey graph."""
    s, t = FareySlope.of(s), FareySlope.of(t)
    if s == t:
        return []
    g = _to_infinity(s)
    ginv = _inverse(g)
    return [_apply(ginv, v) for v in _geodesic_from_infinity(_apply(g, t))]


def pants_distance(s, t) -> int:
    """Graph distance in the Farey graph (the pants graph of the one-holed torus)."""
    s, t = FareySlope.of(s), FareySlope.of(t)
    if s == t:
        return 0
    return len(farey_geodesic(s, t)) - 1


def farey_depth(s) -> int:
    """Distance from the vertex ``0`` in the Farey graph."""
    return pants_distance(ZERO, s)


# Farey edge length bounds: octahedral lower bound and the systole-pinching
# upper bound; pivots of a Farey sequence are separated by half the
# translation length of the figure-eight monodromy, at least V3 / (3 sqrt(pi/2)).
EDGE_LOWER = V8 / (3.0 * math.sqrt(math.pi / 2.0))
EDGE_UPPER = 2.0 * math.sqrt(30.0) * math.pi ** 0.75
PIVOT_SEPARATION = V3 / (3.0 * math.sqrt(math.pi / 2.0))


@dataclass(frozen=True)
class DistanceInterval:
    """Bounds on the completed Weil-Petersson distance between noded surfaces."""

    lower: float
    upper: float
    pants_distance: int

    def as_dict(self) -> dict:
        return {"dp": self.pants_distance, "lower": self.lower, "upper": self.upper}


def wp_distance_interval(s, t) -> DistanceInterval:
    """Interval for ``d_WP(N(s), N(t))`` from the pants distance of the slopes."""
    s, t = FareySlope.of(s), FareySlope.of(t)
    if s == t:
        raise ValueError("wp_distance_interval needs distinct slopes")
    dp = pants_distance(s, t)
    if dp == 1:
        return DistanceInterval(EDGE_LOWER, EDGE_UPPER, 1)
    return DistanceInterval(PIVOT_SEPARATION * dp, EDGE_UPPER * dp, dp)
