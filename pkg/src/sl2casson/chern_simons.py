"""Cross-ratio, the Rogers L-function and the R/Z-valued 3-cocycle l on SL2(R)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

INF = math.inf
EPS_PROJ = 1e-8
PI2_6 = math.pi ** 2 / 6


def is_inf(p) -> bool:
    return isinstance(p, float) and math.isinf(p)


def mobius(g, p):
    """Projective action (a p + b) / (c p + d) on R u {inf}."""
    (a, b), (c, d) = np.asarray(g, dtype=float)
    scale = max(abs(a), abs(b), abs(c), abs(d))
    if is_inf(p):
        num, den = a, c
    else:
        num, den = a * p + b, c * p + d
        scale *= max(1.0, abs(p))
    if abs(den) <= 1e-15 * scale:
        return INF
    return num / den


def chordal_distance(p, q) -> float:
    """Chordal metric on RP^1 (points at infinity are at distance 0 from each other)."""
    if is_inf(p) and is_inf(q):
        return 0.0
    if is_inf(p):
        return 1.0 / math.sqrt(1.0 + q * q)
    if is_inf(q):
        return 1.0 / math.sqrt(1.0 + p * p)
    return abs(p - q) / math.sqrt((1.0 + p * p) * (1.0 + q * q))


def cross_ratio(a0, a1, a2, a3) -> float:
    """(a0-a2)(a1-a3) / ((a0-a3)(a1-a2)); factors involving inf are dropped."""
    pts = (a0, a1, a2, a3)
    for i in range(4):
        for j in range(i + 1, 4):
            if chordal_distance(pts[i], pts[j]) == 0.0:
                raise ValueError("cross ratio of coincident points")
    num, den = 1.0, 1.0
    for u, v in ((a0, a2), (a1, a3)):
        if not (is_inf(u) or is_inf(v)):
            num *= u - v
    for u, v in ((a0, a3), (a1, a2)):
        if not (is_inf(u) or is_inf(v)):
            den *= u - v
    return num / den


# ---------------------------------------------------------------------------
# dilogarithm

def _li2_series(x: float) -> float:
    total, term, k = 0.0, x, 1
    while True:
        add = term / (k * k)
        total += add
        if abs(add) < 1e-18 * max(abs(total), 1e-300):
            return total
        k += 1
        term *= x


def dilog(x: float) -> float:
    """Real dilogarithm Li2(x) for x <= 1."""
    x = float(x)
    if x > 1:
        raise ValueError("real dilogarithm is defined for x <= 1")
    if x == 1:
        return PI2_6
    if x == 0:
        return 0.0
    if abs(x) <= 0.5:
        return _li2_series(x)
    if x > 0.5:
        return PI2_6 - math.log(x) * math.log1p(-x) - _li2_series(1.0 - x)
    if x >= -1.0:
        # Landen: x/(x-1) lies in [1/3, 1/2]
        return -_li2_series(x / (x - 1.0)) - 0.5 * math.log1p(-x) ** 2
    # inversion for x < -1
    return -PI2_6 - 0.5 * math.log(-x) ** 2 - dilog(1.0 / x)


def rogers_L(x: float) -> float:
    """Rogers L-function normalized to L(0) = -pi^2/6, L(1) = 0, extended to R."""
    x = float(x)
    if x > 1:
        return -rogers_L(1.0 / x)
    if x < 0:
        return rogers_L(1.0 - 1.0 / x)
    if x == 0:
        return -PI2_6
    if x == 1:
        return 0.0
    return dilog(x) + 0.5 * math.log(x) * math.log1p(-x) - PI2_6


# ---------------------------------------------------------------------------
# values in R/Z

@dataclass(frozen=True)
class ModOne:
    value: float

    def __post_init__(self):
        v = float(self.value) % 1.0
        if v >= 1.0:
            v = 0.0
        object.__setattr__(self, "value", v)

    def __add__(self, other):
        other = other.value if isinstance(other, ModOne) else other
        return ModOne(self.value + other)

    __radd__ = __add__

    def __neg__(self):
        return ModOne(-self.value)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ModOne) else -other)

    def __mul__(self, n: int):
        if not isinstance(n, (int, np.integer)):
            raise TypeError("R/Z only admits integer multiples")
        return ModOne(self.value * int(n))

    __rmul__ = __mul__

    def distance(self, other) -> float:
        other = other if isinstance(other, ModOne) else ModOne(other)
        d = abs(self.value - other.value)
        return min(d, 1.0 - d)

    def close(self, other, tol: float = 1e-6) -> bool:
        return self.distance(other) <= tol

    def __float__(self):
        return self.value


def cocycle_l(g0, g1, g2, g3, eps_proj: float = EPS_PROJ) -> ModOne:
    """l(g0,...,g3) = -L(cross ratio of {0, g0^-1 g_i . 0}) / 4 pi^2 mod 1."""
    g0 = np.asarray(g0, dtype=float)
    pts = [0.0] + [mobius(np.linalg.solve(g0, np.asarray(g, dtype=float)), 0.0) for g in (g1, g2, g3)]
    for i in range(4):
        for j in range(i + 1, 4):
            if chordal_distance(pts[i], pts[j]) <= eps_proj:
                return ModOne(0.0)
    return ModOne(-rogers_L(cross_ratio(*pts)) / (4 * math.pi ** 2))
