"""Brieskorn spheres and Seifert manifolds M_{m,n}: presentations, 3-cells,
representation families and closed-form values."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .local_systems import ChainData
from .reps import Rep
from .words import GroupRingElt, Presentation, Word, reduce_word

ADMISSIBLE_MARGIN = 1e-12


class SpecError(ValueError):
    pass


@dataclass
class ManifoldData:
    name: str
    presentation: Presentation
    chain: ChainData
    genus: int
    expansion: list[tuple[GroupRingElt, Word]] | None = None
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "genus": self.genus,
            "generators": self.presentation.n_gens,
            "relators": [str(r) for r in self.presentation.relators],
            "d3": [str(e) for e in self.chain.d3] if self.chain.d3 is not None else None,
            "params": self.params,
        }


def _expansion_from_d3(P: Presentation, d3: Sequence[GroupRingElt]) -> list[tuple[GroupRingElt, Word]]:
    return [(d3[j], P.relators[j]) for j in range(P.n_rels)]


# ---------------------------------------------------------------------------
# Seifert manifolds M_{m,n}

X, Y = Word.gen(1), Word.gen(2)


def check_seifert(m: int, n: int, aspherical: bool = True) -> None:
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        raise SpecError(f"M_{{m,n}} needs odd positive m, n; got ({m}, {n})")
    if aspherical and Fraction(1, m) + Fraction(1, n) >= Fraction(1, 2):
        raise SpecError(f"1/m + 1/n < 1/2 fails for ({m}, {n})")


def seifert(m: int, n: int, aspherical: bool = True) -> ManifoldData:
    """<x, y | y^n (xy)^-2, x^m (yx)^-2> with 3-cell (1 - y) r1 + (1 - x) r2."""
    check_seifert(m, n, aspherical)
    r1 = Y ** n * (X * Y) ** -2
    r2 = X ** m * (Y * X) ** -2
    P = Presentation(2, (r1, r2))
    one = GroupRingElt.one()
    d3 = [one - Y, one - X]
    return ManifoldData(f"M_{m},{n}", P, ChainData.from_presentation(P, d3), 2,
                        _expansion_from_d3(P, d3), {"m": m, "n": n})


def seifert_traces(m: int, n: int, k: int, l: int) -> tuple[float, float]:
    return 2 * math.cos(2 * math.pi * k / n), 2 * math.cos(2 * math.pi * l / m)


def admissible_pairs(m: int, n: int) -> list[tuple[int, int]]:
    out = []
    for k in range(1, n // 2 + 1):
        for l in range(1, m // 2 + 1):
            b, c = seifert_traces(m, n, k, l)
            if b * b + c * c > 4 + ADMISSIBLE_MARGIN:
                out.append((k, l))
    return out


def seifert_projective_images(m: int, n: int, k: int, l: int) -> tuple[np.ndarray, np.ndarray]:
    """The matrices f(x), f(y); they satisfy the relators only up to sign."""
    b, c = seifert_traces(m, n, k, l)
    s = math.sqrt(b * b + c * c - 4)
    fy = np.array([[b / 2, (-c + s) / 2], [(c + s) / 2, b / 2]])
    fxy = np.array([[0.0, -1.0], [1.0, 0.0]])
    fx = fxy @ np.array([[fy[1, 1], -fy[0, 1]], [-fy[1, 0], fy[0, 0]]])
    return fx, fy


def seifert_reps(m: int, n: int) -> list[tuple[int, int, Rep]]:
    """Representations -f_{k,l} (the sign makes both relators map to Id)."""
    check_seifert(m, n, aspherical=False)
    out = []
    for k, l in admissible_pairs(m, n):
        fx, fy = seifert_projective_images(m, n, k, l)
        out.append((k, l, Rep([-fx, -fy])))
    return out


def seifert_torsion_closed(m: int, n: int, k: int, l: int) -> float:
    if (k, l) not in admissible_pairs(m, n):
        raise SpecError(f"({k}, {l}) is not admissible for ({m}, {n})")
    b, c = seifert_traces(m, n, k, l)
    return 4 / ((2 - b) * (2 - c))


# ---------------------------------------------------------------------------
# Brieskorn spheres

def check_brieskorn(m: int, p: int, q: int) -> int:
    """Validate the spec and return d = (q - 1) / p."""
    if min(m, p) < 3 or q < 2:
        raise SpecError("need m, p >= 3 and q >= 2")
    if math.gcd(m, p) != 1 or math.gcd(m, q) != 1 or math.gcd(p, q) != 1:
        raise SpecError(f"({m}, {p}, {q}) are not pairwise coprime")
    if (q - 1) % p:
        raise SpecError(f"q = {q} is not of the form d p + 1 for p = {p}")
    return (q - 1) // p


def _lift(letters, start: int, m: int, q: int) -> Word:
    """Lift a word in the knot generators (x, y) to the m-fold cyclic cover.

    The cover generators z_s are the lifts of y at the cosets s mod m; x
    only moves the coset by 1, y by q.
    """
    s, out = start, []
    for g, e in letters:
        if g == "x":
            s += e
        elif e == 1:
            out.append((s % m + 1, 1))
            s += q
        else:
            s -= q
            out.append((s % m + 1, -1))
    return reduce_word(out)


def _knot_relator(p: int, d: int):
    """((y^-1 x)^p y^p)^d y^-1 x for the torus knot <a, b | a^p = b^q>, x = a b^-d, y = a."""
    one_period = [("y", -1), ("x", 1)] * p + [("y", 1)] * p
    return one_period * d + [("y", -1), ("x", 1)]


def brieskorn_relators(m: int, p: int, q: int) -> list[Word]:
    d = check_brieskorn(m, p, q)
    base = _lift(_knot_relator(p, d), 0, m, q)
    return [reduce_word(((g - 1 + i) % m + 1, e) for g, e in base) for i in range(m)]


def _coset(letters, q: int) -> int:
    return sum(e if g == "x" else e * q for g, e in letters)


def brieskorn_d3(m: int, p: int, q: int) -> list[GroupRingElt]:
    """3-cell boundary from the torus identity of the knot complement.

    With B = y^-1 x and c = B^p y^p the knot relator is R = c^d B, and
    [c, B^-1] = c R^-1 c^-1 R holds in the free group. Conjugating by
    g = y B^(1-p) gives [x, y^p] = g [c, B^-1] g^-1, so the boundary torus
    [x^m, y^p] bounds (1 + x + ... + x^(m-1)) g (1 - c) R. Each term is
    lifted to the cover and filed under the relator of its coset.
    """
    check_brieskorn(m, p, q)
    B = [("y", -1), ("x", 1)]
    Binv = [("x", -1), ("y", 1)]
    g = [("y", 1)] + Binv * (p - 1)
    c = B * p + [("y", 1)] * p
    d3 = [GroupRingElt.zero() for _ in range(m)]
    for t in range(m):
        for word, sign in ((g, 1), (g + c, -1)):
            letters = [("x", 1)] * t + word
            s = _coset(letters, q) % m
            d3[s] = d3[s] + sign * GroupRingElt.from_word(_lift(letters, 0, m, q))
    return d3


def brieskorn(m: int, p: int, q: int) -> ManifoldData:
    d = check_brieskorn(m, p, q)
    P = Presentation(m, tuple(brieskorn_relators(m, p, q)))
    d3 = brieskorn_d3(m, p, q)
    return ManifoldData(f"Sigma({m},{p},{q})", P, ChainData.from_presentation(P, d3), m,
                        _expansion_from_d3(P, d3), {"m": m, "p": p, "q": q, "d": d})


def lattice_points(m: int, p: int, q: int) -> int:
    """#{(s,t,u) : 0<s<m, 0<t<p, 0<u<q, s/m + t/p + u/q < 1}."""
    count = 0
    for s in range(1, m):
        for t in range(1, p):
            rest = 1 - Fraction(s, m) - Fraction(t, p)
            if rest <= 0:
                continue
            # u < q * rest
            bound = rest * q
            count += min(q - 1, math.ceil(bound) - 1)
    return count


def brieskorn_count(m: int, p: int, q: int) -> int:
    check_brieskorn(m, p, q)
    total = (m - 1) * (p - 1) * (q - 1)
    if total % 4:
        raise SpecError("(m-1)(p-1)(q-1) is not divisible by 4")
    return total // 4 - 2 * lattice_points(m, p, q)


def valid_brieskorn_specs(limit: int) -> list[tuple[int, int, int]]:
    out = []
    for m in range(3, limit + 1):
        for p in range(3, limit + 1):
            for q in range(2, limit + 1):
                try:
                    check_brieskorn(m, p, q)
                except SpecError:
                    continue
                out.append((m, p, q))
    return out


def abelianization_det(P: Presentation) -> int:
    """|det| of the integer relation matrix (order of H1 when finite, 0 otherwise)."""
    from .scalars import Matrix, det
    M = Matrix(P.relation_matrix())
    return abs(int(det(M)))


def dump_json(md: ManifoldData) -> str:
    return json.dumps(md.to_json(), sort_keys=True, indent=2) + "\n"
