"""Normalized bar chains, the chain maps c1 and c2, and the fundamental class.

Chains are keyed by tuples of reduced words. A relator is trivial in the
group but not as a word, so identities that hold only in the group are
checked through a ``key`` function sending a word to a hashable stand-in
for its group element (see :func:`rep_key`).
"""
from __future__ import annotations

from collections import defaultdict
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .chern_simons import ModOne, cocycle_l
from .reps import Rep, RepError, first_violated_relator
from .words import GroupRingElt, Presentation, Word

Key = Callable[[Word], Hashable]


def word_key(w: Word) -> Hashable:
    return w


def rep_key(rho: Rep, digits: int = 8) -> Key:
    """Identify words whose images under rho agree to ``digits`` decimals."""

    def key(w: Word):
        g = rho(w)
        return tuple(np.round(np.asarray(g, dtype=complex).ravel(), digits) + 0.0)

    return key


class BarChain:
    """Formal integer combination of (n+1)-tuples of words."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Iterable[tuple[tuple[Word, ...], int]] | dict = (), key: Key = word_key):
        self.degree = degree
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = defaultdict(int)
        reps: dict = {}
        for tup, c in items:
            tup = tuple(tup)
            if len(tup) != degree + 1:
                raise ValueError(f"degree {degree} chain needs {degree + 1}-tuples")
            ks = tuple(key(w) for w in tup)
            if any(ks[i] == ks[i + 1] for i in range(degree)):
                continue
            acc[ks] += c
            reps.setdefault(ks, tup)
        self.terms = {reps[k]: c for k, c in acc.items() if c != 0}

    def items(self):
        return self.terms.items()

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BarChain") -> "BarChain":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return BarChain(self.degree, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "BarChain":
        return BarChain(self.degree, [(t, -c) for t, c in self.terms.items()])

    def __sub__(self, other: "BarChain") -> "BarChain":
        return self + (-other)

    def scale(self, n: int) -> "BarChain":
        return BarChain(self.degree, [(t, n * c) for t, c in self.terms.items()])

    def rekey(self, key: Key) -> "BarChain":
        """Re-normalize, merging tuples whose entries agree under ``key``."""
        return BarChain(self.degree, self.terms.items(), key)

    def equals(self, other: "BarChain", key: Key = word_key) -> bool:
        return (self - other).rekey(key).is_zero()

    def left_translate(self, A: Word) -> "BarChain":
        return BarChain(self.degree, [(tuple(A * w for w in t), c) for t, c in self.terms.items()])

    def __repr__(self):
        body = " ".join(f"{c:+d}({', '.join(map(str, t))})" for t, c in self.terms.items())
        return f"BarChain[{self.degree}]({body or '0'})"


def bar_boundary(ch: BarChain, key: Key = word_key) -> BarChain:
    if ch.degree < 1:
        raise ValueError("the boundary is defined from degree 1 on")
    out = []
    for tup, c in ch.items():
        for i in range(len(tup)):
            out.append((tup[:i] + tup[i + 1:], (-1) ** i * c))
    return BarChain(ch.degree - 1, out, key)


def chain_map_c0(A: Word) -> BarChain:
    return BarChain(0, [((A,), 1)])


def chain_map_c1(A: Word, i: int) -> BarChain:
    return BarChain(1, [((A, A * Word.gen(i)), 1)])


def chain_map_c2(A: Word, r: Word) -> BarChain:
    """Letter-by-letter image of the 2-cell A r."""
    out = []
    prefix = Word.identity()
    for g, e in r:
        step = Word.gen(g, e)
        if e == 1:
            out.append(((A, A * prefix, A * prefix * step), 1))
        else:
            out.append(((A, A * prefix * step, A * prefix), -1))
        prefix = prefix * step
    return BarChain(2, out)


def c1_of(e: GroupRingElt, i: int) -> BarChain:
    out = []
    for w, c in e.items():
        out += [(t, c * k) for t, k in chain_map_c1(w, i).items()]
    return BarChain(1, out)


def c2_of_expansion(expansion: Sequence[tuple[GroupRingElt, Word]]) -> BarChain:
    """c2 applied to sum_j A_j r_j."""
    out = []
    for A, r in expansion:
        for w, c in A.items():
            out += [(t, c * k) for t, k in chain_map_c2(w, r).items()]
    return BarChain(2, out)


def cone(ch: BarChain) -> BarChain:
    """Prepend the identity to every tuple."""
    one = Word.identity()
    return BarChain(ch.degree + 1, [((one,) + t, c) for t, c in ch.items()])


class FundamentalClassError(ValueError):
    pass


def build_fundamental_class(expansion: Sequence[tuple[GroupRingElt, Word]], key: Key = word_key) -> BarChain:
    """O' = cone(c2 d3 O), so that its boundary is c2 d3 O.

    ``key`` decides when two words are the same group element; the 2-chain
    must be a cycle under it.
    """
    two = c2_of_expansion(expansion).rekey(key)
    if not bar_boundary(two, key).is_zero():
        raise FundamentalClassError("c2 d3 O is not a cycle; check the 3-cell boundary")
    return cone(two).rekey(key)


def pairing_24P1(O: BarChain, rho: Rep, P: Presentation | None = None, eps: float = 1e-9) -> ModOne:
    """frac(24 * sum n_i l(rho(g_0), ..., rho(g_3)))."""
    if O.degree != 3:
        raise ValueError("the pairing takes a degree-3 chain")
    if P is not None:
        bad = first_violated_relator(P, rho, eps)
        if bad is not None:
            raise RepError(f"representation violates relator {bad + 1}")
    total = 0.0
    for tup, c in O.items():
        total += c * 24 * cocycle_l(*(np.real_if_close(rho(w)) for w in tup)).value
    return ModOne(total)
