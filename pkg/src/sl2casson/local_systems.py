"""Twisted cochain complexes of presentation complexes.

For a presentation with boundary matrices d1 (g x 1), d2 (g x r) and an
optional 3-cell row d3 (r entries), the cochain complex with coefficients
in F^n has dims n * (1, g, r[, 1]) and coboundaries

    delta^0 block i     = rho(1 - x_i)
    delta^1 block (j,i) = rho(d r_j / d x_i)
    delta^2 block (0,j) = rho(d3[j])

so each coboundary is the block matrix of the chain boundary, transposed at
the block level.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .reps import Rep, RepError, adjoint_matrix, first_violated_relator, lie_basis
from .scalars import DEFAULT_EPS, Backend, Matrix
from .torsion import BasedComplex, HomologyOrientation, cohomology_basis
from .words import GroupRingElt, Presentation, boundary_matrices


class CoefficientKind(enum.Enum):
    STANDARD2 = 2
    ADJOINT3 = 3
    TRIVIAL1 = 1

    @property
    def dim(self) -> int:
        return self.value


@dataclass
class ChainData:
    presentation: Presentation
    d1: list[GroupRingElt]
    d2: list[list[GroupRingElt]]
    d3: list[GroupRingElt] | None = None

    def __post_init__(self):
        g, r = self.presentation.n_gens, self.presentation.n_rels
        if len(self.d1) != g or len(self.d2) != g or any(len(row) != r for row in self.d2):
            raise ValueError("boundary matrices do not match the presentation")
        if self.d3 is not None and len(self.d3) != r:
            raise ValueError("the 3-cell row needs one entry per relator")

    @classmethod
    def from_presentation(cls, P: Presentation, d3: Sequence[GroupRingElt] | None = None) -> "ChainData":
        d2, d1 = boundary_matrices(P)
        return cls(P, d1, d2, list(d3) if d3 is not None else None)

    @property
    def cell_dims(self) -> list[int]:
        dims = [1, self.presentation.n_gens, self.presentation.n_rels]
        return dims + [1] if self.d3 is not None else dims

    @property
    def closed(self) -> bool:
        return self.d3 is not None


class _Evaluator:
    """Caches word images for one representation and coefficient kind."""

    def __init__(self, rho: Rep | None, kind: CoefficientKind):
        self.rho, self.kind = rho, kind
        self.basis = lie_basis(rho.flavor) if rho is not None else None
        self.cache: dict = {}

    def word(self, w):
        if w in self.cache:
            return self.cache[w]
        if self.kind is CoefficientKind.TRIVIAL1:
            val = np.ones((1, 1))
        else:
            if self.rho is None:
                raise RepError("a representation is required for twisted coefficients")
            g = self.rho(w)
            val = g if self.kind is CoefficientKind.STANDARD2 else adjoint_matrix(g, self.basis)
        self.cache[w] = val
        return val

    def elt(self, e: GroupRingElt) -> np.ndarray:
        n = self.kind.dim
        dtype = complex if self.kind is CoefficientKind.STANDARD2 and self.rho.dtype is complex else float
        out = np.zeros((n, n), dtype=dtype)
        for w, c in e.items():
            out = out + c * self.word(w)
        return out


def evaluate_group_ring(e: GroupRingElt, rho: Rep | None, kind: CoefficientKind) -> Matrix:
    if kind is CoefficientKind.TRIVIAL1:
        return Matrix([[e.augmentation()]])
    return Matrix(_Evaluator(rho, kind).elt(e))


def _assemble(blocks: list[list[np.ndarray]], n: int) -> np.ndarray:
    rows = len(blocks)
    cols = len(blocks[0]) if rows else 0
    dtype = complex if any(np.iscomplexobj(b) for row in blocks for b in row) else float
    out = np.zeros((rows * n, cols * n), dtype=dtype)
    for a, row in enumerate(blocks):
        for b, blk in enumerate(row):
            out[a * n:(a + 1) * n, b * n:(b + 1) * n] = blk
    return out


def twisted_cochain_complex(cd: ChainData, rho: Rep | None, kind: CoefficientKind,
                            eps: float = DEFAULT_EPS, check_relators: bool = True) -> BasedComplex:
    """Cochain complex of the presentation complex with local coefficients."""
    if kind is CoefficientKind.TRIVIAL1:
        return _trivial_complex(cd)
    if rho is None:
        raise RepError("a representation is required for twisted coefficients")
    if check_relators:
        bad = first_violated_relator(cd.presentation, rho, eps)
        if bad is not None:
            raise RepError(f"representation violates relator {bad + 1}")
    ev = _Evaluator(rho, kind)
    n = kind.dim
    g, r = cd.presentation.n_gens, cd.presentation.n_rels
    d0 = _assemble([[ev.elt(cd.d1[i])] for i in range(g)], n)
    d1 = _assemble([[ev.elt(cd.d2[i][j]) for i in range(g)] for j in range(r)], n) if r else np.zeros((0, g * n))
    cobs = [Matrix(d0), Matrix(d1) if r else Matrix.zeros(0, g * n)]
    if cd.d3 is not None:
        d2 = _assemble([[ev.elt(cd.d3[j]) for j in range(r)]], n)
        cobs.append(Matrix(d2))
    dims = [n * k for k in cd.cell_dims]
    return BasedComplex(dims, cobs, None, eps)


def _trivial_complex(cd: ChainData) -> BasedComplex:
    g, r = cd.presentation.n_gens, cd.presentation.n_rels
    aug = lambda e: Fraction(e.augmentation())
    d0 = Matrix([[aug(cd.d1[i])] for i in range(g)], Backend.EXACT)
    d1 = Matrix([[aug(cd.d2[i][j]) for i in range(g)] for j in range(r)], Backend.EXACT) if r else Matrix.zeros(0, g, Backend.EXACT)
    cobs = [d0, d1]
    if cd.d3 is not None:
        cobs.append(Matrix([[aug(cd.d3[j]) for j in range(r)]], Backend.EXACT) if r else Matrix.zeros(1, 0, Backend.EXACT))
    return BasedComplex(list(cd.cell_dims), cobs)


def real_complex(cd: ChainData) -> BasedComplex:
    return _trivial_complex(cd)


def standard_orientation(cd: ChainData) -> HomologyOrientation:
    """Homology orientation from cochains dual to the cells, in cell order."""
    return HomologyOrientation(cohomology_basis(_trivial_complex(cd)))


def transversality_check(cd: ChainData, rho: Rep, eps: float = DEFAULT_EPS) -> bool:
    """True iff H^1 and H^2 with adjoint coefficients vanish.

    H^0 must vanish too: it does for every Zariski-dense rho, and a point
    with invariant vectors in g is reducible, hence never transversal.
    """
    if not cd.closed:
        raise ValueError("transversality needs closed-manifold data with a 3-cell")
    b = twisted_cochain_complex(cd, rho, CoefficientKind.ADJOINT3, eps).betti()
    return b[0] == 0 and b[1] == 0 and b[2] == 0
