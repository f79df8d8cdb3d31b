"""Algebraic torsion of based cochain complexes.

A complex is ``C^0 -> C^1 -> ... -> C^m`` with the coboundary ``d^i`` stored
as a ``dims[i+1] x dims[i]`` matrix in the distinguished bases. In degree i
the torsion uses the basis ``b_i, h_i, bt_{i+1}`` of ``C^i``: ``bt_{i+1}``
are standard basis vectors on the pivot columns of ``d^i``, ``b_{i+1}`` is
their image, and ``h_i`` are cocycles representing cohomology. With
``D_i = det[b_i h_i bt_{i+1}]`` in c-coordinates,

    T = prod_i D_i ** (-1) ** (i + 1).

This is the exponent that makes the change-of-basis law hold with
``[d/e]`` read as "d written in e-coordinates".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalars import (
    DEFAULT_EPS,
    Backend,
    Matrix,
    det,
    kernel_basis,
    pivot_columns,
    rank_eps,
    solve,
)


class ComplexError(ValueError):
    """The input is not a valid based complex for the requested operation."""


def sign_of(x) -> int:
    x = x.real if isinstance(x, complex) else x
    if x == 0:
        raise ComplexError("zero has no sign")
    return 1 if x > 0 else -1


@dataclass
class BasedComplex:
    dims: list[int]
    coboundaries: list[Matrix]
    cohomology: list[list[np.ndarray]] | None = None
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        self.dims = [int(d) for d in self.dims]
        if any(d < 0 for d in self.dims):
            raise ComplexError("negative dimension")
        if len(self.coboundaries) != len(self.dims) - 1:
            raise ComplexError("need one coboundary per consecutive pair of degrees")
        backs = {d.backend for d in self.coboundaries}
        if len(backs) > 1:
            raise ComplexError("coboundaries mix backends")
        self.backend = backs.pop() if backs else Backend.EXACT
        if self.backend is Backend.EXACT:
            self.eps = 0
        for i, d in enumerate(self.coboundaries):
            if d.shape != (self.dims[i + 1], self.dims[i]):
                raise ComplexError(f"coboundary {i} has shape {d.shape}, expected {(self.dims[i + 1], self.dims[i])}")
        for i in range(len(self.coboundaries) - 1):
            prod = self.coboundaries[i + 1] @ self.coboundaries[i]
            scale = max(self.coboundaries[i + 1].max_abs() * self.coboundaries[i].max_abs(), 1.0)
            if prod.max_abs() > (self.eps * 10) * scale:
                raise ComplexError(f"coboundary {i + 1} o coboundary {i} is not zero (residual {prod.max_abs():.3g})")
        if self.cohomology is not None:
            if len(self.cohomology) != len(self.dims):
                raise ComplexError("cohomology bases must be given for every degree")
            self.cohomology = [[np.asarray(v) for v in vs] for vs in self.cohomology]

    @property
    def length(self) -> int:
        return len(self.dims) - 1

    def betti(self) -> list[int]:
        ranks = [rank_eps(d, self.eps) for d in self.coboundaries]
        out = []
        for i, n in enumerate(self.dims):
            r_out = ranks[i] if i < len(ranks) else 0
            r_in = ranks[i - 1] if i > 0 else 0
            out.append(n - r_out - r_in)
        return out

    def is_acyclic(self) -> bool:
        return all(b == 0 for b in self.betti())

    def with_cohomology(self, bases) -> "BasedComplex":
        return BasedComplex(self.dims, self.coboundaries, bases, self.eps)


@dataclass
class HomologyOrientation:
    """Real cohomology bases listed degree by degree in positive order."""

    bases: list[list[np.ndarray]] = field(default_factory=list)


def _zero_vec(n: int, backend: Backend) -> np.ndarray:
    if backend is Backend.EXACT:
        v = np.empty(n, dtype=object)
        v.fill(Fraction(0))
        return v
    return np.zeros(n)


def _unit(n: int, j: int, backend: Backend) -> np.ndarray:
    v = _zero_vec(n, backend)
    v[j] = 1
    return v


def cohomology_basis(C: BasedComplex) -> list[list[np.ndarray]]:
    """A default choice of cocycles spanning a complement of B^i in Z^i."""
    out = []
    for i, n in enumerate(C.dims):
        d_out = C.coboundaries[i] if i < C.length else Matrix.zeros(0, n, C.backend)
        Z = kernel_basis(d_out, C.eps) if d_out.rows else [_unit(n, j, C.backend) for j in range(n)]
        if i > 0:
            d_in = C.coboundaries[i - 1]
            B = [d_in.column(j) for j in pivot_columns(d_in, C.eps)]
        else:
            B = []
        stack = Matrix.from_columns(B + Z, n, C.backend) if (B or Z) else Matrix.zeros(n, 0, C.backend)
        piv = pivot_columns(stack, C.eps)
        out.append([Z[j - len(B)] for j in piv if j >= len(B)])
    return out


def _degree_bases(C: BasedComplex, order: Sequence[Sequence[int]] | None):
    """Return per degree (b_i, bt_{i+1}) with bt as column indices."""
    bt = []
    for i, d in enumerate(C.coboundaries):
        o = None if order is None or order[i] is None else order[i]
        bt.append(pivot_columns(d, C.eps, o))
    return bt


def degree_determinants(C: BasedComplex, order=None) -> list:
    """D_i = det[b_i h_i bt_{i+1}] in c-coordinates, for each degree."""
    h = C.cohomology if C.cohomology is not None else [[] for _ in C.dims]
    bt = _degree_bases(C, order)
    dets = []
    for i, n in enumerate(C.dims):
        cols = []
        if i > 0:
            cols += [C.coboundaries[i - 1].column(j) for j in bt[i - 1]]
        cols += list(h[i])
        if i < C.length:
            cols += [_unit(n, j, C.backend) for j in bt[i]]
        if len(cols) != n:
            if C.cohomology is None:
                raise ComplexError(f"complex is not acyclic in degree {i} and no cohomology basis was given")
            raise ComplexError(f"degree {i}: {len(h[i])} cohomology vectors, expected {n - len(cols) + len(h[i])}")
        D = det(Matrix.from_columns(cols, n, C.backend)) if n else (Fraction(1) if C.backend is Backend.EXACT else 1.0)
        if D == 0 or (C.backend is Backend.FLOAT and abs(D) < 1e-300):
            raise ComplexError(f"degree {i}: cohomology vectors do not complete a basis")
        dets.append(D)
    return dets


def compute_torsion(C: BasedComplex, order: Sequence[Sequence[int] | None] | None = None):
    """Torsion of a based complex. ``order`` optionally fixes the column scan per degree."""
    T = Fraction(1) if C.backend is Backend.EXACT else 1.0
    for i, D in enumerate(degree_determinants(C, order)):
        T = T * D if i % 2 == 1 else T / D
    return T


def rebase_torsion(T, c_change_dets: Sequence, h_change_dets: Sequence | None = None):
    """Torsion after a change of bases.

    ``c_change_dets[j]`` is det A_j where the new basis is ``c'_j = c_j A_j``
    (columns of A_j are new vectors in old coordinates); ``h_change_dets[j]``
    is det B_j for ``h'_j = h_j B_j``.
    """
    h_change_dets = list(h_change_dets) if h_change_dets is not None else [1] * len(c_change_dets)
    if len(h_change_dets) != len(c_change_dets):
        raise ValueError("need one determinant per degree for both bases")
    out = T
    for j, (a, b) in enumerate(zip(c_change_dets, h_change_dets)):
        if a == 0 or b == 0:
            raise ValueError(f"singular change of basis in degree {j}")
        exact = all(isinstance(v, (int, Fraction)) for v in (a, b, out))
        factor = Fraction(b) / Fraction(a) if exact else b / a
        out = out * factor if j % 2 == 1 else out / factor
    return out


def n_parity(cell_dims: Sequence[int], cohomology_dims: Sequence[int]) -> int:
    """Parity N(X) from the cell and real cohomology dimensions."""
    if len(cell_dims) != len(cohomology_dims):
        raise ValueError("cell and cohomology dimensions must have equal length")
    d = len(cell_dims) - 1
    total = 0
    for i in range(d + 1):
        h = sum(cohomology_dims[d - j] for j in range(i + 1))
        c = sum(cell_dims[d - j] for j in range(i + 1))
        total += h * c
    return total % 2


def real_sign(real: BasedComplex, orientation: HomologyOrientation) -> int:
    """sign((-1)^N T) of the untwisted real complex with a homology orientation."""
    R = real.with_cohomology(orientation.bases)
    N = n_parity(R.dims, [len(b) for b in orientation.bases])
    return (-1) ** N * sign_of(compute_torsion(R))


def refined_torsion(real: BasedComplex, orientation: HomologyOrientation, twisted: BasedComplex):
    if twisted.dims and len(real.dims) != len(twisted.dims):
        raise ComplexError("real and twisted complexes come from different cell structures")
    n = twisted.dims[0] // real.dims[0] if real.dims[0] else 0
    if any(t != n * r for t, r in zip(twisted.dims, real.dims)):
        raise ComplexError("twisted dimensions are not a fixed multiple of the cell dimensions")
    return real_sign(real, orientation) * compute_torsion(twisted)


# ---------------------------------------------------------------------------
# long exact sequences

@dataclass
class LESResult:
    torsion_H: object
    eta: int
    holds: bool
    lhs: object
    rhs: object
    im_j: list = field(default_factory=list)
    im_k: list = field(default_factory=list)
    im_delta: list = field(default_factory=list)


def _coords_mod_image(C: BasedComplex, i: int, h: list, z) -> np.ndarray:
    """Coordinates of the cocycle z on the basis h modulo coboundaries."""
    n = C.dims[i]
    B = []
    if i > 0:
        d_in = C.coboundaries[i - 1]
        B = [d_in.column(j) for j in pivot_columns(d_in, C.eps)]
    if not h:
        return _zero_vec(0, C.backend)
    M = Matrix.from_columns(list(h) + B, n, C.backend)
    x = solve(M, z, C.eps)
    return x[: len(h)]


def _B_dim(C: BasedComplex, i: int) -> int:
    if i <= 0 or i > C.length:
        return 0
    return rank_eps(C.coboundaries[i - 1], C.eps)


def les_torsion_and_eta(C: BasedComplex, Cbar: BasedComplex, Cund: BasedComplex,
                        j_maps: Sequence[Matrix], k_maps: Sequence[Matrix]) -> LESResult:
    """Milnor's multiplicativity for ``0 -> C -j-> Cbar -k-> Cund -> 0``.

    The long exact sequence is ordered ``H^i -> Hbar^i -> Hund^i -> H^{i+1}``
    and treated as a complex starting in degree 0. Cohomology bases default
    to :func:`cohomology_basis` when a complex carries none.
    """
    m = len(C.dims)
    if not (len(Cbar.dims) == len(Cund.dims) == m == len(j_maps) == len(k_maps)):
        raise ComplexError("the three complexes and the maps must have equal length")
    backend = Cbar.backend
    eps = Cbar.eps
    for i in range(m):
        j, k = j_maps[i], k_maps[i]
        if j.shape != (Cbar.dims[i], C.dims[i]) or k.shape != (Cund.dims[i], Cbar.dims[i]):
            raise ComplexError(f"map shapes wrong in degree {i}")
        if (k @ j).max_abs() > 10 * eps * max(k.max_abs() * j.max_abs(), 1):
            raise ComplexError(f"k o j != 0 in degree {i}")
        if rank_eps(j, eps) != C.dims[i] or rank_eps(k, eps) != Cund.dims[i] or C.dims[i] + Cund.dims[i] != Cbar.dims[i]:
            raise ComplexError(f"sequence not exact in degree {i}")
        if i < m - 1:
            for lhs, rhs in ((Cbar.coboundaries[i] @ j, j_maps[i + 1] @ C.coboundaries[i]),
                             (Cund.coboundaries[i] @ k, k_maps[i + 1] @ Cbar.coboundaries[i])):
                if (lhs - rhs).max_abs() > 10 * eps * max(lhs.max_abs(), 1):
                    raise ComplexError(f"maps do not commute with coboundaries in degree {i}")
        # det[cbar / j(c) s(cund)] must be 1
        lifts = [solve(k, _unit(Cund.dims[i], t, backend), eps) for t in range(Cund.dims[i])]
        cols = [j.column(t) for t in range(C.dims[i])] + lifts
        if cols:
            D = det(Matrix.from_columns(cols, Cbar.dims[i], backend))
            if abs(D - 1) > 10 * max(eps, 0):
                raise ComplexError(f"degree {i}: basis determinant is {D}, not 1")

    h = C.cohomology or cohomology_basis(C)
    hb = Cbar.cohomology or cohomology_basis(Cbar)
    hu = Cund.cohomology or cohomology_basis(Cund)

    dims_H, maps_H = [], []
    for i in range(m):
        dims_H += [len(h[i]), len(hb[i]), len(hu[i])]
        jstar = [_coords_mod_image(Cbar, i, hb[i], j_maps[i] @ z) for z in h[i]]
        kstar = [_coords_mod_image(Cund, i, hu[i], k_maps[i] @ z) for z in hb[i]]
        maps_H.append(Matrix.from_columns(jstar, len(hb[i]), backend) if jstar else Matrix.zeros(len(hb[i]), 0, backend))
        maps_H.append(Matrix.from_columns(kstar, len(hu[i]), backend) if kstar else Matrix.zeros(len(hu[i]), 0, backend))
        if i < m - 1:
            conn = []
            for z in hu[i]:
                x = solve(k_maps[i], z, eps)
                y = Cbar.coboundaries[i] @ x
                w = solve(j_maps[i + 1], y, eps)
                conn.append(_coords_mod_image(C, i + 1, h[i + 1], w))
            maps_H.append(Matrix.from_columns(conn, len(h[i + 1]), backend) if conn else Matrix.zeros(len(h[i + 1]), 0, backend))
    H = BasedComplex(dims_H, maps_H, None, eps)
    if not H.is_acyclic():
        raise ComplexError("long exact sequence is not exact")
    tH = compute_torsion(H)

    im_j = [rank_eps(maps_H[3 * i], eps) for i in range(m)]
    im_k = [rank_eps(maps_H[3 * i + 1], eps) for i in range(m)]
    im_d = [rank_eps(maps_H[3 * i + 2], eps) for i in range(m - 1)] + [0]
    eta = 0
    for i in range(m):
        eta += im_j[i] * _B_dim(Cund, i) + im_k[i] * _B_dim(C, i + 1) + _B_dim(C, i + 1) * _B_dim(Cund, i)
    eta %= 2

    tC = compute_torsion(C.with_cohomology(h))
    tB = compute_torsion(Cbar.with_cohomology(hb))
    tU = compute_torsion(Cund.with_cohomology(hu))
    lhs = (-1) ** eta * tB
    rhs = tC * tU * tH
    if backend is Backend.EXACT:
        holds = lhs == rhs
    else:
        holds = abs(lhs - rhs) <= 1e-8 * max(abs(lhs), abs(rhs), 1e-300)
    return LESResult(tH, eta, holds, lhs, rhs, im_j, im_k, im_d)


# ---------------------------------------------------------------------------
# file format

def _parse_scalar(x, exact: bool):
    if isinstance(x, str):
        return Fraction(x) if exact else float(Fraction(x))
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ComplexError(f"bad matrix entry {x!r}")
    if exact:
        if isinstance(x, float):
            raise ComplexError("exact backend needs integer or 'p/q' string entries")
        return Fraction(x)
    return float(x)


def complex_from_json(data: dict, backend: Backend | None = None) -> BasedComplex:
    """Build a complex from ``{"dims": [...], "coboundaries": [...]}``.

    Entries are numbers or "p/q" strings; the backend defaults to exact when
    no entry is a float. Optional "cohomology" lists cocycle vectors per degree.
    """
    try:
        dims = [int(d) for d in data["dims"]]
        raw = data["coboundaries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ComplexError(f"bad complex description: {exc}") from exc
    if backend is None:
        name = data.get("backend")
        if name is not None:
            backend = Backend(name)
        else:
            floats = any(isinstance(x, float) for m in raw for row in m for x in row)
            backend = Backend.FLOAT if floats else Backend.EXACT
    exact = backend is Backend.EXACT
    if len(raw) != len(dims) - 1:
        raise ComplexError("need one coboundary per consecutive pair of degrees")
    mats = []
    for i, m in enumerate(raw):
        r, c = dims[i + 1], dims[i]
        if r == 0 or c == 0:
            mats.append(Matrix.zeros(r, c, backend))
            continue
        rows = [[_parse_scalar(x, exact) for x in row] for row in m]
        mats.append(Matrix(rows, backend))
    coh = data.get("cohomology")
    if coh is not None:
        coh = [[np.array([_parse_scalar(x, exact) for x in v], dtype=object if exact else float) for v in vs]
               for vs in coh]
    return BasedComplex(dims, mats, coh, DEFAULT_EPS)
