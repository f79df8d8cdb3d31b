"""Representations into SL2(R) and SU(2), adjoint matrices and density tests."""
from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .scalars import DEFAULT_EPS
from .words import Presentation, Word

H = np.array([[1.0, 0.0], [0.0, -1.0]])
E = np.array([[0.0, 1.0], [0.0, 0.0]])
F = np.array([[0.0, 0.0], [1.0, 0.0]])
SL2_BASIS = (H, E, F)
# i times the Pauli matrices: a real basis of su(2)
SU2_BASIS = (np.array([[0, 1j], [1j, 0]]), np.array([[0, 1], [-1, 0]], dtype=complex),
             np.array([[1j, 0], [0, -1j]]))


class RepError(ValueError):
    pass


class Flavor(enum.Enum):
    SL2R = "sl2r"
    SU2 = "su2"


def as_mat2(g, eps: float = DEFAULT_EPS) -> np.ndarray:
    a = np.asarray(g)
    a = a.astype(complex if np.iscomplexobj(a) else float)
    if a.shape != (2, 2):
        raise RepError(f"expected a 2x2 matrix, got shape {a.shape}")
    if abs(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0] - 1) > eps * max(1.0, float(np.abs(a).max()) ** 2):
        raise RepError("matrix does not have unit determinant")
    return a


def inv2(g: np.ndarray) -> np.ndarray:
    """Inverse of a unit-determinant 2x2 matrix."""
    return np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]])


@dataclass
class Rep:
    images: list
    flavor: Flavor = Flavor.SL2R

    def __post_init__(self):
        self.images = [as_mat2(g) for g in self.images]
        if self.flavor is Flavor.SL2R and any(np.iscomplexobj(g) and np.abs(g.imag).max() > 0 for g in self.images):
            raise RepError("SL2(R) representation with complex entries")
        self._inv = [inv2(g) for g in self.images]

    @property
    def n_gens(self) -> int:
        return len(self.images)

    @property
    def dtype(self):
        return complex if any(np.iscomplexobj(g) for g in self.images) else float

    def __call__(self, w: Word) -> np.ndarray:
        out = np.eye(2, dtype=self.dtype)
        for g, e in w:
            if g > self.n_gens:
                raise RepError(f"no image for generator x{g}")
            out = out @ (self.images[g - 1] if e == 1 else self._inv[g - 1])
        return out

    def conjugate(self, h) -> "Rep":
        h = np.asarray(h)
        hi = np.linalg.inv(h)
        return Rep([h @ g @ hi for g in self.images], self.flavor)

    def negate(self, mask: Sequence[bool]) -> "Rep":
        return Rep([-g if s else g for g, s in zip(self.images, mask)], self.flavor)

    def to_json(self) -> str:
        if self.dtype is complex:
            gens = [[[[z.real, z.imag] for z in row] for row in g] for g in self.images]
        else:
            gens = [g.tolist() for g in self.images]
        return json.dumps({"gens": gens, "flavor": self.flavor.value}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Rep":
        try:
            data = json.loads(text)
            gens = data["gens"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise RepError(f"bad representation file: {exc}") from exc
        flavor = Flavor(data.get("flavor", "sl2r"))
        mats = []
        for g in gens:
            arr = np.array(g, dtype=float)
            if arr.shape == (2, 2, 2):
                arr = arr[..., 0] + 1j * arr[..., 1]
            mats.append(arr)
        return cls(mats, flavor)


def first_violated_relator(P: Presentation, rho: Rep, eps: float = DEFAULT_EPS) -> int | None:
    """Index (0-based) of the first relator not mapped to Id, or None."""
    if rho.n_gens != P.n_gens:
        raise RepError(f"{rho.n_gens} images for {P.n_gens} generators")
    I = np.eye(2)
    for j, r in enumerate(P.relators):
        if np.abs(rho(r) - I).max() > eps:
            return j
    return None


def verify_relators(P: Presentation, rho: Rep, eps: float = DEFAULT_EPS) -> bool:
    return first_violated_relator(P, rho, eps) is None


def relator_residual(P: Presentation, rho: Rep) -> float:
    I = np.eye(2)
    return max((float(np.abs(rho(r) - I).max()) for r in P.relators), default=0.0)


# ---------------------------------------------------------------------------
# Lie algebra

def sl2_coords(X) -> np.ndarray:
    """Coordinates of a traceless 2x2 matrix on {H, E, F}."""
    X = np.asarray(X)
    return np.array([X[0, 0], X[0, 1], X[1, 0]])


def lie_coords(X, basis=SL2_BASIS) -> np.ndarray:
    """Coordinates of X on a basis of traceless matrices."""
    if basis is SL2_BASIS:
        return sl2_coords(X)
    B = np.column_stack([np.asarray(b, dtype=complex).ravel() for b in basis])
    c = np.linalg.lstsq(B, np.asarray(X, dtype=complex).ravel(), rcond=None)[0]
    return c.real if np.abs(c.imag).max() <= 1e-12 else c


def lie_basis(flavor: "Flavor"):
    return SU2_BASIS if flavor is Flavor.SU2 else SL2_BASIS


def adjoint_matrix(g, basis=SL2_BASIS) -> np.ndarray:
    """Matrix of X -> g X g^-1 on the given basis ({H, E, F} by default)."""
    g = np.asarray(g)
    gi = inv2(g)
    return np.column_stack([lie_coords(g @ X @ gi, basis) for X in basis])


def killing_form(X, Y, eps: float = DEFAULT_EPS):
    X, Y = np.asarray(X), np.asarray(Y)
    for Z in (X, Y):
        if abs(np.trace(Z)) > eps * max(1.0, float(np.abs(Z).max())):
            raise RepError("Killing form takes traceless matrices")
    v = 4 * np.trace(X @ Y)
    return v.real if np.iscomplexobj(v) and abs(v.imag) <= eps else v


def killing_gram(basis=SL2_BASIS) -> np.ndarray:
    return np.array([[killing_form(X, Y) for Y in basis] for X in basis])


def mobius_infinity(g, eps: float = 1e-15) -> float:
    """b/d, or a/c when d = 0.

    This agrees with the projective image of 0 except when d = 0, where
    the projective image is inf; cocycle_l uses the projective image.
    """
    (a, b), (c, d) = np.asarray(g, dtype=float)
    if abs(d) > eps * max(abs(a), abs(b), abs(c), abs(d)):
        return b / d
    return a / c


# ---------------------------------------------------------------------------
# Zariski density

def _null(A: np.ndarray, eps: float) -> np.ndarray:
    if A.shape[1] == 0:
        return A[:0, :0]
    _, s, vh = np.linalg.svd(A)
    scale = max(float(s[0]) if s.size else 0.0, 1.0)
    r = int(np.sum(s > eps * scale))
    return vh[r:].conj().T


def _eigen_candidates(g: np.ndarray) -> list[float]:
    tr = float(np.real(np.trace(g)))
    disc = tr * tr - 4
    cands = [1.0]
    if disc > 0:
        mu = (tr + math.sqrt(disc)) / 2
        cands += [mu * mu, 1 / (mu * mu)]
    return cands


def _common_line(mats: Sequence[np.ndarray], cands: Sequence[list[float]], eps: float) -> bool:
    """True if all mats share a real eigenvector (eigenvalues from cands)."""
    spaces = [np.eye(3)]
    for A, lams in zip(mats, cands):
        nxt = []
        for V in spaces:
            for lam in lams:
                K = _null((A - lam * np.eye(3)) @ V, eps)
                if K.shape[1]:
                    W = V @ K
                    q, _ = np.linalg.qr(W)
                    nxt.append(q)
        if not nxt:
            return False
        spaces = nxt
    return True


def _infinite_heuristic(gens: Sequence[np.ndarray], eps: float) -> bool:
    cands = list(gens)
    for a, b in itertools.combinations(gens, 2):
        cands += [a @ b, a @ inv2(b), a @ b @ inv2(a) @ inv2(b)]
    for g in cands:
        tr = float(np.real(np.trace(g)))
        if abs(tr) > 2 + eps:
            return True
        if abs(abs(tr) - 2) <= eps and np.abs(g - np.sign(tr) * np.eye(2)).max() > 1e-6:
            return True
        if abs(tr) < 2 - eps:
            theta = math.acos(max(-1.0, min(1.0, tr / 2))) / (2 * math.pi)
            frac = Fraction(theta).limit_denominator(1000)
            if abs(float(frac) - theta) > 1e-9:
                return True
    return False


def zariski_dense_check(gens: Sequence, eps: float = DEFAULT_EPS) -> bool:
    """Conservative density test in SL2(R); false means "not shown dense"."""
    gens = [np.real_if_close(as_mat2(g)) for g in gens]
    if not gens or any(np.iscomplexobj(g) for g in gens):
        return False
    ads = [adjoint_matrix(g) for g in gens]
    cands = [_eigen_candidates(g) for g in gens]
    if _common_line(ads, cands, eps):
        return False
    duals = [np.linalg.inv(A).T for A in ads]
    if _common_line(duals, cands, eps):
        return False
    return _infinite_heuristic(gens, eps)


def su2_irreducible(gens: Sequence, eps: float = DEFAULT_EPS) -> bool:
    """Unitary 2-dim representations are reducible exactly when abelian."""
    gens = [np.asarray(g, dtype=complex) for g in gens]
    return any(np.abs(a @ b - b @ a).max() > eps for a, b in itertools.combinations(gens, 2))
