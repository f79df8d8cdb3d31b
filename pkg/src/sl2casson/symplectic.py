"""Closed surfaces: the Upsilon recursion, the cup-product pairing on H^1,
symplectic bases and the refined torsion of the adjoint complex.

Generators are numbered a_i = x_{2i-1}, b_i = x_{2i}; the basis symbol of
C_1 dual to a_i (b_i) has index 2i-1 (2i).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import least_squares

from .local_systems import ChainData, CoefficientKind, twisted_cochain_complex
from .reps import (Flavor, Rep, RepError, adjoint_matrix, killing_gram, lie_basis, su2_irreducible,
                   verify_relators, zariski_dense_check)
from .scalars import DEFAULT_EPS
from .torsion import BasedComplex, compute_torsion, sign_of
from .words import Presentation, Word, fox_derivative


class SymplecticError(ValueError):
    pass


def a(i: int) -> Word:
    return Word.gen(2 * i - 1)


def b(i: int) -> Word:
    return Word.gen(2 * i)


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


@dataclass
class SurfaceData:
    genus: int
    presentation: Presentation = field(init=False)
    chain: ChainData = field(init=False)

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError("surface genus must be at least 2")
        r = Word.identity()
        for i in range(1, self.genus + 1):
            r = r * commutator(a(i), b(i))
        self.presentation = Presentation(2 * self.genus, (r,))
        self.chain = ChainData.from_presentation(self.presentation)

    @property
    def relator(self) -> Word:
        return self.presentation.relators[0]

    @property
    def n_gens(self) -> int:
        return 2 * self.genus


# ---------------------------------------------------------------------------
# tensor chains and Upsilon

class TensorChain:
    """Finite sum of c (u e_i) (x) (v e_j) with words u, v and symbol indices i, j."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        acc: dict = defaultdict(int)
        items = terms.items() if isinstance(terms, dict) else terms
        for key, c in items:
            acc[key] += c
        self.terms = {k: c for k, c in acc.items() if c}

    def __add__(self, other: "TensorChain") -> "TensorChain":
        return TensorChain(list(self.terms.items()) + list(other.terms.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorChain) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def translate(self, w: Word) -> "TensorChain":
        """Diagonal left action of w."""
        return TensorChain([((w * u, i, w * v, j), c) for (u, i, v, j), c in self.terms.items()])

    def items(self):
        return self.terms.items()

    def __repr__(self):
        body = " ".join(f"{c:+d}({u} e{i} ⊗ {v} e{j})" for (u, i, v, j), c in self.terms.items())
        return f"TensorChain({body or '0'})"


def alpha(w: Word, n_gens: int) -> list[tuple[Word, int, int]]:
    """Fox expansion sum_i (dw/dx_i) e_i as (word, symbol, coefficient) triples."""
    out = []
    for i in range(1, n_gens + 1):
        for u, c in fox_derivative(w, i).items():
            out.append((u, i, c))
    return out


def kappa(u: Word, v: Word, n_gens: int) -> TensorChain:
    """alpha(u) (x) u alpha(v)."""
    return TensorChain([((p, i, u * q, j), c * d) for p, i, c in alpha(u, n_gens)
                        for q, j, d in alpha(v, n_gens)])


def _upsilon_letter(g: int, e: int) -> TensorChain:
    if e == 1:
        return TensorChain()
    inv = Word.gen(g, -1)
    return TensorChain([((inv, g, inv, g), 1)])


def upsilon(w: Word, n_gens: int) -> TensorChain:
    """The map with U(uv) = U(u) + u U(v) + kappa(u, v), vanishing on 1 and generators."""
    for g, _ in w:
        if g > n_gens:
            raise ValueError(f"generator x{g} is not a surface generator")
    out = TensorChain()
    prefix = Word.identity()
    for g, e in w:
        letter = Word.gen(g, e)
        out = out + _upsilon_letter(g, e).translate(prefix) + kappa(prefix, letter, n_gens)
        prefix = prefix * letter
    return out


def upsilon_split(u: Word, v: Word, n_gens: int) -> TensorChain:
    """U(uv) assembled from U(u) and U(v); a consistency check on the recursion."""
    return upsilon(u, n_gens) + upsilon(v, n_gens).translate(u) + kappa(u, v, n_gens)


# ---------------------------------------------------------------------------
# cocycles and the cup pairing

@dataclass
class _Coefficients:
    """Action of words on the coefficient space and an invariant form on it."""

    action: Callable[[Word], np.ndarray]
    form: np.ndarray
    dim: int


def adjoint_coefficients(rho: Rep) -> _Coefficients:
    basis = lie_basis(rho.flavor)
    cache: dict = {}

    def act(w: Word) -> np.ndarray:
        if w not in cache:
            cache[w] = adjoint_matrix(rho(w), basis)
        return cache[w]

    return _Coefficients(act, np.real_if_close(killing_gram(basis)), 3)


def trivial_coefficients() -> _Coefficients:
    return _Coefficients(lambda w: np.ones((1, 1)), np.ones((1, 1)), 1)


def _block(f: np.ndarray, i: int, n: int) -> np.ndarray:
    return f[(i - 1) * n:i * n]


def is_cocycle(f, coeffs: _Coefficients, sd: SurfaceData, eps: float = DEFAULT_EPS) -> bool:
    n = coeffs.dim
    total = np.zeros(n)
    for i in range(1, sd.n_gens + 1):
        for w, c in fox_derivative(sd.relator, i).items():
            total = total + c * coeffs.action(w) @ _block(np.asarray(f), i, n)
    return float(np.abs(total).max()) <= eps * max(1.0, float(np.abs(f).max()))


def _pairing(f, fp, coeffs: _Coefficients, chain: TensorChain) -> float:
    n, K = coeffs.dim, coeffs.form
    total = 0.0
    for (u, i, v, j), c in chain.items():
        total += c * (coeffs.action(u) @ _block(f, i, n)) @ K @ (coeffs.action(v) @ _block(fp, j, n))
    return float(np.real(total))


def cup_pairing(f, fp, coeffs: _Coefficients, sd: SurfaceData, check: bool = True,
                eps: float = 1e-8) -> float:
    """psi(f (x) f') evaluated on U(r)."""
    f, fp = np.asarray(f), np.asarray(fp)
    if check and not (is_cocycle(f, coeffs, sd, eps) and is_cocycle(fp, coeffs, sd, eps)):
        raise SymplecticError("cup pairing takes cocycles")
    return _pairing(f, fp, coeffs, upsilon(sd.relator, sd.n_gens))


def cup_pairing_explicit(f, fp, coeffs: _Coefficients, sd: SurfaceData) -> float:
    """The same pairing from the closed formula in terms of f(x_i), f(y_i)."""
    n, K, act = coeffs.dim, coeffs.form, coeffs.action
    f, fp = np.asarray(f), np.asarray(fp)
    psi = lambda u, v: float(np.real(u @ K @ v))
    g = sd.genus

    def elt(*terms):
        return sum(c * act(w) for c, w in terms)

    def I(i):
        w = Word.identity()
        for m in range(1, i):
            w = w * commutator(a(m), b(m))
        return w

    fx = lambda h, i: _block(h, 2 * i - 1, n)
    fy = lambda h, i: _block(h, 2 * i, n)
    one = Word.identity()
    total = 0.0
    for i in range(1, g + 1):
        ai, bi = a(i), b(i)
        aba = ai * bi * ai.inverse()
        total += psi(fx(f, i), elt((1, ai), (1, bi.inverse()), (-1, commutator(ai, bi))) @ fy(fp, i))
        total -= psi(fy(f, i), act(bi * ai.inverse()) @ fx(fp, i))
        total += psi(fx(f, i), elt((1, one), (-1, aba)) @ fx(fp, i))
        total += psi(fy(f, i), elt((1, one), (-1, bi * ai.inverse() * bi.inverse())) @ fy(fp, i))
        right = (elt((1, I(i)), (-1, I(i) * aba)) @ fx(fp, i)
                 + elt((1, I(i) * ai), (-1, I(i + 1))) @ fy(fp, i))
        for m in range(1, i):
            am, bm = a(m), b(m)
            left = (elt((1, I(m)), (-1, I(m) * am * bm * am.inverse())) @ fx(f, m)
                    + elt((1, I(m) * am), (-1, I(m + 1))) @ fy(f, m))
            total += psi(left, right)
    return total


# ---------------------------------------------------------------------------
# symplectic bases and torsion

def _cohomology_complement(C: BasedComplex, eps: float) -> np.ndarray:
    """Columns spanning a complement of im(delta^0) in ker(delta^1)."""
    d0 = np.asarray(C.coboundaries[0].a, dtype=float)
    d1 = np.asarray(C.coboundaries[1].a, dtype=float)
    if d1.shape[0]:
        _, s, vh = np.linalg.svd(d1)
        r = int(np.sum(s > eps * max(s.max(initial=0.0), 1.0)))
        Z = vh[r:].T
    else:
        Z = np.eye(d1.shape[1])
    if d0.size:
        q, s, _ = np.linalg.svd(d0, full_matrices=False)
        Q = q[:, s > eps * max(s.max(initial=0.0), 1.0)]
        Z = Z - Q @ (Q.T @ Z)
    u, s, _ = np.linalg.svd(Z, full_matrices=False)
    return u[:, s > 1e-6]


def symplectic_gram_schmidt(vecs: Sequence[np.ndarray], omega: Callable, tol: float = 1e-8) -> list[np.ndarray]:
    """Reorder and combine vectors into e_1, f_1, e_2, f_2, ... with omega(e_k, f_k) = 1."""
    vecs = [np.asarray(v, dtype=float) for v in vecs]
    if len(vecs) % 2:
        raise SymplecticError("odd-dimensional space has no symplectic basis")
    out = []
    while vecs:
        e = vecs.pop(0)
        vals = [omega(e, v) for v in vecs]
        idx = int(np.argmax(np.abs(vals)))
        if abs(vals[idx]) <= tol:
            raise SymplecticError("degenerate pairing (representation not dense or irreducible?)")
        f = vecs.pop(idx) / vals[idx]
        out += [e, f]
        vecs = [v - omega(v, f) * e + omega(v, e) * f for v in vecs]
    return out


def standard_symplectic(k: int) -> np.ndarray:
    J = np.zeros((2 * k, 2 * k))
    for m in range(k):
        J[2 * m, 2 * m + 1], J[2 * m + 1, 2 * m] = 1.0, -1.0
    return J


def gram_matrix(vecs, omega) -> np.ndarray:
    return np.array([[omega(u, v) for v in vecs] for u in vecs])


def symplectic_basis(rho: Rep, sd: SurfaceData, seed: int = 0, eps: float = DEFAULT_EPS) -> list[np.ndarray]:
    """6g - 6 adjoint cocycles whose cup-pairing Gram matrix is standard."""
    if rho.flavor is Flavor.SU2:
        if not su2_irreducible(rho.images):
            raise SymplecticError("SU(2) representation is reducible")
    elif not zariski_dense_check(rho.images):
        raise SymplecticError("representation is not shown to be Zariski dense")
    C = twisted_cochain_complex(sd.chain, rho, CoefficientKind.ADJOINT3, eps)
    return _symplectic_basis(C, adjoint_coefficients(rho), sd, 6 * sd.genus - 6, seed, eps)


def _symplectic_basis(C, coeffs, sd, dim, seed, eps):
    H = _cohomology_complement(C, eps)
    if H.shape[1] != dim:
        raise SymplecticError(f"H^1 has dimension {H.shape[1]}, expected {dim}")
    mix = np.random.default_rng(seed).normal(size=(dim, dim))
    H = H @ mix
    upsi = upsilon(sd.relator, sd.n_gens)
    omega = lambda u, v: _pairing(u, v, coeffs, upsi)
    return symplectic_gram_schmidt([H[:, k] for k in range(dim)], omega)


def real_symplectic_basis(sd: SurfaceData, seed: int = 0) -> list[np.ndarray]:
    C = twisted_cochain_complex(sd.chain, None, CoefficientKind.TRIVIAL1)
    Cf = BasedComplex(C.dims, [m.to_float() for m in C.coboundaries], None, DEFAULT_EPS)
    return _symplectic_basis(Cf, trivial_coefficients(), sd, 2 * sd.genus, seed, DEFAULT_EPS)


def real_surface_sign(sd: SurfaceData, seed: int = 0) -> int:
    """sign of the untwisted torsion with a symplectic H^1 basis; N = 0 for surfaces."""
    C = twisted_cochain_complex(sd.chain, None, CoefficientKind.TRIVIAL1)
    Cf = BasedComplex(C.dims, [m.to_float() for m in C.coboundaries], None, DEFAULT_EPS)
    h0 = [np.ones(1)]
    h2 = [np.ones(1)]
    T = compute_torsion(Cf.with_cohomology([h0, real_symplectic_basis(sd, seed), h2]))
    return sign_of(T)


def surface_refined_torsion(rho: Rep, sd: SurfaceData, seed: int = 0, eps: float = DEFAULT_EPS) -> float:
    h = symplectic_basis(rho, sd, seed, eps)
    C = twisted_cochain_complex(sd.chain, rho, CoefficientKind.ADJOINT3, eps)
    T = compute_torsion(C.with_cohomology([[], h, []]))
    T = float(np.real(T))
    return real_surface_sign(sd, seed) * T


def calibration_report(values: Sequence[float], targets: Sequence[float], tol: float = 1e-6) -> dict:
    """Ratios value/target and whether a single constant explains all of them."""
    ratios = [v / t for v, t in zip(values, targets)]
    spread = max(ratios) - min(ratios) if ratios else 0.0
    scale = max(abs(r) for r in ratios) if ratios else 1.0
    return {"ratios": ratios, "constant": spread <= tol * max(scale, 1.0),
            "factor": ratios[0] if ratios else None}


# ---------------------------------------------------------------------------
# test representations

def su2_f0() -> Rep:
    """The genus-2 irreducible SU(2) representation used as a reference point."""
    s10 = np.sqrt(10)
    r = 1 / np.sqrt(-2 + 0j)
    a1 = np.array([[(2j + 2 - s10) / 6, (-2 + 1j * (2 + s10)) / 6],
                   [(2 + 1j * (2 + s10)) / 6, (-2j + 2 - s10) / 6]])
    b1 = np.array([[-r, -r], [-r, r]])
    a2 = np.array([[(1 - 1j) / 2, (-1 + 1j) / 2], [(1 + 1j) / 2, (1 + 1j) / 2]])
    b2 = np.array([[1, -1], [1, 1]]) / np.sqrt(2)
    return Rep([a1, b1, a2, b2], Flavor.SU2)


def _rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def _sl2(p) -> np.ndarray:
    """Unit-determinant matrix exp of the traceless matrix with entries p."""
    x, y, z = p
    X = np.array([[x, y], [z, -x]])
    d = x * x + y * z
    if d > 1e-14:
        r = np.sqrt(d)
        return np.cosh(r) * np.eye(2) + np.sinh(r) / r * X
    if d < -1e-14:
        r = np.sqrt(-d)
        return np.cos(r) * np.eye(2) + np.sin(r) / r * X
    return np.eye(2) + X


def genus2_test_rep(seed: int, tries: int = 200) -> Rep:
    """Genus-2 SL2(R) representation with hyperbolic a_1, a_2 and elliptic b_1, b_2.

    a_1 and b_1 are drawn at random, b_2 is an elliptic element
    P R(t) P^-1, and a_2 together with P and t is found by least squares
    so that [a_2, b_2] = [a_1, b_1]^-1.
    """
    rng = np.random.default_rng(seed)
    sd = SurfaceData(2)
    for _ in range(tries):
        A1 = _sl2([rng.uniform(0.8, 1.5), rng.normal(), rng.normal()])
        B1 = _rotation(rng.uniform(0.3, 2.8))
        target = np.linalg.inv(A1 @ B1 @ np.linalg.inv(A1) @ np.linalg.inv(B1))

        def unpack(v):
            A2 = _sl2(v[:3])
            P = _sl2(v[3:6])
            B2 = P @ _rotation(v[6]) @ np.linalg.inv(P)
            return A2, B2

        def residual(v):
            A2, B2 = unpack(v)
            return (A2 @ B2 @ np.linalg.inv(A2) @ np.linalg.inv(B2) - target).ravel()

        v0 = np.concatenate([rng.normal(size=6), [rng.uniform(0.3, 2.8)]])
        sol = least_squares(residual, v0, xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if np.abs(residual(sol.x)).max() > 1e-13:
            continue
        A2, B2 = unpack(sol.x)
        if min(abs(np.trace(A1)), abs(np.trace(A2))) <= 2 + 1e-3 or abs(np.trace(B2)) >= 2 - 1e-3:
            continue
        rho = Rep([A1, B1, A2, B2])
        if zariski_dense_check(rho.images) and verify_relators(sd.presentation, rho, 1e-10):
            return rho
    raise RepError(f"no test representation found for seed {seed}")
