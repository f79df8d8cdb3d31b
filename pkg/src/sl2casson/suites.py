"""Randomized property suites shared by the test-suite and ``check``."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import chern_simons as cs
from .scalars import Backend, Matrix
from .torsion import BasedComplex, les_torsion_and_eta
from .words import Word, fox_derivative, reduce_word


@dataclass
class SuiteReport:
    name: str
    passed: int
    total: int
    failures: list

    @property
    def ok(self) -> bool:
        return self.passed == self.total


# ---------------------------------------------------------------------------
# random exact data

def _frac_matrix(rng: random.Random, r: int, c: int, lo=-3, hi=3) -> np.ndarray:
    a = np.empty((r, c), dtype=object)
    for i in range(r):
        for j in range(c):
            a[i, j] = Fraction(rng.randint(lo, hi))
    return a


def random_invertible(rng: random.Random, n: int, unimodular: bool = False) -> np.ndarray:
    """Random invertible rational matrix; det 1 if ``unimodular``."""
    while True:
        L = np.identity(n, dtype=object) + np.tril(_frac_matrix(rng, n, n, -2, 2), -1)
        U = np.identity(n, dtype=object) + np.triu(_frac_matrix(rng, n, n, -2, 2), 1)
        if not unimodular:
            for i in range(n):
                U[i, i] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 2]))
        P = np.identity(n, dtype=object)[rng.sample(range(n), n)]
        M = P.dot(L).dot(U)
        if unimodular and _perm_sign(P) < 0:
            M[:, 0] = -M[:, 0]
        for idx, x in np.ndenumerate(M):
            M[idx] = Fraction(x)
        return M


def _perm_sign(P: np.ndarray) -> int:
    perm = [int(np.argmax([x != 0 for x in row])) for row in P]
    sign, seen = 1, set()
    for s in range(len(perm)):
        if s in seen:
            continue
        k, L = s, 0
        while k not in seen:
            seen.add(k)
            k = perm[k]
            L += 1
        sign *= (-1) ** (L - 1)
    return sign


def _inv(M: np.ndarray) -> np.ndarray:
    from .scalars import inverse
    return inverse(Matrix(M)).a


def normal_form_complex(rng: random.Random, length: int, max_dim: int = 4):
    """Random complex in normal form: per degree, coordinates [B | H | Bt]."""
    ranks = [0]  # rank of d^{i-1} landing in degree i
    h = []
    dims = []
    for i in range(length + 1):
        b_in = ranks[-1]
        hi = rng.randint(0, max(0, max_dim - b_in))
        room = max_dim - b_in - hi
        r_out = rng.randint(0, room) if i < length else 0
        dims.append(b_in + hi + r_out)
        h.append(hi)
        ranks.append(r_out)
    ranks = ranks[1:]
    ds = []
    for i in range(length):
        D = np.empty((dims[i + 1], dims[i]), dtype=object)
        D.fill(Fraction(0))
        start = dims[i] - ranks[i]
        for t in range(ranks[i]):
            D[t, start + t] = Fraction(1)
        ds.append(D)
    return dims, ds, h, ranks


def random_short_exact_sequence(rng: random.Random, length: int | None = None, max_dim: int = 4):
    """(C, Cbar, Cund, j, k) with det[cbar / j(c) s(cund)] = 1 in every degree."""
    length = rng.randint(1, 3) if length is None else length
    dA, DA, hA, rA = normal_form_complex(rng, length, max_dim)
    dU, DU, hU, rU = normal_form_complex(rng, length, max_dim)
    psis = [_frac_matrix(rng, dA[i], dU[i], -1, 1) for i in range(length + 1)]
    phis = []
    for i in range(length):
        # a map Cund^i -> Z^{i+1}(C) vanishing on Bund^i, plus a homotopy term
        phi = np.empty((dA[i + 1], dU[i]), dtype=object)
        phi.fill(Fraction(0))
        b_u = rU[i - 1] if i > 0 else 0
        z_a = rA[i] + hA[i + 1]
        for r in range(z_a):
            for c in range(b_u, dU[i]):
                phi[r, c] = Fraction(rng.randint(-2, 2))
        phis.append(phi + DA[i].dot(psis[i]) - psis[i + 1].dot(DU[i]))
    P = [random_invertible(rng, n) for n in dA]
    Q = [random_invertible(rng, n) for n in dU]
    cC, cU, cB, js, ks = [], [], [], [], []
    S = []
    for i in range(length + 1):
        n = dA[i] + dU[i]
        Ui = random_invertible(rng, n, unimodular=True)
        diag = np.empty((n, n), dtype=object)
        diag.fill(Fraction(0))
        diag[: dA[i], : dA[i]] = P[i]
        diag[dA[i]:, dA[i]:] = Q[i]
        S.append(Ui.dot(diag))
    for i in range(length):
        A = P[i + 1].dot(DA[i]).dot(_inv(P[i]) if dA[i] else np.zeros((dA[i], dA[i]), dtype=object))
        U = Q[i + 1].dot(DU[i]).dot(_inv(Q[i]) if dU[i] else np.zeros((dU[i], dU[i]), dtype=object))
        bar = np.empty((dA[i + 1] + dU[i + 1], dA[i] + dU[i]), dtype=object)
        bar.fill(Fraction(0))
        bar[: dA[i + 1], : dA[i]] = DA[i]
        bar[: dA[i + 1], dA[i]:] = phis[i]
        bar[dA[i + 1]:, dA[i]:] = DU[i]
        Sinv = _inv(S[i]) if S[i].size else S[i]
        B = S[i + 1].dot(bar).dot(Sinv)
        cC.append(_fix(A, dA[i + 1], dA[i]))
        cU.append(_fix(U, dU[i + 1], dU[i]))
        cB.append(_fix(B, dA[i + 1] + dU[i + 1], dA[i] + dU[i]))
    for i in range(length + 1):
        n = dA[i] + dU[i]
        inc = np.empty((n, dA[i]), dtype=object)
        inc.fill(Fraction(0))
        for t in range(dA[i]):
            inc[t, t] = Fraction(1)
        proj = np.empty((dU[i], n), dtype=object)
        proj.fill(Fraction(0))
        for t in range(dU[i]):
            proj[t, dA[i] + t] = Fraction(1)
        j = S[i].dot(inc).dot(_inv(P[i])) if dA[i] else inc
        k = Q[i].dot(proj).dot(_inv(S[i])) if n else proj
        js.append(_fix(j, n, dA[i]))
        ks.append(_fix(k, dU[i], n))
    C = BasedComplex(dA, cC)
    Cu = BasedComplex(dU, cU)
    Cb = BasedComplex([a + b for a, b in zip(dA, dU)], cB)
    return C, Cb, Cu, js, ks


def _fix(a: np.ndarray, r: int, c: int) -> Matrix:
    out = Matrix.zeros(r, c, Backend.EXACT)
    if r and c:
        out.a[:, :] = a
    return out


def run_milnor(seed: int, trials: int = 200) -> SuiteReport:
    rng = random.Random(seed)
    passed, fails = 0, []
    for t in range(trials):
        C, Cb, Cu, js, ks = random_short_exact_sequence(rng)
        res = les_torsion_and_eta(C, Cb, Cu, js, ks)
        if res.holds:
            passed += 1
        else:
            fails.append((t, str(res.lhs), str(res.rhs)))
    return SuiteReport("milnor", passed, trials, fails)


# ---------------------------------------------------------------------------
# cocycle identity of 24 l

def random_sl2(rng: np.random.Generator, scale: float = 1.5) -> np.ndarray:
    while True:
        a, b, c = rng.normal(scale=scale, size=3)
        if abs(a) > 0.2:
            return np.array([[a, b], [c, (1 + b * c) / a]])


def _proj_points_ok(gs, min_dist: float) -> bool:
    for a in range(len(gs)):
        for b in range(a + 1, len(gs)):
            p = cs.mobius(np.linalg.solve(gs[a], gs[b]), 0.0)
            if cs.chordal_distance(p, 0.0) < min_dist:
                return False
    return True


def cocycle_defect(gs, scale: int = 24) -> float:
    """Circular distance from 0 of the alternating sum of scale * l over a 5-tuple."""
    total = 0.0
    for i in range(5):
        sub = gs[:i] + gs[i + 1:]
        total += (-1) ** i * scale * cs.cocycle_l(*sub).value
    return cs.ModOne(total).distance(cs.ModOne(0.0))


def run_cocycle(seed: int, trials: int = 1000, min_dist: float = 1e-3) -> SuiteReport:
    rng = np.random.default_rng(seed)
    passed, fails, done = 0, [], 0
    while done < trials:
        gs = [random_sl2(rng) for _ in range(5)]
        if not _proj_points_ok(gs, min_dist):
            continue
        done += 1
        d = cocycle_defect(gs)
        if d < 1e-6:
            passed += 1
        else:
            fails.append((done, d))
    return SuiteReport("cocycle", passed, trials, fails)


def run_cross_ratio(seed: int, trials: int = 1000) -> SuiteReport:
    rng = np.random.default_rng(seed)
    passed, fails = 0, []
    for t in range(trials):
        pts = list(rng.normal(scale=3, size=4))
        if rng.random() < 0.25:
            pts[rng.integers(4)] = cs.INF
        g = random_sl2(rng)
        try:
            before = cs.cross_ratio(*pts)
            after = cs.cross_ratio(*[cs.mobius(g, p) for p in pts])
        except (ValueError, ZeroDivisionError):
            continue
        if abs(before - after) <= 1e-7 * max(1.0, abs(before)):
            passed += 1
        else:
            fails.append((t, before, after))
    return SuiteReport("cross-ratio", passed, passed + len(fails), fails)


def random_word(rng: random.Random, n_gens: int, length: int) -> Word:
    return reduce_word((rng.randint(1, n_gens), rng.choice((1, -1))) for _ in range(length))


def run_fox(seed: int, trials: int = 500) -> SuiteReport:
    """Product rule of Fox derivatives on random words."""
    rng = random.Random(seed)
    passed, fails = 0, []
    for t in range(trials):
        u, v = random_word(rng, 3, rng.randint(0, 8)), random_word(rng, 3, rng.randint(0, 8))
        i = rng.randint(1, 3)
        lhs = fox_derivative(u * v, i)
        rhs = fox_derivative(u, i) + u * fox_derivative(v, i)
        if lhs == rhs:
            passed += 1
        else:
            fails.append((t, str(u), str(v), i))
    return SuiteReport("fox", passed, trials, fails)


SUITES = {
    "cocycle": run_cocycle,
    "milnor": run_milnor,
    "cross-ratio": run_cross_ratio,
    "fox": run_fox,
}
