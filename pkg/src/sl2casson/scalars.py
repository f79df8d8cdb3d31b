"""Dense matrices over two scalar backends.

``EXACT`` holds ``fractions.Fraction`` entries in an object array and never
rounds. ``FLOAT`` holds float64 (or complex128) entries and makes rank
decisions against a relative tolerance. Mixing backends is an error.
"""
from __future__ import annotations

import enum
import numbers
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

DEFAULT_EPS = 1e-9


class Backend(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


class BackendError(TypeError):
    pass


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (Fraction, numbers.Integral)) and not isinstance(x, bool)


def _to_array(rows, backend: Backend | None) -> tuple[np.ndarray, Backend]:
    if isinstance(rows, Matrix):
        return rows.a.copy(), rows.backend
    if isinstance(rows, np.ndarray) and rows.dtype != object:
        if backend is Backend.EXACT:
            raise BackendError("cannot build an exact matrix from a float array")
        arr = rows.astype(complex if np.iscomplexobj(rows) else float)
        return np.atleast_2d(arr), Backend.FLOAT
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    exact = all(_is_exact_scalar(x) for x in arr.flat)
    if backend is None:
        backend = Backend.EXACT if exact else Backend.FLOAT
    if backend is Backend.EXACT:
        if not exact:
            raise BackendError("exact backend needs int or Fraction entries")
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = Fraction(x)
        return out, backend
    vals = list(arr.flat)
    dtype = complex if any(isinstance(x, complex) for x in vals) else float
    return np.array(vals, dtype=dtype).reshape(arr.shape), backend


class Matrix:
    """Immutable-by-convention dense matrix tagged with its backend."""

    __slots__ = ("a", "backend")

    def __init__(self, rows, backend: Backend | None = None):
        self.a, self.backend = _to_array(rows, backend)
        if self.a.ndim != 2:
            raise ValueError("matrices are two-dimensional")

    @classmethod
    def _wrap(cls, a: np.ndarray, backend: Backend) -> "Matrix":
        m = object.__new__(cls)
        m.a, m.backend = a, backend
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, backend: Backend = Backend.FLOAT) -> "Matrix":
        if backend is Backend.EXACT:
            a = np.empty((rows, cols), dtype=object)
            a.fill(Fraction(0))
            return cls._wrap(a, backend)
        return cls._wrap(np.zeros((rows, cols)), backend)

    @classmethod
    def identity(cls, n: int, backend: Backend = Backend.FLOAT) -> "Matrix":
        m = cls.zeros(n, n, backend)
        for i in range(n):
            m.a[i, i] = Fraction(1) if backend is Backend.EXACT else 1.0
        return m

    @classmethod
    def from_columns(cls, cols: Sequence, rows: int, backend: Backend) -> "Matrix":
        m = cls.zeros(rows, len(cols), backend)
        if backend is Backend.FLOAT and any(np.iscomplexobj(np.asarray(c)) for c in cols):
            m = cls._wrap(m.a.astype(complex), backend)
        for j, c in enumerate(cols):
            m.a[:, j] = np.asarray(c, dtype=m.a.dtype).reshape(-1)
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.a.T.copy(), self.backend)

    def column(self, j: int) -> np.ndarray:
        return self.a[:, j].copy()

    def _check(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.backend is not self.backend:
            raise BackendError("mixed-backend arithmetic")

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            if self.backend is Backend.EXACT and (self.cols == 0):
                return Matrix.zeros(self.rows, other.cols, Backend.EXACT)
            return Matrix._wrap(self.a.dot(other.a), self.backend)
        return self.a.dot(np.asarray(other, dtype=self.a.dtype))

    def __add__(self, other):
        self._check(other)
        return Matrix._wrap(self.a + other.a, self.backend)

    def __sub__(self, other):
        self._check(other)
        return Matrix._wrap(self.a - other.a, self.backend)

    def __neg__(self):
        return Matrix._wrap(-self.a, self.backend)

    def scale(self, c) -> "Matrix":
        if self.backend is Backend.EXACT:
            if not _is_exact_scalar(c):
                raise BackendError("exact matrix scaled by inexact scalar")
            c = Fraction(c)
        return Matrix._wrap(self.a * c, self.backend)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.backend is other.backend and self.shape == other.shape and bool(np.all(self.a == other.a))

    __hash__ = None

    def max_abs(self) -> float:
        return float(max((abs(x) for x in self.a.flat), default=0.0))

    def to_float(self) -> "Matrix":
        if self.backend is Backend.FLOAT:
            return self
        return Matrix._wrap(self.a.astype(float), Backend.FLOAT)

    def tolist(self):
        return self.a.tolist()

    def __repr__(self):
        return f"Matrix({self.a.tolist()!r}, backend={self.backend.value})"


def hstack(ms: Sequence[Matrix]) -> Matrix:
    b = _common_backend(ms)
    return Matrix._wrap(np.hstack([m.a for m in ms]), b)


def vstack(ms: Sequence[Matrix]) -> Matrix:
    b = _common_backend(ms)
    return Matrix._wrap(np.vstack([m.a for m in ms]), b)


def block(grid: Sequence[Sequence[Matrix]]) -> Matrix:
    return vstack([hstack(row) for row in grid])


def _common_backend(ms: Iterable[Matrix]) -> Backend:
    bs = {m.backend for m in ms}
    if len(bs) != 1:
        raise BackendError("mixed-backend arithmetic" if bs else "empty stack")
    return bs.pop()


def _check_eps(M: Matrix, eps: float) -> None:
    if eps < 0:
        raise ValueError("tolerance must be non-negative")
    if M.backend is Backend.EXACT and eps != 0:
        raise ValueError("exact backend takes eps = 0")


# ---------------------------------------------------------------------------
# determinant

def det(M: Matrix):
    n, m = M.shape
    if n != m:
        raise ValueError(f"det of non-square {M.shape} matrix")
    if n == 0:
        return Fraction(1) if M.backend is Backend.EXACT else 1.0
    if M.backend is Backend.FLOAT:
        d = np.linalg.det(M.a)
        return complex(d) if np.iscomplexobj(d) else float(d)
    a = M.a.copy()
    sign = 1
    for k in range(n):
        p = next((i for i in range(k, n) if a[i, k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[[k, p]] = a[[p, k]]
            sign = -sign
        for i in range(k + 1, n):
            if a[i, k] != 0:
                f = a[i, k] / a[k, k]
                a[i, k:] = a[i, k:] - f * a[k, k:]
    out = Fraction(sign)
    for k in range(n):
        out *= a[k, k]
    return out


# ---------------------------------------------------------------------------
# rank (complete pivoting)

def rank_eps(M: Matrix, eps: float = DEFAULT_EPS) -> int:
    _check_eps(M, eps)
    a = M.a.copy()
    n, m = a.shape
    r = 0
    first = None
    for k in range(min(n, m)):
        sub = np.abs(a[k:, k:]).astype(float) if M.backend is Backend.FLOAT else None
        if M.backend is Backend.FLOAT:
            i, j = np.unravel_index(np.argmax(sub), sub.shape)
            piv = sub[i, j]
            if first is None:
                first = piv
            if piv == 0 or piv <= eps * first:
                break
        else:
            loc = next(((i, j) for i in range(n - k) for j in range(m - k) if a[k + i, k + j] != 0), None)
            if loc is None:
                break
            i, j = loc
        i, j = i + k, j + k
        a[[k, i]] = a[[i, k]]
        a[:, [k, j]] = a[:, [j, k]]
        for t in range(k + 1, n):
            f = a[t, k] / a[k, k]
            a[t, k:] = a[t, k:] - f * a[k, k:]
        r += 1
    return r


# ---------------------------------------------------------------------------
# row reduction (partial pivoting by column), used for kernels, pivots, solves

def _rref(M: Matrix, eps: float):
    """Return (reduced array, pivot columns). Columns are scanned left to right."""
    a = M.a.copy()
    n, m = a.shape
    exact = M.backend is Backend.EXACT
    scale = M.max_abs() or 1.0
    piv_cols: list[int] = []
    r = 0
    for j in range(m):
        if r == n:
            break
        col = a[r:, j]
        if exact:
            p = next((i for i, x in enumerate(col) if x != 0), None)
        else:
            mags = np.abs(col)
            p = int(np.argmax(mags))
            if mags[p] <= eps * scale:
                p = None
        if p is None:
            continue
        p += r
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = a[r] / a[r, j]
        for i in range(n):
            if i != r and a[i, j] != 0:
                a[i] = a[i] - a[i, j] * a[r]
        piv_cols.append(j)
        r += 1
    return a, piv_cols


def pivot_columns(M: Matrix, eps: float = DEFAULT_EPS, order: Sequence[int] | None = None) -> list[int]:
    """Greedy maximal independent set of columns, scanned in ``order``."""
    _check_eps(M, eps)
    order = list(range(M.cols)) if order is None else list(order)
    if sorted(order) != list(range(M.cols)):
        raise ValueError("order must be a permutation of the columns")
    P = Matrix._wrap(M.a[:, order], M.backend)
    _, piv = _rref(P, eps)
    return [order[j] for j in piv]


def kernel_basis(M: Matrix, eps: float = DEFAULT_EPS) -> list[np.ndarray]:
    """Null-space basis; each vector scaled so its first nonzero entry is 1."""
    _check_eps(M, eps)
    n, m = M.shape
    if M.backend is Backend.FLOAT and m:
        # an SVD fixes the dimension robustly; rref of the null projector gives
        # the canonical normalized basis
        _, s, vh = np.linalg.svd(M.a) if n else (None, np.zeros(0), np.eye(m))
        top = s[0] if s.size else 0.0
        r = int(np.sum(s > eps * max(top, 1e-300))) if top > 0 else 0
        null = vh[r:].conj().T
        if null.shape[1] == 0:
            return []
        R, piv = _rref(Matrix._wrap(null.T.copy(), Backend.FLOAT), eps)
        vecs = [R[i].copy() for i in range(len(piv))]
    else:
        R, piv = _rref(M, eps)
        free = [j for j in range(m) if j not in piv]
        vecs = []
        for f in free:
            v = np.empty(m, dtype=object)
            v.fill(Fraction(0))
            v[f] = Fraction(1)
            for row, pc in enumerate(piv):
                v[pc] = -R[row, f]
            vecs.append(v)
    out = []
    for v in vecs:
        lead = next(x for x in v if (x != 0 if M.backend is Backend.EXACT else abs(x) > eps))
        out.append(v / lead)
    return out


def solve(M: Matrix, b, eps: float = DEFAULT_EPS) -> np.ndarray:
    """One solution x of M x = b; raises ValueError if inconsistent."""
    _check_eps(M, eps)
    b = np.asarray(b, dtype=M.a.dtype).reshape(-1)
    if M.backend is Backend.FLOAT:
        x, *_ = np.linalg.lstsq(M.a, b, rcond=None)
        res = np.abs(M.a @ x - b).max() if b.size else 0.0
        if res > max(eps, 1e-12) * 10 * max(M.max_abs(), float(np.abs(b).max(initial=0.0)), 1.0):
            raise ValueError("inconsistent linear system")
        return x
    aug = Matrix._wrap(np.hstack([M.a, b.reshape(-1, 1)]), M.backend)
    R, piv = _rref(aug, 0)
    if M.cols in piv:
        raise ValueError("inconsistent linear system")
    x = np.empty(M.cols, dtype=object)
    x.fill(Fraction(0))
    for row, pc in enumerate(piv):
        x[pc] = R[row, -1]
    return x


def inverse(M: Matrix, eps: float = DEFAULT_EPS) -> Matrix:
    n = M.rows
    if n != M.cols:
        raise ValueError("inverse of non-square matrix")
    if M.backend is Backend.FLOAT:
        if rank_eps(M, eps) < n:
            raise ValueError("singular matrix")
        return Matrix._wrap(np.linalg.inv(M.a), M.backend)
    cols = [solve(M, Matrix.identity(n, Backend.EXACT).a[:, j], 0) for j in range(n)]
    if rank_eps(M, 0) < n:
        raise ValueError("singular matrix")
    return Matrix.from_columns(cols, n, Backend.EXACT)
