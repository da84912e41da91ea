"""Dense linear algebra over F_q.

Matrices are 2-D numpy integer arrays holding field elements (see
:mod:`grasscode.field` for the encoding); every routine takes the field as a
second argument.  Over F_2 rows are packed into Python ints / ``uint64``
words (bit ``c`` is column ``c``) and reduced with XOR, which is what makes
pairwise verification of large codes affordable.

Pivot rule everywhere: scan columns left to right and take the first row
(top to bottom) with a nonzero entry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import GF, get_field


@dataclass(frozen=True)
class RrefResult:
    rref: np.ndarray
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def as_matrix(a, cols: int | None = None) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(-1, cols if cols is not None else a.shape[0]) if a.size else np.zeros((0, cols or 0), np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    return a


# ---------------------------------------------------------------- GF(2) packed

def pack_rows(a) -> list[int]:
    """Pack a 0/1 matrix into one int per row (bit c = column c)."""
    a = np.asarray(a)
    weights = [1 << c for c in range(a.shape[1])]
    return [sum(w for w, x in zip(weights, row) if x) for row in a.tolist()]


def unpack_rows(rows, cols: int) -> np.ndarray:
    out = np.zeros((len(rows), cols), dtype=np.int64)
    for i, r in enumerate(rows):
        for c in range(cols):
            if r >> c & 1:
                out[i, c] = 1
    return out


def gf2_rref_rows(rows) -> tuple[list[int], list[int]]:
    """RREF of packed rows: returns (nonzero reduced rows, pivot columns)."""
    basis: list[int] = []
    pivots: list[int] = []
    for r in rows:
        for b, p in zip(basis, pivots):
            if r >> p & 1:
                r ^= b
        if not r:
            continue
        low = r & -r
        p = low.bit_length() - 1
        for i, b in enumerate(basis):
            if b >> p & 1:
                basis[i] = b ^ r
        basis.append(r)
        pivots.append(p)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]


def gf2_rank(rows) -> int:
    return len(gf2_rref_rows(rows)[0])


def gf2_rank_batch(words: np.ndarray) -> np.ndarray:
    """Ranks of a batch of packed GF(2) matrices.

    ``words`` has shape ``(N, r)`` with dtype ``uint64``; entry ``[t, i]`` is
    row ``i`` of matrix ``t`` (at most 64 columns).
    """
    words = np.asarray(words, dtype=np.uint64)
    n, r = words.shape
    basis = np.zeros((n, r), dtype=np.uint64)
    piv = np.zeros((n, r), dtype=np.uint64)
    zero = np.uint64(0)
    for i in range(r):
        row = words[:, i].copy()
        for j in range(i):
            hit = (row & piv[:, j]) != zero
            row ^= np.where(hit, basis[:, j], zero)
        low = row & (~row + np.uint64(1))
        for j in range(i):
            hit = (basis[:, j] & low) != zero
            basis[:, j] ^= np.where(hit, row, zero)
        basis[:, i] = row
        piv[:, i] = low
    return np.count_nonzero(piv, axis=1)


def rank_batch(mats, field=2) -> np.ndarray:
    """Ranks of a stack of matrices, shape ``(N, r, c)``, over any field."""
    F = get_field(field)
    A = np.asarray(mats, dtype=np.int64)
    N, r, c = A.shape
    if F.q == 2 and c <= 64:
        weights = np.left_shift(np.uint64(1), np.arange(c, dtype=np.uint64))
        words = ((A & 1).astype(np.uint64) * weights).sum(axis=2, dtype=np.uint64)
        return gf2_rank_batch(words)
    if N == 0:
        return np.zeros(0, dtype=np.int64)
    mul, sub, inv = _small_tables(F.q)
    A = A.astype(np.uint8 if F.q <= 256 else np.int64)
    rk = np.zeros(N, dtype=np.int64)
    rows = np.arange(r)
    idx = np.arange(N)
    for col in range(c):
        if rk.min() >= r:
            break
        eligible = (A[:, :, col] != 0) & (rows[None, :] >= rk[:, None])
        has = eligible.any(axis=1)
        if not has.any():
            continue
        pr = np.argmax(eligible, axis=1)
        dest = np.minimum(rk, r - 1)
        P = A[idx, pr, col:]
        A[idx, pr, col:] = A[idx, dest, col:]
        P = mul[inv[P[:, 0]][:, None], P]
        A[idx, dest, col:] = np.where(has[:, None], P, A[idx, dest, col:])
        below = (rows[None, :] > dest[:, None]) & has[:, None]
        f = np.where(below, A[:, :, col], 0)
        A[:, :, col:] = sub[A[:, :, col:], mul[f[:, :, None], P[:, None, :]]]
        rk += has
    return rk


def _small_tables(q: int):
    """Multiplication, subtraction and inverse lookup tables of F_q."""
    F = get_field(q)
    if q not in _TABLES:
        e = np.arange(q, dtype=np.int64)
        mul = F.vmul(e[:, None], e[None, :])
        sub = F.vsub(e[:, None], e[None, :])
        inv = np.array([0] + [F.inv(x) for x in range(1, q)], dtype=np.int64)
        dt = np.uint8 if q <= 256 else np.int64
        _TABLES[q] = (mul.astype(dt), sub.astype(dt), inv.astype(dt))
    return _TABLES[q]


_TABLES: dict = {}


# ---------------------------------------------------------------- generic

def rref(a, field=2) -> RrefResult:
    """Reduced row echelon form; the row space is preserved."""
    F = get_field(field)
    a = as_matrix(a)
    rows, cols = a.shape
    if F.q == 2:
        red, pivots = gf2_rref_rows(pack_rows(a % 2))
        out = np.zeros((rows, cols), dtype=np.int64)
        if red:
            out[: len(red)] = unpack_rows(red, cols)
        return RrefResult(out, tuple(pivots))
    a = a.copy()
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        a[r] = F.vmul(F.inv(int(a[r, c])), a[r])
        factors = a[:, c].copy()
        factors[r] = 0
        if np.any(factors):
            a = F.vsub(a, F.vmul(factors[:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return RrefResult(a, tuple(pivots))


def rank(a, field=2) -> int:
    F = get_field(field)
    a = as_matrix(a)
    if a.size == 0:
        return 0
    if F.q == 2:
        return gf2_rank(pack_rows(a % 2))
    return rref(a, F).rank


def stack(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"column mismatch: {a.shape[1]} vs {b.shape[1]}")
    return np.vstack([a, b])


def nullspace(a, field=2) -> np.ndarray:
    """Basis of the right nullspace, one vector per row."""
    F = get_field(field)
    a = as_matrix(a)
    cols = a.shape[1]
    res = rref(a, F)
    piv = list(res.pivots)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    R = res.rref
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(piv):
            out[t, pc] = F.neg(int(R[i, f]))
    return out


def matmul(a, b, field=2) -> np.ndarray:
    """Matrix product over the field."""
    F = get_field(field)
    a, b = as_matrix(a), as_matrix(b)
    if F.is_prime:
        return (a @ b) % F.p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for t in range(a.shape[1]):
        out = F.vadd(out, F.vmul(a[:, t][:, None], b[t][None, :]))
    return out


def sub(a, b, field=2) -> np.ndarray:
    return get_field(field).vsub(as_matrix(a), as_matrix(b))


def add(a, b, field=2) -> np.ndarray:
    return get_field(field).vadd(as_matrix(a), as_matrix(b))


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def random_matrix(rows: int, cols: int, field=2, rng=None) -> np.ndarray:
    F = get_field(field)
    rng = np.random.default_rng(rng)
    return rng.integers(0, F.q, size=(rows, cols), dtype=np.int64)


__all__ = [
    "GF", "RrefResult", "rref", "rank", "stack", "nullspace", "matmul", "add", "sub",
    "identity", "random_matrix", "pack_rows", "unpack_rows", "gf2_rref_rows", "gf2_rank",
    "gf2_rank_batch",
]


solve_nullspace = nullspace
