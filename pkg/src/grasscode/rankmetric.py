"""Rank-metric codes: Gabidulin MRD codes and codes supported on Ferrers diagrams."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import ext_make, get_field
from .grassmann import (
    FerrersDiagram,
    Subspace,
    as_bits,
    ferrers_of_vector,
    hamming_distance,
    subspace_distance,
    subspace_from_filling,
)
from .matrix import as_matrix, matmul, nullspace, rank


class FdmrdBoundError(RuntimeError):
    """The support-restricted MRD subcode fell short of the dimension bound."""

    def __init__(self, diagram, delta, got, bound):
        super().__init__(
            f"diagram {diagram.column_heights} at delta={delta}: constructed dimension {got} < bound {bound}"
        )
        self.diagram, self.delta, self.got, self.bound = diagram, delta, got, bound


@dataclass
class LinearMatrixCode:
    """F_q-span of ``basis`` (shape ``(rho, m, ell)``)."""

    q: int
    shape: tuple[int, int]
    basis: np.ndarray
    min_distance: int

    def __post_init__(self):
        m, ell = self.shape
        self.basis = np.asarray(self.basis, dtype=np.int64).reshape(-1, m, ell)

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @property
    def cardinality(self) -> int:
        return self.q ** self.dimension

    def codeword(self, coeffs) -> np.ndarray:
        F = get_field(self.q)
        out = np.zeros(self.shape, dtype=np.int64)
        for a, b in zip(coeffs, self.basis):
            if a:
                out = F.vadd(out, F.vmul(int(a), b))
        return out

    def codewords(self):
        """All q^rho codewords, coefficient vectors in lexicographic order."""
        for coeffs in itertools.product(range(self.q), repeat=self.dimension):
            yield self.codeword(coeffs)


@dataclass
class FerrersCode:
    diagram: FerrersDiagram
    code: LinearMatrixCode

    @property
    def dimension(self) -> int:
        return self.code.dimension

    def values(self, codeword: np.ndarray) -> tuple[int, ...]:
        """Dot values of a codeword in row-major dot order."""
        return tuple(int(codeword[i, j]) for i, j in self.diagram.positions())


@dataclass(frozen=True)
class PendingBlockSpec:
    """The ``ell1`` leftmost diagram columns restricted to the top ``m1`` rows."""

    m1: int
    ell1: int
    columns: tuple[int, ...] = dc_field(default=())  # absolute columns of RE(X), filled in by constructions

    def __post_init__(self):
        if self.m1 < 1 or self.ell1 < 1:
            raise ValueError("a block needs m1 >= 1 and ell1 >= 1")


def rank_distance(A, B, q=2) -> int:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch: {A.shape} vs {B.shape}")
    return rank(get_field(q).vsub(A, B), q)


# ---------------------------------------------------------------- MRD

def gabidulin_mrd(m: int, ell: int, delta: int, q=2, shift: int = 0) -> LinearMatrixCode:
    """Gabidulin code of length m over F_{q^ell}, expanded to m x ell matrices.

    Codewords evaluate linearized polynomials of q-degree < m - delta + 1 at
    the points x^shift, x^(shift+1), ... (exponents mod ell) of the
    polynomial basis of F_{q^ell}; row r is the coordinate vector of the
    r-th evaluation.
    """
    if not ell >= m >= delta >= 1:
        raise ValueError(f"need ell >= m >= delta >= 1, got m={m} ell={ell} delta={delta}")
    F = get_field(q)
    E = ext_make(F, ell)
    K = m - delta + 1
    basis_elems = [E.from_vector([1 if j == t else 0 for j in range(ell)]) for t in range(ell)]
    points = [basis_elems[(r + shift) % ell] for r in range(m)]
    # points^(q^i)
    powers = [points]
    for _ in range(1, K):
        powers.append([E.frobenius(x) for x in powers[-1]])
    mats = []
    for i in range(K):
        for beta in basis_elems:
            mats.append([E.to_vector(E.mul(beta, g)) for g in powers[i]])
    return LinearMatrixCode(F.q, (m, ell), np.array(mats, dtype=np.int64), delta)


def ferrers_dimension_bound(F: FerrersDiagram, delta: int) -> int:
    """Upper bound on the dimension of a rank-distance-delta code on F.

    Minimum over i in [0, delta-1] of the number of dots outside the top i
    rows and outside the rightmost delta-1-i columns.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")
    h = F.column_heights
    best = None
    for i in range(delta):
        keep = max(F.ell - (delta - 1 - i), 0)
        w = sum(max(x - i, 0) for x in h[:keep])
        best = w if best is None else min(best, w)
    return best


def _anti_transpose(M: np.ndarray) -> np.ndarray:
    return M[::-1, ::-1].T


def _support_subcode(host: LinearMatrixCode, mask: np.ndarray) -> np.ndarray:
    F = get_field(host.q)
    rho = host.dimension
    G = host.basis.reshape(rho, -1)
    off = ~mask.ravel()
    if rho == 0:
        return host.basis
    if not off.any():
        return host.basis
    C = nullspace(G[:, off].T, F)
    if C.shape[0] == 0:
        return np.zeros((0,) + host.shape, dtype=np.int64)
    return matmul(C, G, F).reshape(-1, *host.shape)


def fdmrd_code(F: FerrersDiagram, delta: int, q=2, strict: bool = True) -> FerrersCode:
    """Linear code on F with rank distance ``delta`` meeting the dimension bound.

    Built as the subcode of an ``m x ell`` Gabidulin code vanishing off the
    diagram.  Diagrams with ``ell < m`` are handled through the
    anti-transpose.  Raises :class:`FdmrdBoundError` when the bound is not
    met for any cyclic shift of the evaluation points; with
    ``strict=False`` the largest subcode found is returned instead.
    """
    Fq = get_field(q)
    bound = ferrers_dimension_bound(F, delta) if F.ell else 0
    m, ell = F.m, F.ell
    if bound == 0 or F.dots == 0:
        return FerrersCode(F, LinearMatrixCode(Fq.q, (m, ell), np.zeros((0, m, ell), np.int64), delta))
    if ell < m:
        T = fdmrd_code(F.transpose(), delta, Fq, strict)
        basis = np.array([_anti_transpose(b) for b in T.code.basis], dtype=np.int64)
        return FerrersCode(F, LinearMatrixCode(Fq.q, (m, ell), basis, delta))
    if delta > m:
        if strict:
            raise FdmrdBoundError(F, delta, 0, bound)
        return FerrersCode(F, LinearMatrixCode(Fq.q, (m, ell), np.zeros((0, m, ell), np.int64), delta))
    mask = F.mask()
    best = None
    for shift in range(ell):
        host = gabidulin_mrd(m, ell, delta, Fq, shift=shift)
        basis = _support_subcode(host, mask)
        if best is None or basis.shape[0] > best.shape[0]:
            best = basis
        if basis.shape[0] >= bound:
            break
    basis, got = best, best.shape[0]
    if got < bound and strict:
        raise FdmrdBoundError(F, delta, got, bound)
    if got > bound:
        raise AssertionError(f"dimension {got} exceeds the upper bound {bound}")
    return FerrersCode(F, LinearMatrixCode(Fq.q, (m, ell), basis, delta))


def staircase_code(F: FerrersDiagram, x: int, q=2) -> FerrersCode:
    """q^x codewords: the same vector w fills the first x dots of every row.

    Requires each row to exceed the next by at least x dots and the lowest
    row to hold exactly x dots; the minimum rank distance is then m.
    """
    rows = F.row_lengths
    if x < 0:
        raise ValueError("x must be >= 0")
    if rows and rows[-1] != x:
        raise ValueError(f"lowest row has {rows[-1]} dots, expected x={x}")
    for a, b in zip(rows, rows[1:]):
        if a - b < x:
            raise ValueError(f"rows {rows}: consecutive rows must differ by at least x={x}")
    m, ell = F.m, F.ell
    basis = np.zeros((x, m, ell), dtype=np.int64)
    for t in range(x):
        for i, r in enumerate(rows):
            basis[t, i, ell - r + t] = 1
    return FerrersCode(F, LinearMatrixCode(get_field(q).q, (m, ell), basis, m))


def lift(code: FerrersCode, v, q=2) -> list[Subspace]:
    """One subspace per codeword, with identifying vector ``v``."""
    v = as_bits(v)
    if ferrers_of_vector(v) != code.diagram:
        raise ValueError("code diagram does not match the identifying vector")
    return [subspace_from_filling(v, code.values(c), q) for c in code.code.codewords()]


def pending_block_size(F: FerrersDiagram, delta: int) -> int:
    """Largest ell1 < ell whose removal from the left keeps the dimension bound."""
    full = ferrers_dimension_bound(F, delta)
    best = 0
    for l1 in range(1, F.ell):
        if ferrers_dimension_bound(F.drop_left(l1), delta) == full:
            best = l1
    return best


def leftmost_columns(v, count: int) -> tuple[int, ...]:
    """Absolute RE columns of the ``count`` leftmost diagram columns of ``v``."""
    from .grassmann import column_heights_of

    cols = [c for c, _ in column_heights_of(v)]
    if count > len(cols):
        raise ValueError(f"diagram has only {len(cols)} columns")
    return tuple(cols[:count])


def block_matrix(X: Subspace, block: PendingBlockSpec) -> np.ndarray:
    cols = block.columns or leftmost_columns(X.id_vector, block.ell1)
    return X.matrix[: block.m1][:, list(cols)]


def _block_ok(X: Subspace, block: PendingBlockSpec) -> bool:
    F = ferrers_of_vector(X.id_vector)
    rows = F.row_lengths
    if block.m1 > len(rows) or block.ell1 >= max(F.ell, 1):
        return False
    if block.m1 < len(rows) and rows[block.m1] >= rows[block.m1 - 1]:
        return False
    return True


def check_block_distance(X: Subspace, Y: Subspace, block: PendingBlockSpec) -> bool:
    """d_S(X, Y) >= d_H(v(X), v(Y)) + 2 rank(B_X - B_Y) for a shared quasi-pending block."""
    if X == Y:
        return True
    if X.pivots[: block.m1] != Y.pivots[: block.m1]:
        raise ValueError("blocks are not co-positioned: leading pivots differ")
    cx = block.columns or leftmost_columns(X.id_vector, block.ell1)
    cy = block.columns or leftmost_columns(Y.id_vector, block.ell1)
    if cx != cy:
        raise ValueError("blocks are not co-positioned: block columns differ")
    if not (_block_ok(X, block) and _block_ok(Y, block)):
        raise ValueError("not a quasi-pending block of both diagrams")
    F = get_field(X.q)
    diff = F.vsub(block_matrix(X, block), block_matrix(Y, block))
    lhs = subspace_distance(X, Y)
    return lhs >= hamming_distance(X.id_vector, Y.id_vector) + 2 * rank(diff, F)


__all__ = [
    "FdmrdBoundError", "LinearMatrixCode", "FerrersCode", "PendingBlockSpec", "rank_distance",
    "gabidulin_mrd", "ferrers_dimension_bound", "fdmrd_code", "staircase_code", "lift",
    "pending_block_size", "check_block_distance", "block_matrix", "leftmost_columns",
]
