"""Subspaces of F_q^n: canonical form, identifying vectors, Ferrers diagrams.

Orientation convention for Ferrers diagrams (used throughout the package):
dots are top-aligned and right-justified.  A diagram is stored as its
column heights read left to right, which are non-decreasing; row ``j``
(0-based, counted from the top) holds the dots of every column whose height
exceeds ``j``, so row lengths are non-increasing.  Dots are enumerated
row-major: top row first, left to right inside a row.

Inside RE(X) the dots sit in the non-pivot columns: entry ``(i, c)`` is free
iff ``c`` is not a pivot column and lies right of the pivot of row ``i``.
The height of a non-pivot column is the number of pivots to its left.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .field import get_field
from .matrix import as_matrix, gf2_rank, pack_rows, rank, rref, stack


def as_bits(v) -> tuple[int, ...]:
    """Accept ``"1011000"``, a sequence of 0/1, or a numpy vector."""
    if isinstance(v, str):
        return tuple(int(ch) for ch in v)
    return tuple(int(x) for x in v)


def bits_str(v) -> str:
    return "".join(str(int(x)) for x in v)


def pivots_of(v) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(as_bits(v)) if x)


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of F_q^n, stored as its RREF basis."""

    q: int
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @cached_property
    def matrix(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.n), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(c for c, x in enumerate(r) if x) for r in self.rows)

    @cached_property
    def id_vector(self) -> tuple[int, ...]:
        v = [0] * self.n
        for p in self.pivots:
            v[p] = 1
        return tuple(v)

    @cached_property
    def packed(self) -> tuple[int, ...]:
        return tuple(pack_rows(self.matrix)) if self.q == 2 else ()

    def __str__(self):
        return "\n".join(" ".join(map(str, r)) for r in self.rows)


def subspace_from_matrix(G, q=2, k: int | None = None) -> Subspace:
    """Canonical subspace spanned by the rows of ``G``.

    ``k`` is the declared dimension; a rank-deficient generator raises.
    """
    F = get_field(q)
    G = as_matrix(G)
    res = rref(G, F)
    if k is None:
        k = G.shape[0]
    if res.rank != k:
        raise ValueError(f"generator has rank {res.rank}, expected dimension {k}")
    rows = tuple(tuple(int(x) for x in r) for r in res.rref[:k])
    return Subspace(F.q, G.shape[1], rows)


def is_rref(G) -> bool:
    G = as_matrix(G)
    last = -1
    piv = []
    for r in G:
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        c = int(nz[0])
        if c <= last or r[c] != 1:
            return False
        piv.append(c)
        last = c
    return all(np.count_nonzero(G[:, c]) == 1 for c in piv)


def subspace_from_rref(rows, q=2) -> Subspace:
    """Wrap rows that are already in RREF; raises if they are not."""
    G = as_matrix(rows)
    if not is_rref(G):
        raise ValueError("rows are not in reduced row echelon form")
    return Subspace(get_field(q).q, G.shape[1], tuple(tuple(int(x) for x in r) for r in G))


# ---------------------------------------------------------------- Ferrers

@dataclass(frozen=True)
class FerrersDiagram:
    column_heights: tuple[int, ...]

    def __post_init__(self):
        h = self.column_heights
        if any(x < 1 for x in h) or any(a > b for a, b in zip(h, h[1:])):
            raise ValueError(f"column heights must be positive and non-decreasing: {h}")

    @classmethod
    def from_rows(cls, row_lengths) -> FerrersDiagram:
        rows = list(row_lengths)
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be non-increasing: {rows}")
        ell = rows[0] if rows else 0
        heights = [sum(1 for r in rows if r >= ell - j) for j in range(ell)]
        return cls(tuple(heights))

    @property
    def ell(self) -> int:
        """Number of columns (dots in the top row)."""
        return len(self.column_heights)

    @property
    def m(self) -> int:
        """Number of rows (dots in the rightmost column)."""
        return self.column_heights[-1] if self.column_heights else 0

    @property
    def dots(self) -> int:
        return sum(self.column_heights)

    @property
    def row_lengths(self) -> tuple[int, ...]:
        return tuple(sum(1 for h in self.column_heights if h > j) for j in range(self.m))

    def positions(self) -> list[tuple[int, int]]:
        """(row, column) of each dot in the m x ell box, row-major."""
        return [(i, j) for i in range(self.m) for j in range(self.ell) if self.column_heights[j] > i]

    def mask(self) -> np.ndarray:
        out = np.zeros((self.m, self.ell), dtype=bool)
        for i, j in self.positions():
            out[i, j] = True
        return out

    def transpose(self) -> FerrersDiagram:
        """Reflect across the anti-diagonal; rows from the top become columns from the right."""
        return FerrersDiagram(tuple(reversed(self.row_lengths)))

    def drop_left(self, count: int) -> FerrersDiagram:
        return FerrersDiagram(self.column_heights[count:])

    def __str__(self):
        lines = []
        for i in range(self.m):
            lines.append(" ".join("o" if h > i else " " for h in self.column_heights))
        return "\n".join(lines)


def column_heights_of(v) -> list[tuple[int, int]]:
    """(column index, height) for every non-pivot column of ``v`` with height > 0."""
    v = as_bits(v)
    out, seen = [], 0
    for c, x in enumerate(v):
        if x:
            seen += 1
        elif seen:
            out.append((c, seen))
    return out


def ferrers_of_vector(v, n: int | None = None, k: int | None = None) -> FerrersDiagram:
    v = as_bits(v)
    if n is not None and len(v) != n:
        raise ValueError(f"identifying vector has length {len(v)}, expected {n}")
    if k is not None and sum(v) != k:
        raise ValueError(f"identifying vector has weight {sum(v)}, expected {k}")
    return FerrersDiagram(tuple(h for _, h in column_heights_of(v)))


def free_mask(v) -> np.ndarray:
    """k x n boolean mask of the free (dot) positions of RE(X) for v(X) = v."""
    v = as_bits(v)
    piv = pivots_of(v)
    out = np.zeros((len(piv), len(v)), dtype=bool)
    for c, h in column_heights_of(v):
        out[:h, c] = True
    return out


def dot_positions(v) -> list[tuple[int, int]]:
    """Free positions of RE(X) in the row-major dot order of the tableaux."""
    m = free_mask(v)
    return [(int(i), int(c)) for i, c in zip(*np.nonzero(m))]


@dataclass(frozen=True)
class FerrersFilling:
    diagram: FerrersDiagram
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.diagram.dots:
            raise ValueError(f"{len(self.values)} values for {self.diagram.dots} dots")

    def rows(self) -> list[list[int]]:
        out, it = [], iter(self.values)
        for r in self.diagram.row_lengths:
            out.append([next(it) for _ in range(r)])
        return out


def filling_of(X: Subspace) -> FerrersFilling:
    """The Ferrers tableaux form of X."""
    vals = tuple(X.rows[i][c] for i, c in dot_positions(X.id_vector))
    return FerrersFilling(ferrers_of_vector(X.id_vector), vals)


def subspace_from_filling(v, filling, q=2) -> Subspace:
    """Inverse of :func:`filling_of` for the identifying vector ``v``."""
    v = as_bits(v)
    F = get_field(q)
    if isinstance(filling, FerrersFilling):
        if filling.diagram != ferrers_of_vector(v):
            raise ValueError("filling diagram does not match the identifying vector")
        values = filling.values
    else:
        values = tuple(int(x) for x in filling)
    pos = dot_positions(v)
    if len(values) != len(pos):
        raise ValueError(f"{len(values)} values for {len(pos)} dots")
    piv = pivots_of(v)
    M = np.zeros((len(piv), len(v)), dtype=np.int64)
    for i, p in enumerate(piv):
        M[i, p] = 1
    for (i, c), x in zip(pos, values):
        if not 0 <= x < F.q:
            raise ValueError(f"value {x} not in F_{F.q}")
        M[i, c] = x
    return Subspace(F.q, len(v), tuple(tuple(int(x) for x in r) for r in M))


# ---------------------------------------------------------------- distances

def stacked_rank(X: Subspace, Y: Subspace) -> int:
    if X.n != Y.n:
        raise ValueError(f"ambient mismatch: {X.n} vs {Y.n}")
    if X.q == 2:
        return gf2_rank(X.packed + Y.packed)
    return rank(stack(X.matrix, Y.matrix), X.q)


def subspace_distance(X: Subspace, Y: Subspace) -> int:
    """dim X + dim Y - 2 dim(X & Y), via 2 rank[X; Y] - dim X - dim Y."""
    return 2 * stacked_rank(X, Y) - X.k - Y.k


def span_set(X: Subspace) -> set[tuple[int, ...]]:
    """All q^k vectors of X (test oracle; small k only)."""
    F = get_field(X.q)
    out = set()
    M = X.matrix
    for coeffs in itertools.product(range(F.q), repeat=X.k):
        vec = np.zeros(X.n, dtype=np.int64)
        for a, r in zip(coeffs, M):
            if a:
                vec = F.vadd(vec, F.vmul(a, r))
        out.add(tuple(int(x) for x in vec))
    return out


def intersection_dimension(X: Subspace, Y: Subspace) -> int:
    """dim(X & Y) by enumerating both spans and counting common vectors."""
    common = len(span_set(X) & span_set(Y))
    d = 0
    while X.q ** d < common:
        d += 1
    return d


def subspace_distance_by_intersection(X: Subspace, Y: Subspace) -> int:
    return X.k + Y.k - 2 * intersection_dimension(X, Y)


def hamming_distance(u, v) -> int:
    u, v = as_bits(u), as_bits(v)
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a != b for a, b in zip(u, v))


# ---------------------------------------------------------------- counting

def gaussian_coefficient(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n (exact)."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


ENUMERATION_GUARD = 10 ** 6


def enumerate_grassmannian(n: int, k: int, q=2):
    """Every subspace of G_q(k, n): all identifying vectors times all fillings."""
    F = get_field(q)
    total = gaussian_coefficient(n, k, F.q)
    if total > ENUMERATION_GUARD:
        raise ValueError(f"G_{F.q}({k},{n}) has {total} elements, above the guard {ENUMERATION_GUARD}")
    out = []
    for piv in itertools.combinations(range(n), k):
        v = [0] * n
        for p in piv:
            v[p] = 1
        dots = ferrers_of_vector(v).dots
        for vals in itertools.product(range(F.q), repeat=dots):
            out.append(subspace_from_filling(v, vals, F))
    return out


def dual_subspace(X: Subspace) -> Subspace:
    """Orthogonal complement under the standard bilinear form."""
    from .matrix import nullspace

    N = nullspace(X.matrix, X.q) if X.k else np.eye(X.n, dtype=np.int64)
    return subspace_from_matrix(N, X.q, X.n - X.k)
