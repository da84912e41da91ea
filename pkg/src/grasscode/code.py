"""Constant-dimension codes as unions of lifted strata.

A :class:`Stratum` is every subspace whose RREF basis equals a fixed
``offset`` matrix plus an F_q-combination of ``basis`` matrices supported on
free (dot) positions.  All its words share one identifying vector.  Codes of
size 2^28 are thus held in a few kilobytes and enumerated lazily.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .field import get_field
from .grassmann import (
    FerrersDiagram,
    Subspace,
    as_bits,
    bits_str,
    column_heights_of,
    free_mask,
    pivots_of,
)
from .matrix import pack_rows
from .rankmetric import FerrersCode, PendingBlockSpec


@dataclass(eq=False)
class Stratum:
    q: int
    v: tuple[int, ...]
    offset: np.ndarray
    basis: np.ndarray
    label: str = ""
    group: str = ""
    block: PendingBlockSpec | None = None
    delta: int = 0

    def __post_init__(self):
        k, n = len(pivots_of(self.v)), len(self.v)
        self.offset = np.asarray(self.offset, dtype=np.int64).reshape(k, n)
        self.basis = np.asarray(self.basis, dtype=np.int64).reshape(-1, k, n)

    @property
    def n(self) -> int:
        return len(self.v)

    @property
    def k(self) -> int:
        return self.offset.shape[0]

    @property
    def dimension(self) -> int:
        return self.basis.shape[0]

    @property
    def size(self) -> int:
        return self.q ** self.dimension

    def validate(self):
        mask = free_mask(self.v)
        piv = pivots_of(self.v)
        expect = np.zeros_like(self.offset)
        for i, p in enumerate(piv):
            expect[i, p] = 1
        if np.any(np.where(mask, 0, self.offset) != expect):
            raise ValueError(f"stratum {self.label}: offset is not an RREF with pivots {piv}")
        if self.basis.size and np.any(self.basis[:, ~mask]):
            raise ValueError(f"stratum {self.label}: basis leaves the free positions")

    def words(self) -> Iterator[Subspace]:
        F = get_field(self.q)
        for coeffs in itertools.product(range(F.q), repeat=self.dimension):
            M = self.offset
            for a, b in zip(coeffs, self.basis):
                if a:
                    M = F.vadd(M, F.vmul(a, b))
            yield Subspace(F.q, self.n, tuple(tuple(int(x) for x in r) for r in M))

    def word_arrays(self, chunk: int = 1 << 14) -> Iterator[np.ndarray]:
        """All words as ``(batch, k, n)`` RREF arrays, in :meth:`words` order."""
        yield from combination_batches(self.q, self.basis, self.offset, chunk)

    # ---------------------------------------------------------- GF(2) packed
    def packed_offset(self) -> np.ndarray:
        return np.array(pack_rows(self.offset), dtype=np.uint64)

    def packed_basis(self) -> np.ndarray:
        if self.dimension == 0:
            return np.zeros((0, self.k), dtype=np.uint64)
        return np.array([pack_rows(b) for b in self.basis], dtype=np.uint64)

    def packed_words(self, chunk_bits: int = 16) -> Iterator[np.ndarray]:
        """All words as ``(batch, k)`` uint64 arrays (q = 2 only)."""
        if self.q != 2:
            raise ValueError("packed words exist only for q = 2")
        yield from span_batches(self.packed_basis(), self.packed_offset(), chunk_bits)


def coefficient_block(q: int, rho: int, start: int, stop: int) -> np.ndarray:
    """Rows start..stop-1 of the lexicographic list of F_q^rho coefficient vectors."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((idx.size, rho), dtype=np.int64)
    for j in range(rho - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def combine(F, coeffs: np.ndarray, basis: np.ndarray, offset: np.ndarray) -> np.ndarray:
    """offset + sum_j coeffs[:, j] * basis[j], batched."""
    out = np.broadcast_to(offset, (coeffs.shape[0],) + offset.shape).copy()
    for j in range(basis.shape[0]):
        c = coeffs[:, j]
        if np.any(c):
            out = F.vadd(out, F.vmul(c[:, None, None], basis[j][None]))
    return out


def combination_batches(q, basis, offset, chunk: int = 1 << 14):
    F = get_field(q)
    rho = basis.shape[0]
    total = F.q ** rho
    for start in range(0, total, chunk):
        stop = min(total, start + chunk)
        yield combine(F, coefficient_block(F.q, rho, start, stop), basis, offset)


def span_table(basis: np.ndarray, offset: np.ndarray) -> np.ndarray:
    """offset XOR every subset-sum of ``basis`` rows; shape (2^len(basis), k)."""
    out = offset[None, :].copy()
    for b in basis:
        out = np.concatenate([out, out ^ b[None, :]])
    return out


def span_batches(basis: np.ndarray, offset: np.ndarray, chunk_bits: int = 16):
    rho = basis.shape[0]
    low = min(rho, chunk_bits)
    table = span_table(basis[:low], offset)
    high = basis[low:]
    for t in range(1 << (rho - low)):
        shift = np.zeros_like(offset)
        for j in range(rho - low):
            if t >> j & 1:
                shift ^= high[j]
        yield table ^ shift[None, :]


@dataclass(eq=False)
class SubspaceCode:
    q: int
    n: int
    k: int
    d: int
    strata: list[Stratum] = field(default_factory=list)
    provenance: str = ""
    notes: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return sum(s.size for s in self.strata)

    def __len__(self):
        return self.size

    def words(self) -> Iterator[Subspace]:
        for s in self.strata:
            yield from s.words()

    def group_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.strata:
            out[s.group] = out.get(s.group, 0) + s.size
        return out

    def id_vectors(self) -> list[tuple[int, ...]]:
        return [s.v for s in self.strata]

    def validate(self):
        for s in self.strata:
            if s.q != self.q or s.n != self.n or s.k != self.k:
                raise ValueError(f"stratum {s.label} has parameters ({s.q},{s.n},{s.k})")
            s.validate()

    def summary(self) -> str:
        parts = ", ".join(f"{g or '-'}: {c}" for g, c in self.group_counts().items())
        return f"({self.n}, {self.size}, {self.d}, {self.k})_{self.q} code [{parts}]"


def singleton_stratum(X: Subspace, label: str = "", group: str = "") -> Stratum:
    return Stratum(X.q, X.id_vector, X.matrix, np.zeros((0, X.k, X.n), np.int64), label, group)


def code_from_subspaces(words, q, n, k, d, provenance="explicit") -> SubspaceCode:
    strata = [singleton_stratum(X, label=f"w{i}", group="explicit") for i, X in enumerate(words)]
    return SubspaceCode(get_field(q).q, n, k, d, strata, provenance)


def region_diagram(v, columns=None) -> tuple[FerrersDiagram, list[int]]:
    """Ferrers diagram formed by the dots of ``v`` in ``columns`` (all if None)."""
    cols = [(c, h) for c, h in column_heights_of(v) if columns is None or c in set(columns)]
    return FerrersDiagram(tuple(h for _, h in cols)), [c for c, _ in cols]


def make_stratum(v, q, fixed=None, code: FerrersCode | None = None, columns=None, *,
                 label="", group="", block=None) -> Stratum:
    """Build a stratum at identifying vector ``v``.

    ``fixed`` maps free positions ``(row, column)`` to constant values;
    ``code`` is placed on the diagram columns ``columns`` (absolute indices,
    matching ``code.diagram``).
    """
    v = as_bits(v)
    F = get_field(q)
    piv = pivots_of(v)
    k, n = len(piv), len(v)
    mask = free_mask(v)
    offset = np.zeros((k, n), dtype=np.int64)
    for i, p in enumerate(piv):
        offset[i, p] = 1
    for (i, c), x in (fixed or {}).items():
        if not mask[i, c]:
            raise ValueError(f"position ({i},{c}) is not a dot of {bits_str(v)}")
        offset[i, c] = x
    basis = np.zeros((0, k, n), dtype=np.int64)
    delta = 0
    if code is not None:
        if columns is None or len(columns) != code.diagram.ell:
            raise ValueError("code columns do not match its diagram")
        rho = code.dimension
        basis = np.zeros((rho, k, n), dtype=np.int64)
        for t in range(rho):
            sub = code.code.basis[t]
            for i, j in code.diagram.positions():
                basis[t, i, columns[j]] = sub[i, j]
        clash = set(fixed or {}) & {(i, columns[j]) for i, j in code.diagram.positions()}
        if clash:
            raise ValueError(f"fixed positions overlap the code region: {sorted(clash)}")
        delta = code.code.min_distance
    s = Stratum(F.q, v, offset, basis, label, group, block, delta)
    s.validate()
    return s
