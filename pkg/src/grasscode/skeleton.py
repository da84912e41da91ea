"""Identifying-vector skeletons: one-factorizations, multilevel codes, Construction 0."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .code import SubspaceCode, make_stratum, region_diagram
from .field import get_field
from .grassmann import as_bits, bits_str, gaussian_coefficient, pivots_of
from .matrix import rank
from .rankmetric import PendingBlockSpec, fdmrd_code, ferrers_dimension_bound


@dataclass
class SuffixPartition:
    """Weight-2 vectors of length m split into classes of position-disjoint vectors."""

    m: int
    classes: list[list[tuple[int, ...]]]

    @property
    def ell(self) -> int:
        return len(self.classes)

    def class_of(self, y) -> int:
        """0-based index of the class containing ``y``."""
        y = as_bits(y)
        for i, cls in enumerate(self.classes):
            if y in cls:
                return i
        raise KeyError(bits_str(y))


def _pair_vector(m: int, a: int, b: int) -> tuple[int, ...]:
    v = [0] * m
    v[a] = v[b] = 1
    return tuple(v)


def one_factorization(m: int) -> SuffixPartition:
    """Round-robin (circle method) partition of the edges of K_m.

    Even m: m-1 perfect matchings, class r pairs m-1 with r and r+i with r-i
    (mod m-1).  Odd m: m near-perfect matchings, class r pairs r+i with r-i
    (mod m).
    """
    if m < 2:
        raise ValueError(f"m={m}: need at least 2 positions")
    classes = []
    if m % 2 == 0:
        mod = m - 1
        for r in range(mod):
            cls = [_pair_vector(m, mod, r)]
            for i in range(1, m // 2):
                cls.append(_pair_vector(m, (r + i) % mod, (r - i) % mod))
            classes.append(cls)
    else:
        for r in range(m):
            classes.append([_pair_vector(m, (r + i) % m, (r - i) % m) for i in range(1, (m - 1) // 2 + 1)])
    return SuffixPartition(m, classes)


def digits(t: int, q: int, count: int) -> list[int]:
    """Little-endian base-q digits of t; raises if t needs more than ``count``."""
    out = []
    for _ in range(count):
        t, r = divmod(t, q)
        out.append(r)
    if t:
        raise ValueError(f"value does not fit in {count} base-{q} digits")
    return out


# ---------------------------------------------------------------- multilevel

@dataclass
class SkeletonEntry:
    """One identifying vector of a multilevel code.

    ``fixed`` pins free positions (block fillings, pending dots) to values;
    the FDMRD code of rank distance ``delta`` goes on ``columns`` (default:
    every diagram column holding no fixed position).
    """

    id_vector: tuple[int, ...]
    delta: int
    fixed: dict = field(default_factory=dict)
    columns: tuple[int, ...] | None = None
    block: PendingBlockSpec | None = None
    group: str = ""
    label: str = ""

    def __post_init__(self):
        self.id_vector = as_bits(self.id_vector)


def block_values(entry: SkeletonEntry, k: int) -> np.ndarray:
    b = entry.block
    out = np.zeros((b.m1, len(b.columns)), dtype=np.int64)
    for (i, c), x in entry.fixed.items():
        if i < b.m1 and c in b.columns:
            out[i, b.columns.index(c)] = x
    return out


def check_skeleton(entries, delta: int, q=2):
    """Every pair needs Hamming distance 2*delta or a block plan making up the gap."""
    F = get_field(q)
    k = sum(entries[0].id_vector) if entries else 0
    by_block: dict = {}
    for e in entries:
        by_block.setdefault(e.block, []).append(e)
    vecs = np.array([e.id_vector for e in entries], dtype=np.int8)
    for a in range(len(entries)):
        dh = np.count_nonzero(vecs[a + 1:] != vecs[a], axis=1)
        for off in np.nonzero(dh < 2 * delta)[0]:
            b = a + 1 + int(off)
            ea, eb = entries[a], entries[b]
            gap = 2 * delta - int(dh[off])
            ok = (
                ea.block is not None
                and ea.block == eb.block
                and pivots_of(ea.id_vector)[: ea.block.m1] == pivots_of(eb.id_vector)[: eb.block.m1]
                and 2 * rank(F.vsub(block_values(ea, k), block_values(eb, k)), F) >= gap
            )
            if not ok:
                raise ValueError(
                    f"identifying vectors {bits_str(ea.id_vector)} and {bits_str(eb.id_vector)} "
                    f"are at Hamming distance {int(dh[off])} < {2 * delta} without a covering block plan"
                )


def entry_stratum(e: SkeletonEntry, q, strict: bool = True):
    fixed_cols = {c for _, c in e.fixed}
    cols = e.columns
    if cols is None:
        cols = [c for c in range(len(e.id_vector)) if c not in fixed_cols]
    diagram, cols = region_diagram(e.id_vector, cols)
    code = fdmrd_code(diagram, e.delta, q, strict) if diagram.ell else None
    return make_stratum(e.id_vector, q, e.fixed, code, cols if code else None,
                        label=e.label or bits_str(e.id_vector), group=e.group, block=e.block)


def multilevel(entries, delta: int, q=2, *, provenance="multilevel", check=True, strict=True) -> SubspaceCode:
    """Union of lifted FDMRD codes, one per skeleton entry.

    ``strict=False`` keeps FDMRD codes that fall short of the dimension
    bound (their rank distance is still ``delta``) and lists the shortfalls
    in ``notes['fdmrd_shortfall']``.
    """
    F = get_field(q)
    entries = list(entries)
    if not entries:
        raise ValueError("empty skeleton")
    n = len(entries[0].id_vector)
    k = sum(entries[0].id_vector)
    if check:
        check_skeleton(entries, delta, F)
    strata = [entry_stratum(e, F, strict) for e in entries]
    code = SubspaceCode(F.q, n, k, 2 * delta, strata, provenance)
    if not strict:
        short = []
        for e, s in zip(entries, strata):
            diagram, _ = region_diagram(e.id_vector, e.columns)
            bound = ferrers_dimension_bound(diagram, e.delta) if diagram.ell else 0
            if s.dimension < bound:
                short.append((bits_str(e.id_vector), s.dimension, bound))
        code.notes["fdmrd_shortfall"] = short
    return code


# ---------------------------------------------------------------- Construction 0

def pending_classes_count(n_suffix: int) -> int:
    return n_suffix - 1 if n_suffix % 2 == 0 else n_suffix


@dataclass
class PendingSet:
    """A suffix of a pending-dot skeleton: set index (1..3), class, position in class."""

    set_index: int
    class_index: int   # 0-based global class index (P_{class_index+1})
    local: int         # class number under its prefix (pending value)
    y: tuple[int, ...]
    u: int             # position of y inside its class


def pending_sets(n_suffix: int, q: int) -> tuple[SuffixPartition, list[PendingSet]]:
    """Assign suffix classes to the prefixes 001 / 010 / 100."""
    part = one_factorization(n_suffix)
    ell = part.ell
    out = []
    for ci, cls in enumerate(part.classes):
        i = ci + 1
        if i == 1:
            s, local = 1, 0
        elif i <= min(q + 1, ell):
            s, local = 2, i - 2
        else:
            s, local = 3, i - (q + 2)
        for u, y in enumerate(cls):
            out.append(PendingSet(s, ci, local, y, u))
    return part, out


def check_construction_0(n: int, q: int):
    if n < 8:
        raise ValueError(f"n={n}: requires n >= 8")
    ell = n - 4 if n % 2 else n - 3
    if ell > q * q + q + 1:
        raise ValueError(f"requires q^2+q+1 >= l: q={q} gives {q * q + q + 1} < l={ell}")
    return ell


def construction_0(n: int, q=2) -> SubspaceCode:
    """(n, q^{2(n-3)} + [n-3 2]_q, 4, 3)_q code from pending dots."""
    F = get_field(q)
    q = F.q
    ell = check_construction_0(n, q)
    part, sets = pending_sets(n - 3, q)
    entries = [SkeletonEntry((1, 1, 1) + (0,) * (n - 3), 2, group="A0", label="v0")]
    suffix_cols = tuple(range(3, n))
    prefixes = {1: (0, 0, 1), 2: (0, 1, 0), 3: (1, 0, 0)}
    for ps in sorted(sets, key=lambda p: (p.set_index, p.class_index, p.u)):
        v = prefixes[ps.set_index] + ps.y
        fixed, block = {}, None
        if ps.set_index == 2:
            fixed = {(0, 2): ps.local}
            block = PendingBlockSpec(1, 1, (2,))
        elif ps.set_index == 3:
            d0, d1 = digits(ps.local, q, 2)
            fixed = {(0, 1): d0, (0, 2): d1}
            block = PendingBlockSpec(1, 2, (1, 2))
        entries.append(SkeletonEntry(v, 2, fixed, suffix_cols, block, group=f"A{ps.set_index}",
                                     label=f"A{ps.set_index}/P{ps.class_index + 1}/{bits_str(v)}"))
    code = multilevel(entries, 2, F, provenance=f"construction_0 n={n} q={q} classes={ell}")
    code.notes.update(partition=part, expected=q ** (2 * (n - 3)) + gaussian_coefficient(n - 3, 2, q))
    return code


# ---------------------------------------------------------------- plain multilevel

SKELETON_GUARD = 2 * 10 ** 6


def greedy_skeleton(n: int, k: int, d: int) -> list[tuple[int, ...]]:
    """Weight-k vectors with pairwise Hamming distance >= d, chosen greedily
    in decreasing lexicographic order (starting from 1^k 0^(n-k))."""
    from math import comb
    from itertools import combinations

    if comb(n, k) > SKELETON_GUARD:
        raise ValueError(f"C({n},{k}) = {comb(n, k)} identifying vectors exceed the guard {SKELETON_GUARD}")
    chosen = np.zeros((0, n), dtype=np.int8)
    out = []
    for piv in combinations(range(n), k):
        v = np.zeros(n, dtype=np.int8)
        v[list(piv)] = 1
        if chosen.shape[0] and np.count_nonzero(chosen != v, axis=1).min() < d:
            continue
        chosen = np.vstack([chosen, v])
        out.append(tuple(int(x) for x in v))
    return out


def multilevel_code(n: int, d: int, k: int, q=2) -> SubspaceCode:
    """Lifted FDMRD codes over a greedy constant-weight skeleton."""
    if d % 2 or d < 2:
        raise ValueError(f"d={d} must be a positive even number")
    F = get_field(q)
    delta = d // 2
    entries = [SkeletonEntry(v, delta, group="ml", label=bits_str(v)) for v in greedy_skeleton(n, k, d)]
    return multilevel(entries, delta, F, provenance=f"multilevel n={n} d={d} k={k} q={F.q}", check=False, strict=False)
