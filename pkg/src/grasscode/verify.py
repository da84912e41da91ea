"""Minimum-distance certification for constant-dimension codes.

Two independent routes:

* :func:`verify_exhaustive` materializes every word and checks all pairs.
* :func:`verify_stratified` works stratum by stratum.  Pairs inside a
  stratum share their identifying vector, so their distance is twice the
  rank of a difference of two codewords of a linear code, and the minimum
  comes from a rank-weight enumeration.  Pairs from strata whose
  identifying vectors are at Hamming distance >= d are skipped, since the
  subspace distance dominates the Hamming distance of identifying vectors.
  All remaining ("dangerous") pairs are checked directly.

Both facts the skip rules rely on are checked exhaustively in the test
suite.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .code import Stratum, SubspaceCode, combination_batches, combine, span_batches, span_table
from .field import get_field
from .grassmann import bits_str, subspace_distance
from .matrix import gf2_rank_batch, pack_rows, rank_batch
from .rankmetric import LinearMatrixCode, check_block_distance

EXHAUSTIVE_THRESHOLD = 20_000
EXACT_ENUMERATION_BITS = 24
DEFAULT_SAMPLES = 10 ** 6
PAIR_CHUNK = 1 << 20
MAX_FAILURES = 20


class VerificationError(RuntimeError):
    pass


@dataclass
class VerificationReport:
    q: int
    n: int
    k: int
    d: int
    size: int
    mode: str
    certified_min_distance: int | None = None
    exact: bool = True
    pair_counts: dict = field(default_factory=dict)
    duplicates: int = 0
    elapsed: float = 0.0
    failures: list = field(default_factory=list)
    sampled_strata: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.duplicates == 0 and (
            self.certified_min_distance is None or self.certified_min_distance >= self.d
        )

    def to_kv(self) -> str:
        lines = [
            f"q={self.q}", f"n={self.n}", f"k={self.k}", f"d={self.d}", f"M={self.size}",
            f"mode={self.mode}",
            f"certified_min_distance={self.certified_min_distance if self.certified_min_distance is not None else 'none'}",
            f"exact={str(self.exact).lower()}",
            f"duplicates={self.duplicates}",
            f"failures={len(self.failures)}",
            f"elapsed={self.elapsed:.3f}",
        ]
        lines += [f"pairs.{key}={val}" for key, val in self.pair_counts.items()]
        lines += [f"sampled.{i}={lbl}" for i, lbl in enumerate(self.sampled_strata)]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        dist = self.certified_min_distance
        qual = "exact" if self.exact else "lower bound"
        head = (f"({self.n}, {self.size}, {self.d}, {self.k})_{self.q} code, {self.mode} verification\n"
                f"  certified minimum distance: {dist if dist is not None else 'n/a'} ({qual})\n")
        body = "".join(f"  pairs {key}: {val}\n" for key, val in self.pair_counts.items())
        tail = f"  duplicates: {self.duplicates}\n  failures: {len(self.failures)}\n"
        for f in self.failures[:MAX_FAILURES]:
            tail += f"    {f}\n"
        if self.sampled_strata:
            tail += f"  sampled strata: {', '.join(self.sampled_strata)}\n"
        tail += f"  elapsed: {self.elapsed:.2f}s\n"
        return head + body + tail


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GRASSCODE_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------- rank weights

def _packed_basis(basis: np.ndarray) -> np.ndarray:
    if basis.shape[0] == 0:
        return np.zeros((0, basis.shape[1]), dtype=np.uint64)
    return np.array([pack_rows(b) for b in basis], dtype=np.uint64)


def _byte_tables(pb: np.ndarray) -> list[np.ndarray]:
    zero = np.zeros(pb.shape[1], dtype=np.uint64)
    return [span_table(pb[i:i + 8], zero) for i in range(0, pb.shape[0], 8)]


def _sample_words(pb: np.ndarray, count: int, rng) -> np.ndarray:
    rho = pb.shape[0]
    tables = _byte_tables(pb)
    out = np.zeros((count, pb.shape[1]), dtype=np.uint64)
    for c, tab in enumerate(tables):
        width = min(8, rho - 8 * c)
        idx = rng.integers(0, 1 << width, size=count)
        out ^= tab[idx]
    return out


def rank_weight_enumerate(code, q=2, *, exact_bits=EXACT_ENUMERATION_BITS, samples=DEFAULT_SAMPLES, rng=0):
    """Minimum rank over nonzero codewords of a linear matrix code.

    ``code`` is a :class:`LinearMatrixCode` or an array of basis matrices.
    Returns ``(min_rank, mode, words_checked)``; ``min_rank`` is None for
    the zero code, mode is ``"exact"`` or ``"sampled"``.
    """
    if isinstance(code, LinearMatrixCode):
        q, basis = code.q, code.basis
    else:
        basis = np.asarray(code, dtype=np.int64)
    F = get_field(q)
    rho = basis.shape[0]
    if rho == 0:
        return None, "degenerate", 0
    rng = np.random.default_rng(rng)
    bits_needed = rho * np.log2(F.q)
    if F.q == 2:
        pb = _packed_basis(basis)
        best, checked = None, 0
        if bits_needed <= exact_bits:
            zero = np.zeros(pb.shape[1], dtype=np.uint64)
            for t, batch in enumerate(span_batches(pb, zero)):
                r = gf2_rank_batch(batch)
                if t == 0:
                    r = r[1:]
                checked += r.size
                m = int(r.min())
                best = m if best is None else min(best, m)
            return best, "exact", checked
        pair_sums = np.array([a ^ b for a, b in itertools.combinations(pb, 2)], dtype=np.uint64).reshape(-1, pb.shape[1])
        pool = [pb, pair_sums]
        left = samples
        while left > 0:
            chunk = min(left, PAIR_CHUNK)
            pool.append(_sample_words(pb, chunk, rng))
            left -= chunk
        for words in pool:
            if words.shape[0] == 0:
                continue
            r = gf2_rank_batch(words)
            r = r[np.any(words != 0, axis=1)]
            checked += r.size
            if r.size:
                m = int(r.min())
                best = m if best is None else min(best, m)
        return best, "sampled", checked
    # generic field: batched coefficient vectors
    zero = np.zeros(basis.shape[1:], dtype=np.int64)
    best, checked = None, 0
    exact = F.q ** rho <= 2 ** exact_bits
    if exact:
        batches = combination_batches(F, basis, zero)
    else:
        eye = np.eye(rho, dtype=np.int64)
        pairs = np.array([eye[a] + eye[b] for a, b in itertools.combinations(range(rho), 2)],
                         dtype=np.int64).reshape(-1, rho)
        draws = [eye, pairs] + [rng.integers(0, F.q, size=(min(PAIR_CHUNK // 16, samples - s0), rho))
                                for s0 in range(0, samples, PAIR_CHUNK // 16)]
        batches = (combine(F, c, basis, zero) for c in draws if c.size)
    for words in batches:
        nz = np.any(words != 0, axis=(1, 2))
        if not nz.any():
            continue
        r = rank_batch(words[nz], F)
        checked += r.size
        m = int(r.min())
        best = m if best is None else min(best, m)
    return best, "exact" if exact else "sampled", checked


# ---------------------------------------------------------------- word batches

def _use_packed(code) -> bool:
    return code.q == 2 and code.n <= 64


def _stratum_words(s: Stratum, packed: bool) -> np.ndarray:
    if packed:
        return np.concatenate(list(s.packed_words()))
    return np.concatenate(list(s.word_arrays()))


def _cross_ranks(A: np.ndarray, B: np.ndarray, q=2):
    """Yield (i0, j0, ranks) blocks of rank[A_i; B_j] over A x B.

    Packed GF(2) inputs are ``(N, k)`` uint64; otherwise ``(N, k, n)``.
    """
    if A.shape[0] == 0 or B.shape[0] == 0:
        return
    packed = A.dtype == np.uint64
    budget = PAIR_CHUNK if packed else PAIR_CHUNK // 16
    step_b = min(B.shape[0], budget)
    step_a = max(1, budget // step_b)
    for i0 in range(0, A.shape[0], step_a):
        a = A[i0:i0 + step_a]
        for j0 in range(0, B.shape[0], step_b):
            b = B[j0:j0 + step_b]
            rows = np.concatenate([np.repeat(a, b.shape[0], axis=0), np.tile(b, (a.shape[0],) + (1,) * (b.ndim - 1))],
                                  axis=1)
            r = gf2_rank_batch(rows) if packed else rank_batch(rows, q)
            yield i0, j0, r.reshape(a.shape[0], b.shape[0])


def _all_words(code: SubspaceCode, packed: bool):
    arrays, owners = [], []
    for s in code.strata:
        W = _stratum_words(s, packed)
        arrays.append(W)
        owners.extend((s.label, i) for i in range(W.shape[0]))
    if not arrays:
        shape = (0, code.k) if packed else (0, code.k, code.n)
        return np.zeros(shape, dtype=np.uint64 if packed else np.int64), owners
    return np.concatenate(arrays), owners


# ---------------------------------------------------------------- exhaustive

def verify_exhaustive(code: SubspaceCode, threshold: int = EXHAUSTIVE_THRESHOLD) -> VerificationReport:
    """Exact minimum distance over all pairs of a materialized code."""
    t0 = time.perf_counter()
    M = code.size
    if M > threshold:
        raise VerificationError(f"code has {M} words, above the exhaustive threshold {threshold}; use stratified mode")
    rep = VerificationReport(code.q, code.n, code.k, code.d, M, "exhaustive")
    k = code.k
    packed = _use_packed(code)
    W, owners = _all_words(code, packed)
    rep.duplicates = M - np.unique(W.reshape(M, -1), axis=0).shape[0] if M else 0
    best = None
    for i0 in range(0, M, 512):
        a = W[i0:i0 + 512]
        for ia, j0, r in _cross_ranks(a, W[i0:], code.q):
            ii = np.arange(r.shape[0])[:, None] + i0 + ia
            jj = np.arange(r.shape[1])[None, :] + i0 + j0
            upper = jj > ii
            if not upper.any():
                continue
            dist = 2 * r - 2 * k
            dm = int(dist[upper].min())
            best = dm if best is None else min(best, dm)
            bad = np.argwhere(upper & (dist < code.d))
            for x, y in bad[: max(0, MAX_FAILURES - len(rep.failures))]:
                rep.failures.append((owners[i0 + ia + x], owners[i0 + j0 + y], int(dist[x, y])))
    rep.pair_counts["all"] = M * (M - 1) // 2
    rep.certified_min_distance = best
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- stratified

def verify_stratified(code: SubspaceCode, *, exact_bits=EXACT_ENUMERATION_BITS, samples=DEFAULT_SAMPLES,
                      rng=0, dangerous_limit: int = 10 ** 9) -> VerificationReport:
    """Certify the minimum distance stratum by stratum (see module docstring)."""
    t0 = time.perf_counter()
    if not code.strata and code.size:
        raise VerificationError("code carries no strata; stratified mode needs provenance")
    rep = VerificationReport(code.q, code.n, code.k, code.d, code.size, "stratified")
    rng = np.random.default_rng(rng)
    k, d = code.k, code.d
    strata = code.strata
    packed = _use_packed(code)

    # 1. pairs inside a stratum: twice the minimum rank weight of its linear part
    best = None
    within = 0
    cache: dict = {}
    sampled = False
    dup = 0
    for s in strata:
        if s.dimension == 0:
            continue
        key = (s.basis.tobytes(), s.basis.shape)
        if key not in cache:
            cache[key] = rank_weight_enumerate(s.basis, code.q, exact_bits=exact_bits, samples=samples, rng=rng)
        r, mode, _ = cache[key]
        within += s.size * (s.size - 1) // 2
        if mode == "sampled":
            sampled = True
            rep.sampled_strata.append(s.label)
        if r == 0:
            dup += 1
        dist = 2 * r
        best = dist if best is None else min(best, dist)
        if dist < d:
            rep.failures.append((s.label, "same-stratum", dist))
    rep.pair_counts["same_id_vector"] = within

    # 2. pairs across strata whose identifying vectors are far apart
    vecs = np.array([s.v for s in strata], dtype=np.int8)
    sizes = np.array([s.size for s in strata], dtype=object)
    skipped = 0
    min_far = None
    dangerous_pairs = []
    for a in range(len(strata)):
        dh = np.count_nonzero(vecs[a + 1:] != vecs[a], axis=1)
        far = dh >= d
        if far.any():
            skipped += sizes[a] * int(sum(sizes[a + 1:][far]))
            m = int(dh[far].min())
            min_far = m if min_far is None else min(min_far, m)
        near = [a + 1 + int(o) for o in np.nonzero(~far)[0]]
        if near:
            dangerous_pairs.append((a, near))
    rep.pair_counts["skipped_by_hamming"] = skipped

    # 3. everything else is checked pair by pair
    total_dangerous = sum(sizes[a] * sum(sizes[b] for b in near) for a, near in dangerous_pairs)
    if total_dangerous > dangerous_limit:
        raise VerificationError(f"{total_dangerous} dangerous pairs exceed the limit {dangerous_limit}")
    rep.pair_counts["dangerous_checked"] = total_dangerous

    def check(item):
        a, near = item
        sa = strata[a]
        local_best, fails = None, []
        A = _stratum_words(sa, packed)
        owners, Bs = [], []
        for b in near:
            Wb = _stratum_words(strata[b], packed)
            Bs.append(Wb)
            owners.extend((strata[b].label, i) for i in range(Wb.shape[0]))
        B = np.concatenate(Bs)
        for i0, j0, r in _cross_ranks(A, B, code.q):
            dist = 2 * r - 2 * k
            m = int(dist.min())
            local_best = m if local_best is None else min(local_best, m)
            if m < d:
                for x, y in np.argwhere(dist < d)[:MAX_FAILURES]:
                    fails.append(((sa.label, i0 + int(x)), owners[j0 + int(y)], int(dist[x, y])))
        return local_best, fails

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        results = list(pool.map(check, dangerous_pairs))
    for local_best, fails in results:
        if local_best is not None:
            best = local_best if best is None else min(best, local_best)
        dup += sum(1 for f in fails if f[2] == 0)
        rep.failures.extend(fails[: max(0, MAX_FAILURES - len(rep.failures))])

    rep.duplicates = dup
    # skipped pairs are only known to sit at distance >= their Hamming distance
    if min_far is not None:
        rep.certified_min_distance = min_far if best is None else min(best, min_far)
    else:
        rep.certified_min_distance = best
    rep.exact = not sampled and best is not None and (min_far is None or best <= min_far)
    if sampled:
        rep.mode = "stratified+sampled"
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------- block audit

@dataclass
class AuditReport:
    pairs: int = 0
    block_failures: list = field(default_factory=list)
    distance_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.block_failures and not self.distance_failures


def _random_word(s: Stratum, rng):
    F = get_field(s.q)
    M = s.offset
    for b in s.basis:
        a = int(rng.integers(0, F.q))
        if a:
            M = F.vadd(M, F.vmul(a, b))
    from .grassmann import Subspace

    return Subspace(F.q, s.n, tuple(tuple(int(x) for x in r) for r in M))


def audit_block_distance(code: SubspaceCode, samples: int = 10_000, rng=0, group: str | None = None) -> AuditReport:
    """Sample pairs of words from strata sharing a pending block and check
    d_S >= d_H + 2 rank(B_X - B_Y) and d_S >= d."""
    rng = np.random.default_rng(rng)
    buckets: dict = {}
    for s in code.strata:
        if s.block is None or (group is not None and s.group != group):
            continue
        piv = tuple(i for i, x in enumerate(s.v) if x)[: s.block.m1]
        buckets.setdefault((s.block, piv), []).append(s)
    keys = [key for key, ss in buckets.items() if len(ss) >= 1]
    rep = AuditReport()
    if not keys:
        return rep
    for _ in range(samples):
        key = keys[int(rng.integers(0, len(keys)))]
        ss = buckets[key]
        sa = ss[int(rng.integers(0, len(ss)))]
        sb = ss[int(rng.integers(0, len(ss)))]
        X, Y = _random_word(sa, rng), _random_word(sb, rng)
        if X == Y:
            continue
        rep.pairs += 1
        if not check_block_distance(X, Y, sa.block):
            rep.block_failures.append((sa.label, sb.label))
        dist = subspace_distance(X, Y)
        if dist < code.d:
            rep.distance_failures.append((sa.label, sb.label, dist))
    return rep


def describe_strata(code: SubspaceCode) -> str:
    return "\n".join(f"{s.group:>10} {bits_str(s.v)} dim={s.dimension} size={s.size} {s.label}" for s in code.strata)
