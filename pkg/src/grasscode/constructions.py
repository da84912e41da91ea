"""Code families for d = 4 and d = 2(k-1), their size formulas, and a
registry of the best code this package can build for given parameters.

Families:

* ``construction_ia`` -- weight-(k-2) prefixes carrying quasi-pending
  blocks, one block filling per suffix class, distance 4.
* ``construction_ib`` -- as Ia, but four prefixes get a full-diagram FDMRD
  code on a single class each.
* ``construction_ii`` -- the recursion on Construction 0 for distance 2(k-1).
* ``extend_code`` -- append an MRD code in new columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .code import Stratum, SubspaceCode, code_from_subspaces
from .field import MAX_ORDER, ext_make, get_field
from .grassmann import (
    as_bits,
    bits_str,
    column_heights_of,
    dot_positions,
    dual_subspace,
    gaussian_coefficient,
    pivots_of,
    subspace_from_matrix,
)
from .rankmetric import PendingBlockSpec, gabidulin_mrd
from .skeleton import (
    SkeletonEntry,
    SuffixPartition,
    construction_0,
    digits,
    multilevel,
    one_factorization,
    pending_sets,
)

MATERIALIZE_LIMIT = 20_000


@dataclass
class ConstructionPlan:
    family: str
    q: int
    n: int
    k: int
    derived: dict = field(default_factory=dict)
    schedule: list = field(default_factory=list)  # (prefix, class indices, filling rule)


@dataclass
class BoundValue:
    q: int
    n: int
    d: int
    k: int
    formula: str
    value: int | None
    terms: list = field(default_factory=list)
    reason: str = ""

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def __str__(self):
        if not self.applicable:
            return "n/a"
        return str(self.value)


def class_count(m: int) -> int:
    """Number of classes of the one-factorization of weight-2 vectors of length m."""
    return m - 1 if m % 2 == 0 else m


def weight_vectors(k: int, w: int) -> list[tuple[int, ...]]:
    """Weight-w vectors of F_2^k in increasing binary order (first bit most significant)."""
    out = [tuple(int(b) for b in format(x, f"0{k}b")) for x in range(1 << k)]
    return [v for v in out if sum(v) == w]


def prefix_block(prefix) -> list[tuple[int, int]]:
    """(column, height) of the block columns of a prefix (its zero positions with a one before)."""
    return column_heights_of(prefix)


def nu_capacity(k: int, q) -> tuple[int, dict]:
    """nu and the block dot count of every weight-(k-2) prefix of length k.

    The q-powers of the dot counts sum to nu + 1.
    """
    q = get_field(q).q
    if k < 4:
        raise ValueError(f"k={k}: requires k >= 4")
    nu = sum(q ** (i + j) for j in range(k - 1) for i in range(j, k - 1)) - 1
    dots = {bits_str(p): sum(h for _, h in prefix_block(p)) for p in weight_vectors(k, k - 2)}
    return nu, dots


def _region_columns(v, lo=0, hi=None) -> tuple[int, ...]:
    hi = len(v) if hi is None else hi
    return tuple(c for c, _ in column_heights_of(v) if lo <= c < hi)


def _fill(v, columns, values) -> dict:
    """Map the dots of v inside ``columns`` (row-major) to ``values``."""
    cols = set(columns)
    pos = [p for p in dot_positions(v) if p[1] in cols]
    if len(values) != len(pos):
        raise ValueError("filling length mismatch")
    return {p: int(x) for p, x in zip(pos, values)}


def embed(code: SubspaceCode, lead: int, provenance: str | None = None) -> SubspaceCode:
    """Prepend ``lead`` zero columns to every word."""
    strata = []
    for s in code.strata:
        off = np.concatenate([np.zeros((s.k, lead), np.int64), s.offset], axis=1)
        basis = np.concatenate([np.zeros((s.dimension, s.k, lead), np.int64), s.basis], axis=2)
        strata.append(Stratum(s.q, (0,) * lead + s.v, off, basis, s.label, s.group or "residual", None, s.delta))
    return SubspaceCode(code.q, code.n + lead, code.k, code.d, strata, provenance or code.provenance, dict(code.notes))


def check_ia(n: int, k: int, q: int) -> int:
    if k < 4:
        raise ValueError(f"k={k}: requires k >= 4")
    if n < 2 * k + 2:
        raise ValueError(f"requires n >= 2k+2: n={n} < {2 * k + 2}")
    ell = class_count(n - k)
    nu, _ = nu_capacity(k, q)
    if ell > nu + 1:
        raise ValueError(f"requires l <= nu + 1: l={ell} > {nu + 1}")
    return ell


def ia_schedule(k: int, q: int, ell: int, prefixes=None) -> list[tuple[tuple[int, ...], list[int]]]:
    """Greedy class assignment: each prefix takes at most q^(block dots) classes."""
    prefixes = weight_vectors(k, k - 2) if prefixes is None else prefixes
    out, nxt = [], 0
    for p in prefixes:
        if nxt == ell:
            break
        cap = q ** sum(h for _, h in prefix_block(p))
        take = list(range(nxt, min(ell, nxt + cap)))
        out.append((p, take))
        nxt += len(take)
    if nxt < ell:
        raise ValueError(f"block capacity exhausted: {ell - nxt} of {ell} classes left unplaced")
    return out


def _ia_entries(n, k, q, part: SuffixPartition, schedule, group_offset=1):
    entries = []
    for idx, (p, classes) in enumerate(schedule):
        blk = prefix_block(p)
        bcols = tuple(c for c, _ in blk)
        ndots = sum(h for _, h in blk)
        m1 = max((h for _, h in blk), default=0)
        for t, ci in enumerate(classes):
            for y in part.classes[ci]:
                v = tuple(p) + y
                fixed = _fill(v, bcols, digits(t, q, ndots)) if ndots else {}
                block = PendingBlockSpec(m1, len(bcols), bcols) if ndots else None
                entries.append(SkeletonEntry(v, 2, fixed, _region_columns(v, k), block,
                                             group=f"A{idx + group_offset}",
                                             label=f"A{idx + group_offset}/P{ci + 1}/{bits_str(v)}"))
    return entries


def _lifted_mrd_entry(n, k, delta, label="A0", columns=None):
    return SkeletonEntry((1,) * k + (0,) * (n - k), delta, {}, columns, None, group=label, label=label)


def construction_ia(n: int, k: int, q=2, residual_provider=None) -> SubspaceCode:
    """(n, M, 4, k)_q code with M = q^{(k-1)(n-k)} + q^{(n-k-2)(k-3)}[n-k 2]_q + |residual|."""
    F = get_field(q)
    q = F.q
    ell = check_ia(n, k, q)
    part = one_factorization(n - k)
    schedule = ia_schedule(k, q, ell)
    entries = [_lifted_mrd_entry(n, k, 2)] + _ia_entries(n, k, q, part, schedule)
    nu, _ = nu_capacity(k, q)
    prov = f"construction_ia n={n} k={k} q={q} classes={ell}" + (" capacity-boundary" if ell == nu + 1 else "")
    code = multilevel(entries, 2, F, provenance=prov)
    return _add_residual(code, n, k, q, residual_provider, schedule, "Ia", part)


def _add_residual(code, n, k, q, residual_provider, schedule, family, part):
    provider = residual_provider if residual_provider is not None else best_known_code
    res = provider(n - k, 4, k, q)
    if res is not None and res.size:
        if res.k != k or res.n != n - k or res.d < 4:
            raise ValueError("residual code has the wrong parameters")
        code.strata += embed(res, k).strata
    code.notes.update(
        residual=res.size if res is not None else 0,
        residual_rule=(res.notes.get("rule", res.provenance) if res is not None else "none"),
        partition=part,
        plan=ConstructionPlan(family, q, n, k, {"nu": nu_capacity(k, q)[0], "ell": part.ell},
                              [(bits_str(p), [c + 1 for c in cl], "block digits per class") for p, cl in schedule]),
    )
    return code


IB_SPECIAL = (("1100", "1100"), ("1010", "1010"), ("0110", "1001"), ("1001", "0110"))


def check_ib_side_condition(n: int, k: int, q: int) -> tuple[bool, str]:
    nu, _ = nu_capacity(k, q)
    lhs = nu + 1 - q ** (2 * k - 4) - q ** (2 * k - 5) - 2 * q ** (2 * k - 6)
    ok = lhs >= n - k
    return ok, f"(nu+1) - q^(2k-4) - q^(2k-5) - 2q^(2k-6) = {lhs} {'>=' if ok else '<'} n-k = {n - k}"


def construction_ib(n: int, k: int, q=2, residual_provider=None) -> SubspaceCode:
    """Construction Ia with four full-diagram prefixes on single classes.

    Feasibility is decided by exact capacity accounting; whether the
    closed-form side condition holds is recorded in ``notes``.
    """
    F = get_field(q)
    q = F.q
    if k < 4:
        raise ValueError(f"k={k}: requires k >= 4")
    if n < 2 * k + 2:
        raise ValueError(f"requires n >= 2k+2: n={n} < {2 * k + 2}")
    ell = class_count(n - k)
    part = one_factorization(n - k)
    head = (1,) * (k - 4)
    entries = [_lifted_mrd_entry(n, k, 2)]
    used = set()
    specials = []
    for idx, (pre, suf) in enumerate(IB_SPECIAL):
        p = head + as_bits(pre)
        y = as_bits(suf) + (0,) * (n - k - 4)
        ci = part.class_of(y)
        used.add(ci)
        specials.append((p, [ci]))
        for yy in part.classes[ci]:
            v = p + yy
            entries.append(SkeletonEntry(v, 2, {}, None, None, group=f"B{idx + 1}",
                                         label=f"B{idx + 1}/P{ci + 1}/{bits_str(v)}"))
    special_prefixes = {p for p, _ in specials}
    rest = [c for c in range(ell) if c not in used]
    others = [p for p in weight_vectors(k, k - 2) if p not in special_prefixes]
    sched_idx = ia_schedule(k, q, len(rest), others)
    schedule = [(p, [rest[i] for i in cl]) for p, cl in sched_idx]
    entries += _ia_entries(n, k, q, part, schedule)
    ok, why = check_ib_side_condition(n, k, q)
    code = multilevel(entries, 2, F, provenance=f"construction_ib n={n} k={k} q={q} classes={ell}")
    code = _add_residual(code, n, k, q, residual_provider, specials + schedule, "Ib", part)
    code.notes.update(side_condition=ok, side_condition_text=why)
    return code


# ---------------------------------------------------------------- extension

def extend_size(M: int, q: int, k: int, delta_cols: int) -> int:
    return M * q ** (delta_cols * (k - 1))


def extend_code(code: SubspaceCode, delta_cols: int) -> SubspaceCode:
    """Append a k x Delta MRD code of rank distance 2 in Delta new columns."""
    k, q = code.k, code.q
    if delta_cols < k:
        raise ValueError(f"requires Delta >= k: Delta={delta_cols} < k={k}")
    if code.d < 4:
        raise ValueError(f"input distance {code.d} is below 4")
    mrd = gabidulin_mrd(k, delta_cols, 2, q)
    strata = []
    for s in code.strata:
        off = np.concatenate([s.offset, np.zeros((k, delta_cols), np.int64)], axis=1)
        old = np.concatenate([s.basis, np.zeros((s.dimension, k, delta_cols), np.int64)], axis=2)
        new = np.concatenate([np.zeros((mrd.dimension, k, code.n), np.int64), mrd.basis], axis=2)
        strata.append(Stratum(q, s.v + (0,) * delta_cols, off, np.concatenate([old, new]),
                              s.label, s.group, s.block, s.delta))
    out = SubspaceCode(q, code.n + delta_cols, k, 4, strata, f"extend[{delta_cols}] of {code.provenance}")
    out.notes["expected"] = extend_size(code.size, q, k, delta_cols)
    return out


# ---------------------------------------------------------------- Construction II

def recursion_sum(k: int) -> int:
    return sum(range(3, k + 1))


def check_ii(n: int, k: int, q: int) -> int:
    if k < 3:
        raise ValueError(f"k={k}: requires k >= 3")
    s = recursion_sum(k)
    if n < s + 2 + k:
        raise ValueError(f"requires n >= s+2+k: n={n} < {s + 2 + k}")
    ell = class_count(n - s)
    if ell > q * q + q + 1:
        raise ValueError(f"requires q^2+q+1 >= l: {q * q + q + 1} < l={ell}")
    return ell


def _v0(k: int, j: int, length: int) -> tuple[int, ...]:
    if j == 0:
        return (1,) * k + (0,) * (length - k)
    head = [0] * k
    head[k - j] = 1
    return tuple(head) + _v0(k - 1, j - 1, length - k)


def construction_ii(n: int, k: int, q=2) -> SubspaceCode:
    """(n, M, 2(k-1), k)_q code with M = sum_j q^{2(n - sum_{i=j}^k i)} + [n-s 2]_q."""
    F = get_field(q)
    q = F.q
    ell = check_ii(n, k, q)
    if k == 3:
        return construction_0(n, F)
    s = recursion_sum(k)
    delta = k - 1
    entries = [_lifted_mrd_entry(n, k, delta, label="v00")]
    for j in range(1, k - 2):
        v = _v0(k, j, n)
        last = max(pivots_of(v))
        entries.append(SkeletonEntry(v, delta, {}, _region_columns(v, last + 1), None,
                                     group="A0", label=f"A0/v0{j}/{bits_str(v)}"))
    part, sets = pending_sets(n - s, q)
    for ps in sorted(sets, key=lambda p: (p.set_index, p.class_index, p.u)):
        i = ps.set_index
        head = []
        for L in range(k, 2, -1):
            blk = [0] * L
            blk[3 - i] = 1
            head += blk
        v = tuple(head) + ps.y
        bcols = _region_columns(v, 0, s)
        piv = pivots_of(v)
        fixed = {}
        w = digits(ps.u, q, 3)
        pinned = {1: 0, 2: 1, 3: 2}[i]
        m1 = k - 3 if i == 1 else k - 2
        lead = digits(ps.local, q, 2)[:pinned] if pinned else []
        for r in range(m1):
            row = [c for c in bcols if c > piv[r]]
            for c, x in zip(row, lead):
                fixed[(r, c)] = x
            if r <= k - 4:
                rest = row[pinned:]
                for c, x in zip(rest[:3], w):
                    fixed[(r, c)] = x
        block = PendingBlockSpec(m1, len(bcols), bcols)
        entries.append(SkeletonEntry(v, delta, fixed, _region_columns(v, s), block,
                                     group=f"A{i}", label=f"A{i}/P{ps.class_index + 1}/{bits_str(v)}"))
    code = multilevel(entries, delta, F, provenance=f"construction_ii n={n} k={k} q={q} classes={ell}")
    code.notes.update(
        partition=part,
        expected=bound_ii(n, k, q).value,
        plan=ConstructionPlan("II", q, n, k, {"s": s, "ell": ell}, [
            ("A1", [1], "staircase x=3"),
            ("A2", list(range(2, min(q + 1, ell) + 1)), "first dot per row = class value"),
            ("A3", list(range(q + 2, ell + 1)), "first two dots per row = class digits"),
        ]),
    )
    return code


# ---------------------------------------------------------------- bounds

def _na(q, n, d, k, formula, why) -> BoundValue:
    return BoundValue(q, n, d, k, formula, None, [], why)


def bound_lifted_mrd(n: int, d: int, k: int, q=2) -> BoundValue:
    q = get_field(q).q
    delta = d // 2
    a, b = max(k, n - k), min(k, n - k)
    if d % 2 or delta < 1 or delta > b:
        return _na(q, n, d, k, "lifted_mrd", f"needs 1 <= d/2 <= min(k, n-k) = {b}")
    t = q ** (a * (b - delta + 1))
    return BoundValue(q, n, d, k, "lifted_mrd", t, [t])


def bound_ia(n: int, k: int, q=2, residual_value: int | None = None) -> BoundValue:
    q = get_field(q).q
    if k < 4 or n < 2 * k + 2:
        return _na(q, n, 4, k, "Ia", "needs k >= 4 and n >= 2k+2")
    nu, _ = nu_capacity(k, q)
    ell = class_count(n - k)
    if nu < ell:
        return _na(q, n, 4, k, "Ia", f"needs nu >= l: {nu} < {ell}")
    if residual_value is None:
        residual_value = best_known_code(n - k, 4, k, q).size
    terms = [q ** ((k - 1) * (n - k)), q ** ((n - k - 2) * (k - 3)) * gaussian_coefficient(n - k, 2, q), residual_value]
    return BoundValue(q, n, 4, k, "Ia", sum(terms), terms)


def bound_ib(n: int, k: int, q=2, residual_value: int | None = None) -> BoundValue:
    q = get_field(q).q
    if k < 4 or n < 2 * k + 2:
        return _na(q, n, 4, k, "Ib", "needs k >= 4 and n >= 2k+2")
    ok, why = check_ib_side_condition(n, k, q)
    if not ok:
        return _na(q, n, 4, k, "Ib", why)
    if residual_value is None:
        residual_value = best_known_code(n - k, 4, k, q).size
    e = (k - 1) * (n - k - 2)
    terms = [
        q ** ((k - 1) * (n - k)),
        q ** ((n - k - 2) * (k - 3)) * gaussian_coefficient(n - k, 2, q),
        (q ** (2 * (k - 3)) - 1) * q ** e,
        (q ** (2 * (k - 3) - 1) - 1) * q ** (e - 1),
        2 * (q ** (2 * (k - 4)) - 1) * q ** (e - 2),
        residual_value,
    ]
    return BoundValue(q, n, 4, k, "Ib", sum(terms), terms)


def bound_ii(n: int, k: int, q=2) -> BoundValue:
    q = get_field(q).q
    d = 2 * (k - 1)
    try:
        check_ii(n, k, q)
    except ValueError as e:
        return _na(q, n, d, k, "II", str(e))
    s = recursion_sum(k)
    terms = [q ** (2 * (n - sum(range(j, k + 1)))) for j in range(k, 2, -1)]
    terms.append(gaussian_coefficient(n - s, 2, q))
    return BoundValue(q, n, d, k, "II", sum(terms), terms)


def bound_construction_0(n: int, q=2) -> BoundValue:
    q = get_field(q).q
    return bound_ii(n, 3, q)


# ---------------------------------------------------------------- registry

def lifted_mrd_code(n: int, d: int, k: int, q=2) -> SubspaceCode:
    F = get_field(q)
    delta = d // 2
    entry = _lifted_mrd_entry(n, k, delta, label="lifted-mrd")
    code = multilevel([entry], delta, F, provenance=f"lifted_mrd n={n} d={d} k={k} q={F.q}", check=False)
    return code


def spread_code(n: int, k: int, q=2) -> SubspaceCode:
    """Desarguesian spread: the cosets gamma^i F_{q^k}^* of F_{q^n}^*, as k-subspaces."""
    F = get_field(q)
    if n % k:
        raise ValueError(f"k={k} does not divide n={n}")
    if F.q ** n > MAX_ORDER:
        raise ValueError(f"q^n = {F.q ** n} exceeds the field size ceiling")
    E = ext_make(F, n)
    g = E.primitive_element()
    N = (E.q - 1) // (F.q ** k - 1)
    theta = E.pow(g, N)
    sub = [E.pow(theta, t) for t in range(k)]
    words = []
    x = 1
    for _ in range(N):
        G = [E.to_vector(E.mul(x, b)) for b in sub]
        words.append(subspace_from_matrix(G, F, k))
        x = E.mul(x, g)
    code = code_from_subspaces(words, F.q, n, k, 2 * k, provenance=f"spread n={n} k={k} q={F.q}")
    return code


def dual_code(code: SubspaceCode) -> SubspaceCode:
    words = [dual_subspace(X) for X in code.words()]
    return code_from_subspaces(words, code.q, code.n, code.n - code.k, code.d,
                               provenance=f"dual of {code.provenance}")


def _single(n, d, k, q):
    X = subspace_from_matrix(np.eye(n, dtype=np.int64)[:k], q, k) if k else None
    words = [X] if X is not None else []
    return code_from_subspaces(words, q, n, k, d, provenance=f"single subspace n={n} k={k}")


@lru_cache(maxsize=None)
def _best_known(n: int, d: int, k: int, q: int) -> SubspaceCode:
    cands: list[tuple[str, SubspaceCode]] = []
    if k == 0 or k == n or d > 2 * min(k, n - k):
        cands.append(("single", _single(n, d, k, q)))
    else:
        if d <= 2:
            cands.append(("lifted-mrd (d=2 out of scope)", lifted_mrd_code(n, 2, k, q)))
        else:
            cands.append(("lifted-mrd", lifted_mrd_code(n, d, k, q)))
            if 2 * k > n:
                inner = _best_known(n, d, n - k, q)
                if inner.size <= MATERIALIZE_LIMIT:
                    cands.append((f"dual[{inner.notes.get('rule', '')}]", dual_code(inner)))
            if d == 2 * k and n % k == 0 and q ** n <= MAX_ORDER:
                cands.append(("spread", spread_code(n, k, q)))
            builders = []
            if d == 4 and k >= 4:
                builders.append(("construction_ia", lambda: construction_ia(n, k, q)))
            if d == 4 and k == 3:
                builders.append(("construction_0", lambda: construction_0(n, q)))
            if d == 2 * (k - 1) and k >= 4:
                builders.append(("construction_ii", lambda: construction_ii(n, k, q)))
            for name, build in builders:
                try:
                    cands.append((name, build()))
                except ValueError:
                    pass
    rule, best = max(cands, key=lambda rc: rc[1].size)
    best.notes["rule"] = rule
    best.notes["candidates"] = {r: c.size for r, c in cands}
    return best


def best_known_code(n: int, d: int, k: int, q=2) -> SubspaceCode:
    """Largest code this package can build for (n, d, k)_q; ``notes['rule']`` names the source."""
    return _best_known(n, d, k, get_field(q).q)


residual_registry = best_known_code


__all__ = [
    "ConstructionPlan", "BoundValue", "nu_capacity", "construction_ia", "construction_ib", "extend_code",
    "extend_size", "construction_ii", "bound_ia", "bound_ib", "bound_ii", "bound_lifted_mrd",
    "best_known_code", "residual_registry", "spread_code", "dual_code", "lifted_mrd_code", "embed",
    "ia_schedule", "weight_vectors",
]
