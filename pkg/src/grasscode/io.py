"""Plain-text code files.

::

    SUBSPACE-CODE v1
    q=2 n=7 k=3 d=4 M=2
    provenance=example
    1011000
    0100110
    0001011

    1000001
    ...

Each word is its RREF basis, k rows of n symbols: one digit per entry when
q <= 10, comma-separated integers otherwise.  Blocks are separated by one
blank line.
"""

from __future__ import annotations

import io as _io
from pathlib import Path

import numpy as np

from .code import Stratum, SubspaceCode, code_from_subspaces
from .field import get_field
from .grassmann import Subspace, free_mask, subspace_from_rref
from .matrix import rref

MAGIC = "SUBSPACE-CODE v1"


class CodeFileError(ValueError):
    pass


def _row_text(row, q: int) -> str:
    if q <= 10:
        return "".join(str(int(x)) for x in row)
    return ",".join(str(int(x)) for x in row)


def iter_lines(code: SubspaceCode):
    prov = " ".join(str(code.provenance).splitlines())
    yield MAGIC
    yield f"q={code.q} n={code.n} k={code.k} d={code.d} M={code.size}"
    yield f"provenance={prov}"
    first = True
    for X in code.words():
        if not first:
            yield ""
        first = False
        for r in X.rows:
            yield _row_text(r, code.q)


def write_code(code: SubspaceCode, path) -> None:
    """Write ``code`` to ``path`` (a filename or a text stream)."""
    if hasattr(path, "write"):
        for line in iter_lines(code):
            path.write(line + "\n")
        return
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        write_code(code, fh)


def dumps(code: SubspaceCode) -> str:
    buf = _io.StringIO()
    write_code(code, buf)
    return buf.getvalue()


def _parse_row(text: str, q: int, n: int, where: str) -> tuple[int, ...]:
    try:
        vals = [int(x) for x in text.split(",")] if q > 10 else [int(ch) for ch in text]
    except ValueError:
        raise CodeFileError(f"{where}: bad symbol in {text!r}") from None
    if len(vals) != n:
        raise CodeFileError(f"{where}: row has {len(vals)} entries, expected {n}")
    if any(not 0 <= v < q for v in vals):
        raise CodeFileError(f"{where}: entry outside F_{q}")
    return tuple(vals)


def loads(text: str, name: str = "<string>") -> SubspaceCode:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 3 or lines[0] != MAGIC:
        raise CodeFileError(f"{name}: missing '{MAGIC}' header")
    try:
        head = dict(tok.split("=", 1) for tok in lines[1].split())
        q, n, k, d, M = (int(head[key]) for key in ("q", "n", "k", "d", "M"))
    except (KeyError, ValueError):
        raise CodeFileError(f"{name}:2: malformed parameter line {lines[1]!r}") from None
    if not lines[2].startswith("provenance="):
        raise CodeFileError(f"{name}:3: missing provenance line")
    provenance = lines[2][len("provenance="):]
    F = get_field(q)
    words = []
    body = lines[3:]
    i = 0
    while i < len(body):
        block = body[i:i + k]
        where = f"{name}:{4 + i}"
        if len(block) < k or any(not b for b in block):
            raise CodeFileError(f"{where}: incomplete block of {k} rows")
        rows = [_parse_row(b, q, n, f"{name}:{4 + i + j}") for j, b in enumerate(block)]
        try:
            words.append(subspace_from_rref(rows, F) if k else Subspace(q, n, ()))
        except ValueError as e:
            raise CodeFileError(f"{where}: {e}") from None
        i += k
        if i < len(body):
            if body[i] != "":
                raise CodeFileError(f"{name}:{4 + i}: expected a blank line between blocks")
            i += 1
    code = code_from_subspaces(words, q, n, k, d, provenance)
    if len(words) != M:
        code.notes["warnings"] = [f"header declares M={M} but the file holds {len(words)} words"]
    code.notes["declared_size"] = M
    return code


def read_code(path) -> SubspaceCode:
    p = Path(path)
    try:
        text = p.read_text(encoding="ascii")
    except UnicodeDecodeError:
        raise CodeFileError(f"{p}: not an ASCII code file") from None
    return loads(text, str(p))


# ---------------------------------------------------------------- regrouping

def restratify(code: SubspaceCode) -> SubspaceCode:
    """Regroup explicit words into strata where possible.

    Words sharing an identifying vector become one stratum when they form
    exactly an affine space ``offset + span``; the span is recomputed from
    the words and the set equality is checked, so the regrouping adds no
    trust assumptions.  Other groups stay as singleton strata.
    """
    F = get_field(code.q)
    groups: dict = {}
    for X in code.words():
        groups.setdefault(X.id_vector, []).append(X)
    strata = []
    for v, ws in groups.items():
        s = _affine_stratum(F, v, ws)
        if s is None:
            strata += [Stratum(F.q, v, X.matrix, np.zeros((0, code.k, code.n), np.int64), f"w{bitsafe(v)}.{i}", "explicit")
                       for i, X in enumerate(ws)]
        else:
            strata.append(s)
    out = SubspaceCode(code.q, code.n, code.k, code.d, strata, code.provenance, dict(code.notes))
    return out


def bitsafe(v) -> str:
    return "".join(map(str, v))


def _affine_stratum(F, v, ws):
    size = len(ws)
    dim = 0
    while F.q ** dim < size:
        dim += 1
    if F.q ** dim != size:
        return None
    mask = free_mask(v)
    base = ws[0].matrix
    diffs = np.array([F.vsub(X.matrix, base)[mask] for X in ws], dtype=np.int64)
    red = rref(diffs, F)
    if red.rank != dim:
        return None
    basis = np.zeros((dim,) + base.shape, dtype=np.int64)
    for t in range(dim):
        basis[t][mask] = red.rref[t]
    s = Stratum(F.q, v, base, basis, f"v{bitsafe(v)}", "regrouped")
    have = {X.rows for X in ws}
    for W in s.word_arrays():
        for M in W:
            if tuple(tuple(int(x) for x in r) for r in M) not in have:
                return None
    return s
