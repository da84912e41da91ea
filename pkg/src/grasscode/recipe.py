"""Scripted multilevel codes from plain-text recipes.

One directive per line, ``#`` starts a comment::

    params q=2 n=10 k=4 d=4
    class <id> <suffix> <suffix> ...      # optional; default: one_factorization(n-k)
    lifted-mrd                            # the 1^k 0^(n-k) stratum
    prefix <bits> classes <ids> mode <ia|full|pending>
    residual registry|none                # best (n-k, d, k) code behind k zero columns

Modes: ``ia`` fills the prefix block with the base-q digits of the class's
position in the list and puts a rank-distance-2 FDMRD code on the suffix
columns; ``full`` puts the FDMRD code on the whole diagram; ``pending``
reserves the top dots of the leftmost height-1 columns for the class digits
and puts the FDMRD code on the remaining columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .constructions import _fill, _region_columns, best_known_code, embed, prefix_block
from .field import get_field
from .grassmann import as_bits, bits_str, column_heights_of
from .rankmetric import PendingBlockSpec
from .skeleton import SkeletonEntry, SuffixPartition, digits, multilevel, one_factorization

MODES = ("ia", "full", "pending")


class RecipeError(ValueError):
    pass


@dataclass
class PrefixRule:
    prefix: tuple[int, ...]
    classes: list[int]
    mode: str


@dataclass
class Recipe:
    name: str
    q: int
    n: int
    k: int
    d: int = 4
    classes: dict = field(default_factory=dict)
    lifted_mrd: bool = False
    rules: list = field(default_factory=list)
    residual: str = "none"

    def partition(self) -> SuffixPartition:
        if not self.classes:
            return one_factorization(self.n - self.k)
        ids = sorted(self.classes)
        return SuffixPartition(self.n - self.k, [self.classes[i] for i in ids])

    def class_position(self, cid: int) -> int:
        ids = sorted(self.classes) if self.classes else list(range(1, self.partition().ell + 1))
        if cid not in ids:
            raise RecipeError(f"unknown class {cid}")
        return ids.index(cid)


def parse_recipe(text: str, name: str = "recipe") -> Recipe:
    rec = None
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        word, args = line[0], line[1:]
        try:
            if word == "params":
                kv = dict(a.split("=", 1) for a in args)
                rec = Recipe(name, int(kv["q"]), int(kv["n"]), int(kv["k"]), int(kv.get("d", 4)))
                continue
            if rec is None:
                raise RecipeError("'params' must come first")
            if word == "class":
                vecs = [as_bits(a) for a in args[1:]]
                if any(len(v) != rec.n - rec.k or sum(v) != 2 for v in vecs):
                    raise RecipeError("class members must be weight-2 vectors of length n-k")
                rec.classes[int(args[0])] = vecs
            elif word == "lifted-mrd":
                rec.lifted_mrd = True
            elif word == "prefix":
                opts = dict(zip(args[1::2], args[2::2]))
                p = as_bits(args[0])
                mode = opts.get("mode", "ia")
                if len(p) != rec.k or mode not in MODES:
                    raise RecipeError(f"bad prefix {args[0]} or mode {mode}")
                rec.rules.append(PrefixRule(p, [int(c) for c in opts["classes"].split(",")], mode))
            elif word == "residual":
                rec.residual = args[0]
            else:
                raise RecipeError(f"unknown directive {word!r}")
        except (KeyError, IndexError, ValueError) as e:
            raise RecipeError(f"{name}:{no}: {e}") from None
    if rec is None:
        raise RecipeError(f"{name}: no 'params' line")
    return rec


def load_recipe(name_or_path) -> Recipe:
    """Read a recipe file, or a bundled recipe by name (e.g. ``ia-n10-k4``)."""
    p = Path(name_or_path)
    if p.exists():
        return parse_recipe(p.read_text(), p.stem)
    res = resources.files("grasscode.recipes").joinpath(f"{name_or_path}.recipe")
    if not res.is_file():
        raise RecipeError(f"no recipe named {name_or_path!r}")
    return parse_recipe(res.read_text(), str(name_or_path))


def bundled_recipes() -> list[str]:
    return sorted(p.name[:-7] for p in resources.files("grasscode.recipes").iterdir() if p.name.endswith(".recipe"))


def _entries(rec: Recipe, q: int):
    part = rec.partition()
    n, k = rec.n, rec.k
    delta = rec.d // 2
    out = []
    if rec.lifted_mrd:
        out.append(SkeletonEntry((1,) * k + (0,) * (n - k), delta, group="A0", label="A0"))
    for idx, rule in enumerate(rec.rules, 1):
        group = f"R{idx}"
        blk = prefix_block(rule.prefix)
        for t, cid in enumerate(rule.classes):
            for y in part.classes[rec.class_position(cid)]:
                v = rule.prefix + y
                label = f"{group}/{rule.mode}/P{cid}/{bits_str(v)}"
                if rule.mode == "full":
                    out.append(SkeletonEntry(v, delta, {}, None, None, group, label))
                elif rule.mode == "ia":
                    bcols = tuple(c for c, _ in blk)
                    ndots = sum(h for _, h in blk)
                    if len(rule.classes) > q ** ndots:
                        raise RecipeError(f"prefix {bits_str(rule.prefix)}: {len(rule.classes)} classes exceed "
                                          f"block capacity {q ** ndots}")
                    fixed = _fill(v, bcols, digits(t, q, ndots)) if ndots else {}
                    block = PendingBlockSpec(max(h for _, h in blk), len(bcols), bcols) if ndots else None
                    out.append(SkeletonEntry(v, delta, fixed, _region_columns(v, k), block, group, label))
                else:
                    need = max(1, math.ceil(math.log(len(rule.classes), q))) if len(rule.classes) > 1 else 0
                    cols = [c for c, h in column_heights_of(v)][:need]
                    if any(h != 1 for c, h in column_heights_of(v)[:need]):
                        raise RecipeError(f"prefix {bits_str(rule.prefix)}: no {need} leftmost height-1 columns")
                    fixed = {(0, c): x for c, x in zip(cols, digits(t, q, need))}
                    rest = [c for c, _ in column_heights_of(v) if c not in cols]
                    block = PendingBlockSpec(1, need, tuple(cols)) if need else None
                    out.append(SkeletonEntry(v, delta, fixed, tuple(rest), block, group, label))
    return out


def run_recipe(rec: Recipe | str):
    if not isinstance(rec, Recipe):
        rec = load_recipe(rec)
    F = get_field(rec.q)
    code = multilevel(_entries(rec, F.q), rec.d // 2, F, provenance=f"recipe {rec.name} q={F.q} n={rec.n} k={rec.k}")
    if rec.residual == "registry":
        res = best_known_code(rec.n - rec.k, rec.d, rec.k, F.q)
        code.strata += embed(res, rec.k).strata
        code.notes["residual"] = res.size
    elif rec.residual != "none":
        raise RecipeError(f"unknown residual source {rec.residual!r}")
    return code
