"""Command line: ``grasscode construct | verify | bounds``.

Exit codes: 0 ok, 1 expectation failure, 2 input error, 3 internal
invariant failure (e.g. an FDMRD code missing its dimension bound).
"""

from __future__ import annotations

import argparse
import csv
import sys

from . import constructions as cons
from .io import CodeFileError, read_code, restratify, write_code
from .rankmetric import FdmrdBoundError
from .recipe import RecipeError, load_recipe, run_recipe
from .skeleton import construction_0, multilevel_code
from .verify import EXHAUSTIVE_THRESHOLD, VerificationError, verify_exhaustive, verify_stratified

EXIT_OK, EXIT_EXPECT, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
MAX_WRITE = 2_000_000
FAMILIES = ("ml", "c0", "ia", "ib", "ii", "extend")


class UsageError(ValueError):
    pass


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for family {args.family}")


def build(args):
    """Build the code requested by parsed ``construct`` arguments."""
    if args.recipe:
        return run_recipe(load_recipe(args.recipe))
    fam = args.family
    if fam is None:
        raise UsageError("give --family or --recipe")
    q = args.q
    if fam == "c0":
        _need(args, "n")
        return construction_0(args.n, q)
    if fam == "ml":
        _need(args, "n", "k")
        d = args.d if args.d is not None else 2 * (args.delta or 2)
        return multilevel_code(args.n, d, args.k, q)
    if fam == "ia":
        _need(args, "n", "k")
        return cons.construction_ia(args.n, args.k, q)
    if fam == "ib":
        _need(args, "n", "k")
        return cons.construction_ib(args.n, args.k, q)
    if fam == "ii":
        _need(args, "n", "k")
        return cons.construction_ii(args.n, args.k, q)
    if fam == "extend":
        _need(args, "input", "delta")
        return cons.extend_code(read_code(args.input), args.delta)
    raise UsageError(f"unknown family {fam}")


def cmd_construct(args, out=None) -> int:
    out = out or sys.stdout
    code = build(args)
    out.write(code.summary() + "\n")
    out.write(f"strata={len(code.strata)} provenance={code.provenance}\n")
    if args.out:
        if code.size > args.max_words:
            raise UsageError(f"refusing to write {code.size} words (limit {args.max_words}; raise --max-words)")
        write_code(code, args.out)
        out.write(f"wrote {args.out}\n")
    return EXIT_OK


def cmd_verify(args, out=None) -> int:
    out = out or sys.stdout
    code = read_code(args.path)
    for w in code.notes.get("warnings", []):
        sys.stderr.write(f"warning: {w}\n")
    mode = args.mode
    if mode == "auto":
        mode = "exhaustive" if code.size <= args.threshold else "stratified"
    if mode == "exhaustive":
        rep = verify_exhaustive(code, args.threshold)
    else:
        rep = verify_stratified(restratify(code))
    out.write(rep.to_kv() if args.format == "kv" else rep.to_text())
    expect = args.expect_distance if args.expect_distance is not None else code.d
    got = rep.certified_min_distance
    if rep.failures or rep.duplicates or (got is not None and got < expect):
        return EXIT_EXPECT
    return EXIT_OK


BOUND_NAMES = ("lifted_mrd", "Ia", "Ib", "II")


def bounds_row(n: int, k: int, d: int, q: int) -> list:
    rows = [cons.bound_lifted_mrd(n, d, k, q)]
    if d == 4:
        rows += [cons.bound_ia(n, k, q), cons.bound_ib(n, k, q)]
    else:
        rows += [cons.BoundValue(q, n, d, k, f, None, [], "d != 4") for f in ("Ia", "Ib")]
    if d == 2 * (k - 1):
        rows.append(cons.bound_ii(n, k, q))
    else:
        rows.append(cons.BoundValue(q, n, d, k, "II", None, [], "d != 2(k-1)"))
    return rows


def parse_range(text: str) -> range:
    if ":" in text:
        a, b = text.split(":", 1)
        return range(int(a), int(b) + 1)
    return range(int(text), int(text) + 1)


def cmd_bounds(args, out=None) -> int:
    out = out or sys.stdout
    table = [(n, bounds_row(n, args.k, args.d, args.q)) for n in parse_range(args.n)]
    if args.csv:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["q", "n", "d", "k", "bound", "value", "terms", "max"])
        for n, row in table:
            best = max((b.value for b in row if b.applicable), default=None)
            for b in row:
                w.writerow([args.q, n, args.d, args.k, b.formula, str(b),
                            "+".join(map(str, b.terms)), int(b.applicable and b.value == best)])
        return EXIT_OK
    out.write(f"q={args.q} k={args.k} d={args.d}\n")
    out.write(f"{'n':>4}  " + "  ".join(f"{name:>16}" for name in BOUND_NAMES) + "\n")
    for n, row in table:
        best = max((b.value for b in row if b.applicable), default=None)
        cells = [(str(b) + ("*" if b.applicable and b.value == best else "")) for b in row]
        out.write(f"{n:>4}  " + "  ".join(f"{c:>16}" for c in cells) + "\n")
        for b in row:
            if b.applicable and len(b.terms) > 1:
                out.write(f"{'':>6}{b.formula}: {' + '.join(map(str, b.terms))}\n")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grasscode", description="Constant-dimension subspace codes.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and optionally write it to a file")
    c.add_argument("--family", choices=FAMILIES)
    c.add_argument("--q", type=int, default=2)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--d", type=int, help="subspace distance (ml family)")
    c.add_argument("--delta", type=int, help="rank distance (ml) or number of new columns (extend)")
    c.add_argument("--recipe", help="bundled recipe name or recipe file")
    c.add_argument("--input", help="code file to extend")
    c.add_argument("--out", help="output code file")
    c.add_argument("--max-words", type=int, default=MAX_WRITE)

    v = sub.add_parser("verify", help="certify the minimum distance of a code file")
    v.add_argument("path")
    v.add_argument("--mode", choices=("auto", "exhaustive", "stratified"), default="auto")
    v.add_argument("--expect-distance", type=int)
    v.add_argument("--threshold", type=int, default=EXHAUSTIVE_THRESHOLD)
    v.add_argument("--format", choices=("text", "kv"), default="text")

    b = sub.add_parser("bounds", help="print lower bounds on A_q(n, d, k)")
    b.add_argument("--q", type=int, default=2)
    b.add_argument("--n", required=True, help="value or range a:b")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--csv", action="store_true")
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    handlers = {"construct": cmd_construct, "verify": cmd_verify, "bounds": cmd_bounds}
    try:
        return handlers[args.command](args)
    except (FdmrdBoundError, AssertionError) as e:
        sys.stderr.write(f"internal error: {e}\n")
        return EXIT_INTERNAL
    except (CodeFileError, RecipeError, UsageError, VerificationError, ValueError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
