"""Distance-4 codes whose close identifying vectors are separated by
pending blocks.

Walks from the k=3 base code through the k=4 block construction, its
variant with four full-diagram prefixes, and the hand-tuned recipe,
auditing the block inequality d_S >= d_H + 2 rank(B_X - B_Y) on sampled
pairs along the way.

    python3 demos/pending_blocks.py
"""

from grasscode.constructions import construction_ia, construction_ib
from grasscode.recipe import load_recipe, run_recipe
from grasscode.skeleton import construction_0
from grasscode.verify import audit_block_distance, verify_exhaustive, verify_stratified


def main():
    c0 = construction_0(8)
    print(c0.summary(), "->", verify_exhaustive(c0).certified_min_distance)

    ia = construction_ia(10, 4)
    plan = ia.notes["plan"]
    print(ia.summary())
    print(f"  nu={plan.derived['nu']} classes={plan.derived['ell']} residual={ia.notes['residual']}"
          f" ({ia.notes['residual_rule']})")
    for prefix, classes, rule in plan.schedule:
        print(f"  prefix {prefix}: classes {classes} ({rule})")
    audit = audit_block_distance(ia, samples=2000)
    print(f"  block audit: {audit.pairs} pairs, ok={audit.ok}")

    ib = construction_ib(10, 4)
    print(ib.summary())
    print(f"  side condition: {ib.notes['side_condition_text']}")

    tuned = run_recipe(load_recipe("ia-n10-k4"))
    print(tuned.summary(), f"= 2^18 + {tuned.size - 2 ** 18}")
    print(verify_stratified(tuned).to_text())


if __name__ == "__main__":
    main()
