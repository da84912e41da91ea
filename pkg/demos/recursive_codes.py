"""Distance-2(k-1) codes from the recursive pending-block construction.

Builds the k=4, n=13 and k=5, n=19 codes, prints how their words split
across identifying-vector groups, and certifies the minimum distance
stratum by stratum.

    python3 demos/recursive_codes.py
"""

from grasscode.constructions import bound_ii, construction_ii
from grasscode.verify import verify_stratified


def show(n, k):
    code = construction_ii(n, k)
    bound = bound_ii(n, k)
    print(code.summary())
    print(f"  size formula: {' + '.join(map(str, bound.terms))} = {bound.value}")
    for group, count in sorted(code.group_counts().items()):
        print(f"  {group:>4}: {count}")
    print(verify_stratified(code).to_text())


if __name__ == "__main__":
    show(13, 4)
    show(19, 5)
