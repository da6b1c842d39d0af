"""Walk one partition through the branching combinatorics, end to end."""

import argparse

from klrlab.combi import (
    Partition,
    enumerate_dominant,
    enumerate_gt_patterns,
    interlacing_set,
    weight_of_partition,
    weyl_dim,
)
from klrlab.cyclo import gt_idempotent
from klrlab.uqmod import branching_character_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--partition", default="2,1,0", help="comma-separated parts")
    args = ap.parse_args()
    lam = Partition(tuple(int(p) for p in args.partition.split(",")))

    print(f"partition       {lam.parts}")
    print(f"sl-weight       {weight_of_partition(lam).entries}")
    print(f"module dim      {weyl_dim(lam)}")

    print("\none-row-down summands, with box counts and dimensions:")
    for k in range(lam.parts[-1] if lam.parts else 0, lam.parts[0] + 1 if lam.parts else 0):
        for mu in interlacing_set(lam, k):
            print(f"  remove {k} boxes -> {mu.parts}  dim {weyl_dim(mu)}")
    total = sum(weyl_dim(mu) for mu in interlacing_set(lam, "all"))
    print(f"  sum of dims = {total} (should equal {weyl_dim(lam)})")

    print("\nordered removal sequences by box count:")
    for k in range(lam.parts[0] + 1 if lam.parts else 1):
        seqs = enumerate_dominant(lam, k)
        if seqs:
            print(f"  k={k}: {[s.rows for s in seqs]}")

    pats = enumerate_gt_patterns(lam)
    print(f"\n{len(pats)} patterns and their strand sequences:")
    for pat in pats:
        g = gt_idempotent(pat)
        print(f"  {pat.layers}  ->  {g.sequence}")

    print("\nmodule-side check:", branching_character_check(lam))


if __name__ == "__main__":
    main()
