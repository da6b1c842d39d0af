"""Print the graded Hom matrix of a quotient block next to the bilinear-form matrix."""

import argparse

from klrlab.combi import Partition, weight_of_partition
from klrlab.cyclo import gdim_hom, make_context
from klrlab.uqmod import gram_entry, weight_words


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--partition", default="2,1,0")
    ap.add_argument("--beta", default="1,1", help="strand multiplicities per label")
    args = ap.parse_args()
    lam = Partition(tuple(int(p) for p in args.partition.split(",")))
    beta = tuple(int(b) for b in args.beta.split(","))

    ctx = make_context(lam)
    hw = weight_of_partition(lam).entries
    words = weight_words(beta)
    print(f"partition {lam.parts}, multiplicities {beta}, {len(words)} sequences\n")

    width = max(len(str(w)) for w in words) + 2
    for u in words:
        for w in words:
            poly, status = gdim_hom(u, w, ctx)
            gram = gram_entry(hw, u, w)
            mark = "==" if poly == gram else "!="
            print(f"  {str(u):<{width}} {str(w):<{width}} gdim {str(poly):<24}"
                  f" {mark} form {gram}   [{status}]")
    print("\nEvery line should show '==': the graded Hom pairing of the idempotents")
    print("computes the same matrix as the contravariant form on the weight space.")


if __name__ == "__main__":
    main()
