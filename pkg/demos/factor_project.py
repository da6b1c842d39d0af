"""Factor an idempotent through special form, then project along a removed row."""

from klrlab.combi import Partition
from klrlab.cyclo import branch_context, cyc_reduce, make_context, pi_project
from klrlab.klr import KLRElement, KLRWord, factor_general, idempotent, multiply, normal_form


def main():
    seq = (1, 3, 2, 3)
    n = 3
    print(f"strand sequence {seq}, rank {n}")
    print("\npulling both top-label strands into leading staircase blocks:")
    acc = KLRElement(n, {})
    for coeff, left, spec, right in factor_general(seq, 2, n):
        print(f"  {coeff:+d} * (word on {left.bottom}) 1_{spec.bottom()} (word on {right.bottom})")
        mid = idempotent(n, spec.bottom())
        acc = acc + multiply(KLRElement(n, {left: coeff}), multiply(mid, right))
    ok = normal_form(acc) == idempotent(n, seq)
    print(f"  reassembled sum equals the plain idempotent: {ok}")

    lam = Partition((2, 1, 0))
    ctx = make_context(lam)
    xi = (2,)
    tctx = branch_context(ctx, xi)
    print(f"\nquotient at {lam.parts}; removing one box from row {xi[0]}"
          f" lands in {tuple(tctx.lam)}")

    # the free strand crossed over the block and back projects to a dot downstairs
    w = KLRWord(2, (2, 1), (("cross", 1), ("cross", 1)))
    img = pi_project(w, xi, ctx)
    print(f"double crossing on {w.bottom} projects to: {img!r}")
    # but conjugating a dot through the same crossings dies in the quotient
    w2 = KLRWord(2, (2, 1), (("cross", 1), ("dot", 1), ("cross", 1)))
    img2 = pi_project(w2, xi, ctx)
    red, status = cyc_reduce(img2, tctx)
    print(f"with a dot in between it reduces to: {red!r}  [{status}]")


if __name__ == "__main__":
    main()
