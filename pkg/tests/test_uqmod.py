"""Module-level checks: forms, relation verification, branching."""

import itertools
import random

from klrlab.combi import Partition, weight_of_partition, weyl_dim
from klrlab.qint import LaurentFrac, LaurentPoly, quantum_integer
from klrlab.uqmod import (
    HighestWeightModule,
    ShapovalovGram,
    branching_character_check,
    build_irreducible,
    exhaustion_depth,
    gram_entry,
    monomial_weight,
    shapovalov_gram,
    verify_relations,
    weight_words,
)


def partitions_with(parts, max_size):
    out = []
    def grow(prefix, remaining, cap):
        if len(prefix) == parts:
            out.append(Partition(prefix))
            return
        for v in range(min(cap, remaining), -1, -1):
            grow(prefix + [v], remaining - v, v)
    for total in range(max_size + 1):
        grow([], total, total)
    return out


def test_highest_weight_vector_normalized():
    assert gram_entry((3, 1), (), ()) == LaurentPoly.one()


def test_single_step_pairings():
    for hw in [(1,), (2,), (3,), (1, 1), (2, 1), (0, 2, 1)]:
        for i in range(1, len(hw) + 1):
            got = gram_entry(hw, (i,), (i,))
            want = quantum_integer(hw[i - 1]).shift(hw[i - 1] - 1)
            assert got == want
            for j in range(1, len(hw) + 1):
                if j != i:
                    assert gram_entry(hw, (i,), (j,)).is_zero()


def test_weight_words_enumeration():
    assert weight_words((1, 1)) == [(1, 2), (2, 1)]
    assert weight_words((2, 0)) == [(1, 1)]
    assert weight_words((2, 1)) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert weight_words(()) == [()]


def test_monomial_weight():
    assert monomial_weight((1, 1), ()) == (1, 1)
    assert monomial_weight((1, 1), (1,)) == (-1, 2)
    assert monomial_weight((1, 1), (1, 2)) == (0, 0)


def test_exhaustion_depth_examples():
    assert exhaustion_depth((2,)) == 2
    assert exhaustion_depth((1, 1)) == 4
    assert exhaustion_depth((2, 1)) == 6
    assert exhaustion_depth((0,)) == 0
    assert exhaustion_depth((1, 0, 1)) == 6


def test_sl2_string_dims():
    mod = build_irreducible((2,))
    assert mod.dim() == 3
    assert mod.weight_multiset() == {(2,): 1, (0,): 1, (-2,): 1}
    assert mod.basis == ((), (1,), (1, 1))


def test_sl2_truncated_depth():
    mod = build_irreducible((2,), depth=1)
    assert mod.dim() == 2
    assert mod.weight_multiset() == {(2,): 1, (0,): 1}


def test_sl3_adjoint_dim():
    mod = build_irreducible((1, 1))
    assert mod.dim() == 8
    assert mod.weight_multiset()[(0, 0)] == 2


def test_dominance_required():
    try:
        build_irreducible((-1, 2))
        assert False
    except ValueError:
        pass


def test_dims_match_weyl_formula():
    sample = []
    for parts in (2, 3, 4):
        for lam in partitions_with(parts, 6):
            if lam[0] == 0:
                continue
            d = weyl_dim(lam)
            if d > 100:
                continue
            sample.append(weight_of_partition(lam).entries)
    seen = set()
    for hw in sample:
        if hw in seen:
            continue
        seen.add(hw)
        mod = build_irreducible(hw)
        lam = []
        acc = 0
        for x in reversed(hw):
            acc += x
            lam.append(acc)
        lam = list(reversed(lam)) + [0]
        assert mod.dim() == weyl_dim(Partition(lam)), hw


def test_gram_rank_equals_weight_multiplicity():
    for hw in [(2,), (3,), (1, 1), (2, 1)]:
        mod = build_irreducible(hw)
        rank = len(hw)
        for beta in itertools.product(range(3), repeat=rank):
            if sum(beta) == 0 or sum(beta) > 4:
                continue
            g = shapovalov_gram(hw, beta)
            assert g.is_symmetric()
            wt = monomial_weight(hw, weight_words(beta)[0]) if g.labels else None
            mult = len(mod.weight_spaces.get(wt, []))
            assert g.rank() == mult, (hw, beta)


def test_gram_bar_symmetry_per_weight_space():
    for hw in [(2,), (3,), (1, 1)]:
        mod = build_irreducible(hw)
        for wt, idxs in mod.weight_spaces.items():
            g = mod.grams[wt]
            shift = None
            for row in g:
                for e in row:
                    if e.is_zero():
                        continue
                    s = e.min_exp() + e.max_exp()
                    if shift is None:
                        shift = s
                    assert e.bar().shift(shift) == e, (hw, wt)


def test_verify_relations_good_modules():
    for hw in [(1,), (3,), (1, 1), (2, 1), (1, 0, 1)]:
        mod = build_irreducible(hw)
        assert verify_relations(mod), hw


def test_verify_relations_detects_mutation():
    mod = build_irreducible((1, 1))
    mod.e_mats[1][0][1] = mod.e_mats[1][0][1] + LaurentFrac.one()
    assert not verify_relations(mod)
    mod = build_irreducible((2,))
    mod.f_mats[1][2][1] = LaurentFrac.zero()
    assert not verify_relations(mod)


def test_biadjointness_on_basis():
    for hw in [(2,), (1, 1), (2, 1)]:
        mod = build_irreducible(hw)

        def pair(r, c):
            if mod.weights[r] != mod.weights[c]:
                return LaurentFrac.zero()
            idxs = mod.weight_spaces[mod.weights[r]]
            return LaurentFrac(mod.grams[mod.weights[r]][idxs.index(r)][idxs.index(c)])

        dim = mod.dim()
        for i in range(1, mod.rank + 1):
            for r in range(dim):
                for c in range(dim):
                    lhs = LaurentFrac.zero()
                    for s in range(dim):
                        v = mod.f_mats[i][s][r]
                        if not v.is_zero():
                            lhs = lhs + v * pair(s, c)
                    rhs = LaurentFrac.zero()
                    for s in range(dim):
                        v = mod.e_mats[i][s][c]
                        if not v.is_zero():
                            rhs = rhs + v * pair(r, s)
                    rhs = rhs * LaurentPoly.q_power(mod.weights[r][i - 1] - 1)
                    assert lhs == rhs, (hw, i, r, c)


def test_k_action_by_weight():
    mod = build_irreducible((2, 1))
    k1 = mod.k_matrix(1)
    for r in range(mod.dim()):
        assert k1[r][r] == LaurentFrac(LaurentPoly.q_power(mod.weights[r][0]))


def test_branching_character_examples():
    rep = branching_character_check(Partition((2, 1, 0)))
    assert rep == {"ok": True, "lhs": 8, "rhs": [2, 3, 1, 2]}
    rep = branching_character_check((1, 0, 0))
    assert rep == {"ok": True, "lhs": 3, "rhs": [2, 1]}
    rep = branching_character_check((1, 0))
    assert rep["ok"] and rep["lhs"] == 2 and rep["rhs"] == [1, 1]


def test_branching_character_family():
    rng = random.Random(7)
    fam = [lam for lam in partitions_with(3, 5) if weyl_dim(lam) <= 40]
    for lam in rng.sample(fam, 6):
        rep = branching_character_check(lam)
        assert rep["ok"], lam
        assert rep["lhs"] == sum(rep["rhs"])


def test_gram_json_roundtrip():
    g = shapovalov_gram((2, 1), (1, 1))
    data = g.to_json()
    back = ShapovalovGram.from_json(data)
    assert back.hw == g.hw
    assert back.beta == g.beta
    assert back.labels == g.labels
    assert back.entries == g.entries


def test_module_repr_and_type():
    mod = build_irreducible((1,))
    assert isinstance(mod, HighestWeightModule)
    assert "dim=2" in repr(mod)
