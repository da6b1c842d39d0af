"""Highest weight modules for the quantum group of type A, with exact contravariant forms."""

from .combi import CartanA, Partition, interlacing_set, weight_of_partition, weyl_dim
from .qint import LaurentFrac, LaurentPoly, matrix_rank, quantum_integer, solve_linear

__all__ = [
    "HighestWeightModule",
    "ShapovalovGram",
    "gram_entry",
    "shapovalov_gram",
    "build_irreducible",
    "exhaustion_depth",
    "verify_relations",
    "branching_character_check",
    "monomial_weight",
    "weight_words",
]

_gram_memo = {}


def monomial_weight(hw, word):
    """Weight of F_word applied to the highest weight vector, in fundamental coordinates."""
    rank = len(hw)
    cartan = CartanA(rank)
    wt = list(hw)
    for i in word:
        for j in range(1, rank + 1):
            wt[j - 1] -= cartan.entry(j, i)
    return tuple(wt)


def gram_entry(hw, u, w):
    """Contravariant pairing of the monomial vectors F_u v and F_w v, normalized to <v,v> = 1."""
    hw = tuple(hw)
    u = tuple(u)
    w = tuple(w)
    if len(u) != len(w) or sorted(u) != sorted(w):
        return LaurentPoly.zero()
    if not u:
        return LaurentPoly.one()
    key = (hw, u, w)
    cached = _gram_memo.get(key)
    if cached is not None:
        return cached
    head, i = u[:-1], u[-1]
    shift = monomial_weight(hw, head)[i - 1] - 1
    total = LaurentPoly.zero()
    for t in range(len(w)):
        if w[t] != i:
            continue
        coeff = quantum_integer(monomial_weight(hw, w[:t])[i - 1])
        total = total + coeff * gram_entry(hw, head, w[:t] + w[t + 1 :])
    total = total.shift(shift)
    _gram_memo[key] = total
    return total


def weight_words(beta):
    """All monomial words with the given simple root content, lexicographically sorted."""
    beta = tuple(int(b) for b in beta)
    letters = []
    for i, b in enumerate(beta, 1):
        if b < 0:
            raise ValueError("negative root multiplicity")
        letters.extend([i] * b)
    out = set()

    def grow(prefix, remaining):
        if not remaining:
            out.add(tuple(prefix))
            return
        for x in sorted(set(remaining)):
            rest = list(remaining)
            rest.remove(x)
            grow(prefix + [x], rest)

    grow([], letters)
    return sorted(out)


class ShapovalovGram:
    """The contravariant pairing matrix on the monomial spanning set of one root content."""

    __slots__ = ("hw", "beta", "labels", "entries")

    def __init__(self, hw, beta, labels, entries):
        self.hw = tuple(hw)
        self.beta = tuple(beta)
        self.labels = tuple(labels)
        self.entries = tuple(tuple(row) for row in entries)

    def rank(self):
        return matrix_rank([list(row) for row in self.entries])

    def is_symmetric(self):
        n = len(self.labels)
        return all(
            self.entries[r][c] == self.entries[c][r] for r in range(n) for c in range(r + 1, n)
        )

    def to_json(self):
        return {
            "lambda": list(self.hw),
            "beta": list(self.beta),
            "labels": [list(w) for w in self.labels],
            "entries": [
                [{"num": e.to_pairs(), "den": [[0, 1]]} for e in row] for row in self.entries
            ],
        }

    @classmethod
    def from_json(cls, data):
        entries = [
            [
                LaurentFrac(
                    LaurentPoly.from_pairs(e["num"]), LaurentPoly.from_pairs(e["den"])
                ).as_poly()
                for e in row
            ]
            for row in data["entries"]
        ]
        return cls(
            data["lambda"], data["beta"], [tuple(w) for w in data["labels"]], entries
        )

    def __repr__(self):
        return f"ShapovalovGram(hw={self.hw}, beta={self.beta}, size={len(self.labels)})"


def shapovalov_gram(hw, beta):
    """Pairing matrix of all F-monomials with root content beta, rows and columns alike."""
    hw = tuple(int(x) for x in hw)
    labels = weight_words(beta)
    entries = [[gram_entry(hw, u, w) for w in labels] for u in labels]
    return ShapovalovGram(hw, tuple(beta), labels, entries)


def exhaustion_depth(hw):
    """Height of the weight drop from highest to lowest weight: the last nonzero layer."""
    m = len(hw) + 1
    lam = []
    acc = 0
    for x in reversed(hw):
        acc += x
        lam.append(acc)
    lam = list(reversed(lam)) + [0]
    total = 0
    for j in range(1, m):
        for t in range(1, j + 1):
            total += lam[t - 1] - lam[m - t]
    return total


class HighestWeightModule:
    """An irreducible highest weight module with basis tagged by F-monomial words."""

    def __init__(self, rank, hw, depth, basis, weights, e_mats, f_mats, grams):
        self.rank = rank
        self.hw = tuple(hw)
        self.depth = depth
        self.basis = tuple(basis)
        self.weights = tuple(weights)
        self.e_mats = e_mats
        self.f_mats = f_mats
        self.grams = grams
        spaces = {}
        for idx, wt in enumerate(self.weights):
            spaces.setdefault(wt, []).append(idx)
        self.weight_spaces = spaces

    def dim(self):
        return len(self.basis)

    def k_matrix(self, i):
        d = self.dim()
        zero = LaurentFrac.zero()
        m = [[zero] * d for _ in range(d)]
        for r in range(d):
            m[r][r] = LaurentFrac(LaurentPoly.q_power(self.weights[r][i - 1]))
        return m

    def k_inverse_matrix(self, i):
        d = self.dim()
        zero = LaurentFrac.zero()
        m = [[zero] * d for _ in range(d)]
        for r in range(d):
            m[r][r] = LaurentFrac(LaurentPoly.q_power(-self.weights[r][i - 1]))
        return m

    def weight_multiset(self):
        out = {}
        for wt in self.weights:
            out[wt] = out.get(wt, 0) + 1
        return out

    def __repr__(self):
        return f"HighestWeightModule(hw={self.hw}, dim={self.dim()})"


def _coords_in_basis(hw, word, basis_idx, basis, grams_by_weight):
    """Coordinates of a monomial image in the chosen basis of its weight space."""
    wt = monomial_weight(hw, word)
    idxs = basis_idx.get(wt)
    if not idxs:
        return {}
    gram = grams_by_weight[wt]
    rhs = [gram_entry(hw, basis[j], word) for j in idxs]
    sol = solve_linear(gram, rhs)
    return {idxs[r]: sol[r] for r in range(len(idxs)) if not sol[r].is_zero()}


def build_irreducible(hw, depth=None):
    """Span F-monomials layer by layer, keep a pivot basis of the nondegenerate quotient,
    and assemble the E, F and K actions as exact matrices."""
    hw = tuple(int(x) for x in hw)
    if any(x < 0 for x in hw):
        raise ValueError("highest weight must be dominant")
    rank = len(hw)
    if rank < 1:
        raise ValueError("need at least one node")
    if depth is None:
        depth = exhaustion_depth(hw)
    basis = [()]
    layers = [[()]]
    for level in range(1, depth + 1):
        cands = {}
        for u in layers[-1]:
            for i in range(1, rank + 1):
                w = u + (i,)
                cands.setdefault(monomial_weight(hw, w), set()).add(w)
        newlayer = []
        for wt in sorted(cands):
            kept = []
            for w in sorted(cands[wt]):
                rows = kept + [w]
                gram = [[gram_entry(hw, a, b) for b in rows] for a in rows]
                if matrix_rank(gram) == len(rows):
                    kept.append(w)
            newlayer.extend(kept)
        if not newlayer:
            break
        layers.append(newlayer)
        basis.extend(newlayer)
    weights = [monomial_weight(hw, w) for w in basis]
    basis_idx = {}
    for idx, wt in enumerate(weights):
        basis_idx.setdefault(wt, []).append(idx)
    grams_by_weight = {
        wt: [[gram_entry(hw, basis[a], basis[b]) for b in idxs] for a in idxs]
        for wt, idxs in basis_idx.items()
    }
    dim = len(basis)
    zero = LaurentFrac.zero()
    e_mats = {i: [[zero] * dim for _ in range(dim)] for i in range(1, rank + 1)}
    f_mats = {i: [[zero] * dim for _ in range(dim)] for i in range(1, rank + 1)}
    coord_memo = {}

    def coords(word):
        if word not in coord_memo:
            coord_memo[word] = _coords_in_basis(hw, word, basis_idx, basis, grams_by_weight)
        return coord_memo[word]

    for col, u in enumerate(basis):
        for i in range(1, rank + 1):
            for row, val in coords(u + (i,)).items():
                f_mats[i][row][col] = val
            acc = {}
            for t in range(len(u)):
                if u[t] != i:
                    continue
                c = quantum_integer(monomial_weight(hw, u[:t])[i - 1])
                if c.is_zero():
                    continue
                for row, val in coords(u[:t] + u[t + 1 :]).items():
                    prev = acc.get(row, LaurentFrac.zero())
                    acc[row] = prev + val * c
            for row, val in acc.items():
                if not val.is_zero():
                    e_mats[i][row][col] = val
    return HighestWeightModule(rank, hw, depth, basis, weights, e_mats, f_mats, grams_by_weight)


def _matmul(a, b):
    n = len(a)
    zero = LaurentFrac.zero()
    out = [[zero] * n for _ in range(n)]
    for r in range(n):
        arow = a[r]
        orow = out[r]
        for k in range(n):
            v = arow[k]
            if v.is_zero():
                continue
            brow = b[k]
            for c in range(n):
                if brow[c].is_zero():
                    continue
                orow[c] = orow[c] + v * brow[c]
    return out


def _matscale(a, poly):
    return [[v * poly for v in row] for row in a]


def _matsub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_is_zero(a):
    return all(v.is_zero() for row in a for v in row)


def _mat_eq(a, b):
    return _mat_is_zero(_matsub(a, b))


def verify_relations(module):
    """Check the defining relations on the module's matrices; False on any failure."""
    rank = module.rank
    dim = module.dim()
    cartan = CartanA(rank)
    zero = LaurentFrac.zero()
    ident = [[zero] * dim for _ in range(dim)]
    for r in range(dim):
        ident[r][r] = LaurentFrac.one()
    for i in range(1, rank + 1):
        k = module.k_matrix(i)
        kinv = module.k_inverse_matrix(i)
        if not _mat_eq(_matmul(k, kinv), ident):
            return False
        for j in range(1, rank + 1):
            e = module.e_mats[j]
            f = module.f_mats[j]
            a = cartan.entry(i, j)
            if not _mat_eq(_matmul(_matmul(k, e), kinv), _matscale(e, LaurentPoly.q_power(a))):
                return False
            if not _mat_eq(_matmul(_matmul(k, f), kinv), _matscale(f, LaurentPoly.q_power(-a))):
                return False
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            comm = _matsub(
                _matmul(module.e_mats[i], module.f_mats[j]),
                _matmul(module.f_mats[j], module.e_mats[i]),
            )
            if i != j:
                if not _mat_is_zero(comm):
                    return False
                continue
            want = [[zero] * dim for _ in range(dim)]
            for r in range(dim):
                want[r][r] = LaurentFrac(quantum_integer(module.weights[r][i - 1]))
            if not _mat_eq(comm, want):
                return False
    two = quantum_integer(2)
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            if i == j:
                continue
            for mats in (module.e_mats, module.f_mats):
                x, y = mats[i], mats[j]
                if abs(i - j) >= 2:
                    if not _mat_eq(_matmul(x, y), _matmul(y, x)):
                        return False
                    continue
                serre = _matsub(
                    _matmul(_matmul(x, x), y),
                    _matscale(_matmul(_matmul(x, y), x), two),
                )
                serre = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(serre, _matmul(y, _matmul(x, x)))]
                if not _mat_is_zero(serre):
                    return False
    return True


def branching_character_check(lam):
    """Compare the restricted weight multiset of one module against the interlacing family.

    Returns a report dict with the total dimension on the left and the list of summand
    dimensions on the right, in enumeration order.
    """
    if isinstance(lam, (list, tuple)):
        lam = Partition(lam)
    if lam.part_count < 2:
        raise ValueError("need at least two parts")
    hw = weight_of_partition(lam).entries
    big = build_irreducible(hw)
    restricted = {}
    for wt, count in big.weight_multiset().items():
        short = wt[:-1]
        restricted[short] = restricted.get(short, 0) + count
    rhs_dims = []
    total = {}
    for mu in interlacing_set(lam, "all"):
        if mu.part_count >= 2:
            small_hw = weight_of_partition(mu).entries
        else:
            small_hw = ()
        if small_hw == ():
            # rank-zero restriction: a single trivial weight
            rhs_dims.append(1)
            total[()] = total.get((), 0) + 1
            continue
        small = build_irreducible(small_hw)
        rhs_dims.append(small.dim())
        for wt, count in small.weight_multiset().items():
            total[wt] = total.get(wt, 0) + count
    ok = restricted == total and big.dim() == sum(rhs_dims)
    return {"ok": ok, "lhs": big.dim(), "rhs": rhs_dims}
