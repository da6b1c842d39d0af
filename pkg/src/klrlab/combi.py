"""Partitions, weights, box-removal sequences, Gelfand-Tsetlin patterns, and branching counts."""

from fractions import Fraction


class Partition:
    """A weakly decreasing tuple of nonnegative ints; trailing zeros are significant parts."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 0:
                raise ValueError(f"negative part {p} in {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        self.parts = parts

    @property
    def part_count(self):
        return len(self.parts)

    def size(self):
        return sum(self.parts)

    def remove_box(self, row):
        """Remove one box from the given 1-based row; the result must again be a partition."""
        if not 1 <= row <= len(self.parts):
            raise ValueError(f"row {row} out of range for {self.parts}")
        new = list(self.parts)
        new[row - 1] -= 1
        return Partition(new)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(("Partition", self.parts))

    def __lt__(self, other):
        return self.parts < other.parts

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def to_json(self):
        return list(self.parts)

    @classmethod
    def from_json(cls, data):
        return cls(data)

    def __repr__(self):
        return f"Partition{self.parts}"


class SlWeight:
    """An integral weight in the fundamental-weight basis; dominant iff all entries >= 0."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(int(e) for e in entries)

    @property
    def rank(self):
        return len(self.entries)

    def is_dominant(self):
        return all(e >= 0 for e in self.entries)

    def __eq__(self, other):
        return isinstance(other, SlWeight) and self.entries == other.entries

    def __hash__(self):
        return hash(("SlWeight", self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def to_json(self):
        return list(self.entries)

    def __repr__(self):
        return f"SlWeight{self.entries}"


class GlWeight:
    """An integer vector in the epsilon basis."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = tuple(int(e) for e in entries)

    def is_polynomial(self):
        return all(e >= 0 for e in self.entries)

    def is_dominant(self):
        return all(self.entries[i] >= self.entries[i + 1] for i in range(len(self.entries) - 1))

    def __eq__(self, other):
        return isinstance(other, GlWeight) and self.entries == other.entries

    def __hash__(self):
        return hash(("GlWeight", self.entries))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def to_json(self):
        return list(self.entries)

    def __repr__(self):
        return f"GlWeight{self.entries}"


class XiSequence:
    """A sequence of 1-based row indices, applied left to right as single box removals."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(int(r) for r in rows)
        for r in rows:
            if r < 1:
                raise ValueError(f"row index {r} must be >= 1")
        self.rows = rows

    def is_dominant(self, lam):
        """True iff every prefix image of lam is a valid partition."""
        try:
            xi_apply(self, lam)
        except ValueError:
            return False
        return True

    def __eq__(self, other):
        return isinstance(other, XiSequence) and self.rows == other.rows

    def __hash__(self):
        return hash(("XiSequence", self.rows))

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def to_json(self):
        return list(self.rows)

    @classmethod
    def from_json(cls, data):
        return cls(data)

    def __repr__(self):
        return f"XiSequence{self.rows}"


class GTPattern:
    """A triangular array of interlacing partition layers, largest on top."""

    __slots__ = ("layers",)

    def __init__(self, layers):
        layers = tuple(tuple(int(v) for v in layer) for layer in layers)
        m = len(layers)
        if m == 0:
            raise ValueError("empty pattern")
        for j, layer in enumerate(layers):
            if len(layer) != m - j:
                raise ValueError(f"layer {j} has {len(layer)} parts, expected {m - j}")
        for j in range(m - 1):
            upper, lower = layers[j], layers[j + 1]
            for i in range(len(lower)):
                if not upper[i + 1] <= lower[i] <= upper[i]:
                    raise ValueError(f"layers {upper} and {lower} do not interlace")
        self.layers = layers

    @property
    def top(self):
        return Partition(self.layers[0])

    def layer(self, j):
        """The layer with j parts (1-based from the bottom)."""
        return self.layers[len(self.layers) - j]

    def __eq__(self, other):
        return isinstance(other, GTPattern) and self.layers == other.layers

    def __hash__(self):
        return hash(("GTPattern", self.layers))

    def __lt__(self, other):
        return self.layers < other.layers

    def to_json(self):
        return [list(layer) for layer in self.layers]

    @classmethod
    def from_json(cls, data):
        return cls(data)

    def __repr__(self):
        return f"GTPattern{self.layers}"


class CartanA:
    """The type-A Cartan matrix: 2 on the diagonal, -1 between neighbours, 0 otherwise."""

    __slots__ = ("rank",)

    def __init__(self, rank):
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.rank = rank

    def entry(self, i, j):
        if not (1 <= i <= self.rank and 1 <= j <= self.rank):
            raise ValueError(f"indices ({i},{j}) out of range for rank {self.rank}")
        if i == j:
            return 2
        return -1 if abs(i - j) == 1 else 0

    def matrix(self):
        return [[self.entry(i, j) for j in range(1, self.rank + 1)] for i in range(1, self.rank + 1)]

    def __repr__(self):
        return f"CartanA({self.rank})"


def weight_of_partition(lam):
    """Successive part differences of a partition, as a weight one entry shorter."""
    if isinstance(lam, (list, tuple)):
        lam = Partition(lam)
    if lam.part_count < 2:
        raise ValueError("need at least two parts to take differences")
    return SlWeight(lam[i] - lam[i + 1] for i in range(lam.part_count - 1))


def interlacing_set(lam, boxes="all"):
    """Partitions with one fewer part squeezed between consecutive parts of lam.

    boxes='all' gives every such partition; an integer k keeps those with |lam| - |mu| = k.
    Listed in lexicographically descending order.
    """
    if isinstance(lam, (list, tuple)):
        lam = Partition(lam)
    if boxes != "all":
        boxes = int(boxes)
        if boxes < 0:
            raise ValueError("box count must be >= 0")
    out = []

    def grow(prefix, i):
        if i == lam.part_count - 1:
            mu = Partition(prefix)
            if boxes == "all" or lam.size() - mu.size() == boxes:
                out.append(mu)
            return
        hi = lam[i]
        lo = lam[i + 1]
        if prefix:
            hi = min(hi, prefix[-1])
        for v in range(hi, lo - 1, -1):
            grow(prefix + [v], i + 1)

    if lam.part_count >= 1:
        grow([], 0)
    return out


def xi_apply(xi, target):
    """Apply a removal sequence to a partition, or its weight-level counterpart to a weight.

    On a partition each entry removes one box from that row, failing loudly if any
    intermediate shape is not a partition.  On a weight with n entries, entry i bumps
    position i-1 up and position i down, and the final entry is dropped at the end.
    """
    if isinstance(xi, (list, tuple)):
        xi = XiSequence(xi)
    if isinstance(target, Partition):
        cur = target
        for r in xi:
            if r > cur.part_count:
                raise ValueError(f"row {r} exceeds part count {cur.part_count}")
            cur = cur.remove_box(r)
        return cur
    if isinstance(target, SlWeight):
        n = target.rank
        ent = list(target.entries)
        for r in xi:
            if r > n + 1:
                raise ValueError(f"row {r} exceeds rank bound {n + 1}")
            if r - 1 >= 1:
                ent[r - 2] += 1
            if r <= n:
                ent[r - 1] -= 1
        return SlWeight(ent[: n - 1])
    raise TypeError(f"cannot apply removal sequence to {type(target).__name__}")


def enumerate_dominant(lam, k):
    """Weakly increasing removal sequences of length k that stay inside the partition order
    and empty the last row, listed lexicographically descending."""
    if isinstance(lam, (list, tuple)):
        lam = Partition(lam)
    if k < 0:
        raise ValueError("sequence length must be >= 0")
    n1 = lam.part_count
    out = []

    def grow(seq, cur, minrow):
        if len(seq) == k:
            if cur[n1 - 1] == 0:
                out.append(XiSequence(seq))
            return
        for r in range(n1, minrow - 1, -1):
            if cur[r - 1] == 0:
                continue
            try:
                nxt = cur.remove_box(r)
            except ValueError:
                continue
            grow(seq + [r], nxt, r)

    grow([], lam, 1)
    return out


def enumerate_gt_patterns(lam):
    """All interlacing towers below a partition, in lexicographically descending order."""
    if isinstance(lam, (list, tuple)):
        lam = Partition(lam)
    out = []

    def grow(layers, cur):
        if cur.part_count == 1:
            out.append(GTPattern(layers))
            return
        for mu in interlacing_set(cur, "all"):
            grow(layers + [mu.parts], mu)

    grow([lam.parts], lam)
    out.sort(reverse=True)
    return out


def gt_weight(pattern):
    """Layer-size differences of a pattern, bottom layer first."""
    m = len(pattern.layers)
    sizes = [sum(pattern.layer(j)) for j in range(1, m + 1)]
    return GlWeight([sizes[0]] + [sizes[j] - sizes[j - 1] for j in range(1, m)])


def weyl_dim(lam):
    """Dimension of the irreducible with the given highest weight: prod (lam_i - lam_j + j - i)/(j - i)."""
    if isinstance(lam, (list, tuple)):
        lam = Partition(lam)
    d = Fraction(1)
    m = lam.part_count
    for i in range(m):
        for j in range(i + 1, m):
            d *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert d.denominator == 1
    return int(d)


def schur_weights(n, d, dominant_only=False):
    """Nonnegative integer vectors of length n summing to d, lexicographically descending."""
    if n < 1:
        raise ValueError("need at least one entry")
    if d < 0:
        raise ValueError("degree must be >= 0")
    out = []

    def grow(prefix, left):
        if len(prefix) == n - 1:
            last = left
            if dominant_only and prefix and last > prefix[-1]:
                return
            out.append(GlWeight(prefix + [last]))
            return
        hi = left
        if dominant_only and prefix:
            hi = min(hi, prefix[-1])
        for v in range(hi, -1, -1):
            if dominant_only:
                # remaining entries are each at most v, so v must be large enough
                if v * (n - len(prefix)) < left:
                    continue
            grow(prefix + [v], left - v)

    grow([], d)
    return out
