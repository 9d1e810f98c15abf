"""Exact combinatorics of non-crossing partitions.

The lattice NC(n) of non-crossing partitions of {1..n}, pairings, the
Kreweras complement, the Mobius function of NC(n), and the embedding of
NC(n) into the symmetric group as permutations on a geodesic between the
identity and the full cycle (1 2 ... n).

Everything here is exact integer combinatorics; all values are immutable
and every function is pure, so concurrent use needs no coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

CATALAN_MAX = 30       # C_30 = 3814986502092304 still fits a 64-bit int exactly
ENUMERATION_MAX = 14   # C_14 ~ 2.7e6 partitions
PAIRING_MAX = 16       # 15!! = 2027025 pairings


def catalan(k: int) -> int:
    """k-th Catalan number C_k = binom(2k, k) / (k + 1), exact.

    Satisfies the recursion C_n = sum_{j<n} C_{n-1-j} C_j.  Guarded at
    k <= 30 so every value stays inside exact 64-bit integer range.
    """
    if k < 0:
        raise ValueError("catalan: k must be nonnegative")
    if k > CATALAN_MAX:
        raise ValueError(f"catalan: k={k} outside exact range k <= {CATALAN_MAX}")
    return math.comb(2 * k, k) // (k + 1)


def double_factorial(k: int) -> int:
    """k!! for odd k >= -1; counts pairings of k+1 points."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


@dataclass(frozen=True, order=True)
class SetPartition:
    """Partition of {1..n} into disjoint blocks.

    Blocks are stored canonically: elements increasing inside each block,
    blocks sorted by their minimum.  Equality is therefore structural.
    """

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"blocks do not partition 1..{self.n}: {blocks}")

    @classmethod
    def _from_canonical(cls, n: int, blocks) -> "SetPartition":
        # fast path for internal enumeration; caller guarantees validity
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", blocks)
        return self

    @classmethod
    def discrete(cls, n: int) -> "SetPartition":
        """0_n, the partition into singletons."""
        return cls._from_canonical(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def full(cls, n: int) -> "SetPartition":
        """1_n, the one-block partition."""
        return cls._from_canonical(n, (tuple(range(1, n + 1)),))

    @classmethod
    def from_string(cls, text: str) -> "SetPartition":
        """Parse canonical block notation, e.g. "{1,4}{2,3}"."""
        text = text.strip()
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"bad partition string: {text!r}")
        blocks = []
        for part in text[1:-1].split("}{"):
            blocks.append(tuple(int(tok) for tok in part.split(",") if tok))
        n = max(x for b in blocks for x in b)
        return cls(n, tuple(blocks))

    def __str__(self):
        return "".join("{" + ",".join(str(x) for x in b) + "}" for b in self.blocks)

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def block_index(self) -> dict[int, int]:
        """Map element -> index of its block in the canonical order."""
        return {x: i for i, b in enumerate(self.blocks) for x in b}


def is_noncrossing(p: SetPartition) -> bool:
    """True iff no quadruple i<j<k<l has i,k in one block and j,l in another.

    Linear scan: blocks of a non-crossing partition open and close like
    balanced parentheses.
    """
    idx = p.block_index()
    first = {}
    last = {}
    for x in range(1, p.n + 1):
        b = idx[x]
        first.setdefault(b, x)
        last[b] = x
    stack = []
    for x in range(1, p.n + 1):
        b = idx[x]
        if first[b] == x:
            stack.append(b)
        elif not stack or stack[-1] != b:
            return False
        if last[b] == x:
            if stack[-1] != b:
                return False
            stack.pop()
    return True


def _gen_nc(labels: tuple[int, ...]):
    """Yield tuples of blocks forming non-crossing partitions of `labels`.

    Recursion on the block containing the smallest label: the remaining
    labels split into independent gaps between consecutive block members.
    """
    if not labels:
        yield ()
        return
    first, rest = labels[0], labels[1:]
    m = len(rest)
    for k in range(m + 1):
        for pos in combinations(range(m), k):
            block = (first,) + tuple(rest[i] for i in pos)
            # every other block must sit inside one gap between block members
            starts = [0] + [p + 1 for p in pos]
            ends = list(pos) + [m]
            gaps = [rest[lo:hi] for lo, hi in zip(starts, ends)]

            def expand(gap_list):
                if not gap_list:
                    yield ()
                    return
                head, tail = gap_list[0], gap_list[1:]
                for sub in _gen_nc(head):
                    for others in expand(tail):
                        yield sub + others

            for inner in expand(gaps):
                yield (block,) + inner


def enumerate_nc(n: int) -> list[SetPartition]:
    """All of NC(n) in canonical order; |NC(n)| = C_n."""
    if not 1 <= n <= ENUMERATION_MAX:
        raise ValueError(f"enumerate_nc: need 1 <= n <= {ENUMERATION_MAX}")
    labels = tuple(range(1, n + 1))
    parts = []
    for blocks in _gen_nc(labels):
        canonical = tuple(sorted(blocks))
        parts.append(SetPartition._from_canonical(n, canonical))
    parts.sort()
    return parts


def _gen_nc_pairings(labels: tuple[int, ...]):
    if not labels:
        yield ()
        return
    first = labels[0]
    for j in range(1, len(labels), 2):
        partner = labels[j]
        inside, outside = labels[1:j], labels[j + 1:]
        for left in _gen_nc_pairings(inside):
            for right in _gen_nc_pairings(outside):
                yield ((first, partner),) + left + right


def enumerate_nc_pairings(n: int) -> list[SetPartition]:
    """Non-crossing pairings of {1..n}; empty for odd n, C_{n/2} for even."""
    if n < 1:
        raise ValueError("enumerate_nc_pairings: n >= 1 required")
    if n % 2 == 1:
        return []
    labels = tuple(range(1, n + 1))
    parts = [SetPartition._from_canonical(n, tuple(sorted(bs)))
             for bs in _gen_nc_pairings(labels)]
    parts.sort()
    return parts


def _gen_all_pairings(labels: tuple[int, ...]):
    if not labels:
        yield ()
        return
    first = labels[0]
    for j in range(1, len(labels)):
        partner = labels[j]
        rest = labels[1:j] + labels[j + 1:]
        for sub in _gen_all_pairings(rest):
            yield ((first, partner),) + sub


def enumerate_all_pairings(n: int) -> list[SetPartition]:
    """All (n-1)!! pairings of {1..n}; odd n gives the empty list."""
    if n > PAIRING_MAX:
        raise ValueError(f"enumerate_all_pairings: n <= {PAIRING_MAX} required")
    if n % 2 == 1:
        return []
    labels = tuple(range(1, n + 1))
    parts = [SetPartition._from_canonical(n, tuple(sorted(bs)))
             for bs in _gen_all_pairings(labels)]
    parts.sort()
    return parts


def refines(a: SetPartition, b: SetPartition) -> bool:
    """True iff every block of `a` is contained in some block of `b`."""
    if a.n != b.n:
        raise ValueError("refines: partitions live on different ground sets")
    containing = b.block_index()
    for block in a.blocks:
        target = containing[block[0]]
        if any(containing[x] != target for x in block[1:]):
            return False
    return True


def meet(a: SetPartition, b: SetPartition) -> SetPartition:
    """Greatest lower bound: the common refinement (non-crossing whenever
    both inputs are)."""
    if a.n != b.n:
        raise ValueError("meet: partitions live on different ground sets")
    ib = b.block_index()
    pieces = {}
    for i, block in enumerate(a.blocks):
        for x in block:
            pieces.setdefault((i, ib[x]), []).append(x)
    return SetPartition(a.n, tuple(tuple(p) for p in pieces.values()))


def _merge_blocks(blocks: list[set]) -> list[set]:
    # transitive closure of the overlap relation
    merged = True
    while merged:
        merged = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if blocks[i] & blocks[j]:
                    blocks[i] |= blocks.pop(j)
                    merged = True
                    break
            if merged:
                break
    return blocks


def _blocks_cross(x: tuple, y: tuple) -> bool:
    sx, sy = set(x), set(y)
    seq = sorted(sx | sy)
    pattern = ["x" if v in sx else "y" for v in seq]
    # crossing iff the letters interleave x..y..x..y or y..x..y..x
    compressed = [pattern[0]]
    for c in pattern[1:]:
        if c != compressed[-1]:
            compressed.append(c)
    return len(compressed) >= 4


def join(a: SetPartition, b: SetPartition) -> SetPartition:
    """Least upper bound in NC(n).

    Overlap closure of the two block families (the join in the full
    partition lattice) followed by repeated merging of crossing block
    pairs.  Any non-crossing upper bound must contain each merge, so the
    result is the least one.
    """
    if a.n != b.n:
        raise ValueError("join: partitions live on different ground sets")
    blocks = _merge_blocks([set(x) for x in a.blocks + b.blocks])
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                if _blocks_cross(tuple(blocks[i]), tuple(blocks[j])):
                    blocks[i] |= blocks.pop(j)
                    changed = True
                    break
            if changed:
                break
    return SetPartition(a.n, tuple(tuple(sorted(s)) for s in blocks))


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n}, stored as the image tuple (1-based)."""

    n: int
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, self.n + 1)):
            raise ValueError(f"not a permutation of 1..{self.n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def full_cycle(cls, n: int) -> "Permutation":
        """The cycle (1 2 ... n)."""
        return cls(n, tuple(range(2, n + 1)) + (1,))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x - 1] = cyc[(i + 1) % len(cyc)]
        return cls(n, tuple(images))

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition (self * other)(x) = self(other(x))."""
        if self.n != other.n:
            raise ValueError("composition requires equal degree")
        return Permutation(self.n, tuple(self.images[o - 1] for o in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(self.n, tuple(inv))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each starting at its smallest element, sorted."""
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            nxt = self(start)
            while nxt != start:
                cyc.append(nxt)
                seen[nxt - 1] = True
                nxt = self(nxt)
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_count(self) -> int:
        return len(self.cycles())

    def length(self) -> int:
        """Minimal number of transpositions: n - #cycles."""
        return self.n - self.cycle_count()

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths, weakly decreasing (a partition of n)."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def cycle_string(self) -> str:
        """Cycle notation, e.g. "(1 3)(2)"."""
        return "".join("(" + " ".join(str(x) for x in c) + ")" for c in self.cycles())


@dataclass(frozen=True)
class IntegerPartitionClass:
    """Conjugacy class of a permutation of q letters: parts sum to q."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        object.__setattr__(self, "parts", parts)
        if any(p < 1 for p in parts):
            raise ValueError("parts must be positive")

    @property
    def q(self) -> int:
        return sum(self.parts)

    @property
    def cycle_count(self) -> int:
        return len(self.parts)


def multiply(sigma: Permutation, rho: Permutation) -> Permutation:
    return sigma * rho


def inverse(sigma: Permutation) -> Permutation:
    return sigma.inverse()


def cycles(sigma: Permutation):
    return sigma.cycles()


def length(sigma: Permutation) -> int:
    return sigma.length()


def pairing_to_permutation(p: SetPartition) -> Permutation:
    """Product of disjoint transpositions matching a pairing."""
    if any(len(b) != 2 for b in p.blocks):
        raise ValueError("pairing_to_permutation: all blocks must have size 2")
    images = list(range(1, p.n + 1))
    for x, y in p.blocks:
        images[x - 1], images[y - 1] = y, x
    return Permutation(p.n, tuple(images))


def genus_cycle_count(p: SetPartition, n: int) -> int:
    """#(pi*gamma) for a pairing pi of {1..n} and gamma = (1 2 ... n).

    Equals m+1 exactly when the pairing of 2m points is non-crossing;
    the genus of the associated gluing is g = (1 + m - #(pi*gamma))/2.
    """
    if p.n != n:
        raise ValueError("genus_cycle_count: pairing size mismatch")
    pi = pairing_to_permutation(p)
    gamma = Permutation.full_cycle(n)
    return (pi * gamma).cycle_count()


def pairing_genus(p: SetPartition) -> int:
    """Genus of the polygon gluing induced by a pairing of {1..2m}."""
    m2 = p.n
    if m2 % 2:
        raise ValueError("pairing_genus: even ground set required")
    twice_g = 1 + m2 // 2 - genus_cycle_count(p, m2)
    if twice_g % 2:
        raise ValueError(f"odd 2g = {twice_g}; not a pairing?")
    return twice_g // 2


def nc_to_geodesic_perm(p: SetPartition) -> Permutation:
    """Permutation whose cycles are the blocks of `p`, each traversed in
    increasing order.  Bijects NC(n) onto the geodesic permutations."""
    if not is_noncrossing(p):
        raise ValueError("nc_to_geodesic_perm: input has a crossing")
    return Permutation.from_cycles(p.n, p.blocks)


def geodesic_test(sigma: Permutation, n: int) -> bool:
    """True iff sigma lies on a geodesic from the identity to (1 2 ... n),
    i.e. |sigma| + |sigma^{-1} tau| = n - 1."""
    if sigma.n != n:
        raise ValueError("geodesic_test: size mismatch")
    tau = Permutation.full_cycle(n)
    return sigma.length() + (sigma.inverse() * tau).length() == n - 1


def kreweras(p: SetPartition) -> SetPartition:
    """Kreweras complement, relabeled back to {1..n}.

    Computed through the geodesic picture: if sigma is the geodesic
    permutation of p and tau = (1 2 ... n), the complement is the cycle
    partition of sigma^{-1} tau.  Anti-isomorphism of NC(n); applying it
    twice is a cyclic shift of the argument.
    """
    sigma = nc_to_geodesic_perm(p)
    tau = Permutation.full_cycle(p.n)
    comp = sigma.inverse() * tau
    return SetPartition(p.n, comp.cycles())


def _mobius_full(p: SetPartition) -> int:
    """mu(p, 1_n) via the Kreweras factorization: the interval [p, 1_n]
    factors over the blocks of K(p), each full interval contributing
    (-1)^{k-1} C_{k-1}."""
    out = 1
    for block in kreweras(p).blocks:
        k = len(block)
        out *= (-1) ** (k - 1) * catalan(k - 1)
    return out


def mobius_nc(a: SetPartition, b: SetPartition) -> int:
    """Mobius function mu(a, b) of the lattice NC(n), for a <= b.

    Multiplicative over the blocks of b: the interval [a, b] is a product
    of intervals [a|_B, 1_{|B|}].
    """
    if not (is_noncrossing(a) and is_noncrossing(b)):
        raise ValueError("mobius_nc: arguments must be non-crossing")
    if not refines(a, b):
        raise ValueError("mobius_nc: need a <= b in the refinement order")
    ia = a.block_index()
    out = 1
    for block in b.blocks:
        rank = {x: i + 1 for i, x in enumerate(block)}
        sub_blocks = {}
        for x in block:
            sub_blocks.setdefault(ia[x], []).append(rank[x])
        restricted = SetPartition(len(block), tuple(tuple(v) for v in sub_blocks.values()))
        out *= _mobius_full(restricted)
    return out


@lru_cache(maxsize=None)
def nc_profile(n: int):
    """Cached per-partition data for NC(n): (block sizes, Kreweras block
    sizes, mu(pi, 1_n)) triples, in canonical partition order."""
    out = []
    for p in enumerate_nc(n):
        ks = kreweras(p).block_sizes()
        mu = 1
        for k in ks:
            mu *= (-1) ** (k - 1) * catalan(k - 1)
        out.append((p.block_sizes(), ks, mu))
    return tuple(out)
