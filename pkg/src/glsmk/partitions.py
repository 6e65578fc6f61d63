"""Partition and parabolic-type combinatorics.

Partitions keep trailing zeros explicit, so the rank n is part of the
value; complements, Schur functors and the level bounds all depend on it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .rings import DomainError


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative integers; len() is the rank."""

    def __new__(cls, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        if any(p < 0 for p in parts):
            raise DomainError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def rank(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        return sum(self)

    def trimmed(self) -> tuple:
        return tuple(p for p in self if p > 0)

    def contains(self, other: "Partition") -> bool:
        other = tuple(other) + (0,) * max(0, len(self) - len(other))
        if len(other) > len(self) and any(p > 0 for p in other[len(self):]):
            return False
        return all(a >= b for a, b in zip(self, other))

    def __repr__(self):
        return f"Partition{tuple(self)}"


def partitions_in_box(n: int, l: int) -> list:
    """All of P_l for rank n: partitions with n parts, each <= l,
    ascending (empty partition first)."""
    out = []
    for parts in itertools.combinations_with_replacement(range(l + 1), n):
        out.append(Partition(tuple(reversed(parts))))
    return sorted(set(out))


def level_membership(lam: Partition, l: int) -> str:
    """'InPlPrime' (lam_1 < l), 'InPl' (lam_1 <= l) or 'Outside'."""
    top = lam[0] if lam else 0
    if top < l:
        return "InPlPrime"
    if top <= l:
        return "InPl"
    return "Outside"


def complement(lam: Partition, l: int) -> Partition:
    """lam* = (l - lam_n, ..., l - lam_1); involution on P_l."""
    if level_membership(lam, l) == "Outside":
        raise DomainError(f"{lam} is not in P_{l}")
    return Partition(tuple(l - p for p in reversed(lam)))


@dataclass(frozen=True)
class ParabolicType:
    """Jumping data of a partition in P_l' (weights a_j = l-1-lam_{r_j})."""

    weights: tuple          # a_1 < ... < a_{l_p}, all < l
    multiplicities: tuple   # m_i, sum = n
    jump_ranks: tuple       # r_i = m_1 + ... + m_i
    steps: tuple            # d_i = a_{i+1} - a_i, with a_{l_p+1} = l - 1
    level: int
    rank: int

    @property
    def weight_sum(self) -> int:
        """|a| = sum m_i * a_i."""
        return sum(m * a for m, a in zip(self.multiplicities, self.weights))

    def check(self) -> None:
        n, l = self.rank, self.level
        assert sum(self.multiplicities) == n
        assert all(0 <= a < l for a in self.weights)
        assert all(self.weights[i] < self.weights[i + 1]
                   for i in range(len(self.weights) - 1))
        assert sum(d * r for d, r in zip(self.steps, self.jump_ranks)) \
            == n * (l - 1) - self.weight_sum


def parabolic_type_of(lam: Partition, l: int) -> ParabolicType:
    """Parabolic weights/multiplicities of lam in P_l'; the a = l case is
    rejected because the weight bound a_last < l fails there."""
    if level_membership(lam, l) != "InPlPrime":
        raise DomainError(
            f"{lam} is not in P_{l}' (lam_1 < {l} required; "
            "weight a = l breaks the GIT setup)")
    n = lam.rank
    if n == 0:
        raise DomainError("empty rank")
    values = []
    mults = []
    for p in lam:
        if values and values[-1] == p:
            mults[-1] += 1
        else:
            values.append(p)
            mults.append(1)
    ranks = tuple(itertools.accumulate(mults))
    weights = tuple(l - 1 - v for v in values)
    ext = weights + (l - 1,)
    steps = tuple(ext[i + 1] - ext[i] for i in range(len(weights)))
    pt = ParabolicType(weights, tuple(mults), ranks, steps, l, n)
    pt.check()
    return pt


def theta_exponent(n: int, l: int, g: int, d: int,
                   partitions: Sequence[Partition]) -> tuple:
    """(e, is_integral) with e = (l*d - sum|lam_p|)/n + l*(1-g).

    Non-integral e is a flagged value, not an error: the invariant twisted
    by det(E)^e is then defined to be zero downstream.
    """
    total = sum(Partition(p).size for p in partitions)
    e = Fraction(l * d - total, n) + l * (1 - g)
    return e, e.denominator == 1


def parabolic_degree_slope(d: int, n: int, weight_sums: Sequence[int], l: int,
                           has_section: bool, delta: Fraction) -> tuple:
    """(d_par, mu_par): d_par = d + sum|a_p|/l, slope with the delta term."""
    if l <= 0:
        raise DomainError("parabolic degree needs level l > 0")
    d_par = d + Fraction(sum(weight_sums), l)
    theta = 1 if has_section else 0
    mu_par = Fraction(d_par, n) + Fraction(delta, n) * theta
    return d_par, mu_par


def skyscraper_chi(a: Sequence[int], m: Sequence[int],
                   a2: Sequence[int], m2: Sequence[int],
                   strict: bool = True) -> int:
    """chi of the parabolic-vs-strongly-parabolic skyscraper at one point:
    sum of m_i*m'_j over pairs with a_i > a'_j (strict) or a_i >= a'_j."""
    if len(a) != len(m) or len(a2) != len(m2):
        raise DomainError("weights and multiplicities must align")
    total = 0
    for ai, mi in zip(a, m):
        for aj, mj in zip(a2, m2):
            if (ai > aj) if strict else (ai >= aj):
                total += mi * mj
    return total


class DegreeVector(tuple):
    """Weakly increasing nonnegative degrees (d_1 <= ... <= d_n) with the
    jumping data used by the fixed-locus sums."""

    def __new__(cls, entries: Sequence[int]):
        entries = tuple(int(x) for x in entries)
        if any(x < 0 for x in entries):
            raise DomainError("negative degree")
        if any(entries[i] > entries[i + 1] for i in range(len(entries) - 1)):
            raise DomainError("degrees must be weakly increasing")
        return super().__new__(cls, entries)

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def block_values(self) -> tuple:
        """Distinct values d_{n_a}, one per block, increasing."""
        vals = []
        for x in self:
            if not vals or vals[-1] != x:
                vals.append(x)
        return tuple(vals)

    @property
    def block_sizes(self) -> tuple:
        """r_a = n_a - n_{a-1}."""
        sizes = []
        prev = None
        for x in self:
            if sizes and prev == x:
                sizes[-1] += 1
            else:
                sizes.append(1)
            prev = x
        return tuple(sizes)

    @property
    def jump_indices(self) -> tuple:
        """n_1 < ... < n_{j+1} = n (cumulative block sizes)."""
        return tuple(itertools.accumulate(self.block_sizes))

    def gap(self, a: int, b: int) -> int:
        """d_{ba} = d_{n_b} - d_{n_a} for 1-based block indices a < b."""
        vals = self.block_values
        return vals[b - 1] - vals[a - 1]


def degree_vectors(d: int, n: int) -> list:
    """All weakly increasing nonnegative vectors of length n summing to d."""
    if d < 0 or n < 1:
        raise DomainError("need d >= 0 and n >= 1")
    out = []

    def rec(remaining, slots, minimum, acc):
        if slots == 1:
            if remaining >= minimum:
                out.append(DegreeVector(acc + [remaining]))
            return
        for x in range(minimum, remaining // slots + 1):
            rec(remaining - x, slots - 1, x, acc + [x])

    def rec2(remaining, slots, minimum, acc):
        if slots == 0:
            if remaining == 0:
                out.append(DegreeVector(acc))
            return
        for x in range(minimum, remaining + 1):
            rec2(remaining - x, slots - 1, x, acc + [x])

    rec2(d, n, 0, [])
    return out


def partition_count(d: int, max_parts: int) -> int:
    """Partitions of d into at most max_parts parts, by direct recursion
    (oracle for the degree_vectors count)."""
    if d == 0:
        return 1
    if max_parts == 0:
        return 0
    return sum(_count_exact(d, k) for k in range(0, max_parts + 1))


def _count_exact(d: int, parts: int) -> int:
    # partitions of d into exactly `parts` positive parts
    if parts == 0:
        return 1 if d == 0 else 0
    if d < parts:
        return 0
    return _count_exact(d - 1, parts - 1) + _count_exact(d - parts, parts)


def coset_reps(n: int, blocks: Sequence[int]) -> list:
    """Minimal representatives of S_n / (S_{r_1} x ... x S_{r_{j+1}}).

    Each representative is returned as a tuple of index blocks (0-based,
    sorted within each block); the flat concatenation is the
    lexicographically minimal one-line permutation of the coset.
    Deterministic lexicographic order for reproducible summation.
    """
    blocks = tuple(int(b) for b in blocks)
    if sum(blocks) != n:
        raise DomainError(f"block sizes {blocks} do not sum to {n}")
    out = []

    def rec(remaining: tuple, rest: tuple, acc: tuple):
        if not rest:
            out.append(acc)
            return
        for combo in itertools.combinations(remaining, rest[0]):
            left = tuple(x for x in remaining if x not in combo)
            rec(left, rest[1:], acc + (combo,))

    rec(tuple(range(n)), blocks, ())
    return sorted(out, key=lambda b: sum(b, ()))
