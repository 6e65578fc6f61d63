"""Executable numerology of the delta-wall-crossing arguments in rank two:
wall enumeration, flip-locus rank formulas, and the restriction-weight
identity that drives the vanishing steps.

A wall is a positive rational delta_c admitting a strictly semistable
split E = L + M; the two wall equations determine delta_c from the
splitting degree d' and the induced one-weight-per-point selection a'.
Only rank 2 is enumerated (the paper's wall analysis is rank 2); the API
namespaces by rank to leave room without guessing rank-3 structure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rings import DomainError


@dataclass(frozen=True)
class WallData:
    """One solution of the wall equations: critical value and splitting."""

    delta_c: Fraction
    d_prime: int            # degree of the section line L (d' > 0)
    d_dblprime: int         # degree of the quotient line M
    a_prime: tuple          # induced weight on L at each marked point
    a_dblprime: tuple       # induced weight on M at each marked point
    level: int
    total_degree: int

    @property
    def weight_sum_prime(self) -> int:
        return sum(self.a_prime)

    @property
    def weight_sum_dblprime(self) -> int:
        return sum(self.a_dblprime)

    @property
    def marked_points(self) -> int:
        return len(self.a_prime)

    @property
    def m_comparisons(self) -> int:
        """Number of marked points with a'_p > a''_p."""
        return sum(1 for x, y in zip(self.a_prime, self.a_dblprime) if x > y)

    def check_equations(self) -> None:
        d, l = self.total_degree, self.level
        asum = self.weight_sum_prime + self.weight_sum_dblprime
        lhs1 = self.d_prime + self.delta_c + _over(self.weight_sum_prime, l)
        lhs2 = self.d_dblprime + _over(self.weight_sum_dblprime, l)
        rhs = Fraction(d + self.delta_c, 2) + _over(asum, 2 * l)
        if lhs1 != rhs or lhs2 != rhs:
            raise DomainError("wall equations violated")


def _over(num: int, den: int) -> Fraction:
    if den == 0:
        if num != 0:
            raise DomainError("parabolic weights need level l > 0")
        return Fraction(0)
    return Fraction(num, den)


def walls_rank2(d: int, l: int = 0,
                point_weights: Sequence[Sequence[int]] = ()) -> list:
    """All WallData with delta_c > 0 over splittings d' in (0, d) and
    one-weight-per-point selections a' from the given rank-2 weight pairs.

    Without parabolic data the condition reduces to (d - delta)/2 being a
    positive integer.  The list is finite and every delta_c < d + k.
    """
    pairs = [tuple(sorted(int(x) for x in pw)) for pw in point_weights]
    for pw in pairs:
        if len(pw) != 2:
            raise DomainError("rank-2 walls need one weight pair per point")
        if l <= 0:
            raise DomainError("parabolic weights need level l > 0")
        if not all(0 <= x < l for x in pw):
            raise DomainError(f"weights {pw} outside [0, {l})")
    out = []
    asum = sum(x + y for x, y in pairs)
    for d_prime in range(1, d):
        d_dbl = d - d_prime
        for picks in itertools.product(*[range(2) for _ in pairs]) \
                if pairs else [()]:
            a_prime = tuple(pairs[i][p] for i, p in enumerate(picks))
            a_dbl = tuple(pairs[i][1 - p] for i, p in enumerate(picks))
            # eq 1: d' + delta + |a'|/l = (d+delta)/2 + |a|/(2l)
            delta = (d - 2 * d_prime) \
                + _over(asum - 2 * sum(a_prime), l)
            if delta <= 0:
                continue
            wall = WallData(Fraction(delta), d_prime, d_dbl,
                            a_prime, a_dbl, l, d)
            wall.check_equations()
            out.append(wall)
    return sorted(out, key=lambda w: (w.delta_c, w.d_prime, w.a_prime))


def critical_values(walls: Sequence[WallData]) -> list:
    """Distinct delta_c values, ascending; generic delta lives in the open
    intervals between consecutive entries."""
    return sorted({w.delta_c for w in walls})


@dataclass(frozen=True)
class FlipRank:
    n_plus: int
    bound: Fraction
    inequality_holds: bool


def flip_rank(d: int, g: int, N: int, l: int, i: Fraction | None = None,
              wall: WallData | None = None) -> FlipRank:
    """Rank of the positive flip bundle and the paper's inequality verdict.

    Non-parabolic form (give i): n+ = N(d/2 + i + 1 - g) - 2i - 1 + g,
    compared against l*i.  Parabolic form (give wall): n+ =
    N(d'' + 1 - g) - (d'' - d' + 1 - g) + m_{a',a''}, compared against
    l*delta_c/2.  Both inequalities are strict when l <= N - 2.
    """
    if (i is None) == (wall is None):
        raise DomainError("give exactly one of i (non-parabolic) or wall")
    if i is not None:
        i = Fraction(i)
        n_plus = N * (Fraction(d, 2) + i + 1 - g) - 2 * i - 1 + g
        bound = l * i
    else:
        dp, dd = wall.d_prime, wall.d_dblprime
        n_plus = N * (dd + 1 - g) - (dd - dp + 1 - g) + wall.m_comparisons
        bound = Fraction(l * wall.delta_c, 2)
    if Fraction(n_plus).denominator != 1:
        raise DomainError(f"non-integral flip rank {n_plus}")
    n_plus = int(n_plus)
    return FlipRank(n_plus, bound, n_plus > bound)


def restriction_weight(l: int, side: str, i: Fraction | None = None,
                       wall: WallData | None = None, g: int = 0) -> Fraction:
    """Weight of the determinant-level line on a flip fiber: +/- l*i in the
    non-parabolic case, +/- l*delta_c/2 in the parabolic case (Minus is
    positive).  The parabolic value is obtained by executing the displayed
    arithmetic chain from e, chi(M) and the induced weight sums, and is
    asserted to equal l*delta_c/2 exactly."""
    if side not in ("Minus", "Plus"):
        raise DomainError("side must be 'Minus' or 'Plus'")
    if (i is None) == (wall is None):
        raise DomainError("give exactly one of i (non-parabolic) or wall")
    if i is not None:
        value = l * Fraction(i)
    else:
        wall.check_equations()
        d, k = wall.total_degree, wall.marked_points
        # e with the parabolic insertions determined by the weight data:
        # sum |lam_p| = 2k(l-1) - |a|, so e = (ld - 2(l-1)k + |a|)/2 + l(1-g)
        asum = wall.weight_sum_prime + wall.weight_sum_dblprime
        e = Fraction(l * d - 2 * (l - 1) * k + asum, 2) + l * (1 - g)
        chi_m = wall.d_dblprime + 1 - g
        chain = -e + l * chi_m - sum(l - 1 - ap for ap in wall.a_dblprime)
        expected = Fraction(l * wall.delta_c, 2)
        if chain != expected:
            raise DomainError(
                f"restriction chain {chain} != l*delta_c/2 = {expected}")
        value = expected
    return value if side == "Minus" else -value
