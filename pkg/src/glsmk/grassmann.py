"""Torus-fixed-point model of K^0(Gr(n,N)) and its flag bundles.

A class is stored by its restrictions to the C(N,n) coordinate fixed
points.  Character convention (frozen by the Gr(1,2) anchors in the test
suite): coordinate line i of the ambient space carries the character t_i;
the tautological subbundle at the fixed point S restricts to
sum_{i in S} t_i; the tangent characters are t_j * t_i^{-1} for j not in
S, i in S, and the localization denominator is the K-theoretic Euler
class lambda_{-1}(T^dual) = prod (1 - t_i * t_j^{-1}).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .limits import draw_weights, equivariant_limit
from .partitions import Partition, partitions_in_box
from .rings import (ConsistencyError, DomainError, LaurentPoly, LaurentRing,
                    RationalFunctionQ)
from .schur import schur_eval


def t_ring(N: int, extra: Sequence[str] = ()) -> LaurentRing:
    return LaurentRing(tuple(f"t{i}" for i in range(1, N + 1)) + tuple(extra))


def fixed_points(n: int, N: int):
    return list(itertools.combinations(range(1, N + 1), n))


class FixedPointClass:
    """K-theory class on Gr(n,N) given by one value per n-subset of {1..N}.

    Values live in the Laurent ring on t_1..t_N (plus any extra variables
    the ring carries); arithmetic is pointwise.
    """

    def __init__(self, n: int, N: int, values: Mapping[tuple, LaurentPoly]):
        if not 1 <= n <= N:
            raise DomainError(f"need 1 <= n <= N, got ({n}, {N})")
        self.n = n
        self.N = N
        pts = fixed_points(n, N)
        if set(values) != set(pts):
            raise DomainError("values must cover every fixed point exactly")
        self.values = dict(values)

    @classmethod
    def build(cls, n: int, N: int, fn: Callable, ring: LaurentRing | None = None):
        ring = ring or t_ring(N)
        return cls(n, N, {S: fn(S, ring) for S in fixed_points(n, N)})

    def __add__(self, other):
        self._compat(other)
        return FixedPointClass(self.n, self.N,
                               {S: v + other.values[S] for S, v in self.values.items()})

    def __mul__(self, other):
        if isinstance(other, FixedPointClass):
            self._compat(other)
            return FixedPointClass(self.n, self.N,
                                   {S: v * other.values[S] for S, v in self.values.items()})
        return FixedPointClass(self.n, self.N,
                               {S: v * other for S, v in self.values.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return FixedPointClass(self.n, self.N,
                               {S: v ** k for S, v in self.values.items()})

    def _compat(self, other):
        if (self.n, self.N) != (other.n, other.N):
            raise DomainError("mixed ambient Grassmannians")

    def __eq__(self, other):
        return (isinstance(other, FixedPointClass)
                and (self.n, self.N) == (other.n, other.N)
                and self.values == other.values)


def tautological_class(n: int, N: int, kind: str,
                       ring: LaurentRing | None = None) -> FixedPointClass:
    """kind in {'Sub', 'SubDual', 'DetE'}; E = S^dual so DetE restricts to
    prod_{i in S} t_i^{-1}."""
    ring = ring or t_ring(N)

    def fn(S, ring):
        if kind == "Sub":
            out = ring.zero()
            for i in S:
                out = out + ring.var(f"t{i}")
            return out
        if kind == "SubDual":
            out = ring.zero()
            for i in S:
                out = out + ring.var(f"t{i}", -1)
            return out
        if kind == "DetE":
            out = ring.one()
            for i in S:
                out = out * ring.var(f"t{i}", -1)
            return out
        raise DomainError(f"unknown tautological kind {kind!r}")

    return FixedPointClass.build(n, N, fn, ring)


def schur_class(lam, n: int, N: int, dualize: bool = False,
                ring: LaurentRing | None = None) -> FixedPointClass:
    """S_lam(S) (or S_lam(S^dual) when dualize) restricted pointwise."""
    lam = Partition(lam)
    if len(lam.trimmed()) > n:
        raise DomainError(f"{lam} has more than {n} parts")
    ring = ring or t_ring(N)

    def fn(S, ring):
        xs = [ring.var(f"t{i}", -1 if dualize else 1) for i in S]
        return schur_eval(lam, xs, one=ring.one())

    return FixedPointClass.build(n, N, fn, ring)


def draw_parameters(names: Sequence[str], seed: int, attempt: int = 0) -> dict:
    """Deterministic generic rationals with small numerators/denominators;
    distinct, nonzero, re-drawable on pole collision via `attempt`."""
    rng = random.Random((seed, attempt, tuple(names)).__repr__())
    vals: dict = {}
    used = set()
    for name in names:
        while True:
            v = Fraction(rng.randrange(2, 400), rng.randrange(1, 40))
            if v not in used and v != 0:
                used.add(v)
                vals[name] = v
                break
    return vals


def chi(c: FixedPointClass, seed: int = 2024, draws: int = 2,
        integral: bool = True) -> Fraction:
    """Euler characteristic by fixed-point localization.

    The sum over fixed points of value(S) / prod_{i in S, j not in S}
    (1 - t_i * t_j^{-1}) is the equivariant character; chi is its value
    at t = 1, taken exactly on a generic one-parameter subgroup
    t_i = z^{w_i} (seeded integer weights, limit z -> 1 by Laurent
    series).  Checked across `draws` independent weight draws and
    asserted integral for genuine classes.
    """
    names = None
    for v in c.values.values():
        names = v.ring.names
        break
    n, N = c.n, c.N
    order = n * (N - n)
    comp = {S: [j for j in range(1, N + 1) if j not in S] for S in c.values}
    results = []
    for k in range(draws):
        w = draw_weights(names, seed + 7919 * k)
        data = []
        for S, val in c.values.items():
            exps = [w[f"t{i}"] - w[f"t{j}"] for i in S for j in comp[S]]
            zpoly: dict = {}
            for mono, coeff in val.terms.items():
                zk = sum(e * w[name] for e, name in zip(mono, val.ring.names))
                s = zpoly.get(zk, 0) + coeff
                if s:
                    zpoly[zk] = s
                else:
                    zpoly.pop(zk, None)
            data.append((zpoly, exps))
        results.append(equivariant_limit(data, order))
    if any(r != results[0] for r in results[1:]):
        raise ConsistencyError(
            f"localization depends on the weight draw: {results}")
    out = results[0]
    if integral and out.denominator != 1:
        raise ConsistencyError(f"non-integral chi {out}: conventions broken")
    return out


def chi_equivariant(c: FixedPointClass) -> LaurentPoly:
    """Symbolic localization sum; must simplify to a Laurent polynomial.
    Only sensible for small (n, N)."""
    ring = None
    for v in c.values.values():
        ring = v.ring
        break
    total = None
    for S, val in c.values.items():
        denom = ring.one()
        comp = [j for j in range(1, c.N + 1) if j not in S]
        for i in S:
            for j in comp:
                denom = denom * (ring.one() - ring.var(f"t{i}") * ring.var(f"t{j}", -1))
        term = RationalFunctionQ(val, denom)
        total = term if total is None else total + term
    poly = total.num.try_divide(total.den)
    if poly is None:
        raise ConsistencyError("equivariant chi is not a Laurent polynomial")
    return poly


@dataclass
class PairingMatrix:
    """Twisted Mukai pairing (phi_a, phi_b) = chi(phi_a phi_b (det E)^{-l})
    on the basis {S_lam} indexed by P_l."""

    basis: list
    entries: list
    n: int
    N: int
    level: int

    def inverse(self) -> list:
        return _invert_exact(self.entries)

    def dual_basis_coefficients(self) -> list:
        """Row a = coefficients expressing phi^a in the basis {phi_b}."""
        return self.inverse()


def mukai_pairing_matrix(n: int, N: int, l: int, dualize: bool = True,
                         seed: int = 2024) -> PairingMatrix:
    """Exact pairing matrix; raises on singularity (unsupported regime).

    The basis statement of the correspondence is for N = n+l; larger N is
    supported with the same index set P_l.  `dualize` selects V_lam =
    S_lam(S^dual), the convention pinned by the P^1 anchor
    [[0,1],[1,2]] for (n,N,l) = (1,2,1).
    """
    if N < n + l:
        raise DomainError(f"need N >= n+l, got N={N}, n+l={n + l}")
    basis = partitions_in_box(n, l)
    ring = t_ring(N)
    classes = [schur_class(lam, n, N, dualize=dualize, ring=ring) for lam in basis]
    twist = tautological_class(n, N, "DetE", ring) ** (-l)
    entries = []
    for a, ca in enumerate(classes):
        row = []
        for b, cb in enumerate(classes):
            if b < a:
                row.append(entries[b][a])
                continue
            val = chi(ca * cb * twist, seed=seed)
            row.append(int(val))
        entries.append(row)
    if _det_exact(entries) == 0:
        raise ConsistencyError(
            f"singular Mukai pairing for (n,N,l)=({n},{N},{l}); "
            "unsupported regime, record the instance")
    return PairingMatrix(basis, entries, n, N, l)


def _det_exact(m: list) -> Fraction:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _invert_exact(m: list) -> list:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ConsistencyError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def flag_pushforward_bwb(lam, n: int) -> LaurentPoly:
    """Pushforward of L_lam = tensor (det Q_j)^{d_j} along the flag
    fibration of a fixed n-space with formal characters x_1..x_n, by
    fixed-point localization; equals the Schur character of S_lam
    (executable Borel-Weil-Bott, higher cohomology implicit in the sum
    being a polynomial)."""
    lam = Partition(lam)
    if lam.rank != n:
        lam = Partition(tuple(lam) + (0,) * (n - len(lam)))
    ring = LaurentRing(tuple(f"x{i}" for i in range(1, n + 1)))
    values = []
    mults = []
    for p in lam:
        if values and values[-1] == p:
            mults[-1] += 1
        else:
            values.append(p)
            mults.append(1)
    # d_j = lam_{r_j} - lam_{r_{j+1}} with the last value dropping to 0
    steps = [values[i] - (values[i + 1] if i + 1 < len(values) else 0)
             for i in range(len(values))]
    total = None
    for blocks in _ordered_set_partitions(n, mults):
        value = ring.one()
        acc: list = []
        for j, block in enumerate(blocks):
            acc.extend(block)
            det_q = ring.one()
            for i in acc:
                det_q = det_q * ring.var(f"x{i + 1}")
            value = value * det_q ** steps[j]
        denom = ring.one()
        for a in range(len(blocks)):
            for b in range(a + 1, len(blocks)):
                for j in blocks[a]:
                    for i in blocks[b]:
                        denom = denom * (ring.one()
                                         - ring.var(f"x{i + 1}") * ring.var(f"x{j + 1}", -1))
        term = RationalFunctionQ(value, denom)
        total = term if total is None else total + term
    poly = total.num.try_divide(total.den)
    if poly is None:
        raise ConsistencyError("flag pushforward did not sum to a polynomial")
    return poly


def _ordered_set_partitions(n: int, sizes: Sequence[int]):
    """Ordered partitions of {0..n-1} into blocks of the given sizes."""
    def rec(remaining: tuple, rest: tuple):
        if not rest:
            yield ()
            return
        for combo in itertools.combinations(remaining, rest[0]):
            left = tuple(x for x in remaining if x not in combo)
            for tail in rec(left, rest[1:]):
                yield (combo,) + tail

    yield from rec(tuple(range(n)), tuple(sizes))
