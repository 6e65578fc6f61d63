"""Level-l K-theoretic small I-function coefficients and the wall-crossing
coefficient mu(q), by the explicit fixed-locus product formula.

Each (degree vector, coset representative) pair contributes one
VertexTerm per Grassmannian fixed point; the term is kept in factored
form (sign, monomial prefactor, binomial lists, Schur factor), so exact
q-degrees are additive and never require expansion.  Entry values are
assembled as rational functions in q, either fully symbolically (small
cases) or after specializing the torus parameters to exact rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .grassmann import draw_parameters, fixed_points, t_ring
from .partitions import (DegreeVector, Partition, coset_reps, degree_vectors,
                         level_membership)
from .rings import DomainError, LaurentPoly, LaurentRing, RationalFunctionQ
from .schur import schur_eval

Q_RING = LaurentRing(("q",))


@dataclass
class VertexTerm:
    """One (degree vector, coset) contribution at one fixed point, factored
    exactly as printed: sign and binomial block, monomial block, level
    block over its denominator, and the Schur insertion."""

    subset: tuple
    degrees: DegreeVector
    blocks: tuple                 # ambient indices grouped by degree block
    sign: int
    prefactor: LaurentPoly        # product of all monomial factors
    num_binomials: list           # LaurentPoly factors (1 - mono * q^gap)
    den_binomials: list           # (LaurentPoly factor, power) pairs
    schur_factor: LaurentPoly     # S_lam(K_0); one() when lam is empty

    def numerator_degree(self) -> int:
        """Actual deg_q of the expanded numerator (additive over factors;
        products of nonzero terms cannot cancel leading coefficients)."""
        d = self.prefactor.degree("q")
        for b in self.num_binomials:
            d += b.degree("q")
        if not self.schur_factor.is_zero():
            d += self.schur_factor.degree("q")
        return d

    def denominator_degree(self) -> int:
        return sum(p * b.degree("q") for b, p in self.den_binomials)

    def value(self) -> RationalFunctionQ:
        """Fully symbolic value in the (t, q) ring."""
        num = self.prefactor * self.sign
        for b in self.num_binomials:
            num = num * b
        num = num * self.schur_factor
        den = self.prefactor.ring.one()
        for b, p in self.den_binomials:
            den = den * b ** p
        return RationalFunctionQ(num, den)

    def value_specialized(self, assign: Mapping[str, Fraction]) -> RationalFunctionQ:
        """Value with the torus parameters sent to exact rationals; lives
        in the univariate q ring."""
        num = self.prefactor.specialize(assign, Q_RING) * self.sign
        for b in self.num_binomials:
            num = num * b.specialize(assign, Q_RING)
        num = num * self.schur_factor.specialize(assign, Q_RING)
        den = Q_RING.one()
        for b, p in self.den_binomials:
            den = den * b.specialize(assign, Q_RING) ** p
        return RationalFunctionQ(num, den)


@dataclass
class MuFunction:
    """mu^{S_lam}_{d'}(q) restricted to each Gr(n,N) fixed point."""

    n: int
    N: int
    level: int
    dprime: int
    lam: Partition
    ring: LaurentRing
    terms: dict = field(default_factory=dict)   # subset -> [VertexTerm]

    def subsets(self):
        return sorted(self.terms)

    def entry_symbolic(self, subset) -> RationalFunctionQ:
        total = None
        for t in self.terms[subset]:
            v = t.value()
            total = v if total is None else total + v
        return total

    def entry_specialized(self, subset, assign) -> RationalFunctionQ:
        total = None
        for t in self.terms[subset]:
            v = t.value_specialized(assign)
            total = v if total is None else total + v
        return total

    def t_names(self):
        return tuple(f"t{i}" for i in range(1, self.N + 1))


def _unit_mu(n: int, N: int, l: int, lam: Partition, ring: LaurentRing) -> MuFunction:
    mu0 = MuFunction(n, N, l, 0, lam, ring)
    for S in fixed_points(n, N):
        term = VertexTerm(S, DegreeVector((0,) * n), (tuple(S),), 1,
                          ring.one(), [], [], ring.one())
        mu0.terms[S] = [term]
    return mu0


def mu(n: int, N: int, l: int, dprime: int, lam=()) -> MuFunction:
    """The wall-crossing coefficient mu_{d'}(q) with Schur insertion lam,
    per fixed point of Gr(n,N).

    Sums over weakly increasing degree vectors with total d' and over
    coset representatives assigning the fixed point's subbundle
    characters to the degree blocks.
    """
    lam = Partition(lam)
    if level_membership(lam, l) == "Outside":
        raise DomainError(f"{lam} is not in P_{l}")
    if dprime < 1:
        raise DomainError("mu needs d' >= 1 (the d'=0 coefficient is the unit)")
    ring = t_ring(N, extra=("q",))
    out = MuFunction(n, N, l, dprime, lam, ring)
    vectors = degree_vectors(dprime, n)
    for S in fixed_points(n, N):
        chars = [ring.var(f"t{i}") for i in S]
        terms = []
        for vec in vectors:
            sizes = vec.block_sizes
            values = vec.block_values
            for rep in coset_reps(n, sizes):
                roots = tuple(tuple(chars[p] for p in block) for block in rep)
                terms.append(_vertex_term(S, vec, rep, roots, values, sizes,
                                          n, N, l, lam, ring))
        out.terms[S] = terms
    return out


def _vertex_term(S, vec, rep, roots, values, sizes, n, N, l, lam, ring):
    q = ring.var("q")
    one = ring.one()
    sign = 1
    prefactor = one
    num_binomials = []
    den_binomials = []
    j1 = len(sizes)
    for a in range(j1):
        for b in range(a + 1, j1):
            gap = values[b] - values[a]
            if (sizes[a] * sizes[b] * (gap - 1)) % 2:
                sign = -sign
            for La in roots[a]:
                for Lb in roots[b]:
                    # (1 - L_b^dual L_a q^gap), then the interior monomials
                    mono = Lb.monomial_inverse() * La
                    num_binomials.append(one - mono * q ** gap)
                    if gap > 1:
                        prefactor = prefactor * mono ** (gap - 1) \
                            * q ** (gap * (gap - 1) // 2)
    for a in range(j1):
        va = values[a]
        for La in roots[a]:
            Ldual = La.monomial_inverse()
            if l:
                prefactor = prefactor * Ldual ** (l * (va + 1)) \
                    * q ** (l * va * (va + 1) // 2)
            for b in range(1, va + 1):
                den_binomials.append((one - Ldual * q ** b, N))
    if lam.trimmed():
        k0 = []
        for a in range(j1):
            for La in roots[a]:
                k0.append(La.monomial_inverse() * q ** values[a])
        schur_factor = schur_eval(lam, k0, one=one)
    else:
        schur_factor = one
    blocks = tuple(tuple(S[p] for p in block) for block in rep)
    return VertexTerm(S, vec, blocks, sign, prefactor,
                      num_binomials, den_binomials, schur_factor)


def i_function(n: int, N: int, l: int, d_max: int) -> list:
    """Small I-function coefficients for d = 0..d_max (lam empty); the
    d = 0 coefficient is the unit class."""
    if d_max < 0:
        raise DomainError("d_max must be nonnegative")
    ring = t_ring(N, extra=("q",))
    out = [_unit_mu(n, N, l, Partition(()), ring)]
    for d in range(1, d_max + 1):
        out.append(mu(n, N, l, d, ()))
    return out


def degree_bounds(vec: DegreeVector, n: int, l: int, N: int,
                  with_insertion_bound: bool = True) -> tuple:
    """(numerator_bound, denominator_bound) for a fixed degree vector:
    the printed closed forms, with the l*d' Schur headroom optional."""
    vec = DegreeVector(vec)
    sizes = vec.block_sizes
    values = vec.block_values
    j1 = len(sizes)
    num = 0
    for a in range(j1):
        for b in range(a + 1, j1):
            gap = values[b] - values[a]
            num += sizes[a] * sizes[b] * (gap + 1) * gap // 2
    for a in range(j1):
        num += sizes[a] * (values[a] + 1) * values[a] * l // 2
    if with_insertion_bound:
        num += l * vec.total
    den = 0
    for a in range(j1):
        den += sizes[a] * (values[a] + 1) * values[a] * N // 2
    return num, den


@dataclass
class LaurentReport:
    """Outcome of the regularity/vanishing check on one mu function."""

    regular_at_zero: bool
    vanishes_at_infinity: bool
    lemma_applies: bool           # N - n >= 2l
    bounds_ok: bool               # per-term actual degrees vs printed bounds
    per_entry: dict               # subset -> (regular, vanishes)

    def all_good(self) -> bool:
        return self.regular_at_zero and self.vanishes_at_infinity and self.bounds_ok


def laurent_property_check(m: MuFunction, seed: int = 2024) -> LaurentReport:
    """Evaluate regular-at-q=0 and vanishes-at-q=oo on every fixed-point
    entry (after exact specialization of the torus parameters), plus the
    per-term degree accounting against the printed bounds.

    When N - n >= 2l both predicates must hold (the regularity lemma);
    otherwise the report is informational.
    """
    bounds_ok = True
    per_entry = {}
    names = m.t_names()
    for S, terms in sorted(m.terms.items()):
        for t in terms:
            nb, db = degree_bounds(t.degrees, m.n, m.level, m.N,
                                   with_insertion_bound=bool(m.lam.trimmed()))
            if t.numerator_degree() > nb or t.denominator_degree() > db:
                bounds_ok = False
        attempt = 0
        while True:
            try:
                entry = m.entry_specialized(S, draw_parameters(names, seed, attempt))
                break
            except ZeroDivisionError:
                attempt += 1
                if attempt > 32:
                    raise
        per_entry[S] = (entry.regular_at_zero("q"), entry.vanishes_at_infinity("q"))
    regular = all(v[0] for v in per_entry.values())
    vanish = all(v[1] for v in per_entry.values())
    return LaurentReport(regular, vanish, m.N - m.n >= 2 * m.level,
                         bounds_ok, per_entry)
