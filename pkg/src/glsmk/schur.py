"""Symmetric-function kernels: Schur evaluation, Littlewood-Richardson
coefficients, and the rim-hook reduction behind the fusion product.

schur_eval uses the Jacobi-Trudi determinant in complete homogeneous
symmetric functions -- division free, so it works verbatim for repeated
monomial arguments (Chern-root specializations, possibly with q-twists)
and for plain rationals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .partitions import Partition
from .rings import DomainError


def complete_homogeneous(xs, kmax: int, one):
    """[h_0, ..., h_kmax] at the multiset xs, by geometric accumulation."""
    zero = one * 0
    h = [one] + [zero] * kmax
    for x in xs:
        for k in range(1, kmax + 1):
            h[k] = h[k] + x * h[k - 1]
    return h


def _det(matrix, zero, one):
    """Division-free determinant by expansion over permutations."""
    n = len(matrix)
    if n == 0:
        return one
    total = zero
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        prod = one
        for i, j in enumerate(perm):
            prod = prod * matrix[i][j]
        total = total + (prod if sign > 0 else -prod)
    return total


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def schur_eval(lam, xs, one=None):
    """Schur polynomial s_lam evaluated at the multiset xs.

    xs may hold Fractions or Laurent monomials; `one` is inferred from the
    first element when not given.  Returns zero when lam has a nonzero
    part beyond len(xs) (representation-theoretic vanishing).
    """
    lam = Partition(lam)
    xs = list(xs)
    if one is None:
        if xs and hasattr(xs[0], "ring"):
            one = xs[0].ring.one()
        else:
            one = Fraction(1)
    zero = one * 0
    parts = lam.trimmed()
    if len(parts) > len(xs):
        return zero
    if not parts:
        return one
    r = len(parts)
    kmax = parts[0] + r - 1
    h = complete_homogeneous(xs, kmax, one)

    def entry(i, j):
        k = parts[i] - (i + 1) + (j + 1)
        if k < 0:
            return zero
        return h[k]

    matrix = [[entry(i, j) for j in range(r)] for i in range(r)]
    return _det(matrix, zero, one)


def schur_dimension(lam, n: int) -> int:
    """dim of the GL_n Schur module, by the hook-content formula (the
    independent oracle for specializing schur_eval at n ones)."""
    lam = Partition(lam)
    parts = lam.trimmed()
    if len(parts) > n:
        return 0
    num = 1
    den = 1
    for i, li in enumerate(parts):
        for j in range(li):
            num *= n + j - i
            den *= _hook_length(parts, i, j)
    return num // den


def _hook_length(parts, i, j) -> int:
    arm = parts[i] - j - 1
    leg = sum(1 for k in range(i + 1, len(parts)) if parts[k] > j)
    return arm + leg + 1


def _add_horizontal_strip(parts: tuple, k: int):
    """Pieri: partitions obtained by adding a horizontal k-strip."""
    if k == 0:
        yield parts
        return
    n = len(parts)
    bounds = []
    for i in range(n + 1):
        upper = parts[i - 1] if i > 0 else None
        lower = parts[i] if i < n else 0
        bounds.append((lower, upper))

    def rec(i, remaining, acc):
        if i == len(bounds):
            if remaining == 0:
                yield tuple(p for p in acc if p > 0)
            return
        lower, upper = bounds[i]
        current = parts[i] if i < n else 0
        hi = remaining if upper is None else min(remaining, upper - current)
        # parts must stay weakly decreasing after additions; adding a to row i
        # requires current + a <= (previous row's new value) handled via upper
        for a in range(hi, -1, -1):
            new_val = current + a
            if acc and new_val > acc[-1]:
                continue
            yield from rec(i + 1, remaining - a, acc + [new_val])

    yield from rec(0, k, [])


@lru_cache(maxsize=None)
def _h_expand(base: tuple, hs: tuple):
    """Expansion of s_base * h_{hs[0]} * h_{hs[1]} * ... as a tuple of
    (partition, multiplicity) pairs, by iterated Pieri."""
    if not hs:
        return ((base, 1),)
    acc = {}
    for mid in _add_horizontal_strip(base, hs[0]):
        for part, mult in _h_expand(mid, hs[1:]):
            acc[part] = acc.get(part, 0) + mult
    return tuple(sorted(acc.items()))


def schur_product(lam, mu) -> dict:
    """s_lam * s_mu = sum_nu c^nu_{lam,mu} s_nu in infinitely many
    variables; Jacobi-Trudi on mu reduces to iterated Pieri products."""
    lam = Partition(lam).trimmed()
    mu = Partition(mu).trimmed()
    if len(mu) > len(lam):
        lam, mu = mu, lam
    r = len(mu)
    if r == 0:
        return {Partition(lam): 1}
    out: dict = {}
    for perm in itertools.permutations(range(r)):
        sign = _perm_sign(perm)
        hs = []
        ok = True
        for i, j in enumerate(perm):
            k = mu[i] - (i + 1) + (j + 1)
            if k < 0:
                ok = False
                break
            if k > 0:
                hs.append(k)
        if not ok:
            continue
        for part, mult in _h_expand(tuple(lam), tuple(sorted(hs, reverse=True))):
            out[Partition(part)] = out.get(Partition(part), 0) + sign * mult
    return {p: c for p, c in out.items() if c}


def lr_coeff(lam, mu, nu) -> int:
    """Littlewood-Richardson coefficient: multiplicity of s_nu in
    s_lam * s_mu (zero unless |nu| = |lam| + |mu|)."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if nu.size != lam.size + mu.size:
        return 0
    return schur_product(lam, mu).get(Partition(nu.trimmed()), 0)


@dataclass(frozen=True)
class GradedCoefficient:
    """Result of reducing a shape into the n x l box: target partition,
    q-degree (one per removed rim hook) and sign."""

    target: Partition
    degree: int
    value: int


def rim_hook_reduce(nu, n: int, l: int) -> GradedCoefficient | None:
    """Remove rim hooks of size n+l from nu until it fits the n x l box.

    Implemented on beta-numbers (first-column hook lengths): removing a
    border strip of size h is beta_i -> beta_i - h.  Each hook spanning r
    rows contributes sign (-1)^(n - r): the re-sorting permutation gives
    (-1)^(r-1), and the n-variable relation x^(n+l) = (-1)^(n-1) q on
    the Chern roots contributes (-1)^(n-1) per hook (this is the sign
    that keeps products of basis classes nonnegative, e.g.
    sigma_1 * sigma_{1,1} = +q in qH*(Gr(2,3))).  Returns None when the
    coefficient vanishes (a removal collides).
    """
    nu = Partition(nu)
    if len(nu.trimmed()) > n:
        raise DomainError(f"{nu} has more than {n} parts")
    h = n + l
    beta = [nu[i] + n - 1 - i if i < len(nu) else n - 1 - i for i in range(n)]
    sign = 1
    degree = 0
    while True:
        top = max(beta)
        if top < h:
            break
        i = beta.index(top)
        beta[i] -= h
        if beta[i] in beta[:i] or beta[i] in beta[i + 1:]:
            return None
        crossings = sum(1 for b in beta if beta[i] < b < top)
        if (crossings + n - 1) % 2:
            sign = -sign
        beta.sort(reverse=True)
        degree += 1
    parts = tuple(b - (n - 1 - i) for i, b in enumerate(beta))
    if any(p < 0 for p in parts):
        return None
    return GradedCoefficient(Partition(parts), degree, sign)


def rim_hook_reduce_bruteforce(nu, n: int, l: int):
    """Oracle: reduce by explicitly peeling border strips from the diagram
    in every possible way; returns the set of (target, degree, sign)
    outcomes (a singleton or empty when consistent)."""
    nu = tuple(Partition(nu).trimmed())
    h = n + l
    results = set()

    def strips(shape):
        # all removable border strips of size h, as resulting shapes + rows
        shape = list(shape)
        rows = len(shape)
        for start_row in range(rows):
            # walk the rim starting from the end of row start_row
            cells = []
            r, c = start_row, shape[start_row] - 1
            while len(cells) < h and r < rows and c >= 0:
                cells.append((r, c))
                below_len = shape[r + 1] if r + 1 < rows else 0
                if below_len > c:
                    r += 1
                else:
                    c -= 1
            if len(cells) != h:
                continue
            new_shape = list(shape)
            ok = True
            for rr in range(start_row, cells[-1][0] + 1):
                row_cells = [cc for (r2, cc) in cells if r2 == rr]
                if not row_cells:
                    ok = False
                    break
                if max(row_cells) != new_shape[rr] - 1:
                    ok = False
                    break
                new_shape[rr] = min(row_cells)
            if not ok:
                continue
            for rr in range(len(new_shape) - 1):
                if new_shape[rr] < new_shape[rr + 1]:
                    ok = False
            if ok:
                span = cells[-1][0] - start_row + 1
                yield tuple(p for p in new_shape if p > 0), span

    def rec(shape, degree, sign):
        fits = len(shape) <= n and (not shape or shape[0] <= l)
        if fits:
            results.add((Partition(shape + (0,) * (n - len(shape))), degree, sign))
            return
        found = False
        for new_shape, span in strips(shape):
            found = True
            rec(new_shape, degree + 1, sign * (-1) ** (n - span))
        if not found:
            results.add(None)

    rec(nu, 0, 1)
    return results
