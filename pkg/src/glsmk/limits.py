"""Exact evaluation of K-theoretic localization sums at the
non-equivariant point.

A localization sum  sum_p  value_p(t) / prod_c (1 - t^{-c})  is the
equivariant character, a Laurent polynomial in the torus parameters; the
plain Euler characteristic is its value at t = 1, where every individual
denominator vanishes.  We restrict to a generic one-parameter subgroup
t = z^w (seeded random integer weights) and take the exact limit z -> 1:
with u = z - 1, each factor (1 - z^c) is (1 - z) times a unit, so every
point contributes (-1)^M u^{-M} N_p(1+u)/E_p(1+u) with M the common
tangent dimension.  The orders u^{-M}..u^{-1} of the total must cancel
(checked), and the limit is (-1)^M times the u^M coefficient of the sum
of the unit-series quotients.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping, Sequence

from .rings import ConsistencyError, DomainError

ZERO = Fraction(0)


def binomial_series(k: int, order: int) -> list:
    """(1+u)^k truncated; k may be negative (generalized binomial)."""
    out = [Fraction(1)]
    for j in range(1, order + 1):
        out.append(out[-1] * Fraction(k - j + 1, j))
    return out


def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], order: int) -> list:
    out = [ZERO] * (order + 1)
    for i, ai in enumerate(a):
        if i > order or not ai:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def series_div(num: Sequence[Fraction], den: Sequence[Fraction], order: int) -> list:
    if not den or den[0] == 0:
        raise ZeroDivisionError("series division by non-unit")
    inv0 = 1 / den[0]
    out = []
    for j in range(order + 1):
        acc = num[j] if j < len(num) else ZERO
        for i in range(1, j + 1):
            if i < len(den) and den[i]:
                acc -= den[i] * out[j - i]
        out.append(acc * inv0)
    return out


def zpoly_shift_series(zpoly: Mapping[int, Fraction], order: int) -> list:
    """Taylor series at z=1 of a sparse Laurent polynomial sum c_k z^k:
    coefficient of u^j is sum c_k C(k, j)."""
    out = [ZERO] * (order + 1)
    for k, c in zpoly.items():
        if not c:
            continue
        binom = Fraction(1)
        out[0] += c
        for j in range(1, order + 1):
            binom *= Fraction(k - j + 1, j)
            if binom == 0:
                break
            out[j] += c * binom
    return out


def unit_factor_series(c: int, order: int) -> list:
    """Series at z=1 of (1 - z^c)/(1 - z), an invertible unit for c != 0.

    c > 0: h_c(z) = 1 + z + ... + z^{c-1}, coefficient of u^j = C(c, j+1).
    c < 0: -z^c h_{-c}(z).
    """
    if c == 0:
        raise DomainError("unit factor needs a nonzero exponent")
    e = abs(c)
    h = [ZERO] * (order + 1)
    binom = Fraction(e)
    h[0] = binom
    for j in range(1, order + 1):
        binom *= Fraction(e - j, j + 1)
        h[j] = binom
    # h[j] = C(e, j+1)
    if c > 0:
        return h
    neg = series_mul(binomial_series(c, order), h, order)
    return [-x for x in neg]


def denominator_unit_series(exponents: Sequence[int], order: int) -> list:
    """Unit-part series of prod (1 - z^c): the product of the individual
    units; the (1-z)^M factor is accounted for by the caller."""
    out = [Fraction(1)] + [ZERO] * order
    for c in exponents:
        out = series_mul(out, unit_factor_series(c, order), order)
    return out


def equivariant_limit(points: Sequence[tuple], order: int,
                      unit_series: Sequence[list] | None = None) -> Fraction:
    """lim_{z->1} of sum over (zpoly, exponents) of
    zpoly(z) / prod(1 - z^c); `order` is the common number M of
    denominator factors per point.

    The total series must vanish below u^M (raises ConsistencyError
    otherwise); precomputed denominator unit series may be passed to
    amortize sweeps sharing the same fixed-point data.
    """
    total = [ZERO] * (order + 1)
    for idx, (zpoly, exponents) in enumerate(points):
        if len(exponents) != order:
            raise ConsistencyError(
                f"point {idx}: {len(exponents)} denominator factors, expected {order}")
        num = zpoly_shift_series(zpoly, order)
        den = unit_series[idx] if unit_series is not None \
            else denominator_unit_series(exponents, order)
        g = series_div(num, den, order)
        for j in range(order + 1):
            total[j] += g[j]
    for j in range(order):
        if total[j] != 0:
            raise ConsistencyError(
                f"localization series has a residual pole (order u^{j - order})")
    value = total[order]
    if order % 2:
        value = -value
    return value


def draw_weights(names: Sequence[str], seed: int, attempt: int = 0) -> dict:
    """Deterministic distinct nonzero integer weights for the
    one-parameter subgroup, re-drawable on exponent collision."""
    rng = random.Random(("weights", seed, attempt, tuple(names)).__repr__())
    vals: dict = {}
    used = {0}
    for name in names:
        while True:
            v = rng.randrange(-12 * len(names) - 24, 12 * len(names) + 25)
            if v not in used:
                used.add(v)
                vals[name] = v
                break
    return vals
