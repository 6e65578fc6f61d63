"""Exact arithmetic kernel: multivariate Laurent polynomials over Q and
rational functions in a distinguished variable q.

A :class:`LaurentRing` fixes an ordered tuple of variable names; every
:class:`LaurentPoly` stores a mapping from dense exponent vectors (one
integer per variable, negatives allowed) to ``Fraction`` coefficients.
Zero coefficients are never stored.  All values are immutable after
construction, so they can be shared freely.

Rational functions are quotients of Laurent polynomials.  The residue
calculus ([Res_{q=0} + Res_{q=oo}] f dq/q) is evaluated by exact series
expansion at 0 and at infinity, which agrees with the partial-fraction
computation whenever the poles are rational; the rational-pole
precondition itself is checked by rational-root deflation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class DomainError(ValueError):
    """A documented precondition was violated; the message names it."""


class UnsupportedPoleError(DomainError):
    """Residue input has poles away from exact rational points, 0 and oo."""


class PoleAtZeroError(DomainError):
    """Expansion at q=0 requested for a function with a genuine pole there."""

    def __init__(self, order: int):
        super().__init__(f"pole of order {order} at q=0")
        self.order = order


class ConsistencyError(RuntimeError):
    """An internal exactness invariant failed (non-integral chi, draw
    disagreement); indicates broken conventions, not bad user input."""


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}")


class LaurentRing:
    """Registry of variable names shared by a family of Laurent polynomials."""

    __slots__ = ("names", "_index", "_zero_exp")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names: {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self._zero_exp = (0,) * len(names)

    def __eq__(self, other):
        return isinstance(other, LaurentRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"LaurentRing({', '.join(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise DomainError(f"variable {name!r} not in {self.names}") from None

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, {})

    def one(self) -> "LaurentPoly":
        return LaurentPoly(self, {self._zero_exp: _ONE})

    def const(self, c) -> "LaurentPoly":
        c = _frac(c)
        return LaurentPoly(self, {self._zero_exp: c} if c else {})

    def var(self, name: str, power: int = 1) -> "LaurentPoly":
        return self.monomial(1, {name: power})

    def monomial(self, coeff, exps: Mapping[str, int]) -> "LaurentPoly":
        coeff = _frac(coeff)
        if not coeff:
            return self.zero()
        e = [0] * len(self.names)
        for name, p in exps.items():
            e[self.index(name)] = int(p)
        return LaurentPoly(self, {tuple(e): coeff})


class LaurentPoly:
    """Immutable multivariate Laurent polynomial with Fraction coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: LaurentRing, terms: dict):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    # -- basic predicates -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return _ZERO
        if not self.is_constant():
            raise DomainError("not a constant polynomial")
        return self.terms[self.ring._zero_exp]

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.ring != self.ring:
                raise DomainError("mixed-ring arithmetic")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _frac(other)
            if not c:
                return self.ring.zero()
            return LaurentPoly(self.ring, {e: k * c for e, k in self.terms.items()})
        other = self._coerce(other)
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        out: dict = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, _ZERO) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return self.monomial_inverse() ** (-n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monomial_inverse(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise DomainError("only monomials are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPoly(self.ring, {tuple(-x for x in e): 1 / c})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- structure ---------------------------------------------------------

    def degree(self, name: str) -> int:
        """Largest exponent of ``name``; raises on the zero polynomial."""
        if self.is_zero():
            raise DomainError("degree of zero polynomial")
        i = self.ring.index(name)
        return max(e[i] for e in self.terms)

    def valuation(self, name: str) -> int:
        if self.is_zero():
            raise DomainError("valuation of zero polynomial")
        i = self.ring.index(name)
        return min(e[i] for e in self.terms)

    def shift(self, name: str, k: int) -> "LaurentPoly":
        """Multiply by name**k."""
        if k == 0:
            return self
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            e2 = list(e)
            e2[i] += k
            out[tuple(e2)] = c
        return LaurentPoly(self.ring, out)

    def coefficients_in(self, name: str) -> dict:
        """Exponent of ``name`` -> coefficient (a LaurentPoly with that
        variable's exponent set to zero)."""
        i = self.ring.index(name)
        buckets: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            e2 = list(e)
            e2[i] = 0
            buckets.setdefault(k, {})[tuple(e2)] = c
        return {k: LaurentPoly(self.ring, t) for k, t in sorted(buckets.items())}

    def uses_only(self, names: Iterable[str]) -> bool:
        allowed = {self.ring.index(n) for n in names}
        for e in self.terms:
            if any(x != 0 and i not in allowed for i, x in enumerate(e)):
                return False
        return True

    def evaluate(self, assign: Mapping[str, Fraction]) -> Fraction:
        """Evaluate with every variable assigned an exact rational."""
        vals = [None] * len(self.ring.names)
        for n, v in assign.items():
            vals[self.ring.index(n)] = _frac(v)
        if any(v is None for v in vals):
            missing = [n for n, v in zip(self.ring.names, vals) if v is None]
            raise DomainError(f"evaluate: missing assignments for {missing}")
        total = _ZERO
        for e, c in self.terms.items():
            term = c
            for v, x in zip(vals, e):
                if x:
                    term *= v ** x
            total += term
        return total

    def specialize(self, assign: Mapping[str, Fraction],
                   target: LaurentRing | None = None) -> "LaurentPoly":
        """Substitute exact rationals for some variables; the result lives in
        ``target`` (default: the ring on the remaining names, original order)."""
        assign = {n: _frac(v) for n, v in assign.items()}
        keep = [n for n in self.ring.names if n not in assign]
        if target is None:
            target = LaurentRing(keep)
        out = target.zero()
        idx = [self.ring.index(n) for n in keep]
        sub = [(self.ring.index(n), v) for n, v in assign.items()]
        acc: dict = {}
        for e, c in self.terms.items():
            for i, v in sub:
                if e[i]:
                    c = c * v ** e[i]
            e2 = tuple(e[i] for i in idx)
            et = [0] * len(target.names)
            for name, x in zip(keep, e2):
                et[target.index(name)] = x
            key = tuple(et)
            s = acc.get(key, _ZERO) + c
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
        return LaurentPoly(target, acc)

    def try_divide(self, divisor: "LaurentPoly") -> "LaurentPoly | None":
        """Exact division; returns None when the quotient is not a Laurent
        polynomial.  Long division in lexicographic order after clearing
        the divisor's monomial content (monomials are units here)."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self.ring.zero()
        # Normalize so the divisor has nonnegative exponents with content 0.
        n = len(self.ring.names)
        dmin = [min(e[i] for e in divisor.terms) for i in range(n)]
        shift_div = LaurentPoly(self.ring, {tuple(x - m for x, m in zip(e, dmin)): c
                                            for e, c in divisor.terms.items()})
        rem = LaurentPoly(self.ring, dict(self.terms))
        lead = max(shift_div.terms)  # lex-largest exponent
        lc = shift_div.terms[lead]
        quot: dict = {}
        guard = 0
        limit = 4 * (len(self.terms) + 1) * (len(divisor.terms) + 1) + 1000
        while not rem.is_zero():
            guard += 1
            if guard > limit:
                return None
            rlead = max(rem.terms)
            e = tuple(x - y for x, y in zip(rlead, lead))
            c = rem.terms[rlead] / lc
            # Candidate quotient term must cancel the remainder's lex-leading
            # term; if repeated subtraction cannot terminate, fail.
            quot[e] = quot.get(e, _ZERO) + c
            rem = rem - LaurentPoly(self.ring, {e: c}) * shift_div
            if not rem.is_zero() and max(rem.terms) >= rlead:
                return None
        q = LaurentPoly(self.ring, quot)
        # Undo the divisor shift: self = q * shift_div, divisor = shift_div * m.
        return q.shifted_by(tuple(-m for m in dmin))

    def shifted_by(self, exp: tuple) -> "LaurentPoly":
        return LaurentPoly(self.ring, {tuple(x + y for x, y in zip(e, exp)): c
                                       for e, c in self.terms.items()})

    # -- rendering -----------------------------------------------------------

    def __repr__(self):
        return self.render()

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            vars_part = "*".join(
                f"{n}^{x}" if x != 1 else n
                for n, x in zip(self.ring.names, e) if x != 0
            )
            if not vars_part:
                parts.append(str(c))
            elif c == 1:
                parts.append(vars_part)
            elif c == -1:
                parts.append(f"-{vars_part}")
            else:
                parts.append(f"{c}*{vars_part}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


class RationalFunctionQ:
    """Quotient of Laurent polynomials, normalized by cancelling the
    denominator's monomial content and scaling its lex-least coefficient
    to 1.  Equality is decided by cross-multiplication, never sampling."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.ring != den.ring:
            raise DomainError("numerator and denominator from different rings")
        if not num.is_zero():
            n = len(num.ring.names)
            content = tuple(min(e[i] for e in den.terms) for i in range(n))
            if any(content):
                neg = tuple(-x for x in content)
                num = num.shifted_by(neg)
                den = den.shifted_by(neg)
            c = den.terms[min(den.terms)]
            if c != 1:
                inv = 1 / c
                num = num * inv
                den = den * inv
        else:
            den = den.ring.one()
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFunctionQ":
        return cls(p, p.ring.one())

    @property
    def ring(self) -> LaurentRing:
        return self.num.ring

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other) -> "RationalFunctionQ":
        if isinstance(other, RationalFunctionQ):
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunctionQ.from_poly(other)
        return RationalFunctionQ.from_poly(self.ring.const(other))

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFunctionQ(self.num + other.num, self.den)
        return RationalFunctionQ(self.num * other.den + other.num * self.den,
                                 self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunctionQ(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunctionQ(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return RationalFunctionQ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        n = int(n)
        if n < 0:
            return RationalFunctionQ(self.den, self.num) ** (-n)
        out = RationalFunctionQ.from_poly(self.ring.one())
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (RationalFunctionQ, LaurentPoly, int, Fraction)):
            other = self._coerce(other)
            return self.num * other.den == other.num * self.den
        return NotImplemented

    def __hash__(self):
        raise TypeError("RationalFunctionQ is unhashable; compare with ==")

    def normalized(self) -> "RationalFunctionQ":
        """Re-run the canonical normalization (idempotent by construction)."""
        return RationalFunctionQ(self.num, self.den)

    # -- q-structure ---------------------------------------------------------

    def q_degree(self, name: str = "q") -> tuple:
        """(deg_q numerator, deg_q denominator); numerator None when zero."""
        dnum = None if self.num.is_zero() else self.num.degree(name)
        return (dnum, self.den.degree(name))

    def vanishes_at_infinity(self, name: str = "q") -> bool:
        if self.num.is_zero():
            return True
        return self.num.degree(name) < self.den.degree(name)

    def regular_at_zero(self, name: str = "q") -> bool:
        if self.num.is_zero():
            return True
        return self.num.valuation(name) >= self.den.valuation(name)

    def constant_value(self) -> Fraction:
        q = self.num.try_divide(self.den)
        if q is None or not q.is_constant():
            raise DomainError("not a constant rational function")
        return q.constant_value()

    def as_poly(self) -> LaurentPoly:
        q = self.num.try_divide(self.den)
        if q is None:
            raise DomainError("denominator does not divide numerator")
        return q

    def specialize(self, assign: Mapping[str, Fraction],
                   target: LaurentRing | None = None) -> "RationalFunctionQ":
        num = self.num.specialize(assign, target)
        den = self.den.specialize(assign, num.ring if target is None else target)
        return RationalFunctionQ(num, den)

    def evaluate(self, assign: Mapping[str, Fraction]) -> Fraction:
        d = self.den.evaluate(assign)
        if not d:
            raise ZeroDivisionError("denominator vanishes at this assignment")
        return self.num.evaluate(assign) / d

    def render(self) -> str:
        if self.den == self.ring.one():
            return self.num.render()
        return f"({self.num.render()}) / ({self.den.render()})"

    __repr__ = render

    # -- series and residues ---------------------------------------------------

    def _q_parts(self, name: str):
        """Split as q^shift * (sum N_k q^k)/(sum D_k q^k) with D_0 nonzero."""
        if self.num.is_zero():
            return 0, {0: self.ring.zero()}, {0: self.ring.one()}
        a = self.num.valuation(name)
        b = self.den.valuation(name)
        ncoef = self.num.shift(name, -a).coefficients_in(name)
        dcoef = self.den.shift(name, -b).coefficients_in(name)
        return a - b, ncoef, dcoef

    def expand_at_zero(self, order: int, name: str = "q") -> list:
        """First ``order``+1 exact Taylor coefficients at q=0, as
        LaurentPoly values in the remaining variables."""
        if order < 0:
            raise DomainError("order must be nonnegative")
        zero = self.ring.zero()
        if self.num.is_zero():
            return [zero] * (order + 1)
        shift, ncoef, dcoef = self._q_parts(name)
        if shift < 0:
            raise PoleAtZeroError(-shift)
        d0 = dcoef[0]
        if not d0.is_monomial():
            raise DomainError(
                "series inversion needs an invertible (monomial) constant term; "
                "specialize the non-q variables first")
        d0inv = d0.monomial_inverse()
        depth = order - shift
        series = []
        for k in range(depth + 1):
            acc = ncoef.get(k, zero)
            for j in range(1, k + 1):
                dj = dcoef.get(j)
                if dj is not None:
                    acc = acc - dj * series[k - j]
            series.append(acc * d0inv)
        return [zero] * min(shift, order + 1) + series[: max(0, order + 1 - shift)]

    def _constant_term_at_zero(self, name: str) -> Fraction:
        shift, ncoef, dcoef = self._q_parts(name)
        if shift > 0:
            return _ZERO
        k = -shift
        d0 = dcoef[0].constant_value()
        series = []
        for i in range(k + 1):
            acc = ncoef.get(i, self.ring.zero()).constant_value()
            for j in range(1, i + 1):
                dj = dcoef.get(j)
                if dj is not None:
                    acc -= dj.constant_value() * series[i - j]
            series.append(acc / d0)
        return series[k]

    def _inverted_in_q(self, name: str) -> "RationalFunctionQ":
        """The substitution q -> 1/q."""
        i = self.ring.index(name)

        def flip(p: LaurentPoly) -> LaurentPoly:
            return LaurentPoly(p.ring, {
                tuple((-x if j == i else x) for j, x in enumerate(e)): c
                for e, c in p.terms.items()})

        return RationalFunctionQ(flip(self.num), flip(self.den))

    def _check_rational_poles(self, name: str) -> None:
        """Lemma A.2 precondition: all finite nonzero poles rational."""
        den = self.den
        coeffs = den.coefficients_in(name)
        uni = {}
        for k, c in coeffs.items():
            if not c.is_constant():
                raise DomainError(
                    "residue_pair needs a fixed-point-specialized input "
                    "(coefficients must be scalars)")
            uni[k] = c.constant_value()
        v = min(uni)
        dense = [uni.get(k, _ZERO) for k in range(v, max(uni) + 1)]
        _assert_rational_roots(dense)

    def residue_pair(self, name: str = "q") -> Fraction:
        """[Res_{q=0} + Res_{q=oo}] f dq/q, exact.

        Requires a single-variable input over Q whose finite nonzero poles
        are at rational points (checked); see Lemma A.2's scalar form.
        """
        if not (self.num.uses_only([name]) and self.den.uses_only([name])):
            raise DomainError(
                "residue_pair needs a single-variable rational function; "
                "specialize the other variables first")
        if self.num.is_zero():
            return _ZERO
        self._check_rational_poles(name)
        at_zero = self._constant_term_at_zero(name)
        at_inf = self._inverted_in_q(name)._constant_term_at_zero(name)
        return at_zero - at_inf


def _assert_rational_roots(coeffs: list) -> None:
    """Raise UnsupportedPoleError unless the polynomial (dense, constant
    term first, constant term nonzero) factors into rational linear pieces."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return
    # Clear denominators to integer coefficients.
    from math import lcm, gcd
    mult = 1
    for c in cs:
        mult = lcm(mult, c.denominator)
    ics = [int(c * mult) for c in cs]
    deg = len(ics) - 1
    while deg >= 1:
        root = _find_rational_root(ics)
        if root is None:
            raise UnsupportedPoleError(
                "denominator has non-rational roots; residues are only "
                "supported at exact rational pole locations")
        ics = _deflate(ics, root)
        deg -= 1


def _divisors(n: int):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return out


def _find_rational_root(ics: list):
    a0, alead = ics[0], ics[-1]
    if a0 == 0:
        return _ZERO
    for p in _divisors(a0):
        for s in _divisors(alead):
            for cand in (Fraction(p, s), Fraction(-p, s)):
                acc = _ZERO
                for c in reversed(ics):
                    acc = acc * cand + c
                if acc == 0:
                    return cand
    return None


def _deflate(ics: list, root: Fraction) -> list:
    # Synthetic division by (x - root); exact, result re-integerized.
    out = [Fraction(ics[-1])]
    for c in reversed(ics[:-1]):
        out.append(c + out[-1] * root)
    rem = out.pop()
    assert rem == 0
    out.reverse()
    from math import lcm
    mult = 1
    for c in out:
        mult = lcm(mult, c.denominator)
    return [int(c * mult) for c in out]


def minimal_annihilator_check(L, n0: int) -> bool:
    """Whether (1-L)**n0 = 0 for a scalar L; the degenerate probe of the
    minimal-polynomial lemma (true only for L=1, n0>=1)."""
    L = _frac(L)
    if L == 0:
        raise DomainError("minimal_annihilator_check requires L != 0")
    if n0 < 1:
        return False
    return L == 1


def residue_pair(f: RationalFunctionQ, name: str = "q") -> Fraction:
    return f.residue_pair(name)


def expand_at_zero(f: RationalFunctionQ, order: int, name: str = "q") -> list:
    return f.expand_at_zero(order, name)


def vanishes_at_infinity(f: RationalFunctionQ, name: str = "q") -> bool:
    return f.vanishes_at_infinity(name)
