"""Genus-0 GLSM invariants by exact double torus localization on the Quot
scheme of the projective line.

Fixed components of the ambient (C*)^N-action are indexed by a coordinate
subset S and a degree vector over S; the auxiliary C* rotating the line
(weight s, tangent character s^{-1} at 0 and s at oo) refines each
component to isolated points indexed by splittings d_i = a_i + b_i of
every degree between the two fixed points of the line.

Restriction dictionary: the kernel line at coordinate i carries t_i and
the twist O(-a_i*0 - b_i*oo); E is the kernel dual; H^0(O(m)) carries
s^0..s^m.  Every character is a monomial t_i^{-1} t_j s^c, so the Euler
characteristic is evaluated exactly on a generic one-parameter subgroup
(limits.equivariant_limit), asserted integral, and checked across two
independent weight draws and both orientations of the auxiliary weight.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .fusion import fusion_support_degree, genus0_verlinde
from .grassmann import t_ring
from .limits import denominator_unit_series, draw_weights, equivariant_limit
from .partitions import Partition, level_membership, theta_exponent
from .rings import ConsistencyError, DomainError, LaurentPoly, LaurentRing

POS_ZERO = "0"
POS_INF = "inf"


@dataclass(frozen=True)
class QuotFixedComponent:
    """Ambient-torus fixed component: coordinate subset S (1-based) and a
    degree vector (d_i)_{i in S}; the component is a product of P^{d_i}."""

    subset: tuple
    degrees: tuple

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)


def fixed_components(n: int, N: int, d: int) -> list:
    """All (S, (d_i)) with |S| = n and sum d_i = d; the count is
    C(N,n) * C(d+n-1, n-1)."""
    if not 0 <= n <= N or d < 0:
        raise DomainError("need 0 <= n <= N and d >= 0")
    out = []
    for S in itertools.combinations(range(1, N + 1), n):
        for degs in _compositions(d, n):
            out.append(QuotFixedComponent(S, degs))
    return out


def _compositions(d: int, parts: int):
    if parts == 0:
        if d == 0:
            yield ()
        return
    for first in range(d + 1):
        for rest in _compositions(d - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class QuotFixedPoint:
    """Isolated fixed point of the refined action: kernel line i in S has
    vanishing orders a_i at 0 and b_i at oo (a_i + b_i = d_i)."""

    subset: tuple
    a: tuple
    b: tuple

    def tangent_triples(self, N: int) -> list:
        """Tangent characters t_i^{-1} t_j s^c as triples (i, j, c)."""
        S = self.subset
        comp = [j for j in range(1, N + 1) if j not in S]
        out = []
        for i, ai, bi in zip(S, self.a, self.b):
            for j in comp:
                for c in range(-ai, bi + 1):
                    out.append((i, j, c))
            for i2, a2, b2 in zip(S, self.a, self.b):
                for c in range(-ai, a2 - ai):
                    out.append((i, i2, c))
                for c in range(bi - b2 + 1, bi + 1):
                    out.append((i, i2, c))
        return out

    def e_char_pairs(self, position: str) -> list:
        """Characters of E at a fixed position, as pairs (i, c) meaning
        t_i^{-1} s^c."""
        if position == POS_ZERO:
            return [(i, -ai) for i, ai in zip(self.subset, self.a)]
        return [(i, bi) for i, bi in zip(self.subset, self.b)]

    def det_rpi_exponents(self) -> tuple:
        """det R(pi)_* E as ({i: t-exponent}, s-exponent)."""
        texp = {}
        sexp = 0
        for i, ai, bi in zip(self.subset, self.a, self.b):
            di = ai + bi
            texp[i] = -(di + 1)
            delta = (bi - ai) * (di + 1)
            assert delta % 2 == 0
            sexp += delta // 2
        return texp, sexp


def isolated_points(component: QuotFixedComponent) -> list:
    out = []
    for split in itertools.product(*[range(di + 1) for di in component.degrees]):
        a = tuple(split)
        b = tuple(di - ai for di, ai in zip(component.degrees, a))
        out.append(QuotFixedPoint(component.subset, a, b))
    return out


@dataclass(frozen=True)
class Insertion:
    position: str            # POS_ZERO or POS_INF
    lam: Partition

    def __post_init__(self):
        if self.position not in (POS_ZERO, POS_INF):
            raise DomainError("insertion position must be '0' or 'inf'")
        object.__setattr__(self, "lam", Partition(self.lam))


@dataclass
class InsertionSpec:
    """Integrand data: level l, determinant exponent e at the light point
    x0, and Schur insertions at torus-fixed marked positions.

    `e` may be any exact rational; a non-integral e makes the invariant 0
    by convention.  `dual_insertions` switches the Schur arguments from
    the characters of E_p to those of its dual (the default, E, is the
    convention pinned by the rank-1 correspondence anchors).
    """

    level: int
    e: Fraction
    insertions: list = field(default_factory=list)
    x0_position: str = POS_INF
    dual_insertions: bool = False

    def __post_init__(self):
        self.e = Fraction(self.e)
        self.insertions = [ins if isinstance(ins, Insertion) else Insertion(*ins)
                           for ins in self.insertions]

    @property
    def e_integral(self) -> bool:
        return self.e.denominator == 1


# -- sparse z-polynomial helpers (exponent -> integer coefficient) -----------

def _zmono(k: int) -> dict:
    return {k: 1}

def _zmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, ci in a.items():
        for j, cj in b.items():
            k = i + j
            s = out.get(k, 0) + ci * cj
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out

def _zadd(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _schur_zmonomials(lam: Partition, exps: Sequence[int]) -> dict:
    """s_lam at the monomials z^{k_i}, Jacobi-Trudi over sparse dicts."""
    parts = lam.trimmed()
    if not parts:
        return {0: 1}
    if len(parts) > len(exps):
        return {}
    r = len(parts)
    kmax = parts[0] + r - 1
    h = [{0: 1}] + [dict() for _ in range(kmax)]
    for k0 in exps:
        for k in range(1, kmax + 1):
            h[k] = _zadd(h[k], {e + k0: c for e, c in h[k - 1].items()})
    total: dict = {}
    for perm in itertools.permutations(range(r)):
        sign = _perm_sign(perm)
        prod = {0: 1}
        ok = True
        for i, j in enumerate(perm):
            k = parts[i] - (i + 1) + (j + 1)
            if k < 0:
                ok = False
                break
            if k > 0:
                prod = _zmul(prod, h[k])
        if not ok:
            continue
        total = _zadd(total, prod if sign > 0 else {e: -c for e, c in prod.items()})
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


class QuotLocalizer:
    """Caches the fixed-point data of Quot(P^1; n, N, d) and, per weight
    draw, the denominator unit series -- so sweeps over many integrands
    reuse the expensive part."""

    def __init__(self, n: int, N: int, d: int, seed: int = 2024):
        self.n, self.N, self.d, self.seed = n, N, d, seed
        self.dim = N * d + n * (N - n)
        self.points = []
        for comp in fixed_components(n, N, d):
            if any(di < 0 for di in comp.degrees):
                raise ConsistencyError("negative kernel degree; Quot not smooth")
            for pt in isolated_points(comp):
                triples = pt.tangent_triples(N)
                if len(triples) != self.dim:
                    raise ConsistencyError(
                        f"tangent dimension {len(triples)} != {self.dim} at {pt}")
                self.points.append((pt, triples))
        self.names = tuple(f"t{i}" for i in range(1, N + 1)) + ("s",)
        self.draws = [self._make_draw(0, False), self._make_draw(1, False),
                      self._make_draw(0, True)]

    def _make_draw(self, k: int, flip_s: bool) -> dict:
        attempt = 0
        while True:
            w = draw_weights(self.names, self.seed + 104729 * k, attempt)
            if flip_s:
                w = dict(w)
                w["s"] = -w["s"]
            exps_per_point = []
            ok = True
            for pt, triples in self.points:
                # factor (1 - chi^{-1}) with chi = t_i^{-1} t_j s^c
                exps = [w[f"t{i}"] - w[f"t{j}"] - c * w["s"]
                        for (i, j, c) in triples]
                if any(e == 0 for e in exps):
                    ok = False
                    break
                exps_per_point.append(exps)
            if ok:
                units = [denominator_unit_series(e, self.dim)
                         for e in exps_per_point]
                return {"weights": w, "exps": exps_per_point, "units": units}
            attempt += 1
            if attempt > 64:
                raise ConsistencyError("persistent weight collisions")

    def _point_zpoly(self, pt: QuotFixedPoint, spec: InsertionSpec,
                     w: Mapping[str, int], memo: dict) -> dict:
        zexp = 0
        texp, sexp = pt.det_rpi_exponents()
        det_rpi = sum(w[f"t{i}"] * x for i, x in texp.items()) + w["s"] * sexp
        zexp += -spec.level * det_rpi
        for i, c in pt.e_char_pairs(spec.x0_position):
            zexp += int(spec.e) * (-w[f"t{i}"] + c * w["s"])
        value = _zmono(zexp)
        for ins in spec.insertions:
            key = (pt, ins.position, ins.lam, spec.dual_insertions, id(w))
            cached = memo.get(key)
            if cached is None:
                chars = [-w[f"t{i}"] + c * w["s"]
                         for i, c in pt.e_char_pairs(ins.position)]
                if spec.dual_insertions:
                    chars = [-k for k in chars]
                cached = _schur_zmonomials(ins.lam, chars)
                memo[key] = cached
            value = _zmul(value, cached)
        return value

    def invariant(self, spec: InsertionSpec) -> int:
        """chi(Quot, D^l x insertions x (det E_{x0})^e), exact."""
        if not spec.e_integral:
            return 0
        if not hasattr(self, "_schur_memo"):
            self._schur_memo = {}
        results = []
        for draw in self.draws:
            w = draw["weights"]
            data = []
            for (pt, _), exps in zip(self.points, draw["exps"]):
                data.append((self._point_zpoly(pt, spec, w, self._schur_memo),
                             exps))
            results.append(equivariant_limit(data, self.dim, draw["units"]))
        if any(r != results[0] for r in results[1:]):
            raise ConsistencyError(f"draw-dependent localization sum: {results}")
        if results[0].denominator != 1:
            raise ConsistencyError(
                f"non-integral chi {results[0]}: conventions broken")
        return int(results[0])


_localizers: dict = {}


def _localizer(n: int, N: int, d: int, seed: int) -> QuotLocalizer:
    key = (n, N, d, seed)
    if key not in _localizers:
        if len(_localizers) > 64:
            _localizers.clear()
        _localizers[key] = QuotLocalizer(n, N, d, seed)
    return _localizers[key]


def glsm_invariant(n: int, N: int, d: int, spec: InsertionSpec,
                   seed: int = 2024) -> int:
    """chi(Quot, D^l x insertions x (det E_{x0})^e) by localization to
    isolated fixed points; integer, checked across two independent
    generic draws and the two orientations of the auxiliary weight."""
    return _localizer(n, N, d, seed).invariant(spec)


def point_characters(pt: QuotFixedPoint, n: int, N: int,
                     ring: LaurentRing | None = None) -> dict:
    """Symbolic character data at one isolated fixed point, for
    cross-checks against the I-function formula: tangent characters, the
    E-characters at 0/oo, and det R(pi)_* E, as Laurent monomials."""
    ring = ring or t_ring(N, extra=("s",))
    tangent = [ring.monomial(1, {f"t{i}": -1, f"t{j}": 1, "s": c})
               for (i, j, c) in pt.tangent_triples(N)]
    echars = {pos: [ring.monomial(1, {f"t{i}": -1, "s": c})
                    for i, c in pt.e_char_pairs(pos)]
              for pos in (POS_ZERO, POS_INF)}
    texp, sexp = pt.det_rpi_exponents()
    det = ring.monomial(1, {**{f"t{i}": x for i, x in texp.items()}, "s": sexp})
    return {"tangent": tangent, "e_chars": echars, "det_rpi": det, "ring": ring}


@dataclass
class CorrespondenceResult:
    verlinde: int
    glsm: int
    e: Fraction
    e_integral: bool
    equal: bool
    support_degree: int | None
    warnings: list


def correspondence_check(n: int, l: int, N: int, k: int, partitions, d: int,
                         seed: int = 2024) -> CorrespondenceResult:
    """Both sides of the rank <= 2 correspondence at one tuple: the fusion
    side via genus0_verlinde, the geometric side via glsm_invariant with
    e from the theta-exponent formula."""
    partitions = [Partition(p) for p in partitions]
    if len(partitions) != k:
        raise DomainError(f"expected k={k} partitions, got {len(partitions)}")
    if n > 2:
        raise DomainError("hypothesis failed: n <= 2 (rank bound)")
    if l < 1:
        raise DomainError("hypothesis failed: l >= 1 (level structure)")
    if N < n + 2 * l:
        raise DomainError(f"hypothesis failed: N >= n+2l (need N >= {n + 2 * l})")
    if k <= (n - 1) * l:
        raise DomainError(
            "hypothesis failed: k > (n-1)l (genus-0 nonemptiness)")
    if d < 0:
        raise DomainError("hypothesis failed: d >= 0")
    warnings = []
    for p in partitions:
        m = level_membership(p, l)
        if m == "Outside":
            raise DomainError(f"hypothesis failed: {tuple(p)} not in P_{l}")
        if m != "InPlPrime":
            warnings.append(f"{tuple(p)} is in P_{l} but not P_{l}' "
                            "(wall-crossing hypothesis)")
    e, integral = theta_exponent(n, l, 0, d, partitions)
    verlinde = genus0_verlinde(partitions, n, l, d)
    if integral:
        spec = InsertionSpec(l, e,
                             [Insertion(POS_ZERO, p) for p in partitions],
                             x0_position=POS_INF)
        glsm = glsm_invariant(n, N, d, spec, seed=seed)
    else:
        glsm = 0
        warnings.append("e is not an integer; invariant is zero by convention")
    return CorrespondenceResult(verlinde, glsm, e, integral,
                                verlinde == glsm,
                                fusion_support_degree(partitions, n, l),
                                warnings)
