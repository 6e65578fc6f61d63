"""The gl_n level-l Verlinde algebra with degree-graded structure
constants, via rim-hook-reduced Littlewood-Richardson numbers.

The basis is {V_lam : lam in P_l}; a product of basis classes carries an
honest integer degree per term (one unit per removed rim hook), matching
the quantum cohomology ring of Gr(n, n+l).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .partitions import Partition, level_membership, partitions_in_box
from .rings import DomainError
from .schur import rim_hook_reduce, schur_product


@dataclass
class FusionElement:
    """Finitely supported map (degree d >= 0, partition nu in P_l) -> int."""

    n: int
    level: int
    coeffs: dict = field(default_factory=dict)

    @classmethod
    def basis(cls, lam, n: int, l: int) -> "FusionElement":
        lam = _pad(lam, n)
        if level_membership(lam, l) == "Outside":
            raise DomainError(f"{lam} is not in P_{l}")
        return cls(n, l, {(0, lam): 1})

    @classmethod
    def zero(cls, n: int, l: int) -> "FusionElement":
        return cls(n, l, {})

    @classmethod
    def unit(cls, n: int, l: int) -> "FusionElement":
        return cls.basis((0,) * n, n, l)

    def coefficient(self, d: int, nu) -> int:
        return self.coeffs.get((d, _pad(nu, self.n)), 0)

    def __add__(self, other):
        self._compat(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FusionElement(self.n, self.level, out)

    def __eq__(self, other):
        return (isinstance(other, FusionElement)
                and (self.n, self.level) == (other.n, other.level)
                and self.coeffs == other.coeffs)

    def _compat(self, other):
        if (self.n, self.level) != (other.n, other.level):
            raise DomainError("mixed fusion rings")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for (d, nu), c in sorted(self.coeffs.items()):
            q = f"q^{d}*" if d else ""
            bits.append(f"{c}*{q}V{tuple(nu)}")
        return " + ".join(bits)


def _pad(lam, n: int) -> Partition:
    lam = Partition(lam)
    if len(lam) < n:
        lam = Partition(tuple(lam) + (0,) * (n - len(lam)))
    if len(lam.trimmed()) > n:
        raise DomainError(f"{lam} has more than {n} parts")
    return Partition(tuple(lam)[:n]) if len(lam) > n and not any(lam[n:]) else lam


def fusion_product(a: FusionElement, b: FusionElement,
                   n: int | None = None, l: int | None = None) -> FusionElement:
    """Bilinear extension of V_lam * V_mu = sum over nu-tilde of
    lr(lam,mu,nu~) * rim_hook_reduce(nu~, n, l), collected by (nu, degree)."""
    n = a.n if n is None else n
    l = a.level if l is None else l
    a._compat(b)
    out: dict = {}
    for (d1, lam), c1 in a.coeffs.items():
        for (d2, mu), c2 in b.coeffs.items():
            for nu, mult in schur_product(lam, mu).items():
                if len(nu.trimmed()) > n:
                    continue
                reduced = rim_hook_reduce(nu, n, l)
                if reduced is None:
                    continue
                key = (d1 + d2 + reduced.degree, _pad(reduced.target, n))
                s = out.get(key, 0) + c1 * c2 * mult * reduced.value
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return FusionElement(n, l, out)


def genus0_verlinde(partitions, n: int, l: int, d: int) -> int:
    """Coefficient of the top class V_(l..l) in degree d of the iterated
    fusion product of the insertions (k >= 2 required)."""
    partitions = [_pad(p, n) for p in partitions]
    if len(partitions) < 2:
        raise DomainError("need at least two insertions")
    for p in partitions:
        if level_membership(p, l) == "Outside":
            raise DomainError(f"{p} is not in P_{l}")
    acc = FusionElement.basis(partitions[0], n, l)
    for p in partitions[1:]:
        acc = fusion_product(acc, FusionElement.basis(p, n, l))
    top = Partition((l,) * n)
    return acc.coefficient(d, top)


def fusion_support_degree(partitions, n: int, l: int) -> int | None:
    """The unique degree where the top-class coefficient can live:
    sum|lam_i| = n*l + d*(n+l); None when no nonnegative integer works."""
    total = sum(Partition(p).size for p in partitions)
    num = total - n * l
    if num < 0 or (n + l) == 0 or num % (n + l):
        return None
    return num // (n + l)


def cyclic_ring_correlator(charges, l: int, d: int) -> int:
    """n = 1 oracle: Z[x]/(x^(l+1) - Q).  The k-point degree-d correlator
    is 1 exactly when sum(a_i) = l + d*(l+1)."""
    total = sum(charges)
    return 1 if total == l + d * (l + 1) else 0


def all_basis(n: int, l: int) -> list:
    return partitions_in_box(n, l)
