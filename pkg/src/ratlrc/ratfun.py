"""Rational maps on the projective line: canonical form, fibers, splitting data.

A map h = f/g is stored reduced (gcd(f,g) = 1) with monic denominator; its
degree is max(deg f, deg g).  Construction rejects maps whose Wronskian
f'g - g'f vanishes identically: those are exactly the maps that factor
through the Frobenius x -> x^p, for which none of the counting machinery
applies.  A nonzero Wronskian that happens to use only q-th-power terms is
legal; `wronskian_in_xq` reports that condition for diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._kernels import impl as _impl
from .errors import DegreeZero, FieldMismatch, Inseparable, ZeroDenominator
from .gf import Field, Polynomial
from .projline import PPoint, MoebiusTransform


class RationalMap:
    """Reduced fraction of polynomials, evaluated on the projective line."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num: Polynomial, den: Polynomial, _validated=False):
        if num.field != den.field:
            raise FieldMismatch("numerator and denominator over different fields")
        self.field = num.field
        self.num = num
        self.den = den
        if not _validated:
            raise ValueError("use rational_map() to construct")

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def wronskian(self) -> Polynomial:
        return self.num.derivative() * self.den - self.den.derivative() * self.num

    def eval_code(self, u: int) -> int:
        """Image of a point code (q = infinity)."""
        f = self.field
        q = f.q
        if u == q:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return q
            if dn < dd:
                return 0
            return f.mul_enc(self.num.lead(), f.inv_enc(self.den.lead()))
        dv = self.den.eval_enc(u)
        if dv == 0:
            return q
        return f.mul_enc(self.num.eval_enc(u), f.inv_enc(dv))

    def eval_point(self, u: PPoint) -> PPoint:
        if u.field != self.field:
            raise FieldMismatch("point from a different field")
        return PPoint(self.field, self.eval_code(u.code))

    __call__ = eval_point

    def images(self) -> list[int]:
        """Image code of every point code 0..q, via the active kernel."""
        f = self.field
        if f.tables is not None:
            return _impl.eval_on_line(f.tables, list(self.num.coeffs), list(self.den.coeffs))
        return [self.eval_code(u) for u in range(f.q + 1)]

    def fibers(self) -> "FiberMap":
        f = self.field
        images = self.images()
        buckets: dict[int, list[int]] = {}
        for u, t in enumerate(images):
            buckets.setdefault(t, []).append(u)
        fibs = tuple(
            (PPoint(f, t), tuple(PPoint(f, u) for u in sorted(buckets.get(t, ()))))
            for t in range(f.q + 1)
        )
        return FiberMap(f, self.degree, fibs)

    def split_count(self) -> int:
        """Number of target points whose fiber has the full deg(h) elements."""
        d = self.degree
        counts: dict[int, int] = {}
        for t in self.images():
            counts[t] = counts.get(t, 0) + 1
        return sum(1 for c in counts.values() if c == d)

    def compose_left(self, phi: MoebiusTransform) -> "RationalMap":
        """phi applied after this map."""
        if phi.field != self.field:
            raise FieldMismatch("transform over a different field")
        f = self.field
        a, b, c, d = (Polynomial(f, (v,)) for v in phi.quadruple())
        return rational_map(a * self.num + b * self.den, c * self.num + d * self.den)

    def compose_right(self, psi: MoebiusTransform) -> "RationalMap":
        """This map applied after psi (substitute psi into the argument)."""
        if psi.field != self.field:
            raise FieldMismatch("transform over a different field")
        f = self.field
        n = self.degree
        up = Polynomial(f, (psi.b, psi.a))   # a x + b
        vp = Polynomial(f, (psi.d, psi.c))   # c x + d
        # powers up^i * vp^(n-i)
        upow = [Polynomial(f, (1,))]
        vpow = [Polynomial(f, (1,))]
        for i in range(n):
            upow.append(upow[-1] * up)
            vpow.append(vpow[-1] * vp)
        def subst(poly: Polynomial) -> Polynomial:
            out = Polynomial(f)
            for i, cf in enumerate(poly.coeffs):
                if cf:
                    out = out + (upow[i] * vpow[n - i]).scale(cf)
            return out
        return rational_map(subst(self.num), subst(self.den))

    def inverted(self) -> "RationalMap":
        """The reciprocal map 1/h."""
        return rational_map(self.den, self.num)

    def inf_split(self) -> "InfSplitData":
        """Places over the infinite target with ramification and residue data."""
        f = self.field
        dn, dd = self.num.degree, self.den.degree
        delta = 1 if dn > dd else 0
        entries = []
        if dd >= 1:
            for factor, mult in self.den.factor():
                entries.append(InfSplitEntry(factor, mult, factor.degree))
        if delta:
            entries.append(InfSplitEntry(None, dn - dd, 1))
        data = InfSplitData(self.degree, tuple(entries), delta)
        total = sum(e.ramification * e.residue_degree for e in data.entries)
        if total != self.degree:
            raise RuntimeError("place data violates the fundamental equality")
        return data

    def ramified_bound(self) -> int:
        """Upper bound for the number of ramified places of the base line."""
        dd = self.den.degree
        sum_deg = sum(fac.degree for fac, _ in self.den.factor()) if dd >= 1 else 0
        delta = 1 if self.num.degree > dd else 0
        return self.degree + sum_deg + delta - 1

    def sort_key(self):
        return (self.degree, self.num.coeffs, self.den.coeffs)

    def __eq__(self, other):
        return (isinstance(other, RationalMap) and other.field == self.field
                and other.num == self.num and other.den == self.den)

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"({self.num!r})/({self.den!r})"

    def to_json(self) -> dict:
        return {"num": list(self.num.coeffs), "den": list(self.den.coeffs)}

    @staticmethod
    def from_json(fld: Field, data: dict) -> "RationalMap":
        return rational_map(Polynomial(fld, data["num"]), Polynomial(fld, data["den"]))


def rational_map(num: Polynomial, den: Polynomial) -> RationalMap:
    """Reduce f/g, rescale the denominator monic, and validate the map."""
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    g = num.gcd(den)
    if not g.is_zero() and g.degree >= 1:
        num = num // g
        den = den // g
    if max(num.degree, den.degree) < 1:
        raise DegreeZero("map reduces to a constant")
    lead_inv = den.field.inv_enc(den.lead())
    num = num.scale(lead_inv)
    den = den.scale(lead_inv)
    h = RationalMap(num, den, _validated=True)
    if h.wronskian().is_zero():
        raise Inseparable("map factors through the Frobenius (zero Wronskian)")
    return h


def wronskian_in_xq(h: RationalMap) -> bool:
    """True when f'g - g'f uses only exponents divisible by q (diagnostic)."""
    w = h.wronskian()
    q = h.field.q
    return all(c == 0 for i, c in enumerate(w.coeffs) if i % q)


@dataclass(frozen=True)
class FiberMap:
    """For every target point, the sorted list of domain points mapping to it."""

    field: Field
    degree: int
    fibers: tuple[tuple[PPoint, tuple[PPoint, ...]], ...]  # all q+1 targets, ascending

    def fiber(self, t) -> tuple[PPoint, ...]:
        t = PPoint.of(self.field, t)
        return self.fibers[t.code][1]

    def partition(self) -> tuple[tuple[int, ...], ...]:
        """Nonempty fibers as sorted point-code blocks, canonically ordered."""
        blocks = [tuple(p.code for p in pts) for _, pts in self.fibers if pts]
        return tuple(sorted(blocks, key=lambda blk: (len(blk), blk)))

    def split_targets(self) -> list[PPoint]:
        return [t for t, pts in self.fibers if len(pts) == self.degree]

    def validate(self):
        q = self.field.q
        assert sum(len(pts) for _, pts in self.fibers) == q + 1
        assert all(len(pts) <= self.degree for _, pts in self.fibers)


@dataclass(frozen=True)
class InfSplitEntry:
    """One place over the infinite target: (place, e, f)."""

    place: Polynomial | None  # None is the infinite place of the function field
    ramification: int
    residue_degree: int

    def label(self) -> str:
        return "inf" if self.place is None else repr(self.place)


@dataclass(frozen=True)
class InfSplitData:
    degree: int
    entries: tuple[InfSplitEntry, ...]
    delta: int  # 1 when deg f > deg g

    def totally_split(self) -> bool:
        return (len(self.entries) == self.degree
                and all(e.ramification == 1 and e.residue_degree == 1 for e in self.entries))
