"""Constructions and certification of rational maps with many full fibers.

A map of degree r+1 that is constant on l disjoint (r+1)-subsets of the
projective line supports a locally recoverable code with n = (r+1)l and
locality r.  This module builds the explicit families (iterate sums over
cyclic transform groups, the cubic and quartic closed forms, prescribed
zero fibers, power and subspace baselines), certifies arbitrary maps by
brute force, evaluates the counting and bound formulas, and searches small
fields exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, factorial, gcd, isqrt

from ._kernels import impl as _impl
from .errors import (AffineGenerator, CapExceeded, EvenCharacteristic, OrderOne,
                     TheoremViolation)
from .gf import Field, FieldElement, Polynomial
from .projline import MoebiusTransform, OrbitCensus, PPoint
from .ratfun import RationalMap, rational_map

SEARCH_ENUM_CAP = 10**7


# ---------------------------------------------------------------------------
# explicit constructions
# ---------------------------------------------------------------------------


def from_moebius(phi: MoebiusTransform) -> RationalMap:
    """Sum of all iterates of phi; a degree-n map invariant under phi.

    phi must move the point at infinity (c != 0) and have order n >= 2.
    The result generates the fixed field of the cyclic group of phi, so
    its fibers are exactly the orbits.
    """
    if phi.is_affine:
        raise AffineGenerator("generator must move the point at infinity")
    fld = phi.field
    n = phi.order()
    if n < 2:
        raise OrderOne("generator is the identity")
    iterates = []
    cur = phi
    for _ in range(n - 1):
        iterates.append(cur)
        cur = cur.compose(phi)
    assert cur.is_identity
    den = Polynomial(fld, (1,))
    for it in iterates:
        den = den * Polynomial(fld, (it.d, it.c))
    num = Polynomial(fld, (0,) + den.coeffs)  # x * den
    for it in iterates:
        dk = den // Polynomial(fld, (it.d, it.c))
        num = num + dk * Polynomial(fld, (it.b, it.a))
    h = rational_map(num, den)
    if h.degree != n:
        raise TheoremViolation("iterate sum did not have degree equal to the order")
    if h.compose_right(phi) != h:
        raise TheoremViolation("iterate sum is not invariant under its generator")
    return h


def gal1(fld: Field, w) -> RationalMap:
    """The cubic (x^3 - 3w^2x + w^3) / (x(x - w)), w != 0."""
    w = fld.element(w)
    if not w:
        raise ValueError("parameter w must be nonzero")
    three = fld.element(3 % fld.p)
    w2, w3 = w * w, w * w * w
    num = Polynomial(fld, (w3.enc, (-(three * w2)).enc, 0, 1))
    den = Polynomial(fld, (0, (-w).enc, 1))
    return rational_map(num, den)


def gal1_generator(fld: Field, w) -> MoebiusTransform:
    """Order-3 transform w^2/(w - x) whose iterate sum is gal1."""
    w = fld.element(w)
    return MoebiusTransform(fld, 0, (w * w).enc, fld.neg_enc(1), w.enc)


def gal2(fld: Field, d) -> RationalMap:
    """The quartic (4x^4 - 12d^2x^2 + 8d^3x - d^4) / (2x(x-d)(2x-d)), odd q."""
    if fld.p == 2:
        raise EvenCharacteristic("construction needs odd field size")
    d = fld.element(d)
    if not d:
        raise ValueError("parameter d must be nonzero")
    c = lambda k: fld.element(k % fld.p)
    d2 = d * d
    d3 = d2 * d
    d4 = d2 * d2
    num = Polynomial(fld, ((-d4).enc, (c(8) * d3).enc, (-(c(12) * d2)).enc, 0, c(4).enc))
    den = (Polynomial(fld, (0, 1))                       # x
           * Polynomial(fld, ((-d).enc, 1))              # x - d
           * Polynomial(fld, ((-d).enc, c(2).enc))       # 2x - d
           ).scale(c(2).enc)
    return rational_map(num, den)


def gal2_generator(fld: Field, d) -> MoebiusTransform:
    """Order-4 transform d^2/(2(d - x)) whose iterate sum is gal2."""
    d = fld.element(d)
    two = fld.element(2 % fld.p)
    return MoebiusTransform(fld, 0, (d * d).enc, (-two).enc, (two * d).enc)


def zero_fiber_map(points, pole) -> RationalMap:
    """prod_{s in S} (x - s) / (x - a): a map whose zero fiber contains S."""
    pts = list(points)
    if not pts:
        raise ValueError("need a nonempty zero set")
    fld = pts[0].field if isinstance(pts[0], FieldElement) else pole.field
    pts = [fld.element(s) for s in pts]
    pole = fld.element(pole)
    if pole in pts:
        raise ValueError("pole must avoid the zero set")
    if len(set(s.enc for s in pts)) != len(pts):
        raise ValueError("zero set contains repeats")
    num = Polynomial.from_roots(fld, pts)
    den = Polynomial(fld, ((-pole).enc, 1))
    return rational_map(num, den)


def tamo_barg_multiplicative(fld: Field, r: int) -> RationalMap:
    """x^(r+1); needs r+1 dividing q-1 for full fibers on cosets."""
    if (fld.q - 1) % (r + 1) != 0:
        raise ValueError(f"r+1 = {r + 1} does not divide q-1 = {fld.q - 1}")
    coeffs = [0] * (r + 1) + [1]
    return rational_map(Polynomial(fld, coeffs), Polynomial(fld, (1,)))


def tamo_barg_additive(fld: Field, subgroup) -> RationalMap:
    """prod_{a in H} (x - a) for an additive subgroup H (an F_p-subspace)."""
    elems = [fld.element(a) for a in subgroup]
    encs = set(e.enc for e in elems)
    if len(encs) != len(elems) or 0 not in encs:
        raise ValueError("subgroup must contain 0 and have no repeats")
    for a in elems:
        for b in elems:
            if (a + b).enc not in encs:
                raise ValueError("set is not closed under addition")
    return rational_map(Polynomial.from_roots(fld, elems), Polynomial(fld, (1,)))


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GoodnessCertificate:
    """A map plus its full fibers: the recovery sets and their constant values."""

    map: RationalMap
    locality: int  # r; the map degree is r+1
    groups: tuple[tuple[PPoint, tuple[PPoint, ...]], ...]  # (value, sorted points)

    @property
    def l(self) -> int:
        return len(self.groups)

    @property
    def field(self) -> Field:
        return self.map.field

    def validate(self):
        r = self.locality
        assert self.map.degree == r + 1
        seen = set()
        values = set()
        for t, pts in self.groups:
            assert len(pts) == r + 1, "recovery set of wrong size"
            assert t.code not in values, "two groups share a value"
            values.add(t.code)
            for u in pts:
                assert u.code not in seen, "recovery sets overlap"
                seen.add(u.code)
                assert self.map.eval_code(u.code) == t.code, "map is not constant on a recovery set"
        codes = [t.code for t, _ in self.groups]
        assert codes == sorted(codes), "groups out of canonical order"

    def to_json(self) -> dict:
        return {
            "h": self.map.to_json(),
            "r": self.locality,
            "l": self.l,
            "groups": [
                {"t": t.to_json(), "points": [u.to_json() for u in pts]}
                for t, pts in self.groups
            ],
        }

    @staticmethod
    def from_json(fld: Field, data: dict) -> "GoodnessCertificate":
        h = RationalMap.from_json(fld, data["h"])
        groups = tuple(
            (PPoint.of(fld, g["t"]), tuple(PPoint.of(fld, u) for u in g["points"]))
            for g in data["groups"]
        )
        cert = GoodnessCertificate(h, int(data["r"]), groups)
        cert.validate()
        return cert


def certify(h: RationalMap) -> GoodnessCertificate:
    """Extract every full fiber; an empty certificate means the map is not good."""
    fib = h.fibers()
    groups = tuple(
        (t, pts) for t, pts in fib.fibers if len(pts) == h.degree
    )
    cert = GoodnessCertificate(h, h.degree - 1, groups)
    cert.validate()
    return cert


# ---------------------------------------------------------------------------
# counting formulas and bounds
# ---------------------------------------------------------------------------


def predicted_split_count(census: OrbitCensus, q: int, r: int) -> int:
    """Full-fiber count implied by the short-orbit census of an order-(r+1) group."""
    n = r + 1
    if census.group_order != n:
        raise ValueError("census comes from a group of the wrong order")
    if sum(census.sizes) != q + 1:
        raise ValueError("census does not cover the projective line")
    vs = census.short_count
    if vs > 3:
        raise TheoremViolation(f"{vs} short orbits; at most three are possible")
    if vs == 0:
        assert (q + 1) % n == 0
        return (q + 1) // n
    return -(-(q + 1) // n) - (1 if vs in (1, 2) else 2)


@dataclass(frozen=True)
class BoundReport:
    lower: int
    upper: int
    q: int
    genus: int
    group_order: int
    ramified_rational_count: int


def _sqrt_up(q: int) -> int:
    s = isqrt(q)
    return s if s * s == q else s + 1


def estimate_bounds(q: int, genus: int, group_order: int,
                    ramified_rational_count: int) -> BoundReport:
    """Interval for the number of totally split targets; square roots are
    rounded outward so the interval is never narrower than the true one."""
    if group_order < 1 or genus < 0 or ramified_rational_count < 0:
        raise ValueError("inputs must be nonnegative with group order >= 1")
    s = _sqrt_up(q)
    lo = Fraction(q + 1 - 2 * genus * s, group_order) - Fraction(ramified_rational_count, 2)
    hi = Fraction(q + 1 + 2 * genus * s, group_order)
    return BoundReport(ceil(lo), hi.numerator // hi.denominator, q, genus,
                       group_order, ramified_rational_count)


@dataclass(frozen=True)
class SplitLowerBound:
    value: Fraction
    gcd_ok: bool  # gcd(q, (r+1)!) == 1, the hypothesis of the bound

    @property
    def ceiled(self) -> int:
        return ceil(self.value)


def split_count_lower_bound(q: int, r: int, sum_deg_gi: int) -> SplitLowerBound:
    """Guaranteed number of full fibers of any good degree-(r+1) map, from
    the worst-case group order (r+1)! and the ramification budget."""
    fact = factorial(r + 1)
    s = _sqrt_up(q)
    value = (Fraction(q - 2 * s + 1, fact)
             - 2 * s * (r - 1)
             - Fraction(r + 1 + sum_deg_gi, 2))
    return SplitLowerBound(value, gcd(q, fact) == 1)


def genus_upper_bound(deg_h: int, group_order: int) -> int:
    """Genus cap (deg(h) - 2) * #G + 1 for tame coverings with rational constants."""
    return (deg_h - 2) * group_order + 1


# ---------------------------------------------------------------------------
# exhaustive search over small fields
# ---------------------------------------------------------------------------


def search(fld: Field, degree: int, top_k: int = 10,
           poly_only: bool = False) -> list[tuple[RationalMap, int]]:
    """Best maps of one degree by full-fiber count, deduplicated by fiber partition."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if fld.q ** (2 * degree + 1) > SEARCH_ENUM_CAP:
        raise CapExceeded(
            f"enumeration size q^(2d+1) = {fld.q ** (2 * degree + 1)} exceeds {SEARCH_ENUM_CAP}")
    if fld.tables is None:
        raise CapExceeded("search needs a table-backed field")
    found = _impl.search_maps(fld.tables, degree, poly_only)
    out = []
    for split, num, den in found[:top_k]:
        out.append((rational_map(Polynomial(fld, num), Polynomial(fld, den)), split))
    return out
