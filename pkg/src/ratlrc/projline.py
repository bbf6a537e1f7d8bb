"""The projective line over a finite field and its fractional-linear maps.

Points are F_q plus a single point at infinity; internally a point is the
integer code 0..q, with q standing for infinity, which makes the canonical
order (finite points ascending, infinity last) the plain integer order.
Transforms (ax+b)/(cx+d) with ad-bc != 0 are kept in a normal form that
scales the first nonzero of (a, c, b, d) to one, so equality of normal
forms is equality in the transform group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatch
from .gf import Field, FieldElement

INF_LABEL = "inf"


class PPoint:
    """A point of the projective line: a field element or infinity."""

    __slots__ = ("field", "code")

    def __init__(self, fld: Field, code: int):
        if not 0 <= code <= fld.q:
            raise ValueError("point code out of range")
        self.field = fld
        self.code = code

    @staticmethod
    def finite(elem: FieldElement) -> "PPoint":
        return PPoint(elem.field, elem.enc)

    @staticmethod
    def of(fld: Field, value) -> "PPoint":
        if isinstance(value, PPoint):
            if value.field != fld:
                raise FieldMismatch("point from a different field")
            return value
        if value == INF_LABEL or value is None:
            return PPoint(fld, fld.q)
        if isinstance(value, FieldElement):
            return PPoint.finite(fld.element(value))
        return PPoint(fld, fld.element(value).enc)

    @staticmethod
    def infinity(fld: Field) -> "PPoint":
        return PPoint(fld, fld.q)

    @property
    def is_infinity(self) -> bool:
        return self.code == self.field.q

    @property
    def element(self) -> FieldElement:
        if self.is_infinity:
            raise ValueError("infinity is not a field element")
        return FieldElement(self.field, self.code)

    def to_json(self):
        return INF_LABEL if self.is_infinity else self.code

    def __eq__(self, other):
        return (isinstance(other, PPoint) and other.field == self.field
                and other.code == self.code)

    def __lt__(self, other):
        if not isinstance(other, PPoint) or other.field != self.field:
            raise FieldMismatch("points from different fields")
        return self.code < other.code

    def __le__(self, other):
        return self == other or self < other

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.code, "P1"))

    def __repr__(self):
        return INF_LABEL if self.is_infinity else str(self.code)


def all_points(fld: Field) -> list[PPoint]:
    """The q+1 points in canonical order (finite ascending, infinity last)."""
    return [PPoint(fld, c) for c in range(fld.q + 1)]


def normalize_quadruple(fld: Field, a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    """Scale so the first nonzero of (a, c, b, d) becomes 1."""
    for pivot in (a, c, b, d):
        if pivot:
            s = fld.inv_enc(pivot)
            mul = fld.mul_enc
            return (mul(a, s), mul(b, s), mul(c, s), mul(d, s))
    raise ValueError("zero quadruple")


class MoebiusTransform:
    """Fractional-linear map (ax+b)/(cx+d), stored in group normal form."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, fld: Field, a, b, c, d):
        enc = lambda v: fld.element(v).enc
        a, b, c, d = enc(a), enc(b), enc(c), enc(d)
        det = fld.sub_enc(fld.mul_enc(a, d), fld.mul_enc(b, c))
        if det == 0:
            raise ValueError("degenerate transform: ad - bc = 0")
        self.field = fld
        self.a, self.b, self.c, self.d = normalize_quadruple(fld, a, b, c, d)

    @staticmethod
    def identity(fld: Field) -> "MoebiusTransform":
        return MoebiusTransform(fld, 1, 0, 0, 1)

    @property
    def is_affine(self) -> bool:
        return self.c == 0

    @property
    def is_identity(self) -> bool:
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def quadruple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def apply_code(self, u: int) -> int:
        """Action on a point code (q = infinity)."""
        f = self.field
        q = f.q
        if u == q:
            if self.c == 0:
                return q
            return f.mul_enc(self.a, f.inv_enc(self.c))
        den = f.add_enc(f.mul_enc(self.c, u), self.d)
        if den == 0:
            return q
        num = f.add_enc(f.mul_enc(self.a, u), self.b)
        return f.mul_enc(num, f.inv_enc(den))

    def apply(self, u: PPoint) -> PPoint:
        if u.field != self.field:
            raise FieldMismatch("point from a different field")
        return PPoint(self.field, self.apply_code(u.code))

    __call__ = apply

    def compose(self, other: "MoebiusTransform") -> "MoebiusTransform":
        """self after other (matrix product)."""
        if other.field != self.field:
            raise FieldMismatch("transforms over different fields")
        f = self.field
        mul, add = f.mul_enc, f.add_enc
        a = add(mul(self.a, other.a), mul(self.b, other.c))
        b = add(mul(self.a, other.b), mul(self.b, other.d))
        c = add(mul(self.c, other.a), mul(self.d, other.c))
        d = add(mul(self.c, other.b), mul(self.d, other.d))
        return MoebiusTransform(f, a, b, c, d)

    def inverse(self) -> "MoebiusTransform":
        f = self.field
        return MoebiusTransform(f, self.d, f.neg_enc(self.b), f.neg_enc(self.c), self.a)

    def order(self) -> int:
        """Least n >= 1 with the n-fold composite equal to the identity."""
        cap = self.field.q * (self.field.q**2 - 1)
        cur = self
        n = 1
        while not cur.is_identity:
            cur = cur.compose(self)
            n += 1
            if n > cap:
                raise RuntimeError("order iteration exceeded the group order")
        return n

    def __eq__(self, other):
        return (isinstance(other, MoebiusTransform) and other.field == self.field
                and other.quadruple() == self.quadruple())

    def __hash__(self):
        return hash((self.field.p, self.field.m) + self.quadruple())

    def __repr__(self):
        return f"({self.a}x + {self.b})/({self.c}x + {self.d})"

    def to_json(self) -> list[int]:
        return [self.a, self.b, self.c, self.d]

    @staticmethod
    def from_json(fld: Field, data) -> "MoebiusTransform":
        a, b, c, d = (int(v) for v in data)
        return MoebiusTransform(fld, a, b, c, d)


@dataclass(frozen=True)
class OrbitCensus:
    """Partition of the projective line under the cyclic group of one transform."""

    field: Field
    group_order: int
    orbits: tuple[tuple[PPoint, ...], ...]  # sorted by (size, smallest member)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)

    @property
    def short_count(self) -> int:
        return sum(1 for o in self.orbits if len(o) < self.group_order)

    @property
    def long_count(self) -> int:
        return len(self.orbits) - self.short_count

    def validate(self):
        q = self.field.q
        assert sum(self.sizes) == q + 1, "orbits must partition the projective line"
        assert all(self.group_order % s == 0 for s in self.sizes), "orbit sizes must divide the group order"


def orbits(phi: MoebiusTransform) -> OrbitCensus:
    """Orbit census of the cyclic group generated by phi."""
    fld = phi.field
    q = fld.q
    n = phi.order()
    seen = [False] * (q + 1)
    blocks = []
    for start in range(q + 1):
        if seen[start]:
            continue
        block = []
        u = start
        while not seen[u]:
            seen[u] = True
            block.append(u)
            u = phi.apply_code(u)
        blocks.append(sorted(block))
    blocks.sort(key=lambda blk: (len(blk), blk[0]))
    census = OrbitCensus(fld, n, tuple(tuple(PPoint(fld, u) for u in blk) for blk in blocks))
    census.validate()
    return census


def scan_transforms(fld: Field):
    """All q^3 - q normal forms in ascending (a, b, c, d) encoding order."""
    q = fld.q
    for b in range(1, q):  # a = 0 forces c nonzero; normal form c = 1
        for d in range(q):
            yield MoebiusTransform(fld, 0, b, 1, d)
    for b in range(q):  # a = 1
        for c in range(q):
            for d in range(q):
                if fld.sub_enc(d, fld.mul_enc(b, c)) != 0:
                    yield MoebiusTransform(fld, 1, b, c, d)


def elements_of_order(fld: Field, n: int, limit: int | None = None) -> list[MoebiusTransform]:
    """Up to `limit` transforms of exact order n, in canonical scan order."""
    if n < 2:
        raise ValueError("order filter requires n >= 2")
    out = []
    for phi in scan_transforms(fld):
        if phi.order() == n:
            out.append(phi)
            if limit is not None and len(out) >= limit:
                break
    return out
