"""Locally recoverable codes built on certified rational maps.

A certificate with l recovery sets of size r+1 yields an (n, k, r) code
with n = (r+1)l for any k that is a multiple of r with k/r <= l.  Encoding
evaluates, on each recovery set, a polynomial of degree < r whose
coefficients mix the message through powers of that set's constant
1/(t - b); the symbol at the point at infinity is the top coefficient.
Repairing one erased symbol reads only the r other symbols of its group.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from math import ceil

from ._kernels import impl as _impl
from .errors import CapExceeded, FieldMismatch, MultipleErasures, NoErasure
from .gf import Field, FieldElement, Polynomial
from .goodfun import GoodnessCertificate, certify
from .projline import PPoint

DISTANCE_ENUM_CAP = 10**6


@dataclass(frozen=True)
class LrcCode:
    """Complete description of one code: certificate, dimension, encoder data."""

    cert: GoodnessCertificate  # certificate of the map actually evaluated
    k: int
    b: int              # encoder constant, avoiding the image of the map
    inverted: bool      # map was replaced by its reciprocal to free up b
    layout: tuple[PPoint, ...]      # group-contiguous; infinity last in its group
    group_of: tuple[int, ...]       # coordinate -> group index
    d_values: tuple[int, ...]       # per group: 1/(t - b), with 1/(inf - b) = 0

    @property
    def field(self) -> Field:
        return self.cert.field

    @property
    def r(self) -> int:
        return self.cert.locality

    @property
    def n(self) -> int:
        return len(self.layout)

    @property
    def l(self) -> int:
        return self.cert.l

    def positions_of_group(self, g: int) -> list[int]:
        return [i for i, gi in enumerate(self.group_of) if gi == g]

    def singleton_value(self) -> int:
        return self.n - self.k - ceil(self.k / self.r) + 2

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "h": self.cert.map.to_json(),
            "inverted": self.inverted,
            "r": self.r,
            "k": self.k,
            "b": self.b,
            "groups": [
                {"t": t.to_json(), "points": [u.to_json() for u in pts]}
                for t, pts in self.cert.groups
            ],
        }


def _invert_certificate(cert: GoodnessCertificate) -> GoodnessCertificate:
    """Certificate of 1/h: same recovery sets, reciprocal values."""
    fld = cert.field
    q = fld.q
    inv_code = lambda t: q if t == 0 else (0 if t == q else fld.inv_enc(t))
    groups = sorted(
        ((PPoint(fld, inv_code(t.code)), pts) for t, pts in cert.groups),
        key=lambda g: g[0].code,
    )
    out = GoodnessCertificate(cert.map.inverted(), cert.locality, tuple(groups))
    out.validate()
    return out


def build_code(cert: GoodnessCertificate, k: int) -> LrcCode:
    """Pick the encoder constant, fix the coordinate layout, derive group data."""
    cert.validate()
    r = cert.locality
    if r < 1:
        raise ValueError("locality must be at least 1")
    if k < 1 or k % r != 0:
        raise ValueError(f"k = {k} is not a positive multiple of r = {r}")
    if k // r > cert.l:
        raise ValueError(f"k/r = {k // r} exceeds the number of recovery sets l = {cert.l}")
    fld = cert.field
    q = fld.q
    image = set(cert.map.images())
    inverted = False
    if all(v in image for v in range(q)):
        # the finite line is covered; the reciprocal map frees up a constant
        cert = _invert_certificate(cert)
        image = set(cert.map.images())
        inverted = True
    b = next(v for v in range(q) if v not in image)
    layout: list[PPoint] = []
    group_of: list[int] = []
    d_values: list[int] = []
    for gi, (t, pts) in enumerate(cert.groups):
        for u in pts:  # sorted ascending, infinity (code q) last
            layout.append(u)
            group_of.append(gi)
        d_values.append(0 if t.is_infinity else fld.inv_enc(fld.sub_enc(t.code, b)))
    assert len(set(d_values)) == len(d_values), "group constants must be pairwise distinct"
    return LrcCode(cert, k, b, inverted, tuple(layout), tuple(group_of), tuple(d_values))


def code_from_json(data: dict) -> LrcCode:
    fld = Field.from_json(data["field"])
    groups = tuple(
        (PPoint.of(fld, g["t"]), tuple(PPoint.of(fld, u) for u in g["points"]))
        for g in data["groups"]
    )
    from .ratfun import RationalMap
    cert = GoodnessCertificate(RationalMap.from_json(fld, data["h"]), int(data["r"]), groups)
    cert.validate()
    code = build_code(cert, int(data["k"]))
    rebuilt = LrcCode(cert, code.k, code.b, bool(data["inverted"]), code.layout,
                      code.group_of, code.d_values)
    if rebuilt.b != int(data["b"]):
        raise ValueError("stored encoder constant does not match the canonical choice")
    return rebuilt


@dataclass(frozen=True)
class Codeword:
    """Symbols in layout order; None marks an erased coordinate."""

    field: Field
    symbols: tuple[int | None, ...]

    def weight(self) -> int:
        return sum(1 for s in self.symbols if s)

    def erased_positions(self) -> list[int]:
        return [i for i, s in enumerate(self.symbols) if s is None]

    def elements(self) -> list[FieldElement | None]:
        return [None if s is None else FieldElement(self.field, s) for s in self.symbols]

    def to_json(self) -> list:
        return [None if s is None else s for s in self.symbols]

    def to_text(self) -> str:
        return " ".join("?" if s is None else str(s) for s in self.symbols)


def codeword_from_json(fld: Field, data) -> Codeword:
    syms = []
    for v in data:
        if v is None:
            syms.append(None)
        else:
            v = int(v)
            if not 0 <= v < fld.q:
                raise ValueError(f"symbol {v} out of range")
            syms.append(v)
    return Codeword(fld, tuple(syms))


def codeword_from_text(fld: Field, text: str) -> Codeword:
    return codeword_from_json(fld, [None if tok == "?" else int(tok) for tok in text.split()])


def codeword_to_frame(word: Codeword) -> bytes:
    """Binary frame: u32 little-endian length, then fixed-width little-endian symbols."""
    if word.erased_positions():
        raise ValueError("binary frames cannot carry erasures")
    width = _symbol_width(word.field.q)
    out = [struct.pack("<I", len(word.symbols))]
    for s in word.symbols:
        out.append(int(s).to_bytes(width, "little"))
    return b"".join(out)


def codeword_from_frame(fld: Field, blob: bytes) -> Codeword:
    (n,) = struct.unpack_from("<I", blob, 0)
    width = _symbol_width(fld.q)
    if len(blob) != 4 + n * width:
        raise ValueError("frame length mismatch")
    syms = tuple(int.from_bytes(blob[4 + i * width:4 + (i + 1) * width], "little")
                 for i in range(n))
    if any(s >= fld.q for s in syms):
        raise ValueError("symbol out of range in frame")
    return Codeword(fld, syms)


def _symbol_width(q: int) -> int:
    bits = max(1, (q - 1).bit_length())
    return (bits + 7) // 8


# ---------------------------------------------------------------------------
# encoding
# ---------------------------------------------------------------------------


def _message_encs(code: LrcCode, message) -> list[int]:
    fld = code.field
    msg = list(message)
    if len(msg) != code.k:
        raise ValueError(f"message length {len(msg)} != k = {code.k}")
    return [fld.element(v).enc for v in msg]


def _group_coefficients(code: LrcCode, msg: list[int]) -> list[list[int]]:
    """Per group, the r polynomial coefficients sum_j a[i][j] * d^j."""
    fld = code.field
    r, t = code.r, code.k // code.r
    coeffs = []
    for d in code.d_values:
        dpow = [fld.pow_enc(d, j) for j in range(t)]  # includes 0^0 = 1
        coeffs.append([
            _dot(fld, [msg[i * t + j] for j in range(t)], dpow)
            for i in range(r)
        ])
    return coeffs


def _dot(fld: Field, xs, ys) -> int:
    acc = 0
    for x, y in zip(xs, ys):
        acc = fld.add_enc(acc, fld.mul_enc(x, y))
    return acc


def encode(code: LrcCode, message) -> Codeword:
    """Evaluate the message's group polynomials over the layout."""
    fld = code.field
    msg = _message_encs(code, message)
    coeffs = _group_coefficients(code, msg)
    out = []
    for pos, u in enumerate(code.layout):
        cf = coeffs[code.group_of[pos]]
        if u.is_infinity:
            out.append(cf[-1])  # coefficient of x^(r-1)
        else:
            acc = 0
            for c in reversed(cf):
                acc = fld.add_enc(fld.mul_enc(acc, u.code), c)
            out.append(acc)
    return Codeword(fld, tuple(out))


def erase(word: Codeword, positions) -> Codeword:
    syms = list(word.symbols)
    for pos in positions:
        if not 0 <= pos < len(syms):
            raise ValueError(f"position {pos} out of range")
        syms[pos] = None
    return Codeword(word.field, tuple(syms))


# ---------------------------------------------------------------------------
# local repair
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RepairTrace:
    position: int
    group: int
    read_positions: tuple[int, ...]


def _interpolate(fld: Field, pairs) -> Polynomial:
    """Lagrange interpolation through (x, y) encoding pairs with distinct x."""
    out = Polynomial(fld)
    for i, (xi, yi) in enumerate(pairs):
        if yi == 0:
            continue
        basis = Polynomial(fld, (1,))
        denom = 1
        for j, (xj, _yj) in enumerate(pairs):
            if i == j:
                continue
            basis = basis * Polynomial(fld, (fld.neg_enc(xj), 1))
            denom = fld.mul_enc(denom, fld.sub_enc(xi, xj))
        out = out + basis.scale(fld.mul_enc(yi, fld.inv_enc(denom)))
    return out


def repair_with_trace(code: LrcCode, word: Codeword) -> tuple[FieldElement, RepairTrace]:
    """Recover the single erased symbol, reading only its group."""
    if word.field != code.field:
        raise FieldMismatch("codeword from a different field")
    if len(word.symbols) != code.n:
        raise ValueError("codeword length mismatch")
    erased = word.erased_positions()
    if not erased:
        raise NoErasure("nothing to repair")
    if len(erased) > 1:
        raise MultipleErasures(f"{len(erased)} erasures; local repair handles one")
    pos = erased[0]
    fld = code.field
    r = code.r
    g = code.group_of[pos]
    members = code.positions_of_group(g)
    reads = tuple(i for i in members if i != pos)
    assert len(reads) == r
    inf_pos = next((i for i in members if code.layout[i].is_infinity), None)

    if inf_pos is None:
        pairs = [(code.layout[i].code, word.symbols[i]) for i in reads]
        poly = _interpolate(fld, pairs)
        value = poly.eval_enc(code.layout[pos].code)
    elif pos == inf_pos:
        pairs = [(code.layout[i].code, word.symbols[i]) for i in reads]
        poly = _interpolate(fld, pairs)
        cs = poly.coeffs
        value = cs[r - 1] if len(cs) > r - 1 else 0
    else:
        c_inf = word.symbols[inf_pos]
        pairs = []
        for i in reads:
            if i == inf_pos:
                continue
            x = code.layout[i].code
            lead = fld.mul_enc(c_inf, fld.pow_enc(x, r - 1))
            pairs.append((x, fld.sub_enc(word.symbols[i], lead)))
        poly = _interpolate(fld, pairs)  # degree <= r-2 through r-1 points
        xv = code.layout[pos].code
        value = fld.add_enc(poly.eval_enc(xv), fld.mul_enc(c_inf, fld.pow_enc(xv, r - 1)))
    return FieldElement(fld, value), RepairTrace(pos, g, reads)


def repair(code: LrcCode, word: Codeword) -> FieldElement:
    return repair_with_trace(code, word)[0]


# ---------------------------------------------------------------------------
# dimension, distance, degree budget
# ---------------------------------------------------------------------------


def generator_matrix(code: LrcCode) -> list[list[int]]:
    rows = []
    for i in range(code.k):
        msg = [0] * code.k
        msg[i] = 1
        rows.append(list(encode(code, msg).symbols))
    return rows


def _rank(fld: Field, rows: list[list[int]]) -> int:
    rows = [list(r) for r in rows]
    m = len(rows)
    n = len(rows[0]) if rows else 0
    rank = 0
    col = 0
    while rank < m and col < n:
        piv = next((i for i in range(rank, m) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = fld.inv_enc(rows[rank][col])
        rows[rank] = [fld.mul_enc(v, inv) for v in rows[rank]]
        for i in range(m):
            if i != rank and rows[i][col]:
                f = fld.neg_enc(rows[i][col])
                rows[i] = [fld.add_enc(a, fld.mul_enc(f, bb)) for a, bb in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def dimension_check(code: LrcCode) -> int:
    """Rank of the generator matrix; equals k when the encoder is injective."""
    return _rank(code.field, generator_matrix(code))


def is_codeword(code: LrcCode, word: Codeword) -> bool:
    if word.erased_positions():
        raise ValueError("cannot test membership with erasures")
    rows = generator_matrix(code)
    return _rank(code.field, rows + [list(word.symbols)]) == _rank(code.field, rows)


@dataclass(frozen=True)
class DistanceReport:
    distance: int
    singleton_value: int  # n - k - ceil(k/r) + 2
    optimal: bool


def min_distance(code: LrcCode) -> DistanceReport:
    """Exhaustive minimum Hamming weight over the nonzero codewords."""
    fld = code.field
    if fld.q**code.k > DISTANCE_ENUM_CAP:
        raise CapExceeded(
            f"q^k = {fld.q ** code.k} exceeds {DISTANCE_ENUM_CAP}; "
            "use dimension_check for the rank-only verification")
    if fld.tables is None:
        raise CapExceeded("distance enumeration needs a table-backed field")
    d = _impl.min_weight(fld.tables, generator_matrix(code))
    s = code.singleton_value()
    return DistanceReport(d, s, d == s)


def degree_bound_check(code: LrcCode) -> bool:
    """Encoding polynomials must have degree at most n-2 so distance survives."""
    r, k, t = code.r, code.k, code.k // code.r
    deg = (r + 1) * (t - 1) + r - 1
    assert deg == k + t - 2
    return deg <= code.n - 2
