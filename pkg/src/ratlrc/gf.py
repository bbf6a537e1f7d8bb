"""Exact arithmetic for prime fields F_p and extension fields GF(p^m).

Elements are encoded as integers: an element with polynomial coordinates
(c_0, ..., c_{m-1}) over F_p has enc = sum c_i * p^i, a bijection onto
{0..q-1}.  All ordering, tie-breaking and serialization downstream uses
this encoding.  The modulus of an extension field is the lexicographically
smallest monic irreducible of its degree (comparing (c_0, c_1, ...)), so
two runs over the "same" field agree bit for bit.

Fields up to TABLE_CAP elements carry dense add/mul tables (numpy) plus
list-of-list views used by the pure-Python kernels.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import CapExceeded, FieldMismatch

Q_CAP = 2**31
TABLE_CAP = 1024
FACTOR_DEGREE_CAP = 16
FACTOR_ENUM_CAP = 10**6


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factor_int(n: int) -> list[int]:
    """Distinct prime factors by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# polynomial arithmetic over F_p on plain coefficient lists (constant first);
# used for the modulus search and as the slow path for big extension fields
# ---------------------------------------------------------------------------

def _pstrip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pstrip(out)


def _pdivmod(a, b, p):
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _pstrip(rem)
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * (len(rem) - db)
    while len(rem) - 1 >= db and rem:
        if rem[-1]:
            f = rem[-1] * inv_lead % p
            off = len(rem) - 1 - db
            quo[off] = f
            for i, bi in enumerate(b):
                rem[off + i] = (rem[off + i] - f * bi) % p
        rem.pop()
    return _pstrip(quo), _pstrip(rem)


def _pmod(a, mod, p):
    return _pdivmod(a, mod, p)[1]


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _pstrip(out)


def _ppowmod(base, e: int, mod, p):
    result = [1]
    base = _pmod(base, mod, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), mod, p)
        base = _pmod(_pmul(base, base, p), mod, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _irreducible(coeffs, p: int) -> bool:
    """Rabin test for a monic polynomial over F_p (coeffs constant first)."""
    m = len(coeffs) - 1
    x = [0, 1]
    if _ppowmod(x, p**m, coeffs, p) != _pmod(x, coeffs, p):
        return False
    for ell in _factor_int(m):
        xe = _ppowmod(x, p ** (m // ell), coeffs, p)
        g = _pgcd(coeffs, _psub(xe, x, p), p)
        if len(g) - 1 >= 1:
            return False
    return True


def _canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over F_p."""
    if m == 1:
        return (0, 1)
    # c_0 = 0 gives the factor x, so start at 1; iterate (c_0, c_1, ...) in lex order
    counters = [1] + [0] * (m - 1)
    while True:
        coeffs = tuple(counters) + (1,)
        if _irreducible(list(coeffs), p):
            return coeffs
        i = m - 1
        while i >= 0:
            counters[i] += 1
            if counters[i] < p:
                break
            counters[i] = 0
            i -= 1
        if i < 0:
            raise RuntimeError(f"no irreducible of degree {m} over F_{p}")


class FieldTables:
    """Dense lookup tables for a small field, shared by all kernels."""

    __slots__ = ("q", "p", "m", "add", "mul", "neg", "inv", "exp", "log", "_lists")

    def __init__(self, q, p, m, add, mul, neg, inv, exp, log):
        self.q, self.p, self.m = q, p, m
        self.add, self.mul = add, mul
        self.neg, self.inv = neg, inv
        self.exp, self.log = exp, log
        self._lists = None

    def as_lists(self):
        """(add rows, mul rows, neg, inv) as nested Python lists, cached."""
        if self._lists is None:
            self._lists = (
                self.add.tolist(),
                self.mul.tolist(),
                self.neg.tolist(),
                self.inv.tolist(),
            )
        return self._lists


class Field:
    """A fixed description of GF(p^m) plus arithmetic on integer-encoded elements."""

    __slots__ = ("p", "m", "q", "modulus", "tables", "_pp", "_addl", "_mull", "_negl", "_invl")

    def __init__(self, p: int, m: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        q = p**m
        if q > Q_CAP:
            raise CapExceeded(f"field size {q} exceeds cap {Q_CAP}")
        self.p, self.m, self.q = p, m, q
        if modulus is None:
            modulus = _canonical_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if m > 1 and not _irreducible(list(modulus), p):
            raise ValueError("modulus is reducible")
        self.modulus = modulus
        self._pp = tuple(p**i for i in range(m + 1))
        self.tables = self._build_tables() if q <= TABLE_CAP else None
        if self.tables is not None:
            self._addl, self._mull, self._negl, self._invl = self.tables.as_lists()
        else:
            self._addl = self._mull = self._negl = self._invl = None

    # -- construction of the lookup tables --------------------------------

    def _build_tables(self) -> FieldTables:
        p, m, q = self.p, self.m, self.q
        idx = np.arange(q, dtype=np.int64)
        if m == 1:
            add = (idx[:, None] + idx[None, :]) % p
            mul = (idx[:, None] * idx[None, :]) % p
            neg = (-idx) % p
        else:
            digits = np.stack([(idx // p**j) % p for j in range(m)], axis=1)
            pv = np.array([p**j for j in range(m)], dtype=np.int64)
            add = ((digits[:, None, :] + digits[None, :, :]) % p) @ pv
            neg = ((-digits) % p) @ pv
            mul = None  # filled below via exp/log
        # multiplicative structure via a generator
        g = self._find_generator()
        exp = np.zeros(q - 1, dtype=np.int64)
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            acc = self._mul_slow(acc, g)
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1)
        log[0] = -1
        if mul is None:
            lg = log.copy()
            lg[0] = 0
            mul = exp[(lg[:, None] + lg[None, :]) % (q - 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp[(q - 1 - log[1:]) % (q - 1)]
        to32 = lambda a: np.ascontiguousarray(a, dtype=np.int32)
        return FieldTables(q, p, m, to32(add), to32(mul), to32(neg), to32(inv),
                           to32(exp), to32(log))

    def _find_generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        primes = _factor_int(q - 1)
        for cand in range(2, q):
            if all(self._pow_slow(cand, (q - 1) // ell) != 1 for ell in primes):
                return cand
        raise RuntimeError("no multiplicative generator found")

    # -- slow enc arithmetic (any field size) ------------------------------

    def _digits(self, e: int) -> list[int]:
        p = self.p
        return [(e // self._pp[i]) % p for i in range(self.m)]

    def _from_digits(self, d) -> int:
        return sum(int(c) * self._pp[i] for i, c in enumerate(d))

    def _add_slow(self, x, y):
        if self.m == 1:
            return (x + y) % self.p
        p = self.p
        return self._from_digits([(a + b) % p for a, b in zip(self._digits(x), self._digits(y))])

    def _neg_slow(self, x):
        if self.m == 1:
            return (-x) % self.p
        p = self.p
        return self._from_digits([(-a) % p for a in self._digits(x)])

    def _mul_slow(self, x, y):
        if self.m == 1:
            return (x * y) % self.p
        prod = _pmul(_pstrip(self._digits(x)), _pstrip(self._digits(y)), self.p)
        return self._from_digits(_pmod(prod, list(self.modulus), self.p))

    def _inv_slow(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.m == 1:
            return pow(x, self.p - 2, self.p)
        # extended Euclid over F_p[x]: maintain t_i * x == r_i (mod modulus)
        p = self.p
        r0, r1 = list(self.modulus), _pstrip(self._digits(x))
        t0, t1 = [], [1]
        while r1:
            quo, rem = _pdivmod(r0, r1, p)
            r0, r1 = r1, rem
            t0, t1 = t1, _psub(t0, _pmul(quo, t1, p), p)
        c = pow(r0[0], p - 2, p)  # r0 is a nonzero constant (modulus irreducible)
        return self._from_digits([v * c % p for v in t0])

    def _pow_slow(self, x, e):
        if e == 0:
            return 1
        if e < 0:
            x, e = self._inv_slow(x), -e
        out, base = 1, x
        while e:
            if e & 1:
                out = self._mul_slow(out, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return out

    # -- fast enc arithmetic (public, table-backed when available) ---------

    def add_enc(self, x: int, y: int) -> int:
        if self._addl is not None:
            return self._addl[x][y]
        return self._add_slow(x, y)

    def sub_enc(self, x: int, y: int) -> int:
        if self._addl is not None:
            return self._addl[x][self._negl[y]]
        return self._add_slow(x, self._neg_slow(y))

    def neg_enc(self, x: int) -> int:
        return self._negl[x] if self._negl is not None else self._neg_slow(x)

    def mul_enc(self, x: int, y: int) -> int:
        if self._mull is not None:
            return self._mull[x][y]
        return self._mul_slow(x, y)

    def inv_enc(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._invl is not None:
            return self._invl[x]
        return self._inv_slow(x)

    def pow_enc(self, x: int, e: int) -> int:
        if e == 0:
            return 1  # includes 0^0 = 1 by convention
        if self._mull is None:
            return self._pow_slow(x, e)
        if e < 0:
            x, e = self.inv_enc(x), -e
        if x == 0:
            return 0
        t = self.tables
        return int(t.exp[(int(t.log[x]) * e) % (self.q - 1)])

    # -- element / iteration API -------------------------------------------

    def element(self, value) -> "FieldElement":
        """Coerce an encoding, coefficient sequence, or element into this field."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element from a different field")
            return value
        if isinstance(value, (list, tuple)):
            if len(value) > self.m:
                raise ValueError("too many coefficients")
            enc = sum((int(c) % self.p) * self._pp[i] for i, c in enumerate(value))
            return FieldElement(self, enc)
        enc = int(value)
        if self.m == 1:
            enc %= self.p
        if not 0 <= enc < self.q:
            raise ValueError(f"encoding {value} out of range for field of size {self.q}")
        return FieldElement(self, enc)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        """All q elements in ascending canonical encoding."""
        return [FieldElement(self, e) for e in range(self.q)]

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p and self.m == other.m
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"Field(p={self.p}, m={self.m})" if self.m > 1 else f"Field(p={self.p})"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(data: dict) -> "Field":
        fld = field(int(data["p"]), int(data["m"]))
        if tuple(int(c) for c in data["modulus"]) != fld.modulus:
            raise ValueError("non-canonical modulus in serialized field")
        return fld


@lru_cache(maxsize=None)
def field(p: int, m: int = 1) -> Field:
    """Canonical field object for GF(p^m); cached so equal parameters share tables."""
    return Field(p, m)


class FieldElement:
    """An element of a Field, ordered and serialized by its integer encoding."""

    __slots__ = ("field", "enc")

    def __init__(self, fld: Field, enc: int):
        self.field = fld
        self.enc = enc

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(self.field._digits(self.enc))

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            raise FieldMismatch(f"cannot combine field element with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch("elements from different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.add_enc(self.enc, other.enc))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.sub_enc(self.enc, other.enc))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul_enc(self.enc, other.enc))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_enc(self.enc))

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.field, self.field.mul_enc(self.enc, self.field.inv_enc(other.enc)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_enc(self.enc))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_enc(self.enc, int(e)))

    def __eq__(self, other):
        return (isinstance(other, FieldElement) and other.field == self.field
                and other.enc == self.enc)

    def __lt__(self, other):
        self._check(other)
        return self.enc < other.enc

    def __le__(self, other):
        self._check(other)
        return self.enc <= other.enc

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.enc))

    def __bool__(self):
        return self.enc != 0

    def __repr__(self):
        return str(self.enc)


# ---------------------------------------------------------------------------
# dense polynomials over a Field
# ---------------------------------------------------------------------------

def _coerce_encs(fld: Field, coeffs) -> tuple[int, ...]:
    out = []
    for c in coeffs:
        if isinstance(c, FieldElement):
            if c.field != fld:
                raise FieldMismatch("coefficient from a different field")
            out.append(c.enc)
        else:
            out.append(fld.element(c).enc)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class Polynomial:
    """Dense polynomial, coefficients constant-term first as encodings."""

    __slots__ = ("field", "coeffs")

    def __init__(self, fld: Field, coeffs=()):
        self.field = fld
        self.coeffs = _coerce_encs(fld, coeffs)

    @staticmethod
    def x(fld: Field) -> "Polynomial":
        return Polynomial(fld, (0, 1))

    @staticmethod
    def from_roots(fld: Field, roots) -> "Polynomial":
        out = Polynomial(fld, (1,))
        for r in roots:
            enc = fld.element(r).enc
            out = out * Polynomial(fld, (fld.neg_enc(enc), 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # zero polynomial -> -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _chk(self, other: "Polynomial"):
        if not isinstance(other, Polynomial) or other.field != self.field:
            raise FieldMismatch("polynomials over different fields")

    def __add__(self, other):
        self._chk(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = f.add_enc(out[i], c)
        while out and out[-1] == 0:
            out.pop()
        return Polynomial(f, out)

    def __neg__(self):
        f = self.field
        return Polynomial(f, [f.neg_enc(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._chk(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial(f)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = f.add_enc(out[i + j], f.mul_enc(ai, bj))
        return Polynomial(f, out)

    def scale(self, enc: int) -> "Polynomial":
        f = self.field
        return Polynomial(f, [f.mul_enc(c, enc) for c in self.coeffs])

    def divmod(self, other: "Polynomial"):
        self._chk(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dv = other.coeffs
        dq = len(rem) - len(dv)
        if dq < 0:
            return Polynomial(f), self
        quo = [0] * (dq + 1)
        inv_lead = f.inv_enc(dv[-1])
        for k in range(dq, -1, -1):
            top = rem[k + len(dv) - 1]
            if top:
                c = f.mul_enc(top, inv_lead)
                quo[k] = c
                for i, d in enumerate(dv):
                    rem[k + i] = f.sub_enc(rem[k + i], f.mul_enc(c, d))
        while rem and rem[-1] == 0:
            rem.pop()
        return Polynomial(f, quo), Polynomial(f, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic greatest common divisor."""
        self._chk(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        if a.is_zero():
            return a
        return a.monic()

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.lead() == 1:
            return self
        return self.scale(self.field.inv_enc(self.lead()))

    def derivative(self) -> "Polynomial":
        f = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(f.mul_enc(self.coeffs[i], i % f.p))
        return Polynomial(f, out)

    def eval_enc(self, x: int) -> int:
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add_enc(f.mul_enc(acc, x), c)
        return acc

    def __call__(self, x) -> FieldElement:
        return FieldElement(self.field, self.eval_enc(self.field.element(x).enc))

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.coeffs))

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(reversed(parts))

    def factor(self) -> list[tuple["Polynomial", int]]:
        """Factor into (monic irreducible, multiplicity) pairs by trial division.

        Candidate divisors are enumerated degree by degree in canonical
        coefficient order; the enumeration budget fails loudly when the
        field is too large for this strategy.
        """
        if self.is_zero():
            raise ValueError("cannot factor the zero polynomial")
        if self.degree > FACTOR_DEGREE_CAP:
            raise CapExceeded(f"factor degree {self.degree} exceeds cap {FACTOR_DEGREE_CAP}")
        f = self.field
        rem = self.monic()
        found: list[tuple[Polynomial, int]] = []
        k = 1
        budget = 0
        while rem.degree >= 1 and 2 * k <= rem.degree:
            budget += f.q**k
            if budget > FACTOR_ENUM_CAP:
                raise CapExceeded("factorization enumeration too large for this field")
            for tail in _lex_tuples(f.q, k):
                cand = Polynomial(f, tail + (1,))
                quo, r = rem.divmod(cand)
                if not r.is_zero():
                    continue
                mult = 0
                while r.is_zero():
                    mult += 1
                    rem = quo
                    quo, r = rem.divmod(cand)
                found.append((cand, mult))
                if 2 * k > rem.degree:
                    break
            k += 1
        if rem.degree >= 1:
            found.append((rem, 1))
        found.sort(key=lambda t: t[0].sort_key())
        return found


def _lex_tuples(q: int, k: int):
    """All length-k tuples over {0..q-1}, first position most significant."""
    counters = [0] * k
    while True:
        yield tuple(counters)
        i = k - 1
        while i >= 0:
            counters[i] += 1
            if counters[i] < q:
                break
            counters[i] = 0
            i -= 1
        if i < 0:
            return
