"""Exhaustive verification sweeps over ranges of fields.

These drive both the `verify` CLI command and the acceptance tests: split
counts of the cubic and quartic families for every parameter value, the
full scan of cyclic transform subgroups with its orbit/fiber cross-checks,
and the code-level distance/locality checks on a fixed corpus.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field as dc_field
from math import ceil, gcd

from ._kernels import impl as _impl
from .gf import Field, field
from .goodfun import certify, gal1, gal1_generator, gal2, gal2_generator, tamo_barg_multiplicative
from .lrc import LrcCode, build_code, encode, erase, min_distance, dimension_check, repair_with_trace
from .errors import CapExceeded


def prime_powers(lo: int, hi: int) -> list[tuple[int, int, int]]:
    """(q, p, m) for every prime power q in [lo, hi]."""
    out = []
    for q in range(max(2, lo), hi + 1):
        p = q
        d = 2
        while d * d <= q:
            if q % d == 0:
                p = d
                break
            d += 1
        m, t = 0, q
        while t % p == 0:
            t //= p
            m += 1
        if t == 1:
            out.append((q, p, m))
    return out


# ---------------------------------------------------------------------------
# split-count conformance of the explicit families
# ---------------------------------------------------------------------------


def gal1_expected(q: int) -> tuple[str, int]:
    if q % 3 == 0:
        return "q=3^m", q // 3
    if q % 3 == 1:
        return "q=1 mod 3", (q - 1) // 3
    return "q=2 mod 3", (q + 1) // 3


def gal2_expected(q: int) -> tuple[str, int]:
    if q % 4 == 1:
        return "q=1 mod 4", (q - 1) // 4
    return "q=3 mod 4", (q + 1) // 4


@dataclass
class FamilyReport:
    q: int
    family: str
    branch: str
    expected: int
    params_checked: int
    count_ok: bool
    bounds_ok: bool
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.count_ok and self.bounds_ok


def _orbit_census_counts(fld: Field, quad) -> tuple[int, int]:
    """(short orbit count, total orbits) for the cyclic group of one transform."""
    reps = _impl.orbit_reps(fld.tables, *quad)
    sizes: dict[int, int] = {}
    for rp in reps:
        sizes[rp] = sizes.get(rp, 0) + 1
    counts = list(sizes.values())
    n = max(counts)
    return sum(1 for s in counts if s < n), len(counts)


def _bounds_hold(q: int, n: int, short: int, split: int) -> bool:
    lower = -(-(2 * (q + 1) - n * short) // (2 * n))
    upper = (q + 1) // n
    if not lower <= split <= upper:
        return False
    if short == 0 or (short in (1, 2) and (q + 1) % n != 0):
        return split == upper
    return True


def family_conformance(fld: Field, family: str) -> FamilyReport:
    """Check split counts and bound membership for every nonzero parameter."""
    q = fld.q
    if family == "gal1":
        branch, expected = gal1_expected(q)
        build, generator, n = gal1, gal1_generator, 3
    elif family == "gal2":
        branch, expected = gal2_expected(q)
        build, generator, n = gal2, gal2_generator, 4
    else:
        raise ValueError(f"unknown family {family!r}")
    count_ok = True
    bounds_ok = True
    failures = []
    for wenc in range(1, q):
        h = build(fld, wenc)
        split = h.split_count()
        if split != expected:
            count_ok = False
            failures.append({"param": wenc, "split": split, "expected": expected})
        phi = generator(fld, wenc)
        short, _total = _orbit_census_counts(fld, phi.quadruple())
        if not _bounds_hold(q, n, short, split):
            bounds_ok = False
            failures.append({"param": wenc, "split": split, "short": short, "check": "bounds"})
    return FamilyReport(q, family, branch, expected, q - 1, count_ok, bounds_ok, failures)


# ---------------------------------------------------------------------------
# the exhaustive transform-subgroup scan (whole non-affine group)
# ---------------------------------------------------------------------------


@dataclass
class ScanReport:
    q: int
    elements: int            # non-affine transforms covered
    expected_elements: int   # q^2 (q-1)
    subgroups: int
    max_short_orbits: int
    orders: dict
    checks: dict             # per-criterion pass counters
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures and self.elements == self.expected_elements


def galois_scan(fld: Field, check_all_generators: bool | None = None,
                max_failures: int = 25) -> ScanReport:
    """Scan every cyclic subgroup generated by a non-affine transform and
    verify the construction, orbit, splitting and bound laws on each."""
    if fld.tables is None:
        raise CapExceeded("scan needs a table-backed field")
    if check_all_generators is None:
        # per-generator invariance re-checks are cheap only when compiled
        check_all_generators = _impl.__name__.endswith("_core")
    records, covered = _impl.galois_subgroup_scan(fld.tables, check_all_generators)
    q = fld.q
    checks = {name: 0 for name in (
        "construction", "invariance", "partition", "predicted_split",
        "short_orbit_bound", "orbit_count_law", "split_identity", "bounds")}
    failures = []
    orders: dict[int, int] = {}
    max_short = 0

    def fail(rec, what):
        if len(failures) < max_failures:
            failures.append({"phi": rec["generator"], "order": rec["order"], "check": what})
        else:
            failures.append("...")  # pragma: no cover

    for rec in records:
        n = rec["order"]
        orders[n] = orders.get(n, 0) + rec["generator_count"]
        sizes = rec["orbit_sizes"]
        short = sum(1 for s in sizes if s < n)
        max_short = max(max_short, short)
        split = rec["split_count"]

        if rec["nonaffine_ok"] and rec["coprime_ok"] and rec["degree_ok"] and rec["separable_ok"]:
            checks["construction"] += 1
        else:
            fail(rec, "construction")
        if rec["invariance_ok"]:
            checks["invariance"] += 1
        else:
            fail(rec, "invariance")
        if rec["partition_ok"]:
            checks["partition"] += 1
        else:
            fail(rec, "partition")

        if short == 0:
            predicted = (q + 1) // n if (q + 1) % n == 0 else -1
        elif short <= 3:
            predicted = -(-(q + 1) // n) - (1 if short in (1, 2) else 2)
        else:
            predicted = -1
        if split == predicted:
            checks["predicted_split"] += 1
        else:
            fail(rec, "predicted_split")

        if short <= 3:
            checks["short_orbit_bound"] += 1
        else:
            fail(rec, "short_orbit_bound")

        expected_orbits = -(-(q + 1) // n) + (1 if short in (2, 3) else 0)
        if len(sizes) == expected_orbits:
            checks["orbit_count_law"] += 1
        else:
            fail(rec, "orbit_count_law")

        if split * n == (q + 1) - sum(s for s in sizes if s < n):
            checks["split_identity"] += 1
        else:
            fail(rec, "split_identity")

        if _bounds_hold(q, n, short, split):
            checks["bounds"] += 1
        else:
            fail(rec, "bounds")

    return ScanReport(q, covered, q * q * (q - 1), len(records), max_short,
                      orders, checks, failures)


# ---------------------------------------------------------------------------
# fixed code corpus: distance and locality
# ---------------------------------------------------------------------------


CORPUS = (
    ("gal1", 5, 1, (2, 4)),
    ("gal2", 7, 1, (3, 6)),
    ("gal2", 11, 1, (3, 6, 9)),
    ("tb-mult", 13, 3, (3, 6)),
)


def corpus_codes() -> list[tuple[str, LrcCode]]:
    out = []
    for kind, q, param, ks in CORPUS:
        fld = field(q, 1)
        if kind == "gal1":
            cert = certify(gal1(fld, param))
        elif kind == "gal2":
            cert = certify(gal2(fld, param))
        else:
            cert = certify(tamo_barg_multiplicative(fld, param))
        for k in ks:
            out.append((f"{kind} q={q} k={k}", build_code(cert, k)))
    return out


@dataclass
class CodeCheck:
    label: str
    n: int
    k: int
    r: int
    distance: int | None     # None when the enumeration cap applies
    singleton: int
    optimal: bool | None
    rank: int
    capped: bool


def distance_report(codes=None) -> list[CodeCheck]:
    out = []
    for label, code in (codes or corpus_codes()):
        rank = dimension_check(code)
        try:
            rep = min_distance(code)
            out.append(CodeCheck(label, code.n, code.k, code.r, rep.distance,
                                 rep.singleton_value, rep.optimal, rank, False))
        except CapExceeded:
            out.append(CodeCheck(label, code.n, code.k, code.r, None,
                                 code.singleton_value(), None, rank, True))
    return out


def locality_roundtrip(code: LrcCode, messages: int, seed: int) -> int:
    """Repair every single erasure of random codewords; returns repair count."""
    rng = random.Random(seed)
    fld = code.field
    repairs = 0
    for _ in range(messages):
        msg = [rng.randrange(fld.q) for _ in range(code.k)]
        word = encode(code, msg)
        for pos in range(code.n):
            got, trace = repair_with_trace(code, erase(word, [pos]))
            if got.enc != word.symbols[pos]:
                raise AssertionError(f"repair mismatch at {pos}")
            if len(trace.read_positions) != code.r:
                raise AssertionError("repair read the wrong number of symbols")
            if any(code.group_of[i] != trace.group for i in trace.read_positions):
                raise AssertionError("repair read outside the group")
            repairs += 1
    return repairs


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("LRC_THREADS", "1")))
    except ValueError:
        return 1
