import random

import pytest

from ratlrc.errors import DegreeZero, Inseparable, ZeroDenominator
from ratlrc.gf import Polynomial, field
from ratlrc.goodfun import gal1, gal2
from ratlrc.projline import MoebiusTransform, PPoint, scan_transforms
from ratlrc.ratfun import RationalMap, rational_map, wronskian_in_xq

F5 = field(5, 1)
F7 = field(7, 1)


def test_reduction_and_monic():
    h = rational_map(Polynomial(F5, (0, 4, 1)), Polynomial(F5, (4, 1)))  # (x^2-x)/(x-1)
    assert h.num.coeffs == (0, 1) and h.den.coeffs == (1,)
    g = rational_map(Polynomial(F5, (1,)), Polynomial(F5, (0, 2)))  # 1/(2x)
    assert g.den.coeffs == (0, 1) and g.num.coeffs == (3,)


def test_construction_errors():
    with pytest.raises(ZeroDenominator):
        rational_map(Polynomial(F5, (1,)), Polynomial(F5))
    with pytest.raises(DegreeZero):
        rational_map(Polynomial(F5, (2,)), Polynomial(F5, (1,)))
    with pytest.raises(Inseparable):
        rational_map(Polynomial(F5, (0, 0, 0, 0, 0, 1)), Polynomial(F5, (1,)))  # x^5


def test_cubic_family_map_is_already_reduced():
    h = gal1(F5, 1)
    assert h.num.coeffs == (1, 2, 0, 1)
    assert h.den.coeffs == (0, 4, 1)


def test_wronskian_in_xq_is_diagnostic_only():
    f2 = field(2, 1)
    h = rational_map(Polynomial(f2, (1, 1, 0, 1)), Polynomial(f2, (0, 1, 1)))
    assert wronskian_in_xq(h)          # flagged ...
    assert h.split_count() == 1        # ... but fully usable
    assert not wronskian_in_xq(gal1(F5, 1))


def test_eval_points():
    h = gal1(F5, 1)
    assert h.eval_point(PPoint.of(F5, 0)).is_infinity
    assert h.eval_point(PPoint.of(F5, 2)).code == 4
    assert h.eval_point(PPoint.infinity(F5)).is_infinity
    flat = rational_map(Polynomial(F5, (1, 0, 2)), Polynomial(F5, (3, 1, 1)))
    assert flat.eval_point(PPoint.infinity(F5)).code == 2  # ratio of leads


def test_fibers_examples():
    ident = rational_map(Polynomial.x(F5), Polynomial(F5, (1,)))
    fib = ident.fibers()
    assert all(len(pts) == 1 for _t, pts in fib.fibers)

    fib1 = gal1(F5, 1).fibers()
    assert [p.code for p in fib1.fiber("inf")] == [0, 1, 5]
    assert [p.code for p in fib1.fiber(4)] == [2, 3, 4]
    assert all(not pts for t, pts in fib1.fibers if t.code not in (4, 5))

    fib2 = gal2(F7, 1).fibers()
    assert [p.code for p in fib2.fiber("inf")] == [0, 1, 4, 7]
    assert [p.code for p in fib2.fiber(2)] == [2, 3, 5, 6]


def test_split_counts():
    assert gal1(F5, 1).split_count() == 2
    assert gal1(F7, 1).split_count() == 2
    assert gal2(F7, 1).split_count() == 2


def test_fiber_sums_and_size_cap():
    rng = random.Random(4)
    for fld in (F5, F7, field(3, 2)):
        for _ in range(60):
            h = _random_map(fld, rng)
            fib = h.fibers()
            fib.validate()
            assert h.split_count() <= (fld.q + 1) // h.degree


def _random_map(fld, rng, dmax=3):
    while True:
        num = Polynomial(fld, [rng.randrange(fld.q) for _ in range(rng.randrange(2, dmax + 2))])
        den = Polynomial(fld, [rng.randrange(fld.q) for _ in range(rng.randrange(1, dmax + 1))] + [1])
        try:
            return rational_map(num, den)
        except (ValueError, ZeroDivisionError):
            continue


def test_composition_preserves_split_and_fiber_sizes():
    rng = random.Random(8)
    for fld in (F5, F7):
        trans = list(scan_transforms(fld))
        for _ in range(120):
            h = _random_map(fld, rng)
            phi = rng.choice(trans)
            sizes = sorted(len(p) for _t, p in h.fibers().fibers)
            left = h.compose_left(phi)
            assert left.split_count() == h.split_count()
            right = h.compose_right(phi)
            assert sorted(len(p) for _t, p in right.fibers().fibers) == sizes
    ident = MoebiusTransform.identity(F5)
    h = gal1(F5, 1)
    assert h.compose_left(ident) == h and h.compose_right(ident) == h


def test_eval_commutes_with_composition():
    rng = random.Random(12)
    trans = list(scan_transforms(F7))
    for _ in range(40):
        h = _random_map(F7, rng)
        phi = rng.choice(trans)
        left = h.compose_left(phi)
        right = h.compose_right(phi)
        for u in range(F7.q + 1):
            pt = PPoint(F7, u)
            assert left.eval_point(pt) == phi.apply(h.eval_point(pt))
            assert right.eval_point(pt) == h.eval_point(phi.apply(pt))


def test_inf_split_cases():
    entries = gal1(F5, 1).inf_split()
    assert [(e.label(), e.ramification, e.residue_degree) for e in entries.entries] == [
        ("x", 1, 1), ("x + 4", 1, 1), ("inf", 1, 1)]
    assert entries.delta == 1 and entries.totally_split()

    sq = rational_map(Polynomial(F5, (1,)), Polynomial(F5, (0, 0, 1)))  # 1/x^2
    data = sq.inf_split()
    assert [(e.label(), e.ramification, e.residue_degree) for e in data.entries] == [("x", 2, 1)]
    assert data.delta == 0 and not data.totally_split()

    f3 = field(3, 1)
    poly = rational_map(Polynomial(f3, (1, 0, 1)), Polynomial(f3, (1,)))
    data3 = poly.inf_split()
    assert [(e.label(), e.ramification, e.residue_degree) for e in data3.entries] == [("inf", 2, 1)]


def test_inf_split_fundamental_equality_random():
    rng = random.Random(21)
    for fld in (F5, F7, field(2, 2)):
        for _ in range(80):
            h = _random_map(fld, rng)
            data = h.inf_split()
            assert sum(e.ramification * e.residue_degree for e in data.entries) == h.degree


def test_inf_split_matches_brute_force_fiber():
    # target infinity is a full fiber exactly when the place data is all (1,1)
    rng = random.Random(34)
    for _ in range(100):
        h = _random_map(F7, rng)
        full = len(h.fibers().fiber("inf")) == h.degree
        assert h.inf_split().totally_split() == full


def test_ramified_bound():
    assert gal1(F5, 1).ramified_bound() == 5
    poly = rational_map(Polynomial(F5, (0, 0, 0, 1)), Polynomial(F5, (1,)))
    assert poly.ramified_bound() == 3
    inv = rational_map(Polynomial(F5, (1,)), Polynomial(F5, (0, 1)))
    assert inv.ramified_bound() == 1


def test_map_json_roundtrip():
    h = gal2(F7, 1)
    assert RationalMap.from_json(F7, h.to_json()) == h
