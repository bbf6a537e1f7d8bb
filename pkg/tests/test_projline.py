import random

import pytest

from ratlrc.gf import field
from ratlrc.projline import (MoebiusTransform, PPoint, all_points, elements_of_order,
                             orbits, scan_transforms)

F5 = field(5, 1)
F7 = field(7, 1)


def recip_shift(fld):  # u -> 1/(1-u)
    return MoebiusTransform(fld, 0, 1, fld.neg_enc(1), 1)


def test_apply_pole_and_infinity():
    phi = recip_shift(F5)
    assert phi.apply(PPoint.of(F5, 1)).is_infinity
    assert phi.apply(PPoint.infinity(F5)).code == 0
    assert phi.apply(PPoint.of(F5, 2)).code == 4


def test_apply_is_bijection_exhaustive():
    for fld in (F5, F7, field(2, 3), field(3, 2)):
        for phi in elements_of_order(fld, 2, limit=4):
            image = sorted(phi.apply_code(u) for u in range(fld.q + 1))
            assert image == list(range(fld.q + 1))


def test_compose_matches_apply():
    rng = random.Random(17)
    pts = all_points(F7)
    trans = list(scan_transforms(F7))
    for _ in range(300):
        phi, psi = rng.choice(trans), rng.choice(trans)
        comp = phi.compose(psi)
        for u in pts:
            assert comp.apply(u) == phi.apply(psi.apply(u))


def test_compose_inverse_identity():
    phi = recip_shift(F5)
    assert phi.compose(phi.inverse()).is_identity
    assert phi.inverse().compose(phi).is_identity


def test_square_of_recip_shift():
    # the square is (x-1)/x in normal form
    phi = recip_shift(F5)
    sq = phi.compose(phi)
    assert sq.quadruple() == (1, 4, 1, 0)


def test_associativity_spot():
    rng = random.Random(23)
    trans = list(scan_transforms(F5))
    for _ in range(200):
        a, b, c = (rng.choice(trans) for _ in range(3))
        assert a.compose(b).compose(c) == a.compose(b.compose(c))


def test_orders():
    assert MoebiusTransform.identity(F5).order() == 1
    assert recip_shift(F5).order() == 3
    half_recip = MoebiusTransform(F7, 0, 1, 5, 2)  # 1/(2(1-x))
    assert half_recip.order() == 4


def test_orbits_small_cases():
    cen = orbits(recip_shift(F5))
    assert [[p.code for p in o] for o in cen.orbits] == [[0, 1, 5], [2, 3, 4]]
    assert cen.short_count == 0 and cen.long_count == 2

    cen7 = orbits(recip_shift(F7))
    assert [[p.code for p in o] for o in cen7.orbits] == [[3], [5], [0, 1, 7], [2, 4, 6]]
    assert cen7.short_count == 2

    cen7b = orbits(MoebiusTransform(F7, 0, 1, 5, 2))
    assert [[p.code for p in o] for o in cen7b.orbits] == [[0, 1, 4, 7], [2, 3, 5, 6]]
    assert cen7b.short_count == 0


def test_orbit_census_laws_exhaustive_tiny():
    for fld in (field(2, 1), field(3, 1), field(2, 2), F5, F7, field(2, 3), field(3, 2)):
        q = fld.q
        for phi in scan_transforms(fld):
            n = phi.order()
            if n < 2:
                continue
            cen = orbits(phi)
            assert sum(cen.sizes) == q + 1
            assert all(n % s == 0 for s in cen.sizes)
            assert cen.short_count <= 3
            expected = -(-(q + 1) // n) + (1 if cen.short_count in (2, 3) else 0)
            assert len(cen.orbits) == expected


def test_elements_of_order():
    assert elements_of_order(F5, 3, limit=2)
    assert elements_of_order(field(2, 2), 5, limit=1)
    assert elements_of_order(F5, 7, limit=1) == []  # 7 divides none of q-1, q, q+1
    with pytest.raises(ValueError):
        elements_of_order(F5, 1)


def test_normal_form_and_equality():
    a = MoebiusTransform(F5, 2, 1, 3, 1)
    b = MoebiusTransform(F5, 4, 2, 6 % 5, 2)  # scalar multiple
    assert a == b and hash(a) == hash(b)
    assert a.quadruple()[0] == 1
    with pytest.raises(ValueError):
        MoebiusTransform(F5, 1, 2, 2, 4)  # determinant zero


def test_transform_json_roundtrip():
    phi = recip_shift(F7)
    data = phi.to_json()
    assert MoebiusTransform.from_json(F7, data) == phi


def test_point_ordering_and_json():
    pts = all_points(F5)
    assert pts[-1].is_infinity
    assert pts[0] < pts[1] < pts[-1]
    assert pts[-1].to_json() == "inf" and pts[2].to_json() == 2
    assert PPoint.of(F5, "inf").is_infinity
