"""Backend parity: the compiled kernels must match the pure-Python ones."""

import random

import pytest

from ratlrc._kernels import backends, pure
from ratlrc.gf import field
from ratlrc.goodfun import certify, gal1, gal2
from ratlrc.lrc import build_code, generator_matrix
from ratlrc.sweeps import prime_powers

compiled = backends().get("compiled")
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


@needs_compiled
@pytest.mark.parametrize("q,p,m", prime_powers(2, 16))
def test_eval_parity(q, p, m):
    fld = field(p, m)
    rng = random.Random(q)
    for _ in range(40):
        num = [rng.randrange(q) for _ in range(rng.randrange(1, 6))]
        den = [rng.randrange(q) for _ in range(rng.randrange(0, 4))] + [1]
        if not any(num):
            num[0] = 1
        assert pure.eval_on_line(fld.tables, num, den) == compiled.eval_on_line(fld.tables, num, den)


@needs_compiled
@pytest.mark.parametrize("q,p,m", prime_powers(2, 13))
def test_orbit_parity(q, p, m):
    fld = field(p, m)
    rng = random.Random(q + 1)
    quads = []
    while len(quads) < 15:
        a, b, c, d = (rng.randrange(q) for _ in range(4))
        if fld.sub_enc(fld.mul_enc(a, d), fld.mul_enc(b, c)) != 0:
            quads.append((a, b, c, d))
    for quad in quads:
        assert pure.orbit_reps(fld.tables, *quad) == compiled.orbit_reps(fld.tables, *quad)


@needs_compiled
@pytest.mark.parametrize("q,p,m", prime_powers(2, 13))
def test_scan_parity(q, p, m):
    fld = field(p, m)
    rp, cp = pure.galois_subgroup_scan(fld.tables, True)
    rc, cc = compiled.galois_subgroup_scan(fld.tables, True)
    assert cp == cc
    assert rp == rc


@needs_compiled
def test_scan_parity_one_generator_mode():
    fld = field(3, 2)
    rp, cp = pure.galois_subgroup_scan(fld.tables, False)
    rc, cc = compiled.galois_subgroup_scan(fld.tables, False)
    assert cp == cc and rp == rc


@needs_compiled
def test_min_weight_parity():
    for code in (build_code(certify(gal1(field(5, 1), 1)), 4),
                 build_code(certify(gal2(field(7, 1), 1)), 3)):
        rows = generator_matrix(code)
        assert (pure.min_weight(code.field.tables, rows)
                == compiled.min_weight(code.field.tables, rows))


@needs_compiled
def test_search_parity():
    f5 = field(5, 1)
    assert pure.search_maps(f5.tables, 2, False) == compiled.search_maps(f5.tables, 2, False)
    assert pure.search_maps(f5.tables, 3, True) == compiled.search_maps(f5.tables, 3, True)
    f4 = field(2, 2)
    assert pure.search_maps(f4.tables, 3, False) == compiled.search_maps(f4.tables, 3, False)


@needs_compiled
def test_search_q_guard():
    f257 = field(257, 1)
    with pytest.raises(ValueError):
        compiled.search_maps(f257.tables, 1, False)
    with pytest.raises(ValueError):
        pure.search_maps(f257.tables, 1, False)
