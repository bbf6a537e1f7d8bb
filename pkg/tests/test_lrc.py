import json
import random

import pytest

from ratlrc.errors import CapExceeded, MultipleErasures, NoErasure
from ratlrc.gf import Polynomial, field
from ratlrc.goodfun import certify, gal1, gal2, tamo_barg_multiplicative
from ratlrc.lrc import (Codeword, build_code, code_from_json, codeword_from_frame,
                        codeword_from_json, codeword_from_text, codeword_to_frame,
                        degree_bound_check, dimension_check, encode, erase,
                        generator_matrix, is_codeword, min_distance, repair,
                        repair_with_trace)
from ratlrc.ratfun import rational_map

F5 = field(5, 1)
F7 = field(7, 1)


def small_code(k=2):
    return build_code(certify(gal1(F5, 1)), k)


def test_build_code_layout_and_constants():
    code = small_code()
    assert (code.n, code.k, code.r, code.l) == (6, 2, 2, 2)
    assert code.b == 0 and not code.inverted
    assert [p.to_json() for p in code.layout] == [2, 3, 4, 0, 1, "inf"]
    assert code.d_values == (4, 0)
    assert code.group_of == (0, 0, 0, 1, 1, 1)


def test_build_code_gal2():
    code = build_code(certify(gal2(F7, 1)), 3)
    assert (code.n, code.k, code.r) == (8, 3, 3)
    assert code.b == 0


def test_build_code_parameter_errors():
    cert = certify(gal1(F5, 1))
    with pytest.raises(ValueError):
        build_code(cert, 3)  # not a multiple of r
    with pytest.raises(ValueError):
        build_code(cert, 6)  # k/r exceeds l


def test_encode_examples():
    code = small_code()
    assert encode(code, [1, 0]).symbols == (1, 1, 1, 1, 1, 0)
    assert encode(code, [0, 1]).symbols == (2, 3, 4, 0, 1, 1)
    assert encode(code, [0, 0]).symbols == (0,) * 6
    with pytest.raises(ValueError):
        encode(code, [1, 2, 3])


def test_encode_is_linear():
    code = build_code(certify(gal2(F7, 1)), 6)
    rng = random.Random(2)
    for _ in range(50):
        a = [rng.randrange(7) for _ in range(6)]
        b = [rng.randrange(7) for _ in range(6)]
        lam = rng.randrange(7)
        combo = [(x * lam + y) % 7 for x, y in zip(a, b)]
        wa, wb = encode(code, a), encode(code, b)
        expect = tuple((sa * lam + sb) % 7 for sa, sb in zip(wa.symbols, wb.symbols))
        assert encode(code, combo).symbols == expect


def test_repair_three_cases():
    code = small_code()
    w1 = encode(code, [1, 0])
    assert repair(code, erase(w1, [1])).enc == 1          # plain interpolation
    assert repair(code, erase(w1, [5])).enc == 0          # erased top coefficient
    w2 = encode(code, [0, 1])
    assert repair(code, erase(w2, [3])).enc == 0          # finite erasure next to infinity


def test_repair_reads_exactly_r_in_group():
    code = build_code(certify(gal2(F7, 1)), 3)
    word = encode(code, [1, 2, 3])
    for pos in range(code.n):
        got, trace = repair_with_trace(code, erase(word, [pos]))
        assert got.enc == word.symbols[pos]
        assert trace.position == pos
        assert len(trace.read_positions) == code.r
        assert all(code.group_of[i] == trace.group for i in trace.read_positions)
        assert pos not in trace.read_positions


def test_repair_roundtrip_random():
    rng = random.Random(6)
    for code in (small_code(), small_code(4), build_code(certify(gal2(F7, 1)), 6)):
        for _ in range(25):
            msg = [rng.randrange(code.field.q) for _ in range(code.k)]
            word = encode(code, msg)
            for pos in range(code.n):
                assert repair(code, erase(word, [pos])).enc == word.symbols[pos]


def test_repair_erasure_errors():
    code = small_code()
    word = encode(code, [1, 0])
    with pytest.raises(NoErasure):
        repair(code, word)
    with pytest.raises(MultipleErasures):
        repair(code, erase(word, [0, 3]))
    with pytest.raises(ValueError):
        erase(word, [9])


def test_min_distance_corpus_values():
    assert min_distance(small_code()).distance == 5
    assert min_distance(small_code()).optimal
    rep4 = min_distance(small_code(4))
    assert (rep4.distance, rep4.singleton_value, rep4.optimal) == (2, 2, True)
    rep7 = min_distance(build_code(certify(gal2(F7, 1)), 3))
    assert (rep7.distance, rep7.singleton_value, rep7.optimal) == (6, 6, True)


def test_min_distance_cap():
    f13 = field(13, 1)
    code = build_code(certify(tamo_barg_multiplicative(f13, 3)), 6)
    with pytest.raises(CapExceeded):
        min_distance(code)
    assert dimension_check(code) == 6


def test_dimension_check_full_rank_even_at_max_k():
    cert = certify(gal1(F5, 1))
    code = build_code(cert, 4)  # k = r * l, the maximum
    assert dimension_check(code) == 4


def test_degree_bound():
    assert degree_bound_check(small_code())
    assert degree_bound_check(small_code(4))  # tight: k + k/r - 2 = n - 2


def test_membership():
    code = small_code()
    word = encode(code, [2, 3])
    assert is_codeword(code, word)
    bad = Codeword(F5, (1, 2, 3, 4, 0, 0))
    assert not is_codeword(code, bad)


def test_generator_matrix_shape():
    code = build_code(certify(gal2(F7, 1)), 6)
    rows = generator_matrix(code)
    assert len(rows) == 6 and all(len(r) == 8 for r in rows)


def test_code_json_roundtrip():
    code = small_code()
    data = json.loads(json.dumps(code.to_json()))
    back = code_from_json(data)
    assert back.b == code.b and back.layout == code.layout
    assert encode(back, [3, 1]).symbols == encode(code, [3, 1]).symbols
    data["b"] = 3
    with pytest.raises(ValueError):
        code_from_json(data)


def test_reciprocal_fallback_when_image_covers_field():
    # this quadratic map hits every finite value, so the reciprocal is used
    f3 = field(3, 1)
    h = rational_map(Polynomial(f3, (0, 1, 2)), Polynomial(f3, (2, 2, 1)))
    assert sorted(set(h.images())) == [0, 1, 2]
    code = build_code(certify(h), 1)
    assert code.inverted and code.b == 0
    assert (code.n, code.k, code.r) == (2, 1, 1)
    word = encode(code, [2])
    assert word.symbols == (2, 2)
    for pos in range(2):
        assert repair(code, erase(word, [pos])).enc == word.symbols[pos]
    rep = min_distance(code)
    assert rep.distance == rep.singleton_value == 2 and rep.optimal


def test_codeword_serializations():
    code = small_code()
    word = encode(code, [0, 1])
    assert codeword_from_json(F5, word.to_json()).symbols == word.symbols
    text = erase(word, [2]).to_text()
    assert text.split()[2] == "?"
    assert codeword_from_text(F5, text).symbols == erase(word, [2]).symbols
    blob = codeword_to_frame(word)
    assert len(blob) == 4 + 6  # u32 length + one byte per symbol over GF(5)
    assert codeword_from_frame(F5, blob).symbols == word.symbols
    with pytest.raises(ValueError):
        codeword_to_frame(erase(word, [0]))
    f257 = field(257, 1)
    wide = Codeword(f257, (256, 0, 17))
    assert codeword_from_frame(f257, codeword_to_frame(wide)).symbols == wide.symbols


def test_codeword_json_errors():
    with pytest.raises(ValueError):
        codeword_from_json(F5, [0, 9])
