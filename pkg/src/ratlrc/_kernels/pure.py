"""Pure-Python kernels: reference implementation of the hot loops.

Everything here works on integer encodings and the list views of a
FieldTables object; no field-element objects appear in the loops.  The
compiled kernel module mirrors these functions one for one, and the test
suite checks the two backends produce identical results.
"""

from __future__ import annotations

from itertools import product
from math import gcd

# ---------------------------------------------------------------------------
# polynomial helpers on enc lists (constant term first, no trailing zeros)
# ---------------------------------------------------------------------------


def _strip(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _padd(addr, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, cb in enumerate(b):
        out[i] = addr[out[i]][cb]
    return _strip(out)


def _pscale(addr, mulr, a, s):
    return _strip([mulr[c][s] for c in a])


def _pmul(addr, mulr, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            mrow = mulr[ai]
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = addr[out[i + j]][mrow[bj]]
    return _strip(out)


def _plinmul(addr, mulr, a, c1, c0):
    """(c1*x + c0) * a."""
    if not a:
        return []
    out = [0] * (len(a) + 1)
    for i, ai in enumerate(a):
        if ai:
            out[i + 1] = addr[out[i + 1]][mulr[c1][ai]]
            out[i] = addr[out[i]][mulr[c0][ai]]
    return _strip(out)


def _pmod(addr, mulr, negl, invl, a, b):
    rem = list(a)
    db = len(b) - 1
    inv_lead = invl[b[-1]]
    while len(rem) - 1 >= db and rem:
        top = rem[-1]
        if top:
            f = negl[mulr[top][inv_lead]]
            off = len(rem) - 1 - db
            for i, bi in enumerate(b):
                if bi:
                    rem[off + i] = addr[rem[off + i]][mulr[f][bi]]
        rem.pop()
    return _strip(rem)


def _pgcd(addr, mulr, negl, invl, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pmod(addr, mulr, negl, invl, a, b)
    return a


def _pderiv(addr, mulr, a, p):
    out = [mulr[a[i]][i % p] for i in range(1, len(a))]
    return _strip(out)


def _peval(addr, mulr, a, x):
    acc = 0
    for c in reversed(a):
        acc = addr[mulr[acc][x]][c]
    return acc


def _div_linear(addr, mulr, negl, invl, a, c1, c0):
    """Exact quotient a / (c1*x + c0) with c1 != 0 (synthetic division)."""
    r = mulr[negl[c0]][invl[c1]]  # root of the divisor
    out = [0] * (len(a) - 1)
    acc = a[-1]
    for i in range(len(a) - 2, -1, -1):
        out[i] = acc
        acc = addr[mulr[acc][r]][a[i]]
    return _strip(_pscale(addr, mulr, out, invl[c1]))


# ---------------------------------------------------------------------------
# evaluation and orbits
# ---------------------------------------------------------------------------


def eval_on_line(tables, num, den):
    """Image code of every point 0..q (code q = infinity)."""
    q = tables.q
    addr, mulr, _negl, invl = tables.as_lists()
    out = []
    for u in range(q):
        nv = 0
        for c in reversed(num):
            nv = addr[mulr[nv][u]][c]
        dv = 0
        for c in reversed(den):
            dv = addr[mulr[dv][u]][c]
        out.append(q if dv == 0 else mulr[nv][invl[dv]])
    dn, dd = len(num) - 1, len(den) - 1
    if dn > dd:
        out.append(q)
    elif dn < dd:
        out.append(0)
    else:
        out.append(mulr[num[-1]][invl[den[-1]]])
    return out


def _apply(addr, mulr, invl, quad, u, q):
    a, b, c, d = quad
    if u == q:
        return q if c == 0 else mulr[a][invl[c]]
    den = addr[mulr[c][u]][d]
    if den == 0:
        return q
    return mulr[addr[mulr[a][u]][b]][invl[den]]


def orbit_reps(tables, a, b, c, d):
    """Minimum orbit member for every point under iterating (ax+b)/(cx+d)."""
    q = tables.q
    addr, mulr, _negl, invl = tables.as_lists()
    quad = (a, b, c, d)
    reps = [-1] * (q + 1)
    for start in range(q + 1):
        if reps[start] >= 0:
            continue
        block = [start]
        u = _apply(addr, mulr, invl, quad, start, q)
        while u != start:
            block.append(u)
            u = _apply(addr, mulr, invl, quad, u, q)
        rep = min(block)
        for v in block:
            reps[v] = rep
    return reps


# ---------------------------------------------------------------------------
# the exhaustive cyclic-subgroup scan
# ---------------------------------------------------------------------------


def _normalize(mulr, invl, a, b, c, d):
    piv = a if a else c
    if piv == 1:
        return (a, b, c, d)
    s = invl[piv]
    return (mulr[a][s], mulr[b][s], mulr[c][s], mulr[d][s])


def _matmul(addr, mulr, m1, m2):
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return (
        addr[mulr[a1][a2]][mulr[b1][c2]],
        addr[mulr[a1][b2]][mulr[b1][d2]],
        addr[mulr[c1][a2]][mulr[d1][c2]],
        addr[mulr[c1][b2]][mulr[d1][d2]],
    )


def _divisors(n):
    out = [d for d in range(2, n + 1) if n % d == 0]
    return out


def _substitute(addr, mulr, coeffs, n, quad):
    """coeffs(u/v) * v^n for u = a*x+b, v = c*x+d, with coeffs padded to degree n."""
    a, b, c, d = quad
    cs = list(coeffs) + [0] * (n + 1 - len(coeffs))
    t = [cs[n]] if cs[n] else []
    v = [1]
    for i in range(n - 1, -1, -1):
        v = _plinmul(addr, mulr, v, c, d)
        t = _plinmul(addr, mulr, t, a, b)
        if cs[i]:
            t = _padd(addr, t, _pscale(addr, mulr, v, cs[i]))
    return t


def _invariant_under(addr, mulr, num, den, n, quad):
    """Whether the reduced map num/den is unchanged by right composition with quad."""
    tn = _substitute(addr, mulr, num, n, quad)
    td = _substitute(addr, mulr, den, n, quad)
    return _pmul(addr, mulr, tn, den) == _pmul(addr, mulr, td, num)


def _subgroup_record(tables, addr, mulr, negl, invl, sub, n, check_all_generators):
    q = tables.q
    nonaffine_ok = all(m[2] != 0 for m in sub[1:])

    # denominator: product of the linear pole factors of the iterates
    den = [1]
    for (_a, _b, c, d) in sub[1:]:
        den = _plinmul(addr, mulr, den, c, d)
    # numerator: x*den + sum of (a_k x + b_k) * den/(c_k x + d_k)
    num = [0] + den
    for (a, b, c, d) in sub[1:]:
        dk = _div_linear(addr, mulr, negl, invl, den, c, d)
        num = _padd(addr, num, _plinmul(addr, mulr, dk, a, b))

    g = _pgcd(addr, mulr, negl, invl, num, den)
    coprime_ok = len(g) == 1
    if not coprime_ok:  # keep going on the reduced map
        gm = _pscale(addr, mulr, g, invl[g[-1]])
        num = _exact_div(addr, mulr, negl, invl, num, gm)
        den = _exact_div(addr, mulr, negl, invl, den, gm)
    s = invl[den[-1]]
    num = _pscale(addr, mulr, num, s)
    den = _pscale(addr, mulr, den, s)
    degree_ok = len(num) - 1 == n and len(den) - 1 == n - 1

    w = _padd(addr, _pmul(addr, mulr, _pderiv(addr, mulr, num, tables.p), den),
              [negl[c] for c in _pmul(addr, mulr, _pderiv(addr, mulr, den, tables.p), num)])
    separable_ok = bool(w)

    if check_all_generators:
        gens = [sub[k] for k in range(1, n) if gcd(k, n) == 1]
    else:
        gens = [sub[1]]
    invariance_ok = all(_invariant_under(addr, mulr, num, den, n, g8) for g8 in gens)

    images = eval_on_line(tables, num, den)
    fib_rep = [-1] * (q + 1)
    first_of = {}
    for u in range(q + 1):
        t = images[u]
        if t not in first_of:
            first_of[t] = u
        fib_rep[u] = first_of[t]  # first = minimum since u ascends
    orb_rep = orbit_reps(tables, *sub[1])
    partition_ok = fib_rep == orb_rep

    sizes_by_rep = {}
    for r in orb_rep:
        sizes_by_rep[r] = sizes_by_rep.get(r, 0) + 1
    orbit_sizes = tuple(sorted(sizes_by_rep.values()))
    counts = {}
    for t in images:
        counts[t] = counts.get(t, 0) + 1
    split = sum(1 for cnt in counts.values() if cnt == n)

    return {
        "order": n,
        "generator": sub[1],
        "generator_count": sum(1 for k in range(1, n) if gcd(k, n) == 1),
        "nonaffine_ok": nonaffine_ok,
        "coprime_ok": coprime_ok,
        "degree_ok": degree_ok,
        "separable_ok": separable_ok,
        "invariance_ok": invariance_ok,
        "invariance_checked": len(gens),
        "partition_ok": partition_ok,
        "split_count": split,
        "orbit_sizes": orbit_sizes,
    }


def _exact_div(addr, mulr, negl, invl, a, b):
    """Quotient a / b assuming exact division, b monic."""
    rem = list(a)
    db = len(b) - 1
    quo = [0] * (len(rem) - db)
    while len(rem) - 1 >= db and rem:
        top = rem[-1]
        if top:
            off = len(rem) - 1 - db
            quo[off] = top
            f = negl[top]
            for i, bi in enumerate(b):
                if bi:
                    rem[off + i] = addr[rem[off + i]][mulr[f][bi]]
        rem.pop()
    return _strip(quo)


def galois_subgroup_scan(tables, check_all_generators=False):
    """Process every cyclic subgroup generated by a non-affine transform.

    Returns (records, covered): one record per distinct subgroup in scan
    order, and the number of non-affine elements accounted for (each is a
    generator of exactly one scanned subgroup).
    """
    q = tables.q
    addr, mulr, negl, invl = tables.as_lists()
    ident = (1, 0, 0, 1)
    records = []
    assigned = set()
    covered = 0

    def visit(phi):
        nonlocal covered
        key = ((phi[0] * (q + 1) + phi[1]) * (q + 1) + phi[2]) * (q + 1) + phi[3]
        if key in assigned:
            return
        mats = [ident, phi]
        cur = phi
        while True:
            cur = _normalize(mulr, invl, *_matmul(addr, mulr, cur, phi))
            if cur == ident:
                break
            mats.append(cur)
            if len(mats) > q + 2:
                raise RuntimeError("transform order exceeded q+1")
        n = len(mats)
        for dd in _divisors(n):
            step = n // dd
            gen = mats[step]
            gkey = ((gen[0] * (q + 1) + gen[1]) * (q + 1) + gen[2]) * (q + 1) + gen[3]
            if gkey in assigned:
                continue
            sub = [mats[k * step] for k in range(dd)]
            records.append(_subgroup_record(tables, addr, mulr, negl, invl, sub, dd,
                                            check_all_generators))
            for k in range(1, dd):
                if gcd(k, dd) == 1:
                    g8 = sub[k]
                    assigned.add(((g8[0] * (q + 1) + g8[1]) * (q + 1) + g8[2]) * (q + 1) + g8[3])
                    covered += 1

    for b in range(1, q):
        for d in range(q):
            visit((0, b, 1, d))
    for b in range(q):
        for c in range(1, q):
            bc = mulr[b][c]
            for d in range(q):
                if d != bc:
                    visit((1, b, c, d))
    return records, covered


# ---------------------------------------------------------------------------
# minimum weight of a linear code from its generator matrix
# ---------------------------------------------------------------------------


def min_weight(tables, rows):
    """Minimum Hamming weight of the row space (nonzero combinations).

    Scalar multiples share a weight, so messages are enumerated with the
    first nonzero coordinate fixed to one.
    """
    q = tables.q
    addr, mulr, _negl, _invl = tables.as_lists()
    k = len(rows)
    n = len(rows[0])
    best = n + 1
    for lead in range(k):
        base = rows[lead]
        tail = rows[lead + 1:]
        for combo in product(range(q), repeat=len(tail)):
            word = list(base)
            for coef, row in zip(combo, tail):
                if coef:
                    mrow = mulr[coef]
                    for i in range(n):
                        if row[i]:
                            word[i] = addr[word[i]][mrow[row[i]]]
            weight = sum(1 for s in word if s)
            if weight < best:
                best = weight
    return best


# ---------------------------------------------------------------------------
# exhaustive search for high split counts
# ---------------------------------------------------------------------------


def search_maps(tables, degree, poly_only=False):
    """Enumerate reduced maps of the given degree, deduplicated by fiber partition.

    Returns a list of (split_count, num, den) with exactly one entry per
    distinct partition of the projective line into fibers; the kept
    representative is the one with the smallest (num, den) serialization.
    """
    q = tables.q
    if q >= 256:
        raise ValueError("search supports q < 256")
    addr, mulr, negl, invl = tables.as_lists()
    d = degree
    dens = [(1,)] if poly_only else _monic_up_to(q, d)
    best = {}
    for den in dens:
        dd = len(den) - 1
        for num_tail in product(range(q), repeat=d + 1):
            num = list(num_tail)
            while num and num[-1] == 0:
                num.pop()
            dn = len(num) - 1
            if max(dn, dd) != d or dn < 0:
                continue
            if len(_pgcd(addr, mulr, negl, invl, num, list(den))) != 1:
                continue
            w = _padd(addr, _pmul(addr, mulr, _pderiv(addr, mulr, num, tables.p), list(den)),
                      [negl[c] for c in _pmul(addr, mulr, _pderiv(addr, mulr, list(den), tables.p), num)])
            if not w:
                continue
            images = eval_on_line(tables, num, list(den))
            first_of = {}
            sig = []
            for u in range(q + 1):
                t = images[u]
                if t not in first_of:
                    first_of[t] = u
                sig.append(first_of[t])
            key = bytes(sig)
            counts = {}
            for t in images:
                counts[t] = counts.get(t, 0) + 1
            split = sum(1 for cnt in counts.values() if cnt == d)
            serial = (tuple(num), den)
            prev = best.get(key)
            if prev is None or serial < prev[1:]:
                best[key] = (split, serial[0], serial[1])
    return sorted(best.values(), key=lambda t: (-t[0], t[1], t[2]))


def _monic_up_to(q, dmax):
    out = []
    for deg in range(dmax + 1):
        for tail in product(range(q), repeat=deg):
            out.append(tuple(tail) + (1,))
    return out
