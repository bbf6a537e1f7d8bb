# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels; mirrors ratlrc._kernels.pure function for function.

All polynomial scratch lives in C buffers sized by the field; tables come
in as the int32 numpy arrays of a FieldTables object.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from itertools import product

import numpy as np


cdef inline int _cgcd(int a, int b) noexcept:
    cdef int t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline int _strip(int* a, int n) noexcept:
    while n > 0 and a[n - 1] == 0:
        n -= 1
    return n


cdef inline int _padd_into(const int[:, ::1] add, int* a, int na, const int* b, int nb) noexcept:
    cdef int i
    if nb > na:
        for i in range(na, nb):
            a[i] = 0
        na = nb
    for i in range(nb):
        a[i] = add[a[i], b[i]]
    return _strip(a, na)


cdef inline int _pscale_inplace(const int[:, ::1] mul, int* a, int n, int s) noexcept:
    cdef int i
    for i in range(n):
        a[i] = mul[a[i], s]
    return _strip(a, n)


cdef int _pmul_out(const int[:, ::1] add, const int[:, ::1] mul,
                   const int* a, int na, const int* b, int nb, int* out) noexcept:
    cdef int i, j, ai
    if na == 0 or nb == 0:
        return 0
    for i in range(na + nb - 1):
        out[i] = 0
    for i in range(na):
        ai = a[i]
        if ai:
            for j in range(nb):
                if b[j]:
                    out[i + j] = add[out[i + j], mul[ai, b[j]]]
    return _strip(out, na + nb - 1)


cdef int _plinmul_out(const int[:, ::1] add, const int[:, ::1] mul,
                      const int* a, int n, int c1, int c0, int* out) noexcept:
    cdef int i
    if n == 0:
        return 0
    for i in range(n + 1):
        out[i] = 0
    for i in range(n):
        if a[i]:
            out[i + 1] = add[out[i + 1], mul[c1, a[i]]]
            out[i] = add[out[i], mul[c0, a[i]]]
    return _strip(out, n + 1)


cdef int _pmod_inplace(const int[:, ::1] add, const int[:, ::1] mul,
                       const int[::1] neg, const int[::1] inv,
                       int* rem, int nrem, const int* b, int nb) noexcept:
    cdef int db = nb - 1
    cdef int inv_lead = inv[b[nb - 1]]
    cdef int top, f, off, i
    while nrem - 1 >= db and nrem > 0:
        top = rem[nrem - 1]
        if top:
            f = neg[mul[top, inv_lead]]
            off = nrem - 1 - db
            for i in range(nb):
                if b[i]:
                    rem[off + i] = add[rem[off + i], mul[f, b[i]]]
        nrem -= 1
    return _strip(rem, nrem)


cdef int _pgcd_len(const int[:, ::1] add, const int[:, ::1] mul,
                   const int[::1] neg, const int[::1] inv,
                   const int* a, int na, const int* b, int nb,
                   int* wa, int* wb, int* gout) noexcept:
    # gcd of a and b written to gout (not monic); wa/wb are scratch
    cdef int i, t
    cdef int* x = wa
    cdef int* y = wb
    cdef int nx = na, ny = nb
    cdef int* tmp
    for i in range(na):
        wa[i] = a[i]
    for i in range(nb):
        wb[i] = b[i]
    while ny > 0:
        nx = _pmod_inplace(add, mul, neg, inv, x, nx, y, ny)
        tmp = x; x = y; y = tmp
        t = nx; nx = ny; ny = t
    for i in range(nx):
        gout[i] = x[i]
    return nx


cdef int _pderiv_out(const int[:, ::1] mul, const int* a, int n, int p, int* out) noexcept:
    cdef int i
    if n <= 1:
        return 0
    for i in range(1, n):
        out[i - 1] = mul[a[i], i % p]
    return _strip(out, n - 1)


cdef int _exact_div_inplace(const int[:, ::1] add, const int[:, ::1] mul,
                            const int[::1] neg, int* rem, int nrem,
                            const int* b, int nb, int* quo) noexcept:
    # rem / b with b monic, division known exact; quotient into quo
    cdef int db = nb - 1
    cdef int nq = nrem - db
    cdef int top, f, off, i
    if nq < 0:
        nq = 0
    for i in range(nq):
        quo[i] = 0
    while nrem - 1 >= db and nrem > 0:
        top = rem[nrem - 1]
        if top:
            off = nrem - 1 - db
            quo[off] = top
            f = neg[top]
            for i in range(nb):
                if b[i]:
                    rem[off + i] = add[rem[off + i], mul[f, b[i]]]
        nrem -= 1
    return _strip(quo, nq)


cdef int _div_linear_out(const int[:, ::1] add, const int[:, ::1] mul,
                         const int[::1] neg, const int[::1] inv,
                         const int* a, int n, int c1, int c0, int* out) noexcept:
    # exact quotient a / (c1 x + c0), c1 != 0, via synthetic division
    cdef int r = mul[neg[c0], inv[c1]]
    cdef int acc, i
    if n == 0:
        return 0
    acc = a[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = acc
        acc = add[mul[acc, r], a[i]]
    return _pscale_inplace(mul, out, n - 1, inv[c1])


# ---------------------------------------------------------------------------
# evaluation and orbits
# ---------------------------------------------------------------------------


def eval_on_line(tables, num, den):
    """Image code of every point 0..q (code q = infinity)."""
    cdef int q = tables.q
    cdef const int[:, ::1] add = tables.add
    cdef const int[:, ::1] mul = tables.mul
    cdef const int[::1] inv = tables.inv
    cdef int nn = len(num), nd = len(den)
    cdef int* cn = <int*> PyMem_Malloc(sizeof(int) * (nn + nd))
    if not cn:
        raise MemoryError()
    cdef int* cd = cn + nn
    cdef int i, u, nv, dv
    for i in range(nn):
        cn[i] = num[i]
    for i in range(nd):
        cd[i] = den[i]
    out = [0] * (q + 1)
    try:
        for u in range(q):
            nv = 0
            for i in range(nn - 1, -1, -1):
                nv = add[mul[nv, u], cn[i]]
            dv = 0
            for i in range(nd - 1, -1, -1):
                dv = add[mul[dv, u], cd[i]]
            out[u] = q if dv == 0 else mul[nv, inv[dv]]
        if nn > nd:
            out[q] = q
        elif nn < nd:
            out[q] = 0
        else:
            out[q] = mul[cn[nn - 1], inv[cd[nd - 1]]]
    finally:
        PyMem_Free(cn)
    return out


cdef inline int _apply_c(const int[:, ::1] add, const int[:, ::1] mul, const int[::1] inv,
                         int a, int b, int c, int d, int u, int q) noexcept:
    cdef int den
    if u == q:
        return q if c == 0 else mul[a, inv[c]]
    den = add[mul[c, u], d]
    if den == 0:
        return q
    return mul[add[mul[a, u], b], inv[den]]


cdef void _orbit_reps_c(const int[:, ::1] add, const int[:, ::1] mul, const int[::1] inv,
                        int a, int b, int c, int d, int q, int* reps, int* block) noexcept:
    cdef int start, u, blen, rep, i
    for i in range(q + 1):
        reps[i] = -1
    for start in range(q + 1):
        if reps[start] >= 0:
            continue
        blen = 0
        block[blen] = start
        blen += 1
        u = _apply_c(add, mul, inv, a, b, c, d, start, q)
        while u != start:
            block[blen] = u
            blen += 1
            u = _apply_c(add, mul, inv, a, b, c, d, u, q)
        rep = block[0]
        for i in range(1, blen):
            if block[i] < rep:
                rep = block[i]
        for i in range(blen):
            reps[block[i]] = rep


def orbit_reps(tables, int a, int b, int c, int d):
    """Minimum orbit member for every point under iterating (ax+b)/(cx+d)."""
    cdef int q = tables.q
    cdef const int[:, ::1] add = tables.add
    cdef const int[:, ::1] mul = tables.mul
    cdef const int[::1] inv = tables.inv
    cdef int* reps = <int*> PyMem_Malloc(sizeof(int) * 2 * (q + 1))
    if not reps:
        raise MemoryError()
    cdef int i
    try:
        _orbit_reps_c(add, mul, inv, a, b, c, d, q, reps, reps + (q + 1))
        return [reps[i] for i in range(q + 1)]
    finally:
        PyMem_Free(reps)


# ---------------------------------------------------------------------------
# the exhaustive cyclic-subgroup scan
# ---------------------------------------------------------------------------


cdef struct Scratch:
    int* den
    int* num
    int* dk
    int* term
    int* g
    int* wa
    int* wb
    int* wq
    int* tn
    int* td
    int* tv
    int* xa
    int* xb
    int* imgs
    int* fibrep
    int* orbrep
    int* counts
    int* block


cdef int _substitute_c(const int[:, ::1] add, const int[:, ::1] mul,
                       const int* coeffs, int nc, int n,
                       int a, int b, int c, int d,
                       int* t, int* v, int* work) noexcept:
    # t = coeffs(u/v) * v^n for u = a x + b, v = c x + d; returns len(t)
    cdef int nt = 0, nv = 1, i, j, cf
    v[0] = 1
    if n < nc and coeffs[n]:
        t[0] = coeffs[n]
        nt = 1
    for i in range(n - 1, -1, -1):
        nv = _plinmul_out(add, mul, v, nv, c, d, work)
        for j in range(nv):
            v[j] = work[j]
        nt = _plinmul_out(add, mul, t, nt, a, b, work)
        for j in range(nt):
            t[j] = work[j]
        cf = coeffs[i] if i < nc else 0
        if cf:
            for j in range(nv):
                work[j] = mul[v[j], cf]
            nt = _padd_into(add, t, nt, work, nv)
    return nt


cdef bint _invariant_under_c(const int[:, ::1] add, const int[:, ::1] mul,
                             Scratch* s, const int* num, int nnum,
                             const int* den, int nden, int n,
                             int a, int b, int c, int d) noexcept:
    cdef int ntn, ntd, nl, nr, i
    ntn = _substitute_c(add, mul, num, nnum, n, a, b, c, d, s.tn, s.tv, s.wq)
    ntd = _substitute_c(add, mul, den, nden, n, a, b, c, d, s.td, s.tv, s.wq)
    nl = _pmul_out(add, mul, s.tn, ntn, den, nden, s.xa)
    nr = _pmul_out(add, mul, s.td, ntd, num, nnum, s.xb)
    if nl != nr:
        return False
    for i in range(nl):
        if s.xa[i] != s.xb[i]:
            return False
    return True


cdef dict _subgroup_record(const int[:, ::1] add, const int[:, ::1] mul,
                           const int[::1] neg, const int[::1] inv,
                           Scratch* s, const int* sub, int n, int q, int p,
                           bint check_all):
    cdef bint nonaffine_ok = True
    cdef int k, i, u, t, ca, cb, cc, cd
    for k in range(1, n):
        if sub[4 * k + 2] == 0:
            nonaffine_ok = False

    # denominator: product of the linear pole factors of the iterates
    cdef int nden = 1, nnum, ndk, nterm, ng
    s.den[0] = 1
    for k in range(1, n):
        nden = _plinmul_out(add, mul, s.den, nden, sub[4 * k + 2], sub[4 * k + 3], s.wq)
        for i in range(nden):
            s.den[i] = s.wq[i]
    # numerator: x*den + sum of (a_k x + b_k) * den/(c_k x + d_k)
    s.num[0] = 0
    for i in range(nden):
        s.num[i + 1] = s.den[i]
    nnum = _strip(s.num, nden + 1)
    for k in range(1, n):
        ndk = _div_linear_out(add, mul, neg, inv, s.den, nden,
                              sub[4 * k + 2], sub[4 * k + 3], s.dk)
        nterm = _plinmul_out(add, mul, s.dk, ndk, sub[4 * k], sub[4 * k + 1], s.term)
        nnum = _padd_into(add, s.num, nnum, s.term, nterm)

    ng = _pgcd_len(add, mul, neg, inv, s.num, nnum, s.den, nden, s.wa, s.wb, s.g)
    cdef bint coprime_ok = ng == 1
    cdef int sc
    if not coprime_ok:
        sc = inv[s.g[ng - 1]]
        ng = _pscale_inplace(mul, s.g, ng, sc)
        for i in range(nnum):
            s.wa[i] = s.num[i]
        nnum = _exact_div_inplace(add, mul, neg, s.wa, nnum, s.g, ng, s.num)
        for i in range(nden):
            s.wa[i] = s.den[i]
        nden = _exact_div_inplace(add, mul, neg, s.wa, nden, s.g, ng, s.den)
    sc = inv[s.den[nden - 1]]
    nnum = _pscale_inplace(mul, s.num, nnum, sc)
    nden = _pscale_inplace(mul, s.den, nden, sc)
    cdef bint degree_ok = (nnum - 1 == n) and (nden - 1 == n - 1)

    # wronskian: num' * den - den' * num
    cdef int nda, nwa, ndb, nwb
    nda = _pderiv_out(mul, s.num, nnum, p, s.tn)
    nwa = _pmul_out(add, mul, s.tn, nda, s.den, nden, s.wa)
    ndb = _pderiv_out(mul, s.den, nden, p, s.td)
    nwb = _pmul_out(add, mul, s.td, ndb, s.num, nnum, s.wb)
    for i in range(nwb):
        s.wb[i] = neg[s.wb[i]]
    nwa = _padd_into(add, s.wa, nwa, s.wb, nwb)
    cdef bint separable_ok = nwa > 0

    cdef bint invariance_ok = True
    cdef int checked = 0
    for k in range(1, n):
        if checked and not check_all:
            break
        if _cgcd(k, n) != 1:
            continue
        if not _invariant_under_c(add, mul, s, s.num, nnum, s.den, nden, n,
                                  sub[4 * k], sub[4 * k + 1], sub[4 * k + 2], sub[4 * k + 3]):
            invariance_ok = False
        checked += 1

    # images of every point
    cdef int nv, dv
    for u in range(q):
        nv = 0
        for i in range(nnum - 1, -1, -1):
            nv = add[mul[nv, u], s.num[i]]
        dv = 0
        for i in range(nden - 1, -1, -1):
            dv = add[mul[dv, u], s.den[i]]
        s.imgs[u] = q if dv == 0 else mul[nv, inv[dv]]
    if nnum > nden:
        s.imgs[q] = q
    elif nnum < nden:
        s.imgs[q] = 0
    else:
        s.imgs[q] = mul[s.num[nnum - 1], inv[s.den[nden - 1]]]

    # fiber representatives: first occurrence of each image value
    for i in range(q + 1):
        s.counts[i] = -1
    for u in range(q + 1):
        t = s.imgs[u]
        if s.counts[t] < 0:
            s.counts[t] = u
        s.fibrep[u] = s.counts[t]

    # orbit representatives under the generator
    ca = sub[4]; cb = sub[5]; cc = sub[6]; cd = sub[7]
    _orbit_reps_c(add, mul, inv, ca, cb, cc, cd, q, s.orbrep, s.block)
    cdef bint partition_ok = True
    for i in range(q + 1):
        if s.orbrep[i] != s.fibrep[i]:
            partition_ok = False
            break

    # orbit sizes and split count
    for i in range(q + 1):
        s.counts[i] = 0
    for i in range(q + 1):
        s.counts[s.orbrep[i]] += 1
    sizes = []
    for i in range(q + 1):
        if s.counts[i] > 0:
            sizes.append(s.counts[i])
    sizes.sort()

    for i in range(q + 1):
        s.counts[i] = 0
    for i in range(q + 1):
        s.counts[s.imgs[i]] += 1
    cdef int split = 0
    for i in range(q + 1):
        if s.counts[i] == n:
            split += 1

    cdef int gens = 0
    for k in range(1, n):
        if _cgcd(k, n) == 1:
            gens += 1

    return {
        "order": n,
        "generator": (sub[4], sub[5], sub[6], sub[7]),
        "generator_count": gens,
        "nonaffine_ok": nonaffine_ok,
        "coprime_ok": coprime_ok,
        "degree_ok": degree_ok,
        "separable_ok": separable_ok,
        "invariance_ok": invariance_ok,
        "invariance_checked": checked,
        "partition_ok": partition_ok,
        "split_count": split,
        "orbit_sizes": tuple(sizes),
    }


cdef long long _visit(const int[:, ::1] add, const int[:, ::1] mul,
                      const int[::1] neg, const int[::1] inv,
                      Scratch* s, int* mats, int* sub,
                      int pa, int pb, int pc, int pd, int q, int p,
                      list records, set assigned, bint check_all) except -1:
    cdef int n = 1, i, k, dd, step
    cdef int a1, b1, c1, d1, a2, b2, c2, d2, piv, sc
    cdef long long covered = 0
    cdef long long qq = q + 1
    cdef long long gkey
    # mats[4*j + i] holds the j-th iterate; j = 0 is the identity
    mats[0] = 1; mats[1] = 0; mats[2] = 0; mats[3] = 1
    mats[4] = pa; mats[5] = pb; mats[6] = pc; mats[7] = pd
    a1 = pa; b1 = pb; c1 = pc; d1 = pd
    while True:
        a2 = add[mul[a1, pa], mul[b1, pc]]
        b2 = add[mul[a1, pb], mul[b1, pd]]
        c2 = add[mul[c1, pa], mul[d1, pc]]
        d2 = add[mul[c1, pb], mul[d1, pd]]
        piv = a2 if a2 else c2
        if piv != 1:
            sc = inv[piv]
            a2 = mul[a2, sc]; b2 = mul[b2, sc]; c2 = mul[c2, sc]; d2 = mul[d2, sc]
        if a2 == 1 and b2 == 0 and c2 == 0 and d2 == 1:
            n += 1
            break
        n += 1
        if n > q + 1:
            raise RuntimeError("transform order exceeded q+1")
        mats[4 * n] = a2; mats[4 * n + 1] = b2
        mats[4 * n + 2] = c2; mats[4 * n + 3] = d2
        a1 = a2; b1 = b2; c1 = c2; d1 = d2
    # n is the order; iterates 0..n-1 are stored
    for dd in range(2, n + 1):
        if n % dd:
            continue
        step = n // dd
        gkey = ((<long long> mats[4 * step] * qq + mats[4 * step + 1]) * qq
                + mats[4 * step + 2]) * qq + mats[4 * step + 3]
        if gkey in assigned:
            continue
        for k in range(dd):
            for i in range(4):
                sub[4 * k + i] = mats[4 * (k * step) + i]
        records.append(_subgroup_record(add, mul, neg, inv, s, sub, dd, q, p, check_all))
        for k in range(1, dd):
            if _cgcd(k, dd) == 1:
                gkey = ((<long long> sub[4 * k] * qq + sub[4 * k + 1]) * qq
                        + sub[4 * k + 2]) * qq + sub[4 * k + 3]
                assigned.add(gkey)
                covered += 1
    return covered


def galois_subgroup_scan(tables, bint check_all_generators=False):
    """Process every cyclic subgroup generated by a non-affine transform.

    Same contract as the pure kernel: (records, covered).
    """
    cdef int q = tables.q
    cdef int p = tables.p
    cdef const int[:, ::1] add = tables.add
    cdef const int[:, ::1] mul = tables.mul
    cdef const int[::1] neg = tables.neg
    cdef const int[::1] inv = tables.inv

    cdef int wide = 2 * q + 12
    cdef int* mats = <int*> PyMem_Malloc(sizeof(int) * 4 * (q + 3))
    cdef int* pool = <int*> PyMem_Malloc(sizeof(int) * (13 * wide + 5 * (q + 1) + 4 * (q + 3)))
    if not mats or not pool:
        PyMem_Free(mats); PyMem_Free(pool)
        raise MemoryError()
    cdef Scratch s
    s.den = pool
    s.num = s.den + wide
    s.dk = s.num + wide
    s.term = s.dk + wide
    s.g = s.term + wide
    s.wa = s.g + wide
    s.wb = s.wa + wide
    s.wq = s.wb + wide
    s.tn = s.wq + wide
    s.td = s.tn + wide
    s.tv = s.td + wide
    s.xa = s.tv + wide
    s.xb = s.xa + wide
    s.imgs = s.xb + wide
    s.fibrep = s.imgs + (q + 1)
    s.orbrep = s.fibrep + (q + 1)
    s.counts = s.orbrep + (q + 1)
    s.block = s.counts + (q + 1)
    cdef int* sub = s.block + (q + 1)

    records = []
    assigned = set()
    cdef long long covered = 0
    cdef long long qq = q + 1
    cdef long long key
    cdef int b0, c0, d0, bc
    try:
        for b0 in range(1, q):
            for d0 in range(q):
                key = ((0 * qq + b0) * qq + 1) * qq + d0
                if key not in assigned:
                    covered += _visit(add, mul, neg, inv, &s, mats, sub,
                                      0, b0, 1, d0, q, p, records, assigned,
                                      check_all_generators)
        for b0 in range(q):
            for c0 in range(1, q):
                bc = mul[b0, c0]
                for d0 in range(q):
                    if d0 == bc:
                        continue
                    key = ((1 * qq + b0) * qq + c0) * qq + d0
                    if key not in assigned:
                        covered += _visit(add, mul, neg, inv, &s, mats, sub,
                                          1, b0, c0, d0, q, p, records, assigned,
                                          check_all_generators)
    finally:
        PyMem_Free(mats)
        PyMem_Free(pool)
    return records, covered


# ---------------------------------------------------------------------------
# minimum weight of a linear code from its generator matrix
# ---------------------------------------------------------------------------


def min_weight(tables, rows):
    """Minimum Hamming weight of the row space (nonzero combinations).

    Scalar multiples share a weight, so messages are enumerated with the
    first nonzero coordinate fixed to one.
    """
    cdef int q = tables.q
    cdef const int[:, ::1] add = tables.add
    cdef const int[:, ::1] mul = tables.mul
    cdef int k = len(rows)
    cdef int n = len(rows[0])
    mat = np.ascontiguousarray(np.array(rows, dtype=np.int32))
    cdef const int[:, ::1] g = mat
    cdef int* word = <int*> PyMem_Malloc(sizeof(int) * (n + k))
    if not word:
        raise MemoryError()
    cdef int* combo = word + n
    cdef int best = n + 1
    cdef int lead, tail, i, j, w, coef
    cdef bint done
    try:
        for lead in range(k):
            tail = k - lead - 1
            for i in range(tail):
                combo[i] = 0
            while True:
                for i in range(n):
                    word[i] = g[lead, i]
                for j in range(tail):
                    coef = combo[j]
                    if coef:
                        for i in range(n):
                            if g[lead + 1 + j, i]:
                                word[i] = add[word[i], mul[coef, g[lead + 1 + j, i]]]
                w = 0
                for i in range(n):
                    if word[i]:
                        w += 1
                if w < best:
                    best = w
                done = True
                for j in range(tail - 1, -1, -1):
                    combo[j] += 1
                    if combo[j] < q:
                        done = False
                        break
                    combo[j] = 0
                if done:
                    break
    finally:
        PyMem_Free(word)
    return best


# ---------------------------------------------------------------------------
# exhaustive search for high split counts
# ---------------------------------------------------------------------------


def search_maps(tables, int degree, bint poly_only=False):
    """Enumerate reduced maps of one degree, deduplicated by fiber partition.

    Returns (split, num, den) triples, one per distinct fiber partition,
    keeping the smallest (num, den) serialization as the representative.
    """
    cdef int q = tables.q
    cdef int p = tables.p
    if q >= 256:
        raise ValueError("search supports q < 256")
    cdef const int[:, ::1] add = tables.add
    cdef const int[:, ::1] mul = tables.mul
    cdef const int[::1] neg = tables.neg
    cdef const int[::1] inv = tables.inv
    cdef int d = degree
    cdef int cap = 2 * d + 4
    cdef int* pool = <int*> PyMem_Malloc(sizeof(int) * (8 * cap + 3 * (q + 1)))
    if not pool:
        raise MemoryError()
    cdef int* cn = pool
    cdef int* cd = cn + cap
    cdef int* wa = cd + cap
    cdef int* wb = wa + cap
    cdef int* gg = wb + cap
    cdef int* da = gg + cap
    cdef int* wxa = da + cap
    cdef int* wxb = wxa + cap
    cdef int* imgs = wxb + cap
    cdef int* first = imgs + (q + 1)
    cdef int* cnts = first + (q + 1)
    cdef int nn, nd, i, u, t, ng, nda, nwa, ndb, nwb, nv, dv, split, dmax
    best = {}
    sigbuf = bytearray(q + 1)
    cdef unsigned char[:] sig = sigbuf

    dens = [(1,)] if poly_only else _monic_up_to(q, d)
    try:
        for den_t in dens:
            nd = len(den_t)
            for i in range(nd):
                cd[i] = den_t[i]
            for num_t in product(range(q), repeat=d + 1):
                nn = d + 1
                for i in range(nn):
                    cn[i] = num_t[i]
                nn = _strip(cn, nn)
                if nn == 0:
                    continue
                dmax = nn - 1 if nn > nd else nd - 1
                if dmax != d:
                    continue
                ng = _pgcd_len(add, mul, neg, inv, cn, nn, cd, nd, wa, wb, gg)
                if ng != 1:
                    continue
                nda = _pderiv_out(mul, cn, nn, p, da)
                nwa = _pmul_out(add, mul, da, nda, cd, nd, wxa)
                ndb = _pderiv_out(mul, cd, nd, p, da)
                nwb = _pmul_out(add, mul, da, ndb, cn, nn, wxb)
                for i in range(nwb):
                    wxb[i] = neg[wxb[i]]
                nwa = _padd_into(add, wxa, nwa, wxb, nwb)
                if nwa == 0:
                    continue
                for u in range(q):
                    nv = 0
                    for i in range(nn - 1, -1, -1):
                        nv = add[mul[nv, u], cn[i]]
                    dv = 0
                    for i in range(nd - 1, -1, -1):
                        dv = add[mul[dv, u], cd[i]]
                    imgs[u] = q if dv == 0 else mul[nv, inv[dv]]
                if nn > nd:
                    imgs[q] = q
                elif nn < nd:
                    imgs[q] = 0
                else:
                    imgs[q] = mul[cn[nn - 1], inv[cd[nd - 1]]]
                for i in range(q + 1):
                    first[i] = -1
                    cnts[i] = 0
                for u in range(q + 1):
                    t = imgs[u]
                    if first[t] < 0:
                        first[t] = u
                    sig[u] = <unsigned char> first[t]
                    cnts[t] += 1
                split = 0
                for i in range(q + 1):
                    if cnts[i] == d:
                        split += 1
                key = bytes(sigbuf)
                serial = (tuple([cn[i] for i in range(nn)]), den_t)
                prev = best.get(key)
                if prev is None or serial < (prev[1], prev[2]):
                    best[key] = (split, serial[0], serial[1])
    finally:
        PyMem_Free(pool)
    return sorted(best.values(), key=lambda tt: (-tt[0], tt[1], tt[2]))


def _monic_up_to(q, dmax):
    out = []
    for deg in range(dmax + 1):
        for tail in product(range(q), repeat=deg):
            out.append(tuple(tail) + (1,))
    return out
