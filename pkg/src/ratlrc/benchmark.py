"""Benchmark the pure-Python kernels against the compiled extension.

Run as `python -m ratlrc.benchmark [--scan-qmax 17] [--split-qmax 64]`.
Each workload is executed once per available backend; results are checked
to agree before the timing table is printed.
"""

from __future__ import annotations

import argparse
import sys
import time

from ._kernels import backends
from .gf import field
from .goodfun import gal1, gal2
from .lrc import build_code, generator_matrix
from .goodfun import certify, tamo_barg_multiplicative
from .sweeps import prime_powers


def _workload_split_counts(impl, qmax: int):
    out = []
    for q, p, m in prime_powers(2, qmax):
        fld = field(p, m)
        for wenc in range(1, q):
            h = gal1(fld, wenc)
            out.append(sum(1 for t, c in _counts(impl.eval_on_line(
                fld.tables, list(h.num.coeffs), list(h.den.coeffs))).items() if c == 3))
    return out


def _counts(images):
    counts: dict[int, int] = {}
    for t in images:
        counts[t] = counts.get(t, 0) + 1
    return counts


def _workload_scan(impl, qmax: int):
    sig = []
    for q, p, m in prime_powers(2, qmax):
        fld = field(p, m)
        records, covered = impl.galois_subgroup_scan(fld.tables, False)
        sig.append((q, covered, len(records), sum(r["split_count"] for r in records)))
    return sig


def _workload_distance(impl):
    out = []
    for fld, builder, param, k in ((field(5, 1), gal1, 1, 4), (field(7, 1), gal2, 1, 3),
                                   (field(13, 1), tamo_barg_multiplicative, 3, 3)):
        code = build_code(certify(builder(fld, param)), k)
        out.append(impl.min_weight(fld.tables, generator_matrix(code)))
    return out


def _workload_search(impl):
    fld = field(5, 1)
    res = impl.search_maps(fld.tables, 3, False)
    return (len(res), res[0][0])


WORKLOADS = (
    ("split-counts", _workload_split_counts, "split_qmax"),
    ("subgroup-scan", _workload_scan, "scan_qmax"),
    ("min-distance", _workload_distance, None),
    ("search-deg3-F5", _workload_search, None),
)


def run(scan_qmax: int = 17, split_qmax: int = 64, repeat: int = 1) -> list[dict]:
    avail = backends()
    rows = []
    for name, fn, argname in WORKLOADS:
        row = {"workload": name}
        results = {}
        for backend, impl in avail.items():
            args = []
            if argname == "split_qmax":
                args = [split_qmax]
            elif argname == "scan_qmax":
                args = [scan_qmax]
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                results[backend] = fn(impl, *args)
                best = min(best, time.perf_counter() - t0)
            row[backend] = best
        if len(results) == 2 and results["pure"] != results["compiled"]:
            raise AssertionError(f"backend mismatch on {name}")
        if "pure" in row and "compiled" in row:
            row["speedup"] = row["pure"] / row["compiled"] if row["compiled"] > 0 else float("inf")
        rows.append(row)
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--scan-qmax", type=int, default=17)
    ap.add_argument("--split-qmax", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args(argv)
    avail = sorted(backends())
    print(f"available backends: {', '.join(avail)}")
    rows = run(args.scan_qmax, args.split_qmax, args.repeat)
    cols = ["workload"] + [b for b in ("pure", "compiled") if b in avail] + (
        ["speedup"] if len(avail) == 2 else [])
    print("  ".join(c.ljust(16) for c in cols))
    for row in rows:
        cells = [str(row["workload"]).ljust(16)]
        for b in ("pure", "compiled"):
            if b in avail:
                cells.append(f"{row[b]:.3f}s".ljust(16))
        if "speedup" in row:
            cells.append(f"{row['speedup']:.1f}x")
        print("  ".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
