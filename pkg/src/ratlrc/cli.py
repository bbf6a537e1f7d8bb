"""Command-line front end.

Subcommands: construct, encode, repair, verify, search, compare.  A JSON
config file mirroring the flags can be passed as `--config path` before
the subcommand; explicit flags win over config values.  Exit codes:
0 success, 2 usage or parameter error, 3 data error, 4 theorem violation
(reserved; should never fire).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import struct
import sys
from math import factorial

from . import __version__
from ._kernels import BACKEND, impl as _impl
from .errors import (CapExceeded, MultipleErasures, NoErasure, TheoremViolation)
from .gf import Field, field
from .goodfun import (certify, from_moebius, gal1, gal2, search,
                      tamo_barg_additive, tamo_barg_multiplicative, zero_fiber_map)
from .lrc import (Codeword, build_code, code_from_json, codeword_from_frame,
                  codeword_from_json, codeword_from_text, codeword_to_frame,
                  encode, erase, min_distance, repair_with_trace)
from .projline import MoebiusTransform
from .ratfun import RationalMap
from .sweeps import (corpus_codes, distance_report, family_conformance,
                     galois_scan, locality_roundtrip, prime_powers, worker_count)

DATA_ERRORS = (OSError, json.JSONDecodeError, MultipleErasures, NoErasure)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="ratlrc", description=__doc__)
    top.add_argument("--version", action="version", version=f"ratlrc {__version__} ({BACKEND} kernels)")
    top.add_argument("--config", help="JSON file with default flag values")
    sub = top.add_subparsers(dest="command")

    def add_field_args(p):
        p.add_argument("--p", type=int, required=False, help="field characteristic")
        p.add_argument("--m", type=int, default=None, help="extension degree (default 1)")

    con = sub.add_parser("construct", help="build a code and print its descriptor")
    add_field_args(con)
    sel = con.add_mutually_exclusive_group()
    sel.add_argument("--gal1", action="store_true", help="cubic family")
    sel.add_argument("--gal2", action="store_true", help="quartic family")
    sel.add_argument("--moebius", help="transform a,b,c,d: sum of its iterates")
    sel.add_argument("--sset", help="comma-separated zero set for the prescribed-fiber map")
    sel.add_argument("--tb-mult", action="store_true", help="power map baseline")
    sel.add_argument("--tb-add", help="comma-separated additive subgroup for the baseline")
    sel.add_argument("--map-file", help="JSON file with a rational map {num, den}")
    con.add_argument("--w", type=int, default=None, help="cubic family parameter")
    con.add_argument("--d", type=int, default=None, help="quartic family parameter")
    con.add_argument("--a", type=int, default=None, help="pole for the prescribed-fiber map")
    con.add_argument("--r", type=int, default=None, help="locality for baselines")
    con.add_argument("--k", type=int, required=False, help="code dimension")
    con.add_argument("--out", help="write descriptor JSON here")
    con.add_argument("--format", choices=("json", "text"), default=None)

    enc = sub.add_parser("encode", help="encode a message file")
    enc.add_argument("--code", required=True, help="code descriptor JSON")
    enc.add_argument("--message", required=True, help="message file (JSON array or text)")
    enc.add_argument("--out", help="write the codeword here")
    enc.add_argument("--format", choices=("json", "text", "bin"), default=None)

    rep = sub.add_parser("repair", help="repair one erased symbol of a codeword")
    rep.add_argument("--code", required=True)
    rep.add_argument("--word", required=True, help="codeword file; '?' or null marks the erasure")
    rep.add_argument("--word-format", choices=("json", "text", "bin"), default=None,
                     help="input format (default: auto-detect)")
    rep.add_argument("--out", help="write the repaired codeword here")
    rep.add_argument("--format", choices=("json", "text"), default=None)

    ver = sub.add_parser("verify", help="sweep fields and check the structural laws")
    ver.add_argument("--qmin", type=int, default=None)
    ver.add_argument("--qmax", type=int, required=False)
    ver.add_argument("--scan-qmax", type=int, default=None,
                     help="cap for the exhaustive transform scan (default qmax)")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--format", choices=("text", "csv", "json"), default=None)
    ver.add_argument("--out", help="write the table here")

    sea = sub.add_parser("search", help="exhaustive search for maps with many full fibers")
    add_field_args(sea)
    sea.add_argument("--deg", type=int, required=False)
    sea.add_argument("--top", type=int, default=None)
    sea.add_argument("--poly-only", action="store_true")
    sea.add_argument("--format", choices=("text", "csv", "json"), default=None)
    sea.add_argument("--out")

    cmp_ = sub.add_parser("compare", help="rational constructions vs polynomial baselines")
    add_field_args(cmp_)
    cmp_.add_argument("--r", type=int, required=False)
    cmp_.add_argument("--format", choices=("text", "json"), default=None)
    cmp_.add_argument("--out")
    return top


DEFAULTS = {
    "m": 1, "w": 1, "d": 1, "qmin": 2, "seed": 0, "top": 10, "format": None,
}


def _fill_defaults(args):
    for key, val in DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, val)


def _emit(args, text: str):
    if text and not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_bytes(args, blob: bytes):
    if getattr(args, "out", None):
        with open(args.out, "wb") as fh:
            fh.write(blob)
    else:
        sys.stdout.buffer.write(blob)


def _json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _build_field(args) -> Field:
    if args.p is None:
        raise ValueError("--p is required")
    return field(args.p, args.m)


def _construct_map(args, fld: Field) -> RationalMap:
    if args.gal1:
        return gal1(fld, args.w)
    if args.gal2:
        return gal2(fld, args.d)
    if args.moebius:
        a, b, c, d = (int(v) for v in args.moebius.split(","))
        return from_moebius(MoebiusTransform(fld, a, b, c, d))
    if args.sset:
        if args.a is None:
            raise ValueError("--sset needs --a")
        pts = [fld.element(int(v)) for v in args.sset.split(",")]
        return zero_fiber_map(pts, fld.element(args.a))
    if args.tb_mult:
        if args.r is None:
            raise ValueError("--tb-mult needs --r")
        return tamo_barg_multiplicative(fld, args.r)
    if args.tb_add:
        return tamo_barg_additive(fld, [int(v) for v in args.tb_add.split(",")])
    if args.map_file:
        with open(args.map_file) as fh:
            return RationalMap.from_json(fld, json.load(fh))
    raise ValueError("no construction selected")


def cmd_construct(args) -> int:
    fld = _build_field(args)
    if args.k is None:
        raise ValueError("--k is required")
    cert = certify(_construct_map(args, fld))
    code = build_code(cert, args.k)
    desc = code.to_json()
    if args.format == "text":
        lines = [
            f"code n={code.n} k={code.k} r={code.r} over GF({fld.q})",
            f"b={code.b} inverted={code.inverted} groups={code.l}",
            f"layout: {' '.join(str(p.to_json()) for p in code.layout)}",
        ]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, _json(desc))
    return 0


def _load_code(path: str):
    with open(path) as fh:
        return code_from_json(json.load(fh))


def _load_message(path: str):
    with open(path) as fh:
        text = fh.read()
    text_s = text.strip()
    if text_s.startswith("["):
        return json.loads(text_s)
    return [int(tok) for tok in text_s.split()]


def cmd_encode(args) -> int:
    code = _load_code(args.code)
    word = encode(code, _load_message(args.message))
    if args.format == "bin":
        _emit_bytes(args, codeword_to_frame(word))
    elif args.format == "text":
        _emit(args, word.to_text())
    else:
        _emit(args, _json(word.to_json()))
    return 0


def _load_word(path: str, fld, fmt: str | None = None) -> Codeword:
    with open(path, "rb") as fh:
        blob = fh.read()
    if fmt in (None, "bin"):
        try:
            return codeword_from_frame(fld, blob)
        except (ValueError, struct.error):
            if fmt == "bin":
                raise
    text_s = blob.decode().strip()
    if text_s.startswith("["):
        return codeword_from_json(fld, json.loads(text_s))
    return codeword_from_text(fld, text_s)


def cmd_repair(args) -> int:
    code = _load_code(args.code)
    word = _load_word(args.word, code.field, getattr(args, "word_format", None))
    value, trace = repair_with_trace(code, word)
    repaired = erase(word, [])  # copy
    symbols = list(repaired.symbols)
    symbols[trace.position] = value.enc
    fixed = Codeword(code.field, tuple(symbols))
    sys.stdout.write(
        f"repaired position {trace.position} = {value.enc}; "
        f"read {len(trace.read_positions)} symbols from group {trace.group}\n")
    if args.out:
        if args.format == "text":
            _emit(args, fixed.to_text())
        else:
            _emit(args, _json(fixed.to_json()))
    return 0


def _verify_rows_for_field(task) -> list[dict]:
    q, p, m, do_scan, seed = task
    fld = field(p, m)
    rows = []
    rep = family_conformance(fld, "gal1")
    rows.append({"q": q, "check": "gal1-split", "branch": rep.branch,
                 "count": rep.expected, "status": "PASS" if rep.ok else "FAIL"})
    if q % 2 == 1:
        rep = family_conformance(fld, "gal2")
        rows.append({"q": q, "check": "gal2-split", "branch": rep.branch,
                     "count": rep.expected, "status": "PASS" if rep.ok else "FAIL"})
    if do_scan:
        scan = galois_scan(fld)
        rows.append({"q": q, "check": "subgroup-scan", "branch": f"subgroups={scan.subgroups}",
                     "count": scan.elements, "status": "PASS" if scan.ok else "FAIL"})
    for label, code in corpus_codes():
        if code.field.q != q:
            continue
        try:
            rep_d = min_distance(code)
            ok = rep_d.optimal
            count = rep_d.distance
        except CapExceeded:
            ok = True
            count = -1
        locality_roundtrip(code, 2, seed)
        rows.append({"q": q, "check": f"distance {label}", "branch": f"singleton={code.singleton_value()}",
                     "count": count, "status": "PASS" if ok else "FAIL"})
    return rows


def cmd_verify(args) -> int:
    if args.qmax is None:
        raise ValueError("--qmax is required")
    scan_qmax = args.scan_qmax if args.scan_qmax is not None else args.qmax
    tasks = [(q, p, m, q <= scan_qmax, args.seed) for q, p, m in prime_powers(args.qmin, args.qmax)]
    workers = worker_count()
    if workers > 1:
        import multiprocessing as mp

        with mp.Pool(workers) as pool:
            chunks = pool.map(_verify_rows_for_field, tasks)
    else:
        chunks = [_verify_rows_for_field(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    failed = any(r["status"] == "FAIL" for r in rows)
    _emit(args, _format_rows(rows, args.format, ("q", "check", "branch", "count", "status")))
    return 4 if failed else 0


def cmd_search(args) -> int:
    fld = _build_field(args)
    if args.deg is None:
        raise ValueError("--deg is required")
    results = search(fld, args.deg, top_k=args.top, poly_only=args.poly_only)
    rows = []
    for h, split in results:
        rows.append({
            "num": json.dumps(list(h.num.coeffs)),
            "den": json.dumps(list(h.den.coeffs)),
            "split": split,
            "certificate": json.dumps(certify(h).to_json(), sort_keys=True),
        })
    _emit(args, _format_rows(rows, args.format, ("split", "num", "den", "certificate")))
    return 0


def _best_rational(fld: Field, r: int):
    """Best cyclic construction of degree r+1: (label, map) or None."""
    if r == 2:
        return "gal1", gal1(fld, 1)
    if r == 3 and fld.q % 2 == 1:
        return "gal2", gal2(fld, 1)
    if fld.q > 64 or fld.tables is None:
        raise CapExceeded("generic locality needs a scan-sized field (q <= 64)")
    records, _ = _impl.galois_subgroup_scan(fld.tables, False)
    best = None
    for rec in records:
        if rec["order"] == r + 1 and (best is None or rec["split_count"] > best["split_count"]):
            best = rec
    if best is None:
        return None
    phi = MoebiusTransform(fld, *best["generator"])
    return f"iterate-sum order {r + 1}", from_moebius(phi)


def cmd_compare(args) -> int:
    fld = _build_field(args)
    if args.r is None:
        raise ValueError("--r is required")
    r = args.r
    q = fld.q
    report: dict = {"q": q, "r": r}

    found = _best_rational(fld, r)
    if found is None:
        report["rational"] = {"available": False, "reason": f"no cyclic subgroup of order {r + 1}"}
    else:
        label, h = found
        split = h.split_count()
        entry = {"available": True, "construction": label, "l": split, "n": (r + 1) * split}
        cert = certify(h)
        entry["certificate"] = cert.to_json()
        code = build_code(cert, r)
        try:
            dist = min_distance(code)
            entry["distance"] = dist.distance
            entry["singleton"] = dist.singleton_value
            entry["optimal"] = dist.optimal
        except CapExceeded:
            entry["distance"] = None
        report["rational"] = entry

    if (q - 1) % (r + 1) == 0:
        lm = (q - 1) // (r + 1)
        report["tb_multiplicative"] = {"available": True, "l": lm, "n": q - 1}
    else:
        report["tb_multiplicative"] = {
            "available": False, "reason": f"{r + 1} does not divide q-1 = {q - 1}"}
    size = 1
    while size < r + 1:
        size *= fld.p
    if size == r + 1 and r + 1 <= q:
        report["tb_additive"] = {"available": True, "l": q // (r + 1), "n": q}
    else:
        report["tb_additive"] = {
            "available": False, "reason": f"{r + 1} is not a power of p = {fld.p} within the field"}

    if fld.q ** (2 * (r + 1) + 1) <= 10**7 and fld.tables is not None:
        best_poly = search(fld, r + 1, top_k=1, poly_only=True)
        split = best_poly[0][1] if best_poly else 0
        report["poly_search"] = {"available": True, "l": split, "n": (r + 1) * split}
    else:
        report["poly_search"] = {"available": False, "reason": "enumeration cap"}

    report["asymptotic"] = {
        "rational_l": q / (r + 1),
        "generic_poly_l": q / factorial(r + 1),
        "improvement_factor": factorial(r),
    }

    if args.format == "json" or args.format is None:
        _emit(args, _json(report))
    else:
        lines = [f"q={q} r={r}"]
        for key in ("rational", "tb_multiplicative", "tb_additive", "poly_search"):
            ent = report[key]
            if ent.get("available"):
                extra = f" optimal={ent['optimal']}" if "optimal" in ent else ""
                lines.append(f"  {key}: n={ent['n']} l={ent['l']}{extra}")
            else:
                lines.append(f"  {key}: NA ({ent['reason']})")
        asym = report["asymptotic"]
        lines.append(f"  asymptotic: q/(r+1)={asym['rational_l']:.3f} vs "
                     f"q/(r+1)!={asym['generic_poly_l']:.3f} (factor r! = {asym['improvement_factor']})")
        _emit(args, "\n".join(lines))
    return 0


def _format_rows(rows: list[dict], fmt: str | None, columns) -> str:
    if fmt == "json":
        return _json(rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(columns), extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    widths = {c: max(len(str(c)), *(len(str(r.get(c, ""))) for r in rows)) if rows else len(c)
              for c in columns}
    lines = ["  ".join(str(c).ljust(widths[c]) for c in columns)]
    for r in rows:
        lines.append("  ".join(str(r.get(c, "")).ljust(widths[c]) for c in columns))
    return "\n".join(lines)


HANDLERS = {
    "construct": cmd_construct,
    "encode": cmd_encode,
    "repair": cmd_repair,
    "verify": cmd_verify,
    "search": cmd_search,
    "compare": cmd_compare,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    # config preprocessing: inject the command and defaults from the file
    cfg = {}
    if "--config" in argv:
        try:
            cfg_path = argv[argv.index("--config") + 1]
        except IndexError:
            parser.error("--config needs a path")
        try:
            with open(cfg_path) as fh:
                cfg = json.load(fh)
        except DATA_ERRORS as exc:
            sys.stderr.write(f"error: cannot read config: {exc}\n")
            return 3
        if not any(a in HANDLERS for a in argv):
            cmd = cfg.get("command")
            if cmd:
                argv.append(str(cmd))
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    for key, val in cfg.items():
        if key in ("command", "config"):
            continue
        attr = key.replace("-", "_")
        if getattr(args, attr, None) in (None, False):
            setattr(args, attr, val)
    _fill_defaults(args)
    try:
        return HANDLERS[args.command](args)
    except TheoremViolation as exc:
        sys.stderr.write(f"theorem violation: {exc}\n")
        return 4
    except DATA_ERRORS as exc:
        sys.stderr.write(f"data error: {exc}\n")
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
