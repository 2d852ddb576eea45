"""Command line front door.

Exit codes: 0 when the property holds, 1 when it fails (a certificate is
emitted), 2 on parse or validation errors, and 3 when --verify finds an
output that does not pass its own checker (or a stored certificate is bad).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import io as cio
from .bigraph import (
    OddCycleError,
    SubgraphCertificate,
    induced_matches,
    recognize_pcab,
    recognize_pib,
    verify_bimodel,
    verify_interval_bimodel,
)
from .catalog import FAMILY_NAMES, CatalogId, family, generate
from .certificates import NegCertificate
from .compatible import cco, d_interval, lco
from .consecutive import circular_ones, circular_ones_certificate, consecutive_ones
from .dcircular import d_circular
from .generators import planted_by_size, planted_d_circular, random_circular, random_matrix
from .matrix import Biorder, BinMatrix
from .oracle import (
    brute_cco,
    brute_property,
    verify_cco_biorder,
    verify_certificate,
    verify_lco_biorder,
    order_satisfies,
)

PROPERTIES = ("c1", "circ1", "dint", "dcirc", "lco", "cco")

_PROP_LONG = {
    "c1": "consecutive_ones",
    "circ1": "circular_ones",
    "dint": "d_interval",
    "dcirc": "d_circular",
    "lco": "lco",
    "cco": "cco",
}


@dataclass
class RunReport:
    property: str
    verdict: str
    witness: Optional[object]
    certificate: Optional[object]
    timing: float
    input_digest: str
    fail_index: Optional[int] = None


def _recognize_matrix(prop: str, m: BinMatrix) -> tuple[str, object, object, Optional[int]]:
    """(verdict, witness, certificate, fail_index)."""
    if prop == "c1":
        res = consecutive_ones(m)
        if res.ok:
            return "yes", res.order, None, None
        return "no", None, None, res.fail_index
    if prop == "circ1":
        res = circular_ones(m)
        if res.ok:
            return "yes", res.order, None, None
        return "no", None, circular_ones_certificate(m), res.fail_index
    if prop == "dint":
        r = d_interval(m)
        return ("yes", r.order, None, None) if r.ok else ("no", None, r.cert, None)
    if prop == "dcirc":
        r = d_circular(m)
        return ("yes", r.order, None, None) if r.ok else ("no", None, r.cert, None)
    if prop == "lco":
        r = lco(m)
        return ("yes", r.biorder, None, None) if r.ok else ("no", None, r.cert, None)
    if prop == "cco":
        r = cco(m)
        return ("yes", r.biorder, None, None) if r.ok else ("no", None, r.cert, None)
    raise ValueError(f"unknown property {prop!r}")


def _self_check(prop: str, host, witness, certificate) -> bool:
    long = _PROP_LONG.get(prop, prop)
    if witness is not None:
        if isinstance(witness, Biorder):
            if prop == "lco":
                return verify_lco_biorder(host, witness)
            return verify_cco_biorder(host, witness)
        if prop in ("c1", "circ1", "dint", "dcirc"):
            return order_satisfies(host, witness, long)
        if prop == "pcab":
            return verify_bimodel(host, witness)
        if prop == "pib":
            return verify_interval_bimodel(host, witness)
        return False
    if certificate is None:
        return prop == "c1"
    return verify_certificate(host, certificate, long)


def _report_json(rep: RunReport) -> dict:
    witness = cio.witness_to_json(rep.witness) if rep.witness is not None else None
    cert = cio.certificate_to_json(rep.certificate) if rep.certificate is not None else None
    return {
        "property": rep.property,
        "verdict": rep.verdict,
        "witness": witness,
        "certificate": cert,
    }


def _report_human(rep: RunReport, path: str) -> str:
    lines = [f"{path}: {rep.property} -> {rep.verdict} ({rep.timing * 1000:.1f} ms, sha256 {rep.input_digest[:12]})"]
    if rep.fail_index is not None:
        lines.append(f"  least failing prefix: {rep.fail_index}")
    if rep.witness is not None:
        w = cio.witness_to_json(rep.witness)
        if w["type"] == "order":
            lines.append(f"  order: {' '.join(map(str, w['columns']))}")
        elif w["type"] == "biorder":
            lines.append(f"  rows:    {' '.join(map(str, w['rows']))}")
            lines.append(f"  columns: {' '.join(map(str, w['columns']))}")
        else:
            lines.append(f"  bimodel on {len(w['family1'])} + {len(w['family2'])} arcs")
    if rep.certificate is not None:
        c = cio.certificate_to_json(rep.certificate)
        cid = c["id"]
        name = cid["family"] + (f"({cid.get('k')})" if cid.get("k") else "")
        if cid.get("a"):
            name = f"{cid['a']}(+){cid['family'].rstrip('T')}({cid['k']})" + ("T" if cid["family"].endswith("T") else "")
        lines.append(f"  certificate: {name} rows={c['rho']} cols={c['sigma']}")
    return "\n".join(lines)


def _run_one(path: str, prop: str, kind: str, do_verify: bool):
    """Worker for recognize/bigraph/oracle runs; returns (code, report, err)."""
    try:
        text = open(path).read()
    except OSError as ex:
        return 2, "", f"cannot read {path}: {ex}"
    digest = hashlib.sha256(text.encode()).hexdigest()
    t0 = time.perf_counter()
    try:
        if kind == "matrix":
            host = cio.parse_matrix(text)
            verdict, witness, cert, fail = _recognize_matrix(prop, host)
        elif kind == "oracle":
            host = cio.parse_matrix(text)
            long = _PROP_LONG[prop]
            if prop == "cco":
                v = brute_cco(host)
            elif prop == "lco":
                v = brute_property(host, "d_interval")
            else:
                v = brute_property(host, long)
            verdict = "yes" if v.holds else "no"
            witness, cert, fail = v.witness, None, None
        else:
            host = cio.parse_graph(text)
            r = recognize_pcab(host) if prop == "pcab" else recognize_pib(host)
            verdict = "yes" if r.ok else "no"
            witness = r.bimodel if r.ok else None
            cert = None if r.ok else r.cert
            fail = None
    except (cio.ParseError, OddCycleError, ValueError) as ex:
        return 2, "", f"{path}: {ex}"
    rep = RunReport(prop, verdict, witness, cert, time.perf_counter() - t0, digest, fail)
    if do_verify and kind != "oracle":
        if not _self_check(prop, host, witness, cert):
            return 3, "", f"{path}: emitted {verdict!r} result failed its own checker"
    return (0 if verdict == "yes" else 1), rep, ""


def _emit(result, path: str, as_json: bool) -> int:
    code, rep, err = result
    if err:
        print(err, file=sys.stderr)
        return code
    if as_json:
        print(json.dumps(_report_json(rep), sort_keys=True))
    else:
        print(_report_human(rep, path))
    return code


def _cmd_batch(args, kind: str) -> int:
    prop = args.property if kind != "graph" else args.klass
    worst = 0
    if args.jobs > 1 and len(args.files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(
                _run_one, args.files, [prop] * len(args.files),
                [kind] * len(args.files), [args.verify] * len(args.files),
            ))
    else:
        results = [_run_one(f, prop, kind, args.verify) for f in args.files]
    for path, result in zip(args.files, results):
        code = _emit(result, path, args.json)
        worst = max(worst, code)
    return worst


def _cmd_catalog(args) -> int:
    try:
        members = family(args.family, args.k)
    except ValueError as ex:
        print(ex, file=sys.stderr)
        return 2
    for cid, mat in members:
        if args.json:
            entry = {"id": cio._id_to_json(cid), "shape": list(mat.shape)}
            if args.emit:
                entry["rows"] = [list(r) for r in mat.rows]
            print(json.dumps(entry, sort_keys=True))
        else:
            print(f"{cid}  ({mat.n_rows}x{mat.n_cols})")
            if args.emit:
                for row in mat.to_dense():
                    print("  " + "".join(str(v) for v in row))
    return 0


def _cmd_gen(args) -> int:
    if args.kind == "random":
        m = random_matrix(args.rows, args.cols, args.density, args.seed)
    elif args.kind == "circular":
        m = random_circular(args.rows, args.cols, args.seed)
    elif args.size is not None:
        m = planted_by_size(args.size, args.seed)
    else:
        m = planted_d_circular(args.rows, args.cols, args.seed)
    sys.stdout.write(cio.serialize_matrix(m))
    return 0


def _cmd_verify(args) -> int:
    try:
        data = json.loads(open(args.cert).read())
        text = open(args.file).read()
    except (OSError, json.JSONDecodeError) as ex:
        print(ex, file=sys.stderr)
        return 2
    prop = data.get("property")
    if prop not in PROPERTIES and prop not in ("pcab", "pib"):
        print(f"unknown property in certificate: {prop!r}", file=sys.stderr)
        return 2
    try:
        if prop in ("pcab", "pib"):
            host = cio.parse_graph(text)
        else:
            host = cio.parse_matrix(text)
    except (cio.ParseError, OddCycleError) as ex:
        print(ex, file=sys.stderr)
        return 2
    if data.get("verdict") == "yes":
        w = data.get("witness") or {}
        if w.get("type") == "order":
            ok = order_satisfies(host, tuple(w["columns"]), _PROP_LONG[prop])
        elif w.get("type") == "biorder":
            b = Biorder(tuple(w["rows"]), tuple(w["columns"]))
            ok = verify_lco_biorder(host, b) if prop == "lco" else verify_cco_biorder(host, b)
        elif w.get("type") == "bimodel":
            bm = cio.bimodel_from_json(w)
            ok = (
                verify_interval_bimodel(host, bm)
                if w.get("kind") == "interval"
                else verify_bimodel(host, bm)
            )
        else:
            print(f"unknown witness type {w.get('type')!r}", file=sys.stderr)
            return 2
    else:
        cert_data = data.get("certificate")
        if cert_data is None:
            print("no certificate recorded", file=sys.stderr)
            return 2
        if prop in ("pcab", "pib"):
            cid = cio.id_from_json(cert_data["id"])
            vm = {f"r{t}": v for t, v in enumerate(cert_data["rho"], start=1)}
            vm.update({f"c{t}": v for t, v in enumerate(cert_data["sigma"], start=1)})
            cert = SubgraphCertificate(cert_data.get("kind", ""), cid, vm)
            ok = verify_certificate(host, cert, prop)
        else:
            cert = cio.certificate_from_json(cert_data)
            ok = verify_certificate(host, cert, _PROP_LONG[prop])
    if ok:
        print("certificate OK")
        return 0
    print("certificate INVALID", file=sys.stderr)
    return 3


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="circmat", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    rec = sub.add_parser("recognize", help="recognize a matrix property")
    rec.add_argument("--property", required=True, choices=PROPERTIES)
    rec.add_argument("files", nargs="+", metavar="FILE")

    big = sub.add_parser("bigraph", help="recognize a bigraph class")
    big.add_argument("--class", dest="klass", required=True, choices=("pcab", "pib"))
    big.add_argument("files", nargs="+", metavar="FILE")

    orc = sub.add_parser("oracle", help="brute-force verdict (small inputs)")
    orc.add_argument("--property", required=True, choices=PROPERTIES)
    orc.add_argument("files", nargs="+", metavar="FILE")

    cat = sub.add_parser("catalog", help="list a forbidden family")
    cat.add_argument("--family", required=True, choices=FAMILY_NAMES)
    cat.add_argument("--k", type=int, default=8)
    cat.add_argument("--emit", action="store_true", help="print the matrices")

    ver = sub.add_parser("verify", help="re-check a stored certificate")
    ver.add_argument("cert", metavar="CERT.json")
    ver.add_argument("file", metavar="FILE")

    gen = sub.add_parser("gen", help="generate a test matrix")
    gen.add_argument("--kind", required=True, choices=("circular", "random", "planted"))
    gen.add_argument("--rows", type=int, default=12)
    gen.add_argument("--cols", type=int, default=12)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--density", type=float, default=0.5)
    gen.add_argument("--size", type=int, default=None,
                     help="planted only: target size (rows+cols+ones)")

    for p in (rec, big, orc):
        p.add_argument("--json", action="store_true")
        p.add_argument("--verify", action="store_true",
                       help="self-check outputs before printing (exit 3 on failure)")
        p.add_argument("--jobs", type=int, default=1)
    cat.add_argument("--json", action="store_true")
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "recognize":
        return _cmd_batch(args, "matrix")
    if args.cmd == "bigraph":
        return _cmd_batch(args, "graph")
    if args.cmd == "oracle":
        return _cmd_batch(args, "oracle")
    if args.cmd == "catalog":
        return _cmd_catalog(args)
    if args.cmd == "verify":
        return _cmd_verify(args)
    if args.cmd == "gen":
        return _cmd_gen(args)
    raise AssertionError


if __name__ == "__main__":
    sys.exit(main())
