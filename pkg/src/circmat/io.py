"""File formats and JSON serialization for the command line tool.

Matrix files: dense (header "k l", then k lines over {0,1}, whitespace
ignored) or sparse (header "k l sparse", then one "i: c1 c2 ..." line per
nonempty row).  Graph files: optional "X:"/"Y:" side lines followed by one
edge per line; a bare edge list gets bipartitioned automatically.  Blank
lines and '#' comments are allowed everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .bigraph import Bigraph, Bimodel, IntervalBimodel, SubgraphCertificate, as_bigraph
from .catalog import CatalogId
from .certificates import NegCertificate
from .matrix import Biorder, BinMatrix, Embedding


class ParseError(ValueError):
    pass


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_matrix(text: str) -> BinMatrix:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty matrix file")
    head = lines[0].split()
    if len(head) not in (2, 3) or not head[0].isdigit() or not head[1].isdigit():
        raise ParseError(f"bad header {lines[0]!r}; expected 'k l' or 'k l sparse'")
    k, l = int(head[0]), int(head[1])
    sparse = len(head) == 3
    if sparse and head[2] != "sparse":
        raise ParseError(f"bad header token {head[2]!r}")
    body = lines[1:]
    if sparse:
        rows: list[list[int]] = [[] for _ in range(k)]
        for line in body:
            if ":" not in line:
                raise ParseError(f"sparse row without ':': {line!r}")
            idx, cells = line.split(":", 1)
            try:
                i = int(idx)
            except ValueError:
                raise ParseError(f"bad row index {idx!r}") from None
            if not 1 <= i <= k:
                raise ParseError(f"row index {i} out of range 1..{k}")
            try:
                cols = [int(c) for c in cells.split()]
            except ValueError:
                raise ParseError(f"bad column list in {line!r}") from None
            for c in cols:
                if not 1 <= c <= l:
                    raise ParseError(f"column {c} out of range 1..{l}")
            rows[i - 1] = cols
        return BinMatrix(l, rows)
    if len(body) != k:
        raise ParseError(f"expected {k} dense rows, found {len(body)}")
    rows = []
    for line in body:
        bits = [ch for ch in line if not ch.isspace()]
        if len(bits) != l or any(ch not in "01" for ch in bits):
            raise ParseError(f"bad dense row {line!r}; expected {l} binary digits")
        rows.append([j + 1 for j, ch in enumerate(bits) if ch == "1"])
    return BinMatrix(l, rows)


def serialize_matrix(m: BinMatrix, sparse: Optional[bool] = None) -> str:
    if sparse is None:
        sparse = m.n_cols > 64
    if sparse:
        lines = [f"{m.n_rows} {m.n_cols} sparse"]
        for i, row in enumerate(m.rows, start=1):
            lines.append(f"{i}: " + " ".join(str(c) for c in row))
        return "\n".join(lines) + "\n"
    lines = [f"{m.n_rows} {m.n_cols}"]
    for row in m.to_dense():
        lines.append("".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Bigraph:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty graph file")
    xs: Optional[list[str]] = None
    ys: Optional[list[str]] = None
    edges = []
    vertices: dict[str, None] = {}
    for line in lines:
        if line.startswith("X:"):
            xs = line[2:].split()
            for v in xs:
                vertices.setdefault(v)
            continue
        if line.startswith("Y:"):
            ys = line[2:].split()
            for v in ys:
                vertices.setdefault(v)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"bad edge line {line!r}")
        u, v = parts
        vertices.setdefault(u)
        vertices.setdefault(v)
        edges.append((u, v))
    if (xs is None) != (ys is None):
        raise ParseError("provide both X: and Y: lines or neither")
    if xs is None:
        adj: dict[str, list[str]] = {v: [] for v in vertices}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        return as_bigraph(adj)
    xset, yset = set(xs), set(ys)
    if xset & yset:
        raise ParseError("X and Y overlap")
    norm = []
    for u, v in edges:
        if u in xset and v in yset:
            norm.append((u, v))
        elif v in xset and u in yset:
            norm.append((v, u))
        else:
            raise ParseError(f"edge ({u}, {v}) does not go between X and Y")
    return Bigraph(tuple(xs), tuple(ys), frozenset(norm))


def serialize_graph(g: Bigraph) -> str:
    lines = ["X: " + " ".join(g.side_x), "Y: " + " ".join(g.side_y)]
    lines += [f"{x} {y}" for x, y in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def _frac(q: Union[Fraction, int]) -> str:
    f = Fraction(q)
    return f"{f.numerator}/{f.denominator}"


def _unfrac(s: str) -> Fraction:
    num, den = s.split("/")
    return Fraction(int(num), int(den))


def bimodel_from_json(data: dict) -> Union[Bimodel, IntervalBimodel]:
    from .bigraph import Arc, Interval

    if data.get("kind") == "interval":
        fam1 = {e["vertex"]: Interval(_unfrac(e["lo"]), _unfrac(e["hi"])) for e in data["family1"]}
        fam2 = {e["vertex"]: Interval(_unfrac(e["lo"]), _unfrac(e["hi"])) for e in data["family2"]}
        return IntervalBimodel(fam1, fam2)
    circ = _unfrac(data["circumference"])
    fam1 = {e["vertex"]: Arc(_unfrac(e["start"]), _unfrac(e["end"]), circ) for e in data["family1"]}
    fam2 = {e["vertex"]: Arc(_unfrac(e["start"]), _unfrac(e["end"]), circ) for e in data["family2"]}
    return Bimodel(fam1, fam2, circ)


def certificate_to_json(cert: Union[NegCertificate, SubgraphCertificate]) -> dict:
    if isinstance(cert, NegCertificate):
        out = {"id": _id_to_json(cert.id), "rho": list(cert.emb.rho), "sigma": list(cert.emb.sigma)}
        return out
    out = {"id": _id_to_json(cert.matrix_id), "kind": cert.kind}
    rho, sigma = [], []
    f_rows = sum(1 for n in cert.vertex_map if n.startswith("r"))
    for t in range(1, f_rows + 1):
        rho.append(cert.vertex_map[f"r{t}"])
    for t in range(1, len(cert.vertex_map) - f_rows + 1):
        sigma.append(cert.vertex_map[f"c{t}"])
    out["rho"] = rho
    out["sigma"] = sigma
    return out


def _id_to_json(cid: CatalogId) -> dict:
    out = {"family": cid.family}
    if cid.k is not None:
        out["k"] = cid.k
    if cid.a is not None:
        out["a"] = cid.a
    return out


def id_from_json(data: dict) -> CatalogId:
    return CatalogId(data["family"], data.get("k"), data.get("a"))


def certificate_from_json(data: dict) -> NegCertificate:
    return NegCertificate(
        id_from_json(data["id"]), Embedding(tuple(data["rho"]), tuple(data["sigma"]))
    )


def witness_to_json(witness) -> dict:
    if isinstance(witness, Biorder):
        return {
            "type": "biorder",
            "rows": list(witness.row_order),
            "columns": list(witness.col_order),
        }
    if isinstance(witness, Bimodel):
        return {
            "type": "bimodel",
            "kind": "circular",
            "circumference": _frac(witness.circumference),
            "family1": [
                {"vertex": v, "start": _frac(a.start), "end": _frac(a.end)}
                for v, a in witness.family1.items()
            ],
            "family2": [
                {"vertex": v, "start": _frac(a.start), "end": _frac(a.end)}
                for v, a in witness.family2.items()
            ],
        }
    if isinstance(witness, IntervalBimodel):
        return {
            "type": "bimodel",
            "kind": "interval",
            "family1": [
                {"vertex": v, "lo": _frac(iv.lo), "hi": _frac(iv.hi)}
                for v, iv in witness.family1.items()
            ],
            "family2": [
                {"vertex": v, "lo": _frac(iv.lo), "hi": _frac(iv.hi)}
                for v, iv in witness.family2.items()
            ],
        }
    return {"type": "order", "columns": list(witness)}
