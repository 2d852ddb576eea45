"""Bipartite-graph layer: biadjacency extraction, proper circular-arc and
proper interval bigraph recognition, arc bimodels, and induced-subgraph
certificates.

Arc endpoints are exact rationals; the perturbation that makes the row
family proper never moves an endpoint by a full unit, so point-arc
incidences are preserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .catalog import CatalogId, generate
from .certificates import NegCertificate
from .compatible import _to_fcco, _translate_padded_cert, d_interval, pad_for_cco
from .dcircular import d_circular
from .matrix import BinMatrix


class OddCycleError(ValueError):
    """Raised when a graph is not bipartite; carries one odd cycle."""

    def __init__(self, cycle):
        super().__init__(f"graph is not bipartite; odd cycle {cycle}")
        self.cycle = list(cycle)


@dataclass(frozen=True)
class Bigraph:
    """A bipartite graph with a fixed bipartition and named vertices."""

    side_x: tuple[str, ...]
    side_y: tuple[str, ...]
    edges: frozenset[tuple[str, str]]  # always (x, y) with x in side_x

    def __post_init__(self):
        xs, ys = set(self.side_x), set(self.side_y)
        if len(xs) != len(self.side_x) or len(ys) != len(self.side_y) or xs & ys:
            raise ValueError("vertex names must be unique across both sides")
        for x, y in self.edges:
            if x not in xs or y not in ys:
                raise ValueError(f"edge ({x}, {y}) does not go from X to Y")

    def adjacent(self, u: str, v: str) -> bool:
        return (u, v) in self.edges or (v, u) in self.edges


@dataclass(frozen=True)
class Arc:
    """Closed arc from start clockwise to end on a circle of given size."""

    start: Fraction
    end: Fraction
    circumference: Fraction

    def length(self) -> Fraction:
        return (self.end - self.start) % self.circumference

    def contains_point(self, p: Fraction) -> bool:
        return (p - self.start) % self.circumference <= self.length()


def arcs_intersect(a: Arc, b: Arc) -> bool:
    return a.contains_point(b.start) or b.contains_point(a.start)


def arc_proper_subset(a: Arc, b: Arc) -> bool:
    if (a.start, a.length()) == (b.start, b.length()):
        return False
    return (a.start - b.start) % a.circumference + a.length() <= b.length()


@dataclass(frozen=True)
class Interval:
    """Closed interval on a line (the no-wraparound analogue of Arc)."""

    lo: Fraction
    hi: Fraction


def intervals_intersect(a: Interval, b: Interval) -> bool:
    return a.lo <= b.hi and b.lo <= a.hi


def interval_proper_subset(a: Interval, b: Interval) -> bool:
    return (b.lo <= a.lo and a.hi <= b.hi) and (a.lo, a.hi) != (b.lo, b.hi)


@dataclass(frozen=True)
class Bimodel:
    """Arc families indexed by the two vertex sides."""

    family1: dict[str, Arc]
    family2: dict[str, Arc]
    circumference: Fraction


@dataclass(frozen=True)
class IntervalBimodel:
    family1: dict[str, Interval]
    family2: dict[str, Interval]


@dataclass(frozen=True)
class SubgraphCertificate:
    """A named forbidden bigraph embedded as an induced subgraph."""

    kind: str
    matrix_id: CatalogId
    vertex_map: dict[str, str]  # r1..rk / c1..cl -> host vertices


@dataclass(frozen=True)
class PCABResult:
    bimodel: Optional[Bimodel] = None
    cert: Optional[SubgraphCertificate] = None

    @property
    def ok(self) -> bool:
        return self.bimodel is not None


@dataclass(frozen=True)
class PIBResult:
    bimodel: Optional[IntervalBimodel] = None
    cert: Optional[SubgraphCertificate] = None

    @property
    def ok(self) -> bool:
        return self.bimodel is not None


Graph = Mapping[str, Iterable[str]]


def bipartition(graph: Graph) -> tuple[list[str], list[str]]:
    """Two-color by BFS; components start at their first-listed vertex,
    which lands on side X.  Raises OddCycleError for non-bipartite input."""
    adj = {v: set(ns) for v, ns in graph.items()}
    for v, ns in graph.items():
        for w in ns:
            adj.setdefault(w, set()).add(v)
            adj[v].add(w)
    color: dict[str, int] = {}
    parent: dict[str, Optional[str]] = {}
    for start in adj:
        if start in color:
            continue
        color[start] = 0
        parent[start] = None
        queue = [start]
        while queue:
            v = queue.pop(0)
            for w in sorted(adj[v]):
                if w not in color:
                    color[w] = 1 - color[v]
                    parent[w] = v
                    queue.append(w)
                elif color[w] == color[v]:
                    raise OddCycleError(_odd_cycle(parent, v, w))
    xs = [v for v in adj if color[v] == 0]
    ys = [v for v in adj if color[v] == 1]
    return xs, ys


def _odd_cycle(parent, v, w):
    pv, pw = [v], [w]
    while parent[pv[-1]] is not None:
        pv.append(parent[pv[-1]])
    while parent[pw[-1]] is not None:
        pw.append(parent[pw[-1]])
    common = None
    sv, sw = set(pv), set(pw)
    for u in pv:
        if u in sw:
            common = u
            break
    del sv
    iv = pv[: pv.index(common) + 1]
    iw = pw[: pw.index(common) + 1]
    return iv + iw[-2::-1]


def as_bigraph(graph: Union[Graph, Bigraph]) -> Bigraph:
    if isinstance(graph, Bigraph):
        return graph
    xs, ys = bipartition(graph)
    adj = {v: set(ns) for v, ns in graph.items()}
    edges = set()
    for v, ns in graph.items():
        for w in ns:
            if v in xs and w in ys:
                edges.add((v, w))
            elif w in xs and v in ys:
                edges.add((w, v))
    return Bigraph(tuple(xs), tuple(ys), frozenset(edges))


def bigraph_of(m: BinMatrix) -> Bigraph:
    """The bipartite graph associated with a matrix: rows x columns."""
    xs = tuple(f"r{i}" for i in range(1, m.n_rows + 1))
    ys = tuple(f"c{j}" for j in range(1, m.n_cols + 1))
    edges = frozenset(
        (f"r{i}", f"c{j}") for i, row in enumerate(m.rows, 1) for j in row
    )
    return Bigraph(xs, ys, edges)


def biadjacency(g: Bigraph) -> BinMatrix:
    """Biadjacency matrix with rows in side_x order and columns in side_y order."""
    col = {y: j for j, y in enumerate(g.side_y, start=1)}
    rows = [
        sorted(col[y] for y in g.side_y if (x, y) in g.edges) for x in g.side_x
    ]
    return BinMatrix(len(g.side_y), rows)


def _arc_layout(m: BinMatrix, order: Sequence[int]):
    """(start_rank, length) arcs for every nonempty row; no trivial rows."""
    rank = {c: p for p, c in enumerate(order)}
    n = m.n_cols
    arcs = []
    for i, row in enumerate(m.rows, start=1):
        ranks = sorted(rank[c] for c in row)
        gap = [
            j for j in range(len(ranks))
            if (ranks[(j + 1) % len(ranks)] - ranks[j]) % n > 1
        ]
        start = ranks[(gap[0] + 1) % len(ranks)] if gap else ranks[0]
        arcs.append((start, len(ranks)))
    return arcs


def _assert_nestings_share_endpoints(arcs, n):
    """Any contained arc must share an endpoint with its container; this is
    exactly what D-circularity of the order guarantees."""
    copies = sorted((s - shift, s + ln - shift) for s, ln in arcs for shift in (0, n))
    best = -10 * n
    ptr = 0
    for s, ln in sorted(arcs):
        while ptr < len(copies) and copies[ptr][0] <= s - 1:
            best = max(best, copies[ptr][1])
            ptr += 1
        if best >= s + ln + 1:
            raise RuntimeError("strictly interior arc nesting; order is not D-circular")


def build_bimodel(m: BinMatrix, order: Sequence[int]) -> Bimodel:
    """Arcs for a trivial-row-free matrix under a D-circular order.

    Column j sits at integer point rank(j); row arcs get rational end
    offsets below 1 so that same-endpoint nestings break apart while every
    point-arc incidence survives.
    """
    k, l = m.shape
    if any(m.is_trivial_row(i) for i in range(1, k + 1)):
        raise ValueError("matrix must have no trivial rows")
    circ = Fraction(l)
    arcs = _arc_layout(m, order)
    _assert_nestings_share_endpoints(arcs, l)
    unit = Fraction(1, k + 2)
    by_start: dict[int, set[int]] = {}
    by_end: dict[int, set[int]] = {}
    for s, ln in set(arcs):
        by_start.setdefault(s, set()).add(ln)
        by_end.setdefault((s + ln - 1) % l, set()).add(ln)
    delta: dict[tuple[int, int], Fraction] = {}
    gamma: dict[tuple[int, int], Fraction] = {}
    for s, lens in by_start.items():
        for t, ln in enumerate(sorted(lens, reverse=True), start=1):
            delta[(s, ln)] = t * unit
    for e, lens in by_end.items():
        for t, ln in enumerate(sorted(lens, reverse=True), start=1):
            gamma[((e - ln + 1) % l, ln)] = t * unit
    rank = {c: p for p, c in enumerate(order)}
    family1 = {}
    for i, (s, ln) in enumerate(arcs, start=1):
        e = (s + ln - 1) % l
        a = (Fraction(s) - delta[(s, ln)]) % circ
        b = (Fraction(e) + gamma[(s, ln)]) % circ
        family1[f"r{i}"] = Arc(a, b, circ)
    family2 = {
        f"c{j}": Arc(Fraction(rank[j]), Fraction(rank[j]), circ)
        for j in range(1, l + 1)
    }
    return Bimodel(family1, family2, circ)


def verify_bimodel(g: Bigraph, bm: Bimodel) -> bool:
    """Intersection graph equals g and neither family has proper nestings."""
    if set(bm.family1) != set(g.side_x) or set(bm.family2) != set(g.side_y):
        return False
    for x in g.side_x:
        for y in g.side_y:
            if arcs_intersect(bm.family1[x], bm.family2[y]) != ((x, y) in g.edges):
                return False
    for fam in (bm.family1, bm.family2):
        items = list(fam.values())
        for a in items:
            for b in items:
                if a is not b and arc_proper_subset(a, b):
                    return False
    return True


def verify_interval_bimodel(g: Bigraph, bm: IntervalBimodel) -> bool:
    if set(bm.family1) != set(g.side_x) or set(bm.family2) != set(g.side_y):
        return False
    for x in g.side_x:
        for y in g.side_y:
            if intervals_intersect(bm.family1[x], bm.family2[y]) != ((x, y) in g.edges):
                return False
    for fam in (bm.family1, bm.family2):
        items = list(fam.values())
        for a in items:
            for b in items:
                if a is not b and interval_proper_subset(a, b):
                    return False
    return True


_GRAPH_NAMES = {
    "Z1": "bipartite-claw", "Z1T": "bipartite-claw",
    "Z2": "bipartite-net", "Z2T": "bipartite-net", "Z4": "bipartite-net",
    "Z3": "bipartite-tent", "Z3T": "bipartite-tent",
}


def forbidden_graph_name(cid: CatalogId) -> str:
    fam = cid.family
    if fam in _GRAPH_NAMES:
        return _GRAPH_NAMES[fam]
    if fam == "M_I":
        return f"C{2 * cid.k}"
    if fam in ("M_I*", "M_I*T"):
        return f"C{2 * cid.k}-plus-isolated-vertex"
    if fam in ("co_M_I*", "co_M_I*T"):
        return f"bipartite-complement-of-C{2 * cid.k}-plus-isolated-vertex"
    return f"bigraph[{cid}]"


def _subgraph_certificate(g: Bigraph, cert: NegCertificate) -> SubgraphCertificate:
    vm = {}
    for t, i in enumerate(cert.emb.rho, start=1):
        vm[f"r{t}"] = g.side_x[i - 1]
    for t, j in enumerate(cert.emb.sigma, start=1):
        vm[f"c{t}"] = g.side_y[j - 1]
    return SubgraphCertificate(forbidden_graph_name(cert.id), cert.id, vm)


def induced_matches(g: Bigraph, cert: SubgraphCertificate) -> bool:
    """The induced subgraph on the mapped vertices is the named bigraph."""
    f = generate(cert.matrix_id)
    names = [f"r{i}" for i in range(1, f.n_rows + 1)] + [
        f"c{j}" for j in range(1, f.n_cols + 1)
    ]
    if set(cert.vertex_map) != set(names):
        return False
    images = [cert.vertex_map[n] for n in names]
    allv = set(g.side_x) | set(g.side_y)
    if len(set(images)) != len(images) or not set(images) <= allv:
        return False
    fb = bigraph_of(f)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            want = fb.adjacent(names[a], names[b])
            got = g.adjacent(images[a], images[b])
            if want != got:
                return False
    return True


def recognize_pcab(graph: Union[Graph, Bigraph], verify: bool = True) -> PCABResult:
    """A proper circular-arc bimodel of the bigraph or a ForbPCAB certificate."""
    g = as_bigraph(graph)
    m = biadjacency(g)
    if m.n_rows == 0 or m.n_cols == 0:
        return PCABResult(bimodel=_degenerate_bimodel(g))
    padded, u = pad_for_cco(m)
    res = d_circular(padded)
    if not res.ok:
        cert = res.cert
        if u is not None and (m.n_cols + 1) in cert.emb.sigma:
            cert = _translate_padded_cert(m, u, cert)
        cert = _to_fcco(m, cert)
        out = _subgraph_certificate(g, cert)
        if verify and not induced_matches(g, out):
            raise RuntimeError("subgraph certificate failed its own check")
        return PCABResult(cert=out)
    bm_padded = build_bimodel(padded, res.order)
    family2 = {
        y: bm_padded.family2[f"c{j}"] for j, y in enumerate(g.side_y, start=1)
    }
    family1 = {
        x: bm_padded.family1[f"r{i}"] for i, x in enumerate(g.side_x, start=1)
    }
    bm = Bimodel(family1, family2, bm_padded.circumference)
    if verify and not verify_bimodel(g, bm):
        raise RuntimeError("bimodel failed its own verification")
    return PCABResult(bimodel=bm)


def _degenerate_bimodel(g: Bigraph) -> Bimodel:
    n = max(len(g.side_x) + len(g.side_y), 1)
    circ = Fraction(n)
    fam1 = {
        x: Arc(Fraction(i), Fraction(i), circ) for i, x in enumerate(g.side_x)
    }
    fam2 = {
        y: Arc(Fraction(len(g.side_x) + j), Fraction(len(g.side_x) + j), circ)
        for j, y in enumerate(g.side_y)
    }
    return Bimodel(fam1, fam2, circ)


def recognize_pib(graph: Union[Graph, Bigraph], verify: bool = True) -> PIBResult:
    """A proper interval bimodel of the bigraph or a ForbPIB certificate."""
    g = as_bigraph(graph)
    m = biadjacency(g)
    if m.n_rows == 0 or m.n_cols == 0:
        bm = _degenerate_interval_bimodel(g)
        return PIBResult(bimodel=bm)
    res = d_interval(m)
    if not res.ok:
        out = _subgraph_certificate(g, res.cert)
        if verify and not induced_matches(g, out):
            raise RuntimeError("subgraph certificate failed its own check")
        return PIBResult(cert=out)
    bm = _build_interval_bimodel(g, m, res.order)
    if verify and not verify_interval_bimodel(g, bm):
        raise RuntimeError("interval bimodel failed its own verification")
    return PIBResult(bimodel=bm)


def _degenerate_interval_bimodel(g: Bigraph) -> IntervalBimodel:
    fam1 = {
        x: Interval(Fraction(i), Fraction(i)) for i, x in enumerate(g.side_x)
    }
    off = len(g.side_x)
    fam2 = {
        y: Interval(Fraction(off + j), Fraction(off + j))
        for j, y in enumerate(g.side_y)
    }
    return IntervalBimodel(fam1, fam2)


def _build_interval_bimodel(g: Bigraph, m: BinMatrix, order) -> IntervalBimodel:
    k, l = m.shape
    rank = {c: p for p, c in enumerate(order)}
    unit = Fraction(1, k + 2)
    spans = []
    for row in m.rows:
        if row:
            ranks = sorted(rank[c] for c in row)
            spans.append((ranks[0], ranks[-1]))
        else:
            spans.append(None)
    by_start: dict[int, set[int]] = {}
    by_end: dict[int, set[int]] = {}
    for sp in spans:
        if sp:
            by_start.setdefault(sp[0], set()).add(sp[1])
            by_end.setdefault(sp[1], set()).add(sp[0])
    delta = {}
    gamma = {}
    for s, ends in by_start.items():
        for t, e in enumerate(sorted(ends, reverse=True), start=1):
            delta[(s, e)] = t * unit
    for e, starts in by_end.items():
        for t, s in enumerate(sorted(starts), start=1):
            gamma[(s, e)] = t * unit
    family1 = {}
    fresh = 0
    for i, sp in enumerate(spans, start=1):
        x = g.side_x[i - 1]
        if sp is None:
            fresh += 1
            family1[x] = Interval(Fraction(l + fresh), Fraction(l + fresh))
        else:
            s, e = sp
            family1[x] = Interval(
                Fraction(s) - delta[(s, e)], Fraction(e) + gamma[(s, e)]
            )
    family2 = {
        y: Interval(Fraction(rank[j]), Fraction(rank[j]))
        for j, y in enumerate(g.side_y, start=1)
    }
    return IntervalBimodel(family1, family2)
