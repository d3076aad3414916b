"""Labeled graph families: ladders, grids, cycles, paths and polygonal line tilings.

Every constructor is deterministic. Vertex ids follow a left-to-right scan
(upper vertex before lower vertex at each step) and edge ids follow the same
scan, so two calls with equal parameters give identical graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Invalid construction parameter, vertex id, edge id or label."""


FAMILIES = (
    "grid2",
    "grid",
    "cycle",
    "path",
    "even-tiling",
    "odd-simple",
    "odd-alternate",
    "triangles",
)


@dataclass(frozen=True, eq=False)
class Graph:
    """Finite simple graph with stable ids and injective labels.

    ``vertex_labels`` maps vertex id to label; ids need not be dense once
    vertices have been deleted. Edge ids are the positions in ``edges``.
    """

    vertex_labels: Mapping[int, str]
    edges: tuple[tuple[int, int], ...]
    edge_labels: tuple[str, ...]
    family: str = "custom"
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.edges) != len(self.edge_labels):
            raise GraphError("edge and label counts differ")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in self.vertex_labels or v not in self.vertex_labels:
                raise GraphError(f"edge ({u}, {v}) has an unknown endpoint")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        if len(set(self.vertex_labels.values())) != len(self.vertex_labels):
            raise GraphError("vertex labels are not injective")
        if len(set(self.edge_labels)) != len(self.edge_labels):
            raise GraphError("edge labels are not injective")

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertex_labels))

    @cached_property
    def vertex_by_label(self) -> dict[str, int]:
        return {lab: v for v, lab in self.vertex_labels.items()}

    @cached_property
    def edge_by_label_map(self) -> dict[str, int]:
        return {lab: e for e, lab in enumerate(self.edge_labels)}

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertex_labels}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    @cached_property
    def incident_edges(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertex_labels}
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def vertex(self, label: str) -> int:
        try:
            return self.vertex_by_label[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def edge_endpoint_labels(self, e: int) -> tuple[str, str]:
        u, v = self.edges[e]
        return self.vertex_labels[u], self.vertex_labels[v]

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": list(self.params),
            "vertices": [{"id": v, "label": self.vertex_labels[v]} for v in self.vertices],
            "edges": [
                {"id": e, "u": u, "v": v, "label": self.edge_labels[e]}
                for e, (u, v) in enumerate(self.edges)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_dot(self) -> str:
        name = self.family.replace("-", "_")
        lines = [f"graph {name} {{"]
        for v in self.vertices:
            lines.append(f'  {v} [label="{self.vertex_labels[v]}"];')
        for e, (u, v) in enumerate(self.edges):
            lines.append(f'  {u} -- {v} [label="{self.edge_labels[e]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (
            f"Graph(family={self.family!r}, params={self.params}, "
            f"vertices={self.vertex_count}, edges={self.edge_count})"
        )


def graph_from_dict(data: Mapping) -> Graph:
    vertex_labels = {int(v["id"]): str(v["label"]) for v in data["vertices"]}
    edges = sorted(data["edges"], key=lambda e: int(e["id"]))
    return Graph(
        vertex_labels,
        tuple((int(e["u"]), int(e["v"])) for e in edges),
        tuple(str(e["label"]) for e in edges),
        family=data.get("family", "custom"),
        params=tuple(data.get("params", ())),
    )


def _lab(sym: str, *idx: int) -> str:
    if len(idx) == 1:
        return f"{sym}_{idx[0]}"
    return f"{sym}_{{{','.join(str(i) for i in idx)}}}"


class _Builder:
    def __init__(self):
        self.vertex_labels: dict[int, str] = {}
        self.edges: list[tuple[int, int]] = []
        self.edge_labels: list[str] = []

    def vertex(self, label: str) -> int:
        v = len(self.vertex_labels)
        self.vertex_labels[v] = label
        return v

    def edge(self, u: int, v: int, label: str) -> None:
        self.edges.append((min(u, v), max(u, v)))
        self.edge_labels.append(label)

    def build(self, family: str, params: tuple[int, ...]) -> Graph:
        return Graph(self.vertex_labels, tuple(self.edges), tuple(self.edge_labels), family, params)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def grid_2xn(n: int) -> Graph:
    """The 2 x n ladder with p_{i,j} vertices, rungs a_i, upper b_j, lower c_j."""
    _require(n >= 1, f"grid_2xn needs n >= 1, got {n}")
    b = _Builder()
    upper, lower = [], []
    for i in range(1, n + 1):
        upper.append(b.vertex(_lab("p", i, 2)))
        lower.append(b.vertex(_lab("p", i, 1)))
    for i in range(1, n + 1):
        b.edge(lower[i - 1], upper[i - 1], _lab("a", i))
        if i < n:
            b.edge(upper[i - 1], upper[i], _lab("b", i))
            b.edge(lower[i - 1], lower[i], _lab("c", i))
    return b.build("grid2", (n,))


def grid_mxn(m: int, n: int) -> Graph:
    """Row-major m x n grid: q_{r,c}, horizontal h_{r,c}, vertical v_{r,c}."""
    _require(m >= 1 and n >= 1, f"grid_mxn needs m, n >= 1, got {m}, {n}")
    b = _Builder()
    ids = {}
    for r in range(1, m + 1):
        for c in range(1, n + 1):
            ids[r, c] = b.vertex(_lab("q", r, c))
    for r in range(1, m + 1):
        for c in range(1, n + 1):
            if c < n:
                b.edge(ids[r, c], ids[r, c + 1], _lab("h", r, c))
            if r < m:
                b.edge(ids[r, c], ids[r + 1, c], _lab("v", r, c))
    return b.build("grid", (m, n))


def grid_2xn_relabeling(n: int) -> tuple[dict[str, str], dict[str, str]]:
    """Vertex and edge label maps taking grid_mxn(2, n) onto grid_2xn(n).

    Row 1 of the m x n grid is the lower row of the ladder.
    """
    vmap, emap = {}, {}
    for c in range(1, n + 1):
        for r in (1, 2):
            vmap[_lab("q", r, c)] = _lab("p", c, r)
        emap[_lab("v", 1, c)] = _lab("a", c)
        if c < n:
            emap[_lab("h", 1, c)] = _lab("c", c)
            emap[_lab("h", 2, c)] = _lab("b", c)
    return vmap, emap


def cycle(m: int) -> Graph:
    """C_m with vertices 1..m; for m <= 26 edges are lettered a, b, ... from (1, 2)."""
    _require(m >= 3, f"cycle needs m >= 3, got {m}")
    b = _Builder()
    vs = [b.vertex(str(i)) for i in range(1, m + 1)]
    for i in range(m):
        label = chr(ord("a") + i) if m <= 26 else _lab("e", i + 1)
        b.edge(vs[i], vs[(i + 1) % m], label)
    return b.build("cycle", (m,))


def path(m: int) -> Graph:
    _require(m >= 1, f"path needs m >= 1, got {m}")
    b = _Builder()
    vs = [b.vertex(str(i)) for i in range(1, m + 1)]
    for i in range(m - 1):
        b.edge(vs[i], vs[i + 1], _lab("e", i + 1))
    return b.build("path", (m,))


def _line_tiling(shapes: list[tuple[int, int]], family: str, params: tuple[int, ...]) -> Graph:
    """Polygons glued in a row along attaching edges a_1 .. a_{P+1}.

    ``shapes[p-1] = (U, L)`` gives the number of edges of polygon p above and
    below its attaching edges. Upper edges are b_{p,1..U} through vertices
    u_{p,1..U}, lower edges c_{p,1..L} through l_{p,1..L}; u_{p,1} and l_{p,1}
    are the endpoints of a_p. When U (or L) is zero the two attaching edges
    share their upper (lower) endpoint, which keeps its first name.
    """
    b = _Builder()
    top = b.vertex(_lab("u", 1, 1))
    bot = b.vertex(_lab("l", 1, 1))
    count = len(shapes)
    for p, (up, lo) in enumerate(shapes, start=1):
        b.edge(bot, top, _lab("a", p))
        uprev, lprev = top, bot
        for t in range(2, max(up, lo) + 1):
            if t <= up:
                u = b.vertex(_lab("u", p, t))
                b.edge(uprev, u, _lab("b", p, t - 1))
                uprev = u
            if t <= lo:
                l_ = b.vertex(_lab("l", p, t))
                b.edge(lprev, l_, _lab("c", p, t - 1))
                lprev = l_
        top = b.vertex(_lab("u", p + 1, 1)) if up > 0 else top
        bot = b.vertex(_lab("l", p + 1, 1)) if lo > 0 else bot
        if up > 0:
            b.edge(uprev, top, _lab("b", p, up))
        if lo > 0:
            b.edge(lprev, bot, _lab("c", p, lo))
    b.edge(bot, top, _lab("a", count + 1))
    return b.build(family, params)


def even_tiling(n: int, k: int) -> Graph:
    """k copies of a 2n-gon in a row; n-1 edges above and below each polygon."""
    _require(n >= 3 and k >= 2, f"even_tiling needs n >= 3, k >= 2, got {n}, {k}")
    return _line_tiling([(n - 1, n - 1)] * k, "even-tiling", (n, k))


def odd_tiling_simple(n: int, k: int) -> Graph:
    """2k copies of a (2n+1)-gon, each with n edges above and n-1 below."""
    _require(n >= 2 and k >= 2, f"odd_tiling_simple needs n >= 2, k >= 2, got {n}, {k}")
    return _line_tiling([(n, n - 1)] * (2 * k), "odd-simple", (n, k))


def _alternate_shapes(n: int, k: int) -> list[tuple[int, int]]:
    return [(n, n - 1) if p % 2 == 1 else (n - 1, n) for p in range(1, 2 * k + 1)]


def odd_tiling_alternate(n: int, k: int) -> Graph:
    """2k copies of a (2n+1)-gon, odd positions n/n-1 edges above/below, even positions n-1/n."""
    _require(n >= 2 and k >= 2, f"odd_tiling_alternate needs n >= 2, k >= 2, got {n}, {k}")
    return _line_tiling(_alternate_shapes(n, k), "odd-alternate", (n, k))


def triangle_tiling(k: int) -> Graph:
    """Zigzag strip of 2k triangles (the alternate arrangement with n = 1)."""
    _require(k >= 2, f"triangle_tiling needs k >= 2, got {k}")
    return _line_tiling(_alternate_shapes(1, k), "triangles", (k,))


def attaching_edges(g: Graph, parity: str | None = None) -> list[int]:
    """Edge ids of the attaching edges a_i of a line tiling, optionally only even or odd i."""
    out = []
    i = 1
    while _lab("a", i) in g.edge_by_label_map:
        if parity is None or (parity == "even") == (i % 2 == 0):
            out.append(g.edge_by_label_map[_lab("a", i)])
        i += 1
    return out


def alternate_to_even_edge_map(n: int, k: int) -> dict[str, str]:
    """Edge labels of odd_tiling_alternate(n, k) minus its a_{2i}, onto the
    2(2n)-gon tiling with k polygons (2n-1 edges per side)."""
    emap = {}
    for i in range(1, k + 1):
        emap[_lab("a", 2 * i - 1)] = _lab("a", i)
        for t in range(1, n + 1):
            emap[_lab("b", 2 * i - 1, t)] = _lab("b", i, t)
        for t in range(1, n):
            emap[_lab("b", 2 * i, t)] = _lab("b", i, n + t)
            emap[_lab("c", 2 * i - 1, t)] = _lab("c", i, t)
        for t in range(1, n + 1):
            emap[_lab("c", 2 * i, t)] = _lab("c", i, n - 1 + t)
    emap[_lab("a", 2 * k + 1)] = _lab("a", k + 1)
    return emap


def triangle_to_grid_edge_map(k: int) -> dict[str, str]:
    """Edge labels of triangle_tiling(k) minus its a_{2i}, onto grid_2xn(k + 1)."""
    emap = {}
    for i in range(1, k + 1):
        emap[_lab("a", 2 * i - 1)] = _lab("a", i)
        emap[_lab("b", 2 * i - 1, 1)] = _lab("b", i)
        emap[_lab("c", 2 * i, 1)] = _lab("c", i)
    emap[_lab("a", 2 * k + 1)] = _lab("a", k + 1)
    return emap


def neighborhood(g: Graph, v: int) -> frozenset[int]:
    """Open neighborhood N(v)."""
    if v not in g.vertex_labels:
        raise GraphError(f"invalid vertex id {v}")
    return g.adjacency[v]


def edge_by_label(g: Graph, label: str) -> int:
    try:
        return g.edge_by_label_map[label]
    except KeyError:
        raise GraphError(f"unknown edge label {label!r}") from None


def delete_vertices(g: Graph, vs: Iterable[int]) -> Graph:
    """Induced subgraph on the remaining vertices; surviving vertex ids are kept."""
    drop = set(vs)
    for v in drop:
        if v not in g.vertex_labels:
            raise GraphError(f"invalid vertex id {v}")
    keep = [e for e, (u, v) in enumerate(g.edges) if u not in drop and v not in drop]
    return Graph(
        {v: lab for v, lab in g.vertex_labels.items() if v not in drop},
        tuple(g.edges[e] for e in keep),
        tuple(g.edge_labels[e] for e in keep),
        g.family,
        g.params,
    )


def delete_edges(g: Graph, es: Iterable[int]) -> Graph:
    drop = set(es)
    for e in drop:
        if not 0 <= e < g.edge_count:
            raise GraphError(f"invalid edge id {e}")
    keep = [e for e in range(g.edge_count) if e not in drop]
    return Graph(
        dict(g.vertex_labels),
        tuple(g.edges[e] for e in keep),
        tuple(g.edge_labels[e] for e in keep),
        g.family,
        g.params,
    )


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; h's vertex ids are shifted past g's."""
    shift = max(g.vertex_labels, default=-1) + 1
    vl = dict(g.vertex_labels)
    vl.update({v + shift: lab for v, lab in h.vertex_labels.items()})
    edges = g.edges + tuple((u + shift, v + shift) for u, v in h.edges)
    return Graph(vl, edges, g.edge_labels + h.edge_labels)


def labeled_edge_set(g: Graph) -> set[frozenset[str]]:
    """Edges as unordered pairs of vertex labels."""
    return {frozenset(g.edge_endpoint_labels(e)) for e in range(g.edge_count)}


def induced_vertex_map(g: Graph, h: Graph, edge_map: Mapping[str, str]) -> dict[int, int]:
    """Vertex bijection g -> h induced by an edge-label bijection.

    Each vertex of g is sent to the vertex of h whose incident edge labels
    are the images of its own. Raises GraphError unless the result is a
    graph isomorphism carrying every edge label e to edge_map[e].
    """
    if set(edge_map) != set(g.edge_labels) or set(edge_map.values()) != set(h.edge_labels):
        raise GraphError("edge map is not a bijection between the edge sets")
    if g.vertex_count != h.vertex_count:
        raise GraphError("vertex counts differ")
    h_by_star = {}
    for v in h.vertices:
        star = frozenset(h.edge_labels[e] for e in h.incident_edges[v])
        h_by_star[star] = v
    vmap = {}
    for v in g.vertices:
        star = frozenset(edge_map[g.edge_labels[e]] for e in g.incident_edges[v])
        if star not in h_by_star or not star:
            raise GraphError(f"vertex {g.vertex_labels[v]} has no image")
        vmap[v] = h_by_star[star]
    if len(set(vmap.values())) != len(vmap):
        raise GraphError("induced vertex map is not injective")
    for e, (u, v) in enumerate(g.edges):
        target = h.edges[h.edge_by_label_map[edge_map[g.edge_labels[e]]]]
        if {vmap[u], vmap[v]} != set(target):
            raise GraphError(f"edge {g.edge_labels[e]} is not carried to its image")
    return vmap


def build_family(family: str, params: Mapping[str, int]) -> Graph:
    """Construct a family by CLI name from keyword parameters (n, k, m)."""
    p = dict(params)
    try:
        if family == "grid2":
            return grid_2xn(p["n"])
        if family == "grid":
            return grid_mxn(p["m"], p["n"])
        if family == "cycle":
            return cycle(p["m"])
        if family == "path":
            return path(p["m"])
        if family == "even-tiling":
            return even_tiling(p["n"], p["k"])
        if family == "odd-simple":
            return odd_tiling_simple(p["n"], p["k"])
        if family == "odd-alternate":
            return odd_tiling_alternate(p["n"], p["k"])
        if family == "triangles":
            return triangle_tiling(p["k"])
    except KeyError as exc:
        raise GraphError(f"family {family!r} needs parameter {exc.args[0]!r}") from None
    except TypeError:
        raise GraphError(f"family {family!r} got a missing parameter") from None
    raise GraphError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
