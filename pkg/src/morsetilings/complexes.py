"""Explicit simplicial complexes: perfect matching complexes and independence complexes.

Faces are stored as integer bitmasks over the ground set (bit i set means
ground element i is in the face). The void complex has no faces at all; any
other complex contains the empty face 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .graphs import Graph, grid_2xn
from .matchings import perfect_matching_masks


class ComplexError(ValueError):
    pass


class FaceCapExceeded(ComplexError):
    """Raised when a complex would have more faces than the configured cap."""

    def __init__(self, cap: int, seen: int):
        super().__init__(f"face count exceeds cap {cap} (reached {seen})")
        self.cap = cap
        self.seen = seen


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    ground_labels: tuple[str, ...]
    faces: frozenset[int]

    @property
    def void(self) -> bool:
        return not self.faces

    @cached_property
    def dimension(self) -> int:
        """Largest face dimension; -1 for {empty face}, -2 for the void complex."""
        if self.void:
            return -2
        return max(popcount(f) for f in self.faces) - 1

    @cached_property
    def faces_by_dim(self) -> dict[int, list[int]]:
        """Faces grouped by dimension (-1 holds the empty face), each list sorted by index tuple."""
        out: dict[int, list[int]] = {}
        for f in self.faces:
            out.setdefault(popcount(f) - 1, []).append(f)
        for d in out:
            out[d].sort(key=indices_of)
        return out

    @cached_property
    def facets(self) -> list[int]:
        out = []
        ground = range(len(self.ground_labels))
        for f in self.faces:
            if not any(not f >> i & 1 and (f | 1 << i) in self.faces for i in ground):
                out.append(f)
        out.sort(key=lambda f: (popcount(f), indices_of(f)))
        return out

    @cached_property
    def index_of_label(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.ground_labels)}

    def face_labels(self, face: int) -> list[str]:
        return sorted(self.ground_labels[i] for i in indices_of(face))

    def face_from_labels(self, labels: Iterable[str]) -> int:
        try:
            return mask_of(self.index_of_label[lab] for lab in labels)
        except KeyError as exc:
            raise ComplexError(f"unknown ground label {exc.args[0]!r}") from None

    def __contains__(self, face) -> bool:
        if isinstance(face, int):
            return face in self.faces
        return mask_of(face) in self.faces

    def __len__(self):
        return len(self.faces)

    def to_dict(self, full: bool = False) -> dict:
        out = {
            "ground": list(self.ground_labels),
            "facets": [list(indices_of(f)) for f in self.facets],
        }
        if full:
            out["faces"] = [list(indices_of(f)) for d in sorted(self.faces_by_dim) for f in self.faces_by_dim[d]]
        return out

    def to_json(self, full: bool = False) -> str:
        return json.dumps(self.to_dict(full), sort_keys=True, indent=2)

    def __repr__(self):
        return f"SimplicialComplex(ground={len(self.ground_labels)}, faces={len(self.faces)}, dim={self.dimension})"


def close_downward(facets: Iterable[int], cap: int | None = None) -> frozenset[int]:
    """All subsets of the given faces, generated one cardinality level at a time."""
    out: set[int] = set()
    frontier = set(facets)
    while frontier:
        out |= frontier
        if cap is not None and len(out) > cap:
            raise FaceCapExceeded(cap, len(out))
        nxt = set()
        for f in frontier:
            rest = f
            while rest:
                low = rest & -rest
                rest ^= low
                sub = f ^ low
                if sub not in out:
                    nxt.add(sub)
        frontier = nxt
    return frozenset(out)


def complex_from_facets(
    ground_labels: Sequence[str], facets: Iterable[Iterable[int]], cap: int | None = None
) -> SimplicialComplex:
    masks = [mask_of(f) for f in facets]
    n = len(ground_labels)
    for m in masks:
        if m >> n:
            raise ComplexError("facet refers to an index outside the ground set")
    return SimplicialComplex(tuple(ground_labels), close_downward(masks, cap))


def complex_from_dict(data: Mapping) -> SimplicialComplex:
    return complex_from_facets(data["ground"], data["facets"])


def perfect_matching_complex(g: Graph, cap: int | None = None) -> SimplicialComplex:
    """Ground set = edges of g (by edge id); facets = perfect matchings. Void if there are none."""
    return SimplicialComplex(tuple(g.edge_labels), close_downward(perfect_matching_masks(g), cap))


def independence_complex(g: Graph, cap: int | None = None) -> SimplicialComplex:
    """Ground set = vertices of g in increasing id order; faces = independent sets."""
    order = g.vertices
    pos = {v: i for i, v in enumerate(order)}
    nbr = [mask_of(pos[w] for w in g.adjacency[v]) for v in order]
    faces: list[int] = []

    def grow(start: int, face: int, blocked: int) -> None:
        faces.append(face)
        if cap is not None and len(faces) > cap:
            raise FaceCapExceeded(cap, len(faces))
        for i in range(start, len(order)):
            if not blocked >> i & 1:
                grow(i + 1, face | 1 << i, blocked | nbr[i])

    grow(0, 0, 0)
    return SimplicialComplex(tuple(g.vertex_labels[v] for v in order), frozenset(faces))


def aux_graph_xn(n: int) -> Graph:
    """Line graph of grid_2xn(n) plus the edges {b_i, c_{i+1}} and {c_i, b_{i+1}}, 1 <= i <= n-2.

    Vertex ids and labels are the edge ids and labels of grid_2xn(n). n = 1
    gives the single vertex a_1.
    """
    g = grid_2xn(n)
    pairs = set()
    for v in g.vertices:
        for e, f in combinations(sorted(g.incident_edges[v]), 2):
            pairs.add((e, f))
    for i in range(1, n - 1):
        for x, y in ((f"b_{i}", f"c_{i + 1}"), (f"c_{i}", f"b_{i + 1}")):
            e, f = g.edge_by_label_map[x], g.edge_by_label_map[y]
            pairs.add((min(e, f), max(e, f)))
    edges = tuple(sorted(pairs))
    labels = tuple(f"{g.edge_labels[e]}~{g.edge_labels[f]}" for e, f in edges)
    return Graph(dict(enumerate(g.edge_labels)), edges, labels, "aux-x", (n,))


def complex_difference(
    a: SimplicialComplex, b: SimplicialComplex, correspondence: Mapping[str, str] | None = None
) -> str | None:
    """None when equal; otherwise 'ground-size', 'ground-labels' or 'faces'.

    Ground elements are matched by label (through ``correspondence`` when given,
    which maps labels of ``a`` to labels of ``b``).
    """
    if len(a.ground_labels) != len(b.ground_labels):
        return "ground-size"
    corr = correspondence or {lab: lab for lab in a.ground_labels}
    try:
        perm = [b.index_of_label[corr[lab]] for lab in a.ground_labels]
    except KeyError:
        return "ground-labels"
    if len(set(perm)) != len(perm):
        return "ground-labels"
    if len(a.faces) != len(b.faces):
        return "faces"
    for f in a.faces:
        if mask_of(perm[i] for i in indices_of(f)) not in b.faces:
            return "faces"
    return None


def complex_equal(
    a: SimplicialComplex, b: SimplicialComplex, correspondence: Mapping[str, str] | None = None
) -> bool:
    return complex_difference(a, b, correspondence) is None


def is_downward_closed(c: SimplicialComplex) -> bool:
    for f in c.faces:
        rest = f
        while rest:
            low = rest & -rest
            rest ^= low
            if f ^ low not in c.faces:
                return False
    return True


def f_vector(c: SimplicialComplex) -> list[int]:
    """Number of faces in each dimension 0..dim (the empty face is not counted)."""
    if c.void:
        return []
    return [len(c.faces_by_dim.get(d, ())) for d in range(c.dimension + 1)]


def euler_characteristic_reduced(c: SimplicialComplex) -> int | str:
    """-1 + sum_d (-1)^d f_d; the string 'void' for the void complex."""
    if c.void:
        return "void"
    return -1 + sum((-1) ** d * f for d, f in enumerate(f_vector(c)))
