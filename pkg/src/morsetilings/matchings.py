"""Matchings, perfect matchings, extendability and bad matchings."""

from __future__ import annotations

import threading
import weakref
from dataclasses import dataclass, field
from typing import Iterable

from .graphs import Graph, GraphError, edge_by_label, grid_2xn


@dataclass(frozen=True, order=True)
class Matching:
    """A set of pairwise vertex-disjoint edges of ``host``, stored as sorted edge ids."""

    edges: tuple[int, ...]
    host: Graph = field(compare=False, repr=False)

    @property
    def mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << e
        return m

    def labels(self) -> list[str]:
        return sorted(self.host.edge_labels[e] for e in self.edges)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, e):
        return e in self.edges


@dataclass(frozen=True)
class ExtendabilityResult:
    extendable: bool
    witness: Matching | None = None


def _check_edge_ids(g: Graph, edges: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(set(edges)))
    for e in out:
        if not isinstance(e, int) or not 0 <= e < g.edge_count:
            raise GraphError(f"invalid edge id {e!r}")
    return out


def is_matching(g: Graph, edges: Iterable[int]) -> bool:
    covered = set()
    for e in _check_edge_ids(g, edges):
        u, v = g.edges[e]
        if u in covered or v in covered:
            return False
        covered.update((u, v))
    return True


def matching(g: Graph, edges: Iterable[int | str]) -> Matching:
    """Build a Matching from edge ids or edge labels; raises if edges overlap."""
    ids = [edge_by_label(g, e) if isinstance(e, str) else e for e in edges]
    ids = _check_edge_ids(g, ids)
    if not is_matching(g, ids):
        raise GraphError(f"edges {[g.edge_labels[e] for e in ids]} do not form a matching")
    return Matching(ids, g)


def _perfect_matching_masks(g: Graph) -> list[tuple[int, ...]]:
    """Backtrack on the lowest uncovered vertex, branching over its incident edges."""
    if g.vertex_count % 2:
        return []
    order = g.vertices
    inc = g.incident_edges
    edges = g.edges
    found: list[tuple[int, ...]] = []
    covered: set[int] = set()
    chosen: list[int] = []

    def extend(pos: int) -> None:
        while pos < len(order) and order[pos] in covered:
            pos += 1
        if pos == len(order):
            found.append(tuple(sorted(chosen)))
            return
        v = order[pos]
        covered.add(v)
        for e in inc[v]:
            u, w = edges[e]
            other = w if u == v else u
            if other in covered:
                continue
            covered.add(other)
            chosen.append(e)
            extend(pos + 1)
            chosen.pop()
            covered.discard(other)
        covered.discard(v)

    extend(0)
    found.sort()
    return found


_PM_CACHE: "weakref.WeakKeyDictionary[Graph, list[tuple[int, ...]]]" = weakref.WeakKeyDictionary()
_PM_LOCK = threading.Lock()


def _pm_cached(g: Graph) -> list[tuple[int, ...]]:
    with _PM_LOCK:
        hit = _PM_CACHE.get(g)
    if hit is None:
        hit = _perfect_matching_masks(g)
        with _PM_LOCK:
            _PM_CACHE[g] = hit
    return hit


def enumerate_perfect_matchings(g: Graph) -> list[Matching]:
    """All perfect matchings, sorted lexicographically by their sorted edge ids."""
    return [Matching(pm, g) for pm in _pm_cached(g)]


def perfect_matching_masks(g: Graph) -> list[int]:
    out = []
    for pm in _pm_cached(g):
        m = 0
        for e in pm:
            m |= 1 << e
        out.append(m)
    return out


def is_extendable(g: Graph, m: Matching | Iterable[int]) -> ExtendabilityResult:
    ids = m.edges if isinstance(m, Matching) else _check_edge_ids(g, m)
    if not is_matching(g, ids):
        raise GraphError("query edges do not form a matching")
    want = set(ids)
    for pm in _pm_cached(g):
        if want.issubset(pm):
            return ExtendabilityResult(True, Matching(pm, g))
    return ExtendabilityResult(False)


def extendable_masks(g: Graph) -> set[int]:
    """Every matching contained in some perfect matching, as edge bitmasks (the empty one included)."""
    out: set[int] = set()
    frontier = set(perfect_matching_masks(g))
    while frontier:
        out |= frontier
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
    return out


def enumerate_bad_matchings(g: Graph) -> list[Matching]:
    """Minimal matchings contained in no perfect matching.

    Candidates of size s+1 are grown from extendable matchings of size s, so
    every proper subset of a reported matching is extendable. A graph with no
    perfect matching has the empty matching as its only bad matching.
    """
    if not _pm_cached(g):
        return [Matching((), g)]
    ext = extendable_masks(g)
    ends = [(1 << u) | (1 << v) for u, v in g.edges]
    bad: list[tuple[int, ...]] = []
    level = [0]
    while level:
        nxt = set()
        for base in level:
            covered = 0
            top = -1
            rest = base
            while rest:
                low = rest & -rest
                rest ^= low
                e = low.bit_length() - 1
                covered |= ends[e]
                top = max(top, e)
            for e in range(top + 1, g.edge_count):
                if ends[e] & covered:
                    continue
                cand = base | (1 << e)
                if cand in ext:
                    nxt.add(cand)
                    continue
                # every one-smaller subset must extend
                rest = cand
                minimal = True
                while rest:
                    low = rest & -rest
                    rest ^= low
                    if (cand ^ low) not in ext:
                        minimal = False
                        break
                if minimal:
                    bad.append(tuple(i for i in range(g.edge_count) if cand >> i & 1))
        level = sorted(nxt)
    bad = sorted(set(bad))
    return [Matching(b, g) for b in bad]


def grid_bad_matchings_closed_form(n: int) -> list[Matching]:
    """The two-edge sets {b_i, c_{i+1}} and {c_i, b_{i+1}}, 1 <= i <= n-2, on grid_2xn(n)."""
    g = grid_2xn(n)
    out = []
    for i in range(1, n - 1):
        out.append(matching(g, [f"b_{i}", f"c_{i + 1}"]))
        out.append(matching(g, [f"c_{i}", f"b_{i + 1}"]))
    return sorted(out)


def check_lemma2(n: int) -> bool:
    """In every perfect matching of grid_2xn(n), b_i is present exactly when c_i is."""
    g = grid_2xn(n)
    pairs = [(edge_by_label(g, f"b_{i}"), edge_by_label(g, f"c_{i}")) for i in range(1, n)]
    for pm in _pm_cached(g):
        s = set(pm)
        if any((b in s) != (c in s) for b, c in pairs):
            return False
    return True


def check_attach_edge_exclusion(g: Graph, attach_edges: Iterable[int | str]) -> bool:
    """True when no perfect matching of g uses any of the listed edges."""
    ids = {edge_by_label(g, e) if isinstance(e, str) else e for e in attach_edges}
    _check_edge_ids(g, ids)
    return all(not ids.intersection(pm) for pm in _pm_cached(g))


def bad_matching_report(g: Graph, bad: list[Matching] | None = None) -> dict:
    if bad is None:
        bad = enumerate_bad_matchings(g)
    return {
        "graph": {"family": g.family, "params": list(g.params)},
        "count": len(bad),
        "matchings": [m.labels() for m in bad],
    }
