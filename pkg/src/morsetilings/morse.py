"""Discrete Morse machinery: element pairings, acyclicity, critical cells and folds."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .complexes import ComplexError, SimplicialComplex, aux_graph_xn, indices_of, popcount
from .graphs import Graph, GraphError, delete_vertices, labeled_edge_set, neighborhood


class ScheduleError(ValueError):
    pass


class FoldError(ValueError):
    def __init__(self, msg: str, offending: Sequence[str] = ()):
        super().__init__(msg)
        self.offending = list(offending)


@dataclass(frozen=True)
class PairingSchedule:
    elements: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            dup = sorted({x for x in self.elements if self.elements.count(x) > 1})
            raise ScheduleError(f"duplicate schedule entries: {', '.join(dup)}")

    @classmethod
    def parse(cls, text: str) -> "PairingSchedule":
        """Split a comma list, keeping commas inside braces (b_{1,1})."""
        parts, depth, cur = [], 0, ""
        for ch in text:
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
            if ch == "," and depth == 0:
                parts.append(cur.strip())
                cur = ""
            else:
                cur += ch
        if cur.strip():
            parts.append(cur.strip())
        return cls(tuple(parts))


@dataclass
class PartialPairing:
    pairs: list[tuple[int, int]]
    host: SimplicialComplex | None = None


@dataclass
class CriticalCells:
    by_dimension: dict[int, list[int]] = field(default_factory=dict)

    @property
    def counts(self) -> dict[int, int]:
        return {d: len(fs) for d, fs in sorted(self.by_dimension.items()) if fs}

    @property
    def total(self) -> int:
        return sum(len(fs) for fs in self.by_dimension.values())

    def faces(self) -> list[int]:
        return [f for d in sorted(self.by_dimension) for f in self.by_dimension[d]]

    @classmethod
    def from_faces(cls, faces: Iterable[int]) -> "CriticalCells":
        out: dict[int, list[int]] = {}
        for f in faces:
            out.setdefault(popcount(f) - 1, []).append(f)
        for d in out:
            out[d].sort(key=indices_of)
        return cls(out)


@dataclass(frozen=True)
class HomotopyTypeReport:
    kind: str  # empty | contractible | wedge | undetermined
    evidence: str = "none"  # zero-critical-cells | single-dim-critical-cells | homology-consistent | none
    dim: int | None = None
    count: int | None = None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "evidence": self.evidence}
        if self.kind == "wedge":
            out["dim"] = self.dim
            out["count"] = self.count
        return out

    def describe(self) -> str:
        if self.kind == "wedge":
            sphere = f"S^{self.dim}"
            return sphere if self.count == 1 else f"wedge of {self.count} x {sphere}"
        return self.kind


@dataclass
class Verdict:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _face_key(f: int) -> tuple[int, tuple[int, ...]]:
    return popcount(f), indices_of(f)


def element_pairing_sequence(
    c: SimplicialComplex, schedule: PairingSchedule | Sequence[str]
) -> tuple[PartialPairing, CriticalCells]:
    """Run element pairings in schedule order on all faces of c (empty face included).

    At each step every remaining face s without x is paired with s + x when
    that face also remains; both leave the pool. What is left at the end is
    the critical set.
    """
    if not isinstance(schedule, PairingSchedule):
        schedule = PairingSchedule(tuple(schedule))
    if c.void:
        raise ComplexError("cannot pair faces of the void complex")
    bits = []
    for lab in schedule.elements:
        if lab not in c.index_of_label:
            raise ScheduleError(f"unknown schedule label {lab!r}")
        bits.append(1 << c.index_of_label[lab])
    remaining = set(c.faces)
    pairs: list[tuple[int, int]] = []
    for bit in bits:
        step = []
        for f in sorted(remaining, key=_face_key):
            if not f & bit and f | bit in remaining:
                step.append((f, f | bit))
        for lo, hi in step:
            remaining.discard(lo)
            remaining.discard(hi)
        pairs.extend(step)
    return PartialPairing(pairs, c), CriticalCells.from_faces(remaining)


def verify_partial_pairing(p: PartialPairing) -> Verdict:
    """Each pair is a cover relation (one extra element) and no face is used twice."""
    bad = []
    used: set[int] = set()
    for lo, hi in p.pairs:
        if lo & ~hi or popcount(hi) != popcount(lo) + 1:
            bad.append(f"{indices_of(lo)} -> {indices_of(hi)} is not a cover relation")
        if p.host is not None and (lo not in p.host.faces or hi not in p.host.faces):
            bad.append(f"{indices_of(lo)} -> {indices_of(hi)} leaves the complex")
        for f in (lo, hi):
            if f in used:
                bad.append(f"face {indices_of(f)} is paired more than once")
            used.add(f)
    return Verdict(not bad, bad)


def verify_acyclic(p: PartialPairing) -> Verdict:
    """Look for a directed cycle in the Hasse diagram with paired edges pointing up.

    A path can only climb along a paired edge, and no face is in two pairs,
    so any cycle alternates between two consecutive dimensions:
    a -> up(a) -> a' -> up(a') -> ... with a' a facet of up(a). The search
    runs on that reduced digraph over the lower faces of the pairs.
    """
    pre = verify_partial_pairing(p)
    if not pre:
        raise ValueError("not a partial pairing: " + "; ".join(pre.violations[:3]))
    up = dict(p.pairs)
    succ: dict[int, list[int]] = {}
    for lo, hi in p.pairs:
        nxt = []
        rest = hi
        while rest:
            low = rest & -rest
            rest ^= low
            facet = hi ^ low
            if facet != lo and facet in up:
                nxt.append(facet)
        succ[lo] = nxt
    # iterative three-colour depth-first search
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(succ, WHITE)
    for root in sorted(succ, key=_face_key):
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        colour[root] = GREY
        while stack:
            node, it = stack[-1]
            for nb in it:
                if colour[nb] == GREY:
                    return Verdict(False, [f"cycle through {indices_of(nb)} and {indices_of(up[nb])}"])
                if colour[nb] == WHITE:
                    colour[nb] = GREY
                    stack.append((nb, iter(succ[nb])))
                    break
            else:
                colour[node] = BLACK
                stack.pop()
    return Verdict(True)


def infer_homotopy_type(cc: CriticalCells, empty_paired: bool) -> HomotopyTypeReport:
    """Homotopy type licensed by the critical-cell census of an acyclic pairing."""
    counts = cc.counts
    if not empty_paired or -1 in counts:
        return HomotopyTypeReport("undetermined")
    if not counts:
        return HomotopyTypeReport("contractible", "zero-critical-cells")
    if len(counts) == 1:
        (d, n), = counts.items()
        return HomotopyTypeReport("wedge", "single-dim-critical-cells", d, n)
    return HomotopyTypeReport("undetermined")


def alternating_face_sum(faces: Iterable[int]) -> int:
    """Sum of (-1)^dim over the faces, the empty face counting -1."""
    return sum(1 if popcount(f) % 2 else -1 for f in faces)


def morse_euler_check(c: SimplicialComplex, cc: CriticalCells, empty_paired: bool) -> bool:
    """Paired faces cancel in the alternating sum, so all faces and critical faces must agree."""
    crit = cc.faces()
    if empty_paired == (0 in crit):
        return False
    return alternating_face_sum(c.faces) == alternating_face_sum(crit)


@dataclass
class MorseRun:
    complex: SimplicialComplex
    schedule: PairingSchedule
    pairing: PartialPairing
    critical: CriticalCells
    legal: Verdict
    acyclic: Verdict
    euler_ok: bool
    homotopy: HomotopyTypeReport

    @property
    def empty_paired(self) -> bool:
        return 0 not in self.critical.by_dimension.get(-1, [])

    def report(self) -> dict:
        c = self.complex
        return {
            "schedule": list(self.schedule.elements),
            "paired_count": len(self.pairing.pairs),
            "critical": [
                {"dim": d, "faces": [c.face_labels(f) for f in fs]}
                for d, fs in sorted(self.critical.by_dimension.items())
                if fs
            ],
            "empty_paired": self.empty_paired,
            "acyclic": bool(self.acyclic),
            "homotopy": self.homotopy.to_dict(),
        }


def run_schedule(c: SimplicialComplex, schedule: PairingSchedule | Sequence[str]) -> MorseRun:
    """Pair, re-verify legality and acyclicity, check the Euler sum and infer the type."""
    if not isinstance(schedule, PairingSchedule):
        schedule = PairingSchedule(tuple(schedule))
    pairing, cc = element_pairing_sequence(c, schedule)
    legal = verify_partial_pairing(pairing)
    acyclic = verify_acyclic(pairing) if legal else Verdict(False, ["pairing is not legal"])
    empty_paired = 0 not in cc.by_dimension.get(-1, [])
    homotopy = infer_homotopy_type(cc, empty_paired) if acyclic else HomotopyTypeReport("undetermined")
    return MorseRun(c, schedule, pairing, cc, legal, acyclic, morse_euler_check(c, cc, empty_paired), homotopy)


# --- fold lemma ------------------------------------------------------------


def _vertex(g: Graph, v: int | str) -> int:
    if isinstance(v, str):
        return g.vertex(v)
    if v not in g.vertex_labels:
        raise GraphError(f"invalid vertex id {v}")
    return v


def fold_reduce(g: Graph, v: int | str, w: int | str) -> Graph:
    """Delete w when N(v) is contained in N(w); Ind(g) collapses onto Ind(g - w)."""
    v, w = _vertex(g, v), _vertex(g, w)
    if v == w:
        raise FoldError("fold needs two distinct vertices")
    nv, nw = neighborhood(g, v), neighborhood(g, w)
    missing = sorted(g.vertex_labels[x] for x in nv - nw)
    if missing:
        raise FoldError(
            f"N({g.vertex_labels[v]}) is not contained in N({g.vertex_labels[w]}); "
            f"offending neighbors: {', '.join(missing)}",
            missing,
        )
    return delete_vertices(g, [w])


def path_on(labels: Sequence[str]) -> Graph:
    """Path graph whose vertices carry the given labels in order."""
    vl = dict(enumerate(labels))
    edges = tuple((i, i + 1) for i in range(len(labels) - 1))
    return Graph(vl, edges, tuple(f"{labels[i]}~{labels[i + 1]}" for i in range(len(labels) - 1)))


def _same_labeled_graph(g: Graph, h: Graph) -> bool:
    return set(g.vertex_labels.values()) == set(h.vertex_labels.values()) and labeled_edge_set(
        g
    ) == labeled_edge_set(h)


@dataclass
class FoldStep:
    keep: str
    delete: str
    keep_neighbors: list[str]
    delete_neighbors: list[str]

    def to_dict(self) -> dict:
        return {"v": self.keep, "w": self.delete, "N(v)": self.keep_neighbors, "N(w)": self.delete_neighbors}


def fold_sequence_grid(n: int) -> tuple[Graph, list[FoldStep]]:
    """Fold b_{n-2}, c_{n-2}, a_{n-1} out of X_n using a_n, then certify X_{n-2} + P_3.

    The remainder must coincide, label for label, with aux_graph_xn(n-2)
    disjoint-union the path b_{n-1} - a_n - c_{n-1}; FoldError otherwise.
    """
    if n < 3:
        raise FoldError(f"fold sequence needs n >= 3, got {n}")
    g = aux_graph_xn(n)
    log: list[FoldStep] = []
    keep = f"a_{n}"
    for target in (f"b_{n - 2}", f"c_{n - 2}", f"a_{n - 1}"):
        v, w = g.vertex(keep), g.vertex(target)
        step = FoldStep(
            keep,
            target,
            sorted(g.vertex_labels[x] for x in g.adjacency[v]),
            sorted(g.vertex_labels[x] for x in g.adjacency[w]),
        )
        g = fold_reduce(g, v, w)
        log.append(step)
    tail = {f"b_{n - 1}", keep, f"c_{n - 1}"}
    left = delete_vertices(g, [g.vertex(x) for x in tail])
    right = delete_vertices(g, [v for v, lab in g.vertex_labels.items() if lab not in tail])
    crossing = g.edge_count - left.edge_count - right.edge_count
    if crossing:
        raise FoldError(f"{crossing} edges join the path part to the rest")
    if not _same_labeled_graph(left, aux_graph_xn(n - 2)):
        raise FoldError(f"left part is not X_{n - 2}")
    if not _same_labeled_graph(right, path_on([f"b_{n - 1}", keep, f"c_{n - 1}"])):
        raise FoldError("right part is not the path b - a - c")
    return g, log


# --- schedules --------------------------------------------------------------


def grid_schedule(n: int) -> PairingSchedule:
    """a_1, a_3, ..., a_n for odd n; a_1, b_1, a_3, b_3, ..., a_{n-1}, b_{n-1} for even n."""
    if n % 2:
        return PairingSchedule(tuple(f"a_{i}" for i in range(1, n + 1, 2)))
    out = []
    for i in range(1, n, 2):
        out += [f"a_{i}", f"b_{i}"]
    return PairingSchedule(tuple(out))


def even_tiling_schedule(n: int) -> PairingSchedule:
    """a_1, b_{1,1}, then c_{2,n-2} (n even) or c_{2,n-1} (n odd)."""
    last = n - 2 if n % 2 == 0 else n - 1
    return PairingSchedule(("a_1", "b_{1,1}", f"c_{{2,{last}}}"))


def odd_simple_schedule(n: int) -> PairingSchedule:
    return PairingSchedule(("a_1", "b_{1,1}", f"c_{{4,{n - 1}}}"))
