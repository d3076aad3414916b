"""Integer simplicial homology via Smith normal form of boundary matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .complexes import ComplexError, SimplicialComplex, indices_of


@dataclass
class BoundaryMatrix:
    """Sparse boundary map from d-faces (columns) to (d-1)-faces (rows).

    ``entries[r]`` maps column index to a +-1 coefficient; faces are given as
    bitmasks in ``row_faces`` / ``col_faces``.
    """

    dimension: int
    row_faces: list[int]
    col_faces: list[int]
    entries: list[dict[int, int]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_faces), len(self.col_faces)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * len(self.col_faces) for _ in self.row_faces]
        for r, row in enumerate(self.entries):
            for c, v in row.items():
                out[r][c] = v
        return out


def boundary_matrix(c: SimplicialComplex, d: int) -> BoundaryMatrix:
    """Matrix of the boundary map in dimension d >= 1 (vertex order within a face is ascending)."""
    if c.void:
        raise ComplexError("void complex has no chain complex")
    rows = c.faces_by_dim.get(d - 1, [])
    cols = c.faces_by_dim.get(d, [])
    where = {f: i for i, f in enumerate(rows)}
    entries: list[dict[int, int]] = [{} for _ in rows]
    for j, face in enumerate(cols):
        for pos, v in enumerate(indices_of(face)):
            entries[where[face ^ (1 << v)]][j] = -1 if pos % 2 else 1
    return BoundaryMatrix(d, rows, cols, entries)


def boundary_matrices(c: SimplicialComplex) -> list[BoundaryMatrix]:
    """Boundary matrices for dimensions 1..dim; the augmentation is handled in reduced_betti."""
    if c.void:
        raise ComplexError("void complex has no chain complex")
    return [boundary_matrix(c, d) for d in range(1, c.dimension + 1)]


def composes_to_zero(lower: BoundaryMatrix, upper: BoundaryMatrix) -> bool:
    """Check lower . upper == 0, where lower is the boundary in dimension d and upper in d+1."""
    if lower.col_faces != upper.row_faces:
        raise ValueError("matrices are not consecutive")
    # column-major view of upper
    cols: list[dict[int, int]] = [{} for _ in upper.col_faces]
    for r, row in enumerate(upper.entries):
        for j, v in row.items():
            cols[j][r] = v
    lower_cols: list[dict[int, int]] = [{} for _ in lower.col_faces]
    for r, row in enumerate(lower.entries):
        for j, v in row.items():
            lower_cols[j][r] = v
    for col in cols:
        acc: dict[int, int] = {}
        for mid, v in col.items():
            for r, w in lower_cols[mid].items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


def _to_rows(matrix) -> list[dict[int, int]]:
    if isinstance(matrix, BoundaryMatrix):
        return [dict(r) for r in matrix.entries]
    return [{j: int(v) for j, v in enumerate(row) if v} for row in matrix]


def _diagonalize(rows_in: list[dict[int, int]]) -> list[int]:
    """Reduce to a diagonal by unimodular row/column operations; returns |diagonal| entries.

    Unit pivots are eliminated column by column (Schur complement, which is
    exact for +-1 pivots). Whatever remains is reduced with the pivot of
    smallest absolute value until every row and column is cleared.
    """
    rows = {i: r for i, r in enumerate(rows_in) if r}
    cols: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    diag: list[int] = []

    def drop(r: int, j: int) -> None:
        for c in rows.pop(r):
            if c != j:
                cols[c].discard(r)
                if not cols[c]:
                    del cols[c]
        cols.pop(j, None)

    def add_row(target: int, factor: int, source: dict[int, int]) -> None:
        # rows[target] -= factor * source
        row = rows[target]
        for c, v in source.items():
            nv = row.get(c, 0) - factor * v
            if nv:
                if c not in row:
                    cols.setdefault(c, set()).add(target)
                row[c] = nv
            elif c in row:
                del row[c]
                cols[c].discard(target)
                if not cols[c]:
                    del cols[c]

    def eliminate(r: int, j: int) -> None:
        p = rows[r][j]
        src = rows[r]
        for i in list(cols[j]):
            if i != r:
                add_row(i, rows[i][j] * p, src)
        drop(r, j)
        diag.append(1)

    progress = True
    while progress and cols:
        progress = False
        for j in sorted(cols, key=lambda c: len(cols[c])):
            if j not in cols:
                continue
            units = [i for i in cols[j] if abs(rows[i][j]) == 1]
            if units:
                eliminate(min(units, key=lambda i: (len(rows[i]), i)), j)
                progress = True

    while cols:
        # smallest absolute value anywhere in the residual
        r, j = min(
            ((i, c) for i, row in rows.items() for c in row),
            key=lambda ic: (abs(rows[ic[0]][ic[1]]), len(rows[ic[0]]), len(cols[ic[1]]), ic),
        )
        d = rows[r][j]
        if abs(d) == 1:
            eliminate(r, j)
            continue
        clean = True
        for i in list(cols[j]):
            if i == r:
                continue
            q = rows[i][j] // d
            if q:
                add_row(i, q, {c: v for c, v in rows[r].items()})
            if i in rows and j in rows[i]:
                clean = False
        if not clean:
            continue
        # column j is now d * e_r; column operations only touch row r
        for c in [c for c in rows[r] if c != j]:
            q = rows[r][c] // d
            nv = rows[r][c] - q * d
            if nv:
                rows[r][c] = nv
                clean = False
            else:
                del rows[r][c]
                cols[c].discard(r)
                if not cols[c]:
                    del cols[c]
        if clean:
            drop(r, j)
            diag.append(abs(d))
    return diag


def invariant_factors(diagonal: Sequence[int]) -> list[int]:
    """Turn any nonzero diagonal into the divisibility chain d_1 | d_2 | ... (same group)."""
    ones = [1 for x in diagonal if abs(x) == 1]
    rest = [abs(x) for x in diagonal if abs(x) != 1]
    for i in range(len(rest)):
        for j in range(i + 1, len(rest)):
            a, b = rest[i], rest[j]
            g = gcd(a, b)
            rest[i], rest[j] = g, a // g * b
    extra_ones = [x for x in rest if x == 1]
    return ones + extra_ones + [x for x in rest if x != 1]


def smith_normal_form(matrix) -> tuple[tuple[int, ...], int]:
    """Invariant factors (all positive, each dividing the next) and the rank.

    Accepts a dense list of rows or a BoundaryMatrix. Exact integer arithmetic.
    """
    factors = invariant_factors(_diagonalize(_to_rows(matrix)))
    return tuple(factors), len(factors)


@dataclass
class BettiReport:
    reduced_betti: list[int] = field(default_factory=list)
    torsion: list[list[int]] = field(default_factory=list)
    void: bool = False

    @property
    def torsion_free(self) -> bool:
        return not any(self.torsion)

    def nonzero(self) -> dict[int, int]:
        return {d: b for d, b in enumerate(self.reduced_betti) if b}

    def to_dict(self) -> dict:
        return {"reduced_betti": list(self.reduced_betti), "torsion": [list(t) for t in self.torsion], "void": self.void}


def reduced_betti(c: SimplicialComplex) -> BettiReport:
    """Reduced Betti numbers and torsion coefficients over the integers.

    beta_d = f_d - rank(boundary_d) - rank(boundary_{d+1}), with the augmentation
    as boundary_0. Torsion in dimension d is read off boundary_{d+1}.
    """
    if c.void:
        return BettiReport(void=True)
    top = c.dimension
    if top < 0:
        # only the empty face: reduced homology sits in degree -1, outside the report
        return BettiReport()
    ranks = {0: 1}
    factors: dict[int, tuple[int, ...]] = {}
    for d in range(1, top + 1):
        factors[d], ranks[d] = smith_normal_form(boundary_matrix(c, d))
    ranks[top + 1] = 0
    betti, torsion = [], []
    for d in range(top + 1):
        f_d = len(c.faces_by_dim.get(d, ()))
        betti.append(f_d - ranks[d] - ranks[d + 1])
        torsion.append([x for x in factors.get(d + 1, ()) if x > 1])
    return BettiReport(betti, torsion)


def homology_consistent_with(r: BettiReport, h) -> bool:
    """Whether a Betti report agrees with a homotopy-type report (see morse.HomotopyTypeReport)."""
    kind = h.kind
    if kind == "undetermined":
        return True
    if kind == "empty":
        return r.void
    if r.void or not r.torsion_free:
        return False
    if kind == "contractible":
        return not any(r.reduced_betti)
    if kind == "wedge":
        want = {h.dim: h.count} if h.count else {}
        return r.nonzero() == want
    raise ValueError(f"unknown homotopy kind {kind!r}")
