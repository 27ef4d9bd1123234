"""Graded free modules with degree twists and homogeneous matrices between them.

A free module carries one integer twist per basis element (the degree of
that generator).  A matrix between twisted free modules is homogeneous
when entry (i, j) is zero or homogeneous of degree
``source.twists[j] - target.twists[i]``; every constructor here enforces
that, so twist bookkeeping errors surface immediately instead of as
wrong homology later.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .ring import PolyRing, Polynomial


@dataclass(frozen=True)
class GradedFreeModule:
    rank: int
    twists: tuple

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("negative rank")
        if len(self.twists) != self.rank:
            raise ValueError("twists length must equal rank")
        object.__setattr__(self, "twists", tuple(int(t) for t in self.twists))

    @classmethod
    def of(cls, rank: int, twist: int = 0) -> "GradedFreeModule":
        return cls(rank, (twist,) * rank)

    def dual(self) -> "GradedFreeModule":
        return GradedFreeModule(self.rank, tuple(-t for t in self.twists))

    def shift(self, s: int) -> "GradedFreeModule":
        return GradedFreeModule(self.rank, tuple(t + s for t in self.twists))

    def direct_sum(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.rank + other.rank, self.twists + other.twists)

    def min_twist(self):
        return min(self.twists) if self.rank else None


class HomogeneityError(ValueError):
    pass


@dataclass(frozen=True)
class PolyMatrix:
    """Homogeneous matrix of polynomials: a map source -> target.

    Entries are stored row-major (target.rank rows, source.rank columns).
    Instances are immutable and hashable, which lets degreewise scalar
    realizations and Groebner bases be cached by value.
    """

    ring: PolyRing
    source: GradedFreeModule
    target: GradedFreeModule
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        if len(rows) != self.target.rank:
            raise ValueError("row count must equal target rank")
        for i, row in enumerate(rows):
            if len(row) != self.source.rank:
                raise ValueError("column count must equal source rank")
            for j, e in enumerate(row):
                if e.ring is not self.ring:
                    raise ValueError("mixed rings in matrix")
                if e.is_zero():
                    continue
                d = e.homogeneous_degree()
                want = self.source.twists[j] - self.target.twists[i]
                if d != want:
                    raise HomogeneityError(
                        f"entry ({i},{j}) = {e} has degree {d}, expected {want} "
                        f"from twists {self.source.twists[j]} -> {self.target.twists[i]}"
                    )

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_rows(cls, ring, rows, source=None, target=None) -> "PolyMatrix":
        """Build from polynomial rows, inferring twists when not given.

        Twists are inferred with target twists 0 and source twist per
        column equal to the column's (uniform) entry degree.
        """
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if target is None:
            target = GradedFreeModule.of(nrows, 0)
        if source is None:
            col_twists = []
            for j in range(ncols):
                degs = {
                    rows[i][j].homogeneous_degree() + target.twists[i]
                    for i in range(nrows)
                    if not rows[i][j].is_zero()
                }
                if len(degs) > 1:
                    raise HomogeneityError(f"column {j} entries have mixed degrees {sorted(degs)}")
                col_twists.append(degs.pop() if degs else 0)
            source = GradedFreeModule(ncols, tuple(col_twists))
        return cls(ring, source, target, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, ring, fm: GradedFreeModule) -> "PolyMatrix":
        rows = [
            [ring.one if i == j else ring.zero for j in range(fm.rank)]
            for i in range(fm.rank)
        ]
        return cls(ring, fm, fm, tuple(tuple(r) for r in rows))

    @classmethod
    def zero_map(cls, ring, source: GradedFreeModule, target: GradedFreeModule) -> "PolyMatrix":
        rows = [[ring.zero] * source.rank for _ in range(target.rank)]
        return cls(ring, source, target, tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, ring, columns, target: GradedFreeModule) -> "PolyMatrix":
        """Build from a list of columns (each a list of target.rank polys)."""
        ncols = len(columns)
        rows = [[columns[j][i] for j in range(ncols)] for i in range(target.rank)]
        col_twists = []
        for j, col in enumerate(columns):
            degs = {
                e.homogeneous_degree() + target.twists[i]
                for i, e in enumerate(col)
                if not e.is_zero()
            }
            if len(degs) > 1:
                raise HomogeneityError(f"column {j} entries have mixed degrees {sorted(degs)}")
            col_twists.append(degs.pop() if degs else 0)
        source = GradedFreeModule(ncols, tuple(col_twists))
        return cls(ring, source, target, tuple(tuple(r) for r in rows))

    # -- shape helpers ----------------------------------------------------------

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.nrows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    # -- algebra ------------------------------------------------------------------

    def compose(self, other: "PolyMatrix") -> "PolyMatrix":
        """self @ other (apply other first)."""
        if other.target != self.source:
            raise ValueError("inner modules do not match")
        entries = _raw_mul(self.ring, self.entries, other.entries)
        return PolyMatrix(self.ring, other.source, self.target, entries)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.source != self.source or other.target != self.target:
            raise ValueError("shape/twist mismatch in matrix sum")
        rows = tuple(
            tuple(a + b for a, b in zip(r1, r2))
            for r1, r2 in zip(self.entries, other.entries)
        )
        return PolyMatrix(self.ring, self.source, self.target, rows)

    def __neg__(self) -> "PolyMatrix":
        rows = tuple(tuple(-e for e in row) for row in self.entries)
        return PolyMatrix(self.ring, self.source, self.target, rows)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def transpose(self) -> "PolyMatrix":
        """Dual map between the dual modules (twists negated)."""
        rows = tuple(
            tuple(self.entries[i][j] for i in range(self.nrows))
            for j in range(self.ncols)
        )
        return PolyMatrix(self.ring, self.target.dual(), self.source.dual(), rows)

    def shift(self, s: int) -> "PolyMatrix":
        """Same entries with both source and target twists shifted by s."""
        return PolyMatrix(self.ring, self.source.shift(s), self.target.shift(s), self.entries)

    def with_source_twists(self, twists) -> "PolyMatrix":
        return PolyMatrix(self.ring, GradedFreeModule(self.ncols, tuple(twists)), self.target, self.entries)

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.target != self.target:
            raise ValueError("hstack requires identical targets")
        rows = tuple(r1 + r2 for r1, r2 in zip(self.entries, other.entries))
        return PolyMatrix(self.ring, self.source.direct_sum(other.source), self.target, rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        src = GradedFreeModule(len(col_idx), tuple(self.source.twists[j] for j in col_idx))
        tgt = GradedFreeModule(len(row_idx), tuple(self.target.twists[i] for i in row_idx))
        rows = tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx)
        return PolyMatrix(self.ring, src, tgt, rows)

    def evaluate(self, point) -> list:
        """Scalar matrix (list of int rows) at a point of k^v."""
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def __str__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"[{body}]"


def _raw_mul(ring, a_entries, b_entries):
    """Entry-grid product without twist metadata (shared by compose)."""
    n = len(a_entries)
    inner = len(b_entries)
    m = len(b_entries[0]) if inner else 0
    if inner and len(a_entries[0]) != inner:
        raise ValueError("dimension mismatch")
    out = []
    for i in range(n):
        arow = a_entries[i]
        row = []
        for j in range(m):
            acc = ring.zero
            for k in range(inner):
                if arow[k].is_zero() or b_entries[k][j].is_zero():
                    continue
                acc = acc + arow[k] * b_entries[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def raw_product_is_zero(ring, a_entries, b_entries) -> bool:
    """Whether the raw entry-grid product vanishes identically."""
    return all(e.is_zero() for row in _raw_mul(ring, a_entries, b_entries) for e in row)


def determinant(ring, grid) -> Polynomial:
    """Laplace expansion along the first row; grids stay tiny here."""
    n = len(grid)
    if n == 0:
        return ring.one
    if any(len(row) != n for row in grid):
        raise ValueError("determinant of a non-square grid")
    if n == 1:
        return grid[0][0]
    if n == 2:
        return grid[0][0] * grid[1][1] - grid[0][1] * grid[1][0]
    total = ring.zero
    rest = grid[1:]
    for j in range(n):
        if grid[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1 :] for row in rest]
        term = grid[0][j] * determinant(ring, minor)
        total = total + (term if j % 2 == 0 else -term)
    return total
