"""Closed points of the atlas over small prime fields.

A chart point is an assignment of field values to the four chart entries; it
only sees the abelianization, so transport between charts evaluates the
abelianized transition formulas. Each point spans a 2-dimensional subspace of
F_q^4 (the chart matrix: identity in the chart columns, entries elsewhere),
and the canonical representative of a glued point is the reduced row-echelon
form of that matrix. An independent oracle enumerates the echelon matrices
directly, without any chart or transition machinery, so the glued count has
ground truth to match.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from . import symbols as sy
from .atlas import all_charts, pair_overlap
from .fields import GF
from .poly import abelianize

QMAX = 7  # enumeration stays desk-scale up to here


class PointGluingError(RuntimeError):
    """A transported point failed to land on the same subspace."""


@dataclass(frozen=True)
class ChartPoint:
    chart: tuple
    q: int
    assignment: tuple  # ((entry sid, value), ...) in symbol order

    def values(self) -> dict:
        return dict(self.assignment)

    def __str__(self):
        inner = ", ".join(f"{sy.sym_name(s)}={v}" for s, v in self.assignment)
        return f"point[{inner}]"


def _entries(chart) -> list[int]:
    return [sy.entry(chart, i, j) for i in chart for j in range(1, 5) if j not in chart]


def chart_points(lam, q: int) -> list[ChartPoint]:
    """All q^4 points of one chart, in deterministic order."""
    lam = tuple(sorted(lam))
    GF(q)  # validates primality
    gens = _entries(lam)
    out = []
    for vals in product(range(q), repeat=len(gens)):
        out.append(ChartPoint(lam, q, tuple(zip(gens, vals))))
    return out


def point_matrix(p: ChartPoint) -> tuple:
    """The 2x4 matrix whose rows span the point's subspace: identity in the
    chart columns, the assigned entries elsewhere."""
    vals = p.values()
    rows = []
    for i in p.chart:
        row = []
        for c in range(1, 5):
            if c in p.chart:
                row.append(1 if c == i else 0)
            else:
                row.append(vals[sy.entry(p.chart, i, c)])
        rows.append(tuple(row))
    return tuple(rows)


def rref(mat, q: int) -> tuple:
    """Reduced row-echelon form over F_q, zero rows dropped."""
    field = GF(q)
    rows = [list(r) for r in mat]
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        src = next(
            (r for r in range(pivot_row, len(rows)) if not field.is_zero(rows[r][col])),
            None,
        )
        if src is None:
            continue
        rows[pivot_row], rows[src] = rows[src], rows[pivot_row]
        inv = field.inv(rows[pivot_row][col])
        rows[pivot_row] = [field.mul(inv, v) for v in rows[pivot_row]]
        for r in range(len(rows)):
            if r != pivot_row and not field.is_zero(rows[r][col]):
                c = rows[r][col]
                rows[r] = [
                    field.sub(v, field.mul(c, w)) for v, w in zip(rows[r], rows[pivot_row])
                ]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return tuple(tuple(r) for r in rows[:pivot_row])


# ---------------------------------------------------------------------------
# transport along abelianized transition formulas


_transition_cache: dict = {}


def _transition_data(lam, lam2, q: int):
    key = (lam, lam2, q)
    got = _transition_cache.get(key)
    if got is None:
        field = GF(q)
        pair = pair_overlap(lam, lam2, field)
        inverted = [abelianize(u) for u in pair.presentation.inverted]
        definitions = [
            (sid, abelianize(expr), as_inv) for sid, expr, as_inv in pair.presentation.definitions
        ]
        images = {
            e: abelianize(pair.to_base.mapping[e])
            for e in _entries(lam2)
        }
        got = (inverted, definitions, images)
        _transition_cache[key] = got
    return got


def in_overlap(p: ChartPoint, lam2) -> bool:
    """Whether the point lies in the overlap with the other chart: every
    abelianized inverted element of the overlap presentation is nonzero."""
    lam2 = tuple(sorted(lam2))
    if lam2 == p.chart:
        return True
    field = GF(p.q)
    inverted, _, _ = _transition_data(p.chart, lam2, p.q)
    values = p.values()
    return all(not field.is_zero(u.evaluate(values)) for u in inverted)


def transport(p: ChartPoint, lam2) -> ChartPoint:
    """The same subspace in the other chart's coordinates, computed through
    the abelianized transition formulas. The point must lie in the overlap."""
    lam2 = tuple(sorted(lam2))
    if lam2 == p.chart:
        return p
    field = GF(p.q)
    _, definitions, images = _transition_data(p.chart, lam2, p.q)
    values = p.values()
    try:
        for sid, expr, as_inv in definitions:
            v = expr.evaluate(values)
            values[sid] = field.inv(v) if as_inv else v
    except ZeroDivisionError:
        raise PointGluingError(f"{p} lies outside the overlap with chart {lam2}")
    gens = _entries(lam2)
    return ChartPoint(lam2, p.q, tuple((e, images[e].evaluate(values)) for e in gens))


# ---------------------------------------------------------------------------
# gluing


def glue_count(q: int) -> int:
    """Number of distinct subspaces spanned by all chart points, with the
    pointwise consistency check: wherever a point lies in an overlap, its
    transported coordinates must span the same subspace."""
    if q > QMAX:
        raise ValueError(f"q={q} exceeds the enumeration cap {QMAX}")
    charts = all_charts()
    reps = set()
    for lam in charts:
        for p in chart_points(lam, q):
            rep = rref(point_matrix(p), q)
            reps.add(rep)
            for lam2 in charts:
                if lam2 == lam or not in_overlap(p, lam2):
                    continue
                other = rref(point_matrix(transport(p, lam2)), q)
                if other != rep:
                    raise PointGluingError(
                        f"{p} transported to chart {lam2} spans a different subspace"
                    )
    return len(reps)


def glued_points(q: int) -> set:
    """The canonical representatives themselves (no consistency checking)."""
    if q > QMAX:
        raise ValueError(f"q={q} exceeds the enumeration cap {QMAX}")
    reps = set()
    for lam in all_charts():
        for p in chart_points(lam, q):
            reps.add(rref(point_matrix(p), q))
    return reps


def roundtrip_failures(q: int) -> list:
    """Points whose forward-and-back transport does not return the original
    assignment, over every ordered chart pair."""
    if q > QMAX:
        raise ValueError(f"q={q} exceeds the enumeration cap {QMAX}")
    charts = all_charts()
    bad = []
    for lam in charts:
        for lam2 in charts:
            if lam2 == lam:
                continue
            for p in chart_points(lam, q):
                if not in_overlap(p, lam2):
                    continue
                p2 = transport(p, lam2)
                if not in_overlap(p2, lam):
                    bad.append(f"{p} left the reverse overlap with {lam}")
                    continue
                back = transport(p2, lam)
                if back != p:
                    bad.append(f"{p} came back as {back}")
    return bad


# ---------------------------------------------------------------------------
# independent ground truth


def echelon_matrices(q: int):
    """Every reduced row-echelon 2x4 matrix of rank 2 over F_q, enumerated by
    pivot-column pattern. Built directly, with no chart machinery."""
    GF(q)
    for c1, c2 in combinations(range(4), 2):
        free1 = [c for c in range(4) if c > c1 and c != c2]
        free2 = [c for c in range(4) if c > c2]
        for v1 in product(range(q), repeat=len(free1)):
            for v2 in product(range(q), repeat=len(free2)):
                row1 = [0, 0, 0, 0]
                row2 = [0, 0, 0, 0]
                row1[c1] = 1
                row2[c2] = 1
                for c, v in zip(free1, v1):
                    row1[c] = v
                for c, v in zip(free2, v2):
                    row2[c] = v
                yield (tuple(row1), tuple(row2))


def subspace_pattern_counts(q: int) -> dict:
    """Echelon matrices per pivot-column pair (1-based)."""
    counts: dict = {}
    for m in echelon_matrices(q):
        pivots = tuple(row.index(1) + 1 for row in m)
        counts[pivots] = counts.get(pivots, 0) + 1
    return counts


def subspace_oracle(q: int) -> int:
    """Number of 2-dimensional subspaces of F_q^4, by brute-force enumeration."""
    return sum(1 for _ in echelon_matrices(q))


def gaussian_count(q: int) -> int:
    """The same count in closed form, for cross-checking the oracle."""
    return (q * q + 1) * (q * q + q + 1)
