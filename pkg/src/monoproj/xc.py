"""Desk-scale extension-complexity machinery: slack matrices, exact rectangle
covering of the slack support, and lower/upper bounds on xc(P).

Exact nonnegative rank is deliberately not computed; rectangle covering plus
rational rank give honest lower bounds, and the facet/vertex counts cap from
above.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple

from . import linalg
from . import polytope as pt
from .errors import CeilingExceededError


@dataclass(frozen=True)
class SlackMatrix:
    """Facet x vertex matrix of slacks b_f - a_f . v; entries are exact
    rationals, zero exactly when the vertex lies on the facet."""

    ineqs: Tuple[Tuple[Tuple[int, ...], int], ...]
    vertices: Tuple[Tuple[Fraction, ...], ...]
    entries: Tuple[Tuple[Fraction, ...], ...]

    @property
    def shape(self):
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def support(self):
        return frozenset((i, j) for i, row in enumerate(self.entries)
                         for j, x in enumerate(row) if x != 0)

    def to_jsonable(self) -> dict:
        def s(x):
            return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
        return {
            "rows": [f"facet_{i}" for i in range(len(self.entries))],
            "cols": [f"vertex_{j}" for j in range(len(self.vertices))],
            "entries": [[s(x) for x in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), indent=2)


def slack_matrix(p: pt.VPolytope) -> SlackMatrix:
    if p.is_empty:
        raise ValueError("slack matrix of the empty polytope")
    h = pt.facet_enumeration(p)
    entries = []
    for a, b in h.ineqs:
        row = []
        for v in p.vertices:
            s = Fraction(b) - linalg.dot(a, v)
            if s < 0:
                raise AssertionError("negative slack: inconsistent H-representation")
            row.append(s)
        entries.append(tuple(row))
    return SlackMatrix(h.ineqs, p.vertices, tuple(entries))


class RectCoverBound(NamedTuple):
    value: int
    exact: bool  # False when the ceiling forced a fooling-set fallback


def _maximal_rectangles(support, nrows, ncols, cap):
    """All maximal all-nonzero combinatorial rectangles, as frozensets of
    cells.  Generated from the intersection closure of row supports."""
    row_supp = [frozenset(j for j in range(ncols) if (i, j) in support)
                for i in range(nrows)]
    closure = set()
    frontier = {s for s in row_supp if s}
    while frontier:
        closure |= frontier
        nxt = set()
        for c in closure:
            for s in row_supp:
                t = c & s
                if t and t not in closure:
                    nxt.add(t)
        if len(closure) + len(nxt) > cap:
            return None
        frontier = nxt
    rects = set()
    for cols in closure:
        rows = frozenset(i for i in range(nrows) if cols <= row_supp[i])
        rects.add(frozenset((i, j) for i in rows for j in cols))
    return sorted(rects, key=lambda r: (-len(r), sorted(r)))


def fooling_set(s: SlackMatrix) -> int:
    """Greedy maximal fooling set size (cells no two of which fit in one
    all-nonzero rectangle); a lower bound on the rectangle cover number."""
    support = sorted(s.support())
    entries = s.entries
    chosen = []
    for i, j in support:
        ok = True
        for k, l in chosen:
            if entries[k][j] != 0 and entries[i][l] != 0:
                ok = False
                break
        if ok:
            chosen.append((i, j))
    return len(chosen)


def rectangle_cover_lb(s: SlackMatrix, rect_cap: int = 5000,
                       node_cap: int = 2_000_000) -> RectCoverBound:
    """Exact minimum number of all-nonzero rectangles covering the support of
    the slack matrix, by branch-and-bound set cover; falls back to the greedy
    fooling-set bound (flagged inexact) past the rectangle or node ceiling."""
    support = s.support()
    if not support:
        return RectCoverBound(0, True)
    nrows, ncols = s.shape
    fool = fooling_set(s)
    rects = _maximal_rectangles(support, nrows, ncols, rect_cap)
    if rects is None:
        return RectCoverBound(fool, False)

    # cells and rectangles as bitmasks
    cells = sorted(support)
    idx = {c: k for k, c in enumerate(cells)}
    masks = sorted((sum(1 << idx[c] for c in r) for r in rects),
                   key=lambda m: -m.bit_count())
    full = (1 << len(cells)) - 1

    # greedy initial upper bound
    uncovered = full
    greedy = 0
    while uncovered:
        uncovered &= ~max(masks, key=lambda m: (m & uncovered).bit_count())
        greedy += 1
    best_known = [greedy]
    cell_masks = [[m for m in masks if m >> k & 1] for k in range(len(cells))]
    seen: dict = {}
    nodes = [0]

    def bnb(uncovered, used):
        if not uncovered:
            best_known[0] = used
            return
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise CeilingExceededError("rectangle cover node ceiling")
        if seen.get(uncovered, len(cells) + 1) <= used:
            return
        seen[uncovered] = used
        # covering-ratio bound: each rectangle removes at most maxcov cells
        maxcov = max((m & uncovered).bit_count() for m in masks)
        if used + -(-uncovered.bit_count() // maxcov) >= best_known[0]:
            return
        # branch on an uncovered cell with the fewest candidate rectangles
        cell = min((k for k in range(len(cells)) if uncovered >> k & 1),
                   key=lambda k: len(cell_masks[k]))
        for m in cell_masks[cell]:
            bnb(uncovered & ~m, used + 1)

    try:
        bnb(full, 0)
    except CeilingExceededError:
        return RectCoverBound(fool, False)
    value = best_known[0]
    assert value >= fool
    return RectCoverBound(value, True)


def xc_bounds(p: pt.VPolytope) -> Tuple[int, int]:
    """(lower, upper) bounds on xc(P): lower from rectangle covering and the
    rational rank of the slack matrix, upper from min(facet count, vertex
    count) since a polytope with v vertices is the image of a simplex with v
    facets."""
    if p.is_empty:
        raise ValueError("xc of the empty polytope")
    if len(p.vertices) == 1:
        return 0, 0
    s = slack_matrix(p)
    cover = rectangle_cover_lb(s)
    rk = linalg.rank([list(r) for r in s.entries])
    lb = max(cover.value, rk)
    ub = min(len(s.entries), len(p.vertices))
    if lb > ub:
        raise AssertionError("xc lower bound exceeds upper bound")
    return lb, ub
