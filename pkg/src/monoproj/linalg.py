"""Exact rational linear algebra helpers: rref, nullspace, inversion, and a
phase-1 simplex for feasibility of {x >= 0 : Ax = b}.  Everything runs on
``fractions.Fraction``; no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def frac_rows(rows):
    return [[Fraction(x) for x in r] for r in rows]


def rref(rows):
    """Reduced row echelon form.  Returns (rref rows, pivot column list)."""
    m = frac_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows, ncols):
    """Basis of {x : Rx = 0} for the row matrix R, as Fraction vectors."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def invert(rows):
    """Inverse of a square Fraction matrix; raises ValueError if singular."""
    n = len(rows)
    aug = [list(map(Fraction, rows[i])) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in red]


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def primitive(vec):
    """Scale a rational vector to a primitive integer vector (positive scale)."""
    fr = [Fraction(x) for x in vec]
    if all(x == 0 for x in fr):
        return tuple(0 for _ in fr)
    lcm = 1
    for x in fr:
        d = x.denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(x * lcm) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def lp_feasible(a_rows, b):
    """Exact feasibility of {x >= 0 : Ax = b} via phase-1 simplex, Bland's rule.

    Returns the solution as a list of Fractions, or None if infeasible.
    """
    m = len(a_rows)
    if m == 0:
        return []
    n = len(a_rows[0])
    tab = []
    rhs = []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        tab.append(row + [Fraction(int(j == i)) for j in range(m)])
        rhs.append(bi)
    basis = [n + i for i in range(m)]
    # Reduced cost row for minimizing the sum of artificials.
    cost = [Fraction(0)] * (n + m)
    obj = Fraction(0)
    for i in range(m):
        cost = [c - a for c, a in zip(cost, tab[i])]
        obj -= rhs[i]
    for j in range(n, n + m):
        cost[j] = Fraction(0)  # artificials are basic with zero reduced cost

    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        # Bland ratio test.
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = rhs[i] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ArithmeticError("phase-1 objective unbounded; inconsistent tableau")
        pv = tab[leave][enter]
        tab[leave] = [x / pv for x in tab[leave]]
        rhs[leave] /= pv
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
                rhs[i] -= f * rhs[leave]
        if cost[enter] != 0:
            f = cost[enter]
            cost = [x - f * y for x, y in zip(cost, tab[leave])]
            obj -= f * rhs[leave]
        basis[leave] = enter

    if obj != 0:
        return None
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        if bj < n:
            x[bj] = rhs[i]
        elif rhs[i] != 0:
            return None  # degenerate artificial stuck at positive level
    return x


def in_convex_hull(point, points) -> bool:
    """Exact test: is `point` a convex combination of `points`?"""
    if not points:
        return False
    d = len(point)
    a_rows = [[Fraction(p[i]) for p in points] for i in range(d)]
    a_rows.append([Fraction(1)] * len(points))
    b = [Fraction(x) for x in point] + [Fraction(1)]
    return lp_feasible(a_rows, b) is not None
