"""Exact rational polytopes: V- and H-representations, hull/facet/vertex
enumeration via the double description method, coordinate faces, affine
images, extension checks, and the named polytope generators.

Desk-scale code: ambient dimension up to ~16 and a few thousand vertices.
All arithmetic is on Fractions; H-representations are normalized to
primitive integer data so outputs are bit-exact reproducible.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from . import linalg
from .errors import UnboundedError
from .polynomial import perfect_matchings


def _fr(v):
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class VPolytope:
    """Vertex representation.  `vertices` are exactly the vertices (minimal),
    sorted for determinism.  The empty polytope has no vertices and dim -1."""

    ambient_dim: int
    vertices: Tuple[Tuple[Fraction, ...], ...]

    @staticmethod
    def from_vertices(ambient_dim: int, vertices: Iterable[Sequence]) -> "VPolytope":
        vs = sorted({_fr(v) for v in vertices})
        for v in vs:
            if len(v) != ambient_dim:
                raise ValueError("vertex dimension mismatch")
        return VPolytope(ambient_dim, tuple(vs))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def dim(self) -> int:
        if self.is_empty:
            return -1
        v0 = self.vertices[0]
        diffs = [[x - y for x, y in zip(v, v0)] for v in self.vertices[1:]]
        return linalg.rank(diffs)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    def to_jsonable(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "vertices": [[f"{x.numerator}/{x.denominator}" if x.denominator != 1
                          else str(x.numerator) for x in v] for v in self.vertices],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), indent=2)

    @staticmethod
    def from_jsonable(obj: dict) -> "VPolytope":
        return VPolytope.from_vertices(
            obj["dim"], [[Fraction(x) for x in v] for v in obj["vertices"]])


@dataclass(frozen=True)
class HPolytope:
    """Inequalities a.x <= b and equalities a.x = b with primitive integer
    data; inequalities irredundant, equalities a canonical echelon basis."""

    ambient_dim: int
    ineqs: Tuple[Tuple[Tuple[int, ...], int], ...]
    eqs: Tuple[Tuple[Tuple[int, ...], int], ...]

    @property
    def c(self) -> int:
        """Number of facet inequalities (equalities are free)."""
        return len(self.ineqs)

    def contains(self, point) -> bool:
        p = _fr(point)
        return (all(linalg.dot(a, p) <= b for a, b in self.ineqs)
                and all(linalg.dot(a, p) == b for a, b in self.eqs))

    def to_jsonable(self) -> dict:
        return {
            "dim": self.ambient_dim,
            "ineqs": [{"a": list(a), "b": b} for a, b in self.ineqs],
            "eqs": [{"a": list(a), "b": b} for a, b in self.eqs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), indent=2)

    @staticmethod
    def from_jsonable(obj: dict) -> "HPolytope":
        return HPolytope(
            obj["dim"],
            tuple((tuple(r["a"]), r["b"]) for r in obj["ineqs"]),
            tuple((tuple(r["a"]), r["b"]) for r in obj["eqs"]),
        )


@dataclass(frozen=True)
class AffineMapT:
    """x |-> Lx + t with rational entries; L is target_dim x source_dim."""

    matrix: Tuple[Tuple[Fraction, ...], ...]
    offset: Tuple[Fraction, ...]

    @staticmethod
    def of(matrix, offset=None) -> "AffineMapT":
        rows = tuple(_fr(r) for r in matrix)
        if offset is None:
            offset = [0] * len(rows)
        return AffineMapT(rows, _fr(offset))

    @property
    def source_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def target_dim(self) -> int:
        return len(self.matrix)

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for r in self.matrix for x in r) and \
            all(x.denominator == 1 for x in self.offset)

    def apply(self, point):
        p = _fr(point)
        if len(p) != self.source_dim:
            raise ValueError("dimension mismatch")
        return tuple(linalg.dot(r, p) + t for r, t in zip(self.matrix, self.offset))

    def to_jsonable(self) -> dict:
        def s(x):
            return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
        return {"L": [[s(x) for x in r] for r in self.matrix],
                "t": [s(x) for x in self.offset]}

    @staticmethod
    def from_jsonable(obj: dict) -> "AffineMapT":
        return AffineMapT.of([[Fraction(x) for x in r] for r in obj["L"]],
                             [Fraction(x) for x in obj.get("t", [])] or None)


# ---------------------------------------------------------------------------
# Hull of a finite point set

def _two_valued(points) -> bool:
    vals = {x for p in points for x in p}
    if vals <= {Fraction(0)}:
        return len(points) <= 1
    nonzero = vals - {Fraction(0)}
    return len(nonzero) == 1 and next(iter(nonzero)) > 0 and vals <= {Fraction(0), next(iter(nonzero))}


def hull_vertices(points: Iterable[Sequence], ambient_dim: int | None = None) -> VPolytope:
    """Minimal vertex set of conv(points); removed points are certified as
    convex combinations by exact LP feasibility."""
    pts = sorted({_fr(p) for p in points})
    if not pts:
        if ambient_dim is None:
            raise ValueError("ambient dimension required for an empty point set")
        return VPolytope(ambient_dim, ())
    d = len(pts[0])
    if ambient_dim is not None and ambient_dim != d:
        raise ValueError("ambient dimension mismatch")
    if len(pts) <= 2 or _two_valued(pts):
        # distinct points of a {0, c}-valued set are all vertices
        return VPolytope(d, tuple(pts))
    keep = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not linalg.in_convex_hull(p, others):
            keep.append(p)
    return VPolytope(d, tuple(keep))


# ---------------------------------------------------------------------------
# Double description: extreme rays of a pointed cone {x : Rx >= 0}

def _extreme_rays_pointed(rows, dim):
    """Extreme rays of {x in R^dim : r.x >= 0 for all rows}; requires the row
    matrix to have full column rank (pointed cone).  Deterministic; returns
    sorted primitive integer tuples."""
    rows = [_fr(r) for r in rows]
    # greedy independent subset for the simplicial start
    basis_rows = []
    basis_idx = []
    for i, r in enumerate(rows):
        if linalg.rank(basis_rows + [list(r)]) > len(basis_rows):
            basis_rows.append(list(r))
            basis_idx.append(i)
        if len(basis_rows) == dim:
            break
    if len(basis_rows) < dim:
        raise ValueError("cone is not pointed (row rank deficient)")
    inv = linalg.invert(basis_rows)
    rays = []
    for j in range(dim):
        ray = linalg.primitive([inv[i][j] for i in range(dim)])
        zeros = {basis_idx[i] for i in range(dim) if i != j}
        rays.append((ray, zeros))
    processed = list(basis_idx)
    for idx in range(len(rows)):
        if idx in basis_idx:
            continue
        h = rows[idx]
        vals = [linalg.dot(h, r) for r, _ in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        new_rays = []
        for k in pos + zer:
            r, z = rays[k]
            if vals[k] == 0:
                z = z | {idx}
            new_rays.append((r, z))
        for kp in pos:
            for kn in neg:
                common = rays[kp][1] & rays[kn][1]
                adjacent = True
                for ko, (r, z) in enumerate(rays):
                    if ko not in (kp, kn) and common <= z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                rp, rn = rays[kp][0], rays[kn][0]
                vp, vn = vals[kp], vals[kn]
                ray = linalg.primitive([vp * b - vn * a for a, b in zip(rp, rn)])
                zeros = {j for j in processed + [idx]
                         if linalg.dot(rows[j], ray) == 0}
                new_rays.append((ray, zeros))
        rays = new_rays
        processed.append(idx)
    return sorted(r for r, _ in rays)


def _extreme_rays(rows, dim):
    """Extreme rays with lineality handled by quotienting; returns
    (rays, lineality_basis)."""
    rows = [list(_fr(r)) for r in rows]
    lin = linalg.nullspace(rows, dim)
    if not lin:
        return _extreme_rays_pointed(rows, dim), []
    _, piv = linalg.rref(lin)
    comp = [c for c in range(dim) if c not in piv]
    red_rows = [[r[c] for c in comp] for r in rows]
    red_rays = _extreme_rays_pointed(red_rows, len(comp))
    rays = []
    for rr in red_rays:
        full = [Fraction(0)] * dim
        for c, x in zip(comp, rr):
            full[c] = Fraction(x)
        rays.append(linalg.primitive(full))
    return sorted(rays), [linalg.primitive(v) for v in lin]


# ---------------------------------------------------------------------------
# Facet enumeration (V -> H)

_FACET_CACHE: dict = {}


def facet_enumeration(v: VPolytope) -> HPolytope:
    """Exact H-representation: canonical affine-hull equalities plus the
    irredundant facet inequalities, with primitive integer normals."""
    if v.is_empty:
        raise ValueError("facet enumeration of the empty polytope")
    key = (v.ambient_dim, v.vertices)
    if key in _FACET_CACHE:
        return _FACET_CACHE[key]
    d = v.ambient_dim
    v0 = v.vertices[0]
    diffs = [[x - y for x, y in zip(w, v0)] for w in v.vertices[1:]]
    normals = linalg.nullspace(diffs, d) if diffs else \
        [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    # canonical echelon equality basis
    eq_rows, _ = linalg.rref(normals)
    eqs = []
    for a in eq_rows:
        ap = linalg.primitive(a)
        b = linalg.dot(ap, v0)
        assert b.denominator == 1
        eqs.append((ap, int(b)))
    eqs.sort()

    _, eq_piv = linalg.rref([list(a) for a, _ in eqs]) if eqs else ([], [])
    free = [c for c in range(d) if c not in eq_piv]
    k = len(free)
    if k == 0:
        result = HPolytope(d, (), tuple(eqs))
        _FACET_CACHE[key] = result
        return result

    cone_rows = [[Fraction(1)] + [w[c] for c in free] for w in v.vertices]
    rays = _extreme_rays_pointed(cone_rows, k + 1)
    ineqs = []
    for ray in rays:
        b = Fraction(ray[0])
        a_free = [-Fraction(x) for x in ray[1:]]
        a = [Fraction(0)] * d
        for c, x in zip(free, a_free):
            a[c] = x
        vec = linalg.primitive(list(a) + [b])
        ineqs.append((tuple(vec[:-1]), vec[-1]))
    ineqs.sort()
    result = HPolytope(d, tuple(ineqs), tuple(eqs))
    _FACET_CACHE[key] = result
    return result


def c_of(v: VPolytope) -> int:
    """Facet count c(P)."""
    return facet_enumeration(v).c


# ---------------------------------------------------------------------------
# Vertex enumeration (H -> V)

def vertex_enumeration(h: HPolytope) -> VPolytope:
    """Exact vertex set of a bounded H-polytope; raises UnboundedError on
    unbounded input, returns the empty polytope when infeasible."""
    d = h.ambient_dim
    # solve equalities: x_P = c + T x_F
    if h.eqs:
        aug = [list(map(Fraction, a)) + [Fraction(b)] for a, b in h.eqs]
        red, piv = linalg.rref(aug)
        if d in piv:
            return VPolytope(d, ())  # inconsistent equalities
        pivots = piv
        free = [c for c in range(d) if c not in pivots]
        base = {p: red[i][d] for i, p in enumerate(pivots)}
        coef = {p: [-red[i][c] for c in free] for i, p in enumerate(pivots)}
    else:
        pivots = []
        free = list(range(d))
        base, coef = {}, {}
    k = len(free)

    def subst(a, b):
        """Rewrite a.x <= b over the free coordinates; returns (a', b')."""
        a = list(map(Fraction, a))
        b = Fraction(b)
        ar = [a[c] for c in free]
        for p in pivots:
            if a[p] != 0:
                b -= a[p] * base[p]
                ar = [x + a[p] * y for x, y in zip(ar, coef[p])]
        return ar, b

    cone_rows = [[Fraction(1)] + [Fraction(0)] * k]  # lambda >= 0
    trivially_infeasible = False
    for a, b in h.ineqs:
        ar, br = subst(a, b)
        if all(x == 0 for x in ar):
            if br < 0:
                trivially_infeasible = True
            continue
        cone_rows.append([br] + [-x for x in ar])
    if trivially_infeasible:
        return VPolytope(d, ())

    rays, lineality = _extreme_rays(cone_rows, k + 1)
    verts = []
    recession = False
    for ray in rays:
        lam = ray[0]
        if lam > 0:
            u = [Fraction(x, lam) for x in ray[1:]]
            x = [Fraction(0)] * d
            for c, val in zip(free, u):
                x[c] = val
            for p in pivots:
                x[p] = base[p] + linalg.dot(coef[p], u)
            verts.append(tuple(x))
        else:
            recession = True
    if not verts:
        return VPolytope(d, ())
    if recession or lineality:
        raise UnboundedError("H-polytope is unbounded")
    return VPolytope(d, tuple(sorted(verts)))


# ---------------------------------------------------------------------------
# Faces, images, extensions

def coordinate_face(p: VPolytope, coords: Iterable[int]) -> VPolytope:
    """Sub-polytope of vertices vanishing on the given coordinates; a face
    because all coordinates are non-negative (checked)."""
    coords = sorted(set(coords))
    for v in p.vertices:
        if any(x < 0 for x in v):
            raise ValueError("coordinate faces require a polytope in the "
                             "non-negative orthant")
    verts = [v for v in p.vertices if all(v[c] == 0 for c in coords)]
    return VPolytope(p.ambient_dim, tuple(verts))


def image(m: AffineMapT, p: VPolytope) -> VPolytope:
    """Exact affine image: hull of the mapped vertices."""
    if p.is_empty:
        return VPolytope(m.target_dim, ())
    if m.source_dim != p.ambient_dim:
        raise ValueError("map/polytope dimension mismatch")
    return hull_vertices([m.apply(v) for v in p.vertices], m.target_dim)


def is_extension(q: VPolytope, m: AffineMapT, p: VPolytope) -> bool:
    """True iff the affine image of q equals p exactly (as vertex sets)."""
    return image(m, q) == p


# ---------------------------------------------------------------------------
# Named polytopes

def gen_cycle_cover_polytope(m: int) -> VPolytope:
    """Convex hull of the permutation-matrix indicator vectors in R^{m^2}
    (cycle covers of the complete digraph with loops); the Birkhoff polytope."""
    if m < 1:
        raise ValueError("m must be >= 1")
    verts = []
    for perm in itertools.permutations(range(m)):
        v = [Fraction(0)] * (m * m)
        for i, j in enumerate(perm):
            v[i * m + j] = Fraction(1)
        verts.append(tuple(v))
    return hull_vertices(verts, m * m)


def gen_tsp_polytope(n: int) -> VPolytope:
    """Hull of the (n-1)! directed tour indicators in R^{n^2}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    verts = []
    if n == 1:
        verts.append((Fraction(1),))
    else:
        for rest in itertools.permutations(range(1, n)):
            cyc = (0,) + rest
            v = [Fraction(0)] * (n * n)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                v[a * n + b] = Fraction(1)
            verts.append(tuple(v))
    return hull_vertices(verts, n * n)


def gen_pm_polytope(n: int) -> VPolytope:
    """Hull of perfect-matching indicators of K_{2n} in R^{C(2n,2)}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pairs = list(itertools.combinations(range(1, 2 * n + 1), 2))
    index = {e: i for i, e in enumerate(pairs)}
    verts = []
    for mtch in perfect_matchings(2 * n):
        v = [Fraction(0)] * len(pairs)
        for e in mtch:
            v[index[e]] = Fraction(1)
        verts.append(tuple(v))
    return hull_vertices(verts, len(pairs))


def gen_cut_polytope(n: int, q: int) -> VPolytope:
    """Hull of the (q-1)-scaled cut indicators over subsets A of [n], in the
    ordered-pair coordinates R^{n(n-1)}."""
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    verts = set()
    for bits in itertools.product((0, 1), repeat=n):
        a = {i + 1 for i in range(n) if bits[i]}
        v = tuple(Fraction(q - 1) if (i in a and j not in a) else Fraction(0)
                  for i, j in pairs)
        verts.add(v)
    return hull_vertices(verts, len(pairs))


def scale(p: VPolytope, factor) -> VPolytope:
    f = Fraction(factor)
    return VPolytope(p.ambient_dim,
                     tuple(sorted(tuple(f * x for x in v) for v in p.vertices)))
