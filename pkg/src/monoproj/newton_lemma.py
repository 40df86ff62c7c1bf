"""Newton polytopes, the executable projection-to-extension lemma with
certificate extraction, and the converse constructor that turns a polytope
extension of the cycle cover polytope back into a monotone permanent
projection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from . import polytope as pt
from .errors import RingMismatchError
from .polynomial import Poly, make, matrix_vars
from .projection import (Const, MonomialProjectionMap, ProjectionMap, Var,
                         apply_simple, monomial_to_simple, permanent_image)
from .semiring import REAL, warn_tropical_nonneg


def newton_polytope(p: Poly) -> pt.VPolytope:
    """Convex hull of the exponent vectors of p's stored terms."""
    if p.is_zero:
        return pt.VPolytope(len(p.variables), ())
    return pt.hull_vertices([[Fraction(e) for e in exps] for exps in p.support()],
                            len(p.variables))


@dataclass(frozen=True)
class ExtensionCertificate:
    kernel: Tuple[str, ...]
    face: pt.VPolytope
    map: pt.AffineMapT
    image_ok: bool
    c_of_source: Optional[int]

    def to_jsonable(self) -> dict:
        return {
            "kernel": list(self.kernel),
            "face_vertices": self.face.to_jsonable()["vertices"],
            "map": {"L": [[str(x) for x in row] for row in self.map.matrix]},
            "image_ok": self.image_ok,
            "c_of_source": self.c_of_source,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), indent=2)


def induced_linear_map(pi: ProjectionMap) -> pt.AffineMapT:
    """Linear map sending a source exponent vector (supported off the kernel)
    to the exponent vector of its image monomial: column j is the unit vector
    of x_i when pi(y_j) = x_i, and zero when y_j is assigned a constant."""
    n = len(pi.target_vars)
    m = len(pi.source_vars)
    tindex = {v: i for i, v in enumerate(pi.target_vars)}
    rows = [[Fraction(0)] * m for _ in range(n)]
    for j, a in enumerate(pi.assign):
        if isinstance(a, Var):
            rows[tindex[a.name]][j] = Fraction(1)
    return pt.AffineMapT.of(rows)


def main_lemma_extract(pi: ProjectionMap, g: Poly,
                       with_c: bool = True) -> ExtensionCertificate:
    """Certificate that some face of New(g) is an extension of New(f) for
    f = apply_simple(pi, g): the kernel coordinate face of New(g), mapped by
    the induced linear map, must land exactly on New(f)."""
    if not pi.is_monotone():
        raise ValueError("projection is not monotone")
    if not g.is_monotone():
        if g.semiring.tag == "tropical":
            warn_tropical_nonneg("lemma source polynomial")
        else:
            raise ValueError("source polynomial has a negative coefficient")
    f = apply_simple(pi, g)
    if f.is_zero:
        raise ValueError("projected polynomial is zero")
    kernel = pi.kernel()
    kset = {pi.source_vars.index(v) for v in kernel}
    new_g = newton_polytope(g)
    face = pt.coordinate_face(new_g, kset)
    lmap = induced_linear_map(pi)
    new_f = newton_polytope(f)
    ok = pt.is_extension(face, lmap, new_f)
    c_src = pt.c_of(new_g) if with_c else None
    return ExtensionCertificate(kernel, face, lmap, ok, c_src)


def converse_construct(p: pt.VPolytope, m: int, ell: pt.AffineMapT,
                       degree_bound: int = 24):
    """From an integral polytope p extended by the m-th cycle cover polytope
    along an integer affine map, build the polynomial f = sum over cycle
    covers e of y^{ell(e)} (real instance), the monomial permanent projection
    producing it, and its compiled simple projection.

    Returns (f, pi_mono, (M, sigma)).  The affine offset is absorbed into the
    row-1 monomials (every cycle cover uses exactly one row-1 entry), so the
    monomial projection reproduces f exactly.
    """
    if not p.is_integral():
        raise ValueError("target polytope must be integral")
    if not ell.is_integer():
        raise ValueError("extension map must have integer coefficients")
    cm = pt.gen_cycle_cover_polytope(m)
    if not pt.is_extension(cm, ell, p):
        raise ValueError("cycle cover polytope does not extend p along ell")

    n = ell.target_dim
    yvars = [f"y_{i}" for i in range(1, n + 1)]
    terms = []
    for e in cm.vertices:
        exps = ell.apply(e)
        if any(x < 0 for x in exps):
            raise ValueError("ell image leaves the non-negative orthant")
        terms.append((REAL.one, [int(x) for x in exps]))
    f = make(REAL, yvars, terms)

    assign = []
    for i in range(m):
        for j in range(m):
            col = [row[i * m + j] for row in ell.matrix]
            if i == 0:
                col = [x + t for x, t in zip(col, ell.offset)]
            if any(x < 0 or x.denominator != 1 for x in col):
                raise ValueError("monomial exponents leave the non-negative "
                                 "integer orthant")
            assign.append((REAL.one, tuple(int(x) for x in col)))
    pi_mono = MonomialProjectionMap(REAL, tuple(matrix_vars(m)), tuple(yvars),
                                    tuple(assign))
    big_m, sigma = monomial_to_simple(pi_mono, m, degree_bound=degree_bound)

    if newton_polytope(f) != p:
        raise AssertionError("constructed polynomial has the wrong Newton polytope")
    img = permanent_image(sigma, big_m)
    if set(img.support()) != set(f.support()):
        raise AssertionError("compiled simple projection has the wrong support")
    return f, pi_mono, (big_m, sigma)


@dataclass(frozen=True)
class XcConsequenceReport:
    c_of_g: int
    xc_lower_bound_f: int
    satisfiable: bool

    def to_jsonable(self) -> dict:
        return {"c_of_source": self.c_of_g,
                "xc_lower_bound_target": self.xc_lower_bound_f,
                "monotone_projection_possible": self.satisfiable}


def check_xc_consequence(f: Poly, g: Poly) -> XcConsequenceReport:
    """Necessary condition for any monotone projection g -> f: the extension
    complexity of New(f) is at most c(New(g)).  A violated bound certifies
    non-existence at these sizes."""
    from .xc import xc_bounds
    c_g = pt.c_of(newton_polytope(g))
    lb, _ = xc_bounds(newton_polytope(f))
    return XcConsequenceReport(c_g, lb, lb <= c_g)
