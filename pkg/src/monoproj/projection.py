"""Simple, affine, and monomial projections between polynomial rings, the
affine-to-simple and formula-to-permanent compilers, and an exhaustive
search for small monotone projections of the permanent.

The compilers all follow the same cycle-cover idiom: build a weighted digraph
whose cycle covers biject with the objects being summed, read it off as a
matrix, and return a simple projection of the matching permanent.
``permanent_image`` expands such projected permanents sparsely, without ever
materializing perm_M itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import (DegreeBoundExceededError, RingMismatchError,
                     SearchSpaceExceededError)
from .polynomial import Poly, make, matrix_vars, zero
from .semiring import Semiring, warn_tropical_nonneg


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class ProjectionMap:
    """Per-variable substitution: each source variable goes to a target
    variable or a constant of the semiring."""

    semiring: Semiring
    source_vars: Tuple[str, ...]
    target_vars: Tuple[str, ...]
    assign: Tuple[object, ...]  # Var | Const, aligned with source_vars

    def __post_init__(self):
        if len(self.assign) != len(self.source_vars):
            raise RingMismatchError("one assignment per source variable required")
        for a in self.assign:
            if isinstance(a, Var):
                if a.name not in self.target_vars:
                    raise RingMismatchError(f"unknown target variable {a.name!r}")
            elif isinstance(a, Const):
                self.semiring.check(a.value)
            else:
                raise RingMismatchError(f"bad assignment {a!r}")

    def is_monotone(self) -> bool:
        return all(self.semiring.is_nonneg(a.value)
                   for a in self.assign if isinstance(a, Const))

    def kernel(self) -> Tuple[str, ...]:
        """Source variables mapped to the additive identity."""
        return tuple(v for v, a in zip(self.source_vars, self.assign)
                     if isinstance(a, Const) and self.semiring.is_zero(a.value))

    def to_jsonable(self) -> dict:
        assign = []
        for a in self.assign:
            if isinstance(a, Var):
                assign.append({"var": a.name})
            else:
                assign.append({"const": self.semiring.format(a.value)})
        return {
            "semiring": self.semiring.tag,
            "source_vars": list(self.source_vars),
            "target_vars": list(self.target_vars),
            "assign": assign,
        }

    @staticmethod
    def from_jsonable(obj: dict) -> "ProjectionMap":
        from .semiring import by_tag
        sr = by_tag(obj["semiring"])
        assign = []
        for a in obj["assign"]:
            if "var" in a:
                assign.append(Var(a["var"]))
            else:
                assign.append(Const(sr.parse(a["const"])))
        return ProjectionMap(sr, tuple(obj["source_vars"]),
                             tuple(obj["target_vars"]), tuple(assign))


def apply_simple(pi: ProjectionMap, g: Poly) -> Poly:
    if g.variables != pi.source_vars or g.semiring.tag != pi.semiring.tag:
        raise RingMismatchError("projection source ring does not match g")
    sr = pi.semiring
    tindex = {v: i for i, v in enumerate(pi.target_vars)}
    n = len(pi.target_vars)
    out = []
    for exps, coeff in g.terms:
        c = coeff
        texps = [0] * n
        dead = False
        for j, e in enumerate(exps):
            if not e:
                continue
            a = pi.assign[j]
            if isinstance(a, Var):
                texps[tindex[a.name]] += e
            else:
                if sr.is_zero(a.value):
                    dead = True
                    break
                c = sr.mul(c, sr.pow(a.value, e))
        if not dead:
            out.append((c, texps))
    return make(sr, pi.target_vars, out)


# ---------------------------------------------------------------------------
# Affine projections

@dataclass(frozen=True)
class AffineProjectionMap:
    """Each source variable maps to an affine form a_0 + sum a_k x_k."""

    semiring: Semiring
    source_vars: Tuple[str, ...]
    target_vars: Tuple[str, ...]
    forms: Tuple[Tuple[object, Tuple[object, ...]], ...]  # (a0, (a_1..a_n))

    def __post_init__(self):
        if len(self.forms) != len(self.source_vars):
            raise RingMismatchError("one affine form per source variable required")
        for a0, coeffs in self.forms:
            self.semiring.check(a0)
            if len(coeffs) != len(self.target_vars):
                raise RingMismatchError("affine form arity mismatch")
            for a in coeffs:
                self.semiring.check(a)

    def is_monotone(self) -> bool:
        sr = self.semiring
        return all(sr.is_nonneg(a0) and all(sr.is_nonneg(a) for a in coeffs)
                   for a0, coeffs in self.forms)

    def to_jsonable(self) -> dict:
        sr = self.semiring
        return {
            "semiring": sr.tag,
            "source_vars": list(self.source_vars),
            "target_vars": list(self.target_vars),
            "forms": [{"const": sr.format(a0), "coeffs": [sr.format(a) for a in coeffs]}
                      for a0, coeffs in self.forms],
        }

    @staticmethod
    def from_jsonable(obj: dict) -> "AffineProjectionMap":
        from .semiring import by_tag
        sr = by_tag(obj["semiring"])
        forms = tuple((sr.parse(f["const"]), tuple(sr.parse(a) for a in f["coeffs"]))
                      for f in obj["forms"])
        return AffineProjectionMap(sr, tuple(obj["source_vars"]),
                                   tuple(obj["target_vars"]), forms)


def _tmap_add(sr, acc: dict, exps, coeff):
    if exps in acc:
        acc[exps] = sr.add(acc[exps], coeff)
    else:
        acc[exps] = coeff


def _tmap_mul(sr, a: dict, b: dict, n: int) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            _tmap_add(sr, out, e, sr.mul(ca, cb))
    return out


def apply_affine(pi: AffineProjectionMap, g: Poly) -> Poly:
    if g.variables != pi.source_vars or g.semiring.tag != pi.semiring.tag:
        raise RingMismatchError("projection source ring does not match g")
    sr = pi.semiring
    n = len(pi.target_vars)
    unit = tuple([0] * n)

    form_maps = []
    for a0, coeffs in pi.forms:
        fm: dict = {}
        if not sr.is_zero(a0):
            fm[unit] = a0
        for k, a in enumerate(coeffs):
            if not sr.is_zero(a):
                e = [0] * n
                e[k] = 1
                _tmap_add(sr, fm, tuple(e), a)
        form_maps.append(fm)

    acc: dict = {}
    for exps, coeff in g.terms:
        prod = {unit: coeff}
        for j, e in enumerate(exps):
            for _ in range(e):
                prod = _tmap_mul(sr, prod, form_maps[j], n)
                if not prod:
                    break
            if not prod:
                break
        for e, c in prod.items():
            _tmap_add(sr, acc, e, c)
    return make(sr, pi.target_vars, [(c, e) for e, c in acc.items()])


# ---------------------------------------------------------------------------
# Monomial projections

@dataclass(frozen=True)
class MonomialProjectionMap:
    """Each source variable maps to coeff * monomial in the target variables."""

    semiring: Semiring
    source_vars: Tuple[str, ...]
    target_vars: Tuple[str, ...]
    assign: Tuple[Tuple[object, Tuple[int, ...]], ...]  # (coeff, exps)

    def __post_init__(self):
        if len(self.assign) != len(self.source_vars):
            raise RingMismatchError("one monomial per source variable required")
        for c, exps in self.assign:
            self.semiring.check(c)
            if len(exps) != len(self.target_vars):
                raise RingMismatchError("monomial arity mismatch")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent in monomial projection")

    def is_monotone(self) -> bool:
        return all(self.semiring.is_nonneg(c) for c, _ in self.assign)

    def to_jsonable(self) -> dict:
        sr = self.semiring
        return {
            "semiring": sr.tag,
            "source_vars": list(self.source_vars),
            "target_vars": list(self.target_vars),
            "assign": [{"coeff": sr.format(c), "exps": list(e)} for c, e in self.assign],
        }

    @staticmethod
    def from_jsonable(obj: dict) -> "MonomialProjectionMap":
        from .semiring import by_tag
        sr = by_tag(obj["semiring"])
        assign = tuple((sr.parse(a["coeff"]), tuple(a["exps"])) for a in obj["assign"])
        return MonomialProjectionMap(sr, tuple(obj["source_vars"]),
                                     tuple(obj["target_vars"]), assign)


def apply_monomial(pi: MonomialProjectionMap, g: Poly) -> Poly:
    if g.variables != pi.source_vars or g.semiring.tag != pi.semiring.tag:
        raise RingMismatchError("projection source ring does not match g")
    sr = pi.semiring
    n = len(pi.target_vars)
    out = []
    for exps, coeff in g.terms:
        c = coeff
        texps = [0] * n
        dead = False
        for j, e in enumerate(exps):
            if not e:
                continue
            mc, mexps = pi.assign[j]
            if sr.is_zero(mc):
                dead = True
                break
            c = sr.mul(c, sr.pow(mc, e))
            for k, me in enumerate(mexps):
                texps[k] += e * me
        if not dead:
            out.append((c, texps))
    return make(sr, pi.target_vars, out)


# ---------------------------------------------------------------------------
# Sparse projected-permanent expansion

def matrix_projection(entries: dict, m: int, target_vars: Sequence[str],
                      semiring: Semiring) -> ProjectionMap:
    """Simple projection of perm_m given by a sparse {(i, j): Var|Const}
    entry map (0-based); missing entries become the constant zero."""
    assign = []
    for i in range(m):
        for j in range(m):
            assign.append(entries.get((i, j), Const(semiring.zero)))
    return ProjectionMap(semiring, tuple(matrix_vars(m)), tuple(target_vars),
                         tuple(assign))


def permanent_image(pi: ProjectionMap, m: int) -> Poly:
    """apply_simple(pi, perm_m), computed by sparse cycle-cover expansion.

    Equivalent to projecting the fully expanded permanent, but only walks the
    permutations whose entries are all nonzero under pi.
    """
    sr = pi.semiring
    if pi.source_vars != tuple(matrix_vars(m)):
        raise RingMismatchError("projection source is not the m x m permanent ring")
    tindex = {v: i for i, v in enumerate(pi.target_vars)}
    n = len(pi.target_vars)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            a = pi.assign[i * m + j]
            if isinstance(a, Const) and sr.is_zero(a.value):
                continue
            row.append((j, a))
        rows.append(row)
    # visit sparse rows first to prune early
    order = sorted(range(m), key=lambda i: len(rows[i]))
    acc: dict = {}
    used = [False] * m

    def rec(depth, coeff, texps):
        if depth == m:
            _tmap_add(sr, acc, tuple(texps), coeff)
            return
        i = order[depth]
        for j, a in rows[i]:
            if used[j]:
                continue
            used[j] = True
            if isinstance(a, Var):
                k = tindex[a.name]
                texps[k] += 1
                rec(depth + 1, coeff, texps)
                texps[k] -= 1
            else:
                rec(depth + 1, sr.mul(coeff, a.value), texps)
            used[j] = False

    rec(0, sr.one, [0] * n)
    return make(sr, pi.target_vars, [(c, e) for e, c in acc.items()])


# ---------------------------------------------------------------------------
# Affine -> simple gadget

def affine_to_simple(pi: AffineProjectionMap, m: int) -> Tuple[int, ProjectionMap]:
    """Compile an affine projection of perm_m into a simple projection of
    perm_M: every edge (i, j) splits into one two-edge branch per nonzero
    affine coefficient, with a weight-1 self-loop on each branch midpoint so
    unused branches stay coverable."""
    if pi.source_vars != tuple(matrix_vars(m)):
        raise RingMismatchError("affine projection source is not the m x m permanent ring")
    sr = pi.semiring
    entries: dict = {}
    next_vertex = m
    for i in range(m):
        for j in range(m):
            a0, coeffs = pi.forms[i * m + j]
            branches = []
            if not sr.is_zero(a0):
                branches.append((Const(sr.one), Const(a0)))
            for k, a in enumerate(coeffs):
                if not sr.is_zero(a):
                    branches.append((Const(a), Var(pi.target_vars[k])))
            for w_in, w_out in branches:
                w = next_vertex
                next_vertex += 1
                entries[(i, w)] = w_in
                entries[(w, j)] = w_out
                entries[(w, w)] = Const(sr.one)
    big_m = next_vertex
    sigma = matrix_projection(entries, big_m, pi.target_vars, sr)
    return big_m, sigma


# ---------------------------------------------------------------------------
# Monotone formulas and the universality compiler

@dataclass(frozen=True)
class FLeaf:
    """Formula leaf: a target variable name or a constant value."""
    var: Optional[str] = None
    const: Optional[object] = None


@dataclass(frozen=True)
class FNode:
    op: str  # "add" | "mul"
    left: object
    right: object


@dataclass(frozen=True)
class MonotoneFormula:
    semiring: Semiring
    target_vars: Tuple[str, ...]
    root: object  # FLeaf | FNode

    def __post_init__(self):
        for leaf in self.leaves():
            if leaf.var is not None:
                if leaf.var not in self.target_vars:
                    raise RingMismatchError(f"unknown formula variable {leaf.var!r}")
            else:
                if not self.semiring.is_nonneg(self.semiring.check(leaf.const)):
                    from .semiring import TROPICAL
                    if self.semiring.tag == TROPICAL.tag:
                        warn_tropical_nonneg("monotone formula constant")
                    else:
                        raise ValueError("non-monotone leaf constant")

    def leaves(self):
        out = []

        def rec(node):
            if isinstance(node, FLeaf):
                out.append(node)
            else:
                rec(node.left)
                rec(node.right)

        rec(self.root)
        return out

    def size(self) -> int:
        """Formula size := number of leaves."""
        return len(self.leaves())

    def evaluate(self, point):
        sr = self.semiring

        def rec(node):
            if isinstance(node, FLeaf):
                if node.var is not None:
                    return sr.check(point[node.var])
                return sr.check(node.const)
            l, r = rec(node.left), rec(node.right)
            return sr.add(l, r) if node.op == "add" else sr.mul(l, r)

        return rec(self.root)

    def expand(self) -> Poly:
        """The polynomial computed by the formula (internal expansion)."""
        sr = self.semiring
        n = len(self.target_vars)
        tindex = {v: i for i, v in enumerate(self.target_vars)}
        unit = tuple([0] * n)

        def rec(node) -> dict:
            if isinstance(node, FLeaf):
                if node.var is not None:
                    e = [0] * n
                    e[tindex[node.var]] = 1
                    return {tuple(e): sr.one}
                c = sr.check(node.const)
                return {} if sr.is_zero(c) else {unit: c}
            l, r = rec(node.left), rec(node.right)
            if node.op == "add":
                out = dict(l)
                for e, c in r.items():
                    _tmap_add(sr, out, e, c)
                return out
            return _tmap_mul(sr, l, r, n)

        acc = rec(self.root)
        return make(sr, self.target_vars, [(c, e) for e, c in acc.items()])

    def to_jsonable(self) -> dict:
        sr = self.semiring

        def rec(node):
            if isinstance(node, FLeaf):
                if node.var is not None:
                    return {"var": node.var}
                return {"const": sr.format(node.const)}
            return {"op": node.op, "left": rec(node.left), "right": rec(node.right)}

        return {"semiring": sr.tag, "target_vars": list(self.target_vars),
                "root": rec(self.root)}

    @staticmethod
    def from_jsonable(obj: dict) -> "MonotoneFormula":
        from .semiring import by_tag
        sr = by_tag(obj["semiring"])

        def rec(node):
            if "var" in node:
                return FLeaf(var=node["var"])
            if "const" in node:
                return FLeaf(const=sr.parse(node["const"]))
            return FNode(node["op"], rec(node["left"]), rec(node["right"]))

        return MonotoneFormula(sr, tuple(obj["target_vars"]), rec(obj["root"]))


class _SPGraph:
    """Two-terminal series-parallel digraph with at most one direct
    source->sink edge (duplicates are subdivided to keep the matrix encoding
    single-valued)."""

    def __init__(self, edges, source, sink, nv):
        self.edges = edges  # list of (u, v, label)
        self.source = source
        self.sink = sink
        self.nv = nv


def _sp_leaf(label) -> _SPGraph:
    return _SPGraph([(0, 1, label)], 0, 1, 2)


def _sp_shift(g: _SPGraph, offset: int, remap: dict) -> list:
    out = []
    for u, v, lbl in g.edges:
        out.append((remap.get(u, u + offset), remap.get(v, v + offset), lbl))
    return out


def _sp_series(a: _SPGraph, b: _SPGraph) -> _SPGraph:
    fresh = {}
    nxt = a.nv

    def mp(x):
        nonlocal nxt
        if x == b.source:
            return a.sink
        if x not in fresh:
            fresh[x] = nxt
            nxt += 1
        return fresh[x]

    edges = list(a.edges)
    for u, v, lbl in b.edges:
        edges.append((mp(u), mp(v), lbl))
    return _SPGraph(edges, a.source, mp(b.sink), nxt)


def _sp_parallel(a: _SPGraph, b: _SPGraph, one) -> _SPGraph:
    fresh = {}
    nxt = a.nv

    def mp(x):
        nonlocal nxt
        if x == b.source:
            return a.source
        if x == b.sink:
            return a.sink
        if x not in fresh:
            fresh[x] = nxt
            nxt += 1
        return fresh[x]

    edges = list(a.edges)
    for u, v, lbl in b.edges:
        edges.append((mp(u), mp(v), lbl))
    # subdivide duplicate direct source->sink edges
    seen_direct = False
    out = []
    for u, v, lbl in edges:
        if u == a.source and v == a.sink:
            if seen_direct:
                w = nxt
                nxt += 1
                out.append((u, w, lbl))
                out.append((w, v, Const(one)))
                continue
            seen_direct = True
        out.append((u, v, lbl))
    g = _SPGraph(out, a.source, a.sink, nxt)
    pairs = [(u, v) for u, v, _ in out]
    assert len(pairs) == len(set(pairs)), "unexpected duplicate edge"
    return g


def formula_to_perm_projection(f: MonotoneFormula) -> Tuple[int, ProjectionMap]:
    """Compile a monotone formula of size s (leaf count) into a monotone
    simple projection of perm_M with M <= s + 1.

    The formula becomes a series-parallel two-terminal digraph whose
    source-to-sink paths enumerate the formula's monomial products; a weight-1
    return edge and self-loops on every vertex except the source make cycle
    covers biject with those paths.
    """
    sr = f.semiring

    def build(node) -> _SPGraph:
        if isinstance(node, FLeaf):
            if node.var is not None:
                return _sp_leaf(Var(node.var))
            return _sp_leaf(Const(sr.check(node.const)))
        l, r = build(node.left), build(node.right)
        if node.op == "mul":
            return _sp_series(l, r)
        return _sp_parallel(l, r, sr.one)

    g = build(f.root)
    m = g.nv
    assert m <= f.size() + 1
    entries: dict = {}
    for u, v, lbl in g.edges:
        entries[(u, v)] = lbl
    entries[(g.sink, g.source)] = Const(sr.one)
    for v in range(m):
        if v != g.source:
            entries[(v, v)] = Const(sr.one)
    sigma = matrix_projection(entries, m, f.target_vars, sr)
    return m, sigma


# ---------------------------------------------------------------------------
# Monomial -> simple compiler

def monomial_to_simple(pi: MonomialProjectionMap, m: int,
                       degree_bound: int = 24) -> Tuple[int, ProjectionMap]:
    """Compile a monomial projection of perm_m into a simple projection:
    an edge carrying c * prod y_k^{e_k} becomes a path whose edges hold the
    individual factors, with weight-1 self-loops on the path midpoints."""
    if pi.source_vars != tuple(matrix_vars(m)):
        raise RingMismatchError("monomial projection source is not the m x m permanent ring")
    sr = pi.semiring
    entries: dict = {}
    nxt = m
    for i in range(m):
        for j in range(m):
            c, exps = pi.assign[i * m + j]
            if sr.is_zero(c):
                continue  # edge deleted
            deg = sum(exps)
            if deg > degree_bound:
                raise DegreeBoundExceededError(
                    f"monomial degree {deg} exceeds bound {degree_bound}")
            factors = []
            for k, e in enumerate(exps):
                factors.extend([Var(pi.target_vars[k])] * e)
            if deg == 0:
                entries[(i, j)] = Const(c)
                continue
            path = [i]
            for _ in range(deg):
                path.append(nxt)
                nxt += 1
            entries[(path[0], path[1])] = Const(c)
            for t, lbl in enumerate(factors[:-1]):
                entries[(path[t + 1], path[t + 2])] = lbl
            entries[(path[-1], j)] = factors[-1]
            for w in path[1:]:
                entries[(w, w)] = Const(sr.one)
    big_m = nxt
    sigma = matrix_projection(entries, big_m, pi.target_vars, sr)
    return big_m, sigma


# ---------------------------------------------------------------------------
# Exhaustive search for monotone simple projections of perm_m

def search_monotone_projection(f: Poly, m: int, max_m: int = 4
                               ) -> Optional[ProjectionMap]:
    """Depth-first search for a monotone simple projection sigma of perm_m
    with apply_simple(sigma, perm_m) == f; constants restricted to {0, 1}.

    Deterministic: candidate values per entry are ordered Const(0), Const(1),
    then target variables, and rows of the assignment matrix are forced into
    lexicographically sorted order (row/column symmetry of the source
    permanent).  Returns the first witness found, or None on exhaustion.
    """
    if f.semiring.tag not in ("real", "bool"):
        raise RingMismatchError("search supports the real and Boolean instances")
    if m > max_m:
        raise SearchSpaceExceededError(f"m={m} exceeds configured bound {max_m}")
    sr = f.semiring
    if f.is_zero:
        raise ValueError("target polynomial must be nonzero")
    n = len(f.variables)
    support = list(f.support())
    coeffs = {e: c for e, c in f.terms}
    values = [Const(sr.zero), Const(sr.one)] + [Var(v) for v in f.variables]

    perms = list(itertools.permutations(range(m)))
    # term t uses entries {(i, perm[i])}
    term_entries = [[(i, p[i]) for i in range(m)] for p in perms]
    entry_terms = [[] for _ in range(m * m)]
    for t, ents in enumerate(term_entries):
        for i, j in ents:
            entry_terms[i * m + j].append(t)

    assign: list = [None] * (m * m)
    result: list = []
    vindex = {v: i for i, v in enumerate(f.variables)}

    def term_state(t):
        """(dead, partial exps, remaining unassigned entries) for term t."""
        texps = [0] * n
        remaining = 0
        for i, j in term_entries[t]:
            a = assign[i * m + j]
            if a is None:
                remaining += 1
            elif isinstance(a, Var):
                texps[vindex[a.name]] += 1
            elif sr.is_zero(a.value):
                return True, None, 0
        return False, texps, remaining

    def prune() -> bool:
        full = {}
        states = []
        for t in range(len(perms)):
            dead, texps, remaining = term_state(t)
            states.append((dead, texps, remaining))
            if not dead and remaining == 0:
                key = tuple(texps)
                if key not in coeffs:
                    return True  # fully mapped term lands off-support
                full[key] = full.get(key, 0) + 1
                if sr.tag == "real" and Fraction(full[key]) > coeffs[key]:
                    return True  # coefficient overshoot cannot cancel
        for s in support:
            reachable = False
            for dead, texps, remaining in states:
                if dead:
                    continue
                if all(a <= b for a, b in zip(texps, s)) and \
                        sum(s) - sum(texps) <= remaining:
                    reachable = True
                    break
            if not reachable:
                return True
        return False

    def row_key(i):
        return tuple(values.index(assign[i * m + j]) for j in range(m))

    def rec(pos) -> bool:
        if pos == m * m:
            pi = ProjectionMap(sr, tuple(matrix_vars(m)), f.variables, tuple(assign))
            if permanent_image(pi, m) == f:
                result.append(pi)
                return True
            return False
        for val in values:
            assign[pos] = val
            if pos % m == m - 1:
                i = pos // m
                if i > 0 and row_key(i) < row_key(i - 1):
                    assign[pos] = None
                    continue
            if not prune():
                if rec(pos + 1):
                    return True
        assign[pos] = None
        return False

    if not rec(0):
        return None
    # witnesses are self-checked via permanent_image before being returned
    return result[0]
