"""Formal multivariate polynomials over a semiring instance, plus generators
for the permanent, Hamiltonian cycle, perfect matching, cut, satisfiability,
clow, and clique families.

A polynomial is an immutable sorted tuple of (exponent vector, coefficient)
terms; duplicate exponent vectors are merged with the semiring's addition at
construction time and zero coefficients are dropped.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple

from .errors import RingMismatchError
from .semiring import REAL, Semiring, by_tag


@dataclass(frozen=True)
class Poly:
    semiring: Semiring = field(compare=False)
    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Tuple[int, ...], object], ...]

    def __post_init__(self):
        object.__setattr__(self, "_tag", self.semiring.tag)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return (
            self.semiring.tag == other.semiring.tag
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.semiring.tag, self.variables, self.terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def num_terms(self) -> int:
        return len(self.terms)

    def support(self):
        """Exponent vectors of all stored terms."""
        return tuple(e for e, _ in self.terms)

    def coeff(self, exps):
        exps = tuple(exps)
        for e, c in self.terms:
            if e == exps:
                return c
        return self.semiring.zero

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def is_monotone(self) -> bool:
        return all(self.semiring.is_nonneg(c) for _, c in self.terms)

    def evaluate(self, point: Mapping[str, object]):
        sr = self.semiring
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise RingMismatchError(f"missing variable assignment(s): {missing}")
        vals = [sr.check(point[v]) for v in self.variables]
        acc = sr.zero
        for exps, coeff in self.terms:
            t = coeff
            for i, e in enumerate(exps):
                if e:
                    t = sr.mul(t, sr.pow(vals[i], e))
            acc = sr.add(acc, t)
        return acc

    def homogeneous_component(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("degree must be >= 0")
        return Poly(self.semiring, self.variables,
                    tuple((e, c) for e, c in self.terms if sum(e) == k))

    def to_jsonable(self) -> dict:
        return {
            "semiring": self.semiring.tag,
            "vars": list(self.variables),
            "terms": [{"coeff": self.semiring.format(c), "exps": list(e)} for e, c in self.terms],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), indent=2)

    @staticmethod
    def from_jsonable(obj: dict) -> "Poly":
        sr = by_tag(obj["semiring"])
        variables = list(obj["vars"])
        terms = [(sr.parse(t["coeff"]), t["exps"]) for t in obj["terms"]]
        return make(sr, variables, terms)

    @staticmethod
    def from_json(s: str) -> "Poly":
        return Poly.from_jsonable(json.loads(s))


def make(semiring: Semiring, variables: Sequence[str],
         terms: Iterable[Tuple[object, Sequence[int]]]) -> Poly:
    """Build a polynomial from (coeff, exps) pairs, merging duplicates with
    the semiring addition and dropping zero coefficients."""
    variables = tuple(variables)
    if len(set(variables)) != len(variables):
        raise RingMismatchError("duplicate variable names")
    n = len(variables)
    merged: dict = {}
    for coeff, exps in terms:
        exps = tuple(int(e) for e in exps)
        if len(exps) != n:
            raise RingMismatchError(
                f"exponent vector of length {len(exps)} in a ring of {n} variables")
        if any(e < 0 for e in exps):
            raise ValueError("negative exponent")
        coeff = semiring.check(coeff)
        if exps in merged:
            merged[exps] = semiring.add(merged[exps], coeff)
        else:
            merged[exps] = coeff
    out = tuple(sorted((e, c) for e, c in merged.items() if not semiring.is_zero(c)))
    return Poly(semiring, variables, out)


def zero(semiring: Semiring, variables: Sequence[str]) -> Poly:
    return make(semiring, variables, [])


def _check_same_ring(p: Poly, q: Poly):
    if p.semiring.tag != q.semiring.tag or p.variables != q.variables:
        raise RingMismatchError("polynomials live in different rings")


def equals(p: Poly, q: Poly) -> bool:
    _check_same_ring(p, q)
    return p == q


# ---------------------------------------------------------------------------
# Variable naming conventions (fixed for reproducible serialization)

def matrix_vars(n: int):
    return [f"x_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]


def pair_vars(n: int):
    """Undirected: x_i_j for 1 <= i < j <= n."""
    return [f"x_{i}_{j}" for i, j in itertools.combinations(range(1, n + 1), 2)]


def ordered_pair_vars(n: int):
    """Directed without loops: x_i_j for i != j, lexicographic."""
    return [f"x_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def clauses_3cnf(n: int):
    """All 8*C(n,3) clauses on 3 literals, as (vars, signs) with sign bit 1
    meaning negated; ordered lexicographically over (i, j, k, s1, s2, s3)."""
    out = []
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        for signs in itertools.product((0, 1), repeat=3):
            out.append(((i, j, k), signs))
    return out


def clause_id(clause) -> str:
    (i, j, k), (s1, s2, s3) = clause
    return f"{i}_{j}_{k}_{s1}{s2}{s3}"


# ---------------------------------------------------------------------------
# Family generators

def gen_permanent(n: int, semiring: Semiring = REAL) -> Poly:
    """perm_n: one multilinear degree-n term per permutation of [n]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    variables = matrix_vars(n)
    terms = []
    for perm in itertools.permutations(range(n)):
        exps = [0] * (n * n)
        for i, j in enumerate(perm):
            exps[i * n + j] = 1
        terms.append((semiring.one, exps))
    return make(semiring, variables, terms)


def gen_hc(n: int, semiring: Semiring = REAL) -> Poly:
    """Hamiltonian cycle polynomial: the sum over full-cycle permutations."""
    if n < 1:
        raise ValueError("n must be >= 1")
    variables = matrix_vars(n)
    terms = []
    for perm in itertools.permutations(range(n)):
        # keep only n-cycles
        seen = 1
        j = perm[0]
        while j != 0:
            seen += 1
            j = perm[j]
        if seen != n:
            continue
        exps = [0] * (n * n)
        for i, j in enumerate(perm):
            exps[i * n + j] = 1
        terms.append((semiring.one, exps))
    return make(semiring, variables, terms)


def perfect_matchings(num_vertices: int):
    """All perfect matchings of K_{num_vertices} as sorted edge tuples."""
    verts = list(range(1, num_vertices + 1))

    def rec(vs):
        if not vs:
            yield ()
            return
        a = vs[0]
        for idx in range(1, len(vs)):
            b = vs[idx]
            rest = vs[1:idx] + vs[idx + 1:]
            for m in rec(rest):
                yield ((a, b),) + m

    if num_vertices % 2:
        return
    yield from rec(verts)


def gen_matching(n: int, semiring: Semiring = REAL) -> Poly:
    """Perfect matching polynomial of K_{2n} (the unsigned Pfaffian)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    variables = pair_vars(2 * n)
    index = {v: i for i, v in enumerate(variables)}
    terms = []
    for m in perfect_matchings(2 * n):
        exps = [0] * len(variables)
        for i, j in m:
            exps[index[f"x_{i}_{j}"]] = 1
        terms.append((semiring.one, exps))
    return make(semiring, variables, terms)


def gen_cut(n: int, q: int, semiring: Semiring = REAL) -> Poly:
    """Cut polynomial: one monomial per vertex subset A, with ordered crossing
    pairs raised to the q-1 power; coinciding monomials merge."""
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    variables = ordered_pair_vars(n)
    index = {v: i for i, v in enumerate(variables)}
    terms = []
    for bits in itertools.product((0, 1), repeat=n):
        a = {i + 1 for i in range(n) if bits[i]}
        exps = [0] * len(variables)
        for i in a:
            for j in range(1, n + 1):
                if j not in a:
                    exps[index[f"x_{i}_{j}"]] = q - 1
        terms.append((semiring.one, exps))
    return make(semiring, variables, terms)


def gen_sat(n: int, q: int, semiring: Semiring = REAL) -> Poly:
    """Satisfiability polynomial on n variables and all 3-literal clauses."""
    if n < 3 or q < 2:
        raise ValueError("need n >= 3 and q >= 2")
    clauses = clauses_3cnf(n)
    variables = [f"X_{i}" for i in range(1, n + 1)] + [f"Y_c_{clause_id(c)}" for c in clauses]
    terms = []
    for a in itertools.product((0, 1), repeat=n):
        exps = [q - 1] * n + [0] * len(clauses)
        for ci, ((i, j, k), signs) in enumerate(clauses):
            sat = any(a[v - 1] != s for v, s in zip((i, j, k), signs))
            if sat:
                exps[n + ci] = q - 1
        terms.append((semiring.one, exps))
    return make(semiring, variables, terms)


def clows(n: int):
    """Closed walks of length n in K_n whose minimum vertex appears once,
    as vertex sequences [v0, ..., v_{n-1}] with v0 the minimum."""
    if n < 2:
        return
    for v0 in range(1, n + 1):
        pool = list(range(v0 + 1, n + 1))
        if not pool and n > 1:
            continue

        def rec(seq):
            if len(seq) == n:
                if seq[-1] != seq[0]:
                    yield tuple(seq)
                return
            for v in pool:
                if v != seq[-1]:
                    yield from rec(seq + [v])

        yield from rec([v0])


def gen_clow(n: int, q: int, semiring: Semiring = REAL) -> Poly:
    """Clow polynomial: undirected walk-edge variables with multiplicity and
    vertex variables over the distinct vertices of the walk."""
    if n < 1 or q < 2:
        raise ValueError("need n >= 1 and q >= 2")
    edge_vars = [f"X_e_{i}_{j}" for i, j in itertools.combinations(range(1, n + 1), 2)]
    vert_vars = [f"Y_{v}" for v in range(1, n + 1)]
    variables = edge_vars + vert_vars
    index = {v: i for i, v in enumerate(variables)}
    terms = []
    for w in clows(n):
        # walk edges with multiplicity: (v_i, v_{i+1}) cyclically
        exps = [0] * len(variables)
        for i in range(n):
            a, b = w[i], w[(i + 1) % n]
            lo, hi = min(a, b), max(a, b)
            exps[index[f"X_e_{lo}_{hi}"]] += q - 1
        for v in set(w):
            exps[index[f"Y_{v}"]] = q - 1
        terms.append((semiring.one, exps))
    return make(semiring, variables, terms)


def gen_clique(n: int, semiring: Semiring = REAL) -> Poly:
    """Clique polynomial: one monomial per edge set forming a clique of K_n,
    including the empty set (constant term)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    variables = [f"X_e_{i}_{j}" for i, j in itertools.combinations(range(1, n + 1), 2)]
    index = {v: i for i, v in enumerate(variables)}
    terms = [(semiring.one, [0] * len(variables))]  # T = empty set
    for size in range(2, n + 1):
        for vs in itertools.combinations(range(1, n + 1), size):
            exps = [0] * len(variables)
            for i, j in itertools.combinations(vs, 2):
                exps[index[f"X_e_{i}_{j}"]] = 1
            terms.append((semiring.one, exps))
    return make(semiring, variables, terms)


FAMILIES = {
    "perm": lambda n, q, sr: gen_permanent(n, sr),
    "hc": lambda n, q, sr: gen_hc(n, sr),
    "matching": lambda n, q, sr: gen_matching(n, sr),
    "cut": lambda n, q, sr: gen_cut(n, q, sr),
    "sat": lambda n, q, sr: gen_sat(n, q, sr),
    "clow": lambda n, q, sr: gen_clow(n, q, sr),
    "clique": lambda n, q, sr: gen_clique(n, sr),
}


def gen_family(family: str, n: int, q: int | None = None, semiring: Semiring = REAL) -> Poly:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if family in ("cut", "sat", "clow") and q is None:
        raise ValueError(f"family {family!r} requires q >= 2")
    return FAMILIES[family](n, q, semiring)
