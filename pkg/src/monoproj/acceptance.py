"""Acceptance scenarios: every small-instance consequence the package must
verify, each as an independent callable that raises AssertionError on
failure.  The CLI replays them with timings; the test suite runs them
one by one.
"""

from __future__ import annotations

import random
import time
import warnings
from fractions import Fraction

from . import polytope as pt
from .newton_lemma import converse_construct, main_lemma_extract, newton_polytope
from .polynomial import (Poly, gen_cut, gen_hc, gen_matching, gen_permanent,
                         matrix_vars)
from .projection import (AffineProjectionMap, Const, FLeaf, FNode,
                         MonotoneFormula, ProjectionMap, Var, affine_to_simple,
                         apply_affine, apply_simple, formula_to_perm_projection,
                         permanent_image, search_monotone_projection)
from .semiring import BOOL, REAL, TROPICAL
from .xc import rectangle_cover_lb, slack_matrix, xc_bounds


def criterion_newton_identifications():
    """Newton polytopes of the generated families equal the named polytopes."""
    for m in range(1, 6):
        assert newton_polytope(gen_permanent(m)) == pt.gen_cycle_cover_polytope(m), m
    for n in range(1, 6):
        assert newton_polytope(gen_hc(n)) == pt.gen_tsp_polytope(n), n
    for n in range(1, 4):
        assert newton_polytope(gen_matching(n)) == pt.gen_pm_polytope(n), n
    for n in range(1, 5):
        for q in (2, 3):
            assert newton_polytope(gen_cut(n, q)) == pt.gen_cut_polytope(n, q), (n, q)


def criterion_birkhoff_facets():
    """c(New(perm_m)) = m^2 nonnegativity facets plus row/column equalities."""
    from . import linalg
    for m in (3, 4):
        p = pt.gen_cycle_cover_polytope(m)
        h = pt.facet_enumeration(p)
        assert h.c == m * m, (m, h.c)
        assert len(h.eqs) == 2 * m - 1, (m, len(h.eqs))
        # the equality space is spanned by the row/column-sum constraints
        sums = []
        for i in range(m):
            sums.append([int(k // m == i) for k in range(m * m)])
            sums.append([int(k % m == i) for k in range(m * m)])
        eq_rows = [list(a) for a, _ in h.eqs]
        assert linalg.rank(eq_rows) == 2 * m - 1
        assert linalg.rank(eq_rows + sums) == 2 * m - 1
        # modulo those equalities, the facets are the m^2 entry nonnegativity
        # constraints: their tight vertex sets match entry zero patterns
        tight = {frozenset(j for j, v in enumerate(p.vertices)
                           if sum(x * y for x, y in zip(a, v)) == b)
                 for a, b in h.ineqs}
        entry_zero = {frozenset(j for j, v in enumerate(p.vertices) if v[k] == 0)
                      for k in range(m * m)}
        assert tight == entry_zero, m


def _random_monotone_projection(rng, m, semiring, num_targets):
    targets = tuple(f"t_{k}" for k in range(1, num_targets + 1))
    assign = []
    for _ in range(m * m):
        r = rng.random()
        if r < 0.25:
            assign.append(Const(semiring.zero))
        elif r < 0.40:
            assign.append(Const(semiring.one))
        else:
            assign.append(Var(rng.choice(targets)))
    return ProjectionMap(semiring, tuple(matrix_vars(m)), targets, tuple(assign))


def criterion_main_lemma_suite(cases: int = 300):
    """Random monotone simple projections of perm_3/perm_4 always yield a
    face-extension certificate with an exact image equality."""
    rng = random.Random(20240317)
    done = 0
    while done < cases:
        m = 3 if done % 2 == 0 else 4
        sr = REAL if done % 4 < 2 else BOOL
        g = gen_permanent(m, sr)
        pi = _random_monotone_projection(rng, m, sr, rng.randint(2, 5))
        if apply_simple(pi, g).is_zero:
            continue
        cert = main_lemma_extract(pi, g)
        assert cert.image_ok, (m, sr.tag, pi.to_jsonable())
        assert cert.c_of_source == m * m
        done += 1


def criterion_cut_scaling():
    """New(Cut^3) is the 2-scaled New(Cut^2) and xc bounds are unaffected."""
    for n in range(1, 5):
        p2 = pt.gen_cut_polytope(n, 2)
        p3 = pt.gen_cut_polytope(n, 3)
        assert pt.scale(p2, 2) == p3, n
        assert xc_bounds(p2) == xc_bounds(p3), n


def _random_formula(rng, leaves, variables):
    if leaves == 1:
        r = rng.random()
        if r < 0.15:
            return FLeaf(const=Fraction(0))
        if r < 0.3:
            return FLeaf(const=Fraction(1))
        return FLeaf(var=rng.choice(variables))
    left = rng.randint(1, leaves - 1)
    return FNode(rng.choice(("add", "mul")),
                 _random_formula(rng, left, variables),
                 _random_formula(rng, leaves - left, variables))


def _interpret(formula: MonotoneFormula, semiring) -> MonotoneFormula:
    """Re-read a {0,1}-constant formula over another instance, mapping the
    abstract constants to that instance's identities."""

    def rec(node):
        if isinstance(node, FLeaf):
            if node.var is not None:
                return node
            return FLeaf(const=semiring.zero if node.const == 0 else semiring.one)
        return FNode(node.op, rec(node.left), rec(node.right))

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return MonotoneFormula(semiring, formula.target_vars, rec(formula.root))


def _random_point(rng, semiring, variables):
    point = {}
    for v in variables:
        if semiring is BOOL:
            point[v] = rng.randint(0, 1)
        elif semiring is TROPICAL:
            point[v] = Fraction(rng.randint(-20, 20))
        else:
            point[v] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return point


def criterion_universality_compiler(cases: int = 200):
    """Compiled permanent projections of random monotone formulas match the
    formula polynomial formally (real) and by evaluation (all instances)."""
    rng = random.Random(987123)
    variables = ("x", "y", "z")
    for _ in range(cases):
        leaves = rng.randint(1, 8)
        root = _random_formula(rng, leaves, variables)
        f_real = MonotoneFormula(REAL, variables, root)
        big_m, sigma = formula_to_perm_projection(f_real)
        assert big_m <= f_real.size() + 1, (big_m, f_real.size())
        assert sigma.is_monotone()
        assert permanent_image(sigma, big_m) == f_real.expand()
        for sr in (REAL, TROPICAL, BOOL):
            f_sr = _interpret(f_real, sr)
            m_sr, sig_sr = formula_to_perm_projection(f_sr)
            img = permanent_image(sig_sr, m_sr)
            for _ in range(50):
                point = _random_point(rng, sr, variables)
                assert img.evaluate(point) == f_sr.evaluate(point)


def criterion_affine_gadget(cases: int = 100):
    """The parallel-branch gadget turns affine projections of perm_m into
    formally equal simple projections of a larger permanent."""
    rng = random.Random(55511)
    for _ in range(cases):
        m = rng.randint(2, 3)
        n = rng.randint(1, 3)
        targets = tuple(f"x_{k}" for k in range(1, n + 1))
        forms = []
        for _ in range(m * m):
            def coeff():
                return Fraction(rng.randint(0, 3)) if rng.random() < 0.6 else Fraction(0)
            forms.append((coeff(), tuple(coeff() for _ in range(n))))
        pi = AffineProjectionMap(REAL, tuple(matrix_vars(m)), targets, tuple(forms))
        assert pi.is_monotone()
        big_m, sigma = affine_to_simple(pi, m)
        assert sigma.is_monotone()
        assert permanent_image(sigma, big_m) == apply_affine(pi, gen_permanent(m))


def criterion_converse_construction():
    """Converse constructor reproduces prescribed Newton polytopes."""
    # the segment conv{0, 1} via the (1,2) coordinate of cycle covers of C_2
    seg = pt.VPolytope.from_vertices(1, [[0], [1]])
    ell = pt.AffineMapT.of([[0, 1, 0, 0]])
    f, _, _ = converse_construct(seg, 2, ell)
    assert newton_polytope(f) == seg

    # New(HC_3): interpolate between the two tours by the (1,2) entry
    hc = gen_hc(3)
    t1, t2 = newton_polytope(hc).vertices
    tours = sorted([t1, t2], key=lambda t: t[1], reverse=True)  # x_1_2 = 1 first
    t_hi, t_lo = tours
    rows = [[(t_hi[r] - t_lo[r]) if c == 1 else 0 for c in range(9)] for r in range(9)]
    ell_hc = pt.AffineMapT.of(rows, list(t_lo))
    p_hc = newton_polytope(hc)
    f_hc, _, _ = converse_construct(p_hc, 3, ell_hc)
    assert newton_polytope(f_hc) == p_hc

    # a random 0/1 image of the Birkhoff polytope of order 3
    rng = random.Random(424242)
    b3 = pt.gen_cycle_cover_polytope(3)
    rnd = [[rng.randint(0, 1) for _ in range(9)] for _ in range(4)]
    p_rand = pt.image(pt.AffineMapT.of(rnd), b3)
    f_r, _, _ = converse_construct(p_rand, 3, pt.AffineMapT.of(rnd))
    assert newton_polytope(f_r) == p_rand


def _bipartite_has_pm(mat, n) -> bool:
    """Augmenting-path maximum matching on an n x n 0/1 matrix."""
    match = [-1] * n  # column -> row

    def try_row(i, seen):
        for j in range(n):
            if mat[i][j] and j not in seen:
                seen.add(j)
                if match[j] == -1 or try_row(match[j], seen):
                    match[j] = i
                    return True
        return False

    return all(try_row(i, set()) for i in range(n))


def criterion_semantic_crosschecks():
    """Boolean permanent = bipartite perfect-matching indicator; tropical
    Hamiltonian cycle = brute-force TSP value."""
    rng = random.Random(77001)
    for n in range(1, 7):
        perm = gen_permanent(n, BOOL)
        for _ in range(500):
            mat = [[rng.randint(0, 1) for _ in range(n)] for _ in range(n)]
            point = {f"x_{i + 1}_{j + 1}": mat[i][j] for i in range(n) for j in range(n)}
            assert perm.evaluate(point) == int(_bipartite_has_pm(mat, n)), (n, mat)
    import itertools
    for n in range(2, 7):
        hc = gen_hc(n, TROPICAL)
        for _ in range(100):
            w = [[Fraction(rng.randint(0, 50)) for _ in range(n)] for _ in range(n)]
            point = {f"x_{i + 1}_{j + 1}": w[i][j] for i in range(n) for j in range(n)}
            best = min(
                sum(w[a][b] for a, b in zip((0,) + rest, rest + (0,)))
                for rest in itertools.permutations(range(1, n))
            )
            assert hc.evaluate(point) == best, (n, w)


def criterion_xc_sanity():
    """Known xc values and slack/rectangle invariants on tiny polytopes."""
    tri = pt.VPolytope.from_vertices(2, [[0, 0], [1, 0], [0, 1]])
    sq = pt.VPolytope.from_vertices(2, [[0, 0], [1, 0], [0, 1], [1, 1]])
    assert xc_bounds(tri) == (3, 3)
    assert xc_bounds(sq) == (4, 4)

    for p in (tri, sq, pt.gen_pm_polytope(2), pt.gen_cycle_cover_polytope(3),
              pt.gen_cut_polytope(3, 2)):
        s = slack_matrix(p)
        h = pt.facet_enumeration(p)
        for i, (a, b) in enumerate(h.ineqs):
            for j, v in enumerate(p.vertices):
                slack = s.entries[i][j]
                assert slack >= 0
                assert (slack == 0) == (sum(x * y for x, y in zip(a, v)) == b)

    rng = random.Random(31337)
    base = rectangle_cover_lb(slack_matrix(sq))
    assert base.exact
    for _ in range(50):
        s = slack_matrix(sq)
        rows = list(s.entries)
        rng.shuffle(rows)
        cols = list(range(len(rows[0])))
        rng.shuffle(cols)
        shuffled = SlackShuffle(tuple(tuple(r[c] for c in cols) for r in rows))
        assert rectangle_cover_lb(shuffled).value == base.value


class SlackShuffle:
    """Minimal stand-in exposing the SlackMatrix surface used by the cover
    search, for permutation-invariance checks."""

    def __init__(self, entries):
        self.entries = entries

    @property
    def shape(self):
        return len(self.entries), len(self.entries[0]) if self.entries else 0

    def support(self):
        return frozenset((i, j) for i, row in enumerate(self.entries)
                         for j, x in enumerate(row) if x != 0)


def criterion_projection_search():
    """The exhaustive search finds a verified projection of perm_3 onto the
    Hamiltonian cycle polynomial and reports exhaustion where none exists."""
    hc = gen_hc(3)
    pi = search_monotone_projection(hc, 3)
    assert pi is not None
    assert pi.is_monotone()
    assert apply_simple(pi, gen_permanent(3)) == hc

    from .polynomial import make
    target = make(BOOL, ["x", "y", "z"],
                  [(1, [1, 0, 0]), (1, [0, 1, 0]), (1, [0, 0, 1])])
    assert search_monotone_projection(target, 2) is None


CRITERIA = [
    ("newton-identifications", criterion_newton_identifications),
    ("birkhoff-facets", criterion_birkhoff_facets),
    ("main-lemma-suite", criterion_main_lemma_suite),
    ("cut-scaling", criterion_cut_scaling),
    ("universality-compiler", criterion_universality_compiler),
    ("affine-gadget", criterion_affine_gadget),
    ("converse-construction", criterion_converse_construction),
    ("semantic-crosschecks", criterion_semantic_crosschecks),
    ("xc-sanity", criterion_xc_sanity),
    ("projection-search", criterion_projection_search),
]


def replay(filter_substr: str | None = None):
    """Run (a filtered subset of) the acceptance criteria; returns a list of
    (name, passed, seconds, message)."""
    results = []
    for name, fn in CRITERIA:
        if filter_substr and filter_substr not in name:
            continue
        t0 = time.perf_counter()
        try:
            fn()
            results.append((name, True, time.perf_counter() - t0, ""))
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            results.append((name, False, time.perf_counter() - t0,
                            f"{type(exc).__name__}: {exc}"))
    return results
