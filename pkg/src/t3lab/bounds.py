"""Verifiers for the matching, cover, connectedness and stability bounds,
and the exact three-variable explosion-count LP with its dual."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from t3lab.errors import InputError, PreconditionError, ResourceError, TheoryDiscrepancy
from t3lab.hypercore import (
    BipartiteMultigraph,
    Tripartite3Graph,
    components,
    degrees,
    is_regular,
    link,
    max_degree,
    nu_bip,
    nu_exact,
    tau_exact,
)
from t3lab.linegraph import full_line, g_of, nu_of
from t3lab.reports import BoundReport
from t3lab.structure import (
    badness,
    c4_dichotomy,
    c4_hypergraph_vertices,
    check_one_bad_vertex_structure,
    classify_pm_component,
    disjoint_pair,
    component_of,
    find_c4_components,
    find_fano_components,
    hosted_edges,
    FormsHalfFano,
    TwoDisjoint,
)
from t3lab.topology import EtaEvaluator, EtaFn, EtaValue

HALL_CLASS_CAP = 16


def epsilon(nu: int, n: int) -> Fraction:
    """Smallest eps >= 0 with nu <= (1 + eps) n / 2."""
    if n == 0:
        return Fraction(0)
    return max(Fraction(0), Fraction(2 * nu, n) - 1)


# -- linear program ------------------------------------------------------------


@dataclass(frozen=True)
class LpSolution:
    x1: Fraction
    x2: Fraction
    x3: Fraction
    t: Fraction
    y1: Fraction
    y2: Fraction
    dual_value: Fraction
    gap: Fraction
    closed_form_applies: bool

    def to_json(self) -> dict:
        from t3lab.reports import to_jsonable

        return {k: to_jsonable(v) for k, v in self.__dict__.items()}


def _det(m) -> int:
    if len(m) == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _basic_points(cons, sense: int):
    """Vertices of {x : sense * (a.x - b) >= 0 for every (a, b) in cons}.

    Each point is returned as integer numerators over a positive common
    denominator, so feasibility is checked without building Fractions.
    """
    dim = len(cons[0][0])
    for group in combinations(cons, dim):
        rows = [c[0] for c in group]
        d = _det(rows)
        if d == 0:
            continue
        nums = []
        for k in range(dim):
            m = [list(row) for row in rows]
            for i, c in enumerate(group):
                m[i][k] = c[1]
            nums.append(_det(m))
        if d < 0:
            d, nums = -d, [-x for x in nums]
        if all(sense * (sum(a * x for a, x in zip(c[0], nums)) - c[1] * d) >= 0 for c in cons):
            yield nums, d


def _dual_rows(r: int):
    # y1 * (first cover row) + y2 * (second) <= cost, column by column
    return [((1, 3 * r - 2), 1), ((2, 2 * r - 1), 1), ((3, 6 * r - 5), 2), ((-1, 0), 0), ((0, -1), 0)]


@lru_cache(maxsize=None)
def _dual_vertices(r: int) -> tuple:
    """The dual feasible region depends on r only."""
    return tuple(_basic_points(_dual_rows(r), -1))


def lp_constraints(nu: int, v: int, r: int):
    cover = [((1, 2, 3), nu), ((3 * r - 2, 2 * r - 1, 6 * r - 5), v)]
    return cover + [((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0)]


@lru_cache(maxsize=None)
def _primal_bases(r: int) -> tuple:
    """Each nonsingular choice of three tight constraints, as (A, B, d)
    with d > 0: the basic point is (nu * A + v * B) / d by linearity of
    Cramer's rule in the right-hand side."""
    rows = [c[0] for c in lp_constraints(0, 0, r)]
    out = []
    for idx in combinations(range(len(rows)), 3):
        m = [rows[i] for i in idx]
        d = _det(m)
        if d == 0:
            continue
        per_rhs = []
        for unit in (0, 1):  # the nu row, then the v row
            rhs = [1 if i == unit else 0 for i in idx]
            nums = []
            for k in range(3):
                mk = [list(row) for row in m]
                for i in range(3):
                    mk[i][k] = rhs[i]
                nums.append(_det(mk))
            per_rhs.append(nums)
        a, b = per_rhs
        if d < 0:
            d, a, b = -d, [-x for x in a], [-x for x in b]
        out.append((tuple(a), tuple(b), d))
    return tuple(out)


def lp_min(nu: int, v: int, r: int) -> LpSolution:
    """Minimize x1 + x2 + 2 x3 subject to
    x1 + 2 x2 + 3 x3 >= nu, (3r-2) x1 + (2r-1) x2 + (6r-5) x3 >= v, x >= 0,
    by enumerating basic feasible points in exact arithmetic.  The dual
    (maximize nu y1 + v y2) is enumerated the same way; the gap must be 0.

    Among optimal vertices the one with least x1 (then x2) is returned.
    """
    if r < 2 or nu < 0 or v < 0:
        raise InputError("need r >= 2, nu >= 0, v >= 0")
    cons = lp_constraints(nu, v, r)
    best = None
    for a, b, d in _primal_bases(r):
        nums = [nu * p + v * q for p, q in zip(a, b)]
        if any(sum(c * x for c, x in zip(row, nums)) < rhs * d for row, rhs in cons):
            continue
        key = (Fraction(nums[0] + nums[1] + 2 * nums[2], d), Fraction(nums[0], d), Fraction(nums[1], d))
        if best is None or key < best[0]:
            best = (key, [Fraction(x, d) for x in nums])
    (t, _, _), x = best

    dual_best = None
    for nums, d in _dual_vertices(r):
        val = Fraction(nu * nums[0] + v * nums[1], d)
        if dual_best is None or val > dual_best[0]:
            dual_best = (val, [Fraction(y, d) for y in nums])
    dual_value, y = dual_best

    # the closed-form dual point is always feasible
    y1c, y2c = Fraction(2 * r - 3, 6 * r - 7), Fraction(1, 6 * r - 7)
    for row, c in _dual_rows(r)[:3]:
        if row[0] * y1c + row[1] * y2c > c:
            raise TheoryDiscrepancy(f"closed-form dual point infeasible at r={r}")
    closed = nu * y1c + v * y2c
    applies = (2 * r - 1) * nu <= 2 * v and 3 * v <= (6 * r - 5) * nu
    if applies:
        x2c = Fraction((6 * r - 5) * nu - 3 * v, 6 * r - 7)
        x3c = Fraction(2 * v - (2 * r - 1) * nu, 6 * r - 7)
        if t != closed or x[0] != 0 or (x[1], x[2]) != (x2c, x3c):
            raise TheoryDiscrepancy(
                f"LP optimum {x}, t={t} disagrees with the closed form at nu={nu}, v={v}, r={r}"
            )
    if closed > t:
        raise TheoryDiscrepancy("dual closed-form value exceeds the primal optimum")
    return LpSolution(x[0], x[1], x[2], t, y[0], y[1], dual_value, t - dual_value, applies)


def connectedness_bound(nu: int, size: int, r: int, k: int = 0) -> Fraction:
    """((2r-3) nu + size - k) / (6r-7)."""
    return Fraction((2 * r - 3) * nu + size - k, 6 * r - 7)


# -- matching / cover ----------------------------------------------------------


def check_thm_1_3(h: Tripartite3Graph) -> BoundReport:
    """tau(H) <= 2 nu(H), reported as 2 nu >= tau."""
    nu = nu_exact(h)
    tau = tau_exact(h)
    return BoundReport.check(
        "thm-1.3",
        Fraction(2 * nu.size),
        Fraction(tau.size),
        {"matching": sorted(nu.edge_ids), "cover": sorted(tau.vertices)},
        {"nu": nu.size, "tau": tau.size},
    )


def _equal_classes(h: Tripartite3Graph) -> int:
    if len(set(h.class_sizes)) != 1:
        raise PreconditionError(f"classes must have equal size, got {h.class_sizes}")
    return h.class_sizes[0]


def check_thm_1_2(h: Tripartite3Graph, r: int) -> BoundReport:
    """An r-regular H with n per class has nu >= n/2."""
    n = _equal_classes(h)
    if r < 1 or not is_regular(h, r):
        raise PreconditionError(f"instance is not {r}-regular with r >= 1")
    nu = nu_exact(h)
    return BoundReport.check(
        "thm-1.2",
        Fraction(nu.size),
        Fraction(n, 2),
        {"matching": sorted(nu.edge_ids)},
        {"r": r, "n": n, "eps": epsilon(nu.size, n)},
    )


# -- connectedness -------------------------------------------------------------


def _bip_preconditions(g: BipartiteMultigraph, r: int) -> None:
    if r < 2:
        raise PreconditionError("r must be >= 2")
    if max_degree(g) > r:
        raise PreconditionError(f"maximum degree {max_degree(g)} exceeds r={r}")


def check_thm_3_1(g: BipartiteMultigraph, j=None, r: int | None = None, eta_fn: EtaFn | None = None) -> BoundReport:
    """eta(J) >= ((2r-3) nu(G_J) + |V(J)|) / (6r-7) for J in L(G), G with
    maximum degree <= r and no r-regular C4 component."""
    r = max(2, max_degree(g)) if r is None else r
    _bip_preconditions(g, r)
    c4s = find_c4_components(g, r)
    if c4s:
        raise PreconditionError(f"G has {len(c4s)} r-regular C4 component(s)")
    j = full_line(g) if j is None else j
    eta_fn = eta_fn or EtaEvaluator()
    nu = nu_of(j)
    lhs = eta_fn(j)
    rhs = connectedness_bound(nu, len(j.vertices), r)
    return BoundReport.check(
        "thm-3.1", lhs, rhs, {}, {"r": r, "nu": nu, "size": len(j.vertices)}
    )


def check_cor_3_8(g: BipartiteMultigraph, r: int | None = None, k: int | None = None, eta_fn: EtaFn | None = None) -> BoundReport:
    """eta(L(G)) >= ((2r-3) nu + |E| - k) / (6r-7) where G has at most k
    r-regular C4 components (k is counted; a supplied k is checked)."""
    r = max(2, max_degree(g)) if r is None else r
    _bip_preconditions(g, r)
    count = len(find_c4_components(g, r))
    if k is None:
        k = count
    elif k < count:
        raise PreconditionError(f"G has {count} r-regular C4 components, more than k={k}")
    eta_fn = eta_fn or EtaEvaluator()
    nu = nu_bip(g).size
    lhs = eta_fn(full_line(g))
    rhs = connectedness_bound(nu, g.n_edges, r, k)
    return BoundReport.check(
        "cor-3.8", lhs, rhs, {"c4_components": count}, {"r": r, "nu": nu, "edges": g.n_edges, "k": k}
    )


@dataclass
class HallWitness:
    S: tuple[int, ...]
    defect: int
    eta: EtaValue
    nu: int
    class_size: int

    def to_json(self) -> dict:
        return {
            "S": list(self.S),
            "defect": self.defect,
            "eta": self.eta.to_json(),
            "nu": self.nu,
            "class_size": self.class_size,
        }


def hall_witness(h: Tripartite3Graph, class_id: int, eta_fn: EtaFn | None = None, cap: int = HALL_CLASS_CAP) -> HallWitness:
    """Subset S of the class maximizing |S| - eta(L(lk S)); ties go to the
    lexicographically least S.  Asserts nu(H) >= |class| - max(defect, 0)."""
    size = h.class_sizes[class_id]
    if size > cap:
        raise ResourceError(f"hall_witness: class of size {size} exceeds cap {cap}")
    eta_fn = eta_fn or EtaEvaluator(vertex_limit=64)
    best = None
    subsets = [S for k in range(size + 1) for S in combinations(range(size), k)]
    subsets.sort()
    for S in subsets:
        value = eta_fn(full_line(link(h, class_id, S)))
        if value.is_infinite:
            continue
        if value.kind == "at_least":
            if best is not None and len(S) - value.value <= best[0]:
                continue
            raise ResourceError(f"eta of L(lk {S}) only known to be {value}; raise the cap")
        d = len(S) - value.value
        if best is None or d > best[0]:
            best = (d, S, value)
    d, S, value = best
    nu = nu_exact(h).size
    if nu < size - max(d, 0):
        raise TheoryDiscrepancy(
            f"nu={nu} below |class| - defect = {size - max(d, 0)}", {"S": list(S), "defect": d}
        )
    return HallWitness(S, d, value, nu, size)


def check_thm_2_2(h: Tripartite3Graph, class_id: int = 0, eta_fn: EtaFn | None = None) -> BoundReport:
    w = hall_witness(h, class_id, eta_fn)
    return BoundReport.check(
        "thm-2.2",
        Fraction(w.nu),
        Fraction(w.class_size - max(w.defect, 0)),
        {"hall": w.to_json()},
        {"class_id": class_id},
    )


# -- stability -----------------------------------------------------------------


def _regular_preconditions(h: Tripartite3Graph, r: int) -> int:
    if r < 2:
        raise PreconditionError("r must be >= 2")
    n = _equal_classes(h)
    if not is_regular(h, r):
        raise PreconditionError(f"instance is not {r}-regular")
    return n


def check_thm_4_1(h: Tripartite3Graph, r: int) -> BoundReport:
    """An r-regular H with nu <= (1+eps) n/2 has at least
    (1 - (22r - 77/3) eps) n/2 components that are (r/2)·F."""
    n = _regular_preconditions(h, r)
    nu = nu_exact(h).size
    eps = epsilon(nu, n)
    fanos = find_fano_components(h, r)
    rhs = (1 - (22 * r - Fraction(77, 3)) * eps) * Fraction(n, 2)
    return BoundReport.check(
        "thm-4.1",
        Fraction(len(fanos)),
        rhs,
        {"fano_components": [f.to_json() for f in fanos]},
        {"r": r, "n": n, "nu": nu, "eps": eps},
    )


def _abc_preconditions(h: Tripartite3Graph, r: int, class_id: int = 0) -> None:
    if r < 2:
        raise PreconditionError("r must be >= 2")
    deg = degrees(h)
    for v in h.vertices():
        if v[0] == class_id and deg[v] < r:
            raise PreconditionError(f"vertex {v} of class {class_id} has degree {deg[v]} < r={r}")
        if v[0] != class_id and deg[v] > r:
            raise PreconditionError(f"vertex {v} has degree {deg[v]} > r={r}")


def trim_class_degrees(h: Tripartite3Graph, r: int, class_id: int = 0) -> Tripartite3Graph:
    """Drop the highest-id edges at every class vertex of degree > r."""
    kept, seen = [], {}
    for e in h.edges:
        v = e.shape[class_id]
        if seen.get(v, 0) < r:
            kept.append(e.id)
            seen[v] = seen.get(v, 0) + 1
    return h.sub(kept)


def replace_pm_components(h: Tripartite3Graph, r: int) -> Tripartite3Graph:
    """Replace each component with a perfect matching by r parallel copies
    of one perfect matching."""
    triples = []
    for comp in components(h):
        if not comp.edge_ids:
            continue
        counts = comp.class_counts(3)
        sub = h.sub(comp.edge_ids)
        if len(set(counts)) == 1:
            m = nu_exact(sub)
            if m.size == counts[0]:
                triples += [sub.edges[i].shape + (r,) for i in sorted(m.edge_ids)]
                continue
        triples += [h.edges[i].shape for i in comp.edge_ids]
    return Tripartite3Graph.from_triples(h.class_sizes, triples)


def check_thm_4_2(h: Tripartite3Graph, r: int, class_id: int = 0) -> BoundReport:
    """Class A (``class_id``) of minimum degree >= r, the other classes of
    maximum degree <= r, |A| = n: at least (1 - (72r^2 - 150r + 77) eps) n/2
    disjoint copies of (r/2)·F, counted as components after trimming A to
    degree r and collapsing perfect-matching components."""
    _abc_preconditions(h, r, class_id)
    n = h.class_sizes[class_id]
    nu = nu_exact(h).size
    eps = epsilon(nu, n)
    trimmed = trim_class_degrees(h, r, class_id)
    transformed = replace_pm_components(trimmed, r)
    fanos = find_fano_components(transformed, r)
    original = find_fano_components(h, r)
    rhs = (1 - (72 * r * r - 150 * r + 77) * eps) * Fraction(n, 2)
    return BoundReport.check(
        "thm-4.2",
        Fraction(len(fanos)),
        rhs,
        {
            "transformed_edges": [list(e.shape) for e in transformed.edges],
            "fano_components_transformed": len(fanos),
            "fano_components_original": len(original),
        },
        {"r": r, "n": n, "nu": nu, "eps": eps, "class_id": class_id},
    )


def check_lemma_4_2(h: Tripartite3Graph, r: int, class_id: int = 0) -> BoundReport:
    """lk A has at least (1 - (6r-7) eps) n/2 r-regular C4 components."""
    _abc_preconditions(h, r, class_id)
    n = h.class_sizes[class_id]
    nu = nu_exact(h).size
    eps = epsilon(nu, n)
    c4s = find_c4_components(link(h, class_id), r)
    rhs = (1 - (6 * r - 7) * eps) * Fraction(n, 2)
    return BoundReport.check(
        "lem-4.2",
        Fraction(len(c4s)),
        rhs,
        {"c4_components": [c.to_json() for c in c4s]},
        {"r": r, "n": n, "nu": nu, "eps": eps, "class_id": class_id},
    )


def check_lemma_4_3(h: Tripartite3Graph, r: int) -> BoundReport:
    """Every r-regular C4 of every link whose vertices have degree <= r
    resolves to one branch of the dichotomy."""
    deg = degrees(h)
    outcomes = {"two_disjoint": 0, "half_fano": 0, "skipped": 0}
    for i in range(3):
        for c4 in find_c4_components(link(h, i), r):
            if any(deg[v] > r for v in c4_hypergraph_vertices(i, c4)):
                outcomes["skipped"] += 1
                continue
            res = c4_dichotomy(h, i, c4)
            outcomes["two_disjoint" if isinstance(res, TwoDisjoint) else "half_fano"] += 1
    checked = outcomes["two_disjoint"] + outcomes["half_fano"]
    return BoundReport.check("lem-4.3", Fraction(checked), Fraction(checked), outcomes, {"r": r})


def check_lemma_4_5(h: Tripartite3Graph, r: int) -> BoundReport:
    """A C4 component hosting two disjoint edges, all of whose vertices sit
    in C4 components of the other links, lies in a type-1 or type-2
    component."""
    table = badness(h, r)
    seen, bad_cases = [], []
    for i in range(3):
        for c4 in find_c4_components(link(h, i), r):
            verts = c4_hypergraph_vertices(i, c4)
            if any(table.is_bad(v) for v in verts):
                continue
            if disjoint_pair(h, hosted_edges(h, i, c4)) is None:
                continue
            comp = component_of(h, next(iter(verts)))
            kind = classify_pm_component(h, comp)
            seen.append({"class_id": i, "c4": sorted(verts), "component_type": kind})
            if kind == "other":
                bad_cases.append(seen[-1])
    return BoundReport(
        "lem-4.5",
        Fraction(len(seen) - len(bad_cases)),
        Fraction(len(seen)),
        not bad_cases,
        {"cases": seen, "violations": bad_cases},
        {"r": r},
    )


def check_lemma_4_6(h: Tripartite3Graph, r: int) -> BoundReport:
    """Run the one-bad-vertex structure check on every C4 component that
    meets its hypothesis; vacuous when none does."""
    if max_degree(h) > r:
        raise PreconditionError(f"maximum degree exceeds r={r}")
    table = badness(h, r)
    results = []
    for i in range(3):
        for c4 in find_c4_components(link(h, i), r):
            verts = c4_hypergraph_vertices(i, c4)
            bad = [v for v in verts if table.is_bad(v)]
            if len(bad) != 1:
                continue
            (k,) = set(range(3)) - {i, bad[0][0]}
            if table.flags[bad[0]] != {k}:
                continue
            results.append(check_one_bad_vertex_structure(h, r, i, c4, table))
    failed = [rep.to_json() for rep in results if not rep.passed]
    return BoundReport(
        "lem-4.6",
        Fraction(len(results) - len(failed)),
        Fraction(len(results)),
        not failed,
        {"checked": len(results), "vacuous": not results, "failures": failed},
        {"r": r},
    )


def check_cor_5_1(h: Tripartite3Graph, r: int) -> BoundReport:
    """An r-regular (r/2)·F-free H has nu >= (1 + 1/(22r - 77/3)) n/2."""
    from t3lab.structure import has_fano_subcopy

    n = _regular_preconditions(h, r)
    copy = has_fano_subcopy(h, r)
    if copy is not None:
        raise PreconditionError("instance contains a copy of (r/2)·F")
    nu = nu_exact(h).size
    rhs = (1 + 1 / (22 * r - Fraction(77, 3))) * Fraction(n, 2)
    return BoundReport.check("cor-5.1", Fraction(nu), rhs, {}, {"r": r, "n": n, "nu": nu})
